#pragma once

#include <filesystem>
#include <istream>
#include <span>
#include <vector>

namespace nsq {

/// Two-column sampled function with strictly increasing abscissae.
/// Evaluation between nodes is piecewise linear; outside the table it throws
/// std::out_of_range.
class Table {
 public:
  Table(std::vector<double> abscissae, std::vector<double> values);

  std::span<const double> abscissae() const { return x_; }
  std::span<const double> values() const { return y_; }
  std::size_t size() const { return x_.size(); }
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }

  bool contains(double x) const { return x >= x_.front() && x <= x_.back(); }

  /// Index i of the interval [x_i, x_{i+1}] holding x; x must be in range.
  std::size_t interval(double x) const;

  double operator()(double x) const;

  /// Returns a copy with abscissae multiplied by x_scale and values by y_scale.
  Table rescaled(double x_scale, double y_scale) const;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

/// Reads "abscissa,value" rows. A first row that does not parse as two
/// numbers is treated as a header; blank lines are skipped.
Table read_table_csv(std::istream& in);
Table read_table_csv(const std::filesystem::path& path);

}  // namespace nsq
