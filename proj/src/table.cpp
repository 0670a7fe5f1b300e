#include "nsq/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nsq {

Table::Table(std::vector<double> abscissae, std::vector<double> values)
    : x_(std::move(abscissae)), y_(std::move(values)) {
  if (x_.size() != y_.size()) {
    throw std::invalid_argument("table columns differ in length");
  }
  if (x_.size() < 2) {
    throw std::invalid_argument("table needs at least two rows");
  }
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i]) || !std::isfinite(y_[i])) {
      throw std::invalid_argument("table entries must be finite");
    }
    if (i > 0 && !(x_[i] > x_[i - 1])) {
      throw std::invalid_argument("table abscissae must be strictly increasing");
    }
  }
}

std::size_t Table::interval(double x) const {
  if (!contains(x)) {
    throw std::out_of_range("evaluation at " + std::to_string(x) + " outside table range [" +
                            std::to_string(x_.front()) + ", " + std::to_string(x_.back()) +
                            "]");
  }
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  auto i = static_cast<std::size_t>(std::distance(x_.begin(), it));
  if (i == 0) return 0;
  return std::min(i - 1, x_.size() - 2);
}

double Table::operator()(double x) const {
  const std::size_t i = interval(x);
  const double t = (x - x_[i]) / (x_[i + 1] - x_[i]);
  return y_[i] + t * (y_[i + 1] - y_[i]);
}

Table Table::rescaled(double x_scale, double y_scale) const {
  std::vector<double> x(x_), y(y_);
  for (auto& v : x) v *= x_scale;
  for (auto& v : y) v *= y_scale;
  if (x_scale < 0) {
    std::reverse(x.begin(), x.end());
    std::reverse(y.begin(), y.end());
  }
  return Table(std::move(x), std::move(y));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

}  // namespace

Table read_table_csv(std::istream& in) {
  std::vector<double> xs, ys;
  std::string line;
  std::size_t line_no = 0;
  bool seen_row = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    std::optional<double> x, y;
    if (comma != std::string_view::npos) {
      x = parse_number(row.substr(0, comma));
      y = parse_number(row.substr(comma + 1));
    }
    if (!x || !y) {
      if (!seen_row) {
        seen_row = true;  // header
        continue;
      }
      throw std::invalid_argument("table line " + std::to_string(line_no) +
                                  ": expected two numeric columns");
    }
    seen_row = true;
    xs.push_back(*x);
    ys.push_back(*y);
  }
  return Table(std::move(xs), std::move(ys));
}

Table read_table_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open table file " + path.string());
  return read_table_csv(in);
}

}  // namespace nsq
