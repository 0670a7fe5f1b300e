#include "nsq/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace nsq::io {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_string(std::ostream& out, const std::string& s) {
  // nlohmann's escaping is deterministic; reuse it for strings.
  out << Json(s).dump();
}

void write_value(std::ostream& out, const Json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close_pad(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out << ",\n";
        first = false;
        out << pad;
        write_string(out, key);
        out << ": ";
        write_value(out, value, depth + 1);
      }
      out << "\n" << close_pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      bool first = true;
      for (const auto& value : j) {
        if (!first) out << ",\n";
        first = false;
        out << pad;
        write_value(out, value, depth + 1);
      }
      out << "\n" << close_pad << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out << (std::isfinite(x) ? format_number(x) : "null");
      return;
    }
    case Json::value_t::string:
      write_string(out, j.get<std::string>());
      return;
    default:
      out << j.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const Json& j) {
  std::ostringstream out;
  write_value(out, j, 0);
  out << "\n";
  return out.str();
}

Json optional_number(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }
Json optional_int(const std::optional<int>& x) { return x ? Json(*x) : Json(nullptr); }

Json to_json(const SpectrumResult& r, const UnitSystem& units) {
  auto energies = [&](const std::vector<double>& v) {
    Json a = Json::array();
    for (double e : v) a.push_back(units.energy_from_dimensionless(e));
    return a;
  };
  Json j;
  j["eigenvalues"] = energies(r.eigenvalues);
  j["grid"] = Json{{"x_min", units.length_from_dimensionless(r.grid_used.x_min)},
                   {"x_max", units.length_from_dimensionless(r.grid_used.x_max)},
                   {"n_points", r.grid_used.n_points},
                   {"spacing", units.length_from_dimensionless(r.grid_used.spacing())}};
  j["converged"] = r.converged;
  j["refinement_levels"] = r.refinement_levels;
  j["convergence_estimate"] = energies(r.convergence_estimate);
  j["analytic_reference"] = r.analytic_reference ? energies(*r.analytic_reference) : Json(nullptr);
  j["residuals"] = r.residuals ? Json(*r.residuals) : Json(nullptr);
  return j;
}

Json to_json(const EstimateReport& r) {
  auto log10_or_null = [](double x) {
    return x > 0.0 ? Json(std::log10(x)) : Json(nullptr);
  };
  Json j;
  j["label"] = r.inputs.label;
  j["radius_cm"] = r.inputs.radius_cm;
  j["particle_count"] = r.inputs.particle_count;
  j["micro_length_cm"] = r.inputs.micro_length_cm;
  j["derived_delta"] = r.derived_delta.value();
  j["delta_override"] = optional_number(r.inputs.delta_override);
  j["delta"] = r.delta.value();
  j["delta_squared"] = r.delta_squared;
  j["amplification"] = r.amplification;
  j["log10_delta"] = log10_or_null(r.delta.value());
  j["log10_delta_squared"] = log10_or_null(r.delta_squared);
  j["log10_amplification"] = log10_or_null(r.amplification);
  j["order_delta"] = optional_int(r.delta_order());
  j["order_delta_squared"] = optional_int(r.delta_squared_order());
  j["order_amplification"] = optional_int(r.amplification_order());
  return j;
}

Json to_json(const SweepEntry& e) {
  Json j;
  j["value"] = e.value;
  j["report"] = e.report ? to_json(*e.report) : Json(nullptr);
  j["error"] = e.error.empty() ? Json(nullptr) : Json(e.error);
  return j;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  auto write_row = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_escape(row[i]);
    }
    out << "\r\n";
  };
  write_row(table.header);
  for (const auto& row : table.rows) write_row(row);
}

void write_text_table(std::ostream& out, const CsvTable& table) {
  std::vector<std::size_t> width(table.header.size(), 0);
  auto measure = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) {
      width[i] = std::max(width[i], row[i].size());
    }
  };
  measure(table.header);
  for (const auto& row : table.rows) measure(row);
  auto write_row = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << "  ";
      out << row[i];
      if (i + 1 < row.size()) out << std::string(width[i] - row[i].size(), ' ');
    }
    out << "\n";
  };
  write_row(table.header);
  std::size_t total = 0;
  for (auto w : width) total += w + 2;
  out << std::string(total > 2 ? total - 2 : 0, '-') << "\n";
  for (const auto& row : table.rows) write_row(row);
}

CsvTable spectrum_csv(const SpectrumResult& r, const UnitSystem& units) {
  CsvTable t;
  t.header = {"level", "eigenvalue", "convergence_estimate", "analytic_reference", "residual"};
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    t.rows.push_back({std::to_string(i),
                      format_number(units.energy_from_dimensionless(r.eigenvalues[i])),
                      format_number(units.energy_from_dimensionless(r.convergence_estimate[i])),
                      r.analytic_reference ? format_number(units.energy_from_dimensionless(
                                                 (*r.analytic_reference)[i]))
                                           : "",
                      r.residuals ? format_number((*r.residuals)[i]) : ""});
  }
  return t;
}

std::vector<std::string> estimate_csv_header() {
  return {"label",          "radius_cm",           "particle_count",    "micro_length_cm",
          "derived_delta",  "delta_override",      "delta",             "delta_squared",
          "amplification",  "log10_delta",         "log10_delta_squared", "log10_amplification",
          "order_amplification"};
}

std::vector<std::string> estimate_csv_row(const EstimateReport& r) {
  auto lg = [](double x) { return x > 0.0 ? format_number(std::log10(x)) : std::string(); };
  const auto order = r.amplification_order();
  return {r.inputs.label,
          format_number(r.inputs.radius_cm),
          format_number(r.inputs.particle_count),
          format_number(r.inputs.micro_length_cm),
          format_number(r.derived_delta.value()),
          r.inputs.delta_override ? format_number(*r.inputs.delta_override) : "",
          format_number(r.delta.value()),
          format_number(r.delta_squared),
          format_number(r.amplification),
          lg(r.delta.value()),
          lg(r.delta_squared),
          lg(r.amplification),
          order ? std::to_string(*order) : ""};
}

CsvTable sweep_csv(const std::vector<SweepEntry>& entries) {
  CsvTable t;
  t.header = {"value"};
  for (auto& h : estimate_csv_header()) t.header.push_back(h);
  t.header.push_back("error");
  for (const auto& e : entries) {
    std::vector<std::string> row{format_number(e.value)};
    if (e.report) {
      for (auto& cell : estimate_csv_row(*e.report)) row.push_back(cell);
    } else {
      row.resize(t.header.size() - 1);
    }
    row.push_back(e.error);
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace nsq::io
