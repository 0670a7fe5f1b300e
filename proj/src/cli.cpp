#include "nsq/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "nsq/analytic.hpp"
#include "nsq/coherence.hpp"
#include "nsq/spectral.hpp"

namespace nsq::cli {

namespace {

using io::Json;

// Carries rendered --help text from parse_args to main.
struct HelpRequested {
  std::string text;
};

enum class ValueType { Double, Int, String, DoubleList };

constexpr unsigned bit(Subcommand s) { return 1u << static_cast<unsigned>(s); }
constexpr unsigned kSolve = bit(Subcommand::Solve);
constexpr unsigned kAnalytic = bit(Subcommand::Analytic);
constexpr unsigned kCompare = bit(Subcommand::Compare);
constexpr unsigned kHydrogen = bit(Subcommand::Hydrogen);
constexpr unsigned kStar = bit(Subcommand::Star);
constexpr unsigned kSweep = bit(Subcommand::Sweep);
constexpr unsigned kOscillator = kSolve | kAnalytic | kCompare;
constexpr unsigned kNumeric = kSolve | kCompare;
constexpr unsigned kEstimate = kStar | kSweep;
constexpr unsigned kAll = kOscillator | kHydrogen | kEstimate;

struct OptionSpec {
  std::string_view key;
  ValueType type;
  unsigned applies_to;
  std::string_view help;
};

// Keys double as long flag names and as --config JSON keys.
constexpr OptionSpec kOptions[] = {
    {"potential", ValueType::String, kOscillator, "harmonic | box | tabulated"},
    {"potential-file", ValueType::String, kOscillator, "two-column CSV of V(x)"},
    {"omega", ValueType::Double, kOscillator, "oscillator angular frequency"},
    {"mass", ValueType::Double, kOscillator, "particle mass"},
    {"cutting", ValueType::String, kOscillator, "identity | gaussian | tabulated"},
    {"a", ValueType::Double, kOscillator, "Gaussian cutting length (implies --cutting gaussian)"},
    {"cutting-file", ValueType::String, kOscillator, "two-column CSV of f(x) > 0"},
    {"dims", ValueType::Int, kOscillator, "isotropic dimension count D"},
    {"x-min", ValueType::Double, kNumeric, "explicit grid lower bound"},
    {"x-max", ValueType::Double, kNumeric, "explicit grid upper bound"},
    {"points", ValueType::Int, kNumeric, "grid points of the first (coarsest) grid"},
    {"units", ValueType::String, kOscillator, "dimensionless | cgs"},
    {"hbar", ValueType::Double, kOscillator, "reduced Planck constant in erg*s (cgs only)"},
    {"levels", ValueType::Int, kOscillator, "number of levels"},
    {"rel-tol", ValueType::Double, kNumeric, "relative convergence tolerance"},
    {"max-doublings", ValueType::Int, kNumeric, "grid refinement cap"},
    {"a-cm", ValueType::Double, kHydrogen, "cutting length in cm"},
    {"delta", ValueType::Double, kHydrogen | kEstimate, "deviation parameter given directly"},
    {"n", ValueType::Int, kHydrogen, "principal quantum number (first of the range)"},
    {"n-max", ValueType::Int, kHydrogen, "last principal quantum number"},
    {"Z", ValueType::Int, kHydrogen, "nuclear charge"},
    {"alpha", ValueType::Double, kHydrogen, "fine-structure constant"},
    {"bethe-log-argument", ValueType::Double, kHydrogen, "m_e c^2 / Delta E for the Lamb shift"},
    {"hartree-ev", ValueType::Double, kHydrogen, "e^2/a_0 in eV"},
    {"radius-cm", ValueType::Double, kEstimate, "macroscopic length a in cm"},
    {"neutrons", ValueType::Double, kEstimate, "coherent degrees of freedom D"},
    {"micro-length-cm", ValueType::Double, kEstimate, "microscopic length in cm"},
    {"label", ValueType::String, kEstimate, "free-text label"},
    {"vary", ValueType::String, kSweep, "radius-cm | neutrons | micro-length-cm | delta"},
    {"values", ValueType::DoubleList, kSweep, "comma-separated sweep values"},
    {"format", ValueType::String, kAll, "json | csv | table"},
    {"output", ValueType::String, kAll, "output file (default stdout)"},
};

const OptionSpec* find_option(std::string_view key) {
  for (const auto& o : kOptions) {
    if (o.key == key) return &o;
  }
  return nullptr;
}

std::string type_name(ValueType t) {
  switch (t) {
    case ValueType::Double:
      return "FLOAT";
    case ValueType::Int:
      return "INT";
    case ValueType::String:
      return "TEXT";
    case ValueType::DoubleList:
      return "FLOAT,...";
  }
  return "TEXT";
}

std::string_view describe(Subcommand s) {
  switch (s) {
    case Subcommand::Solve:
      return "numerical spectrum of the f-modified Hamiltonian";
    case Subcommand::Analytic:
      return "closed-form Gaussian-cut oscillator levels";
    case Subcommand::Compare:
      return "numerical spectrum with closed-form residuals";
    case Subcommand::Hydrogen:
      return "hydrogen levels, Rydberg and Lamb-shift corrections";
    case Subcommand::Star:
      return "coherent amplification estimate D*delta^2";
    case Subcommand::Sweep:
      return "amplification estimates over a list of values";
  }
  return "";
}

std::string flag(std::string_view key) { return "--" + std::string(key); }

Subcommand subcommand_from_string(std::string_view s) {
  if (s == "solve") return Subcommand::Solve;
  if (s == "analytic") return Subcommand::Analytic;
  if (s == "compare") return Subcommand::Compare;
  if (s == "hydrogen") return Subcommand::Hydrogen;
  if (s == "star") return Subcommand::Star;
  if (s == "sweep") return Subcommand::Sweep;
  throw UsageError("unknown subcommand '" + std::string(s) +
                   "' (expected solve, analytic, compare, hydrogen, star or sweep)");
}

double parse_double(std::string_view key, const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (text.empty() || end != begin + text.size() || std::isnan(v)) {
    throw UsageError(flag(key) + ": '" + text + "' is not a number");
  }
  return v;
}

long long parse_int(std::string_view key, const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const long long v = std::strtoll(begin, &end, 10);
  if (text.empty() || end != begin + text.size()) {
    throw UsageError(flag(key) + ": '" + text + "' is not an integer");
  }
  return v;
}

Json typed_value(const OptionSpec& spec, const std::vector<std::string>& raw) {
  switch (spec.type) {
    case ValueType::Double:
      return parse_double(spec.key, raw.back());
    case ValueType::Int:
      return parse_int(spec.key, raw.back());
    case ValueType::String:
      return raw.back();
    case ValueType::DoubleList: {
      Json list = Json::array();
      for (const auto& s : raw) list.push_back(parse_double(spec.key, s));
      return list;
    }
  }
  return nullptr;
}

// Reads JSON config values with the flag name in every error.
struct Reader {
  const Json& j;

  bool has(std::string_view key) const { return j.contains(std::string(key)); }

  double number(std::string_view key) const {
    const auto& v = j.at(std::string(key));
    if (!v.is_number()) throw UsageError(flag(key) + ": expected a number");
    return v.get<double>();
  }
  int integer(std::string_view key) const {
    const auto& v = j.at(std::string(key));
    if (!v.is_number()) throw UsageError(flag(key) + ": expected an integer");
    const double d = v.get<double>();
    if (d != std::floor(d) || std::abs(d) > 2e9) {
      throw UsageError(flag(key) + ": expected an integer");
    }
    return static_cast<int>(d);
  }
  std::string text(std::string_view key) const {
    const auto& v = j.at(std::string(key));
    if (!v.is_string()) throw UsageError(flag(key) + ": expected a string");
    return v.get<std::string>();
  }
  std::vector<double> numbers(std::string_view key) const {
    const auto& v = j.at(std::string(key));
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array()) throw UsageError(flag(key) + ": expected a list of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) throw UsageError(flag(key) + ": expected a list of numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }
};

void require(bool ok, std::string_view key, const std::string& what) {
  if (!ok) throw UsageError(flag(key) + " " + what);
}

void validate(const RunConfig& c, const Json& j) {
  const Reader r{j};
  const auto sub = c.subcommand;
  const bool oscillator = bit(sub) & kOscillator;
  const bool numeric = bit(sub) & kNumeric;

  if (oscillator) {
    require(c.potential == "harmonic" || c.potential == "box" || c.potential == "tabulated",
            "potential", "must be harmonic, box or tabulated");
    require(c.cutting == "identity" || c.cutting == "gaussian" || c.cutting == "tabulated",
            "cutting", "must be identity, gaussian or tabulated");
    require(c.mass > 0.0 && std::isfinite(c.mass), "mass", "must be > 0");
    require(c.omega > 0.0 && std::isfinite(c.omega), "omega", "must be > 0");
    require(c.a > 0.0, "a", "must be > 0");
    require(c.levels >= 1, "levels", "must be >= 1");
    require(c.dims >= 1, "dims", "must be >= 1");
    if (r.has("a") && c.cutting != "gaussian") {
      throw UsageError("--a conflicts with --cutting " + c.cutting);
    }
    require(c.cutting != "gaussian" || r.has("a"), "cutting", "gaussian requires --a");
    require((c.cutting == "tabulated") == !c.cutting_file.empty(), "cutting-file",
            "is required with, and only with, --cutting tabulated");
    require((c.potential == "tabulated") == !c.potential_file.empty(), "potential-file",
            "is required with, and only with, --potential tabulated");
    if (r.has("hbar")) {
      require(c.units == UnitMode::CGS, "hbar", "is only meaningful with --units cgs");
      require(c.hbar > 0.0 && std::isfinite(c.hbar), "hbar", "must be > 0");
    }
    if (c.units == UnitMode::CGS) {
      require(c.potential == "harmonic", "units",
              "cgs needs --potential harmonic (mass and omega set the scales)");
    }
    if (sub != Subcommand::Solve) {
      require(c.potential == "harmonic", "potential", "must be harmonic for " +
                                                          std::string(to_string(sub)));
      require(c.cutting != "tabulated", "cutting",
              "must be identity or gaussian for " + std::string(to_string(sub)));
    }
    if (c.dims > 1) {
      require(c.potential == "harmonic" && c.cutting != "tabulated", "dims",
              "> 1 needs a harmonic potential with identity or gaussian cutting");
    }
  }
  if (numeric) {
    require(c.x_min.has_value() == c.x_max.has_value(), c.x_min ? "x-max" : "x-min",
            "is required when the other grid bound is given");
    if (c.x_min) {
      require(std::isfinite(*c.x_min) && std::isfinite(*c.x_max) && *c.x_min < *c.x_max, "x-max",
              "must be finite and greater than --x-min");
    }
    require(c.points >= 3, "points", "must be >= 3");
    require(c.rel_tol > 0.0, "rel-tol", "must be > 0");
    require(c.max_doublings >= 1, "max-doublings", "must be >= 1");
    require(c.potential != "box" || c.x_min.has_value(), "potential",
            "box needs an explicit grid (--x-min, --x-max)");
  }
  if (sub == Subcommand::Hydrogen) {
    if (c.a_cm && c.delta) throw UsageError("--a-cm conflicts with --delta; give one of them");
    require(c.a_cm || c.delta, "a-cm", "or --delta is required");
    if (c.a_cm) require(*c.a_cm > 0.0, "a-cm", "must be > 0");
    if (c.delta) require(*c.delta >= 0.0 && std::isfinite(*c.delta), "delta", "must be >= 0");
    require(c.n >= 1, "n", "must be >= 1");
    if (c.n_max) require(*c.n_max >= c.n, "n-max", "must be >= --n");
    require(c.z >= 1, "Z", "must be >= 1");
    require(c.alpha > 0.0, "alpha", "must be > 0");
    require(c.hartree_ev > 0.0, "hartree-ev", "must be > 0");
    if (c.bethe_log_argument) {
      require(*c.bethe_log_argument > 1.0, "bethe-log-argument", "must be > 1");
    }
  }
  if (bit(sub) & kEstimate) {
    require(c.radius_cm > 0.0 && std::isfinite(c.radius_cm), "radius-cm", "must be > 0");
    require(c.neutrons >= 1.0 && std::isfinite(c.neutrons), "neutrons", "must be >= 1");
    require(c.micro_length_cm > 0.0, "micro-length-cm", "must be > 0");
    if (c.delta) require(*c.delta >= 0.0 && std::isfinite(*c.delta), "delta", "must be >= 0");
    if (sub == Subcommand::Star) {
      require(c.micro_length_cm < c.radius_cm, "micro-length-cm", "must be below --radius-cm");
    }
  }
  if (sub == Subcommand::Sweep) {
    require(!c.vary.empty(), "vary", "is required");
    try {
      sweep_parameter_from_string(c.vary);
    } catch (const std::invalid_argument& e) {
      throw UsageError("--vary: " + std::string(e.what()));
    }
    require(!c.values.empty(), "values", "needs at least one value");
  }
}

// Running

struct Oscillator {
  UnitSystem units;
  SpectralProblem problem;
  OscillatorParams params;  // oscillator units
};

Oscillator build_oscillator(const RunConfig& c) {
  Oscillator o;
  double len = 1.0;
  double energy = 1.0;
  if (c.units == UnitMode::CGS) {
    o.units = UnitSystem::cgs(c.hbar, c.mass, c.omega);
    len = o.units.length_scale();
    energy = o.units.energy_scale();
    o.params.mass = 1.0;
    o.params.omega = 1.0;
  } else {
    o.params.mass = c.mass;
    o.params.omega = c.omega;
  }
  if (c.cutting == "gaussian") o.params.cutting_length = c.a / len;

  auto& p = o.problem;
  p.mass = o.params.mass;
  p.hbar = 1.0;
  p.levels = static_cast<std::size_t>(c.levels);
  if (c.potential == "harmonic") {
    p.potential = PotentialSpec::harmonic(o.params.mass, o.params.omega);
  } else if (c.potential == "box") {
    p.potential = PotentialSpec::free_box();
  } else {
    p.potential = PotentialSpec::tabulated(
        read_table_csv(std::filesystem::path(c.potential_file)).rescaled(1.0 / len, 1.0 / energy));
  }
  if (c.cutting == "gaussian") {
    p.cutting = CuttingFunction::gaussian(o.params.cutting_length);
  } else if (c.cutting == "tabulated") {
    p.cutting = CuttingFunction::tabulated(
        read_table_csv(std::filesystem::path(c.cutting_file)).rescaled(1.0 / len, 1.0));
  }
  if (c.x_min) {
    p.grid = Grid1D::make(*c.x_min / len, *c.x_max / len, static_cast<std::size_t>(c.points));
  }
  return o;
}

struct Emission {
  Json results = Json::object();
  io::CsvTable table;
  std::vector<std::pair<std::string, std::string>> summary;
  std::vector<std::string> warnings;
  int status = kSuccess;
};

Json config_inputs(const RunConfig& c) {
  Json j = config_to_json(c);
  j.erase("format");
  j.erase("output");
  return j;
}

void write_emission(const RunConfig& c, const Emission& e, std::ostream& out) {
  switch (c.format) {
    case OutputFormat::Json: {
      Json envelope;
      envelope["tool_version"] = std::string(kToolVersion);
      envelope["inputs"] = config_inputs(c);
      envelope["results"] = e.results;
      envelope["warnings"] = e.warnings;
      out << io::dump_json(envelope);
      break;
    }
    case OutputFormat::Csv:
      io::write_csv(out, e.table);
      break;
    case OutputFormat::Table:
      for (const auto& [k, v] : e.summary) out << k << ": " << v << "\n";
      if (!e.summary.empty()) out << "\n";
      io::write_text_table(out, e.table);
      for (const auto& w : e.warnings) out << "warning: " << w << "\n";
      break;
  }
}

std::vector<double> analytic_levels(const OscillatorParams& params, int count) {
  std::vector<double> out;
  for (int n = 0; n < count; ++n) out.push_back(oscillator_level(n, params));
  return out;
}

Json ddim_json(const std::vector<DLevel>& numeric, const OscillatorParams* params, int dims,
               const UnitSystem& u, io::CsvTable& table) {
  Json list = Json::array();
  table = {};
  table.header = {"N", "energy", "degeneracy"};
  if (params) {
    table.header.insert(table.header.end(), {"analytic_energy", "analytic_degeneracy", "residual"});
  }
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    const int quanta = static_cast<int>(i);
    Json item;
    item["N"] = quanta;
    item["energy"] = u.energy_from_dimensionless(numeric[i].energy);
    item["degeneracy"] = numeric[i].degeneracy;
    std::vector<std::string> row{std::to_string(quanta),
                                 io::format_number(u.energy_from_dimensionless(numeric[i].energy)),
                                 std::to_string(numeric[i].degeneracy)};
    if (params) {
      const double exact = ddim_level(quanta, dims, *params);
      const double residual = std::abs(numeric[i].energy - exact) / std::abs(exact);
      item["analytic_energy"] = u.energy_from_dimensionless(exact);
      item["analytic_degeneracy"] = ddim_degeneracy(quanta, dims);
      item["residual"] = residual;
      row.push_back(io::format_number(u.energy_from_dimensionless(exact)));
      row.push_back(std::to_string(ddim_degeneracy(quanta, dims)));
      row.push_back(io::format_number(residual));
    }
    list.push_back(item);
    table.rows.push_back(std::move(row));
  }
  return list;
}

Emission run_numeric(const RunConfig& c) {
  Emission e;
  const auto osc = build_oscillator(c);
  SolveOptions opts;
  opts.rel_tol = c.rel_tol;
  opts.max_doublings = c.max_doublings;
  opts.default_points = static_cast<std::size_t>(c.points);
  SpectrumResult spectrum = solve_converged(osc.problem, opts);

  const bool compare = c.subcommand == Subcommand::Compare;
  if (compare) {
    spectrum.analytic_reference = analytic_levels(osc.params, c.levels);
    spectrum.residuals = residuals_vs_numeric(*spectrum.analytic_reference, spectrum.eigenvalues);
  }
  e.results = io::to_json(spectrum, osc.units);
  e.results["units"] = std::string(to_string(c.units));
  e.table = io::spectrum_csv(spectrum, osc.units);
  if (compare) {
    const double worst = *std::max_element(spectrum.residuals->begin(), spectrum.residuals->end());
    e.results["max_residual"] = worst;
    e.summary.push_back({"max_residual", io::format_number(worst)});
  }
  if (c.dims > 1) {
    const auto levels = ddim_levels_by_separability(spectrum.eigenvalues, c.dims,
                                                    static_cast<std::size_t>(c.levels));
    e.results["dims"] = c.dims;
    e.results["ddim_levels"] =
        ddim_json(levels, compare ? &osc.params : nullptr, c.dims, osc.units, e.table);
  }
  e.summary.insert(e.summary.begin(), {"converged", spectrum.converged ? "true" : "false"});
  if (!spectrum.converged) {
    e.warnings.push_back("refinement cap of " + std::to_string(c.max_doublings) +
                         " doublings reached before --rel-tol " + io::format_number(c.rel_tol));
    e.status = kNotConverged;
  }
  return e;
}

Emission run_analytic(const RunConfig& c) {
  Emission e;
  const auto osc = build_oscillator(c);
  const auto& p = osc.params;
  const auto& u = osc.units;
  const auto delta = delta_parameter(1.0, p.mass, p.omega, p.cutting_length);
  const double wbar = omega_bar(p.omega, delta);
  const double shift = p.has_cutting() ? -1.0 / (2.0 * p.mass * p.cutting_length * p.cutting_length)
                                       : 0.0;
  const double omega_scale = c.units == UnitMode::CGS ? c.omega : 1.0;
  e.results["units"] = std::string(to_string(c.units));
  e.results["delta"] = delta.value();
  e.results["omega_bar"] = wbar * omega_scale;
  e.results["relative_spacing_shift"] = relative_spacing_shift(delta);
  e.results["exact_relative_spacing_shift"] = exact_relative_spacing_shift(delta);
  e.results["level_shift"] = u.energy_from_dimensionless(shift);
  e.results["level_spacing"] = u.energy_from_dimensionless(wbar);
  Json levels = Json::array();
  e.table.header = {"n", "energy"};
  for (int n = 0; n < c.levels; ++n) {
    const double en = u.energy_from_dimensionless(oscillator_level(n, p));
    levels.push_back(en);
    e.table.rows.push_back({std::to_string(n), io::format_number(en)});
  }
  e.results["levels"] = levels;
  if (c.dims > 1) {
    e.results["dims"] = c.dims;
    Json ddim = Json::array();
    e.table = {};
    e.table.header = {"N", "energy", "degeneracy"};
    for (int n = 0; n < c.levels; ++n) {
      const double en = u.energy_from_dimensionless(ddim_level(n, c.dims, p));
      ddim.push_back(Json{{"N", n}, {"energy", en}, {"degeneracy", ddim_degeneracy(n, c.dims)}});
      e.table.rows.push_back(
          {std::to_string(n), io::format_number(en), std::to_string(ddim_degeneracy(n, c.dims))});
    }
    e.results["ddim_levels"] = ddim;
  }
  for (const char* key : {"delta", "omega_bar", "relative_spacing_shift",
                          "exact_relative_spacing_shift", "level_shift"}) {
    e.summary.push_back({key, io::format_number(e.results[key].get<double>())});
  }
  return e;
}

Emission run_hydrogen(const RunConfig& c) {
  Emission e;
  PhysicalConstants constants;
  const auto delta = c.a_cm ? hydrogen_delta(*c.a_cm, constants)
                            : DeltaParameter::from_value(*c.delta);
  const double rel = hydrogen_relative_correction(delta);
  const double lamb_rel = lamb_relative_deviation(delta);
  e.results["delta"] = delta.value();
  e.results["delta_squared"] = delta.squared();
  e.results["order_delta"] = io::optional_int(order_of_magnitude(delta.value()));
  e.results["order_delta_squared"] = io::optional_int(order_of_magnitude(delta.squared()));
  e.results["rydberg_constant_ev"] = constants.rydberg_infinity;
  e.results["rydberg_relative_correction"] = rel;
  e.results["order_rydberg_relative_correction"] = io::optional_int(order_of_magnitude(rel));
  e.results["lamb_correction_factor"] = lamb_correction_factor(delta);
  e.results["lamb_relative_deviation"] = lamb_rel;
  e.results["order_lamb_relative_deviation"] = io::optional_int(order_of_magnitude(lamb_rel));

  e.table.header = {"n",           "n_effective", "energy_ev", "standard_energy_ev",
                    "lamb_shift_ev"};
  Json levels = Json::array();
  const int last = c.n_max.value_or(c.n);
  for (int n = c.n; n <= last; ++n) {
    std::optional<double> lamb;
    if (c.bethe_log_argument) {
      LambInputs in;
      in.n = n;
      in.z = c.z;
      in.alpha = c.alpha;
      in.bethe_log_argument = *c.bethe_log_argument;
      in.hartree_energy = c.hartree_ev;
      in.delta = delta;
      lamb = lamb_shift(in);
    }
    const double neff = principal_number_substitution(n, delta);
    const double level = hydrogen_level(n, delta, constants);
    const double standard = hydrogen_level(n, DeltaParameter::from_value(0.0), constants);
    levels.push_back(Json{{"n", n},
                          {"n_effective", neff},
                          {"energy_ev", level},
                          {"standard_energy_ev", standard},
                          {"lamb_shift_ev", io::optional_number(lamb)}});
    e.table.rows.push_back({std::to_string(n), io::format_number(neff), io::format_number(level),
                            io::format_number(standard), lamb ? io::format_number(*lamb) : ""});
  }
  e.results["levels"] = levels;
  for (const char* key : {"delta", "delta_squared", "rydberg_relative_correction",
                          "lamb_relative_deviation"}) {
    e.summary.push_back({key, io::format_number(e.results[key].get<double>())});
  }
  return e;
}

StarParameters star_parameters(const RunConfig& c) {
  StarParameters p;
  p.radius_cm = c.radius_cm;
  p.particle_count = c.neutrons;
  p.micro_length_cm = c.micro_length_cm;
  p.label = c.label;
  p.delta_override = c.delta;
  return p;
}

std::optional<std::string> override_warning(const EstimateReport& r) {
  if (!r.inputs.delta_override || r.derived_delta.value() <= 0.0 || r.delta.value() <= 0.0) {
    return std::nullopt;
  }
  const double gap = std::abs(std::log10(r.delta.value()) - std::log10(r.derived_delta.value()));
  if (gap <= 1.0) return std::nullopt;
  return "delta override " + io::format_number(r.delta.value()) +
         " differs from (micro-length/radius)^2 = " + io::format_number(r.derived_delta.value()) +
         " by more than one order of magnitude";
}

Emission run_star(const RunConfig& c) {
  Emission e;
  const auto report = estimate(star_parameters(c));
  e.results = io::to_json(report);
  e.table.header = io::estimate_csv_header();
  e.table.rows.push_back(io::estimate_csv_row(report));
  if (auto w = override_warning(report)) e.warnings.push_back(*w);
  return e;
}

Emission run_sweep(const RunConfig& c) {
  Emission e;
  const auto vary = sweep_parameter_from_string(c.vary);
  const auto entries = sweep(star_parameters(c), vary, c.values);
  e.results["vary"] = std::string(to_string(vary));
  Json list = Json::array();
  for (const auto& entry : entries) {
    list.push_back(io::to_json(entry));
    if (!entry.error.empty()) {
      e.warnings.push_back("value " + io::format_number(entry.value) + ": " + entry.error);
    }
  }
  e.results["entries"] = list;
  e.table = io::sweep_csv(entries);
  return e;
}

}  // namespace

std::string_view to_string(Subcommand s) {
  switch (s) {
    case Subcommand::Solve:
      return "solve";
    case Subcommand::Analytic:
      return "analytic";
    case Subcommand::Compare:
      return "compare";
    case Subcommand::Hydrogen:
      return "hydrogen";
    case Subcommand::Star:
      return "star";
    case Subcommand::Sweep:
      return "sweep";
  }
  return "solve";
}

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json:
      return "json";
    case OutputFormat::Csv:
      return "csv";
    case OutputFormat::Table:
      return "table";
  }
  return "json";
}

RunConfig config_from_json(const Json& input) {
  if (!input.is_object()) throw UsageError("--config: top level must be a JSON object");
  Json j = input;
  if (j.contains("D")) {
    if (j.contains("neutrons")) throw UsageError("--config: 'D' conflicts with 'neutrons'");
    j["neutrons"] = j["D"];
    j.erase("D");
  }
  if (!j.contains("subcommand")) throw UsageError("no subcommand given");
  if (!j["subcommand"].is_string()) throw UsageError("--config: 'subcommand' must be a string");
  RunConfig c;
  c.subcommand = subcommand_from_string(j["subcommand"].get<std::string>());
  for (const auto& [key, value] : j.items()) {
    if (key == "subcommand") continue;
    const auto* spec = find_option(key);
    if (!spec) throw UsageError("unknown option --" + key);
    if (!(spec->applies_to & bit(c.subcommand))) {
      throw UsageError("--" + key + " does not apply to " + std::string(to_string(c.subcommand)));
    }
  }

  const Reader r{j};
  auto num = [&](std::string_view k, double& dst) {
    if (r.has(k)) dst = r.number(k);
  };
  auto opt_num = [&](std::string_view k, std::optional<double>& dst) {
    if (r.has(k)) dst = r.number(k);
  };
  auto integer = [&](std::string_view k, int& dst) {
    if (r.has(k)) dst = r.integer(k);
  };
  auto text = [&](std::string_view k, std::string& dst) {
    if (r.has(k)) dst = r.text(k);
  };

  text("potential", c.potential);
  text("potential-file", c.potential_file);
  num("omega", c.omega);
  num("mass", c.mass);
  if (r.has("a") && !r.has("cutting")) c.cutting = "gaussian";
  text("cutting", c.cutting);
  num("a", c.a);
  text("cutting-file", c.cutting_file);
  integer("dims", c.dims);
  opt_num("x-min", c.x_min);
  opt_num("x-max", c.x_max);
  integer("points", c.points);
  if (r.has("units")) {
    try {
      c.units = unit_mode_from_string(r.text("units"));
    } catch (const std::invalid_argument& e) {
      throw UsageError("--units: " + std::string(e.what()));
    }
  }
  num("hbar", c.hbar);
  integer("levels", c.levels);
  num("rel-tol", c.rel_tol);
  integer("max-doublings", c.max_doublings);

  opt_num("a-cm", c.a_cm);
  opt_num("delta", c.delta);
  integer("n", c.n);
  if (r.has("n-max")) c.n_max = r.integer("n-max");
  integer("Z", c.z);
  num("alpha", c.alpha);
  opt_num("bethe-log-argument", c.bethe_log_argument);
  num("hartree-ev", c.hartree_ev);

  num("radius-cm", c.radius_cm);
  num("neutrons", c.neutrons);
  num("micro-length-cm", c.micro_length_cm);
  text("label", c.label);
  text("vary", c.vary);
  if (r.has("values")) c.values = r.numbers("values");

  if (r.has("format")) {
    const auto f = r.text("format");
    if (f == "json") {
      c.format = OutputFormat::Json;
    } else if (f == "csv") {
      c.format = OutputFormat::Csv;
    } else if (f == "table") {
      c.format = OutputFormat::Table;
    } else {
      throw UsageError("--format must be json, csv or table");
    }
  }
  text("output", c.output);

  validate(c, j);
  return c;
}

Json config_to_json(const RunConfig& c) {
  Json j;
  const auto sub = c.subcommand;
  j["subcommand"] = std::string(to_string(sub));
  if (bit(sub) & kOscillator) {
    j["potential"] = c.potential;
    if (!c.potential_file.empty()) j["potential-file"] = c.potential_file;
    j["omega"] = c.omega;
    j["mass"] = c.mass;
    j["cutting"] = c.cutting;
    if (c.cutting == "gaussian") j["a"] = c.a;
    if (!c.cutting_file.empty()) j["cutting-file"] = c.cutting_file;
    j["dims"] = c.dims;
    j["units"] = std::string(to_string(c.units));
    if (c.units == UnitMode::CGS) j["hbar"] = c.hbar;
    j["levels"] = c.levels;
  }
  if (bit(sub) & kNumeric) {
    if (c.x_min) j["x-min"] = *c.x_min;
    if (c.x_max) j["x-max"] = *c.x_max;
    j["points"] = c.points;
    j["rel-tol"] = c.rel_tol;
    j["max-doublings"] = c.max_doublings;
  }
  if (sub == Subcommand::Hydrogen) {
    if (c.a_cm) j["a-cm"] = *c.a_cm;
    if (c.delta) j["delta"] = *c.delta;
    j["n"] = c.n;
    if (c.n_max) j["n-max"] = *c.n_max;
    j["Z"] = c.z;
    j["alpha"] = c.alpha;
    if (c.bethe_log_argument) j["bethe-log-argument"] = *c.bethe_log_argument;
    j["hartree-ev"] = c.hartree_ev;
  }
  if (bit(sub) & kEstimate) {
    j["radius-cm"] = c.radius_cm;
    j["neutrons"] = c.neutrons;
    j["micro-length-cm"] = c.micro_length_cm;
    j["label"] = c.label;
    if (c.delta) j["delta"] = *c.delta;
  }
  if (sub == Subcommand::Sweep) {
    j["vary"] = c.vary;
    j["values"] = c.values;
  }
  j["format"] = std::string(to_string(c.format));
  if (!c.output.empty()) j["output"] = c.output;
  return j;
}

RunConfig parse_args(const std::vector<std::string>& argv) {
  CLI::App app{"Spectra and estimates for f-modified quantization of classical Hamiltonians",
               "nsq"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kToolVersion));

  std::string config_path;
  bool print_config = false;
  app.add_option("--config", config_path, "JSON file with flag-named keys");
  app.add_flag("--print-config", print_config, "print the canonical config JSON and exit");

  // Raw values per key; typed after parsing so errors can name the flag.
  std::map<std::string, std::vector<std::string>, std::less<>> raw;
  std::map<std::string, CLI::Option*, std::less<>> root_opts;
  for (const auto& spec : kOptions) {
    if (spec.key == "format" || spec.key == "output") {
      root_opts[std::string(spec.key)] =
          app.add_option(flag(spec.key), raw[std::string(spec.key)], std::string(spec.help))
              ->expected(1);
    }
  }

  struct Sub {
    Subcommand id;
    CLI::App* app;
    std::map<std::string, CLI::Option*, std::less<>> opts;
  };
  std::vector<Sub> subs;
  for (auto id : {Subcommand::Solve, Subcommand::Analytic, Subcommand::Compare,
                  Subcommand::Hydrogen, Subcommand::Star, Subcommand::Sweep}) {
    Sub s{id, app.add_subcommand(std::string(to_string(id)), std::string(describe(id))), {}};
    for (const auto& spec : kOptions) {
      if (!(spec.applies_to & bit(id)) || root_opts.count(spec.key)) continue;
      std::string names = flag(spec.key);
      if (spec.key == "neutrons") names += ",-D";
      auto* opt = s.app->add_option(names, raw[std::string(spec.key)], std::string(spec.help));
      opt->type_name(type_name(spec.type));
      if (spec.type == ValueType::DoubleList) {
        opt->delimiter(',')->expected(1, -1);
      } else {
        opt->expected(1);
      }
      s.opts[std::string(spec.key)] = opt;
    }
    subs.push_back(std::move(s));
  }

  std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);  // other CLI::ParseError types escape to main()
  } catch (const CLI::CallForHelp&) {
    for (const auto& s : subs) {
      if (s.app->parsed()) throw HelpRequested{s.app->help()};
    }
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  }

  Json merged = Json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw UsageError("--config: cannot open " + config_path);
    try {
      in >> merged;
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("--config: " + config_path + ": " + e.what());
    }
    if (!merged.is_object()) throw UsageError("--config: top level must be a JSON object");
  }

  Json overrides = Json::object();
  for (const auto& s : subs) {
    if (!s.app->parsed()) continue;
    overrides["subcommand"] = std::string(to_string(s.id));
    for (const auto& [key, opt] : s.opts) {
      if (opt->count() > 0) overrides[key] = typed_value(*find_option(key), raw[key]);
    }
  }
  for (const auto& [key, opt] : root_opts) {
    if (opt->count() > 0) overrides[key] = typed_value(*find_option(key), raw[key]);
  }
  if (overrides.contains("subcommand") && merged.contains("subcommand") &&
      merged["subcommand"] != overrides["subcommand"]) {
    // A different subcommand on the command line starts from a clean slate.
    merged = Json::object();
  }
  if (overrides.contains("neutrons")) merged.erase("D");
  if (overrides.contains("cutting") && !overrides.contains("a")) {
    if (overrides["cutting"] != "gaussian") merged.erase("a");
  }
  for (const auto& [key, value] : overrides.items()) merged[key] = value;

  RunConfig config = config_from_json(merged);
  config.print_config = print_config;
  return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.print_config) {
    out << io::dump_json(config_to_json(config));
    return kSuccess;
  }
  Emission e;
  switch (config.subcommand) {
    case Subcommand::Solve:
    case Subcommand::Compare:
      e = run_numeric(config);
      break;
    case Subcommand::Analytic:
      e = run_analytic(config);
      break;
    case Subcommand::Hydrogen:
      e = run_hydrogen(config);
      break;
    case Subcommand::Star:
      e = run_star(config);
      break;
    case Subcommand::Sweep:
      e = run_sweep(config);
      break;
  }
  if (config.output.empty()) {
    write_emission(config, e, out);
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file) throw UsageError("--output: cannot write " + config.output);
    write_emission(config, e, file);
  }
  for (const auto& w : e.warnings) err << "warning: " << w << "\n";
  return e.status;
}

int main(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  std::string context = "nsq";
  try {
    const RunConfig config = parse_args(argv);
    context = "nsq " + std::string(to_string(config.subcommand));
    return run(config, out, err);
  } catch (const HelpRequested& h) {
    out << h.text;
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kSuccess;
  } catch (const CLI::Success&) {
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "nsq: " << e.what() << "\n";
    return kUsageError;
  } catch (const UsageError& e) {
    err << context << ": " << e.what() << "\n";
    return kUsageError;
  } catch (const UnconfinedError& e) {
    err << context << ": " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << context << ": " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace nsq::cli
