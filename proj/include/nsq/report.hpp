#pragma once

// JSON and CSV emission. JSON numbers are always written with 17 significant
// digits and keys keep insertion order, so identical inputs give identical
// bytes.

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "nsq/coherence.hpp"
#include "nsq/spectral.hpp"
#include "nsq/units.hpp"

namespace nsq::io {

using Json = nlohmann::ordered_json;

/// "%.17g"; non-finite values become "null" in JSON and "nan"/"inf" in CSV.
std::string format_number(double x);

/// Deterministic serialization with two-space indentation.
std::string dump_json(const Json& j);

/// Null for empty optionals.
Json optional_number(const std::optional<double>& x);
Json optional_int(const std::optional<int>& x);

/// SpectrumResult with energies and lengths converted out of oscillator
/// units.
Json to_json(const SpectrumResult& r, const UnitSystem& units = {});
Json to_json(const EstimateReport& r);
Json to_json(const SweepEntry& e);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Quotes a field if it contains a comma, quote, CR or LF; quotes are doubled.
std::string csv_escape(const std::string& field);
void write_csv(std::ostream& out, const CsvTable& table);
/// Space-aligned columns for humans. Not byte-stable.
void write_text_table(std::ostream& out, const CsvTable& table);

CsvTable spectrum_csv(const SpectrumResult& r, const UnitSystem& units = {});
std::vector<std::string> estimate_csv_header();
std::vector<std::string> estimate_csv_row(const EstimateReport& r);
CsvTable sweep_csv(const std::vector<SweepEntry>& entries);

}  // namespace nsq::io
