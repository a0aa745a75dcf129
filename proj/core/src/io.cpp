#include "hbloch/io.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hbloch {

namespace {

using nlohmann::json;

std::vector<Complex> series_from_json(const json& j, const char* field) {
  if (!j.is_array()) throw FormatError(std::string(field) + ": expected an array of [re, im] pairs");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw FormatError(std::string(field) + ": each coefficient must be a [re, im] number pair");
    }
    out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return out;
}

json series_to_json(std::span<const Complex> coefficients) {
  json arr = json::array();
  for (const Complex c : coefficients) arr.push_back({c.real(), c.imag()});
  return arr;
}

std::optional<double> tail_from_json(const json& j, const char* field) {
  if (!j.contains(field) || j[field].is_null()) return std::nullopt;
  if (!j[field].is_number()) throw FormatError(std::string(field) + ": expected number or null");
  return j[field].get<double>();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::vector<Complex> parse_series_literal(std::string_view text) {
  return series_from_json(parse_json(text), "series");
}

std::string series_literal(std::span<const Complex> coefficients) {
  return series_to_json(coefficients).dump();
}

HarmonicMapping parse_mapping(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("h")) throw FormatError("mapping: expected an object with an \"h\" array");
  try {
    AnalyticSeries h(series_from_json(j["h"], "h"), tail_from_json(j, "tail_bound_h"));
    AnalyticSeries g = j.contains("g") ? AnalyticSeries(series_from_json(j["g"], "g"),
                                                        tail_from_json(j, "tail_bound_g"))
                                       : AnalyticSeries({Complex{}}, tail_from_json(j, "tail_bound_g"));
    return HarmonicMapping(std::move(h), std::move(g)).canonical();
  } catch (const std::domain_error& e) {
    throw FormatError(std::string("mapping: ") + e.what());
  }
}

HarmonicMapping read_mapping_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open mapping file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_mapping(buffer.str());
}

std::string mapping_to_json(const HarmonicMapping& f) {
  json j;
  j["h"] = series_to_json(f.h.coefficients());
  j["g"] = series_to_json(f.g.coefficients());
  j["tail_bound_h"] = f.h.tail_bound() ? json(*f.h.tail_bound()) : json(nullptr);
  j["tail_bound_g"] = f.g.tail_bound() ? json(*f.g.tail_bound()) : json(nullptr);
  return j.dump();
}

void write_mu_grid_csv(std::ostream& out, const std::vector<DiskPoint>& rows) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << "re,im,mu\n" << std::setprecision(17);
  for (const auto& row : rows) out << row.z.real() << ',' << row.z.imag() << ',' << row.value << '\n';
  out.flags(flags);
  out.precision(precision);
}

}  // namespace hbloch
