#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hbloch/disk_optimizer.hpp"
#include "hbloch/harmonic_mapping.hpp"

namespace hbloch {

/// Raised on malformed series literals or mapping files.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Series literal: JSON array of [re, im] pairs, index = power.
std::vector<Complex> parse_series_literal(std::string_view text);
std::string series_literal(std::span<const Complex> coefficients);

/// Mapping spec:
///   {"h": [[re,im],...], "g": [[re,im],...],
///    "tail_bound_h": number|null, "tail_bound_g": number|null}
/// "g" and the tail bounds are optional. The result is canonical (g(0) = 0).
HarmonicMapping parse_mapping(std::string_view text);
HarmonicMapping read_mapping_file(const std::filesystem::path& path);
std::string mapping_to_json(const HarmonicMapping& f);

/// CSV with header "re,im,mu", one row per grid node.
void write_mu_grid_csv(std::ostream& out, const std::vector<DiskPoint>& rows);

}  // namespace hbloch
