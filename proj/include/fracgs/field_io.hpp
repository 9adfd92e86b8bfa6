#pragma once

#include <iosfwd>
#include <string>

#include "fracgs/spectral_field.hpp"
#include "json.hpp"

namespace fracgs {

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double x);

/// CSV with header "t,u", one row per grid point.
void write_field_csv(std::ostream& out, const SpectralField& field);

/// Reads a "t,u" CSV sampled on `grid`; t must match the grid within 1e-9.
SpectralField read_field_csv(std::istream& in, const Grid1D& grid);

/// {"L": ..., "N": ..., "values": [...]}
nlohmann::json field_to_json(const SpectralField& field);
SpectralField field_from_json(const nlohmann::json& record);

}  // namespace fracgs
