#pragma once

// CSV ingestion and locale-independent number formatting.

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "pairgraph/core.hpp"

namespace pairgraph {

bool is_blank(std::string_view line) noexcept;

/// Splits a comma-separated line into doubles ('.' decimal separator only).
/// Throws ValidationError naming the 1-based line and field.
std::vector<double> parse_csv_numbers(std::string_view line, std::size_t line_no);

/// Reads a paired sample laid out as `x1,...,xd,y1,...,yd`, one row per pair.
PairedSample read_paired_csv(std::istream& in);

void write_paired_csv(std::ostream& out, const PairedSample& sample);

/// 17 significant digits; round-trips every finite double.
std::string format_double(double value);

}  // namespace pairgraph
