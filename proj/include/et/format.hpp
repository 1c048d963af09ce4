#pragma once

// Deterministic ASCII number formatting shared by the CSV and JSON output
// paths: 12 significant digits, trailing zeros stripped, scientific notation
// for |x| >= 1e6 or 0 < |x| < 1e-4.

#include <string>

namespace et {

std::string format_number(double x);

// The double that format_number's output parses back to; JSON emits this so
// both output formats carry the same numbers.
double format_roundtrip(double x);

}  // namespace et
