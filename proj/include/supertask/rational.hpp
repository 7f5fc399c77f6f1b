#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace supertask {

// Exact rational arithmetic. GMP's mpq_class does the heavy lifting; the
// helpers below pin down construction, parsing and the canonical "num/den"
// rendering used by every exact field in the file formats.
using Rat = mpq_class;

// Lowest-terms rational from an integer pair. den must be nonzero.
Rat make_rat(long long num, long long den = 1);

Rat rat_from_uint(std::uint64_t num, std::uint64_t den = 1);

// Always "num/den" in lowest terms with positive den, e.g. "0/1", "-2/7".
std::string rat_string(const Rat& value);

// Accepts "num/den", plain integers ("3", "-2") and decimal literals
// ("0.25", "1.0"). Throws std::invalid_argument on anything else.
Rat parse_rat(const std::string& text);

double rat_double(const Rat& value);

}  // namespace supertask
