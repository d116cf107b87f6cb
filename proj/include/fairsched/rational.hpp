#pragma once

#include <gmpxx.h>

#include <string>

#include "fairsched/errors.hpp"

namespace fairsched {

// All fairness arithmetic is exact rational; decimal strings appear only at
// the reporting boundary.
using Rat = mpq_class;

inline Rat make_rat(long long num, long long den = 1) {
    if (den == 0) throw InputError("rational with zero denominator");
    Rat r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

// Accepts "11", "-3" or "7/18".
Rat parse_rational(const std::string& text);

// Canonical exact form: "7/18", or "11" when the denominator is 1.
std::string fraction_string(const Rat& value);

// Fixed-point rendering with `digits` fractional digits, round half to even.
std::string decimal_string(const Rat& value, int digits);

inline double to_double(const Rat& value) { return value.get_d(); }

}  // namespace fairsched
