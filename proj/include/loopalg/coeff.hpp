#pragma once

#include "loopalg/errors.hpp"

#include <gmpxx.h>

#include <string>

namespace loopalg {

// Exact rational coefficients. GMP keeps them reduced with a positive
// denominator, so equality is plain value equality.
using Coeff = mpq_class;

inline Coeff coeff(long num, long den = 1) {
    if (den == 0)
        throw usage_error("zero denominator");
    Coeff q(num, den);
    q.canonicalize();
    return q;
}

// "p" when the denominator is 1, "p/q" otherwise.
inline std::string coeff_str(const Coeff& c) { return c.get_str(); }

} // namespace loopalg
