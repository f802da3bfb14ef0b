#pragma once

#include <cmath>
#include <string>

#include "latincs/error.hpp"

namespace latincs {

/// ln Γ(x) for x >= 0.5. Backed by std::lgamma (a few ulps in this range).
inline double log_gamma(double x) {
    if (!(x >= 0.5)) throw DomainError("log_gamma requires x >= 0.5, got " + std::to_string(x));
    return std::lgamma(x);
}

/// ln x! = ln Γ(x + 1), for real x >= 0.
inline double log_factorial(double x) { return log_gamma(x + 1.0); }

}  // namespace latincs
