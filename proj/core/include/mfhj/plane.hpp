#pragma once

#include <cmath>
#include <string>

#include "mfhj/errors.hpp"

namespace mfhj {

/// A point of the (x, t) half-plane: x is the cavity/external field
/// strength, t >= 0 the interaction strength.
struct PlanePoint {
    double x = 0.0;
    double t = 0.0;
};

/// Which one-sided limit to take on the shock line x = 0, t > 1.
enum class Side { plus, minus };

inline const char* to_string(Side s) { return s == Side::plus ? "plus" : "minus"; }

inline void require(bool ok, const std::string& message) {
    if (!ok) throw DomainError(message);
}

inline void validate(const PlanePoint& p) {
    require(std::isfinite(p.x), "x must be finite");
    require(std::isfinite(p.t), "t must be finite");
    require(p.t >= 0.0, "t must be non-negative");
}

/// log(cosh z) without overflow for large |z|.
inline double log_cosh(double z) {
    const double a = std::fabs(z);
    return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

} // namespace mfhj
