#include "bws/space.hpp"

#include <cmath>
#include <limits>

namespace bws {

double NormKind::q() const {
    if (is_c0) return 1.0;  // dual exponent of c0's sup norm
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    return p / (p - 1.0);
}

double vector_norm(const BilateralVector& v, const SpaceParams& params) {
    if (v.basis != Basis::Schauder)
        throw ConfigError("the space norm is defined on Schauder coefficients; "
                          "convert Laurent vectors first");
    const auto abs = v.coeffs.array().abs();
    const double m = abs.maxCoeff();
    if (params.norm.is_c0 || m == 0.0) return m;
    const double p = params.norm.p;
    // max-factored p-sum keeps intermediate powers in range
    const double s = ((abs / m).pow(p)).sum();
    return m * std::pow(s, 1.0 / p);
}

}  // namespace bws
