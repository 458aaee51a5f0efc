#pragma once

#include <complex>

#include "bws/config.hpp"
#include "bws/space.hpp"

namespace bws {

/// Schauder expansion of the Laurent monomial z^nu:
///   z^nu = (1/a_nu) f_nu + sum_{j>=1} (-1)^j (b_nu...b_{nu+j-1})/(a_nu a_{nu+1}...a_{nu+j}) f_{nu+j},
/// truncated where the coefficients fall below eps_trunc relative to 1/|a_nu|
/// or at the window edge. In the split variant, z^nu = f_nu / a_nu exactly for
/// nu <= -1.
struct MonomialExpansion {
    int nu = 0;
    BilateralVector coeffs;   // Schauder-tagged
    double tail_bound = 0.0;  // dominates the dropped mass (coefficient sup)
};

inline constexpr double kExpansionEpsTrunc = 1e-16;

/// Throws NumericError("window exhausted...") when the truncation criterion is
/// unmet at the window edge and no geometric bound applies.
MonomialExpansion monomial_expansion(int nu, const SpaceContext& ctx);

struct MonomialNorm {
    double value = 0.0;     // the space norm of z^nu (may be inf when not member)
    bool member = false;    // whether z^nu belongs to the space (finite norm)
    double tail_bound = 0.0;
};

/// Closed-form ||z^nu||, with a geometric tail bound once the traversed
/// |b/a| ratios drop below 1. Membership is reported, not assumed.
MonomialNorm monomial_norm(int nu, const SpaceContext& ctx);

/// Laurent coefficients of a Schauder vector:
///   fhat(n) = lambda_n a_n + lambda_{n-1} b_{n-1}.
BilateralVector laurent_from_schauder(const BilateralVector& v, const SpaceContext& ctx);

/// Inverse change of basis by superposing monomial expansions; round-trips
/// with laurent_from_schauder on the window interior.
BilateralVector schauder_from_laurent(const BilateralVector& v, const SpaceContext& ctx);

/// Pointwise evaluation sum lambda_n f_n(zeta), with f_n(zeta) = (a_n + b_n zeta) zeta^n
/// per basis variant. zeta must lie strictly inside the estimated annulus.
std::complex<double> evaluate(const BilateralVector& v, std::complex<double> zeta,
                              const SpaceContext& ctx);

/// Upper bound for the coefficient functional k_n = a_n f_n* + b_{n-1} f_{n-1}*:
/// (|a_n|^q + |b_{n-1}|^q)^{1/q} for 1<p<inf, max{|a_n|,|b_{n-1}|} for p=1,
/// |a_n| + |b_{n-1}| for c0.
double coefficient_functional_bound(int n, const SpaceContext& ctx);

}  // namespace bws
