#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "bws/errors.hpp"

namespace bws {

/// Contiguous bilateral index range [lo, hi] with lo < 0 < hi,
/// shared by all truncations (the matrices couple the two sides through
/// column 0).
struct Window {
    int lo = -64;
    int hi = 64;

    int size() const { return hi - lo + 1; }
    bool contains(int n) const { return lo <= n && n <= hi; }
    int to_row(int n) const { return n - lo; }
    int to_index(int row) const { return row + lo; }
};

enum class BasisVariant : std::uint8_t {
    FullAffine,   // f_n = (a_n + b_n z) z^n for every n
    SplitAffine,  // affine term only for n >= 0; f_n = a_n z^n for n <= -1
};

/// Which coefficient norm the space carries: lp(p) with p >= 1, or the
/// sup norm of c0.
struct NormKind {
    bool is_c0 = false;
    double p = 2.0;

    static NormKind lp(double p) { return NormKind{false, p}; }
    static NormKind c0() { return NormKind{true, 0.0}; }

    /// Conjugate exponent; +inf when p == 1.
    double q() const;
};

struct SpaceParams {
    NormKind norm;
    BasisVariant variant = BasisVariant::SplitAffine;
    Window window;
};

enum class Basis : std::uint8_t { Laurent, Schauder };

/// Finitely supported coefficient vector over a bilateral window, tagged with
/// the basis its coordinates refer to ({z^n} or {f_n}). Out-of-window
/// coefficients are implicitly 0.
struct BilateralVector {
    int offset = 0;  // index of coeffs[0]
    Eigen::VectorXd coeffs;
    Basis basis = Basis::Schauder;

    static BilateralVector zeros(const Window& w, Basis basis) {
        BilateralVector v;
        v.offset = w.lo;
        v.coeffs = Eigen::VectorXd::Zero(w.size());
        v.basis = basis;
        return v;
    }

    static BilateralVector unit(const Window& w, int n, Basis basis) {
        BilateralVector v = zeros(w, basis);
        v.set(n, 1.0);
        return v;
    }

    int lo() const { return offset; }
    int hi() const { return offset + static_cast<int>(coeffs.size()) - 1; }

    double at(int n) const {
        if (n < lo() || n > hi()) return 0.0;
        return coeffs[n - offset];
    }
    void set(int n, double value) {
        if (n < lo() || n > hi())
            throw NumericError("coefficient index " + std::to_string(n) +
                               " outside window [" + std::to_string(lo()) + ", " +
                               std::to_string(hi()) + "]");
        coeffs[n - offset] = value;
    }
    void add(int n, double value) {
        if (n >= lo() && n <= hi()) coeffs[n - offset] += value;
    }
};

/// The space norm on Schauder coefficients: (sum |lambda_n|^p)^(1/p) or
/// sup |lambda_n|, computed max-factored for stability.
/// Throws ConfigError if v is Laurent-tagged (the norm lives on {f_n}
/// coordinates).
double vector_norm(const BilateralVector& v, const SpaceParams& params);

}  // namespace bws
