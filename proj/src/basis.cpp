#include "bws/basis.hpp"

#include <cmath>

namespace bws {

MonomialExpansion monomial_expansion(int nu, const SpaceContext& ctx) {
    const Window& win = ctx.window();
    if (!win.contains(nu))
        throw NumericError("monomial index " + std::to_string(nu) + " outside the window");

    MonomialExpansion out;
    out.nu = nu;
    out.coeffs = BilateralVector::zeros(win, Basis::Schauder);

    const double lead = 1.0 / ctx.a(nu);
    out.coeffs.set(nu, lead);
    if (ctx.params().variant == BasisVariant::SplitAffine && nu <= -1) {
        // f_nu = a_nu z^nu, so the expansion is the single exact term
        return out;
    }

    double coeff = lead;
    for (int j = 1;; ++j) {
        const int idx = nu + j;
        const double ratio = -ctx.b(idx - 1) / ctx.a(idx);
        coeff *= ratio;
        if (std::abs(coeff) < kExpansionEpsTrunc * std::abs(lead)) {
            out.tail_bound = std::abs(coeff);
            return out;
        }
        if (idx > win.hi) {
            // past the edge: admissible only if the recent ratios certify a
            // geometric tail
            double rho = std::abs(ratio);
            for (int k = std::max(1, j - 4); k < j; ++k)
                rho = std::max(rho, std::abs(ctx.b(nu + k - 1) / ctx.a(nu + k)));
            if (rho < 1.0) {
                out.tail_bound = std::abs(coeff) / (1.0 - rho);
                return out;
            }
            throw NumericError("window exhausted expanding z^" + std::to_string(nu) +
                               ": no geometric bound (|b/a| ratio " + std::to_string(rho) +
                               " at the edge)");
        }
        out.coeffs.set(idx, coeff);
    }
}

MonomialNorm monomial_norm(int nu, const SpaceContext& ctx) {
    const auto& norm = ctx.params().norm;
    const double inv_a = 1.0 / std::abs(ctx.a(nu));
    MonomialNorm out;

    const bool single_term = ctx.params().variant == BasisVariant::SplitAffine && nu <= -1;
    if (single_term) {
        out.value = inv_a;
        out.member = true;
        return out;
    }

    // walk the products prod_{j=0}^{k} |b_{nu+j}/a_{nu+j+1}|, watching for a
    // geometric tail or certified growth
    const int max_steps = ctx.eval_hi() - nu - 1;
    double ln_prod = 0.0;
    double sum = 1.0;          // lp: 1 + sum of prod^p; c0: tracked as sup instead
    double sup_ratio = 0.0;    // c0 case: sup over j of the products
    bool growing = false;
    for (int k = 0; k < max_steps; ++k) {
        const double r = std::abs(ctx.b(nu + k) / ctx.a(nu + k + 1));
        if (r == 0.0) break;
        ln_prod += std::log(r);
        const double term = norm.is_c0 ? std::exp(ln_prod)
                                       : std::exp(norm.p * ln_prod);
        if (norm.is_c0) sup_ratio = std::max(sup_ratio, term);
        else sum += term;
        // convergence: term negligible relative to the accumulated value
        if (term < 1e-18 * std::max(1.0, sum)) break;
        if (!norm.is_c0 && sum > 1e200) {
            growing = true;
            break;
        }
        if (k == max_steps - 1) {
            // ran out of evaluated range: decide by the recent ratio. The sup
            // of a bounded, non-expanding product stays finite in c0, but the
            // p-sum needs strict decay.
            if (r < 1.0) out.tail_bound = term * r / (1.0 - r);
            else if (!norm.is_c0 || r > 1.0) growing = true;
        }
    }

    if (norm.is_c0) {
        out.value = growing ? std::numeric_limits<double>::infinity()
                            : inv_a * std::max(1.0, sup_ratio);
        out.member = !growing;
        return out;
    }
    if (growing) {
        out.value = std::numeric_limits<double>::infinity();
        out.member = false;
        return out;
    }
    out.value = inv_a * std::pow(sum, 1.0 / norm.p);
    out.member = std::isfinite(out.value);
    return out;
}

BilateralVector laurent_from_schauder(const BilateralVector& v, const SpaceContext& ctx) {
    if (v.basis != Basis::Schauder)
        throw ConfigError("laurent_from_schauder expects a Schauder-tagged vector");
    BilateralVector out = BilateralVector::zeros(ctx.window(), Basis::Laurent);
    for (int n = out.lo(); n <= out.hi(); ++n) {
        double fh = v.at(n) * ctx.a(n) + v.at(n - 1) * ctx.b(n - 1);
        out.set(n, fh);
    }
    return out;
}

BilateralVector schauder_from_laurent(const BilateralVector& v, const SpaceContext& ctx) {
    if (v.basis != Basis::Laurent)
        throw ConfigError("schauder_from_laurent expects a Laurent-tagged vector");
    BilateralVector out = BilateralVector::zeros(ctx.window(), Basis::Schauder);
    for (int nu = v.lo(); nu <= v.hi(); ++nu) {
        const double coeff = v.at(nu);
        if (coeff == 0.0) continue;
        MonomialExpansion exp = monomial_expansion(nu, ctx);
        out.coeffs += coeff * exp.coeffs.coeffs;
    }
    return out;
}

std::complex<double> evaluate(const BilateralVector& v, std::complex<double> zeta,
                              const SpaceContext& ctx) {
    const auto& rep = ctx.validation();
    const double mod = std::abs(zeta);
    if (!(rep.r < mod && mod < rep.R))
        throw NumericError("evaluation point |zeta| = " + std::to_string(mod) +
                           " outside the estimated annulus (" + std::to_string(rep.r) + ", " +
                           std::to_string(rep.R) + ")");
    if (v.basis != Basis::Schauder)
        throw ConfigError("evaluate expects a Schauder-tagged vector");
    std::complex<double> total = 0.0;
    for (int n = v.lo(); n <= v.hi(); ++n) {
        const double lambda = v.at(n);
        if (lambda == 0.0) continue;
        const std::complex<double> zn = std::pow(zeta, n);
        total += lambda * (ctx.a(n) + ctx.b(n) * zeta) * zn;
    }
    return total;
}

double coefficient_functional_bound(int n, const SpaceContext& ctx) {
    const double an = std::abs(ctx.a(n));
    const double bp = std::abs(ctx.b(n - 1));
    const auto& norm = ctx.params().norm;
    if (norm.is_c0) return an + bp;
    if (norm.p == 1.0) return std::max(an, bp);
    const double q = norm.q();
    return std::pow(std::pow(an, q) + std::pow(bp, q), 1.0 / q);
}

}  // namespace bws
