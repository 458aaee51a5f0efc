#include "bws/shift_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "bws/basis.hpp"

namespace bws {

double c_coefficient(int n, const SpaceContext& ctx) {
    return ctx.w(n + 1) * ctx.b(n) / ctx.a(n) - ctx.w(n) * ctx.b(n - 1) / ctx.a(n - 1);
}

SignedLog a_coefficient(int n, int nu, const SpaceContext& ctx) {
    SignedLog wprod = ctx.w_product(n - nu + 1, n);
    return wprod * ctx.a_slog(n) / ctx.a_slog(n - nu);
}

SignedLog c_power_coefficient(int n, int nu, const SpaceContext& ctx) {
    // the zero-extended b collapses this to the published case split
    SignedLog term1 = ctx.w_product(n - nu + 2, n + 1) * ctx.b_slog(n) / ctx.a_slog(n - nu + 1);
    SignedLog term2 = ctx.w_product(n - nu + 1, n) * ctx.a_slog(n) * ctx.b_slog(n - nu) /
                      (ctx.a_slog(n - nu) * ctx.a_slog(n - nu + 1));
    return term1 - term2;
}

namespace {

// closed column form of [B_w^nu]: A at row n-nu, C at row n-nu+1, then the
// alternating monomial-expansion tail below (vanishes automatically when
// b_{n-nu+1} = 0)
void fill_column(const SpaceContext& ctx, int nu, int n, Eigen::MatrixXd& m,
                 double& truncation_bound) {
    const Window& win = ctx.window();
    const int col = win.to_row(n);
    const SignedLog A = a_coefficient(n, nu, ctx);
    if (win.contains(n - nu)) m(win.to_row(n - nu), col) = A.to_real();

    const SignedLog C = c_power_coefficient(n, nu, ctx);
    if (C.is_zero()) return;
    if (win.contains(n - nu + 1)) m(win.to_row(n - nu + 1), col) = C.to_real();

    SignedLog entry = C;
    for (int j = 1;; ++j) {
        const int row = n - nu + 1 + j;
        entry = entry * SignedLog::from_value(-ctx.b(row - 1) / ctx.a(row));
        if (entry.is_zero()) return;
        if (entry.ln_mag < C.ln_mag + std::log(kExpansionEpsTrunc)) return;
        if (row > win.hi) {
            truncation_bound = std::max(truncation_bound, std::exp(entry.ln_mag));
            return;
        }
        m(win.to_row(row), col) = entry.to_real();
    }
}

}  // namespace

TruncatedMatrix assemble_matrix(const SpaceContext& ctx, int nu, int threads) {
    if (nu < 1) throw ConfigError("matrix power must be >= 1");
    const Window& win = ctx.window();
    if (nu > win.lo - ctx.eval_lo())
        throw ConfigError("matrix power " + std::to_string(nu) +
                          " exceeds the evaluated sequence range; enlarge the window");
    TruncatedMatrix out;
    out.window = win;
    out.power = nu;
    out.variant = ctx.params().variant;
    out.entries = Eigen::MatrixXd::Zero(win.size(), win.size());

    if (ctx.params().variant == BasisVariant::FullAffine && nu > 1) {
        // no closed power form for the fully affine basis; iterate
        TruncatedMatrix base = assemble_matrix(ctx, 1, threads);
        Eigen::MatrixXd acc = base.entries;
        for (int i = 1; i < nu; ++i) acc = base.entries * acc;
        out.entries = std::move(acc);
        out.truncation_bound = std::numeric_limits<double>::quiet_NaN();  // compounded, untracked
        return out;
    }

    const int cols = win.size();
    const int nthreads = std::clamp(threads, 1, 16);
    if (nthreads == 1) {
        for (int c = 0; c < cols; ++c)
            fill_column(ctx, nu, win.to_index(c), out.entries, out.truncation_bound);
        return out;
    }
    std::vector<double> bounds(nthreads, 0.0);
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t] {
            for (int c = t; c < cols; c += nthreads)
                fill_column(ctx, nu, win.to_index(c), out.entries, bounds[t]);
        });
    }
    for (auto& th : pool) th.join();
    out.truncation_bound = *std::max_element(bounds.begin(), bounds.end());
    return out;
}

double ApplyResult::tainted_fraction(const SpaceParams& params) const {
    double total = 0.0, tainted = 0.0;
    const double p = params.norm.is_c0 ? 1.0 : params.norm.p;
    for (int i = 0; i < vec.coeffs.size(); ++i) {
        const double mass = std::pow(std::abs(vec.coeffs[i]), p);
        total += mass;
        if (edge_tainted[static_cast<std::size_t>(i)]) tainted += mass;
    }
    return total == 0.0 ? 0.0 : tainted / total;
}

namespace {

ApplyResult apply_closed_form(const SpaceContext& ctx, int nu, const BilateralVector& v) {
    const Window& win = ctx.window();
    ApplyResult out;
    out.vec = BilateralVector::zeros(win, Basis::Schauder);
    out.edge_tainted.assign(static_cast<std::size_t>(win.size()), false);

    auto lambda = [&](int idx) -> SignedLog {
        return SignedLog::from_value(v.at(idx));
    };

    // rows j <= 0: only the A / C terms of columns nu+j and nu+j-1 land here
    for (int j = win.lo; j <= 0; ++j) {
        SignedLog alpha = a_coefficient(nu + j, nu, ctx) * lambda(nu + j);
        if (j >= -nu + 1)
            alpha = alpha + c_power_coefficient(nu + j - 1, nu, ctx) * lambda(nu + j - 1);
        out.vec.set(j, alpha.to_real());
    }

    // rows j >= 1 carry in addition the alternating tails of columns
    // nu-1 .. nu+j-2, folded by the recurrence S_{j+1} = (-b_j/a_{j+1})(S_j + C_{nu+j-1} l_{nu+j-1})
    SignedLog S = SignedLog::zero();
    SignedLog pending = c_power_coefficient(nu - 1, nu, ctx) * lambda(nu - 1);  // enters S at j=1
    for (int j = 1; j <= win.hi; ++j) {
        S = (S + pending) * SignedLog::from_value(-ctx.b(j - 1) / ctx.a(j));
        pending = c_power_coefficient(nu + j - 1, nu, ctx) * lambda(nu + j - 1);
        SignedLog alpha = S + pending + a_coefficient(nu + j, nu, ctx) * lambda(nu + j);
        out.vec.set(j, alpha.to_real());
    }

    for (int j = win.lo; j <= win.hi; ++j)
        if (j - win.lo < nu || win.hi - j < nu)
            out.edge_tainted[static_cast<std::size_t>(win.to_row(j))] = true;
    return out;
}

}  // namespace

ApplyResult apply(const SpaceContext& ctx, int nu, const BilateralVector& v) {
    if (nu < 1) throw ConfigError("power must be >= 1");
    if (v.basis != Basis::Schauder) throw ConfigError("apply expects a Schauder-tagged vector");
    if (nu > ctx.window().lo - ctx.eval_lo())
        throw ConfigError("power " + std::to_string(nu) +
                          " exceeds the evaluated sequence range; enlarge the window");

    if (ctx.params().variant == BasisVariant::FullAffine) {
        // the closed coordinate formula assumes the split basis (pure shift
        // columns for n <= -1); the fully affine variant goes through the
        // assembled truncation instead
        const Window& win = ctx.window();
        ApplyResult out;
        out.vec = v;
        TruncatedMatrix m1 = assemble_matrix(ctx, 1);
        for (int i = 0; i < nu; ++i) out.vec.coeffs = m1.entries * out.vec.coeffs;
        out.edge_tainted.assign(static_cast<std::size_t>(win.size()), false);
        for (int j = win.lo; j <= win.hi; ++j)
            if (j - win.lo < nu || win.hi - j < nu)
                out.edge_tainted[static_cast<std::size_t>(win.to_row(j))] = true;
        return out;
    }
    return apply_closed_form(ctx, nu, v);
}

BilateralVector apply_iterated(const SpaceContext& ctx, int nu, const BilateralVector& v) {
    if (v.basis != Basis::Schauder)
        throw ConfigError("apply_iterated expects a Schauder-tagged vector");
    TruncatedMatrix m1 = assemble_matrix(ctx, 1);
    BilateralVector out = v;
    for (int i = 0; i < nu; ++i) out.coeffs = m1.entries * out.coeffs;
    return out;
}

Decomposition decompose(const SpaceContext& ctx, int i_max) {
    if (i_max < 1) throw ConfigError("i_max must be >= 1");
    const Window& win = ctx.window();
    Decomposition dec;
    dec.window = win;
    dec.alpha.resize(static_cast<std::size_t>(win.size()));
    dec.c.resize(static_cast<std::size_t>(win.size()));
    for (int n = win.lo; n <= win.hi; ++n) {
        dec.alpha[static_cast<std::size_t>(win.to_row(n))] = ctx.w(n + 1) * ctx.a(n + 1) / ctx.a(n);
        dec.c[static_cast<std::size_t>(win.to_row(n))] = c_coefficient(n, ctx);
    }

    // ||T_i|| = sup_n |c_n| prod_{k=0}^{i-1} |b_{n+k} / a_{n+k+1}| over the window
    dec.t_norms.assign(static_cast<std::size_t>(i_max), 0.0);
    for (int n = win.lo; n <= win.hi; ++n) {
        double cn = std::abs(dec.c[static_cast<std::size_t>(win.to_row(n))]);
        if (cn == 0.0) continue;
        double ln_entry = std::log(cn);
        for (int i = 1; i <= i_max; ++i) {
            const double ratio = std::abs(ctx.b(n + i - 1) / ctx.a(n + i));
            if (ratio == 0.0) break;
            ln_entry += std::log(ratio);
            double& best = dec.t_norms[static_cast<std::size_t>(i - 1)];
            best = std::max(best, std::exp(ln_entry));
        }
    }

    // tail of sum ||T_i|| past i_max: every per-entry step multiplies by some
    // |b_m/a_{m+1}| with m >= lo + i_max, so suffix sups of the ratios give a
    // certified envelope
    {
        const int m_lo = win.lo + i_max;
        const int m_hi = ctx.eval_hi() - 1;
        if (m_lo <= m_hi) {
            std::vector<double> suffix(static_cast<std::size_t>(m_hi - m_lo + 1));
            double run = 0.0;
            for (int m = m_hi; m >= m_lo; --m) {
                run = std::max(run, std::abs(ctx.b(m) / ctx.a(m + 1)));
                suffix[static_cast<std::size_t>(m - m_lo)] = run;
            }
            double prod = 1.0, sum = 0.0;
            bool closed = false;
            for (int s = 1; s <= 4096; ++s) {
                const int m = m_lo + s - 1;
                if (m > m_hi) {
                    const double rho = suffix.back();
                    if (rho < 1.0) {
                        sum += prod * rho / (1.0 - rho);
                        closed = true;
                    }
                    break;
                }
                prod *= suffix[static_cast<std::size_t>(m - m_lo)];
                sum += prod;
                if (prod < 1e-18) {
                    closed = true;
                    break;
                }
            }
            if (closed) {
                dec.tail_bound = dec.t_norms.back() * sum;
                dec.tail_bound_valid = true;
            }
        }
    }

    // compact-perturbation evidence: |c_n| must die out toward both window ends
    {
        const int reach = std::min(-win.lo, win.hi);
        const int q1 = reach / 2, q2 = (3 * reach) / 4;
        double inner = 0.0, outer = 0.0, peak = 0.0;
        for (int n = win.lo; n <= win.hi; ++n) {
            const double cn = std::abs(dec.c[static_cast<std::size_t>(win.to_row(n))]);
            const int d = std::abs(n);
            peak = std::max(peak, cn);
            if (d >= q1 && d < q2) inner = std::max(inner, cn);
            if (d >= q2) outer = std::max(outer, cn);
        }
        if (peak == 0.0 || outer <= std::max(1e-9, 0.7 * inner))
            dec.compactness = Decomposition::Compactness::Holds;
        else if (outer >= inner && outer > 1e-6 * peak)
            dec.compactness = Decomposition::Compactness::Fails;
        else
            dec.compactness = Decomposition::Compactness::Inconclusive;
    }
    return dec;
}

EssentialSpectrumEstimate essential_spectrum_estimate(const Decomposition& dec) {
    const Window& win = dec.window;
    EssentialSpectrumEstimate est;
    est.reliable = dec.compactness == Decomposition::Compactness::Holds;
    for (std::size_t i = 0; i < dec.alpha.size(); ++i)
        if (dec.alpha[i] == 0.0)
            throw NumericError("zero weight alpha_n at n = " +
                               std::to_string(win.to_index(static_cast<int>(i))));

    const int reach = std::min(-win.lo, win.hi);
    const int nu = std::max(1, reach / 2);
    est.nu_used = nu;

    std::vector<double> prefix(dec.alpha.size() + 1, 0.0);
    for (std::size_t i = 0; i < dec.alpha.size(); ++i)
        prefix[i + 1] = prefix[i] + std::log(std::abs(dec.alpha[i]));

    double lo_mean = std::numeric_limits<double>::infinity();
    double hi_mean = -std::numeric_limits<double>::infinity();
    for (std::size_t start = 0; start + nu <= dec.alpha.size(); ++start) {
        const double mean = (prefix[start + nu] - prefix[start]) / nu;
        lo_mean = std::min(lo_mean, mean);
        hi_mean = std::max(hi_mean, mean);
    }
    est.inner = std::exp(lo_mean);
    est.outer = std::exp(hi_mean);
    est.meets_unit_circle = est.inner <= 1.0 && 1.0 <= est.outer;
    return est;
}

}  // namespace bws
