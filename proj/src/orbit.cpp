#include "bws/orbit.hpp"

#include <algorithm>
#include <cmath>

#include "bws/basis.hpp"
#include "bws/shift_matrix.hpp"

namespace bws {
namespace {

double space_distance(const BilateralVector& x, const BilateralVector& y,
                      const SpaceParams& params) {
    BilateralVector d = x;
    d.coeffs -= y.coeffs;
    return vector_norm(d, params);
}

// ln of the space norm from the coefficient array, max-factored
double log_space_norm(const BilateralVector& v, const SpaceParams& params) {
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < v.coeffs.size(); ++i) {
        const double c = std::abs(v.coeffs[i]);
        if (c > 0.0) m = std::max(m, std::log(c));
    }
    if (m == -std::numeric_limits<double>::infinity()) return m;
    if (params.norm.is_c0) return m;
    const double p = params.norm.p;
    double s = 0.0;
    for (int i = 0; i < v.coeffs.size(); ++i) {
        const double c = std::abs(v.coeffs[i]);
        if (c > 0.0) s += std::exp(p * (std::log(c) - m));
    }
    return m + std::log(s) / p;
}

}  // namespace

std::vector<OrbitRecord> simulate_orbit(const SpaceContext& ctx, const BilateralVector& v0,
                                        int steps, const std::vector<BilateralVector>& candidates,
                                        OrbitSchedule schedule) {
    if (v0.basis != Basis::Schauder)
        throw ConfigError("orbit start vector must be Schauder-tagged");
    const Window& win = ctx.window();

    int min_support = win.hi + 1;
    for (int n = v0.lo(); n <= v0.hi(); ++n)
        if (v0.at(n) != 0.0) {
            min_support = n;
            break;
        }
    if (min_support > win.hi) min_support = 0;  // zero vector: nothing travels
    if (min_support - steps < win.lo)
        throw ConfigError("window too small for the orbit: mass starting at index " +
                          std::to_string(min_support) + " travels to " +
                          std::to_string(min_support - steps) + " after " +
                          std::to_string(steps) + " steps, below window.min = " +
                          std::to_string(win.lo));

    std::vector<int> nus;
    if (schedule == OrbitSchedule::All) {
        for (int nu = 1; nu <= steps; ++nu) nus.push_back(nu);
    } else {
        for (int nu = 1; nu <= steps; nu *= 2) nus.push_back(nu);
    }

    std::vector<OrbitRecord> records;
    for (int nu : nus) {
        // each power from the closed form; iterating would compound
        // window-edge truncation
        ApplyResult ar = apply(ctx, nu, v0);
        OrbitRecord rec;
        rec.nu = nu;
        rec.log_norm = log_space_norm(ar.vec, ctx.params());
        rec.norm = std::exp(rec.log_norm);
        rec.edge_taint_fraction = ar.tainted_fraction(ctx.params());
        rec.edge_dominated = rec.edge_taint_fraction > 0.25;
        for (const auto& cand : candidates)
            rec.distances.push_back(space_distance(ar.vec, cand, ctx.params()));
        records.push_back(std::move(rec));
    }
    return records;
}

LimitPointReport detect_limit_point(const std::vector<OrbitRecord>& records,
                                    const std::vector<BilateralVector>& candidates,
                                    const SpaceParams& params, double tolerance) {
    if (records.size() < 3)
        throw ConfigError("limit-point detection needs at least 3 orbit records");
    LimitPointReport rep;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (vector_norm(candidates[c], params) == 0.0) {
            rep.rejected_candidates.push_back(static_cast<int>(c));  // limit point must be nonzero
            continue;
        }
        LimitPointHit hit;
        hit.candidate = static_cast<int>(c);
        for (const auto& rec : records)
            if (c < rec.distances.size() && rec.distances[c] < tolerance)
                hit.subsequence.push_back(rec.nu);
        hit.detected = hit.subsequence.size() >= 3;
        rep.hits.push_back(std::move(hit));
    }
    return rep;
}

std::vector<DivergenceRow> check_divergent_subspace(const SpaceContext& ctx, int j_min, int j_max,
                                                    int steps) {
    if (j_min > j_max) throw ConfigError("empty monomial range");
    if (j_min - steps <= ctx.eval_lo())
        throw ConfigError("step count " + std::to_string(steps) +
                          " reaches below the evaluated sequence range");
    std::vector<DivergenceRow> rows;
    const AnalysisParams& th = ctx.cfg().analysis;
    for (int j = j_min; j <= j_max; ++j) {
        DivergenceRow row;
        row.monomial = j;
        for (int n = 1; n <= steps; ++n) {
            // B_w^n z^j = (w_j ... w_{j-n+1}) z^{j-n}
            MonomialNorm nm = monomial_norm(j - n, ctx);
            const double ln = ctx.w_product(j - n + 1, j).ln_mag + std::log(nm.value);
            row.log_norms.push_back(ln);
            if (n > 1)
                row.ratios.push_back(std::exp(row.log_norms[n - 1] - row.log_norms[n - 2]));
        }
        SeriesClass c = classify_series(row.log_norms, th);
        if (c.certified_unbounded) row.verdict = Status::Holds;
        else if (c.certified_bounded && !c.constant) row.verdict = Status::Fails;
        else if (c.constant) row.verdict = Status::Fails;  // flat orbit norm: no divergence
        else row.verdict = Status::Inconclusive;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace bws
