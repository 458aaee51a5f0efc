#include "bws/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "bws/basis.hpp"

namespace bws {

std::string to_string(Status s) {
    switch (s) {
        case Status::Holds: return "holds";
        case Status::Fails: return "fails";
        case Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool all_infinite_down(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x == kNegInf; });
}

}  // namespace

SeriesClass classify_series(const std::vector<double>& v, const AnalysisParams& th) {
    SeriesClass c;
    if (v.empty()) return c;
    const int len = static_cast<int>(v.size());

    double run_max = v[0], run_min = v[0];
    int argmax = 1, argmin = 1;
    for (int i = 1; i < len; ++i) {
        if (v[i] > run_max) {
            run_max = v[i];
            argmax = i + 1;
        }
        if (v[i] < run_min) {
            run_min = v[i];
            argmin = i + 1;
        }
    }
    c.sup_ln = run_max;
    c.argmax = argmax;

    const int final_quarter = len - len / 4;

    // limsup-divergence: crossed the threshold and still improving late
    if (run_max >= th.diverge_ln && argmax >= final_quarter) {
        c.diverges_limsup = true;
        int first_cross = 0;
        while (first_cross < len && v[first_cross] < th.diverge_ln) ++first_cross;
        bool sustained = true;
        for (int i = first_cross; i < len; ++i)
            if (v[i] < th.sustain_ln) sustained = false;
        c.diverges_limit = sustained;
    }

    // mirrored classification toward zero
    if (run_min <= -th.diverge_ln && argmin >= final_quarter) {
        c.vanishes_liminf = true;
        int first_cross = 0;
        while (first_cross < len && v[first_cross] > -th.diverge_ln) ++first_cross;
        bool sustained = true;
        for (int i = first_cross; i < len; ++i)
            if (v[i] > -th.sustain_ln) sustained = false;
        c.vanishes_limit = sustained;
    }

    // finite certificates
    if (all_infinite_down(v)) {
        c.certified_bounded = true;  // identically zero
        c.constant = true;
        return c;
    }
    const double spread = run_max - run_min;
    if (std::isfinite(spread) && spread <= 1e-12) {
        c.certified_bounded = true;  // exact constancy
        c.constant = true;
        return c;
    }
    bool tail_decreasing = true, tail_increasing = true;
    for (int i = len / 2; i + 1 < len; ++i) {
        const double d = v[i + 1] - v[i];
        if (!(d <= -th.mono_eps)) tail_decreasing = false;
        if (!(d >= th.mono_eps)) tail_increasing = false;
    }
    if (tail_decreasing && argmax < final_quarter) c.certified_bounded = true;
    if (tail_increasing && v[len - 1] - v[0] >= std::log(10.0)) c.certified_unbounded = true;
    return c;
}

namespace {

Evidence series_evidence(std::string label, std::vector<double> values) {
    Evidence e;
    e.label = std::move(label);
    e.series = std::move(values);
    return e;
}

Evidence scalar_evidence(std::string label, double value) {
    Evidence e;
    e.label = std::move(label);
    e.scalar = value;
    return e;
}

double ln_abs(double x) { return x == 0.0 ? kNegInf : std::log(std::abs(x)); }

// ln |w_{n+1} ... w_{n+nu} a_{n+nu}|, the forward criterion series
double forward_ln(const SpaceContext& ctx, int n, int nu) {
    return ctx.w_product(n + 1, n + nu).ln_mag + ln_abs(ctx.a(n + nu));
}

// ln |a_{n-nu} / (w_n ... w_{n-nu+1})|, the backward criterion series
double backward_ln(const SpaceContext& ctx, int n, int nu) {
    return ln_abs(ctx.a(n - nu)) - ctx.w_product(n - nu + 1, n).ln_mag;
}

// limsup_{n -> +inf} |b_n / a_{n+1}| estimated from the window tail plus
// closed-form far probes
struct RhoEstimate {
    double value = 0.0;
    std::vector<double> window_tail;
    std::vector<double> probes;
};

RhoEstimate estimate_rho(const SpaceContext& ctx) {
    RhoEstimate est;
    const Window& win = ctx.window();
    for (int n = (3 * win.hi) / 4; n < win.hi; ++n) {
        const double r = std::abs(ctx.b(n) / ctx.a(n + 1));
        est.window_tail.push_back(r);
        est.value = std::max(est.value, r);
    }
    for (int e = 10; e <= 30; e += 4) {
        const std::int64_t n = std::int64_t(1) << e;
        try {
            SignedLog bn = ctx.params().variant == BasisVariant::SplitAffine && n <= -1
                               ? SignedLog::zero()
                               : eval_sequence_slog(ctx.cfg().b, n);
            SignedLog an1 = eval_sequence_slog(ctx.cfg().a, n + 1);
            const double r = (bn / an1).abs().to_real();
            est.probes.push_back(r);
            est.value = std::max(est.value, r);
        } catch (const std::exception&) {
            break;
        }
    }
    return est;
}

// Classification of a positive-term series sum_{n>=1} exp(term_ln[n]).
struct SumClass {
    enum class Kind { Convergent, Divergent, Inconclusive } kind = Kind::Inconclusive;
    double partial_sum = 0.0;
    double tail_bound = 0.0;
};

SumClass classify_sum(const std::vector<double>& term_ln, const AnalysisParams& th) {
    SumClass out;
    if (term_ln.empty()) return out;
    const int len = static_cast<int>(term_ln.size());
    // stable partial sum (max-factored)
    double m = *std::max_element(term_ln.begin(), term_ln.end());
    if (m == kNegInf) {
        out.kind = SumClass::Kind::Convergent;
        return out;
    }
    double s = 0.0;
    for (double t : term_ln) s += std::exp(t - m);
    out.partial_sum = std::exp(m) * s;

    bool tail_decreasing = true, tail_increasing = true;
    double worst_ratio_ln = kNegInf;
    for (int i = len / 2; i + 1 < len; ++i) {
        const double d = term_ln[i + 1] - term_ln[i];
        if (!(d <= -th.mono_eps)) tail_decreasing = false;
        if (!(d >= th.mono_eps)) tail_increasing = false;
        worst_ratio_ln = std::max(worst_ratio_ln, d);
    }
    if (term_ln[len - 1] == kNegInf) tail_decreasing = true;
    if (tail_decreasing && worst_ratio_ln < 0.0) {
        const double rho = std::exp(worst_ratio_ln);
        out.kind = SumClass::Kind::Convergent;
        out.tail_bound = term_ln[len - 1] == kNegInf
                             ? 0.0
                             : std::exp(term_ln[len - 1]) * rho / (1.0 - rho);
        return out;
    }
    if (tail_increasing && term_ln[len - 1] - term_ln[0] >= std::log(10.0)) {
        out.kind = SumClass::Kind::Divergent;
        return out;
    }
    return out;
}

// Gate shared by the characterization checks, which assume
// limsup |b_n/a_{n+1}| < 1.
bool hypothesis_gate(const RhoEstimate& rho, Verdict& v) {
    if (rho.value >= 1.0) {
        v.status = Status::Inconclusive;
        v.reason = "hypothesis violated: limsup |b_n/a_{n+1}| estimate " +
                   std::to_string(rho.value) + " >= 1, the characterization does not apply";
        return false;
    }
    return true;
}

struct HalfLineClass {
    Status status = Status::Inconclusive;  // Holds = bounded evidence, Fails = certified growth
    double sup = 0.0;
};

// Boundedness evidence for |values| ordered outward from 0.
HalfLineClass classify_sup(const std::vector<double>& ln_values, const AnalysisParams& th) {
    HalfLineClass out;
    SeriesClass c = classify_series(ln_values, th);
    out.sup = std::exp(c.sup_ln);
    if (c.certified_unbounded) {
        out.status = Status::Fails;
        return out;
    }
    if (c.certified_bounded) {
        out.status = Status::Holds;
        return out;
    }
    // flat-or-late-peak series with no growth certificate: treat a
    // non-improving final quarter as bounded evidence
    const int len = static_cast<int>(ln_values.size());
    if (c.argmax < len - len / 4) out.status = Status::Holds;
    // an increasing tail with tiny total growth is a converging sup, not
    // divergence; leave it Holds as well when the spread is small
    else {
        double total = ln_values[len - 1] - ln_values[0];
        if (std::isfinite(total) && total < std::log(10.0) &&
            ln_values[len - 1] <= c.sup_ln + 1e-12)
            out.status = Status::Holds;
    }
    return out;
}

}  // namespace

Verdict check_boundedness(const SpaceContext& ctx) {
    const Window& win = ctx.window();
    Verdict v;
    v.thresholds = ctx.cfg().analysis;

    // sup |w_{n+1} a_{n+1} / a_n| over both half-lines (necessary, and the
    // backbone of the sufficient condition)
    std::vector<double> pos, neg;
    for (int n = 0; n < win.hi; ++n) pos.push_back(ln_abs(ctx.w(n + 1) * ctx.a(n + 1) / ctx.a(n)));
    for (int n = -1; n > win.lo; --n) neg.push_back(ln_abs(ctx.w(n + 1) * ctx.a(n + 1) / ctx.a(n)));
    HalfLineClass pc = classify_sup(pos, v.thresholds);
    HalfLineClass nc = classify_sup(neg, v.thresholds);
    const double sup_gamma = std::max(pc.sup, nc.sup);
    v.evidence.push_back(scalar_evidence("sup |w_{n+1} a_{n+1}/a_n| (window)", sup_gamma));
    v.evidence.push_back(series_evidence("ln |w_{n+1}a_{n+1}/a_n|, n = 0..", pos));
    v.evidence.push_back(series_evidence("ln |w_{n+1}a_{n+1}/a_n|, n = -1..", neg));

    // sup |c_n| (necessary per the matrix columns)
    std::vector<double> cpos, cneg;
    for (int n = 0; n <= win.hi; ++n) cpos.push_back(ln_abs(c_coefficient(n, ctx)));
    for (int n = -1; n >= win.lo; --n) cneg.push_back(ln_abs(c_coefficient(n, ctx)));
    HalfLineClass ccp = classify_sup(cpos, v.thresholds);
    HalfLineClass ccn = classify_sup(cneg, v.thresholds);
    v.evidence.push_back(scalar_evidence("sup |c_n| (window)", std::max(ccp.sup, ccn.sup)));

    // limsup |b_n/a_{n+1}| estimate
    RhoEstimate rho = estimate_rho(ctx);
    v.evidence.push_back(scalar_evidence("limsup |b_n/a_{n+1}| estimate", rho.value));
    v.evidence.push_back(series_evidence("|b_n/a_{n+1}| window tail", rho.window_tail));
    if (!rho.probes.empty())
        v.evidence.push_back(series_evidence("|b_n/a_{n+1}| far probes", rho.probes));

    // subdiagonal norm series: partial sums of sum_i ||T_i||
    Decomposition dec = decompose(ctx, std::max(8, v.thresholds.i_max));
    double partial = 0.0;
    std::vector<double> partials;
    for (double t : dec.t_norms) {
        partial += t;
        partials.push_back(partial);
    }
    v.evidence.push_back(series_evidence("partial sums of sum_i ||T_i||", partials));
    v.evidence.push_back(scalar_evidence("||T_i|| tail bound", dec.tail_bound));
    const bool sum_converges = dec.tail_bound_valid && dec.tail_bound <= 1e-6 * (1.0 + partial);

    // Necessary-condition evidence: sup |w_{n+1}| ||k_{n+1}|| / ||k_n|| via the
    // coefficient-functional bounds
    {
        std::vector<double> ratio;
        for (int n = win.lo + 1; n < win.hi; ++n)
            ratio.push_back(ln_abs(ctx.w(n + 1) * coefficient_functional_bound(n + 1, ctx) /
                                   coefficient_functional_bound(n, ctx)));
        HalfLineClass rc = classify_sup(ratio, v.thresholds);
        v.evidence.push_back(
            scalar_evidence("sup |w_{n+1}| ||k_{n+1}||/||k_n|| (bound proxy)", rc.sup));
    }

    if (pc.status == Status::Fails || nc.status == Status::Fails ||
        ccp.status == Status::Fails || ccn.status == Status::Fails) {
        v.status = Status::Fails;
        v.reason = "a necessary sup diverges with a monotone growth certificate";
        return v;
    }
    if (pc.status == Status::Holds && nc.status == Status::Holds &&
        (rho.value < 1.0 || sum_converges)) {
        v.status = Status::Holds;
        v.reason = rho.value < 1.0 ? "sup condition bounded and limsup |b/a| < 1"
                                   : "sup condition bounded and the subdiagonal series converges";
        return v;
    }
    v.status = Status::Inconclusive;
    v.reason = "no certificate either way at this horizon";
    return v;
}

namespace {

struct CriterionOutcome {
    Status status = Status::Inconclusive;
    std::string reason;
    std::optional<double> certificate_sup;  // the witnessing finite sup on Fails
};

// Combine per-n classifications of "must diverge for all n" criteria.
CriterionOutcome combine_divergence(const std::vector<SeriesClass>& classes, bool need_full_limit,
                                    int n_max) {
    CriterionOutcome out;
    bool all_diverge = true;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& c = classes[i];
        if (c.certified_bounded) {
            out.status = Status::Fails;
            out.certificate_sup = std::exp(c.sup_ln);
            out.reason = "finite sup certificate at sampled n = " +
                         std::to_string(1 + i / 2) + " (sup = " +
                         std::to_string(std::exp(c.sup_ln)) + ")";
            return out;
        }
        const bool ok = need_full_limit ? c.diverges_limit : c.diverges_limsup;
        if (!ok) all_diverge = false;
    }
    if (all_diverge) {
        out.status = Status::Holds;
        out.reason = need_full_limit
                         ? "both series diverge (sustained) for every sampled n <= " +
                               std::to_string(n_max)
                         : "both series cross the divergence threshold for every sampled n <= " +
                               std::to_string(n_max);
    } else {
        out.status = Status::Inconclusive;
        out.reason = "no divergence or finiteness certificate at this horizon";
    }
    return out;
}

Verdict check_hyper_mixing(const SpaceContext& ctx, bool need_full_limit) {
    Verdict v;
    v.thresholds = ctx.cfg().analysis;
    RhoEstimate rho = estimate_rho(ctx);
    v.evidence.push_back(scalar_evidence("limsup |b_n/a_{n+1}| estimate", rho.value));
    if (!hypothesis_gate(rho, v)) return v;

    const int H = v.thresholds.horizon;
    std::vector<SeriesClass> classes;
    for (int n = 1; n <= v.thresholds.n_max; ++n) {
        std::vector<double> fwd, bwd;
        for (int nu = 1; nu <= H; ++nu) {
            fwd.push_back(forward_ln(ctx, n, nu));
            bwd.push_back(backward_ln(ctx, n, nu));
        }
        classes.push_back(classify_series(fwd, v.thresholds));
        classes.push_back(classify_series(bwd, v.thresholds));
        if (n == 1 || n == v.thresholds.n_max) {
            v.evidence.push_back(
                series_evidence("ln |w_{n+1}..w_{n+nu} a_{n+nu}|, n=" + std::to_string(n), fwd));
            v.evidence.push_back(
                series_evidence("ln |a_{n-nu}/(w_n..w_{n-nu+1})|, n=" + std::to_string(n), bwd));
        }
    }
    CriterionOutcome res = combine_divergence(classes, need_full_limit, v.thresholds.n_max);
    v.status = res.status;
    v.reason = res.reason;
    if (res.certificate_sup)
        v.evidence.push_back(scalar_evidence("fails certificate sup", *res.certificate_sup));
    return v;
}

}  // namespace

Verdict check_hypercyclic(const SpaceContext& ctx) { return check_hyper_mixing(ctx, false); }

Verdict check_mixing(const SpaceContext& ctx) { return check_hyper_mixing(ctx, true); }

Verdict check_supercyclic(const SpaceContext& ctx) {
    Verdict v;
    v.thresholds = ctx.cfg().analysis;
    RhoEstimate rho = estimate_rho(ctx);
    v.evidence.push_back(scalar_evidence("limsup |b_n/a_{n+1}| estimate", rho.value));
    if (!hypothesis_gate(rho, v)) return v;

    const int H = v.thresholds.horizon;
    bool all_diverge = true;
    for (int n = 1; n <= v.thresholds.n_max; ++n) {
        std::vector<double> series;
        for (int nu = 1; nu <= H; ++nu) {
            const double t = ctx.w_product(n + 1, n + nu).ln_mag -
                             ctx.w_product(n - nu + 1, n).ln_mag + ln_abs(ctx.a(n + nu)) +
                             ln_abs(ctx.a(n - nu));
            series.push_back(t);
        }
        SeriesClass c = classify_series(series, v.thresholds);
        if (n == 1 || n == v.thresholds.n_max)
            v.evidence.push_back(series_evidence(
                "ln |w_{n+1}..w_{n+nu}/(w_n..w_{n-nu+1}) a_{n+nu} a_{n-nu}|, n=" + std::to_string(n),
                series));
        if (c.certified_bounded) {
            v.status = Status::Fails;
            v.reason = "finite sup certificate at sampled n = " + std::to_string(n) +
                       " (sup = " + std::to_string(std::exp(c.sup_ln)) + ")";
            v.evidence.push_back(scalar_evidence("fails certificate sup", std::exp(c.sup_ln)));
            return v;
        }
        if (!c.diverges_limsup) all_diverge = false;
    }
    v.status = all_diverge ? Status::Holds : Status::Inconclusive;
    v.reason = all_diverge
                   ? "the ratio series crosses the divergence threshold for every sampled n"
                   : "no divergence or finiteness certificate at this horizon";
    return v;
}

Verdict check_chaotic(const SpaceContext& ctx) {
    Verdict v;
    v.thresholds = ctx.cfg().analysis;
    const NormKind& norm = ctx.params().norm;

    RhoEstimate rho = estimate_rho(ctx);
    v.evidence.push_back(scalar_evidence("limsup |b_n/a_{n+1}| estimate", rho.value));

    const double p = norm.is_c0 ? 1.0 : norm.p;  // c0/p=1 reported but out of scope
    const int H = v.thresholds.horizon;

    // sum_n |w_0...w_{-n+1} / a_{-n}|^p  and  sum_n |1/(w_1...w_n a_n)|^p
    std::vector<double> neg_terms, pos_terms;
    for (int n = 1; n <= H; ++n) {
        neg_terms.push_back(p * (ctx.w_product(-n + 1, 0).ln_mag - ln_abs(ctx.a(-n))));
        pos_terms.push_back(p * (-ctx.w_product(1, n).ln_mag - ln_abs(ctx.a(n))));
    }
    SumClass neg = classify_sum(neg_terms, v.thresholds);
    SumClass pos = classify_sum(pos_terms, v.thresholds);
    v.evidence.push_back(series_evidence("ln |w_0..w_{-n+1}/a_{-n}|^p terms", neg_terms));
    v.evidence.push_back(series_evidence("ln |1/(w_1..w_n a_n)|^p terms", pos_terms));
    v.evidence.push_back(scalar_evidence("negative-side partial sum", neg.partial_sum));
    v.evidence.push_back(scalar_evidence("positive-side partial sum", pos.partial_sum));

    // the q/p double series deciding whether the series test is also sufficient
    bool equivalence_holds = false;
    {
        const double q = norm.is_c0 ? 1.0 : norm.q();
        const int outer_cap = std::min(128, ctx.eval_hi() - ctx.window().hi);
        std::vector<double> outer_ln;
        for (int n = 1; n <= outer_cap; ++n) {
            double inner = 0.0;
            double ln_prod = 0.0;
            for (int j = 1; n + j < ctx.eval_hi(); ++j) {
                const double r = std::abs(ctx.b(n + j - 1) / ctx.a(n + j));
                if (r == 0.0) break;
                ln_prod += p * std::log(r);
                const double term = std::exp(ln_prod);
                inner += term;
                if (term < 1e-18 * std::max(1.0, inner)) break;
                if (inner > 1e100) break;
            }
            outer_ln.push_back(inner == 0.0 ? kNegInf : (q / p) * std::log(inner));
        }
        // dyadic-block Cauchy evidence
        double block1 = 0.0, block2 = 0.0;
        for (int n = outer_cap / 4; n < outer_cap / 2; ++n) block1 += std::exp(outer_ln[n - 1]);
        for (int n = outer_cap / 2; n < outer_cap; ++n) block2 += std::exp(outer_ln[n - 1]);
        equivalence_holds = block2 <= 0.6 * block1 || (block1 == 0.0 && block2 == 0.0);
        v.evidence.push_back(scalar_evidence("equivalence double-series dyadic block [N/4,N/2)", block1));
        v.evidence.push_back(scalar_evidence("equivalence double-series dyadic block [N/2,N)", block2));
        v.evidence.push_back(scalar_evidence("equivalence condition holds", equivalence_holds ? 1.0 : 0.0));
    }

    if (norm.is_c0 || norm.p <= 1.0) {
        v.status = Status::Inconclusive;
        v.reason = "chaos characterization covers 1 < p < inf only; series reported, no verdict";
        return v;
    }
    if (rho.value >= 1.0) {
        v.status = Status::Inconclusive;
        v.reason = "hypothesis violated: limsup |b_n/a_{n+1}| estimate >= 1";
        return v;
    }

    if (neg.kind == SumClass::Kind::Divergent || pos.kind == SumClass::Kind::Divergent) {
        // the series test is necessary: chaos (and periodic vectors) fail
        v.status = Status::Fails;
        v.reason = "a characterizing series diverges; the series test is necessary, so chaos fails";
        return v;
    }
    if (neg.kind == SumClass::Kind::Convergent && pos.kind == SumClass::Kind::Convergent) {
        if (equivalence_holds) {
            v.status = Status::Holds;
            v.reason = "both series converge and the equivalence condition holds, so the series test is sufficient";
            return v;
        }
        v.status = Status::Inconclusive;
        v.reason = "the series test passes but the equivalence condition is not certified; "
                   "only the necessary direction is available";
        return v;
    }
    v.status = Status::Inconclusive;
    v.reason = "series behavior not certified at this horizon";
    return v;
}

Verdict check_generic_criteria(const SpaceContext& ctx) {
    Verdict v;
    v.thresholds = ctx.cfg().analysis;
    const int H = v.thresholds.horizon;

    // cache ln ||z^m|| over the reachable range
    const int m_lo = -v.thresholds.horizon + 1 - 1;
    const int m_hi = v.thresholds.n_max + v.thresholds.horizon;
    std::vector<double> ln_norm(static_cast<std::size_t>(m_hi - m_lo + 1));
    std::vector<bool> member(static_cast<std::size_t>(m_hi - m_lo + 1));
    for (int m = m_lo; m <= m_hi; ++m) {
        MonomialNorm nm = monomial_norm(m, ctx);
        ln_norm[static_cast<std::size_t>(m - m_lo)] = std::log(nm.value);
        member[static_cast<std::size_t>(m - m_lo)] = nm.member;
    }
    auto z_ln = [&](int m) { return ln_norm[static_cast<std::size_t>(m - m_lo)]; };
    for (int m = m_lo; m <= m_hi; ++m)
        if (!member[static_cast<std::size_t>(m - m_lo)]) {
            v.status = Status::Inconclusive;
            v.reason = "z^" + std::to_string(m) + " is not in the space; the norm criteria need "
                       "all Laurent monomials";
            return v;
        }

    bool hyper_all = true, mixing_all = true, super_all = true;
    bool hyper_blocked = false, super_blocked = false;
    // a series certifiably bounded away from 0 (constant, or growing) blocks liminf -> 0
    auto away_from_zero = [&](const SeriesClass& c) {
        return c.certified_unbounded || (c.constant && c.sup_ln > -v.thresholds.diverge_ln);
    };
    for (int n = 1; n <= v.thresholds.n_max; ++n) {
        std::vector<double> down, up, prod;
        for (int nu = 1; nu <= H; ++nu) {
            const double d = ctx.w_product(n - nu + 1, n).ln_mag + z_ln(n - nu);
            const double u = z_ln(n + nu) - ctx.w_product(n + 1, n + nu).ln_mag;
            down.push_back(d);
            up.push_back(u);
            prod.push_back(d + u);  // |w_n..w_{n-nu+1}/(w_{n+1}..w_{n+nu})| ||z^{n-nu}|| ||z^{n+nu}||
        }
        SeriesClass cd = classify_series(down, v.thresholds);
        SeriesClass cu = classify_series(up, v.thresholds);
        SeriesClass cp = classify_series(prod, v.thresholds);
        if (n == 1) {
            v.evidence.push_back(series_evidence("ln |w_n..w_{n-nu+1}| ||z^{n-nu}||, n=1", down));
            v.evidence.push_back(series_evidence("ln ||z^{n+nu}||/|w_{n+1}..w_{n+nu}|, n=1", up));
            v.evidence.push_back(series_evidence("ln supercyclicity product, n=1", prod));
        }
        if (!(cd.vanishes_liminf && cu.vanishes_liminf)) hyper_all = false;
        if (!(cd.vanishes_limit && cu.vanishes_limit)) mixing_all = false;
        if (!cp.vanishes_liminf) super_all = false;
        if (away_from_zero(cd) || away_from_zero(cu)) hyper_blocked = true;
        if (away_from_zero(cp)) super_blocked = true;
    }

    // chaos sufficient condition sampled over the coordinate functionals f_m*:
    // sum_nu |f_m*(z^nu)| / |w_1..w_nu|  and  sum_nu |w_0..w_{-nu+1}| |f_m*(z^{-nu})|
    Status chaos_sub = Status::Holds;
    {
        const int m_span = std::min({16, -ctx.window().lo - 1, ctx.window().hi - 1});
        const int nu_cap = std::min(H, std::min(-ctx.window().lo, ctx.window().hi) - 1);
        std::vector<MonomialExpansion> expansions;  // z^nu and z^{-nu}, nu = 1..nu_cap
        bool expansion_ok = true;
        try {
            for (int nu = -nu_cap; nu <= nu_cap; ++nu) expansions.push_back(monomial_expansion(nu, ctx));
        } catch (const std::exception&) {
            expansion_ok = false;
        }
        std::vector<double> per_m_sums;
        if (expansion_ok) {
            auto expansion_at = [&](int nu) -> const MonomialExpansion& {
                return expansions[static_cast<std::size_t>(nu + nu_cap)];
            };
            for (int m = -m_span; m <= m_span && chaos_sub != Status::Fails; ++m) {
                std::vector<double> terms;
                for (int nu = 1; nu <= nu_cap; ++nu) {
                    const double cpos = std::abs(expansion_at(nu).coeffs.at(m));
                    if (cpos != 0.0)
                        terms.push_back(std::log(cpos) - ctx.w_product(1, nu).ln_mag);
                    const double cneg = std::abs(expansion_at(-nu).coeffs.at(m));
                    if (cneg != 0.0)
                        terms.push_back(std::log(cneg) + ctx.w_product(-nu + 1, 0).ln_mag);
                }
                SumClass sc = classify_sum(terms, v.thresholds);
                per_m_sums.push_back(sc.partial_sum);
                if (sc.kind == SumClass::Kind::Divergent) chaos_sub = Status::Fails;
                else if (sc.kind == SumClass::Kind::Inconclusive && !terms.empty())
                    chaos_sub = Status::Inconclusive;
            }
            // the functional family must stay uniformly bounded: growth of the
            // per-m sums toward either end refutes the sufficient condition
            if (chaos_sub == Status::Holds && per_m_sums.size() >= 8) {
                std::vector<double> outward_pos, outward_neg;
                for (int m = 0; m <= m_span; ++m)
                    outward_pos.push_back(ln_abs(per_m_sums[static_cast<std::size_t>(m + m_span)]));
                for (int m = 0; m <= m_span; ++m)
                    outward_neg.push_back(ln_abs(per_m_sums[static_cast<std::size_t>(m_span - m)]));
                if (classify_series(outward_pos, v.thresholds).certified_unbounded ||
                    classify_series(outward_neg, v.thresholds).certified_unbounded)
                    chaos_sub = Status::Fails;
            }
        } else {
            chaos_sub = Status::Inconclusive;
        }
        v.evidence.push_back(series_evidence("per-functional chaos sums over m", per_m_sums));
    }

    auto sub = [&](bool holds, bool blocked) {
        if (holds) return Status::Holds;
        if (blocked) return Status::Fails;
        return Status::Inconclusive;
    };
    const Status hyper_sub = sub(hyper_all, hyper_blocked);
    const Status mixing_sub = sub(mixing_all, hyper_blocked);
    const Status super_sub = sub(super_all, super_blocked);
    v.evidence.push_back(scalar_evidence("sufficient-only: hypercyclic sub-verdict holds",
                                         hyper_sub == Status::Holds ? 1.0 : 0.0));
    v.evidence.push_back(scalar_evidence("sufficient-only: mixing sub-verdict holds",
                                         mixing_sub == Status::Holds ? 1.0 : 0.0));
    v.evidence.push_back(scalar_evidence("sufficient-only: supercyclic sub-verdict holds",
                                         super_sub == Status::Holds ? 1.0 : 0.0));
    v.evidence.push_back(scalar_evidence("sufficient-only: chaotic sub-verdict holds",
                                         chaos_sub == Status::Holds ? 1.0 : 0.0));

    v.status = hyper_sub;
    v.reason = "norm-based sufficient criteria; sub-verdicts in evidence (a non-Holds "
               "sub-verdict does not refute the property)";
    return v;
}

Verdict check_dichotomy_preconditions(const SpaceContext& ctx) {
    const Window& win = ctx.window();
    Verdict v;
    v.thresholds = ctx.cfg().analysis;

    // first precondition: sup |w_{n+1} a_{n+1}/a_n|
    std::vector<double> pos, neg;
    for (int n = 0; n < win.hi; ++n) pos.push_back(ln_abs(ctx.w(n + 1) * ctx.a(n + 1) / ctx.a(n)));
    for (int n = -1; n > win.lo; --n) neg.push_back(ln_abs(ctx.w(n + 1) * ctx.a(n + 1) / ctx.a(n)));
    HalfLineClass s1p = classify_sup(pos, v.thresholds);
    HalfLineClass s1n = classify_sup(neg, v.thresholds);
    const Status s1 = (s1p.status == Status::Fails || s1n.status == Status::Fails)
                          ? Status::Fails
                          : (s1p.status == Status::Holds && s1n.status == Status::Holds
                                 ? Status::Holds
                                 : Status::Inconclusive);
    v.evidence.push_back(scalar_evidence("sup |w_{n+1}a_{n+1}/a_n|", std::max(s1p.sup, s1n.sup)));

    // second precondition: limsup |b_n/a_{n+1}| < 1
    RhoEstimate rho = estimate_rho(ctx);
    const Status s2 = rho.value < 1.0 ? Status::Holds : Status::Fails;
    v.evidence.push_back(scalar_evidence("limsup |b_n/a_{n+1}| estimate", rho.value));

    // third precondition: sup_{n>=1} |w_0...w_{-n+1}/a_{-n}|
    std::vector<double> third;
    for (int n = 1; n <= v.thresholds.horizon; ++n)
        third.push_back(ctx.w_product(-n + 1, 0).ln_mag - ln_abs(ctx.a(-n)));
    HalfLineClass s3c = classify_sup(third, v.thresholds);
    v.evidence.push_back(series_evidence("ln |w_0..w_{-n+1}/a_{-n}|", third));
    v.evidence.push_back(scalar_evidence("sup |w_0..w_{-n+1}/a_{-n}| (horizon)", s3c.sup));

    if (s1 == Status::Fails || s2 == Status::Fails || s3c.status == Status::Fails) {
        v.status = Status::Fails;
        v.reason = "a precondition sup diverges (monotone growth certificate) or limsup "
                   "|b/a| >= 1";
        return v;
    }
    if (s1 == Status::Holds && s2 == Status::Holds && s3c.status == Status::Holds) {
        v.status = Status::Holds;
        v.reason = "all three sups bounded with certificates";
        return v;
    }
    v.status = Status::Inconclusive;
    v.reason = "no certificate for at least one precondition";
    return v;
}

AnalysisResult analyze(const SpaceContext& ctx) {
    AnalysisResult r;
    r.boundedness = check_boundedness(ctx);
    r.hypercyclic = check_hypercyclic(ctx);
    r.mixing = check_mixing(ctx);
    r.supercyclic = check_supercyclic(ctx);
    r.chaotic = check_chaotic(ctx);
    r.generic = check_generic_criteria(ctx);
    r.dichotomy_preconditions = check_dichotomy_preconditions(ctx);
    r.decomposition = decompose(ctx, ctx.cfg().analysis.i_max);
    r.essential_spectrum = essential_spectrum_estimate(r.decomposition);
    if (r.decomposition.compactness == Decomposition::Compactness::Holds &&
        r.hypercyclic.status == Status::Holds)
        r.hypercyclic_subspace = r.essential_spectrum.meets_unit_circle;
    return r;
}

}  // namespace bws
