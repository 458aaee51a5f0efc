#include "bws/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "bws/vendor_json.hpp"

namespace bws {
namespace {

using nlohmann::json;

SequenceSpec parse_sequence_spec(const json& arr, const std::string& name, bool default_zero) {
    if (!arr.is_array())
        throw ConfigError("config key '" + name + "' must be a list of {where, expr} objects");
    SequenceSpec spec;
    spec.default_zero = default_zero;
    for (const auto& item : arr) {
        if (!item.is_object())
            throw ConfigError("entries of '" + name + "' must be {where, expr} objects");
        for (auto it = item.begin(); it != item.end(); ++it)
            if (it.key() != "where" && it.key() != "expr")
                throw ConfigError("unknown key '" + it.key() + "' in a piece of '" + name + "'");
        if (!item.contains("where") || !item.contains("expr"))
            throw ConfigError("each piece of '" + name + "' needs both 'where' and 'expr'");
        Piece piece;
        piece.cond_src = item.at("where").get<std::string>();
        piece.expr_src = item.at("expr").get<std::string>();
        piece.cond = parse_condition(piece.cond_src);
        piece.expr = parse_expression(piece.expr_src);
        spec.pieces.push_back(std::move(piece));
    }
    for (std::size_t i = 0; i + 1 < spec.pieces.size(); ++i)
        if (spec.pieces[i].cond.kind == PieceCondition::Kind::Otherwise)
            throw ConfigError("'otherwise' must be the final piece of '" + name + "'");
    return spec;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const char* where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError(std::string("unknown key '") + it.key() + "' in " + where);
}

AnalysisParams parse_analysis(const json& obj) {
    reject_unknown(obj, {"horizon", "n_max", "diverge_threshold", "sustain_threshold",
                         "mono_eps", "i_max"},
                   "'analysis'");
    AnalysisParams p;
    if (obj.contains("horizon")) p.horizon = obj.at("horizon").get<int>();
    if (obj.contains("n_max")) p.n_max = obj.at("n_max").get<int>();
    if (obj.contains("diverge_threshold")) p.diverge_ln = std::log(obj.at("diverge_threshold").get<double>());
    if (obj.contains("sustain_threshold")) p.sustain_ln = std::log(obj.at("sustain_threshold").get<double>());
    if (obj.contains("mono_eps")) p.mono_eps = obj.at("mono_eps").get<double>();
    if (obj.contains("i_max")) p.i_max = obj.at("i_max").get<int>();
    if (p.horizon < 4) throw ConfigError("analysis.horizon must be at least 4");
    if (p.n_max < 1) throw ConfigError("analysis.n_max must be at least 1");
    return p;
}

OrbitRequest parse_orbit(const json& obj) {
    reject_unknown(obj, {"vector", "steps", "schedule", "tolerance", "candidates"}, "'orbit'");
    OrbitRequest r;
    if (obj.contains("vector")) r.vector_json = obj.at("vector").dump();
    if (obj.contains("steps")) r.steps = obj.at("steps").get<int>();
    if (obj.contains("schedule")) r.schedule = obj.at("schedule").get<std::string>();
    if (obj.contains("tolerance")) r.tolerance = obj.at("tolerance").get<double>();
    if (obj.contains("candidates")) r.candidates_json = obj.at("candidates").dump();
    if (r.schedule != "all" && r.schedule != "powers_of_two")
        throw ConfigError("orbit.schedule must be 'all' or 'powers_of_two'");
    return r;
}

}  // namespace

SpaceConfig load_config_text(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
    reject_unknown(doc, {"p", "basis_variant", "a", "b", "w", "window", "analysis", "orbit",
                         "matrix"},
                   "the config");

    SpaceConfig cfg;
    if (!doc.contains("p")) throw ConfigError("config needs 'p' (number >= 1 or \"c0\")");
    const auto& p = doc.at("p");
    if (p.is_string()) {
        if (p.get<std::string>() != "c0")
            throw ConfigError("'p' must be a number >= 1 or the string \"c0\"");
        cfg.params.norm = NormKind::c0();
    } else if (p.is_number()) {
        double pv = p.get<double>();
        if (!(pv >= 1.0)) throw ConfigError("'p' must be >= 1");
        cfg.params.norm = NormKind::lp(pv);
    } else {
        throw ConfigError("'p' must be a number >= 1 or the string \"c0\"");
    }

    std::string variant = doc.value("basis_variant", std::string("split_affine"));
    if (variant == "split_affine") cfg.params.variant = BasisVariant::SplitAffine;
    else if (variant == "full_affine") cfg.params.variant = BasisVariant::FullAffine;
    else throw ConfigError("basis_variant must be 'full_affine' or 'split_affine'");

    if (!doc.contains("window")) throw ConfigError("config needs 'window' {min, max}");
    const auto& win = doc.at("window");
    reject_unknown(win, {"min", "max"}, "'window'");
    cfg.params.window.lo = win.at("min").get<int>();
    cfg.params.window.hi = win.at("max").get<int>();
    if (!(cfg.params.window.lo < 0 && 0 < cfg.params.window.hi))
        throw ConfigError("window must satisfy min < 0 < max");

    for (const char* key : {"a", "b", "w"})
        if (!doc.contains(key))
            throw ConfigError(std::string("config needs sequence '") + key + "'");
    cfg.a = parse_sequence_spec(doc.at("a"), "a", false);
    cfg.b = parse_sequence_spec(doc.at("b"), "b", true);  // only b may be absent (split basis)
    cfg.w = parse_sequence_spec(doc.at("w"), "w", false);

    if (doc.contains("analysis")) cfg.analysis = parse_analysis(doc.at("analysis"));
    if (doc.contains("orbit")) cfg.orbit = parse_orbit(doc.at("orbit"));
    if (doc.contains("matrix")) {
        reject_unknown(doc.at("matrix"), {"power"}, "'matrix'");
        MatrixRequest m;
        if (doc.at("matrix").contains("power")) m.power = doc.at("matrix").at("power").get<int>();
        if (m.power < 1) throw ConfigError("matrix.power must be >= 1");
        cfg.matrix = m;
    }
    return cfg;
}

SpaceConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_config_text(ss.str());
}

namespace {

bool split_b_is_zero(const SpaceConfig& cfg, std::int64_t n) {
    return cfg.params.variant == BasisVariant::SplitAffine && n <= -1;
}

double eval_b(const SpaceConfig& cfg, std::int64_t n) {
    if (split_b_is_zero(cfg, n)) return 0.0;
    return eval_sequence(cfg.b, n);
}

// ln(|a_{side*n}| + |b_{side*n}|) in the log domain; throws when the closed
// form cannot be evaluated there.
double ln_abs_sum(const SpaceConfig& cfg, std::int64_t n) {
    SignedLog sa = eval_sequence_slog(cfg.a, n).abs();
    SignedLog sb = split_b_is_zero(cfg, n) ? SignedLog::zero()
                                           : eval_sequence_slog(cfg.b, n).abs();
    SignedLog s = sa + sb;
    if (s.is_zero()) throw NumericError("|a|+|b| vanished at a probe index");
    return s.ln_mag;
}

// limsup (|a_{±n}|+|b_{±n}|)^{1/n} estimated from closed-form far-tail probes;
// the finite window cannot resolve these limits to 1e-6 (see the ladder the
// report carries as evidence).
void probe_radius(const SpaceConfig& cfg, bool negative_side, std::vector<RadiusProbe>& ladder,
                  double& estimate) {
    estimate = std::numeric_limits<double>::quiet_NaN();
    for (int e = 10; e <= 30; e += 4) {
        const std::int64_t n = std::int64_t(1) << e;
        try {
            double t = ln_abs_sum(cfg, negative_side ? -n : n) / static_cast<double>(n);
            double est = negative_side ? std::exp(t) : 1.0 / std::exp(t);
            ladder.push_back({n, est});
            estimate = est;
        } catch (const std::exception&) {
            break;  // keep the largest probe that evaluated
        }
    }
}

}  // namespace

ValidationReport validate_config(const SpaceConfig& cfg) {
    ValidationReport rep;
    const Window& win = cfg.params.window;

    // a coverage, a != 0, and finiteness of all three sequences on the window
    for (int n = win.lo; n <= win.hi; ++n) {
        try {
            double an = eval_sequence(cfg.a, n);
            if (an == 0.0) rep.errors.push_back("a_n = 0 at n = " + std::to_string(n));
            eval_b(cfg, n);
            eval_sequence(cfg.w, n);
        } catch (const std::exception& e) {
            rep.errors.push_back(e.what());
        }
        if (rep.errors.size() > 8) break;  // enough diagnostics
    }
    if (!rep.errors.empty()) return rep;

    // coefficient-uniqueness growth condition: the partial suprema of
    // |a_{n+1}...a_0 / (b_n...b_{-1})| must be unbounded, which is degenerately
    // true as soon as some b_n = 0 for n <= -1
    {
        double ln_num = 0.0, ln_den = 0.0;
        bool degenerate = false;
        double running_sup = -std::numeric_limits<double>::infinity();
        for (int n = -1; n >= win.lo; --n) {
            ln_num += std::log(std::abs(eval_sequence(cfg.a, n + 1)));
            double bn = eval_b(cfg, n);
            if (bn == 0.0) {
                degenerate = true;
                break;
            }
            ln_den += std::log(std::abs(bn));
            running_sup = std::max(running_sup, ln_num - ln_den);
            rep.uniqueness_sup.push_back(running_sup);
        }
        rep.uniqueness_degenerate = degenerate;
        if (degenerate) {
            rep.uniqueness_diverges = true;
        } else if (rep.uniqueness_sup.size() >= 4) {
            // growth evidence: the running sup still improving over the last quarter
            std::size_t q = rep.uniqueness_sup.size() - rep.uniqueness_sup.size() / 4;
            rep.uniqueness_diverges =
                rep.uniqueness_sup.back() > rep.uniqueness_sup[q - 1] ||
                rep.uniqueness_sup.back() > std::log(1e9);
        }
    }

    // annulus radii from the limsup formulas: far-tail probes plus the
    // window-tail raw sequence as convergence evidence
    probe_radius(cfg, true, rep.r_ladder, rep.r);
    probe_radius(cfg, false, rep.R_ladder, rep.R);
    const int quart_lo = std::max(1, (3 * std::min(-win.lo, win.hi)) / 4);
    for (int n = quart_lo; n <= std::min(-win.lo, win.hi); ++n) {
        try {
            rep.window_tail_r.push_back(std::exp(ln_abs_sum(cfg, -n) / n));
            rep.window_tail_R.push_back(1.0 / std::exp(ln_abs_sum(cfg, n) / n));
        } catch (const std::exception&) {
            break;
        }
    }
    if (std::isnan(rep.r) && !rep.window_tail_r.empty()) rep.r = rep.window_tail_r.back();
    if (std::isnan(rep.R) && !rep.window_tail_R.empty()) rep.R = rep.window_tail_R.back();
    if (std::isnan(rep.r) || std::isnan(rep.R)) {
        rep.errors.push_back("could not estimate the annulus radii (sequence evaluation failed "
                             "at every probe)");
        return rep;
    }

    // strict collapse only; r == R within probe resolution is the classical
    // weighted-shift reduction (circle domain), valid but flagged
    if (rep.r > rep.R * (1.0 + 1e-6)) {
        rep.errors.push_back("radii collapse: estimated r = " + std::to_string(rep.r) +
                             " >= R = " + std::to_string(rep.R));
        return rep;
    }
    rep.degenerate_annulus = rep.r >= rep.R * (1.0 - 1e-6);
    rep.valid = true;
    return rep;
}

SpaceContext SpaceContext::make(const SpaceConfig& cfg) {
    SpaceContext ctx;
    ctx.cfg_ = cfg;
    ctx.report_ = validate_config(cfg);
    if (!ctx.report_.valid) {
        std::string msg = "invalid configuration:";
        for (const auto& e : ctx.report_.errors) msg += "\n  " + e;
        throw ConfigError(msg);
    }
    const Window& win = cfg.params.window;
    // padding covers matrix powers, criterion horizons, and expansion tails
    const int pad = std::max(256, win.size());
    ctx.eval_lo_ = win.lo - pad;
    ctx.eval_hi_ = win.hi + pad;
    const int len = ctx.eval_hi_ - ctx.eval_lo_ + 1;
    ctx.a_.resize(len);
    ctx.b_.resize(len);
    ctx.w_.resize(len);
    for (int i = 0; i < len; ++i) {
        const std::int64_t n = ctx.eval_lo_ + i;
        ctx.a_[i] = eval_sequence(cfg.a, n);
        ctx.b_[i] = split_b_is_zero(cfg, n) ? 0.0 : eval_sequence(cfg.b, n);
        ctx.w_[i] = eval_sequence(cfg.w, n);
    }
    return ctx;
}

int SpaceContext::pos(int n) const {
    if (n < eval_lo_ || n > eval_hi_)
        throw NumericError("sequence index " + std::to_string(n) +
                           " outside the evaluated range [" + std::to_string(eval_lo_) + ", " +
                           std::to_string(eval_hi_) + "]");
    return n - eval_lo_;
}

SignedLog SpaceContext::w_product(int l, int r) const {
    if (l > r) return SignedLog::one();
    const int pl = pos(l), pr = pos(r);
    double dbl = 1.0;
    double ln = 0.0;
    int sign = 1;
    bool dbl_ok = true;
    for (int i = pl; i <= pr; ++i) {
        const double w = w_[i];
        if (w == 0.0) return SignedLog::zero();
        if (dbl_ok) {
            dbl *= w;
            if (!std::isfinite(dbl) || dbl == 0.0) dbl_ok = false;  // over/underflowed
        }
        ln += std::log(std::abs(w));
        if (w < 0.0) sign = -sign;
    }
    if (dbl_ok) return SignedLog::from_value(dbl);
    return SignedLog::from_ln(sign, ln);
}

}  // namespace bws
