#include "bws/report.hpp"

#include <sstream>

#include "bws/basis.hpp"
#include "bws/json_out.hpp"

namespace bws {

using nlohmann::ordered_json;

namespace {

ordered_json double_array(const std::vector<double>& v) {
    ordered_json arr = ordered_json::array();
    for (double x : v) arr.push_back(x);
    return arr;
}

}  // namespace

ordered_json validation_to_json(const ValidationReport& rep) {
    ordered_json j;
    j["valid"] = rep.valid;
    j["errors"] = rep.errors;
    j["r"] = rep.r;
    j["R"] = rep.R;
    j["degenerate_annulus"] = rep.degenerate_annulus;
    ordered_json rl = ordered_json::array(), Rl = ordered_json::array();
    for (const auto& p : rep.r_ladder) rl.push_back({{"n", p.n}, {"estimate", p.estimate}});
    for (const auto& p : rep.R_ladder) Rl.push_back({{"n", p.n}, {"estimate", p.estimate}});
    j["r_probe_ladder"] = rl;
    j["R_probe_ladder"] = Rl;
    j["window_tail_r"] = double_array(rep.window_tail_r);
    j["window_tail_R"] = double_array(rep.window_tail_R);
    j["uniqueness_degenerate"] = rep.uniqueness_degenerate;
    j["uniqueness_diverges"] = rep.uniqueness_diverges;
    j["uniqueness_running_sup_ln"] = double_array(rep.uniqueness_sup);
    return j;
}

ordered_json verdict_to_json(const Verdict& v) {
    ordered_json j;
    j["status"] = to_string(v.status);
    j["reason"] = v.reason;
    ordered_json ev = ordered_json::array();
    for (const auto& e : v.evidence) {
        ordered_json item;
        item["label"] = e.label;
        if (e.scalar.has_value()) item["value"] = *e.scalar;
        else item["series"] = double_array(e.series);
        ev.push_back(std::move(item));
    }
    j["evidence"] = std::move(ev);
    j["thresholds"] = {{"horizon", v.thresholds.horizon},
                       {"n_max", v.thresholds.n_max},
                       {"diverge_ln", v.thresholds.diverge_ln},
                       {"sustain_ln", v.thresholds.sustain_ln},
                       {"mono_eps", v.thresholds.mono_eps}};
    return j;
}

ordered_json decomposition_to_json(const Decomposition& dec,
                                   const EssentialSpectrumEstimate& ess) {
    ordered_json j;
    j["alpha"] = double_array(dec.alpha);
    j["c"] = double_array(dec.c);
    j["T_norms"] = double_array(dec.t_norms);
    j["tail_bound"] = dec.tail_bound;
    j["tail_bound_valid"] = dec.tail_bound_valid;
    switch (dec.compactness) {
        case Decomposition::Compactness::Holds: j["compactness"] = "holds"; break;
        case Decomposition::Compactness::Fails: j["compactness"] = "fails"; break;
        default: j["compactness"] = "inconclusive"; break;
    }
    j["essential_spectrum"] = {{"inner", ess.inner},
                               {"outer", ess.outer},
                               {"meets_unit_circle", ess.meets_unit_circle},
                               {"nu_used", ess.nu_used},
                               {"reliable", ess.reliable}};
    return j;
}

ordered_json analysis_to_json(const SpaceContext& ctx, const AnalysisResult& res) {
    ordered_json j;
    const auto& params = ctx.params();
    ordered_json space;
    if (params.norm.is_c0) space["p"] = "c0";
    else space["p"] = params.norm.p;
    space["basis_variant"] =
        params.variant == BasisVariant::SplitAffine ? "split_affine" : "full_affine";
    space["window"] = {{"min", params.window.lo}, {"max", params.window.hi}};
    j["space"] = std::move(space);
    j["validation"] = validation_to_json(ctx.validation());
    j["boundedness"] = verdict_to_json(res.boundedness);
    j["hypercyclic"] = verdict_to_json(res.hypercyclic);
    j["mixing"] = verdict_to_json(res.mixing);
    j["supercyclic"] = verdict_to_json(res.supercyclic);
    j["chaotic"] = verdict_to_json(res.chaotic);
    j["generic"] = verdict_to_json(res.generic);
    j["dichotomy_preconditions"] = verdict_to_json(res.dichotomy_preconditions);
    j["essential_spectrum"] = {{"inner", res.essential_spectrum.inner},
                               {"outer", res.essential_spectrum.outer},
                               {"meets_unit_circle", res.essential_spectrum.meets_unit_circle},
                               {"nu_used", res.essential_spectrum.nu_used},
                               {"reliable", res.essential_spectrum.reliable}};
    if (res.hypercyclic_subspace.has_value()) j["hypercyclic_subspace"] = *res.hypercyclic_subspace;
    else j["hypercyclic_subspace"] = nullptr;
    return j;
}

std::string matrix_to_csv(const TruncatedMatrix& m) {
    std::ostringstream out;
    out << "row/col";
    for (int c = m.window.lo; c <= m.window.hi; ++c) out << "," << c;
    out << "\n";
    for (int r = m.window.lo; r <= m.window.hi; ++r) {
        out << r;
        for (int c = m.window.lo; c <= m.window.hi; ++c)
            out << "," << format_double(m.at(r, c));
        out << "\n";
    }
    return out.str();
}

std::string orbit_to_csv(const std::vector<OrbitRecord>& records) {
    std::ostringstream out;
    out << "step,norm,edge_taint_fraction";
    if (!records.empty())
        for (std::size_t i = 0; i < records[0].distances.size(); ++i)
            out << ",dist_to_candidate_" << i;
    out << "\n";
    for (const auto& rec : records) {
        out << rec.nu << "," << format_double(rec.norm) << ","
            << format_double(rec.edge_taint_fraction);
        for (double d : rec.distances) out << "," << format_double(d);
        out << "\n";
    }
    return out.str();
}

ordered_json orbit_to_json(const std::vector<OrbitRecord>& records,
                           const LimitPointReport& detection) {
    ordered_json j;
    ordered_json recs = ordered_json::array();
    for (const auto& rec : records) {
        ordered_json r;
        r["step"] = rec.nu;
        r["log_norm"] = rec.log_norm;
        r["norm"] = rec.norm;
        r["distances"] = double_array(rec.distances);
        r["edge_taint_fraction"] = rec.edge_taint_fraction;
        r["edge_dominated"] = rec.edge_dominated;
        recs.push_back(std::move(r));
    }
    j["records"] = std::move(recs);
    ordered_json hits = ordered_json::array();
    for (const auto& h : detection.hits) {
        ordered_json item;
        item["candidate"] = h.candidate;
        item["detected"] = h.detected;
        item["subsequence"] = h.subsequence;
        hits.push_back(std::move(item));
    }
    j["limit_points"] = std::move(hits);
    j["rejected_candidates"] = detection.rejected_candidates;
    return j;
}

std::string norms_to_csv(const SpaceContext& ctx, int nu_min, int nu_max) {
    std::ostringstream out;
    out << "nu,norm,member,tail_bound\n";
    for (int nu = nu_min; nu <= nu_max; ++nu) {
        MonomialNorm n = monomial_norm(nu, ctx);
        out << nu << "," << format_double(n.value) << "," << (n.member ? 1 : 0) << ","
            << format_double(n.tail_bound) << "\n";
    }
    return out.str();
}

ordered_json norms_to_json(const SpaceContext& ctx, int nu_min, int nu_max) {
    ordered_json arr = ordered_json::array();
    for (int nu = nu_min; nu <= nu_max; ++nu) {
        MonomialNorm n = monomial_norm(nu, ctx);
        arr.push_back({{"nu", nu}, {"norm", n.value}, {"member", n.member},
                       {"tail_bound", n.tail_bound}});
    }
    ordered_json j;
    j["monomial_norms"] = std::move(arr);
    return j;
}

BilateralVector vector_from_json(const nlohmann::json& j, const Window& window) {
    if (!j.is_object() || !j.contains("entries"))
        throw ConfigError("vector literal must be {\"basis\": ..., \"entries\": [[n, value], ...]}");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "basis" && it.key() != "entries")
            throw ConfigError("unknown key '" + it.key() + "' in vector literal");
    Basis basis = Basis::Schauder;
    if (j.contains("basis")) {
        const std::string b = j.at("basis").get<std::string>();
        if (b == "laurent") basis = Basis::Laurent;
        else if (b == "schauder") basis = Basis::Schauder;
        else throw ConfigError("vector basis must be 'schauder' or 'laurent'");
    }
    BilateralVector v = BilateralVector::zeros(window, basis);
    for (const auto& entry : j.at("entries")) {
        if (!entry.is_array() || entry.size() != 2)
            throw ConfigError("vector entries must be [index, value] pairs");
        v.set(entry[0].get<int>(), entry[1].get<double>());
    }
    return v;
}

}  // namespace bws
