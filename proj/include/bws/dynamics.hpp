#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bws/config.hpp"
#include "bws/shift_matrix.hpp"

namespace bws {

enum class Status : std::uint8_t { Holds, Fails, Inconclusive };

std::string to_string(Status s);

/// One named series of log-magnitudes (indexed by nu = 1..horizon), or a
/// named scalar, kept as the evidence trail behind a verdict.
struct Evidence {
    std::string label;
    std::vector<double> series;  // ln|value|; empty for scalar evidence
    std::optional<double> scalar;
};

/// Tri-state verdict with its evidence and the thresholds that produced it.
/// Fails always rests on a finite certificate (constancy, certified monotone
/// tail, or a divergence certificate for sup-finiteness checks); limit
/// conditions Hold only when the divergence heuristic fires; anything weaker
/// is Inconclusive.
struct Verdict {
    Status status = Status::Inconclusive;
    std::string reason;
    std::vector<Evidence> evidence;
    AnalysisParams thresholds;
};

/// Classification of a log-magnitude series under the documented heuristics.
struct SeriesClass {
    bool diverges_limsup = false;  // running max crossed diverge_ln, last strict
                                   // improvement in the final quarter
    bool diverges_limit = false;   // limsup-diverges and the tail past the first
                                   // crossing stays above sustain_ln
    bool vanishes_liminf = false;  // mirrored: crossed -diverge_ln going down
    bool vanishes_limit = false;
    bool certified_bounded = false;  // constancy or certified monotone decrease
    bool certified_unbounded = false;  // certified monotone increase, large total
    bool constant = false;             // exact constancy across the horizon
    double sup_ln = 0.0;  // of the observed values
    int argmax = 0;       // last strict improvement of the running max (1-based)
};

SeriesClass classify_series(const std::vector<double>& ln_values, const AnalysisParams& th);

/// Criterion checks. Each consumes the padded sequence tables only; the
/// "for all n in N" quantifiers are sampled at n = 1..n_max and the sampling
/// depth is recorded in the verdict.
Verdict check_boundedness(const SpaceContext& ctx);
Verdict check_hypercyclic(const SpaceContext& ctx);
Verdict check_mixing(const SpaceContext& ctx);
Verdict check_supercyclic(const SpaceContext& ctx);
Verdict check_chaotic(const SpaceContext& ctx);
Verdict check_generic_criteria(const SpaceContext& ctx);
Verdict check_dichotomy_preconditions(const SpaceContext& ctx);

/// The aggregated analysis document (see the analyze subcommand):
/// one verdict per property plus the essential-spectrum block and the
/// hypercyclic-subspace indicator (null unless the compact-perturbation
/// hypothesis and hypercyclicity both hold).
struct AnalysisResult {
    Verdict boundedness;
    Verdict hypercyclic;
    Verdict mixing;
    Verdict supercyclic;
    Verdict chaotic;
    Verdict generic;
    Verdict dichotomy_preconditions;
    Decomposition decomposition;
    EssentialSpectrumEstimate essential_spectrum;
    std::optional<bool> hypercyclic_subspace;
};

AnalysisResult analyze(const SpaceContext& ctx);

}  // namespace bws
