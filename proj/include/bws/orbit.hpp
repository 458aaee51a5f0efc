#pragma once

#include <string>
#include <vector>

#include "bws/config.hpp"
#include "bws/dynamics.hpp"
#include "bws/space.hpp"

namespace bws {

struct OrbitRecord {
    int nu = 0;
    double log_norm = 0.0;  // ln ||[B_w^nu] v0||
    double norm = 0.0;      // may overflow to inf; log_norm stays exact
    std::vector<double> distances;  // to each candidate, space norm
    double edge_taint_fraction = 0.0;
    bool edge_dominated = false;  // > 25% of the norm mass is edge-tainted
};

enum class OrbitSchedule : std::uint8_t { All, PowersOfTwo };

/// Iterate [B_w^nu] v0 for nu per schedule, each power computed by the closed
/// form (iteration would compound window-edge truncation), and record norms
/// and distances to the candidate vectors.
/// Throws ConfigError("window too small...") unless the window exceeds
/// steps + support(v0) on the negative side (mass travels left by nu).
std::vector<OrbitRecord> simulate_orbit(const SpaceContext& ctx, const BilateralVector& v0,
                                        int steps, const std::vector<BilateralVector>& candidates,
                                        OrbitSchedule schedule);

struct LimitPointHit {
    int candidate = 0;
    std::vector<int> subsequence;  // nu values with distance < tolerance
    bool detected = false;
};

struct LimitPointReport {
    std::vector<LimitPointHit> hits;  // one per candidate (zero candidates rejected)
    std::vector<int> rejected_candidates;  // indices with zero norm
};

/// A candidate is detected when its distances fall below tolerance along a
/// subsequence with at least 3 hits. Needs >= 3 records.
LimitPointReport detect_limit_point(const std::vector<OrbitRecord>& records,
                                    const std::vector<BilateralVector>& candidates,
                                    const SpaceParams& params, double tolerance);

struct DivergenceRow {
    int monomial = 0;                 // g = z^j
    std::vector<double> log_norms;    // ln ||B_w^n g|| for n = 1..steps
    std::vector<double> ratios;       // per-step norm ratios
    Status verdict = Status::Inconclusive;  // monotone divergence of the norms
};

/// ||B_w^n z^j|| = |w_j ... w_{j-n+1}| ||z^{j-n}||, evaluated in the log
/// domain, with per-step growth ratios and a monotone-divergence verdict.
std::vector<DivergenceRow> check_divergent_subspace(const SpaceContext& ctx, int j_min,
                                                    int j_max, int steps);

}  // namespace bws
