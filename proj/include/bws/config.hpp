#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bws/sequence.hpp"
#include "bws/signed_log.hpp"
#include "bws/space.hpp"

namespace bws {

/// Analysis knobs with the documented defaults; any of them can be overridden
/// per config file or per CLI invocation.
struct AnalysisParams {
    int horizon = 48;
    int n_max = 8;
    double diverge_ln = std::log(1e9);  // running-max crossing level
    double sustain_ln = std::log(1e6);  // full-limit tails must stay above
    double mono_eps = 1e-12;            // margin for monotone certificates
    int i_max = 64;                     // subdiagonal pieces kept in decompositions
};

struct OrbitRequest {
    std::string vector_json;  // inline JSON or empty
    int steps = 32;
    std::string schedule = "powers_of_two";  // or "all"
    double tolerance = 1e-3;
    std::string candidates_json;  // inline JSON array or empty for defaults
};

struct MatrixRequest {
    int power = 1;
};

/// A full experiment description: the space (sequences + norm + window),
/// analysis parameters, and optional orbit/matrix blocks.
struct SpaceConfig {
    SpaceParams params;
    SequenceSpec a, b, w;
    AnalysisParams analysis;
    std::optional<OrbitRequest> orbit;
    std::optional<MatrixRequest> matrix;
};

/// Parse a config JSON document (see README for the schema).
/// Unknown keys are rejected.
SpaceConfig load_config_text(const std::string& json_text);
SpaceConfig load_config_file(const std::string& path);

struct RadiusProbe {
    std::int64_t n;      // probe index magnitude
    double estimate;     // (|a_{±n}| + |b_{±n}|)^{1/n} (inverted for R)
};

struct ValidationReport {
    bool valid = false;
    std::vector<std::string> errors;

    double r = 0.0;
    double R = 0.0;
    bool degenerate_annulus = false;  // r == R within tolerance (classical reduction)

    std::vector<RadiusProbe> r_ladder;   // far-tail probes, increasing n
    std::vector<RadiusProbe> R_ladder;
    std::vector<double> window_tail_r;   // raw (|a_{-n}|+|b_{-n}|)^{1/n} over the
    std::vector<double> window_tail_R;   // window's top quartile, for the record

    bool uniqueness_degenerate = false;      // some b_n = 0, n <= -1
    std::vector<double> uniqueness_sup;      // running sup of |a_{n+1}...a_0 / b_n...b_{-1}|
    bool uniqueness_diverges = false;
};

/// Standing-assumption checks: a_n != 0 and finite across the window,
/// assumption (2) growth evidence, far-tail radii estimates, r < R.
/// Never throws for diagnosable problems; they land in report.errors.
ValidationReport validate_config(const SpaceConfig& cfg);

/// Evaluated sequence tables over a padded range around the window, with
/// prefix sums for O(1) signed-log weight products. The b table is
/// zero-extended below 0 in the SplitAffine variant regardless of the spec.
class SpaceContext {
  public:
    /// Validates and builds; throws ConfigError when validation fails.
    static SpaceContext make(const SpaceConfig& cfg);

    const SpaceConfig& cfg() const { return cfg_; }
    const SpaceParams& params() const { return cfg_.params; }
    const Window& window() const { return cfg_.params.window; }
    const ValidationReport& validation() const { return report_; }

    int eval_lo() const { return eval_lo_; }
    int eval_hi() const { return eval_hi_; }

    double a(int n) const { return a_[pos(n)]; }
    double b(int n) const { return b_[pos(n)]; }
    double w(int n) const { return w_[pos(n)]; }

    SignedLog a_slog(int n) const { return SignedLog::from_value(a(n)); }
    SignedLog b_slog(int n) const { return SignedLog::from_value(b(n)); }

    /// prod_{i=l}^{r} w_i as a SignedLog (empty product when l > r).
    /// Computed by direct double multiplication when representable (exact for
    /// power-of-two weights), falling back to a log-domain sum otherwise.
    SignedLog w_product(int l, int r) const;

  private:
    int pos(int n) const;

    SpaceConfig cfg_;
    ValidationReport report_;
    int eval_lo_ = 0, eval_hi_ = 0;
    std::vector<double> a_, b_, w_;
};

}  // namespace bws
