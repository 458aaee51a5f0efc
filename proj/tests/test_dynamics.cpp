#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bws/dynamics.hpp"
#include "helpers.hpp"

using namespace bws;
using namespace bws::testing;

TEST_CASE("boundedness verdicts across the presets") {
    CHECK(check_boundedness(load_preset("zero_one_failure")).status == Status::Holds);
    CHECK(check_boundedness(load_preset("example_chaotic")).status == Status::Holds);
    CHECK(check_boundedness(load_preset("example_supercyclic_only")).status == Status::Holds);
    CHECK(check_boundedness(load_preset("bergman")).status == Status::Holds);

    // unbounded weights w_n = n carry a monotone growth certificate
    SpaceConfig cfg = load_config_text(
        R"json({"p": 2, "a": [{"where": "otherwise", "expr": "1"}],
            "b": [],
            "w": [{"where": "n>=1", "expr": "n"}, {"where": "otherwise", "expr": "1"}],
            "window": {"min": -32, "max": 32}})json");
    Verdict v = check_boundedness(SpaceContext::make(cfg));
    CHECK(v.status == Status::Fails);
}

TEST_CASE("hypercyclicity: chaotic example diverges on both sides") {
    Verdict v = check_hypercyclic(load_preset("example_chaotic"));
    CHECK(v.status == Status::Holds);
}

TEST_CASE("hypercyclicity fails with the exact sup = 1 certificate") {
    Verdict v = check_hypercyclic(load_preset("example_supercyclic_only"));
    CHECK(v.status == Status::Fails);
    CHECK(v.reason.find("sup = 1.000000") != std::string::npos);
}

TEST_CASE("hypercyclicity fails for the zero-one preset (backward side vanishes)") {
    Verdict v = check_hypercyclic(load_preset("zero_one_failure"));
    CHECK(v.status == Status::Fails);
}

TEST_CASE("mixing verdicts") {
    CHECK(check_mixing(load_preset("example_chaotic")).status == Status::Holds);
    CHECK(check_mixing(load_preset("bergman")).status == Status::Holds);
    CHECK(check_mixing(load_preset("zero_one_failure")).status == Status::Fails);
}

TEST_CASE("limsup-only divergence must not yield mixing Holds") {
    // alternating blocks of 2 and 1/2: the forward products climb on 2-blocks
    // and fall back on 1/2-blocks, so the full limit never stabilizes
    SpaceConfig cfg = load_config_text(
        R"json({"p": 2, "a": [{"where": "otherwise", "expr": "1"}],
            "b": [],
            "w": [{"where": "0<=n<=11", "expr": "2"},
                  {"where": "12<=n<=17", "expr": "1/2"},
                  {"where": "18<=n<=29", "expr": "2"},
                  {"where": "30<=n<=35", "expr": "1/2"},
                  {"where": "36<=n<=47", "expr": "2"},
                  {"where": "48<=n<=53", "expr": "1/2"},
                  {"where": "54<=n<=65", "expr": "2"},
                  {"where": "otherwise", "expr": "1/2"}],
            "window": {"min": -64, "max": 64}})json");
    Verdict v = check_mixing(SpaceContext::make(cfg));
    CHECK(v.status != Status::Holds);
}

TEST_CASE("supercyclicity verdicts") {
    CHECK(check_supercyclic(load_preset("example_supercyclic_only")).status == Status::Holds);

    Verdict zo = check_supercyclic(load_preset("zero_one_failure"));
    CHECK(zo.status == Status::Fails);  // the ratio is 2^{n-nu}, monotone to 0

    // constant bilateral weights: the ratio w_{n+1}..w_{n+nu}/(w_n..w_{n-nu+1})
    // is identically 1, so the criterion fails with an exact certificate
    // (the operator is similar to a scalar multiple of a unitary shift)
    SpaceContext flat = SpaceContext::make(load_config_text(classical_config(1.0, 2.0)));
    Verdict fl = check_supercyclic(flat);
    CHECK(fl.status == Status::Fails);

    // genuinely asymmetric weights do fire the ratio criterion: w = 2 on the
    // positive side and 1/2 on the negative side gives the ratio 4^nu -> inf
    SpaceConfig two_sided = load_config_text(
        R"json({"p": 2, "a": [{"where": "otherwise", "expr": "1"}],
            "b": [],
            "w": [{"where": "n>=0", "expr": "2"}, {"where": "otherwise", "expr": "1/2"}],
            "window": {"min": -64, "max": 64}})json");
    CHECK(check_supercyclic(SpaceContext::make(two_sided)).status == Status::Holds);
}

TEST_CASE("chaos verdicts") {
    CHECK(check_chaotic(load_preset("example_chaotic")).status == Status::Holds);
    CHECK(check_chaotic(load_preset("zero_one_failure")).status == Status::Fails);

    // classical w == 2: the negative-side series sum 4^n diverges
    SpaceContext flat = SpaceContext::make(load_config_text(classical_config(1.0, 2.0)));
    CHECK(check_chaotic(flat).status == Status::Fails);
}

TEST_CASE("chaos is out of scope for p = 1 and c0") {
    SpaceConfig cfg = load_config_file(preset_path("example_chaotic"));
    cfg.params.norm = NormKind::lp(1.0);
    Verdict v1 = check_chaotic(SpaceContext::make(cfg));
    CHECK(v1.status == Status::Inconclusive);
    CHECK(!v1.evidence.empty());  // series still reported

    cfg.params.norm = NormKind::c0();
    Verdict v2 = check_chaotic(SpaceContext::make(cfg));
    CHECK(v2.status == Status::Inconclusive);
}

TEST_CASE("hypothesis gate: limsup |b/a| >= 1 yields Inconclusive") {
    SpaceConfig cfg = load_config_text(
        R"json({"p": 2, "a": [{"where": "otherwise", "expr": "1"}],
            "b": [{"where": "n>=0", "expr": "1.5"}],
            "w": [{"where": "otherwise", "expr": "2"}],
            "window": {"min": -32, "max": 32}})json");
    SpaceContext ctx = SpaceContext::make(cfg);
    Verdict v = check_hypercyclic(ctx);
    CHECK(v.status == Status::Inconclusive);
    CHECK(v.reason.find("hypothesis") != std::string::npos);
    CHECK(check_chaotic(ctx).status == Status::Inconclusive);
}

TEST_CASE("generic norm criteria agree with the characterizations") {
    Verdict g1 = check_generic_criteria(load_preset("example_chaotic"));
    CHECK(g1.status == Status::Holds);

    Verdict g2 = check_generic_criteria(load_preset("zero_one_failure"));
    CHECK(g2.status != Status::Holds);

    // constant bilateral weights: the backward norm series |w_n..w_{n-nu+1}|
    // ||z^{n-nu}|| = 2^nu diverges, so the sufficient criterion cannot fire
    // (correct: the operator is not hypercyclic)
    SpaceContext flat = SpaceContext::make(load_config_text(classical_config(1.0, 2.0)));
    Verdict g3 = check_generic_criteria(flat);
    CHECK(g3.status != Status::Holds);

    // a two-sided weight that is genuinely mixing fires both norm series
    SpaceConfig two_sided = load_config_text(
        R"json({"p": 2, "a": [{"where": "otherwise", "expr": "1"}],
            "b": [],
            "w": [{"where": "n>=0", "expr": "2"}, {"where": "otherwise", "expr": "1/2"}],
            "window": {"min": -64, "max": 64}})json");
    Verdict g4 = check_generic_criteria(SpaceContext::make(two_sided));
    CHECK(g4.status == Status::Holds);
    bool mixing_sub_holds = false;
    for (const auto& e : g4.evidence)
        if (e.label.find("mixing sub-verdict") != std::string::npos && e.scalar == 1.0)
            mixing_sub_holds = true;
    CHECK(mixing_sub_holds);
}

TEST_CASE("dichotomy preconditions") {
    Verdict zo = check_dichotomy_preconditions(load_preset("zero_one_failure"));
    CHECK(zo.status == Status::Fails);  // sup |w_0..w_{-n+1}/a_{-n}| = 4^n diverges

    SpaceContext contraction = SpaceContext::make(load_config_text(classical_config(1.0, 0.5)));
    CHECK(check_dichotomy_preconditions(contraction).status == Status::Holds);

    Verdict ch = check_dichotomy_preconditions(load_preset("example_chaotic"));
    CHECK(ch.evidence.size() >= 3);  // all three series displayed
    CHECK(ch.status == Status::Holds);
}

TEST_CASE("consistency: mixing Holds implies hypercyclic never Fails") {
    for (const char* preset : {"example_chaotic", "example_supercyclic_only",
                               "zero_one_failure", "bergman", "classical_rolewicz"}) {
        CAPTURE(preset);
        SpaceContext ctx = load_preset(preset);
        Verdict mix = check_mixing(ctx);
        Verdict hyp = check_hypercyclic(ctx);
        if (mix.status == Status::Holds) CHECK(hyp.status != Status::Fails);
        Verdict gen = check_generic_criteria(ctx);
        if (gen.status == Status::Holds) CHECK(hyp.status != Status::Fails);
    }
}

TEST_CASE("certificate stability: Fails reproduces at twice the horizon") {
    for (const char* preset : {"example_supercyclic_only", "zero_one_failure"}) {
        CAPTURE(preset);
        SpaceConfig cfg = load_config_file(preset_path(preset));
        SpaceContext ctx1 = SpaceContext::make(cfg);
        cfg.analysis.horizon *= 2;
        SpaceContext ctx2 = SpaceContext::make(cfg);
        Verdict v1 = check_hypercyclic(ctx1);
        Verdict v2 = check_hypercyclic(ctx2);
        if (v1.status == Status::Fails) CHECK(v2.status == Status::Fails);
        Verdict s1 = check_supercyclic(ctx1);
        Verdict s2 = check_supercyclic(ctx2);
        if (s1.status == Status::Fails) CHECK(s2.status == Status::Fails);
    }
}

TEST_CASE("series classifier primitives") {
    AnalysisParams th;
    // monotone climb past the threshold, sustained
    std::vector<double> climb;
    for (int i = 1; i <= 48; ++i) climb.push_back(i * 0.7);
    SeriesClass c1 = classify_series(climb, th);
    CHECK(c1.diverges_limsup);
    CHECK(c1.diverges_limit);
    CHECK(!c1.certified_bounded);

    // constant series: bounded with an exact sup, never divergent
    std::vector<double> flat(48, 27.0);
    SeriesClass c2 = classify_series(flat, th);
    CHECK(c2.certified_bounded);
    CHECK(c2.constant);
    CHECK(!c2.diverges_limsup);

    // monotone decrease: bounded
    std::vector<double> drop;
    for (int i = 1; i <= 48; ++i) drop.push_back(-0.5 * i);
    SeriesClass c3 = classify_series(drop, th);
    CHECK(c3.certified_bounded);
    CHECK(c3.vanishes_liminf);
    CHECK(c3.vanishes_limit);

    // early spike then flat: crossed but not improving late, and not monotone
    std::vector<double> spike(48, 1.0);
    spike[3] = 30.0;
    SeriesClass c4 = classify_series(spike, th);
    CHECK(!c4.diverges_limsup);
    CHECK(!c4.certified_unbounded);
}

TEST_CASE("c0 spaces run the full pipeline") {
    // the weight-product criteria do not involve the exponent, so the verdict
    // table carries over; only the chaos characterization is refused
    SpaceConfig cfg = load_config_file(preset_path("example_chaotic"));
    cfg.params.norm = NormKind::c0();
    SpaceContext ctx = SpaceContext::make(cfg);
    CHECK(check_boundedness(ctx).status == Status::Holds);
    CHECK(check_hypercyclic(ctx).status == Status::Holds);
    CHECK(check_mixing(ctx).status == Status::Holds);
    CHECK(check_chaotic(ctx).status == Status::Inconclusive);
    AnalysisResult res = analyze(ctx);
    CHECK(res.essential_spectrum.outer > res.essential_spectrum.inner);
}

TEST_CASE("analysis document fields") {
    SpaceContext ctx = load_preset("example_chaotic");
    AnalysisResult res = analyze(ctx);
    CHECK(res.boundedness.status == Status::Holds);
    CHECK(res.hypercyclic.status == Status::Holds);
    CHECK(res.mixing.status == Status::Holds);
    CHECK(res.chaotic.status == Status::Holds);
    REQUIRE(res.hypercyclic_subspace.has_value());
    CHECK(*res.hypercyclic_subspace == res.essential_spectrum.meets_unit_circle);

    AnalysisResult zo = analyze(load_preset("zero_one_failure"));
    CHECK(!zo.hypercyclic_subspace.has_value());  // not hypercyclic: indicator is null
}
