// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Expected values are pinned here, never recalibrated.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "bws/basis.hpp"
#include "bws/dynamics.hpp"
#include "bws/orbit.hpp"
#include "bws/shift_matrix.hpp"
#include "expr_golden.hpp"
#include "helpers.hpp"

using namespace bws;
using namespace bws::testing;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, const std::function<bool(std::string&)>& fn) {
    std::string detail;
    bool ok = false;
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", number, label.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::optional<double> find_scalar(const Verdict& v, const std::string& label) {
    for (const auto& e : v.evidence)
        if (e.label == label && e.scalar) return e.scalar;
    return std::nullopt;
}

bool approx(double x, double y, double tol) { return std::abs(x - y) <= tol; }

}  // namespace

int main() {
    // 1. annulus radii for the two pinned presets, < 1 s each
    criterion(1, "annulus radii r = 0.5, R = 1.0 within 1e-6", [](std::string& detail) {
        bool ok = true;
        for (const char* name : {"example_chaotic", "zero_one_failure"}) {
            const auto t0 = std::chrono::steady_clock::now();
            SpaceConfig cfg = load_config_file(preset_path(name));
            ValidationReport rep = validate_config(cfg);
            const double dt = seconds_since(t0);
            std::ostringstream ss;
            ss << detail << name << ": r=" << rep.r << " R=" << rep.R << " (" << dt << "s) ";
            detail = ss.str();
            ok = ok && rep.valid && approx(rep.r, 0.5, 1e-6) && approx(rep.R, 1.0, 1e-6) &&
                 dt < 1.0;
        }
        return ok;
    });

    // 2. verdict table reproduces the published behavior at horizon 48
    criterion(2, "verdict table (chaotic / supercyclic-only / zero-one / bergman)",
              [](std::string& detail) {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        std::ostringstream ss;

        {
            SpaceContext ctx = load_preset("example_chaotic");
            AnalysisResult r = analyze(ctx);
            const bool good = r.boundedness.status == Status::Holds &&
                              r.hypercyclic.status == Status::Holds &&
                              r.mixing.status == Status::Holds &&
                              r.chaotic.status == Status::Holds;
            if (!good) ss << "example_chaotic table wrong; ";
            ok = ok && good;
        }
        {
            SpaceContext ctx = load_preset("example_supercyclic_only");
            Verdict hyp = check_hypercyclic(ctx);
            Verdict sup = check_supercyclic(ctx);
            auto cert = find_scalar(hyp, "fails certificate sup");
            const bool good = hyp.status == Status::Fails && cert && *cert == 1.0 &&
                              sup.status == Status::Holds;
            if (!good) ss << "supercyclic_only table wrong; ";
            ok = ok && good;
        }
        {
            SpaceContext ctx = load_preset("zero_one_failure");
            const bool good = check_supercyclic(ctx).status == Status::Fails &&
                              check_dichotomy_preconditions(ctx).status == Status::Fails;
            if (!good) ss << "zero_one_failure table wrong; ";
            ok = ok && good;
        }
        {
            SpaceContext ctx = load_preset("bergman");
            Verdict mix = check_mixing(ctx);
            Decomposition dec = decompose(ctx, 64);
            bool alpha_ok = true;
            auto gamma = [](double n) {
                return n == -1.0 ? std::log(2.0)
                                 : (1.0 - std::pow(2.0, -2.0 * (n + 1))) / (2.0 * (n + 1));
            };
            for (int n = -20; n <= 20; ++n) {
                const double expect = (n >= -1 ? 4.0 : 0.25) * std::sqrt(gamma(n) / gamma(n + 1));
                if (std::abs(dec.alpha[ctx.window().to_row(n)] - expect) > 1e-12 * expect)
                    alpha_ok = false;
            }
            const bool good = mix.status == Status::Holds && alpha_ok;
            if (!good) ss << "bergman table wrong; ";
            ok = ok && good;
        }
        const double dt = seconds_since(t0);
        ss << "total " << dt << "s";
        detail = ss.str();
        return ok && dt < 5.0;
    });

    // 3. the orbit experiment with u truncated at k_max = 5, p = 2
    criterion(3, "orbit experiment distances, monotone decrease, limit point at 1e-3",
              [](std::string& detail) {
        SpaceContext ctx = load_preset("zero_one_failure");
        const Window& win = ctx.window();
        BilateralVector u = BilateralVector::zeros(win, Basis::Schauder);
        for (int k = 1; k <= 5; ++k) u.set(1 << k, std::pow(2.0, -std::pow(2.0, k)));
        BilateralVector e0 = BilateralVector::unit(win, 0, Basis::Schauder);

        auto records = simulate_orbit(ctx, u, 32, {e0}, OrbitSchedule::PowersOfTwo);
        std::ostringstream ss;
        bool ok = true;
        double prev = std::numeric_limits<double>::infinity();
        for (const auto& rec : records) {
            int k = 0;
            for (int nu = rec.nu; nu > 1; nu /= 2) ++k;
            if (k < 1 || k > 4) continue;
            double expect = 0.0;
            for (int j = k + 1; j <= 5; ++j)
                expect += std::pow(2.0, 2.0 * (std::pow(2.0, k) - std::pow(2.0, j)));
            const double got = rec.distances[0] * rec.distances[0];
            const bool match = std::abs(got - expect) <= 1e-12;
            const bool decreasing = rec.distances[0] < prev;
            prev = rec.distances[0];
            ss << "k=" << k << " dist2=" << got << " expected=" << expect << "; ";
            ok = ok && match && decreasing;
        }
        auto detection = detect_limit_point(records, {e0}, ctx.params(), 1e-3);
        const bool detected = !detection.hits.empty() && detection.hits[0].detected;
        if (!detected) ss << "limit point not detected at 1e-3";
        detail = ss.str();
        return ok && detected;
    });

    // 4. multiplication-operator identity on Laurent monomials, |nu| <= 20
    criterion(4, "B_w z^nu = 2 z^{nu-1} within 1e-12 for the zero-one preset",
              [](std::string& detail) {
        SpaceContext ctx = load_preset("zero_one_failure");
        double worst = 0.0;
        for (int nu = -20; nu <= 20; ++nu) {
            BilateralVector mono = BilateralVector::unit(ctx.window(), nu, Basis::Laurent);
            BilateralVector sch = schauder_from_laurent(mono, ctx);
            ApplyResult img = apply(ctx, 1, sch);
            BilateralVector lau = laurent_from_schauder(img.vec, ctx);
            for (int n = -22; n <= 22; ++n)
                worst = std::max(worst, std::abs(lau.at(n) - (n == nu - 1 ? 2.0 : 0.0)));
        }
        std::ostringstream ss;
        ss << "max deviation " << worst;
        detail = ss.str();
        return worst <= 1e-12;
    });

    // 5. closed form vs iterated application over 100 random configs
    criterion(5, "oracle equivalence within 1e-9 relative on non-edge coordinates",
              [](std::string& detail) {
        std::mt19937 rng(12345);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            SpaceConfig cfg = random_config(rng, 0.5, -40, 40);
            SpaceContext ctx = SpaceContext::make(cfg);
            BilateralVector v = random_vector(rng, ctx.window(), -20, 20);
            for (int nu = 1; nu <= 5; ++nu) {
                ApplyResult closed = apply(ctx, nu, v);
                BilateralVector iter = apply_iterated(ctx, nu, v);
                const double scale = std::max({1.0, closed.vec.coeffs.cwiseAbs().maxCoeff(),
                                               iter.coeffs.cwiseAbs().maxCoeff()});
                for (int n = ctx.window().lo + nu; n <= ctx.window().hi - nu; ++n)
                    worst = std::max(worst,
                                     std::abs(closed.vec.at(n) - iter.at(n)) / scale);
            }
        }
        std::ostringstream ss;
        ss << "worst relative deviation " << worst;
        detail = ss.str();
        return worst <= 1e-9;
    });

    // 6. basis round trips, norm identity, adjoint law over 100 random instances
    criterion(6, "round trip 1e-12, monomial norm 1e-10, adjoint law 1e-12",
              [](std::string& detail) {
        std::mt19937 rng(54321);
        double worst_rt = 0.0, worst_norm = 0.0, worst_adj = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            SpaceConfig cfg = random_config(rng, 0.45, -40, 40);
            SpaceContext ctx = SpaceContext::make(cfg);

            BilateralVector v = random_vector(rng, ctx.window(), -10, 10);
            BilateralVector lau = laurent_from_schauder(v, ctx);
            BilateralVector back = schauder_from_laurent(lau, ctx);
            for (int n = -12; n <= 12; ++n)
                worst_rt = std::max(worst_rt, std::abs(back.at(n) - v.at(n)));

            const int nu = static_cast<int>(rng() % 21) - 10;
            MonomialNorm closed = monomial_norm(nu, ctx);
            MonomialExpansion exp = monomial_expansion(nu, ctx);
            worst_norm = std::max(worst_norm,
                                  std::abs(vector_norm(exp.coeffs, ctx.params()) - closed.value) /
                                      closed.value);

            ApplyResult img = apply(ctx, 1, v);
            BilateralVector lau_img = laurent_from_schauder(img.vec, ctx);
            for (int n = -12; n <= 12; ++n)
                worst_adj = std::max(worst_adj,
                                     std::abs(lau_img.at(n) - ctx.w(n + 1) * lau.at(n + 1)));
        }
        std::ostringstream ss;
        ss << "round trip " << worst_rt << ", norm " << worst_norm << ", adjoint " << worst_adj;
        detail = ss.str();
        return worst_rt <= 1e-12 && worst_norm <= 1e-10 && worst_adj <= 1e-12;
    });

    // 7. decomposition reassembly and the zero-one tail numbers
    criterion(7, "reassembly 1e-12 on all presets; ||T_1|| = 0.5; tail <= 1e-12 by i = 60",
              [](std::string& detail) {
        bool ok = true;
        std::ostringstream ss;
        for (const char* preset :
             {"zero_one_failure", "example_chaotic", "example_supercyclic_only", "bergman",
              "classical_rolewicz"}) {
            SpaceContext ctx = load_preset(preset);
            const Window& win = ctx.window();
            TruncatedMatrix m = assemble_matrix(ctx, 1);
            Decomposition dec = decompose(ctx, win.size());
            Eigen::MatrixXd re = Eigen::MatrixXd::Zero(win.size(), win.size());
            for (int n = win.lo + 1; n <= win.hi; ++n)
                re(win.to_row(n - 1), win.to_row(n)) = dec.alpha[win.to_row(n - 1)];
            for (int n = win.lo; n <= win.hi; ++n) {
                const double cn = dec.c[win.to_row(n)];
                re(win.to_row(n), win.to_row(n)) = cn;
                double entry = cn;
                for (int j = 1; n + j <= win.hi; ++j) {
                    entry *= -ctx.b(n + j - 1) / ctx.a(n + j);
                    if (entry == 0.0) break;
                    re(win.to_row(n + j), win.to_row(n)) = entry;
                }
            }
            const double dev = (re - m.entries).cwiseAbs().maxCoeff();
            if (dev > 1e-12) {
                ss << preset << " reassembly deviation " << dev << "; ";
                ok = false;
            }
        }
        Decomposition dec = decompose(load_preset("zero_one_failure"), 60);
        if (dec.t_norms[0] != 0.5) {
            ss << "||T_1|| = " << dec.t_norms[0] << " != 0.5; ";
            ok = false;
        }
        if (!(dec.tail_bound_valid && dec.tail_bound <= 1e-12)) {
            ss << "tail bound " << dec.tail_bound << "; ";
            ok = false;
        }
        ss << "tail bound at i=60: " << dec.tail_bound;
        detail = ss.str();
        return ok;
    });

    // 8. coordinatewise dichotomy for a non-hypercyclic operator satisfying
    //    the preconditions: all interior coordinates fall below 1e-6 at nu = 48
    criterion(8, "dichotomy: interior coordinates of [B_w^48]u below 1e-6", [](std::string& detail) {
        SpaceContext ctx = SpaceContext::make(load_config_text(classical_config(1.0, 0.5)));
        if (check_dichotomy_preconditions(ctx).status != Status::Holds) {
            detail = "preconditions did not hold";
            return false;
        }
        if (check_hypercyclic(ctx).status != Status::Fails) {
            detail = "hypercyclicity did not fail";
            return false;
        }
        std::mt19937 rng(777);
        const int nu = 48;
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            BilateralVector u = random_vector(rng, ctx.window(), ctx.window().lo, ctx.window().hi);
            const double norm = vector_norm(u, ctx.params());
            u.coeffs /= norm;  // unit vector
            ApplyResult img = apply(ctx, nu, u);
            for (int n = ctx.window().lo + nu; n <= ctx.window().hi - nu; ++n)
                worst = std::max(worst, std::abs(img.vec.at(n)));
        }
        std::ostringstream ss;
        ss << "max interior coordinate " << worst;
        detail = ss.str();
        return worst < 1e-6;
    });

    // 9. parser goldens and the zero-coefficient rejection path
    criterion(9, "30 expression goldens, piecewise dispatch, a_n = 0 exits 2",
              [](std::string& detail) {
        bool ok = true;
        std::ostringstream ss;
        int count = 0;
        for (const auto& g : kExprGoldens) {
            ExprPtr e = parse_expression(g.src);
            const double v = eval(*e, g.n);
            const bool good = g.tol == 0.0 ? v == g.expected : std::abs(v - g.expected) <= g.tol;
            if (!good) {
                ss << "golden '" << g.src << "' -> " << v << " != " << g.expected << "; ";
                ok = false;
            }
            ++count;
        }
        if (count != 30) {
            ss << "expected 30 goldens, have " << count << "; ";
            ok = false;
        }
        // natural-log pin: the Bergman gamma at n = -1 is log 2
        if (std::abs(eval(*parse_expression("log(2)"), 0) - 0.6931471805599453) > 1e-15) {
            ss << "log(2) drifted; ";
            ok = false;
        }
        // piecewise dispatch goldens
        {
            SequenceSpec w;
            w.pieces.push_back({parse_condition("n>=0"), parse_expression("2"), "n>=0", "2"});
            w.pieces.push_back({parse_condition("n<=-1"), parse_expression("2^n"), "n<=-1", "2^n"});
            SequenceSpec b;
            b.default_zero = true;
            b.pieces.push_back({parse_condition("n==0"), parse_expression("1"), "n==0", "1"});
            b.pieces.push_back({parse_condition("n>=1"), parse_expression("1/n"), "n>=1", "1/n"});
            SequenceSpec a;
            a.pieces.push_back({parse_condition("n>=0"), parse_expression("1"), "n>=0", "1"});
            a.pieces.push_back({parse_condition("n<=-1"), parse_expression("2^n"), "n<=-1",
                                "2^n"});
            if (eval_sequence(w, -3) != 0.125 || eval_sequence(b, -5) != 0.0 ||
                eval_sequence(a, -2) != 0.25) {
                ss << "piecewise dispatch wrong; ";
                ok = false;
            }
        }
        // a_n = 0 in the window must exit 2 through the CLI
        {
            const std::string bad = "acceptance_bad_config.json";
            {
                std::ofstream out(bad);
                out << R"json({"p": 2, "a": [{"where": "otherwise", "expr": "n"}],
                           "b": [], "w": [{"where": "otherwise", "expr": "1"}],
                           "window": {"min": -8, "max": 8}})json";
            }
            const std::string cmd = std::string(BWS_CLI_PATH) + " analyze " + bad +
                                    " > /dev/null 2> /dev/null";
            const int raw = std::system(cmd.c_str());
            const int code = raw == -1 ? -1 : WEXITSTATUS(raw);
            std::remove(bad.c_str());
            if (code != 2) {
                ss << "zero-coefficient config exited " << code << " instead of 2; ";
                ok = false;
            }
        }
        detail = ss.str();
        return ok;
    });

    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
