// bws: a numerical laboratory for bilateral weighted backward shifts on
// annulus analytic-function spaces with affine-monomial Schauder bases.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "bws/basis.hpp"
#include "bws/json_out.hpp"
#include "bws/report.hpp"

namespace {

using bws::ConfigError;
using bws::NumericError;

struct GlobalOpts {
    std::string out_path;
    std::string window_override;
    int horizon = -1;
    int n_max = -1;
    int threads = 1;
    std::string format = "json";
};

void apply_overrides(bws::SpaceConfig& cfg, const GlobalOpts& g) {
    if (!g.window_override.empty()) {
        const auto colon = g.window_override.find(':');
        if (colon == std::string::npos)
            throw ConfigError("--window expects MIN:MAX");
        cfg.params.window.lo = std::stoi(g.window_override.substr(0, colon));
        cfg.params.window.hi = std::stoi(g.window_override.substr(colon + 1));
        if (!(cfg.params.window.lo < 0 && 0 < cfg.params.window.hi))
            throw ConfigError("--window must satisfy MIN < 0 < MAX");
    }
    if (g.horizon > 0) {
        if (g.horizon < 4) throw ConfigError("--horizon must be at least 4");
        cfg.analysis.horizon = g.horizon;
    }
    if (g.n_max > 0) cfg.analysis.n_max = g.n_max;
}

void emit(const GlobalOpts& g, const std::string& text) {
    if (g.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out_path, std::ios::binary);
    if (!out) throw NumericError("cannot open output file '" + g.out_path + "'");
    out << text;
}

std::vector<bws::BilateralVector> default_candidates(const bws::Window& win) {
    std::vector<bws::BilateralVector> out;
    for (int n = -2; n <= 2; ++n)
        out.push_back(bws::BilateralVector::unit(win, n, bws::Basis::Schauder));
    return out;
}

nlohmann::json parse_inline_or_file(const std::string& text) {
    if (!text.empty() && text[0] == '@') {
        std::ifstream in(text.substr(1), std::ios::binary);
        if (!in) throw ConfigError("cannot open vector file '" + text.substr(1) + "'");
        return nlohmann::json::parse(in);
    }
    return nlohmann::json::parse(text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for bilateral weighted backward shifts on "
                 "annulus function spaces"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--out", g.out_path, "write the report to a file instead of stdout");
    app.add_option("--window", g.window_override, "override the config window as MIN:MAX");
    app.add_option("--horizon", g.horizon, "criterion horizon (default from config, 48)");
    app.add_option("--nmax", g.n_max, "sampling depth for 'for all n' criteria (default 8)");
    app.add_option("--threads", g.threads, "threads for matrix assembly (default 1)");
    app.add_option("--format", g.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    std::string config_path;

    auto* validate = app.add_subcommand("validate", "check the standing assumptions and radii");
    validate->add_option("config", config_path, "config JSON file")->required();

    auto* analyze = app.add_subcommand("analyze", "run every dynamics criterion");
    analyze->add_option("config", config_path, "config JSON file")->required();

    auto* matrix = app.add_subcommand("matrix", "dump the window truncation and decomposition");
    matrix->add_option("config", config_path, "config JSON file")->required();
    int power = 0;
    matrix->add_option("--power", power, "matrix power nu >= 1 (default from config, 1)");
    int i_max_flag = 0;
    matrix->add_option("--imax", i_max_flag, "subdiagonal pieces in the decomposition");

    auto* norms = app.add_subcommand("norms", "Laurent monomial norms over a range");
    norms->add_option("config", config_path, "config JSON file")->required();
    std::string monomials = "-8:8";
    norms->add_option("--monomials", monomials, "index range as MIN:MAX (default -8:8)");

    auto* orbit = app.add_subcommand("orbit", "simulate an orbit and detect limit points");
    orbit->add_option("config", config_path, "config JSON file")->required();
    std::string vector_arg, candidates_arg, schedule_arg;
    int steps_flag = 0;
    double tolerance_flag = -1.0;
    orbit->add_option("--vector", vector_arg, "start vector, inline JSON or @file");
    orbit->add_option("--steps", steps_flag, "largest power to apply");
    orbit->add_option("--schedule", schedule_arg, "all | powers_of_two")
        ->check(CLI::IsMember({"all", "powers_of_two"}));
    orbit->add_option("--candidates", candidates_arg,
                      "candidate limit points, inline JSON array or @file");
    orbit->add_option("--tolerance", tolerance_flag, "detection tolerance (default 1e-3)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // help/version exit 0; any parse problem is a config error
    }

    try {
        bws::SpaceConfig cfg = bws::load_config_file(config_path);
        apply_overrides(cfg, g);

        if (validate->parsed()) {
            bws::ValidationReport rep = bws::validate_config(cfg);
            emit(g, bws::dump_fixed(bws::validation_to_json(rep)));
            return rep.valid ? 0 : 2;
        }

        bws::SpaceContext ctx = bws::SpaceContext::make(cfg);

        if (analyze->parsed()) {
            bws::AnalysisResult res = bws::analyze(ctx);
            emit(g, bws::dump_fixed(bws::analysis_to_json(ctx, res)));
            return 0;
        }
        if (matrix->parsed()) {
            int nu = power > 0 ? power : (cfg.matrix ? cfg.matrix->power : 1);
            bws::TruncatedMatrix m = bws::assemble_matrix(ctx, nu, g.threads);
            if (g.format == "csv") {
                emit(g, bws::matrix_to_csv(m));
            } else {
                bws::Decomposition dec =
                    bws::decompose(ctx, i_max_flag > 0 ? i_max_flag : cfg.analysis.i_max);
                bws::EssentialSpectrumEstimate ess = bws::essential_spectrum_estimate(dec);
                emit(g, bws::dump_fixed(bws::decomposition_to_json(dec, ess)));
            }
            return 0;
        }
        if (norms->parsed()) {
            const auto colon = monomials.find(':');
            if (colon == std::string::npos) throw ConfigError("--monomials expects MIN:MAX");
            const int lo = std::stoi(monomials.substr(0, colon));
            const int hi = std::stoi(monomials.substr(colon + 1));
            if (g.format == "csv") emit(g, bws::norms_to_csv(ctx, lo, hi));
            else emit(g, bws::dump_fixed(bws::norms_to_json(ctx, lo, hi)));
            return 0;
        }
        if (orbit->parsed()) {
            bws::OrbitRequest req = cfg.orbit.value_or(bws::OrbitRequest{});
            if (!vector_arg.empty()) req.vector_json = parse_inline_or_file(vector_arg).dump();
            if (steps_flag > 0) req.steps = steps_flag;
            if (!schedule_arg.empty()) req.schedule = schedule_arg;
            if (tolerance_flag > 0) req.tolerance = tolerance_flag;
            if (!candidates_arg.empty())
                req.candidates_json = parse_inline_or_file(candidates_arg).dump();
            if (req.vector_json.empty())
                throw ConfigError("orbit needs a start vector (--vector or config orbit.vector)");

            const bws::Window& win = ctx.window();
            bws::BilateralVector v0 =
                bws::vector_from_json(nlohmann::json::parse(req.vector_json), win);
            if (v0.basis == bws::Basis::Laurent) v0 = bws::schauder_from_laurent(v0, ctx);

            std::vector<bws::BilateralVector> candidates;
            if (req.candidates_json.empty()) {
                candidates = default_candidates(win);
            } else {
                for (const auto& item : nlohmann::json::parse(req.candidates_json)) {
                    bws::BilateralVector c = bws::vector_from_json(item, win);
                    if (c.basis == bws::Basis::Laurent) c = bws::schauder_from_laurent(c, ctx);
                    candidates.push_back(std::move(c));
                }
            }
            const auto schedule = req.schedule == "all" ? bws::OrbitSchedule::All
                                                        : bws::OrbitSchedule::PowersOfTwo;
            auto records = bws::simulate_orbit(ctx, v0, req.steps, candidates, schedule);
            auto detection =
                bws::detect_limit_point(records, candidates, ctx.params(), req.tolerance);
            if (g.format == "csv") emit(g, bws::orbit_to_csv(records));
            else emit(g, bws::dump_fixed(bws::orbit_to_json(records, detection)));
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
