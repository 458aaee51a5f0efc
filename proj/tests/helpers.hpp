#pragma once

#include <random>
#include <sstream>
#include <string>

#include "bws/config.hpp"

namespace bws::testing {

inline std::string preset_path(const std::string& name) {
    return std::string(BWS_PRESET_DIR) + "/" + name + ".json";
}

inline SpaceContext load_preset(const std::string& name) {
    return SpaceContext::make(load_config_file(preset_path(name)));
}

// config text for the classical-reduction family b == 0, constant a, w
inline std::string classical_config(double a, double w, int lo = -64, int hi = 64) {
    std::ostringstream ss;
    ss << "{\"p\": 2, \"basis_variant\": \"split_affine\","
       << "\"a\": [{\"where\": \"otherwise\", \"expr\": \"" << a << "\"}],"
       << "\"b\": [],"
       << "\"w\": [{\"where\": \"otherwise\", \"expr\": \"" << w << "\"}],"
       << "\"window\": {\"min\": " << lo << ", \"max\": " << hi << "}}";
    return ss.str();
}

// Random piecewise-geometric configs built through the real parse/validate
// path. The b scale keeps sup |b_n / a_{n+1}| <= rho_cap across the evaluated
// range (the a pieces share one growth rate so the ratio is controlled).
inline SpaceConfig random_config(std::mt19937& rng, double rho_cap, int lo, int hi) {
    std::uniform_real_distribution<double> rate(0.9, 1.1);
    std::uniform_real_distribution<double> scale(0.5, 2.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> split(-8, 8);

    const double g = rate(rng);
    const double ca = scale(rng) * (unit(rng) < 0.3 ? -1.0 : 1.0);
    // |b_n / a_{n+1}| = |cb| g^n / (|ca| g^{n+1}) = |cb| / (|ca| g)
    const double cb = rho_cap * unit(rng) * std::abs(ca) * g;
    const double w1 = scale(rng) * (unit(rng) < 0.3 ? -1.0 : 1.0);
    const double w2 = scale(rng);
    const int k = split(rng);

    std::ostringstream ss;
    ss << "{\"p\": 2, \"basis_variant\": \"split_affine\","
       << "\"a\": [{\"where\": \"otherwise\", \"expr\": \"" << ca << " * " << g << "^n\"}],"
       << "\"b\": [{\"where\": \"n>=0\", \"expr\": \"" << cb << " * " << g << "^n\"}],"
       << "\"w\": [{\"where\": \"n>=" << k << "\", \"expr\": \"" << w1 << "\"},"
       << "        {\"where\": \"otherwise\", \"expr\": \"" << w2 << "\"}],"
       << "\"window\": {\"min\": " << lo << ", \"max\": " << hi << "}}";
    return load_config_text(ss.str());
}

// random vector supported on [lo_support, hi_support], Schauder basis
inline BilateralVector random_vector(std::mt19937& rng, const Window& win, int lo_support,
                                     int hi_support) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    BilateralVector v = BilateralVector::zeros(win, Basis::Schauder);
    for (int n = lo_support; n <= hi_support; ++n) v.set(n, coeff(rng));
    return v;
}

}  // namespace bws::testing
