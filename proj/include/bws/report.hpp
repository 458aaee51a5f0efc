#pragma once

#include <string>
#include <vector>

#include "bws/dynamics.hpp"
#include "bws/orbit.hpp"
#include "bws/vendor_json.hpp"

namespace bws {

/// Report documents for the CLI; key order and number formatting are fixed so
/// identical inputs produce identical bytes.
nlohmann::ordered_json validation_to_json(const ValidationReport& rep);
nlohmann::ordered_json verdict_to_json(const Verdict& v);
nlohmann::ordered_json analysis_to_json(const SpaceContext& ctx, const AnalysisResult& res);
nlohmann::ordered_json decomposition_to_json(const Decomposition& dec,
                                             const EssentialSpectrumEstimate& ess);

std::string matrix_to_csv(const TruncatedMatrix& m);
std::string orbit_to_csv(const std::vector<OrbitRecord>& records);
nlohmann::ordered_json orbit_to_json(const std::vector<OrbitRecord>& records,
                                     const LimitPointReport& detection);
std::string norms_to_csv(const SpaceContext& ctx, int nu_min, int nu_max);
nlohmann::ordered_json norms_to_json(const SpaceContext& ctx, int nu_min, int nu_max);

/// Parse a vector literal: {"basis": "schauder"|"laurent", "entries": [[n, value], ...]}.
BilateralVector vector_from_json(const nlohmann::json& j, const Window& window);

}  // namespace bws
