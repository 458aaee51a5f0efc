#pragma once

#include <string>

#include "bws/vendor_json.hpp"

namespace bws {

/// Serialize with insertion-ordered keys and every double printed as %.17g,
/// so report bytes are stable across runs (golden-file friendly). nlohmann's
/// own dump() sorts keys and uses shortest-round-trip floats.
std::string dump_fixed(const nlohmann::ordered_json& j, int indent = 2);

/// %.17g rendering used for CSV cells as well.
std::string format_double(double x);

}  // namespace bws
