#pragma once

// Single include point for the vendored nlohmann/json header; keeps the
// (slow-to-parse) vendor path out of the public headers' include lines.
#include <json.hpp>
