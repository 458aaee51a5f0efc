#include "bws/json_out.hpp"

#include <cmath>
#include <cstdio>

namespace bws {

std::string format_double(double x) {
    if (!std::isfinite(x)) return "null";  // JSON has no inf/nan
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

void escape_string(const std::string& s, std::string& out) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void dump_rec(const nlohmann::ordered_json& j, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    const std::string closing(static_cast<std::size_t>(indent) * depth, ' ');
    switch (j.type()) {
        case nlohmann::ordered_json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                escape_string(it.key(), out);
                out += ": ";
                dump_rec(it.value(), out, indent, depth + 1);
            }
            out += "\n" + closing + "}";
            return;
        }
        case nlohmann::ordered_json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& item : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                dump_rec(item, out, indent, depth + 1);
            }
            out += "\n" + closing + "]";
            return;
        }
        case nlohmann::ordered_json::value_t::string:
            escape_string(j.get<std::string>(), out);
            return;
        case nlohmann::ordered_json::value_t::boolean:
            out += j.get<bool>() ? "true" : "false";
            return;
        case nlohmann::ordered_json::value_t::number_integer:
            out += std::to_string(j.get<std::int64_t>());
            return;
        case nlohmann::ordered_json::value_t::number_unsigned:
            out += std::to_string(j.get<std::uint64_t>());
            return;
        case nlohmann::ordered_json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += "null";
            return;
    }
}

}  // namespace

std::string dump_fixed(const nlohmann::ordered_json& j, int indent) {
    std::string out;
    dump_rec(j, out, indent, 0);
    out += "\n";
    return out;
}

}  // namespace bws
