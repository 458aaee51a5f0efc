#include "bws/sequence.hpp"

#include <cctype>
#include <cmath>

namespace bws {
namespace {

// condition grammar: "n>=K" | "n<=K" | "n==K" | "K1<=n<=K2" | "otherwise"
struct CondCursor {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) pos++;
    }
    bool eat(const char* lit) {
        skip_ws();
        std::size_t i = pos;
        for (const char* p = lit; *p; ++p, ++i)
            if (i >= s.size() || s[i] != *p) return false;
        pos += std::string(lit).size();
        return true;
    }
    std::int64_t integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) pos++;
        std::size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) pos++;
        if (pos == digits)
            throw ParseError("expected an integer in condition at offset " + std::to_string(start),
                             start, {"integer"});
        return std::stoll(s.substr(start, pos - start));
    }
    void end() {
        skip_ws();
        if (pos != s.size())
            throw ParseError("trailing input in condition at offset " + std::to_string(pos), pos,
                             {"end of condition"});
    }
};

}  // namespace

std::string PieceCondition::to_string() const {
    switch (kind) {
        case Kind::Ge: return "n>=" + std::to_string(k1);
        case Kind::Le: return "n<=" + std::to_string(k1);
        case Kind::Eq: return "n==" + std::to_string(k1);
        case Kind::Range: return std::to_string(k1) + "<=n<=" + std::to_string(k2);
        case Kind::Otherwise: return "otherwise";
    }
    return "?";
}

PieceCondition parse_condition(const std::string& src) {
    CondCursor c{src};
    PieceCondition out;
    c.skip_ws();
    if (c.eat("otherwise")) {
        c.end();
        out.kind = PieceCondition::Kind::Otherwise;
        return out;
    }
    if (c.eat("n")) {
        if (c.eat(">=")) out.kind = PieceCondition::Kind::Ge;
        else if (c.eat("<=")) out.kind = PieceCondition::Kind::Le;
        else if (c.eat("==")) out.kind = PieceCondition::Kind::Eq;
        else
            throw ParseError("expected '>=', '<=' or '==' after 'n' in condition", c.pos,
                             {"'>='", "'<='", "'=='"});
        out.k1 = c.integer();
        c.end();
        return out;
    }
    // K1<=n<=K2
    out.kind = PieceCondition::Kind::Range;
    out.k1 = c.integer();
    if (!c.eat("<=") || !c.eat("n") || !c.eat("<="))
        throw ParseError("expected 'K1<=n<=K2' form in condition", c.pos, {"'<=n<='"});
    out.k2 = c.integer();
    c.end();
    if (out.k1 > out.k2)
        throw ParseError("empty range condition (" + std::to_string(out.k1) + " > " +
                             std::to_string(out.k2) + ")",
                         0, {});
    return out;
}

double eval_sequence(const SequenceSpec& spec, std::int64_t n) {
    for (const auto& piece : spec.pieces) {
        if (!piece.cond.matches(n)) continue;
        double v = eval(*piece.expr, n);
        if (!std::isfinite(v))
            throw NumericError("non-finite value of '" + piece.expr_src + "' at n = " +
                               std::to_string(n));
        return v;
    }
    if (spec.default_zero) return 0.0;
    throw ConfigError("no matching piece at n = " + std::to_string(n));
}

SignedLog eval_sequence_slog(const SequenceSpec& spec, std::int64_t n) {
    for (const auto& piece : spec.pieces) {
        if (!piece.cond.matches(n)) continue;
        SignedLog v = eval_slog(*piece.expr, n);
        if (!v.finite())
            throw NumericError("non-finite log-domain value of '" + piece.expr_src +
                               "' at n = " + std::to_string(n));
        return v;
    }
    if (spec.default_zero) return SignedLog::zero();
    throw ConfigError("no matching piece at n = " + std::to_string(n));
}

}  // namespace bws
