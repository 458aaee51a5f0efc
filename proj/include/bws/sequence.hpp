#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bws/expr.hpp"

namespace bws {

/// One clause of a piecewise definition: n>=k, n<=k, n==k, k1<=n<=k2,
/// or the final catch-all `otherwise`.
struct PieceCondition {
    enum class Kind : std::uint8_t { Ge, Le, Eq, Range, Otherwise };
    Kind kind = Kind::Otherwise;
    std::int64_t k1 = 0, k2 = 0;

    bool matches(std::int64_t n) const {
        switch (kind) {
            case Kind::Ge: return n >= k1;
            case Kind::Le: return n <= k1;
            case Kind::Eq: return n == k1;
            case Kind::Range: return k1 <= n && n <= k2;
            case Kind::Otherwise: return true;
        }
        return false;
    }

    std::string to_string() const;
};

/// Parse a condition string: "n>=K" | "n<=K" | "n==K" | "K1<=n<=K2" | "otherwise".
PieceCondition parse_condition(const std::string& src);

struct Piece {
    PieceCondition cond;
    ExprPtr expr;
    std::string cond_src;  // original texts, kept for reports
    std::string expr_src;
};

/// Ordered piecewise map Z -> R; evaluation uses the first matching piece.
/// With default_zero set, unmatched indices evaluate to 0 (used for b in the
/// split basis, where the affine term exists only for n >= 0).
struct SequenceSpec {
    std::vector<Piece> pieces;
    bool default_zero = false;

    bool covers(std::int64_t n) const {
        for (const auto& p : pieces)
            if (p.cond.matches(n)) return true;
        return default_zero;
    }
};

/// Value of the first matching piece at n.
/// Throws ConfigError("no matching piece...") when uncovered and not
/// default_zero; NumericError on NaN/inf results (e.g. log of a nonpositive).
double eval_sequence(const SequenceSpec& spec, std::int64_t n);

/// Signed-log evaluation of the first matching piece; same coverage rules.
SignedLog eval_sequence_slog(const SequenceSpec& spec, std::int64_t n);

}  // namespace bws
