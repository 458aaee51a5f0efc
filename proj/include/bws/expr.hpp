#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

#include "bws/errors.hpp"
#include "bws/signed_log.hpp"

namespace bws {

// Closed-form expression language for sequences over Z.
// Grammar (precedence low to high):  + -  |  * /  |  unary -  |  ^  | primary
// '^' is right-associative and binds tighter than unary minus on its base,
// so "-2^n" parses as -(2^n).  Functions: sqrt, log, exp, abs (log natural).

enum class BinaryOp : std::uint8_t { Add, Sub, Mul, Div, Pow };
enum class FuncKind : std::uint8_t { Sqrt, Log, Exp, Abs };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct NumberNode {
    double value;
};
struct VarNode {};  // the index variable `n`
struct NegNode {
    ExprPtr operand;
};
struct BinaryNode {
    BinaryOp op;
    ExprPtr lhs, rhs;
};
struct CallNode {
    FuncKind func;
    ExprPtr arg;
};

struct Expr {
    std::variant<NumberNode, VarNode, NegNode, BinaryNode, CallNode> node;
};

/// Parse `src` into an AST. Pure and deterministic.
/// Throws ParseError (with byte offset and expected-token set) on bad syntax,
/// unknown function names, and identifiers other than `n`.
ExprPtr parse_expression(const std::string& src);

/// Minimal-parenthesis rendering; parse(to_string(e)) reproduces e exactly.
std::string to_string(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

/// Evaluate at integer index n in plain double arithmetic.
/// May produce NaN/inf; callers decide whether that is an error.
double eval(const Expr& e, std::int64_t n);

/// Evaluate in the signed-log domain (log-sum-exp for +/-). Usable at indices
/// like |n| ~ 2^30 where the double path would overflow or underflow.
/// Throws NumericError where the value is not representable even as a log
/// (e.g. exp of an astronomically large argument, nonreal powers).
SignedLog eval_slog(const Expr& e, std::int64_t n);

}  // namespace bws
