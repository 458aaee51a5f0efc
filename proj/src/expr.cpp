#include "bws/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <utility>

namespace bws {
namespace {

struct Token {
    enum class Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind;
    std::size_t offset;
    double number = 0.0;
    std::string text;
};

const char* token_name(Token::Kind k) {
    switch (k) {
        case Token::Kind::Number: return "number";
        case Token::Kind::Ident: return "identifier";
        case Token::Kind::Plus: return "'+'";
        case Token::Kind::Minus: return "'-'";
        case Token::Kind::Star: return "'*'";
        case Token::Kind::Slash: return "'/'";
        case Token::Kind::Caret: return "'^'";
        case Token::Kind::LParen: return "'('";
        case Token::Kind::RParen: return "')'";
        case Token::Kind::End: return "end of input";
    }
    return "?";
}

class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) pos_++;
        tok_.offset = pos_;
        if (pos_ >= src_.size()) {
            tok_.kind = Token::Kind::End;
            return;
        }
        char c = src_[pos_];
        switch (c) {
            case '+': tok_.kind = Token::Kind::Plus; pos_++; return;
            case '-': tok_.kind = Token::Kind::Minus; pos_++; return;
            case '*': tok_.kind = Token::Kind::Star; pos_++; return;
            case '/': tok_.kind = Token::Kind::Slash; pos_++; return;
            case '^': tok_.kind = Token::Kind::Caret; pos_++; return;
            case '(': tok_.kind = Token::Kind::LParen; pos_++; return;
            case ')': tok_.kind = Token::Kind::RParen; pos_++; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                pos_++;
            tok_.kind = Token::Kind::Ident;
            tok_.text = src_.substr(start, pos_ - start);
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "' at offset " +
                             std::to_string(pos_),
                         pos_, {"number", "identifier", "'('"});
    }

    void lex_number() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) pos_++;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            pos_++;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) pos_++;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            pos_++;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) pos_++;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    pos_++;
            } else {
                pos_ = mark;  // 'e' belongs to something else ("2e" is not a number)
            }
        }
        tok_.kind = Token::Kind::Number;
        tok_.text = src_.substr(start, pos_ - start);
        tok_.number = std::strtod(tok_.text.c_str(), nullptr);
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    Token tok_{Token::Kind::End, 0, 0.0, {}};
};

ExprPtr make_num(double v) { return std::make_shared<Expr>(Expr{NumberNode{v}}); }
ExprPtr make_var() { return std::make_shared<Expr>(Expr{VarNode{}}); }
ExprPtr make_neg(ExprPtr e) { return std::make_shared<Expr>(Expr{NegNode{std::move(e)}}); }
ExprPtr make_bin(BinaryOp op, ExprPtr l, ExprPtr r) {
    return std::make_shared<Expr>(Expr{BinaryNode{op, std::move(l), std::move(r)}});
}
ExprPtr make_call(FuncKind f, ExprPtr a) {
    return std::make_shared<Expr>(Expr{CallNode{f, std::move(a)}});
}

class Parser {
  public:
    explicit Parser(const std::string& src) : lex_(src) {}

    ExprPtr parse() {
        ExprPtr e = parse_sum();
        if (lex_.peek().kind != Token::Kind::End)
            throw ParseError("trailing input at offset " + std::to_string(lex_.peek().offset),
                             lex_.peek().offset, {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
        return e;
    }

  private:
    ExprPtr parse_sum() {
        ExprPtr lhs = parse_term();
        while (true) {
            auto k = lex_.peek().kind;
            if (k == Token::Kind::Plus || k == Token::Kind::Minus) {
                lex_.take();
                ExprPtr rhs = parse_term();
                lhs = make_bin(k == Token::Kind::Plus ? BinaryOp::Add : BinaryOp::Sub,
                               std::move(lhs), std::move(rhs));
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_unary();
        while (true) {
            auto k = lex_.peek().kind;
            if (k == Token::Kind::Star || k == Token::Kind::Slash) {
                lex_.take();
                ExprPtr rhs = parse_unary();
                lhs = make_bin(k == Token::Kind::Star ? BinaryOp::Mul : BinaryOp::Div,
                               std::move(lhs), std::move(rhs));
            } else {
                return lhs;
            }
        }
    }

    // unary minus binds looser than '^': -2^n is -(2^n)
    ExprPtr parse_unary() {
        if (lex_.peek().kind == Token::Kind::Minus) {
            lex_.take();
            return make_neg(parse_unary());
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_primary();
        if (lex_.peek().kind == Token::Kind::Caret) {
            lex_.take();
            // right-associative; a unary exponent allows 2^-3
            ExprPtr exponent = parse_unary();
            return make_bin(BinaryOp::Pow, std::move(base), std::move(exponent));
        }
        return base;
    }

    ExprPtr parse_primary() {
        Token t = lex_.peek();
        switch (t.kind) {
            case Token::Kind::Number:
                lex_.take();
                return make_num(t.number);
            case Token::Kind::LParen: {
                lex_.take();
                ExprPtr e = parse_sum();
                expect(Token::Kind::RParen);
                return e;
            }
            case Token::Kind::Ident: {
                lex_.take();
                if (t.text == "n") return make_var();
                FuncKind f;
                if (t.text == "sqrt") f = FuncKind::Sqrt;
                else if (t.text == "log") f = FuncKind::Log;
                else if (t.text == "exp") f = FuncKind::Exp;
                else if (t.text == "abs") f = FuncKind::Abs;
                else if (lex_.peek().kind == Token::Kind::LParen)
                    throw ParseError("unknown function '" + t.text + "' at offset " +
                                         std::to_string(t.offset),
                                     t.offset, {"sqrt", "log", "exp", "abs"});
                else
                    throw ParseError("unknown identifier '" + t.text + "' at offset " +
                                         std::to_string(t.offset) + " (only 'n' is defined)",
                                     t.offset, {"n"});
                expect(Token::Kind::LParen);
                ExprPtr arg = parse_sum();
                expect(Token::Kind::RParen);
                return make_call(f, std::move(arg));
            }
            default:
                throw ParseError(std::string("expected an operand at offset ") +
                                     std::to_string(t.offset) + ", found " + token_name(t.kind),
                                 t.offset, {"number", "'n'", "function", "'('", "'-'"});
        }
    }

    void expect(Token::Kind k) {
        if (lex_.peek().kind != k)
            throw ParseError(std::string("expected ") + token_name(k) + " at offset " +
                                 std::to_string(lex_.peek().offset) + ", found " +
                                 token_name(lex_.peek().kind),
                             lex_.peek().offset, {token_name(k)});
        lex_.take();
    }

    Lexer lex_;
};

int precedence_level(const Expr& e) {
    // higher binds tighter; used for minimal parenthesization
    if (std::holds_alternative<NumberNode>(e.node) || std::holds_alternative<VarNode>(e.node) ||
        std::holds_alternative<CallNode>(e.node))
        return 5;
    if (std::holds_alternative<BinaryNode>(e.node)) {
        switch (std::get<BinaryNode>(e.node).op) {
            case BinaryOp::Pow: return 4;
            case BinaryOp::Mul:
            case BinaryOp::Div: return 2;
            case BinaryOp::Add:
            case BinaryOp::Sub: return 1;
        }
    }
    return 3;  // unary minus
}

void print_expr(const Expr& e, std::string& out);

void print_child(const Expr& child, int min_level, std::string& out) {
    if (precedence_level(child) < min_level) {
        out += '(';
        print_expr(child, out);
        out += ')';
    } else {
        print_expr(child, out);
    }
}

void print_expr(const Expr& e, std::string& out) {
    if (const auto* num = std::get_if<NumberNode>(&e.node)) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", num->value);
        out += buf;
        return;
    }
    if (std::holds_alternative<VarNode>(e.node)) {
        out += 'n';
        return;
    }
    if (const auto* neg = std::get_if<NegNode>(&e.node)) {
        out += '-';
        print_child(*neg->operand, 3, out);
        return;
    }
    if (const auto* call = std::get_if<CallNode>(&e.node)) {
        switch (call->func) {
            case FuncKind::Sqrt: out += "sqrt("; break;
            case FuncKind::Log: out += "log("; break;
            case FuncKind::Exp: out += "exp("; break;
            case FuncKind::Abs: out += "abs("; break;
        }
        print_expr(*call->arg, out);
        out += ')';
        return;
    }
    const auto& bin = std::get<BinaryNode>(e.node);
    switch (bin.op) {
        case BinaryOp::Add:
            print_child(*bin.lhs, 1, out);
            out += " + ";
            print_child(*bin.rhs, 2, out);
            break;
        case BinaryOp::Sub:
            print_child(*bin.lhs, 1, out);
            out += " - ";
            print_child(*bin.rhs, 2, out);
            break;
        case BinaryOp::Mul:
            print_child(*bin.lhs, 2, out);
            out += "*";
            print_child(*bin.rhs, 3, out);
            break;
        case BinaryOp::Div:
            print_child(*bin.lhs, 2, out);
            out += "/";
            print_child(*bin.rhs, 3, out);
            break;
        case BinaryOp::Pow:
            // exponent printed at unary level to keep right associativity
            print_child(*bin.lhs, 5, out);
            out += "^";
            print_child(*bin.rhs, 3, out);
            break;
    }
}

bool is_integer_valued(double x) { return std::isfinite(x) && x == std::floor(x); }

// ln-representable value of a SignedLog, for exponents and log arguments
double slog_to_real_checked(SignedLog v, const char* what) {
    if (v.is_zero()) return 0.0;
    if (!(v.ln_mag < 700.0))
        throw NumericError(std::string(what) + " is too large to represent");
    return v.to_real();
}

}  // namespace

ExprPtr parse_expression(const std::string& src) {
    bool blank = true;
    for (char c : src)
        if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) throw ParseError("empty expression", 0, {"number", "'n'", "function", "'('"});
    return Parser(src).parse();
}

std::string to_string(const Expr& e) {
    std::string out;
    print_expr(e, out);
    return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* na = std::get_if<NumberNode>(&a.node))
        return na->value == std::get<NumberNode>(b.node).value;
    if (std::holds_alternative<VarNode>(a.node)) return true;
    if (const auto* ga = std::get_if<NegNode>(&a.node))
        return structurally_equal(*ga->operand, *std::get<NegNode>(b.node).operand);
    if (const auto* ca = std::get_if<CallNode>(&a.node)) {
        const auto& cb = std::get<CallNode>(b.node);
        return ca->func == cb.func && structurally_equal(*ca->arg, *cb.arg);
    }
    const auto& ba = std::get<BinaryNode>(a.node);
    const auto& bb = std::get<BinaryNode>(b.node);
    return ba.op == bb.op && structurally_equal(*ba.lhs, *bb.lhs) &&
           structurally_equal(*ba.rhs, *bb.rhs);
}

double eval(const Expr& e, std::int64_t n) {
    if (const auto* num = std::get_if<NumberNode>(&e.node)) return num->value;
    if (std::holds_alternative<VarNode>(e.node)) return static_cast<double>(n);
    if (const auto* neg = std::get_if<NegNode>(&e.node)) return -eval(*neg->operand, n);
    if (const auto* call = std::get_if<CallNode>(&e.node)) {
        double a = eval(*call->arg, n);
        switch (call->func) {
            case FuncKind::Sqrt: return std::sqrt(a);
            case FuncKind::Log: return std::log(a);
            case FuncKind::Exp: return std::exp(a);
            case FuncKind::Abs: return std::abs(a);
        }
    }
    const auto& bin = std::get<BinaryNode>(e.node);
    double l = eval(*bin.lhs, n);
    double r = eval(*bin.rhs, n);
    switch (bin.op) {
        case BinaryOp::Add: return l + r;
        case BinaryOp::Sub: return l - r;
        case BinaryOp::Mul: return l * r;
        case BinaryOp::Div: return l / r;
        case BinaryOp::Pow: return std::pow(l, r);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

SignedLog eval_slog(const Expr& e, std::int64_t n) {
    if (const auto* num = std::get_if<NumberNode>(&e.node))
        return SignedLog::from_value(num->value);
    if (std::holds_alternative<VarNode>(e.node))
        return SignedLog::from_value(static_cast<double>(n));
    if (const auto* neg = std::get_if<NegNode>(&e.node)) return eval_slog(*neg->operand, n).negate();
    if (const auto* call = std::get_if<CallNode>(&e.node)) {
        SignedLog a = eval_slog(*call->arg, n);
        switch (call->func) {
            case FuncKind::Sqrt:
                if (a.sign < 0) throw NumericError("sqrt of a negative value");
                if (a.is_zero()) return SignedLog::zero();
                return SignedLog::from_ln(1, a.ln_mag / 2.0);
            case FuncKind::Log:
                // log(x) == ln_mag of x when x > 0, already a plain double
                if (a.sign <= 0) throw NumericError("log of a nonpositive value");
                return SignedLog::from_value(a.ln_mag);
            case FuncKind::Exp:
                return SignedLog::from_ln(1, slog_to_real_checked(a, "exp argument"));
            case FuncKind::Abs:
                return a.abs();
        }
    }
    const auto& bin = std::get<BinaryNode>(e.node);
    SignedLog l = eval_slog(*bin.lhs, n);
    SignedLog r = eval_slog(*bin.rhs, n);
    switch (bin.op) {
        case BinaryOp::Add: return l + r;
        case BinaryOp::Sub: return l - r;
        case BinaryOp::Mul: return l * r;
        case BinaryOp::Div:
            if (r.is_zero()) throw NumericError("division by zero");
            return l / r;
        case BinaryOp::Pow: {
            double y = slog_to_real_checked(r, "exponent");
            if (l.is_zero()) {
                if (y > 0) return SignedLog::zero();
                if (y == 0) return SignedLog::one();
                throw NumericError("zero raised to a negative power");
            }
            if (l.sign > 0) return SignedLog::from_ln(1, y * l.ln_mag);
            if (!is_integer_valued(y))
                throw NumericError("negative base with non-integer exponent");
            int sign = std::fmod(y, 2.0) == 0.0 ? 1 : -1;
            return SignedLog::from_ln(sign, y * l.ln_mag);
        }
    }
    return SignedLog::zero();
}

}  // namespace bws
