#pragma once

#include <cstdint>

namespace bws::testing {

// Golden expression evaluations shared by the unit suite and the acceptance
// suite: precedence, right-associative '^', functions, literals.
struct ExprGolden {
    const char* src;
    std::int64_t n;
    double expected;
    double tol;  // absolute
};

inline constexpr ExprGolden kExprGoldens[] = {
    {"2^n", 3, 8.0, 0.0},
    {"n*2^(n-2)", -1, -0.125, 0.0},
    {"(1-2^(-2*(n+1)))/(2*(n+1))", 0, 0.375, 0.0},
    {"-2^2", 0, -4.0, 0.0},
    {"2^3^2", 0, 512.0, 0.0},                    // right-associative
    {"2^-2", 0, 0.25, 0.0},
    {"-2^-2", 0, -0.25, 0.0},
    {"1+2*3", 0, 7.0, 0.0},
    {"(1+2)*3", 0, 9.0, 0.0},
    {"1-2-3", 0, -4.0, 0.0},                     // left-associative
    {"12/4/3", 0, 1.0, 0.0},
    {"2*3^2", 0, 18.0, 0.0},
    {"10-2^2", 0, 6.0, 0.0},
    {"-(2+3)", 0, -5.0, 0.0},
    {"-n", 5, -5.0, 0.0},
    {"n^2", -3, 9.0, 0.0},
    {"abs(-3.5)", 0, 3.5, 0.0},
    {"sqrt(16)", 0, 4.0, 0.0},
    {"exp(0)", 0, 1.0, 0.0},
    {"log(exp(2))", 0, 2.0, 1e-15},
    {"log(2)", 0, 0.6931471805599453, 1e-15},    // natural log
    {"sqrt(2)^2", 0, 2.0, 1e-15},
    {"2^(1/2)", 0, 1.4142135623730951, 1e-15},
    {"1/n", 4, 0.25, 0.0},
    {"(n+1)*(n-1)", 7, 48.0, 0.0},
    {"2.5e2", 0, 250.0, 0.0},
    {"0.125", 0, 0.125, 0.0},
    {" 1 + 2 ", 0, 3.0, 0.0},
    {"n/2", 7, 3.5, 0.0},
    {"2^(n-2)", 0, 0.25, 0.0},
};

inline constexpr int kExprGoldenCount = static_cast<int>(sizeof(kExprGoldens) / sizeof(ExprGolden));

}  // namespace bws::testing
