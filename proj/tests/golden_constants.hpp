#pragma once

// Golden constants, version 1.
//
// Pinned reference values with their derivation route ("provenance"), so a
// regression in any computational path shows up as a diffable failure here.
//   analytic    - closed form evaluated by hand
//   quadrature  - double-exponential quadrature of the centering integrals
//   recursion   - coefficient recursion cross-checked against a closed form

namespace gwm_golden {

inline constexpr int kVersion = 1;

struct Constant {
  const char* name;
  const char* law;
  double value;
  double tolerance;
  const char* provenance;
};

inline constexpr Constant kMuPrime[] = {
    {"mu_prime", "binary", 2.0254, 5e-5, "quadrature"},
    {"mu_prime", "poisson", 1.5561, 5e-5, "quadrature"},
    {"mu_prime", "fullbinary", 1.4414, 5e-5, "quadrature"},
    {"mu_prime", "geometric", 1.1581, 5e-5, "quadrature"},
    {"mu_prime", "mary:3", 1.8224, 5e-5, "quadrature"},
    {"mu_prime", "mary:1000", 1.5567, 5e-5, "quadrature"},
    {"mu_prime", "fullmary:3", 1.0164, 5e-5, "quadrature"},
    {"mu_prime", "fullmary:4", 0.80800, 5e-6, "quadrature"},
    {"mu_prime", "fullmary:1000000", 1.5372e-5, 5e-10, "quadrature"},
    {"mu_prime", "cfam:1e-6", 14.931, 5e-4, "quadrature"},
    {"mu_prime", "cfam:0.99", 1.4496, 5e-5, "quadrature"},
};

// E|T|^{-1} for the binary law: 2 log 2 - 1, by the substitution
// u = sqrt(1-t) in the integral of y(t)/t.
inline constexpr Constant kMuBinaryNegOne = {
    "mu(-1)", "binary", 0.3862943611198906, 1e-10, "analytic"};

// 4 (1 - log 2).
inline constexpr Constant kShapeVarNumerator = {
    "4(1-log2)", "", 1.2274112777602189, 1e-15, "analytic"};

// psi(-1/2) = 2 - gamma - 2 log 2.
inline constexpr Constant kPsiMinusHalf = {
    "psi(-1/2)", "", 0.03648997397857652, 1e-12, "analytic"};

// zeta(3/2), the constant term driver in the size-series expansion
// y = Li_{3/2}(z)/(sqrt(2 pi) sigma) + 1 - zeta(3/2)/sqrt(2 pi sigma^2) + ...
inline constexpr Constant kZetaThreeHalves = {
    "zeta(3/2)", "", 2.6123753486854883, 1e-13, "analytic"};

}  // namespace gwm_golden
