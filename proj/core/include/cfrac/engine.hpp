#pragma once

// Convergents, tail sequences and reverse sequences of K(1/b_n).
//
// Numerators and denominators follow the Wallis-Euler recurrence
//   A_n = b_n A_{n-1} + A_{n-2},   B_n = b_n B_{n-1} + B_{n-2},
// started from A_{-1} = 1, A_0 = 0, B_{-1} = 0, B_0 = 1. The four live
// entries share one power-of-two scale factor so long runs neither overflow
// nor underflow; every ratio is unaffected by it.

#include <cstddef>
#include <vector>

#include "cfrac/projective.hpp"
#include "cfrac/sequence.hpp"

namespace cfrac {

/// Rolling Wallis-Euler state at index n. Stored entries equal the true
/// A_n, A_{n-1}, B_n, B_{n-1} divided by scale() = 2^scale_exponent, hence
///   a_cur * b_prev - a_prev * b_cur == (-1)^(n-1) / scale()^2.
struct ConvergentState {
  Complex a_cur{0.0};
  Complex a_prev{1.0};
  Complex b_cur{1.0};
  Complex b_prev{0.0};
  std::size_t n = 0;
  int scale_exponent = 0;

  /// n = 0: A_0 = 0, A_{-1} = 1, B_0 = 1, B_{-1} = 0.
  static ConvergentState start() { return {}; }
  /// n = 1: A_1 = 1, A_0 = 0, B_1 = b1, B_0 = 1.
  static ConvergentState first(Complex b1);

  double scale() const;
  /// (-1)^(n-1) / scale^2, the expected stored determinant.
  double expected_determinant() const;
  Complex determinant() const { return a_cur * b_prev - a_prev * b_cur; }
};

inline constexpr double kRenormalizeLow = 1e-8;
inline constexpr double kRenormalizeHigh = 1e8;

/// Cross-multiplied residual of the first determinant relation:
///   |det - expected| / max(|a_cur b_prev|, |a_prev b_cur|, |expected|).
double determinant_residual(const ConvergentState& state);

/// Same for A_n B_{n-2} - A_{n-2} B_n = (-1)^n b_n, given the states at n-1
/// (before) and n (after) and the element b = b_n.
double second_determinant_residual(const ConvergentState& before, const ConvergentState& after,
                                   Complex b);

/// Advance by one element. Throws Error(kInvalidElement) for b == 0.
ConvergentState wallis_euler_step(const ConvergentState& state, Complex b);

/// State after consuming b_1..b_n (throws Error(kOutOfRange) for n > count).
ConvergentState advance_to(const ElementSequence& seq, std::size_t n);

/// States for n = 0..n_max inclusive.
std::vector<ConvergentState> wallis_euler_trace(const ElementSequence& seq, std::size_t n_max);

/// f_n = A_n / B_n; infinity when B_n = 0.
ExtendedComplex convergent(const ElementSequence& seq, std::size_t n);

/// f_n(w) = (A_n + w A_{n-1}) / (B_n + w B_{n-1}) = s_1 o ... o s_n (w).
ExtendedComplex convergent_at(const ElementSequence& seq, std::size_t n, const ExtendedComplex& w);
ExtendedComplex convergent_at(const ConvergentState& state, const ExtendedComplex& w);

/// Backward recursion t_{n-1} = 1/(b_n + t_n) from t_N = seed.
/// Returns (t_N, t_{N-1}, ..., t_0); t_0 = f_N(seed).
std::vector<ExtendedComplex> tail_sequence(const ElementSequence& seq, std::size_t N,
                                           const ExtendedComplex& seed);

/// Closed form t_n(w) = (A_n - w B_n) / (-A_{n-1} + w B_{n-1}), the tail
/// sequence with t_0 = w; inverse of f_n as a map.
ExtendedComplex tail_closed_form(const ElementSequence& seq, std::size_t n,
                                 const ExtendedComplex& w);

/// r_{n+1}(seed) by forward recursion r_{k+1} = 1/(b_k + r_k) from r_1 = seed.
ExtendedComplex reverse_sequence(const ElementSequence& seq, std::size_t n,
                                 const ExtendedComplex& seed);

/// Closed form r_{n+1}(w) = (B_{n-1} + w A_{n-1}) / (B_n + w A_n).
ExtendedComplex reverse_closed_form(const ElementSequence& seq, std::size_t n,
                                    const ExtendedComplex& w);

struct EvenOddLimits {
  Complex a_even, a_odd, b_even, b_odd;  // at the common scale below
  Complex f_even, f_odd;
  int scale_exponent = 0;
  std::size_t iterations_used = 0;
  /// Rescaled A and B of both parities settled (Stern-Stolz regime).
  bool converged = false;
  /// f_even and f_odd each settled.
  bool values_converged = false;
};

/// Iterates the recurrence for up to min(max_terms, seq.count()) elements.
/// A parity "settles" once it changes by less than tol * max(1, |x|) on three
/// consecutive same-parity steps. Stops once A and B settle, or once the
/// convergents settle and agree (a convergent fraction). Non-convergence is
/// reported through the flags, never thrown.
EvenOddLimits even_odd_limits(const ElementSequence& seq, double tol, std::size_t max_terms);

struct Km5Bound {
  double lhs;
  double rhs;
  bool holds;
};

/// For positive b_k and w:
///   lhs = K_{k=1}^{2n} (1 / (w b_k))
///   rhs = sum_{i=1}^{n} w b_{2i} / (1 + w^2 b_{2i-1} b_{2i})
/// holds = lhs <= rhs + slack. The numerator of each summand is the
/// even-indexed element; with b_{2i-1} there the inequality fails already
/// for b = (2, 3), w = 1.
Km5Bound km5_bound(const ElementSequence& seq, double w, std::size_t pairs,
                   double slack = 1e-12);

}  // namespace cfrac
