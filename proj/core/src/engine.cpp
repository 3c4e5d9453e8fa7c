#include "cfrac/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cfrac/error.hpp"

namespace cfrac {

namespace {

double max_component(Complex z) { return std::max(std::fabs(z.real()), std::fabs(z.imag())); }

Complex scale2(Complex z, int e) { return {std::ldexp(z.real(), e), std::ldexp(z.imag(), e)}; }

void require_index(const ElementSequence& seq, std::size_t n) {
  if (n > seq.count()) {
    throw Error(ErrorCode::kOutOfRange, "index " + std::to_string(n) +
                                            " exceeds sequence count " + std::to_string(seq.count()));
  }
}

bool settled(Complex now, Complex before, double tol) {
  const double change = std::abs(now - before);
  return std::isfinite(change) && change < tol * std::max(1.0, std::abs(now));
}

}  // namespace

ConvergentState ConvergentState::first(Complex b1) { return wallis_euler_step(start(), b1); }

double ConvergentState::scale() const { return std::ldexp(1.0, scale_exponent); }

double ConvergentState::expected_determinant() const {
  // n = 0 gives (-1)^(-1) = -1, same parity rule as n >= 1.
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;
  return std::ldexp(sign, -2 * scale_exponent);
}

double determinant_residual(const ConvergentState& state) {
  const Complex lhs = state.a_cur * state.b_prev;
  const Complex rhs = state.a_prev * state.b_cur;
  const double expected = state.expected_determinant();
  const double size = std::max({std::abs(lhs), std::abs(rhs), std::fabs(expected)});
  return std::abs(lhs - rhs - expected) / size;
}

double second_determinant_residual(const ConvergentState& before, const ConvergentState& after,
                                   Complex b) {
  // A_{n-2}, B_{n-2} sit in before.*_prev, at before's scale.
  const int shift = before.scale_exponent - after.scale_exponent;
  const Complex a_nm2 = scale2(before.a_prev, shift);
  const Complex b_nm2 = scale2(before.b_prev, shift);
  const Complex lhs = after.a_cur * b_nm2;
  const Complex rhs = a_nm2 * after.b_cur;
  const double sign = (after.n % 2 == 0) ? 1.0 : -1.0;
  const Complex expected = std::ldexp(sign, -2 * after.scale_exponent) * b;
  const double size = std::max({std::abs(lhs), std::abs(rhs), std::abs(expected)});
  return std::abs(lhs - rhs - expected) / size;
}

ConvergentState wallis_euler_step(const ConvergentState& state, Complex b) {
  if (b == Complex(0.0)) {
    throw Error(ErrorCode::kInvalidElement, "continued fraction element must be nonzero");
  }
  ConvergentState next;
  next.a_cur = b * state.a_cur + state.a_prev;
  next.a_prev = state.a_cur;
  next.b_cur = b * state.b_cur + state.b_prev;
  next.b_prev = state.b_cur;
  next.n = state.n + 1;
  next.scale_exponent = state.scale_exponent;

  const double m = std::max({max_component(next.a_cur), max_component(next.a_prev),
                             max_component(next.b_cur), max_component(next.b_prev)});
  if (m > 0.0 && std::isfinite(m) && (m < kRenormalizeLow || m > kRenormalizeHigh)) {
    int e = 0;
    std::frexp(m, &e);
    next.a_cur = scale2(next.a_cur, -e);
    next.a_prev = scale2(next.a_prev, -e);
    next.b_cur = scale2(next.b_cur, -e);
    next.b_prev = scale2(next.b_prev, -e);
    next.scale_exponent += e;
  }
  return next;
}

ConvergentState advance_to(const ElementSequence& seq, std::size_t n) {
  require_index(seq, n);
  ConvergentState state = ConvergentState::start();
  for (std::size_t k = 1; k <= n; ++k) state = wallis_euler_step(state, seq.at(k));
  return state;
}

std::vector<ConvergentState> wallis_euler_trace(const ElementSequence& seq, std::size_t n_max) {
  require_index(seq, n_max);
  std::vector<ConvergentState> trace;
  trace.reserve(n_max + 1);
  trace.push_back(ConvergentState::start());
  for (std::size_t k = 1; k <= n_max; ++k) trace.push_back(wallis_euler_step(trace.back(), seq.at(k)));
  return trace;
}

ExtendedComplex convergent(const ElementSequence& seq, std::size_t n) {
  const ConvergentState s = advance_to(seq, n);
  return ExtendedComplex::homogeneous(s.a_cur, s.b_cur).normalized();
}

ExtendedComplex convergent_at(const ConvergentState& state, const ExtendedComplex& w) {
  const ExtendedComplex wn = w.normalized();
  return ExtendedComplex::homogeneous(state.a_cur * wn.den() + state.a_prev * wn.num(),
                                      state.b_cur * wn.den() + state.b_prev * wn.num())
      .normalized();
}

ExtendedComplex convergent_at(const ElementSequence& seq, std::size_t n, const ExtendedComplex& w) {
  return convergent_at(advance_to(seq, n), w);
}

std::vector<ExtendedComplex> tail_sequence(const ElementSequence& seq, std::size_t N,
                                           const ExtendedComplex& seed) {
  require_index(seq, N);
  std::vector<ExtendedComplex> tails;
  tails.reserve(N + 1);
  ExtendedComplex t = seed.normalized();
  tails.push_back(t);
  for (std::size_t n = N; n >= 1; --n) {
    t = s_map(seq.at(n)).apply(t);
    tails.push_back(t);
  }
  return tails;
}

ExtendedComplex tail_closed_form(const ElementSequence& seq, std::size_t n,
                                 const ExtendedComplex& w) {
  const ConvergentState s = advance_to(seq, n);
  const ExtendedComplex wn = w.normalized();
  return ExtendedComplex::homogeneous(s.a_cur * wn.den() - wn.num() * s.b_cur,
                                      -s.a_prev * wn.den() + wn.num() * s.b_prev)
      .normalized();
}

ExtendedComplex reverse_sequence(const ElementSequence& seq, std::size_t n,
                                 const ExtendedComplex& seed) {
  require_index(seq, n);
  ExtendedComplex r = seed.normalized();
  for (std::size_t k = 1; k <= n; ++k) r = s_map(seq.at(k)).apply(r);
  return r;
}

ExtendedComplex reverse_closed_form(const ElementSequence& seq, std::size_t n,
                                    const ExtendedComplex& w) {
  const ConvergentState s = advance_to(seq, n);
  const ExtendedComplex wn = w.normalized();
  return ExtendedComplex::homogeneous(s.b_prev * wn.den() + wn.num() * s.a_prev,
                                      s.b_cur * wn.den() + wn.num() * s.a_cur)
      .normalized();
}

EvenOddLimits even_odd_limits(const ElementSequence& seq, double tol, std::size_t max_terms) {
  if (!(tol > 0.0)) throw Error(ErrorCode::kDomain, "tolerance must be positive");
  // Three consecutive steps of each parity.
  constexpr int kStreak = 6;

  const std::size_t terms = std::min(max_terms, seq.count());
  ConvergentState state = ConvergentState::start();
  int ab_streak = 0;
  int f_streak = 0;
  bool ab_done = false;

  for (std::size_t n = 1; n <= terms; ++n) {
    const ConvergentState next = wallis_euler_step(state, seq.at(n));
    if (n >= 2) {
      // A_{n-2}, B_{n-2} live in state.*_prev at state's scale.
      const int shift = state.scale_exponent - next.scale_exponent;
      const Complex a_before = scale2(state.a_prev, shift);
      const Complex b_before = scale2(state.b_prev, shift);
      const bool ab_ok = settled(next.a_cur, a_before, tol) && settled(next.b_cur, b_before, tol);
      ab_streak = ab_ok ? ab_streak + 1 : 0;

      const bool f_ok = next.b_cur != Complex(0.0) && state.b_prev != Complex(0.0) &&
                        settled(next.a_cur / next.b_cur, state.a_prev / state.b_prev, tol);
      f_streak = f_ok ? f_streak + 1 : 0;
    }
    state = next;
    if (ab_streak >= kStreak) {
      ab_done = true;
      break;
    }
    if (f_streak >= kStreak && state.b_prev != Complex(0.0) &&
        settled(state.a_cur / state.b_cur, state.a_prev / state.b_prev, tol)) {
      break;
    }
  }

  EvenOddLimits out;
  const bool even = state.n % 2 == 0;
  out.a_even = even ? state.a_cur : state.a_prev;
  out.a_odd = even ? state.a_prev : state.a_cur;
  out.b_even = even ? state.b_cur : state.b_prev;
  out.b_odd = even ? state.b_prev : state.b_cur;
  out.f_even = out.a_even / out.b_even;
  out.f_odd = out.a_odd / out.b_odd;
  out.scale_exponent = state.scale_exponent;
  out.iterations_used = state.n;
  out.converged = ab_done;
  out.values_converged = ab_done || f_streak >= kStreak;
  return out;
}

Km5Bound km5_bound(const ElementSequence& seq, double w, std::size_t pairs, double slack) {
  if (!(w > 0.0) || !std::isfinite(w)) throw Error(ErrorCode::kDomain, "w must be positive");
  for (Complex b : seq.elements()) {
    if (b.imag() != 0.0 || !(b.real() > 0.0)) {
      throw Error(ErrorCode::kDomain, "all elements must be real and positive");
    }
  }
  require_index(seq, 2 * pairs);

  const double lhs = convergent(seq.scaled(w), 2 * pairs).value().real();
  double rhs = 0.0;
  for (std::size_t i = 1; i <= pairs; ++i) {
    const double odd = seq.at(2 * i - 1).real();
    const double even = seq.at(2 * i).real();
    rhs += w * even / (1.0 + w * w * odd * even);
  }
  return {lhs, rhs, lhs <= rhs + slack};
}

}  // namespace cfrac
