#pragma once

// Arithmetic on the extended complex plane C u {inf}, sectors
// S_theta = {z : |Arg z| <= theta}, and Moebius maps w -> (a w + b)/(c w + d).
//
// Points and maps are kept in homogeneous form. Both are rescaled by powers
// of two only, so renormalization is exact and never changes a projective
// value.

#include <complex>

namespace cfrac {

using Complex = std::complex<double>;

inline constexpr double kDefaultCompareTolerance = 1e-12;
inline constexpr double kDefaultArgTolerance = 1e-12;

class ExtendedComplex {
 public:
  ExtendedComplex() = default;
  ExtendedComplex(Complex value) : num_(value), den_(1.0) {}  // NOLINT: implicit by intent
  ExtendedComplex(double value) : num_(value), den_(1.0) {}   // NOLINT

  // Throws Error(kDomain) for (0, 0).
  static ExtendedComplex homogeneous(Complex num, Complex den);
  static ExtendedComplex infinity() { return {Complex(1.0), Complex(0.0), Raw{}}; }

  Complex num() const { return num_; }
  Complex den() const { return den_; }

  bool is_infinite() const { return den_ == Complex(0.0); }
  bool is_zero() const { return num_ == Complex(0.0); }

  // num / den. Infinite points yield a complex with infinite real part.
  Complex value() const;

  // Same point with max(|num|, |den|) scaled into [1/2, 1) by a power of two.
  ExtendedComplex normalized() const;

 private:
  struct Raw {};
  ExtendedComplex(Complex num, Complex den, Raw) : num_(num), den_(den) {}

  Complex num_{0.0};
  Complex den_{1.0};
};

// Cross-multiplied comparison:
//   |nx*dy - ny*dx| <= tol * max(|nx*dy|, |ny*dx|, 1)
// evaluated on normalized representatives.
bool excomplex_eq(const ExtendedComplex& x, const ExtendedComplex& y,
                  double tol = kDefaultCompareTolerance);

class Sector {
 public:
  // Throws Error(kDomain) unless 0 <= half_angle < pi/2.
  explicit Sector(double half_angle, double arg_tolerance = kDefaultArgTolerance);

  double half_angle() const { return half_angle_; }
  double arg_tolerance() const { return arg_tolerance_; }

  // 0 is a member; infinity never is.
  bool contains(Complex z) const;
  bool contains(const ExtendedComplex& z) const;

 private:
  double half_angle_;
  double arg_tolerance_;
};

bool sector_contains(const ExtendedComplex& z, const Sector& s);

// Smallest half-angle theta with z in S_theta (0 for z = 0).
double sector_angle(Complex z);

class MoebiusMap {
 public:
  // Throws Error(kDomain) when a*d - b*c == 0.
  MoebiusMap(Complex a, Complex b, Complex c, Complex d);

  static MoebiusMap identity();

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }
  Complex det() const { return a_ * d_ - b_ * c_; }

  ExtendedComplex apply(const ExtendedComplex& w) const;
  MoebiusMap inverse() const;

 private:
  struct Unchecked {};
  // Products and inverses of nonsingular maps are nonsingular; long chains
  // can still round the rescaled determinant to 0, so skip the check there.
  MoebiusMap(Unchecked, Complex a, Complex b, Complex c, Complex d);
  void renormalize();

  friend MoebiusMap mobius_compose(const MoebiusMap& m1, const MoebiusMap& m2);

  Complex a_, b_, c_, d_;
};

// s(w) = 1/(b + w), matrix [[0, 1], [1, b]]. Throws Error(kInvalidElement) for b == 0.
MoebiusMap s_map(Complex b);

// Matrix product m1 * m2, i.e. the map w -> m1(m2(w)).
MoebiusMap mobius_compose(const MoebiusMap& m1, const MoebiusMap& m2);

ExtendedComplex mobius_apply(const MoebiusMap& m, const ExtendedComplex& w);

}  // namespace cfrac
