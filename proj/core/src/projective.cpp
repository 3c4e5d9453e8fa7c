#include "cfrac/projective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cfrac/error.hpp"

namespace cfrac {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidElement: return "invalid-element";
    case ErrorCode::kDomain: return "domain-error";
    case ErrorCode::kSectorTooWide: return "sector-too-wide";
    case ErrorCode::kInvalidCertificateRequest: return "invalid-certificate-request";
    case ErrorCode::kOutOfRange: return "out-of-range";
  }
  return "unknown";
}

namespace {

// Largest |component| over real and imaginary parts; cheaper than abs() and
// enough to pick an exponent.
double max_component(Complex z) { return std::max(std::fabs(z.real()), std::fabs(z.imag())); }

// Power-of-two exponent e such that x * 2^-e lies in [1/2, 1).
int binary_exponent(double x) {
  int e = 0;
  std::frexp(x, &e);
  return e;
}

Complex scale2(Complex z, int e) { return {std::ldexp(z.real(), e), std::ldexp(z.imag(), e)}; }

}  // namespace

ExtendedComplex ExtendedComplex::homogeneous(Complex num, Complex den) {
  if (num == Complex(0.0) && den == Complex(0.0)) {
    throw Error(ErrorCode::kDomain, "homogeneous point (0, 0) is not a point of the extended plane");
  }
  return {num, den, Raw{}};
}

Complex ExtendedComplex::value() const {
  if (is_infinite()) return {std::numeric_limits<double>::infinity(), 0.0};
  return num_ / den_;
}

ExtendedComplex ExtendedComplex::normalized() const {
  const double m = std::max(max_component(num_), max_component(den_));
  if (m == 0.0 || !std::isfinite(m)) return *this;
  const int e = binary_exponent(m);
  if (e == 0) return *this;
  return {scale2(num_, -e), scale2(den_, -e), Raw{}};
}

bool excomplex_eq(const ExtendedComplex& x, const ExtendedComplex& y, double tol) {
  const ExtendedComplex xn = x.normalized();
  const ExtendedComplex yn = y.normalized();
  const Complex lhs = xn.num() * yn.den();
  const Complex rhs = yn.num() * xn.den();
  const double bound = std::max({std::abs(lhs), std::abs(rhs), 1.0});
  return std::abs(lhs - rhs) <= tol * bound;
}

Sector::Sector(double half_angle, double arg_tolerance)
    : half_angle_(half_angle), arg_tolerance_(arg_tolerance) {
  if (!(half_angle >= 0.0 && half_angle < std::numbers::pi / 2)) {
    throw Error(ErrorCode::kDomain, "sector half-angle must lie in [0, pi/2)");
  }
  if (!(arg_tolerance >= 0.0)) {
    throw Error(ErrorCode::kDomain, "sector argument tolerance must be non-negative");
  }
}

bool Sector::contains(Complex z) const {
  if (z == Complex(0.0)) return true;
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return std::fabs(std::arg(z)) <= half_angle_ + arg_tolerance_;
}

bool Sector::contains(const ExtendedComplex& z) const {
  if (z.is_infinite()) return false;
  if (z.is_zero()) return true;
  // Arg(num/den) = Arg(num * conj(den)); avoids the division.
  const ExtendedComplex n = z.normalized();
  return contains(n.num() * std::conj(n.den()));
}

bool sector_contains(const ExtendedComplex& z, const Sector& s) { return s.contains(z); }

double sector_angle(Complex z) {
  if (z == Complex(0.0)) return 0.0;
  return std::fabs(std::arg(z));
}

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
  if (a * d - b * c == Complex(0.0)) {
    throw Error(ErrorCode::kDomain, "Moebius map with zero determinant");
  }
  renormalize();
}

MoebiusMap::MoebiusMap(Unchecked, Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
  renormalize();
}

void MoebiusMap::renormalize() {
  const double m = std::max({std::abs(a_), std::abs(b_), std::abs(c_), std::abs(d_)});
  if (std::isfinite(m) && (m < 0.5 || m > 2.0)) {
    const int e = binary_exponent(m);
    a_ = scale2(a_, -e);
    b_ = scale2(b_, -e);
    c_ = scale2(c_, -e);
    d_ = scale2(d_, -e);
  }
}

MoebiusMap MoebiusMap::identity() { return {1.0, 0.0, 0.0, 1.0}; }

ExtendedComplex MoebiusMap::apply(const ExtendedComplex& w) const {
  const ExtendedComplex wn = w.normalized();
  return ExtendedComplex::homogeneous(a_ * wn.num() + b_ * wn.den(), c_ * wn.num() + d_ * wn.den())
      .normalized();
}

MoebiusMap MoebiusMap::inverse() const { return {Unchecked{}, d_, -b_, -c_, a_}; }

MoebiusMap s_map(Complex b) {
  if (b == Complex(0.0)) {
    throw Error(ErrorCode::kInvalidElement, "continued fraction element must be nonzero");
  }
  return {0.0, 1.0, 1.0, b};
}

MoebiusMap mobius_compose(const MoebiusMap& m1, const MoebiusMap& m2) {
  return {MoebiusMap::Unchecked{}, m1.a() * m2.a() + m1.b() * m2.c(), m1.a() * m2.b() + m1.b() * m2.d(),
          m1.c() * m2.a() + m1.d() * m2.c(), m1.c() * m2.b() + m1.d() * m2.d()};
}

ExtendedComplex mobius_apply(const MoebiusMap& m, const ExtendedComplex& w) { return m.apply(w); }

}  // namespace cfrac
