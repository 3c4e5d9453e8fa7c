#include "cfrac/value_regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cfrac/engine.hpp"
#include "cfrac/error.hpp"

namespace cfrac {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4;
constexpr double kHalfPi = std::numbers::pi / 2;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative allowance when comparing a supplied C^2 against a threshold that
// was itself computed in floating point.
constexpr double kThresholdRounding = 1e-12;

[[noreturn]] void invalid_request(const std::string& what) {
  throw Error(ErrorCode::kInvalidCertificateRequest, what);
}

void check_pair_lists(std::span<const Complex> ps, std::span<const Complex> qs) {
  if (ps.empty() || qs.empty()) throw Error(ErrorCode::kDomain, "element pair lists must be nonempty");
  if (ps.size() != qs.size()) throw Error(ErrorCode::kDomain, "p and q lists differ in length");
  for (std::size_t k = 0; k < ps.size(); ++k) {
    if (ps[k] == Complex(0.0) || qs[k] == Complex(0.0)) {
      throw Error(ErrorCode::kDomain, "pair elements must be nonzero");
    }
  }
}

void check_origin_theta(double theta) {
  if (!(theta >= 0.0)) throw Error(ErrorCode::kDomain, "sector half-angle must be non-negative");
  if (!(theta < kQuarterPi)) {
    throw Error(ErrorCode::kSectorTooWide,
                "origin-disk value regions need theta < pi/4; at theta = pi/4 the two-step map "
                "p = q = t e^{i pi/4}, z = t^{-1/3} e^{i pi/4} escapes every origin disk "
                "(see the counterexample command)");
  }
}

double sup_modulus_ratio(std::span<const Complex> ps, std::span<const Complex> qs) {
  double sup = 0.0;
  for (std::size_t k = 0; k < ps.size(); ++k) sup = std::max(sup, std::abs(ps[k] / qs[k]));
  return sup;
}

double sup_shifted_quantity(std::span<const Complex> ps, std::span<const Complex> qs) {
  double sup = 0.0;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    sup = std::max(sup, 1.0 / (qs[k].real() * (1.0 / ps[k]).real()));
  }
  return sup;
}

PairedElements paired_prefix(const ElementSequence& seq, Target target, std::size_t pairs) {
  PairedElements out;
  const auto b = seq.elements();
  for (std::size_t k = 0; k < pairs; ++k) {
    const Complex odd = b[2 * k];
    const Complex even = b[2 * k + 1];
    if (target == Target::kOddReverse) {
      out.qs.push_back(even);
      out.ps.push_back(odd);
    } else {
      out.qs.push_back(odd);
      out.ps.push_back(even);
    }
  }
  return out;
}

// Validates the request and returns (sup quantity, minimal C) for the pairs.
struct Admissibility {
  double sup_quantity;
  double minimal_radius;
};

Admissibility validate_request(const ElementSequence& seq, const PairedElements& pairs,
                               const ExtendedComplex& seed, const ValueRegion& region,
                               const CertifyOptions& options) {
  if (!(options.slack >= 0.0)) invalid_request("slack must be non-negative");
  Admissibility adm{};
  std::optional<Sector> sector;

  if (std::holds_alternative<OriginDisk>(region)) {
    if (!options.theta) invalid_request("origin-disk certificates need a sector half-angle");
    check_origin_theta(*options.theta);
    sector.emplace(*options.theta);
  } else if (options.theta) {
    if (!(*options.theta >= 0.0 && *options.theta < kHalfPi)) {
      invalid_request("sector half-angle must lie in [0, pi/2)");
    }
    sector.emplace(*options.theta);
  }

  if (sector) {
    for (std::size_t n = 1; n <= seq.count(); ++n) {
      if (!sector->contains(seq.at(n))) {
        invalid_request("element b_" + std::to_string(n) + " lies outside S_theta");
      }
    }
    if (!sector->contains(seed)) invalid_request("seed lies outside S_theta");
  }

  if (const auto* disk = std::get_if<OriginDisk>(&region)) {
    if (!(disk->radius > 0.0) || !std::isfinite(disk->radius)) invalid_request("radius must be positive");
    adm.sup_quantity = sup_modulus_ratio(pairs.ps, pairs.qs);
    adm.minimal_radius = origin_disk_constant(pairs.ps, pairs.qs, *options.theta);
    if (disk->radius < adm.minimal_radius * (1.0 - kThresholdRounding)) {
      invalid_request("radius " + std::to_string(disk->radius) + " is below the admissible constant " +
                      std::to_string(adm.minimal_radius));
    }
    if (!disk->contains(seed, options.slack)) invalid_request("seed lies outside the disk |z| <= C");
  } else {
    const auto& shifted = std::get<ShiftedDisk>(region);
    if (!(shifted.radius > 0.0) || !std::isfinite(shifted.radius)) invalid_request("radius must be positive");
    for (std::size_t n = 1; n <= seq.count(); ++n) {
      if (!(seq.at(n).real() > 0.0)) {
        invalid_request("element b_" + std::to_string(n) + " has non-positive real part");
      }
    }
    adm.sup_quantity = sup_shifted_quantity(pairs.ps, pairs.qs);
    adm.minimal_radius = shifted_disk_constant(pairs.ps, pairs.qs);
    if (shifted.radius < adm.minimal_radius * (1.0 - kThresholdRounding)) {
      invalid_request("radius " + std::to_string(shifted.radius) + " is below the admissible constant " +
                      std::to_string(adm.minimal_radius));
    }
    if (!shifted.contains(seed, options.slack)) invalid_request("seed lies outside the disk |z - C| <= C");
  }
  return adm;
}

class CertificateBuilder {
 public:
  CertificateBuilder(Theorem theorem, Target target, const ValueRegion& region,
                     const Admissibility& adm, const CertifyOptions& options)
      : region_(region), options_(options) {
    cert_.theorem = theorem;
    cert_.target = target;
    cert_.radius = std::visit([](const auto& d) { return d.radius; }, region);
    cert_.sup_quantity = adm.sup_quantity;
    cert_.passed = true;
    cert_.worst_index = 0;
    cert_.worst_value = ExtendedComplex(0.0);
    cert_.worst_margin = -kInf;
    cert_.checked = 0;
    cert_.sector_violations = 0;
    cert_.slack_used = options.slack;
    if (options.theta) sector_.emplace(*options.theta, options.slack);
  }

  void check(std::size_t index, const ExtendedComplex& value) {
    ++cert_.checked;
    double margin = std::visit([&](const auto& d) { return d.margin(value); }, region_);
    if (std::isnan(margin)) margin = kInf;
    const bool sector_ok = !sector_ || sector_->contains(value);
    if (!sector_ok) ++cert_.sector_violations;
    const bool violated = margin > options_.slack || !sector_ok;
    if (violated) cert_.passed = false;
    // Violations outrank clean values; ties go to the larger disk margin.
    const bool worse = cert_.checked == 1 || (violated && !worst_violated_) ||
                       (violated == worst_violated_ && margin > cert_.worst_margin);
    if (worse) {
      worst_violated_ = violated;
      cert_.worst_margin = margin;
      cert_.worst_index = index;
      cert_.worst_value = value;
    }
  }

  RegionCertificate finish() { return cert_; }

 private:
  ValueRegion region_;
  CertifyOptions options_;
  std::optional<Sector> sector_;
  bool worst_violated_ = false;
  RegionCertificate cert_{};
};

Theorem theorem_of(const ValueRegion& region) {
  return std::holds_alternative<OriginDisk>(region) ? Theorem::kOriginDisk : Theorem::kShiftedDisk;
}

Complex two_step(Complex p, Complex q, Complex z) { return 1.0 / (q + 1.0 / (p + z)); }

}  // namespace

std::string_view to_string(Theorem theorem) noexcept {
  return theorem == Theorem::kOriginDisk ? "origin" : "shifted";
}

std::string_view to_string(Target target) noexcept {
  switch (target) {
    case Target::kEvenConvergents: return "convergents";
    case Target::kOddReverse: return "reverse";
    case Target::kEvenTails: return "tails";
  }
  return "unknown";
}

bool OriginDisk::contains(const ExtendedComplex& z, double slack) const {
  return margin(z) <= slack;
}

double OriginDisk::margin(const ExtendedComplex& z) const {
  if (z.is_infinite()) return kInf;
  return std::abs(z.value()) / radius - 1.0;
}

bool ShiftedDisk::contains(const ExtendedComplex& z, double slack) const {
  return margin(z) <= slack;
}

double ShiftedDisk::margin(const ExtendedComplex& z) const {
  if (z.is_infinite()) return kInf;
  return std::abs(z.value() - center()) / radius - 1.0;
}

PairedElements paired_elements(const ElementSequence& seq, Target target) {
  return paired_prefix(seq, target, seq.count() / 2);
}

double origin_disk_constant(std::span<const Complex> ps, std::span<const Complex> qs,
                            double theta) {
  check_origin_theta(theta);
  check_pair_lists(ps, qs);
  const Sector sector(theta);
  for (std::size_t k = 0; k < ps.size(); ++k) {
    if (!sector.contains(ps[k]) || !sector.contains(qs[k])) {
      throw Error(ErrorCode::kDomain, "pair elements must lie in S_theta");
    }
  }
  return std::sqrt(sup_modulus_ratio(ps, qs) / std::cos(2.0 * theta));
}

double shifted_disk_constant(std::span<const Complex> ps, std::span<const Complex> qs) {
  check_pair_lists(ps, qs);
  for (std::size_t k = 0; k < ps.size(); ++k) {
    if (!(ps[k].real() > 0.0) || !(qs[k].real() > 0.0)) {
      throw Error(ErrorCode::kDomain, "shifted-disk constant needs Re p_k, Re q_k > 0");
    }
  }
  return std::sqrt(0.25 * sup_shifted_quantity(ps, qs));
}

double shifted_disk_constant_from_moduli(std::span<const Complex> ps,
                                         std::span<const Complex> qs, double theta) {
  check_pair_lists(ps, qs);
  const Sector sector(theta);  // validates [0, pi/2)
  for (std::size_t k = 0; k < ps.size(); ++k) {
    if (!sector.contains(ps[k]) || !sector.contains(qs[k])) {
      throw Error(ErrorCode::kDomain, "pair elements must lie in S_theta");
    }
  }
  const double c = std::cos(theta);
  return std::sqrt(0.25 * sup_modulus_ratio(ps, qs) / (c * c));
}

RegionCertificate certify_even_convergents(const ElementSequence& seq, const ExtendedComplex& w,
                                           const ValueRegion& region,
                                           const CertifyOptions& options) {
  if (seq.count() < 2) invalid_request("need at least two elements to form an even convergent");
  const PairedElements pairs = paired_elements(seq, Target::kEvenConvergents);
  const Admissibility adm = validate_request(seq, pairs, w, region, options);

  CertificateBuilder builder(theorem_of(region), Target::kEvenConvergents, region, adm, options);
  ConvergentState state = ConvergentState::start();
  for (std::size_t n = 1; n <= seq.count(); ++n) {
    state = wallis_euler_step(state, seq.at(n));
    if (n % 2 == 0) builder.check(n, convergent_at(state, w));
  }
  return builder.finish();
}

RegionCertificate certify_odd_reverse(const ElementSequence& seq, const ExtendedComplex& w,
                                      const ValueRegion& region, const CertifyOptions& options) {
  if (seq.count() < 2) invalid_request("need at least two elements to form an odd reverse value");
  const PairedElements pairs = paired_elements(seq, Target::kOddReverse);
  const Admissibility adm = validate_request(seq, pairs, w, region, options);

  CertificateBuilder builder(theorem_of(region), Target::kOddReverse, region, adm, options);
  ExtendedComplex r = w.normalized();
  for (std::size_t k = 1; k <= seq.count(); ++k) {
    r = s_map(seq.at(k)).apply(r);  // r is now r_{k+1}
    if (k % 2 == 0) builder.check(k + 1, r);
  }
  return builder.finish();
}

RegionCertificate certify_even_tails(const ElementSequence& seq, std::size_t pairs,
                                     const ExtendedComplex& seed, const ValueRegion& region,
                                     const CertifyOptions& options) {
  if (pairs < 1) invalid_request("tail certificates need N >= 1");
  if (2 * pairs > seq.count()) {
    invalid_request("2N = " + std::to_string(2 * pairs) + " exceeds sequence count " +
                    std::to_string(seq.count()));
  }
  const PairedElements paired = paired_prefix(seq, Target::kEvenTails, pairs);
  const Admissibility adm = validate_request(seq, paired, seed, region, options);

  CertificateBuilder builder(theorem_of(region), Target::kEvenTails, region, adm, options);
  // tails[i] = t_{2N - i}
  const std::vector<ExtendedComplex> tails = tail_sequence(seq, 2 * pairs, seed);
  for (std::size_t i = 2; i < tails.size(); i += 2) builder.check(2 * pairs - i, tails[i]);
  return builder.finish();
}

LowerBoundCheck lemma_two_step_lower_bound(Complex p, Complex q, Complex z, double theta,
                                           double radius, double slack) {
  if (!(theta >= 0.0 && theta < kQuarterPi)) throw Error(ErrorCode::kDomain, "need 0 <= theta < pi/4");
  if (p == Complex(0.0) || q == Complex(0.0)) throw Error(ErrorCode::kDomain, "p and q must be nonzero");
  const Sector sector(theta);
  if (!sector.contains(p) || !sector.contains(q) || !sector.contains(z)) {
    throw Error(ErrorCode::kDomain, "p, q and z must lie in S_theta");
  }
  if (!(radius > 0.0) || std::abs(z) > radius * (1.0 + slack)) {
    throw Error(ErrorCode::kDomain, "need |z| <= C");
  }
  const double lhs = 1.0 / std::abs(q + 1.0 / (p + z));
  const Complex bound = std::polar(std::abs(q), theta) + std::polar(1.0 / (std::abs(p) + radius), -theta);
  const double rhs = 1.0 / std::abs(bound);
  return {lhs, rhs, lhs <= rhs * (1.0 + slack)};
}

StepCheck lemma_origin_disk_step(Complex p, Complex q, Complex z, double theta, double radius,
                                 double slack) {
  if (!(theta >= 0.0 && theta < kQuarterPi)) throw Error(ErrorCode::kDomain, "need 0 <= theta < pi/4");
  if (p == Complex(0.0) || q == Complex(0.0)) throw Error(ErrorCode::kDomain, "p and q must be nonzero");
  const Sector sector(theta);
  if (!sector.contains(p) || !sector.contains(q) || !sector.contains(z)) {
    throw Error(ErrorCode::kDomain, "p, q and z must lie in S_theta");
  }
  if (!(radius > 0.0) || std::abs(z) > radius * (1.0 + slack)) {
    throw Error(ErrorCode::kDomain, "need |z| <= C");
  }
  const double threshold = std::abs(p) / (std::abs(q) * std::cos(2.0 * theta));
  if (radius * radius < threshold * (1.0 - kThresholdRounding)) {
    invalid_request("C^2 is below |p| / (|q| cos 2 theta)");
  }
  const double value = std::abs(two_step(p, q, z));
  return {value, value <= radius * (1.0 + slack)};
}

StepCheck lemma_shifted_disk_step(Complex p, Complex q, Complex z, double radius, double slack) {
  if (!(p.real() > 0.0) || !(q.real() > 0.0)) throw Error(ErrorCode::kDomain, "need Re p, Re q > 0");
  if (!(radius > 0.0)) throw Error(ErrorCode::kDomain, "C must be positive");
  if (std::abs(z - Complex(radius)) > radius * (1.0 + slack)) {
    throw Error(ErrorCode::kDomain, "need |z - C| <= C");
  }
  const double threshold = 0.25 / (q.real() * (1.0 / p).real());
  if (radius * radius < threshold * (1.0 - kThresholdRounding)) {
    invalid_request("C^2 is below 1 / (4 Re q Re(1/p))");
  }
  const double value = std::abs(two_step(p, q, z) - Complex(radius));
  return {value, value <= radius * (1.0 + slack)};
}

HalfplaneCheck halfplane_disk_equivalence(Complex w, double K) {
  if (!(K > 0.0) || !std::isfinite(K)) throw Error(ErrorCode::kDomain, "K must be positive");
  if (w == Complex(0.0)) return {true, true, true};
  const bool in_disk = std::abs(w - Complex(K)) <= K;
  // Re(1/w) = Re(w) / |w|^2
  const bool in_halfplane = w.real() / std::norm(w) >= 1.0 / (2.0 * K);
  return {in_disk, in_halfplane, false};
}

CounterexampleEval counterexample_eval(double t) {
  if (!(t > 0.0 && t <= 0.5)) throw Error(ErrorCode::kDomain, "t must lie in (0, 1/2]");
  const Complex p = std::polar(t, kQuarterPi);
  const Complex q = p;
  const Complex z = std::polar(1.0 / std::cbrt(t), kQuarterPi);

  CounterexampleEval out;
  out.t = t;
  out.lhs_squared = std::norm(q + 1.0 / (p + z));
  const double t23 = std::cbrt(t) * std::cbrt(t);
  const double t43 = t23 * t23;
  out.lhs_squared_closed = t * t + t23 / ((t43 + 1.0) * (t43 + 1.0));
  out.threshold = t23;
  out.violates = out.lhs_squared < out.threshold;
  return out;
}

}  // namespace cfrac
