#pragma once

// Value regions for even convergents, odd reverse sequences and even tails
// of Stieltjes-type fractions K(1/b_n):
//
//  * origin disks |z| <= C for elements in S_theta with theta < pi/4, where
//      C^2 >= sup_k |p_k / q_k| / cos(2 theta);
//  * shifted disks |z - C| <= C for elements with positive real part, where
//      C^2 >= (1/4) sup_k 1 / (Re q_k * Re(1/p_k)).
//
// The two-step map is z -> 1 / (q + 1 / (p + z)). Even convergents pair
// q_k = b_{2k-1}, p_k = b_{2k}; odd reverse values pair q_k = b_{2k},
// p_k = b_{2k-1}.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "cfrac/projective.hpp"
#include "cfrac/sequence.hpp"

namespace cfrac {

inline constexpr double kDefaultSlack = 1e-9;

struct OriginDisk {
  double radius;
  /// |z| <= C (1 + slack); infinity is never a member.
  bool contains(const ExtendedComplex& z, double slack = kDefaultSlack) const;
  /// |z| / C - 1; +inf for the point at infinity.
  double margin(const ExtendedComplex& z) const;
};

struct ShiftedDisk {
  double radius;
  Complex center() const { return {radius, 0.0}; }
  /// |z - C| <= C (1 + slack).
  bool contains(const ExtendedComplex& z, double slack = kDefaultSlack) const;
  /// |z - C| / C - 1; +inf for the point at infinity.
  double margin(const ExtendedComplex& z) const;
};

using ValueRegion = std::variant<OriginDisk, ShiftedDisk>;

enum class Theorem { kOriginDisk, kShiftedDisk };
enum class Target { kEvenConvergents, kOddReverse, kEvenTails };

std::string_view to_string(Theorem theorem) noexcept;
std::string_view to_string(Target target) noexcept;

struct RegionCertificate {
  Theorem theorem;
  Target target;
  double radius;
  double sup_quantity;       // sup |p/q| (origin) or sup 1/(Re q Re 1/p) (shifted)
  bool passed;
  std::size_t worst_index;   // sequence index of the worst value
  ExtendedComplex worst_value;
  double worst_margin;       // largest normalized excess over the disk
  std::size_t checked;       // number of values examined
  std::size_t sector_violations;
  double slack_used;
};

struct PairedElements {
  std::vector<Complex> ps;
  std::vector<Complex> qs;
};

/// (q_k, p_k) pairs for a target, k = 1..floor(count/2).
PairedElements paired_elements(const ElementSequence& seq, Target target);

/// sqrt(max_k |p_k / q_k| / cos 2 theta).
/// Throws kSectorTooWide for theta >= pi/4 and kDomain for empty or
/// mismatched lists, zero elements, or elements outside S_theta.
double origin_disk_constant(std::span<const Complex> ps, std::span<const Complex> qs,
                            double theta);

/// sqrt((1/4) max_k 1 / (Re q_k * Re(1/p_k))). Throws kDomain when some
/// element has Re <= 0.
double shifted_disk_constant(std::span<const Complex> ps, std::span<const Complex> qs);

/// Van Vleck form of the shifted constant for elements in S_theta,
/// theta < pi/2: sqrt((1/4) max_k |p_k / q_k| / cos^2 theta). Never smaller
/// than shifted_disk_constant for the same data.
double shifted_disk_constant_from_moduli(std::span<const Complex> ps,
                                         std::span<const Complex> qs, double theta);

struct CertifyOptions {
  /// Sector half-angle. Required for origin disks; for shifted disks it
  /// additionally checks sector membership of every value.
  std::optional<double> theta;
  double slack = kDefaultSlack;
};

/// Checks f_{2n}(w) for every even 2n <= count.
/// Precondition failures throw kInvalidCertificateRequest (or
/// kSectorTooWide); a value escaping the region yields passed == false.
RegionCertificate certify_even_convergents(const ElementSequence& seq, const ExtendedComplex& w,
                                           const ValueRegion& region,
                                           const CertifyOptions& options = {});

/// Checks r_{2n+1}(w) for every 2n <= count.
RegionCertificate certify_odd_reverse(const ElementSequence& seq, const ExtendedComplex& w,
                                      const ValueRegion& region,
                                      const CertifyOptions& options = {});

/// Runs the backward recursion from t_{2N} = seed and checks t_{2n} for n < N.
RegionCertificate certify_even_tails(const ElementSequence& seq, std::size_t pairs,
                                     const ExtendedComplex& seed, const ValueRegion& region,
                                     const CertifyOptions& options = {});

// Two-step inequalities, evaluated numerically.

struct LowerBoundCheck {
  double lhs;
  double rhs;
  bool holds;
};

/// 1/|q + 1/(p+z)| <= 1 / | |q| e^{i theta} + e^{-i theta} / (|p| + C) |
/// for p, q, z in S_theta, theta < pi/4, |z| <= C.
LowerBoundCheck lemma_two_step_lower_bound(Complex p, Complex q, Complex z, double theta,
                                           double radius, double slack = kDefaultSlack);

struct StepCheck {
  double value;
  bool holds;
};

/// value = |1/(q + 1/(p+z))| against C when C^2 >= |p| / (|q| cos 2 theta).
StepCheck lemma_origin_disk_step(Complex p, Complex q, Complex z, double theta, double radius,
                                 double slack = kDefaultSlack);

/// value = |1/(q + 1/(p+z)) - C| against C when C^2 >= 1/(4 Re q Re(1/p)),
/// Re p, Re q > 0 and |z - C| <= C.
StepCheck lemma_shifted_disk_step(Complex p, Complex q, Complex z, double radius,
                                  double slack = kDefaultSlack);

struct HalfplaneCheck {
  bool in_disk;
  bool in_halfplane;
  bool degenerate;  // w == 0: both predicates defined true
};

/// |w - K| <= K  versus  Re(1/w) >= 1/(2K).
HalfplaneCheck halfplane_disk_equivalence(Complex w, double K);

struct CounterexampleEval {
  double t;
  double lhs_squared;         // direct complex arithmetic
  double lhs_squared_closed;  // t^2 + t^{2/3} / (t^{4/3} + 1)^2
  double threshold;           // t^{2/3} = 1/|z|^2
  bool violates;              // lhs_squared < threshold
};

/// p = q = t e^{i pi/4}, z = t^{-1/3} e^{i pi/4} on the pi/4 ray, 0 < t <= 1/2.
/// The two-step map sends z outside the disk of radius |z|, so no origin
/// disk works at theta = pi/4.
CounterexampleEval counterexample_eval(double t);

// Randomized theorem sweeps.

struct SweepConfig {
  Theorem theorem = Theorem::kOriginDisk;
  std::size_t samples = 10000;
  std::uint64_t seed = 42;
  double theta_max = 0.0;  // must be < pi/4 (origin) or < pi/2 (shifted)
  std::size_t max_pairs = 10;
  double slack = kDefaultSlack;
};

struct SweepReport {
  std::size_t samples;
  std::size_t violations;         // samples with any disk or sector violation
  std::size_t disk_violations;
  std::size_t sector_violations;
  double worst_margin;            // max over samples of the normalized disk excess
  std::size_t worst_sample;
  std::uint64_t seed;
};

/// Draws instances with elements rho e^{i phi}, rho log-uniform in
/// [1e-2, 1e2], phi uniform in [-theta, theta], theta uniform in
/// [0, theta_max], between 1 and max_pairs pairs, and z uniform in the
/// admissible region; evaluates the alternating fraction directly and
/// checks membership. Sample i draws from its own generator seeded by
/// (seed, i), so the result does not depend on evaluation order.
SweepReport run_theorem_sweep(const SweepConfig& config);

}  // namespace cfrac
