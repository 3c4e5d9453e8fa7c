#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cfrac/projective.hpp"

namespace cfrac {

enum class SequenceKind { kList, kGeometric, kConstant, kCustom };

/// Closed-form suprema of consecutive-element ratios over the whole
/// (conceptually infinite) family:
///   even_over_odd = sup_n |b_{2n} / b_{2n-1}|
///   odd_over_even = sup_n |b_{2n-1} / b_{2n}|
/// Only generator families know these; they are never estimated.
struct RatioBounds {
  double even_over_odd;
  double odd_over_even;
};

/// Nonzero elements b_1, ..., b_count of K(1/b_n), materialized at
/// construction. Elements are 1-indexed through at().
class ElementSequence {
 public:
  static ElementSequence list(std::vector<Complex> elements,
                              std::optional<Sector> declared_sector = std::nullopt);
  /// b_n = b0 * ratio^n for n = 1..count.
  static ElementSequence geometric(Complex b0, Complex ratio, std::size_t count,
                                   std::optional<Sector> declared_sector = std::nullopt);
  static ElementSequence constant(Complex b, std::size_t count,
                                  std::optional<Sector> declared_sector = std::nullopt);
  /// element(n) is called for n = 1..count.
  static ElementSequence generated(const std::function<Complex(std::size_t)>& element,
                                   std::size_t count,
                                   std::optional<Sector> declared_sector = std::nullopt,
                                   std::optional<RatioBounds> closed_form = std::nullopt,
                                   std::optional<bool> summable = std::nullopt);

  SequenceKind kind() const { return kind_; }
  std::size_t count() const { return elements_.size(); }
  std::span<const Complex> elements() const { return elements_; }

  /// b_n, 1 <= n <= count(); throws Error(kOutOfRange) otherwise.
  Complex at(std::size_t n) const;

  const std::optional<Sector>& declared_sector() const { return declared_sector_; }
  const std::optional<RatioBounds>& closed_form_bounds() const { return closed_form_; }
  /// Whether sum |b_n| < infinity is known for the family (nullopt: unknown).
  std::optional<bool> summable() const { return summable_; }

  /// The elements scaled by a common factor: b_n -> factor * b_n.
  ElementSequence scaled(Complex factor) const;

 private:
  ElementSequence(SequenceKind kind, std::vector<Complex> elements,
                  std::optional<Sector> declared_sector, std::optional<RatioBounds> closed_form,
                  std::optional<bool> summable);

  SequenceKind kind_;
  std::vector<Complex> elements_;
  std::optional<Sector> declared_sector_;
  std::optional<RatioBounds> closed_form_;
  std::optional<bool> summable_;
};

/// sup over the materialized prefix of |b_{2k} / b_{2k-1}| and |b_{2k-1} / b_{2k}|.
RatioBounds prefix_ratio_bounds(const ElementSequence& seq);

/// Smallest theta with every element in S_theta.
double max_element_angle(const ElementSequence& seq);

}  // namespace cfrac
