#include "cfrac/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "cfrac/error.hpp"

namespace cfrac {

ElementSequence::ElementSequence(SequenceKind kind, std::vector<Complex> elements,
                                 std::optional<Sector> declared_sector,
                                 std::optional<RatioBounds> closed_form,
                                 std::optional<bool> summable)
    : kind_(kind),
      elements_(std::move(elements)),
      declared_sector_(std::move(declared_sector)),
      closed_form_(closed_form),
      summable_(summable) {
  if (elements_.empty()) {
    throw Error(ErrorCode::kDomain, "element sequence must have count >= 1");
  }
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const Complex b = elements_[i];
    if (b == Complex(0.0)) {
      throw Error(ErrorCode::kInvalidElement, "element b_" + std::to_string(i + 1) + " is zero");
    }
    if (!std::isfinite(b.real()) || !std::isfinite(b.imag())) {
      throw Error(ErrorCode::kInvalidElement, "element b_" + std::to_string(i + 1) + " is not finite");
    }
    if (declared_sector_ && !declared_sector_->contains(b)) {
      throw Error(ErrorCode::kDomain, "element b_" + std::to_string(i + 1) +
                                          " lies outside the declared sector");
    }
  }
}

ElementSequence ElementSequence::list(std::vector<Complex> elements,
                                      std::optional<Sector> declared_sector) {
  return {SequenceKind::kList, std::move(elements), std::move(declared_sector), std::nullopt,
          std::nullopt};
}

ElementSequence ElementSequence::geometric(Complex b0, Complex ratio, std::size_t count,
                                           std::optional<Sector> declared_sector) {
  if (ratio == Complex(0.0)) throw Error(ErrorCode::kInvalidElement, "geometric ratio must be nonzero");
  std::vector<Complex> elements;
  elements.reserve(count);
  Complex b = b0;
  for (std::size_t n = 1; n <= count; ++n) {
    b *= ratio;
    elements.push_back(b);
  }
  const double r = std::abs(ratio);
  return {SequenceKind::kGeometric, std::move(elements), std::move(declared_sector),
          RatioBounds{r, 1.0 / r}, r < 1.0};
}

ElementSequence ElementSequence::constant(Complex b, std::size_t count,
                                          std::optional<Sector> declared_sector) {
  return {SequenceKind::kConstant, std::vector<Complex>(count, b), std::move(declared_sector),
          RatioBounds{1.0, 1.0}, false};
}

ElementSequence ElementSequence::generated(const std::function<Complex(std::size_t)>& element,
                                           std::size_t count,
                                           std::optional<Sector> declared_sector,
                                           std::optional<RatioBounds> closed_form,
                                           std::optional<bool> summable) {
  std::vector<Complex> elements;
  elements.reserve(count);
  for (std::size_t n = 1; n <= count; ++n) elements.push_back(element(n));
  return {SequenceKind::kCustom, std::move(elements), std::move(declared_sector), closed_form,
          summable};
}

Complex ElementSequence::at(std::size_t n) const {
  if (n < 1 || n > elements_.size()) {
    throw Error(ErrorCode::kOutOfRange, "element index " + std::to_string(n) + " outside [1, " +
                                            std::to_string(elements_.size()) + "]");
  }
  return elements_[n - 1];
}

ElementSequence ElementSequence::scaled(Complex factor) const {
  std::vector<Complex> elements(elements_);
  for (auto& b : elements) b *= factor;
  // A rotation can push elements out of the declared sector, and the
  // summability flag survives any nonzero scaling.
  return {kind_, std::move(elements), std::nullopt, closed_form_, summable_};
}

RatioBounds prefix_ratio_bounds(const ElementSequence& seq) {
  RatioBounds bounds{0.0, 0.0};
  const auto b = seq.elements();
  for (std::size_t k = 0; k + 1 < b.size(); k += 2) {
    bounds.even_over_odd = std::max(bounds.even_over_odd, std::abs(b[k + 1] / b[k]));
    bounds.odd_over_even = std::max(bounds.odd_over_even, std::abs(b[k] / b[k + 1]));
  }
  return bounds;
}

double max_element_angle(const ElementSequence& seq) {
  double theta = 0.0;
  for (Complex b : seq.elements()) theta = std::max(theta, sector_angle(b));
  return theta;
}

}  // namespace cfrac
