#pragma once

// JSON wire formats: complex numbers as {"re": x, "im": y}, the point at
// infinity as the string "inf", and the sequence specification
//   {"kind": "list", "elements": [{re, im}, ...]}
//   {"kind": "geometric", "b0": {re, im}, "ratio": {re, im}, "count": n}
//   {"kind": "constant", "b": {re, im}, "count": n}
// each with an optional "sector_half_angle" in radians.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cfrac/projective.hpp"
#include "cfrac/sequence.hpp"
#include "cfrac/value_regions.hpp"

namespace cfrac::wire {

using nlohmann::json;

/// Structurally malformed input (bad JSON, missing or mistyped fields).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json to_json(Complex z);
json to_json(const ExtendedComplex& z);
json to_json(const RegionCertificate& cert);

Complex complex_from_json(const json& j);
ExtendedComplex extended_from_json(const json& j);

/// Throws ParseError for schema problems and cfrac::Error for domain
/// problems (zero elements, count < 1, elements outside the declared sector).
ElementSequence sequence_from_json(const json& j);

/// Reads and parses a spec file; unreadable files and invalid JSON are ParseErrors.
json load_json_file(const std::string& path);

}  // namespace cfrac::wire
