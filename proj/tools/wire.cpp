#include "wire.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cfrac/error.hpp"

namespace cfrac::wire {

namespace {

double number_field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number()) throw ParseError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

std::size_t count_field(const json& j) {
  if (!j.contains("count")) throw ParseError("missing field \"count\"");
  const json& v = j.at("count");
  if (!v.is_number_integer()) throw ParseError("field \"count\" must be an integer");
  const auto n = v.get<long long>();
  if (n < 1) throw Error(ErrorCode::kDomain, "sequence count must be >= 1");
  return static_cast<std::size_t>(n);
}

const json& object_field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

json to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const ExtendedComplex& z) {
  if (z.is_infinite()) return "inf";
  return to_json(z.value());
}

json to_json(const RegionCertificate& cert) {
  return json{{"theorem", std::string(to_string(cert.theorem))},
              {"target", std::string(to_string(cert.target))},
              {"C", cert.radius},
              {"sup_quantity", cert.sup_quantity},
              {"passed", cert.passed},
              {"checked", cert.checked},
              {"worst_index", cert.worst_index},
              {"worst_value", to_json(cert.worst_value)},
              {"worst_margin", cert.worst_margin},
              {"sector_violations", cert.sector_violations},
              {"slack_used", cert.slack_used}};
}

Complex complex_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("complex numbers must be {\"re\": x, \"im\": y} objects");
  return {number_field(j, "re"), number_field(j, "im")};
}

ExtendedComplex extended_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return ExtendedComplex::infinity();
  return complex_from_json(j);
}

ElementSequence sequence_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("sequence spec must be a JSON object");
  const json& kind_field = object_field(j, "kind");
  if (!kind_field.is_string()) throw ParseError("field \"kind\" must be a string");
  const std::string kind = kind_field.get<std::string>();

  std::optional<Sector> sector;
  if (j.contains("sector_half_angle")) sector.emplace(number_field(j, "sector_half_angle"));

  if (kind == "list") {
    const json& elements = object_field(j, "elements");
    if (!elements.is_array()) throw ParseError("field \"elements\" must be an array");
    std::vector<Complex> bs;
    for (const json& e : elements) bs.push_back(complex_from_json(e));
    return ElementSequence::list(std::move(bs), sector);
  }
  if (kind == "geometric") {
    return ElementSequence::geometric(complex_from_json(object_field(j, "b0")),
                                      complex_from_json(object_field(j, "ratio")), count_field(j),
                                      sector);
  }
  if (kind == "constant") {
    return ElementSequence::constant(complex_from_json(object_field(j, "b")), count_field(j), sector);
  }
  throw ParseError("unknown sequence kind \"" + kind + "\"");
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read spec file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON in ") + path + ": " + e.what());
  }
}

}  // namespace cfrac::wire
