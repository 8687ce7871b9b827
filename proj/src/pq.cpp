#include "stably/pq.hpp"

namespace stably {

namespace {

FieldElement element_from_json(const Json& j, const char* field) {
  if (j.is_string()) return FieldElement::parse(j.get<std::string>());
  if (j.is_number_integer()) return FieldElement(j.get<long>());
  throw Error(ErrorCode::InvalidArgument, std::string("'") + field + "' must be an integer or rational text");
}

}  // namespace

PqSpec::PqSpec(int n_, UnivariatePoly q_, FieldElement c_) : n(n_), q(std::move(q_)), c(std::move(c_)) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "PqSpec needs n >= 1");
}

Polynomial PqSpec::relation(bool with_w) const {
  const RingSignature sig = signature(with_w);
  return build_Pq(sig, q) - Polynomial::constant(sig, c);
}

Json PqSpec::to_json() const {
  Json coeffs = Json::array();
  for (const auto& a : q.coefficients()) coeffs.push_back(a.str());
  return Json{{"n", n}, {"q", coeffs}, {"c", c.str()}};
}

PqSpec PqSpec::from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("q") || !j.contains("c")) {
    throw Error(ErrorCode::InvalidArgument, "PqSpec JSON needs \"n\", \"q\" and \"c\"");
  }
  if (!j["n"].is_number_integer()) throw Error(ErrorCode::InvalidArgument, "'n' must be an integer");
  if (!j["q"].is_array()) throw Error(ErrorCode::InvalidArgument, "'q' must be an array of coefficients");
  std::vector<FieldElement> coeffs;
  for (const auto& a : j["q"]) coeffs.push_back(element_from_json(a, "q"));
  return PqSpec(j["n"].get<int>(), UnivariatePoly(std::move(coeffs)), element_from_json(j["c"], "c"));
}

std::string PqSpec::str() const {
  return "n=" + std::to_string(n) + ", q(t)=" + q.str() + ", c=" + c.str();
}

Polynomial build_Pq(const RingSignature& sig, const UnivariatePoly& q) {
  const Polynomial z2 = Polynomial::variable(sig, sig.z()).pow(2);
  return x_power_bracket(sig, 2) * Polynomial::variable(sig, sig.y()) + z2 +
         x_power_bracket(sig, 1) * q.compose(z2);
}

}  // namespace stably
