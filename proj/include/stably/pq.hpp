#ifndef STABLY_PQ_HPP
#define STABLY_PQ_HPP

#include <string>

#include "json.hpp"

#include "stably/polynomial.hpp"

namespace stably {

using Json = nlohmann::ordered_json;

/// The level set V(P_q - c) of P_q = x^[2]y + z^2 + x^[1]q(z^2) in Q^{n+2}.
struct PqSpec {
  int n = 1;
  UnivariatePoly q;
  FieldElement c;

  PqSpec() = default;
  PqSpec(int n_, UnivariatePoly q_, FieldElement c_);

  RingSignature signature(bool with_w = false) const { return RingSignature(n, with_w); }
  /// q(c), the coefficient that survives after the fiber isomorphism.
  FieldElement q_at_c() const { return q(c); }
  /// P_q - c.
  Polynomial relation(bool with_w = false) const;

  /// {"n": int, "q": [coeff0, coeff1, ...], "c": "rational-text"}
  Json to_json() const;
  static PqSpec from_json(const Json& j);
  std::string str() const;
};

/// P_q = x^[2]y + z^2 + x^[1]q(z^2) in the given signature.
Polynomial build_Pq(const RingSignature& sig, const UnivariatePoly& q);
inline Polynomial build_Pq(const PqSpec& spec) { return build_Pq(spec.signature(), spec.q); }

inline Polynomial reduce_mod_relation(const Polynomial& p, const PqSpec& spec, std::size_t* steps = nullptr) {
  return reduce_mod_relation(p, spec.q, spec.c, steps);
}

}  // namespace stably

#endif  // STABLY_PQ_HPP
