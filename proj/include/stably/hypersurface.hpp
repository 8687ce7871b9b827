#ifndef STABLY_HYPERSURFACE_HPP
#define STABLY_HYPERSURFACE_HPP

#include <string>

#include "stably/certificate.hpp"

namespace stably {

/// The four isomorphism classes V_{a,b}: x^[2]y + z^2 + a*x^[1] - b = 0 with
/// a = [q(c) != 0] and b = [c != 0].
struct IsoClass {
  bool xi_coeff_nonzero = false;
  bool level_nonzero = false;

  std::string name() const;
  /// The reference hypersurface of this class in dimension n.
  PqSpec reference(int n) const;

  friend bool operator==(const IsoClass&, const IsoClass&) = default;
};

/// phi_c and its inverse psi_c modulo the relations:
///   phi_c(y) = (1 + x^[1]g(z^2)) y + q(c) g(z^2)
///   psi_c(y) = (1 - x^[1]g(z^2)) y - q(z^2) g(z^2)
/// with q(t) - q(c) = g(t)(t - c); both fix x and z.
struct FiberIsoPair {
  RingEndomorphism phi;
  RingEndomorphism psi;
  UnivariatePoly g;
};

FiberIsoPair fiber_isomorphism(const PqSpec& spec);

/// Checks the factorization phi_c(P_q - c) = (1 + x^[1]g(z^2))(P_{q(c)} - c)
/// exactly, its mirror for psi_c, and that psi_c o phi_c and phi_c o psi_c fix
/// every generator modulo the respective relations.
Certificate verify_fiber_isomorphism(const PqSpec& spec, const FiberIsoPair& pair, const CheckOptions& opts = {});
Certificate verify_fiber_isomorphism(const PqSpec& spec, const CheckOptions& opts = {});

IsoClass classify(const PqSpec& spec);
/// Only decides isomorphism within the P_q - c family.
bool isomorphic(const PqSpec& a, const PqSpec& b);

}  // namespace stably

#endif  // STABLY_HYPERSURFACE_HPP
