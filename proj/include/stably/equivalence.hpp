#ifndef STABLY_EQUIVALENCE_HPP
#define STABLY_EQUIVALENCE_HPP

#include <string>
#include <variant>
#include <vector>

#include "stably/hypersurface.hpp"

namespace stably {

/// q2 = lambda * q1 and c1 = c2.
struct PolyEquivWitness {
  FieldElement lambda{1};
};

/// q2(t) = lambda * q1(mu t), c2 = c1 / mu, epsilon^2 = 1 / mu.
struct HyperEquivWitness {
  FieldElement lambda{1};
  FieldElement mu{1};
  FieldElement epsilon{1};
};

struct NotEquivalent {
  std::string reason;
};

/// The parameters exist over C but not in the field being searched.
struct NotDecidableInField {
  std::string relation;
};

using PolyEquivVerdict = std::variant<PolyEquivWitness, NotEquivalent>;
using HyperEquivVerdict = std::variant<HyperEquivWitness, NotEquivalent, NotDecidableInField>;

std::string verdict_name(const PolyEquivVerdict& v);
std::string verdict_name(const HyperEquivVerdict& v);
Json verdict_to_json(const HyperEquivVerdict& v);

PolyEquivVerdict decide_poly_equivalence(const UnivariatePoly& q1, const FieldElement& c1, const UnivariatePoly& q2,
                                         const FieldElement& c2);

/// x1 -> lambda x1, y -> y / lambda^2; maps P_{q1} to P_{lambda q1}.
RingEndomorphism build_poly_equiv_automorphism(const PolyEquivWitness& witness, int n, bool with_w = false);
RingEndomorphism poly_equiv_inverse(const PolyEquivWitness& witness, int n, bool with_w = false);

/// Searches lambda, mu, epsilon in Q, or in Q(sqrt(ambient_d)) when ambient_d
/// is not a square. Roots of mu^g = rho are tried only as rational roots and
/// chains of square roots.
HyperEquivVerdict decide_hypersurface_equivalence(const UnivariatePoly& q1, const FieldElement& c1,
                                                  const UnivariatePoly& q2, const FieldElement& c2,
                                                  const Rational& ambient_d = Rational(0));

/// The composite x1 -> lambda mu x1, y -> y / (mu lambda^2), z -> z / epsilon,
/// which satisfies Phi(P_{q1} - c1) = mu (P_{q2} - c2).
/// Throws InvalidWitness unless epsilon^2 = 1/mu with lambda, mu nonzero.
RingEndomorphism build_hyper_equiv_automorphism(const HyperEquivWitness& witness, int n);
RingEndomorphism hyper_equiv_inverse(const HyperEquivWitness& witness, int n);

/// Checks a hypersurface witness: the parameter relations, the image of
/// P_{q1} - c1 and both compositions with the inverse.
Certificate verify_hyper_equivalence(const PqSpec& h1, const PqSpec& h2, const HyperEquivWitness& witness,
                                     const CheckOptions& opts = {});

/// Phi, Psi on Q[x, y, z, w] with Phi(P_q) = P_{q(0)} and Psi(P_{q(0)}) = P_q.
struct StableEquivPair {
  RingEndomorphism phi;
  RingEndomorphism psi;
  UnivariatePoly q;
  UnivariatePoly r;  // q(t) - q(0) = 2t r(t)
  // Images of z and w as polynomials in x, z, w and T, with T in the y slot:
  // phi(v) = phi_lift(v) at T = P_{q(0)}, psi(v) = psi_lift(v) at T = P_q.
  Polynomial phi_lift_z, phi_lift_w;
  Polynomial psi_lift_z, psi_lift_w;
};

StableEquivPair build_stable_equivalence(const UnivariatePoly& q, int n);
/// Negative control: flips the sign of the r(T)^2 z term in Phi(w).
StableEquivPair corrupt_phi_w_sign(StableEquivPair pair);

/// (a) Phi(P_q) = P_{q(0)}, (b) Psi(P_{q(0)}) = P_q, (c) Phi o Psi and Psi o Phi
/// fix every generator, all exactly in Q[x, y, z, w].
Certificate verify_stable_equivalence(const StableEquivPair& pair, int n, const CheckOptions& opts = {});

/// Total-degree bounds for Phi(y) and Psi(y) read off the construction: with
/// D = deg of the relation polynomial the lift is evaluated at and
/// d_z = max(n + (k - 1) D + 1, 2n + 1) the degree of the z image,
/// deg Phi(y) <= 2k d_z - n and deg Psi(y) <= 2 d_z - 2n (k = deg q >= 1).
struct StableDegreeBounds {
  long phi_y = 1;
  long psi_y = 1;
};
StableDegreeBounds stable_degree_bounds(const UnivariatePoly& q, int n);

/// Both assertions of the main theorem for this n.
Certificate theorem_certificate(int n, int k_max, const std::vector<FieldElement>& c_samples,
                                const CheckOptions& opts = {});
std::vector<FieldElement> default_c_samples();

/// Decision plus verified witness, for a pair of hypersurfaces.
Certificate equivalence_certificate(const PqSpec& h1, const PqSpec& h2, const Rational& ambient_d = Rational(0),
                                    const CheckOptions& opts = {});

}  // namespace stably

#endif  // STABLY_EQUIVALENCE_HPP
