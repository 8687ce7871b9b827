#include "stably/equivalence.hpp"

#include <algorithm>
#include <numeric>

namespace stably {

namespace {

Polynomial one_of(const RingSignature& sig) { return Polynomial::constant(sig, FieldElement(1)); }

Polynomial var(const RingSignature& sig, std::size_t v) { return Polynomial::variable(sig, v); }

std::string field_text(const FieldElement& a) { return a.str(); }

std::string support_text(const std::vector<std::size_t>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

UnivariatePoly q_power(int k) { return UnivariatePoly{-1, 1}.pow(static_cast<unsigned>(k)); }

// All mu in the field with mu^g = rho, found through rational roots and square roots.
std::vector<FieldElement> field_roots(const FieldElement& rho, unsigned g, const Rational& ambient) {
  if (g == 1) return {rho};
  std::vector<FieldElement> out;
  if (g % 2 == 0) {
    const auto s = sqrt_in_field(rho, ambient);
    if (!s) return out;
    for (const FieldElement& branch : {*s, -*s}) {
      for (FieldElement& r : field_roots(branch, g / 2, ambient)) {
        if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(std::move(r));
      }
    }
    return out;
  }
  if (rho.is_rational()) {
    if (auto r = rho.rational_part().root(g)) out.emplace_back(*r);
  }
  return out;
}

struct Bezout {
  long g;
  std::vector<long> coeffs;
};

// g = gcd(m_i) = sum u_i m_i.
Bezout extended_gcd(const std::vector<long>& m) {
  Bezout b{m.at(0), std::vector<long>(m.size(), 0)};
  b.coeffs[0] = 1;
  for (std::size_t i = 1; i < m.size(); ++i) {
    long old_r = b.g, r = m[i];
    long old_s = 1, s = 0;
    long old_t = 0, t = 1;
    while (r != 0) {
      const long quotient = old_r / r;
      old_r = std::exchange(r, old_r - quotient * r);
      old_s = std::exchange(s, old_s - quotient * s);
      old_t = std::exchange(t, old_t - quotient * t);
    }
    for (std::size_t j = 0; j < i; ++j) b.coeffs[j] *= old_s;
    b.coeffs[i] = old_t;
    b.g = old_r;
  }
  return b;
}

// Random-point check that outer(inner(v)) = v for every generator: the point
// is pushed through outer's point map, then inner's.
void sample_round_trip(Check& check, const CheckOptions& opts, const RingEndomorphism& outer,
                       const RingEndomorphism& inner, bool modular) {
  const RingSignature& sig = outer.signature();
  sample_check(check, opts, [&](Sampler& s) -> std::optional<std::string> {
    const auto pt = s.point(sig);
    if (modular) {
      const auto p = reduce_mod_prime(pt);
      const auto back = map_point_mod_prime(inner, map_point_mod_prime(outer, p));
      for (std::size_t v = 0; v < sig.num_vars(); ++v) {
        if (back[v] != p[v]) return "generator " + sig.var_name(v) + " moved";
      }
      return std::nullopt;
    }
    const auto back = inner.map_point(outer.map_point(pt));
    for (std::size_t v = 0; v < sig.num_vars(); ++v) {
      if (!(back[v] == pt[v])) return "generator " + sig.var_name(v) + " moved";
    }
    return std::nullopt;
  });
}

Check identity_on_generators(std::string name, std::string anchor, const RingEndomorphism& composite) {
  const RingSignature& sig = composite.signature();
  Check check{std::move(name), std::move(anchor)};
  check.symbolic_pass = true;
  for (std::size_t v = 0; v < sig.num_vars(); ++v) {
    const Polynomial diff = composite.image(v) - var(sig, v);
    if (!diff.is_zero()) {
      check.symbolic_pass = false;
      check.residual = sig.var_name(v) + ": " + residual_text(diff);
      break;
    }
  }
  return check;
}

}  // namespace

// ------------------------------------------------------------- verdicts

std::string verdict_name(const PolyEquivVerdict& v) {
  return std::holds_alternative<PolyEquivWitness>(v) ? "Equivalent" : "NotEquivalent";
}

std::string verdict_name(const HyperEquivVerdict& v) {
  if (std::holds_alternative<HyperEquivWitness>(v)) return "Equivalent";
  if (std::holds_alternative<NotEquivalent>(v)) return "NotEquivalent";
  return "NotDecidableInField";
}

Json verdict_to_json(const HyperEquivVerdict& v) {
  Json j{{"verdict", verdict_name(v)}};
  if (const auto* w = std::get_if<HyperEquivWitness>(&v)) {
    j["lambda"] = w->lambda.str();
    j["mu"] = w->mu.str();
    j["epsilon"] = w->epsilon.str();
  } else if (const auto* ne = std::get_if<NotEquivalent>(&v)) {
    j["reason"] = ne->reason;
  } else {
    j["relation"] = std::get<NotDecidableInField>(v).relation;
  }
  return j;
}

// ------------------------------------------------- polynomial equivalence

PolyEquivVerdict decide_poly_equivalence(const UnivariatePoly& q1, const FieldElement& c1, const UnivariatePoly& q2,
                                         const FieldElement& c2) {
  if (!(c1 == c2)) return NotEquivalent{"levels differ: " + field_text(c1) + " != " + field_text(c2)};
  if (q1.is_zero() || q2.is_zero()) {
    if (q1.is_zero() && q2.is_zero()) return PolyEquivWitness{FieldElement(1)};
    return NotEquivalent{"exactly one of q1, q2 is zero"};
  }
  if (q1.degree() != q2.degree()) {
    return NotEquivalent{"deg q1 = " + std::to_string(q1.degree()) + " != deg q2 = " + std::to_string(q2.degree())};
  }
  const std::size_t top = static_cast<std::size_t>(q1.degree());
  const FieldElement lambda = q2.coeff(top) / q1.coeff(top);
  if (!(lambda * q1 == q2)) return NotEquivalent{"q2 is not a constant multiple of q1"};
  return PolyEquivWitness{lambda};
}

RingEndomorphism build_poly_equiv_automorphism(const PolyEquivWitness& witness, int n, bool with_w) {
  if (witness.lambda.is_zero()) throw Error(ErrorCode::InvalidWitness, "lambda must be nonzero");
  const RingSignature sig(n, with_w);
  RingEndomorphism phi(sig);
  phi.set_image(sig.x(1), witness.lambda * var(sig, sig.x(1)));
  phi.set_image(sig.y(), witness.lambda.pow(-2) * var(sig, sig.y()));
  return phi;
}

RingEndomorphism poly_equiv_inverse(const PolyEquivWitness& witness, int n, bool with_w) {
  if (witness.lambda.is_zero()) throw Error(ErrorCode::InvalidWitness, "lambda must be nonzero");
  return build_poly_equiv_automorphism(PolyEquivWitness{witness.lambda.inverse()}, n, with_w);
}

// ------------------------------------------------ hypersurface equivalence

HyperEquivVerdict decide_hypersurface_equivalence(const UnivariatePoly& q1, const FieldElement& c1,
                                                  const UnivariatePoly& q2, const FieldElement& c2,
                                                  const Rational& ambient_d) {
  if (c1.is_zero() != c2.is_zero()) return NotEquivalent{"exactly one of c1, c2 is zero"};
  const bool levels_zero = c1.is_zero();

  std::vector<FieldElement> candidates;
  bool forced = !levels_zero;
  std::string relation;

  if (q1.is_zero() || q2.is_zero()) {
    if (!(q1.is_zero() && q2.is_zero())) return NotEquivalent{"exactly one of q1, q2 is zero"};
    candidates.push_back(levels_zero ? FieldElement(1) : c1 / c2);
  } else {
    const auto s1 = q1.support();
    const auto s2 = q2.support();
    if (s1 != s2) return NotEquivalent{"supports differ: " + support_text(s1) + " vs " + support_text(s2)};
    if (!levels_zero) {
      candidates.push_back(c1 / c2);
    } else if (s1.size() == 1) {
      // mu is free; lambda absorbs it.
      candidates.push_back(FieldElement(1));
    } else {
      // mu^{m_i} = rho_i with m_i = s_i - s_0.
      std::vector<long> gaps;
      std::vector<FieldElement> ratios;
      const std::size_t j = s1.front();
      for (std::size_t i = 1; i < s1.size(); ++i) {
        const std::size_t k = s1[i];
        gaps.push_back(static_cast<long>(k - j));
        ratios.push_back((q2.coeff(k) * q1.coeff(j)) / (q1.coeff(k) * q2.coeff(j)));
      }
      const Bezout b = extended_gcd(gaps);
      FieldElement rho(1);
      for (std::size_t i = 0; i < gaps.size(); ++i) rho *= ratios[i].pow(b.coeffs[i]);
      for (std::size_t i = 0; i < gaps.size(); ++i) {
        if (!(rho.pow(gaps[i] / b.g) == ratios[i])) {
          return NotEquivalent{"mu^" + std::to_string(gaps[i]) + " = " + ratios[i].str() + " contradicts mu^" +
                               std::to_string(b.g) + " = " + rho.str()};
        }
      }
      relation = "mu^" + std::to_string(b.g) + " = " + rho.str();
      candidates = field_roots(rho, static_cast<unsigned>(b.g), ambient_d);
      if (candidates.empty()) return NotDecidableInField{relation};
    }
  }

  std::optional<FieldElement> missing_epsilon;
  for (const FieldElement& mu : candidates) {
    FieldElement lambda(1);
    if (!q1.is_zero()) {
      const std::size_t top = static_cast<std::size_t>(q1.degree());
      lambda = q2.coeff(top) / (q1.coeff(top) * mu.pow(static_cast<long>(top)));
      if (!(lambda * q1.scale_argument(mu) == q2)) continue;
    }
    std::optional<FieldElement> epsilon;
    try {
      epsilon = sqrt_in_field(mu.inverse(), ambient_d);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::MixedDiscriminant) throw;
    }
    if (epsilon) return HyperEquivWitness{lambda, mu, *epsilon};
    if (!missing_epsilon) missing_epsilon = mu;
  }
  if (missing_epsilon) return NotDecidableInField{"epsilon^2 = 1/mu = " + missing_epsilon->inverse().str()};
  if (forced) return NotEquivalent{"q2(t) != lambda q1(mu t) for the forced mu = c1/c2 = " + (c1 / c2).str()};
  return NotEquivalent{"no root of " + relation + " gives q2(t) = lambda q1(mu t)"};
}

RingEndomorphism build_hyper_equiv_automorphism(const HyperEquivWitness& w, int n) {
  if (w.lambda.is_zero() || w.mu.is_zero()) throw Error(ErrorCode::InvalidWitness, "lambda and mu must be nonzero");
  if (!(w.epsilon * w.epsilon == w.mu.inverse())) {
    throw Error(ErrorCode::InvalidWitness, "epsilon^2 = " + (w.epsilon * w.epsilon).str() + " but 1/mu = " +
                                               w.mu.inverse().str());
  }
  const RingSignature sig(n, false);
  RingEndomorphism phi(sig);
  phi.set_image(sig.x(1), (w.lambda * w.mu) * var(sig, sig.x(1)));
  phi.set_image(sig.y(), (w.mu * w.lambda * w.lambda).inverse() * var(sig, sig.y()));
  phi.set_image(sig.z(), w.epsilon.inverse() * var(sig, sig.z()));
  return phi;
}

RingEndomorphism hyper_equiv_inverse(const HyperEquivWitness& w, int n) {
  const RingEndomorphism forward = build_hyper_equiv_automorphism(w, n);
  const RingSignature& sig = forward.signature();
  RingEndomorphism inv(sig);
  inv.set_image(sig.x(1), (w.lambda * w.mu).inverse() * var(sig, sig.x(1)));
  inv.set_image(sig.y(), (w.mu * w.lambda * w.lambda) * var(sig, sig.y()));
  inv.set_image(sig.z(), w.epsilon * var(sig, sig.z()));
  return inv;
}

Certificate verify_hyper_equivalence(const PqSpec& h1, const PqSpec& h2, const HyperEquivWitness& w,
                                     const CheckOptions& opts) {
  if (h1.n != h2.n) throw Error(ErrorCode::DimensionMismatch, "hypersurfaces live in different dimensions");
  Certificate cert("V(P_q1 - c1) and V(P_q2 - c2) are equivalent hypersurfaces",
                   Json{{"h1", h1.to_json()}, {"h2", h2.to_json()},
                        {"witness", {{"lambda", w.lambda.str()}, {"mu", w.mu.str()}, {"epsilon", w.epsilon.str()}}}});
  cert.add(fact("q2(t) = lambda q1(mu t)", "q2(t) = lambda q1(mu t)", w.lambda * h1.q.scale_argument(w.mu) == h2.q));
  cert.add(fact("c2 = c1 / mu", "c2 = mu^-1 c1", h2.c * w.mu == h1.c));
  cert.add(fact("epsilon^2 = 1 / mu", "epsilon^2 = mu^-1", w.epsilon * w.epsilon == w.mu.inverse()));
  const RingEndomorphism phi = build_hyper_equiv_automorphism(w, h1.n);
  const RingEndomorphism inv = hyper_equiv_inverse(w, h1.n);
  const Polynomial r1 = h1.relation();
  const Polynomial r2 = h2.relation();
  Check& image = cert.add(exact_identity("Phi(P_q1 - c1) = mu (P_q2 - c2)", "Phi(P_q1 - c1) = mu (P_q2 - c2)",
                                         phi.apply(r1), w.mu * r2));
  sample_check(image, opts, [&](Sampler& s) {
    return compare_pullback(phi, r1, [&](std::span<const FieldElement> p) { return w.mu * r2.evaluate(p); },
                            s.point(phi.signature()));
  });
  for (const auto& [name, outer, inner] :
       {std::tuple{"Phi o Phi^-1 = id", phi, inv}, std::tuple{"Phi^-1 o Phi = id", inv, phi}}) {
    Check c = identity_on_generators(name, std::string(name) + " on every generator", compose_endos(outer, inner));
    sample_round_trip(c, opts, outer, inner, false);
    cert.add(std::move(c));
  }
  return cert;
}

// ---------------------------------------------------- stable equivalence

namespace {

struct StableForms {
  Polynomial z, w;  // lifted images: y stands for T
};

// Lifted images of z and w with T in the y slot:
//   z -> (1 - s x^[1] r(T)) z + s x^[2] w
//   w -> (1 + s x^[1] r(T)) w - s r(T)^2 z
// s = +1 for Phi (T = P_{q(0)}), s = -1 for Psi (T = P_q).
StableForms lifted_forms(const RingSignature& sig, const UnivariatePoly& r, int s) {
  const Polynomial one = one_of(sig);
  const Polynomial rT = r.compose(var(sig, sig.y()));
  const Polynomial u = x_power_bracket(sig, 1);
  const Polynomial u2 = x_power_bracket(sig, 2);
  const FieldElement sign(s);
  const Polynomial z = var(sig, sig.z());
  const Polynomial w = var(sig, sig.w());
  return StableForms{(one - sign * (u * rT)) * z + sign * (u2 * w), (one + sign * (u * rT)) * w - sign * (rT * rT * z)};
}

Polynomial lift_at(const Polynomial& lifted, const Polynomial& t) {
  const RingSignature& sig = lifted.signature();
  std::vector<Polynomial> images;
  for (std::size_t v = 0; v < sig.num_vars(); ++v) images.push_back(v == sig.y() ? t : var(sig, v));
  return lifted.substitute(images);
}

// x^[2] y-image from x^[2] Y = target - Z^2 - x^[1] q(Z^2).
Polynomial solve_y(const Polynomial& target, const Polynomial& z_image, const UnivariatePoly& q, const char* what) {
  const RingSignature& sig = target.signature();
  const Polynomial z2 = z_image * z_image;
  const Polynomial numerator = target - z2 - x_power_bracket(sig, 1) * q.compose(z2);
  auto y = numerator.exact_divide(x_power_bracket(sig, 2));
  if (!y) throw Error(ErrorCode::NotDivisible, std::string(what) + ": x^[2] does not divide the y numerator");
  return *std::move(y);
}

}  // namespace

StableEquivPair build_stable_equivalence(const UnivariatePoly& q, int n) {
  const RingSignature sig(n, true);
  const UnivariatePoly q0 = UnivariatePoly::constant(q.coeff(0));
  const UnivariatePoly r = half_t_quotient(q);
  const Polynomial p0 = build_Pq(sig, q0);
  const Polynomial pq = build_Pq(sig, q);

  // P_q = P_{q(0)}: the identity already is a stable equivalence.
  if (q.is_constant()) {
    const Polynomial z = var(sig, sig.z()), w = var(sig, sig.w());
    return StableEquivPair{RingEndomorphism(sig), RingEndomorphism(sig), q, r, z, w, z, w};
  }

  const StableForms phi_forms = lifted_forms(sig, r, 1);
  const StableForms psi_forms = lifted_forms(sig, r, -1);

  RingEndomorphism phi(sig);
  phi.set_image(sig.z(), lift_at(phi_forms.z, p0));
  phi.set_image(sig.w(), lift_at(phi_forms.w, p0));
  phi.set_image(sig.y(), solve_y(p0, phi.image(sig.z()), q, "Phi(y)"));

  RingEndomorphism psi(sig);
  psi.set_image(sig.z(), lift_at(psi_forms.z, pq));
  psi.set_image(sig.w(), lift_at(psi_forms.w, pq));
  psi.set_image(sig.y(), solve_y(pq, psi.image(sig.z()), q0, "Psi(y)"));

  return StableEquivPair{std::move(phi), std::move(psi), q, r, phi_forms.z, phi_forms.w, psi_forms.z, psi_forms.w};
}

StableEquivPair corrupt_phi_w_sign(StableEquivPair pair) {
  const RingSignature& sig = pair.phi.signature();
  const Polynomial rT = pair.r.compose(var(sig, sig.y()));
  const Polynomial flip = FieldElement(2) * (rT * rT * var(sig, sig.z()));
  pair.phi_lift_w += flip;
  const Polynomial p0 = build_Pq(sig, UnivariatePoly::constant(pair.q.coeff(0)));
  pair.phi.set_image(sig.w(), lift_at(pair.phi_lift_w, p0));
  return pair;
}

StableDegreeBounds stable_degree_bounds(const UnivariatePoly& q, int n) {
  const long k = q.degree();
  if (k < 1) return {};
  const long deg_p0 = 2L * n + 1;
  const long deg_pq = std::max(deg_p0, n + 2 * k);
  const long dz_phi = std::max(n + (k - 1) * deg_p0 + 1, deg_p0);
  const long dz_psi = std::max(n + (k - 1) * deg_pq + 1, deg_p0);
  return {2 * k * dz_phi - n, 2 * dz_psi - 2L * n};
}

Certificate verify_stable_equivalence(const StableEquivPair& pair, int n, const CheckOptions& opts) {
  const RingSignature sig(n, true);
  if (!(pair.phi.signature() == sig) || !(pair.psi.signature() == sig)) {
    throw Error(ErrorCode::SignatureMismatch, "stable pair must live in " + sig.str());
  }
  const UnivariatePoly& q = pair.q;
  const UnivariatePoly q0 = UnivariatePoly::constant(q.coeff(0));
  const Polynomial p0 = build_Pq(sig, q0);
  const Polynomial pq = build_Pq(sig, q);
  const Polynomial u = x_power_bracket(sig, 1);
  const Polynomial u2 = x_power_bracket(sig, 2);
  const RingEndomorphism& phi = pair.phi;
  const RingEndomorphism& psi = pair.psi;

  Certificate cert("P_q and P_{q(0)} are stably equivalent",
                   Json{{"n", n}, {"q", PqSpec(n, q, FieldElement(0)).to_json()["q"]}});

  // (a), (b)
  const Polynomial phi_pq = phi.apply(pq);
  Check& a = cert.add(exact_identity("(a) Phi(P_q) = P_{q(0)}", "Phi(P_q) = P_{q(0)}", phi_pq, p0));
  sample_check(a, opts, [&](Sampler& s) {
    return compare_pullback(phi, pq, [&](std::span<const FieldElement> p) { return p0.evaluate(p); }, s.point(sig));
  });
  const bool a_pass = a.symbolic_pass;
  const Polynomial psi_p0 = psi.apply(p0);
  Check& b = cert.add(exact_identity("(b) Psi(P_{q(0)}) = P_q", "Psi(P_{q(0)}) = P_q", psi_p0, pq));
  sample_check(b, opts, [&](Sampler& s) {
    return compare_pullback(psi, p0, [&](std::span<const FieldElement> p) { return pq.evaluate(p); }, s.point(sig));
  });
  const bool b_pass = b.symbolic_pass;

  // The images of z and w are polynomials in x, z, w and T = P_{q(0)} (Phi)
  // or T = P_q (Psi); the compositions below push the other map through T.
  const struct {
    const char* name;
    const Polynomial& lifted;
    const Polynomial& t;
    const Polynomial& image;
  } lifts[] = {
      {"Phi(z)", pair.phi_lift_z, p0, phi.image(sig.z())},
      {"Phi(w)", pair.phi_lift_w, p0, phi.image(sig.w())},
      {"Psi(z)", pair.psi_lift_z, pq, psi.image(sig.z())},
      {"Psi(w)", pair.psi_lift_w, pq, psi.image(sig.w())},
  };
  for (const auto& l : lifts) {
    Check& c = cert.add(exact_identity(std::string("lifted form of ") + l.name,
                                       std::string(l.name) + " = F(x, z, w, T) at T = " +
                                           (&l.t == &p0 ? "P_{q(0)}" : "P_q"),
                                       lift_at(l.lifted, l.t), l.image));
    // Evaluate F with T set to the value of P at the point.
    sample_check(c, opts, [&](Sampler& s) -> std::optional<std::string> {
      const auto pt = reduce_mod_prime(s.point(sig));
      auto lifted_pt = pt;
      lifted_pt[sig.y()] = evaluate_mod_prime(l.t, pt);
      if (evaluate_mod_prime(l.lifted, lifted_pt) == evaluate_mod_prime(l.image, pt)) return std::nullopt;
      return std::string("F(x, z, w, T(point)) differs from the image");
    });
  }
  bool x_fixed = true;
  for (int i = 1; i <= n; ++i) {
    x_fixed = x_fixed && phi.image(sig.x(i)) == var(sig, sig.x(i)) && psi.image(sig.x(i)) == var(sig, sig.x(i));
  }
  cert.add(fact("Phi, Psi fix x", "Phi(x_i) = Psi(x_i) = x_i", x_fixed));

  auto push = [&](const Polynomial& lifted, const Polynomial& t_image, const RingEndomorphism& outer) {
    std::vector<Polynomial> images = outer.images();
    images[sig.y()] = t_image;
    return lifted.substitute(images);
  };

  // Phi o Psi. Psi(z), Psi(w) are lifted at T = P_q, so Phi sends T to Phi(P_q).
  // For y: x^[2] Psi(y) = Psi(P_{q(0)}) - Psi(z)^2 - x^[1] q(0), and Psi(P_{q(0)}) = P_q by (b).
  // Psi o Phi mirrors this with x^[2] Phi(y) = Phi(P_q) - Phi(z)^2 - x^[1] q(Phi(z)^2).
  //
  // Inner map I lifted at T = I^-1-side relation polynomial R_I (P_q for Psi,
  // P_{q(0)} for Phi); O(R_I) was computed in (a) or (b).
  struct Side {
    const char* name;
    const RingEndomorphism& outer;
    const RingEndomorphism& inner;
    const Polynomial& inner_lift_z;
    const Polynomial& inner_lift_w;
    const Polynomial& outer_of_t;  // outer(T) for the inner lift
    bool inner_relation_ok;        // inner(P) = T for the y formula: (b) for Psi, (a) for Phi
    const UnivariatePoly& inner_y_q;
  };
  const Side sides[] = {
      {"Phi o Psi", phi, psi, pair.psi_lift_z, pair.psi_lift_w, phi_pq, b_pass, q0},
      {"Psi o Phi", psi, phi, pair.phi_lift_z, pair.phi_lift_w, psi_p0, a_pass, q},
  };
  for (const Side& side : sides) {
    const std::string prefix = std::string("(c) ") + side.name;
    const Polynomial zz = push(side.inner_lift_z, side.outer_of_t, side.outer);
    const Polynomial ww = push(side.inner_lift_w, side.outer_of_t, side.outer);

    cert.add(fact(prefix + " fixes x", prefix + "(x_i) = x_i", x_fixed));
    Check cz = exact_identity(prefix + " fixes z", prefix + "(z) = z", zz, var(sig, sig.z()));
    Check cw = exact_identity(prefix + " fixes w", prefix + "(w) = w", ww, var(sig, sig.w()));

    // x^[2] inner(y) = inner(P) - inner(z)^2 - x^[1] q_inner(inner(z)^2) with
    // inner(P) = T, so x^[2] outer(inner(y)) = outer(T) - zz^2 - x^[1] q_inner(zz^2).
    Check cy{prefix + " fixes y", prefix + "(y) = y"};
    if (!side.inner_relation_ok) {
      cy.symbolic_pass = false;
      cy.note = "needs (a) and (b)";
    } else {
      const Polynomial& outer_of_inner_t0 = side.outer_of_t;
      const Polynomial z2 = zz * zz;
      const Polynomial numerator = outer_of_inner_t0 - z2 - u * side.inner_y_q.compose(z2);
      if (auto yy = numerator.exact_divide(u2)) {
        const Polynomial diff = *yy - var(sig, sig.y());
        cy.symbolic_pass = diff.is_zero();
        if (!cy.symbolic_pass) cy.residual = residual_text(diff);
      } else {
        cy.symbolic_pass = false;
        cy.note = "x^[2] does not divide the pushed y numerator";
      }
    }
    for (Check* c : {&cz, &cw, &cy}) {
      const std::size_t v = c == &cz ? sig.z() : c == &cw ? sig.w() : sig.y();
      sample_check(*c, opts, [&, v](Sampler& s) -> std::optional<std::string> {
        const auto p = reduce_mod_prime(s.point(sig));
        const auto back = map_point_mod_prime(side.inner, map_point_mod_prime(side.outer, p));
        if (back[v] != p[v]) return "generator " + sig.var_name(v) + " moved (mod 2^61-1)";
        return std::nullopt;
      });
      c->note += std::string(c->note.empty() ? "" : "; ") + "samples reduced mod 2^61-1";
      cert.add(std::move(*c));
    }
  }

  const StableDegreeBounds bound = stable_degree_bounds(q, n);
  const long deg_phi = phi.image(sig.y()).total_degree();
  const long deg_psi = psi.image(sig.y()).total_degree();
  cert.add(fact("degree of Phi(y), Psi(y)", "deg Phi(y) <= 2k d_z - n, deg Psi(y) <= 2 d_z - 2n",
                deg_phi <= bound.phi_y && deg_psi <= bound.psi_y,
                "deg Phi(y) = " + std::to_string(deg_phi) + " (bound " + std::to_string(bound.phi_y) +
                    "), deg Psi(y) = " + std::to_string(deg_psi) + " (bound " + std::to_string(bound.psi_y) + ")"));
  return cert;
}

// ------------------------------------------------------------ theorem

std::vector<FieldElement> default_c_samples() {
  return {FieldElement(0), FieldElement(1), FieldElement(2), FieldElement(-1), FieldElement(Rational(1, 2))};
}

Certificate theorem_certificate(int n, int k_max, const std::vector<FieldElement>& c_samples,
                                const CheckOptions& opts) {
  if (n < 1) throw Error(ErrorCode::Precondition, "n must be >= 1");
  if (k_max < 2) throw Error(ErrorCode::Precondition, "k_max must be >= 2");
  Json c_json = Json::array();
  for (const FieldElement& c : c_samples) c_json.push_back(c.str());
  Certificate cert("stably equivalent polynomials with non-equivalent zero sets",
                   Json{{"n", n}, {"k_max", k_max}, {"c_samples", c_json}});

  // (1) H1 = V(P_{t-1} - 1), H2 = V(P_{t-2} - 1).
  const PqSpec h1(n, UnivariatePoly{-1, 1}, FieldElement(1));
  const PqSpec h2(n, UnivariatePoly{-2, 1}, FieldElement(1));
  const IsoClass k1 = classify(h1);
  const IsoClass k2 = classify(h2);
  cert.add(fact("(1) classify(H1) = V_{0,1}", "q1(c) = 0, c = 1", k1.name() == "V_{0,1}", k1.name()));
  cert.add(fact("(1) classify(H2) = V_{1,1}", "q2(c) = -1, c = 1", k2.name() == "V_{1,1}", k2.name()));
  cert.add(fact("(1) H1, H2 in different classes", "V_{0,1} != V_{1,1}", !(k1 == k2),
                "the classes are pairwise non-isomorphic by the classification theorem, which is trusted here"));
  cert.absorb(verify_fiber_isomorphism(h1, opts), "(1) H1 fiber: ");
  cert.absorb(verify_fiber_isomorphism(h2, opts), "(1) H2 fiber: ");

  const StableEquivPair s1 = build_stable_equivalence(h1.q, n);
  const StableEquivPair s2 = build_stable_equivalence(h2.q, n);
  cert.absorb(verify_stable_equivalence(s1, n, opts), "(1) P_{t-1} stable: ");
  cert.absorb(verify_stable_equivalence(s2, n, opts), "(1) P_{t-2} stable: ");

  // P_{-1} and P_{-2} are equivalent polynomials (lambda = 2).
  const auto link = decide_poly_equivalence(UnivariatePoly::constant(FieldElement(-1)), FieldElement(1),
                                            UnivariatePoly::constant(FieldElement(-2)), FieldElement(1));
  const auto* lw = std::get_if<PolyEquivWitness>(&link);
  cert.add(fact("(1) P_{-1} - 1 ~ P_{-2} - 1", "q2 = lambda q1 with lambda = 2", lw && lw->lambda == FieldElement(2),
                verdict_name(link)));
  if (lw) {
    const RingSignature sig(n, true);
    const RingEndomorphism theta = build_poly_equiv_automorphism(*lw, n, true);
    const RingEndomorphism theta_inv = poly_equiv_inverse(*lw, n, true);
    const Polynomial rel1 = PqSpec(n, h1.q, h1.c).relation(true);
    const Polynomial rel2 = PqSpec(n, h2.q, h2.c).relation(true);
    const Polynomial p_m1 = build_Pq(sig, UnivariatePoly::constant(FieldElement(-1)));
    const Polynomial p_m2 = build_Pq(sig, UnivariatePoly::constant(FieldElement(-2)));
    Check& tc =
        cert.add(exact_identity("(1) Theta(P_{-1}) = P_{-2}", "Theta: x1 -> 2 x1, y -> y/4", theta.apply(p_m1), p_m2));
    sample_check(tc, opts, [&](Sampler& s) {
      return compare_pullback(theta, p_m1, [&](std::span<const FieldElement> p) { return p_m2.evaluate(p); },
                              s.point(sig));
    });

    // F = Psi_{H2} o Theta o Phi_{H1}, G = Psi_{H1} o Theta^-1 o Phi_{H2}.
    const RingEndomorphism f = compose_endos(s2.psi, compose_endos(theta, s1.phi));
    const RingEndomorphism g = compose_endos(s1.psi, compose_endos(theta_inv, s2.phi));
    Check& fc = cert.add(exact_identity("(1) cylinder map F(P_q1 - 1) = P_q2 - 1",
                                        "F = Psi_{H2} Theta Phi_{H1} maps V(P_q2 - 1) x C onto V(P_q1 - 1) x C",
                                        f.apply(rel1), rel2));
    sample_check(fc, opts, [&](Sampler& s) {
      return compare_pullback(f, rel1, [&](std::span<const FieldElement> p) { return rel2.evaluate(p); },
                              s.point(sig));
    });
    for (const auto& [name, outer, inner] :
         {std::tuple{"(1) cylinder F o G = id", f, g}, std::tuple{"(1) cylinder G o F = id", g, f}}) {
      Check c = identity_on_generators(name, std::string(name) + " on x, y, z, w", compose_endos(outer, inner));
      sample_round_trip(c, opts, outer, inner, false);
      cert.add(std::move(c));
    }
  }

  // (2) Q_k = P_{(t-1)^k}.
  for (int k = 1; k <= k_max; ++k) {
    for (int k2 = k + 1; k2 <= k_max; ++k2) {
      const auto verdict = decide_hypersurface_equivalence(q_power(k), FieldElement(0), q_power(k2), FieldElement(0));
      std::string note = verdict_name(verdict);
      if (const auto* ne = std::get_if<NotEquivalent>(&verdict)) note += ": " + ne->reason;
      note += "; the only-if direction of the equivalence criterion is trusted";
      cert.add(fact("(2) V(Q_" + std::to_string(k) + ") !~ V(Q_" + std::to_string(k2) + ")",
                    "no lambda, mu with q_k'(t) = lambda q_k(mu t)",
                    std::holds_alternative<NotEquivalent>(verdict), note));
    }
  }
  for (const FieldElement& c : c_samples) {
    const std::string cs = c.str();
    for (int k = 1; k <= k_max; ++k) {
      const PqSpec qk(n, q_power(k), c);
      cert.absorb(verify_fiber_isomorphism(qk, opts), "(2) Q_" + std::to_string(k) + " - " + cs + " fiber: ");
      if (k == 1) continue;
      const PqSpec q1(n, q_power(1), c);
      cert.add(fact("(2) V(Q_1 - " + cs + ") ~= V(Q_" + std::to_string(k) + " - " + cs + ")",
                    "classify(Q_1 - c) = classify(Q_k - c)", isomorphic(q1, qk), classify(qk).name()));
      // The reduced forms P_{q(c)} - c are linked by a scaling of x1.
      const auto link_c = decide_poly_equivalence(UnivariatePoly::constant(q1.q_at_c()), c,
                                                  UnivariatePoly::constant(qk.q_at_c()), c);
      const auto* wc = std::get_if<PolyEquivWitness>(&link_c);
      const std::string label = "(2) P_{q_1(" + cs + ")} - " + cs + " ~ P_{q_" + std::to_string(k) + "(" + cs + ")} - " + cs;
      if (!wc) {
        cert.add(fact(label, "q_k(c) = lambda q_1(c)", false, verdict_name(link_c)));
        continue;
      }
      const RingEndomorphism theta = build_poly_equiv_automorphism(*wc, n);
      const PqSpec r1(n, UnivariatePoly::constant(q1.q_at_c()), c);
      const PqSpec rk(n, UnivariatePoly::constant(qk.q_at_c()), c);
      const Polynomial rel1 = r1.relation(), relk = rk.relation();
      Check& lc = cert.add(exact_identity(label, "x1 -> lambda x1, y -> y / lambda^2 with lambda = " + wc->lambda.str(),
                                          theta.apply(rel1), relk));
      sample_check(lc, opts, [&](Sampler& s) {
        return compare_pullback(theta, rel1, [&](std::span<const FieldElement> p) { return relk.evaluate(p); },
                                s.point(rel1.signature()));
      });
    }
  }
  for (int k = 1; k <= k_max; ++k) {
    const StableEquivPair pair = build_stable_equivalence(q_power(k), n);
    cert.absorb(verify_stable_equivalence(pair, n, opts), "(2) Q_" + std::to_string(k) + " stable: ");
    if (k == 1) continue;
    const auto link_k = decide_poly_equivalence(UnivariatePoly::constant(q_power(1).coeff(0)), FieldElement(0),
                                               UnivariatePoly::constant(q_power(k).coeff(0)), FieldElement(0));
    cert.add(fact("(2) P_{q_1(0)} ~ P_{q_" + std::to_string(k) + "(0)}", "q_k(0) = lambda q_1(0)",
                  std::holds_alternative<PolyEquivWitness>(link_k), verdict_name(link_k)));
  }

  cert.note("H1 uses x^[1](z^2 - 1) - 1 and H2 uses x^[1](z^2 - 2) - 1; a printed variant of this example lists the "
            "first formula for both polynomials, and the certificate follows the (z^2 - 1) vs (z^2 - 2) form");
  cert.note("NotEquivalent verdicts rely on the only-if direction of the equivalence criterion; witnesses are checked "
            "constructively");
  return cert;
}

Certificate equivalence_certificate(const PqSpec& h1, const PqSpec& h2, const Rational& ambient_d,
                                    const CheckOptions& opts) {
  const HyperEquivVerdict verdict = decide_hypersurface_equivalence(h1.q, h1.c, h2.q, h2.c, ambient_d);
  Certificate cert("hypersurface equivalence decision", Json{{"h1", h1.to_json()}, {"h2", h2.to_json()}});
  std::string note;
  if (const auto* ne = std::get_if<NotEquivalent>(&verdict)) {
    note = ne->reason + "; only-if direction trusted";
  } else if (const auto* nd = std::get_if<NotDecidableInField>(&verdict)) {
    note = "needs " + nd->relation;
  }
  cert.add(fact("verdict: " + verdict_name(verdict), "c2 = mu^-1 c1 and q2(t) = lambda q1(mu t)", true, note));
  if (const auto* w = std::get_if<HyperEquivWitness>(&verdict)) {
    cert.absorb(verify_hyper_equivalence(h1, h2, *w, opts), "witness: ");
  }
  return cert;
}

}  // namespace stably
