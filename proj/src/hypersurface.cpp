#include "stably/hypersurface.hpp"

namespace stably {

std::string IsoClass::name() const {
  return std::string("V_{") + (xi_coeff_nonzero ? "1" : "0") + "," + (level_nonzero ? "1" : "0") + "}";
}

PqSpec IsoClass::reference(int n) const {
  return PqSpec(n, UnivariatePoly::constant(FieldElement(xi_coeff_nonzero ? 1 : 0)),
                FieldElement(level_nonzero ? 1 : 0));
}

FiberIsoPair fiber_isomorphism(const PqSpec& spec) {
  const RingSignature sig = spec.signature();
  const Polynomial one = Polynomial::constant(sig, FieldElement(1));
  const Polynomial y = Polynomial::variable(sig, sig.y());
  const Polynomial z2 = Polynomial::variable(sig, sig.z()).pow(2);
  const Polynomial x1 = x_power_bracket(sig, 1);

  UnivariatePoly g = difference_quotient(spec.q, spec.c);
  const Polynomial gz = g.compose(z2);

  RingEndomorphism phi(sig);
  phi.set_image(sig.y(), (one + x1 * gz) * y + spec.q_at_c() * gz);
  RingEndomorphism psi(sig);
  psi.set_image(sig.y(), (one - x1 * gz) * y - spec.q.compose(z2) * gz);
  return FiberIsoPair{std::move(phi), std::move(psi), std::move(g)};
}

Certificate verify_fiber_isomorphism(const PqSpec& spec, const FiberIsoPair& pair, const CheckOptions& opts) {
  const RingSignature sig = spec.signature();
  const PqSpec constant_spec(spec.n, UnivariatePoly::constant(spec.q_at_c()), spec.c);
  const Polynomial relation = spec.relation();
  const Polynomial constant_relation = constant_spec.relation();
  const Polynomial one = Polynomial::constant(sig, FieldElement(1));
  const Polynomial z2 = Polynomial::variable(sig, sig.z()).pow(2);
  const Polynomial gz = pair.g.compose(z2);
  const Polynomial x1 = x_power_bracket(sig, 1);
  const Polynomial unit = one + x1 * gz;
  const Polynomial unit_inv_side = one - x1 * gz;

  Certificate cert("V(P_q - c) is isomorphic to V(P_{q(c)} - c) via phi_c / psi_c",
                   Json{{"spec", spec.to_json()}});

  auto unit_value = [&](const Polynomial& u) {
    return [u](std::span<const FieldElement> pt) { return u.evaluate(pt); };
  };

  {
    Check& c = cert.add(exact_identity("phi_c factorization",
                                       "phi_c(P_q - c) = (1 + x^[1] g_c(z^2)) (P_{q(c)} - c)",
                                       pair.phi.apply(relation), unit * constant_relation));
    sample_check(c, opts, [&](Sampler& s) {
      const auto pt = s.point(sig);
      return compare_pullback(pair.phi, relation,
                              [&](std::span<const FieldElement> p) {
                                return unit_value(unit)(p) * constant_relation.evaluate(p);
                              },
                              pt);
    });
  }
  {
    Check& c = cert.add(exact_identity("psi_c factorization",
                                       "psi_c(P_{q(c)} - c) = (1 - x^[1] g_c(z^2)) (P_q - c)",
                                       pair.psi.apply(constant_relation), unit_inv_side * relation));
    sample_check(c, opts, [&](Sampler& s) {
      const auto pt = s.point(sig);
      return compare_pullback(pair.psi, constant_relation,
                              [&](std::span<const FieldElement> p) {
                                return unit_value(unit_inv_side)(p) * relation.evaluate(p);
                              },
                              pt);
    });
  }

  // psi_c o phi_c lives on Q[x,y,z]/(P_q - c), phi_c o psi_c on Q[x,y,z]/(P_{q(c)} - c).
  struct Round {
    const char* name;
    const char* anchor;
    const RingEndomorphism& outer;
    const RingEndomorphism& inner;
    const PqSpec& quotient;
  };
  const Round rounds[] = {
      {"psi_c o phi_c = id mod (P_q - c)", "psi_c(phi_c(v)) - v in (P_q - c) for every generator v", pair.psi,
       pair.phi, spec},
      {"phi_c o psi_c = id mod (P_{q(c)} - c)", "phi_c(psi_c(v)) - v in (P_{q(c)} - c) for every generator v",
       pair.phi, pair.psi, constant_spec},
  };
  for (const Round& r : rounds) {
    const RingEndomorphism composite = compose_endos(r.outer, r.inner);
    Check check{r.name, r.anchor};
    check.symbolic_pass = true;
    for (std::size_t v = 0; v < sig.num_vars(); ++v) {
      const Polynomial reduced =
          reduce_mod_relation(composite.image(v) - Polynomial::variable(sig, v), r.quotient);
      if (!reduced.is_zero()) {
        check.symbolic_pass = false;
        check.residual = sig.var_name(v) + ": " + residual_text(reduced);
        break;
      }
    }
    // Evaluation route: inner(v) evaluated at outer's point map, on the fiber.
    sample_check(check, opts, [&](Sampler& s) -> std::optional<std::string> {
      const auto pt = s.point_on(r.quotient);
      const auto moved = r.outer.map_point(pt);
      for (std::size_t v = 0; v < sig.num_vars(); ++v) {
        if (!(r.inner.image(v).evaluate(moved) == pt[v])) return "generator " + sig.var_name(v) + " moved";
      }
      return std::nullopt;
    });
    cert.add(std::move(check));
  }

  {
    std::vector<Polynomial> at_origin;
    for (std::size_t v = 0; v < sig.num_vars(); ++v) {
      at_origin.push_back(sig.is_x(v) ? Polynomial(sig) : Polynomial::variable(sig, v));
    }
    Check& c = cert.add(exact_identity("factorization unit at x = 0", "(1 + x^[1] g_c(z^2))|_{x=0} = 1",
                                       unit.substitute(at_origin), one));
    sample_check(c, opts, [&](Sampler& s) -> std::optional<std::string> {
      auto pt = s.point(sig);
      for (int i = 1; i <= sig.n; ++i) pt[sig.x(i)] = FieldElement(0);
      if (unit.evaluate(pt) == FieldElement(1)) return std::nullopt;
      return std::string("unit is not 1 at z = ") + pt[sig.z()].str();
    });
  }
  return cert;
}

Certificate verify_fiber_isomorphism(const PqSpec& spec, const CheckOptions& opts) {
  return verify_fiber_isomorphism(spec, fiber_isomorphism(spec), opts);
}

IsoClass classify(const PqSpec& spec) {
  return IsoClass{!spec.q_at_c().is_zero(), !spec.c.is_zero()};
}

bool isomorphic(const PqSpec& a, const PqSpec& b) {
  if (a.n != b.n) {
    throw Error(ErrorCode::DimensionMismatch,
                "specs live in different dimensions (n=" + std::to_string(a.n) + " vs n=" + std::to_string(b.n) + ")");
  }
  return classify(a) == classify(b);
}

}  // namespace stably
