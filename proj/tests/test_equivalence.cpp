#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "oracles.hpp"
#include "stably/equivalence.hpp"

using namespace stably;

namespace {

UnivariatePoly q_power(unsigned k) { return UnivariatePoly{-1, 1}.pow(k); }

const HyperEquivWitness* hyper_witness(const HyperEquivVerdict& v) { return std::get_if<HyperEquivWitness>(&v); }

Polynomial var(const RingSignature& sig, std::size_t v) { return Polynomial::variable(sig, v); }

bool all_identity(const RingEndomorphism& e) {
  const RingSignature& sig = e.signature();
  for (std::size_t v = 0; v < sig.num_vars(); ++v) {
    if (!(e.image(v) == var(sig, v))) return false;
  }
  return true;
}

oracle::Dense dense_apply(const RingEndomorphism& phi, const Polynomial& f) {
  std::vector<oracle::Dense> images;
  for (const Polynomial& p : phi.images()) images.push_back(oracle::from_library(p));
  return oracle::substitute(oracle::from_library(f), images, phi.signature().num_vars());
}

}  // namespace

TEST_CASE("polynomial equivalence examples") {
  const auto v1 = decide_poly_equivalence(UnivariatePoly{-1, 1}, 0, UnivariatePoly{-2, 2}, 0);
  REQUIRE(std::holds_alternative<PolyEquivWitness>(v1));
  CHECK(std::get<PolyEquivWitness>(v1).lambda == FieldElement(2));
  CHECK(std::holds_alternative<NotEquivalent>(decide_poly_equivalence(q_power(1), 0, q_power(2), 0)));
  const auto same = decide_poly_equivalence(q_power(3), 5, q_power(3), 5);
  REQUIRE(std::holds_alternative<PolyEquivWitness>(same));
  CHECK(std::get<PolyEquivWitness>(same).lambda == FieldElement(1));
  CHECK(std::holds_alternative<NotEquivalent>(decide_poly_equivalence(q_power(1), 0, q_power(1), 1)));
  const auto zeros = decide_poly_equivalence(UnivariatePoly(), 2, UnivariatePoly(), 2);
  REQUIRE(std::holds_alternative<PolyEquivWitness>(zeros));
  CHECK(std::get<PolyEquivWitness>(zeros).lambda == FieldElement(1));
}

TEST_CASE("polynomial equivalence automorphism") {
  const RingSignature sig(1, false);
  CHECK(all_identity(build_poly_equiv_automorphism(PolyEquivWitness{1}, 2)));
  const RingEndomorphism phi = build_poly_equiv_automorphism(PolyEquivWitness{2}, 1);
  CHECK(phi.apply(Polynomial::parse(sig, "x1^2*y + z^2 + x1*z^2")) ==
        Polynomial::parse(sig, "x1^2*y + z^2 + 2*x1*z^2"));
  CHECK(all_identity(compose_endos(phi, poly_equiv_inverse(PolyEquivWitness{2}, 1))));
  CHECK(all_identity(compose_endos(poly_equiv_inverse(PolyEquivWitness{2}, 1), phi)));
}

TEST_CASE("polynomial equivalence is an equivalence relation") {
  oracle::Random rnd(41);
  for (int i = 0; i < 50; ++i) {
    oracle::Coeffs base;
    for (int j = 0; j <= 3; ++j) base.push_back(rnd.rational(20));
    const UnivariatePoly q = oracle::to_univariate(oracle::trim(base));
    const FieldElement l1(Rational(rnd.nonzero_rational(20))), l2(Rational(rnd.nonzero_rational(20)));
    const FieldElement c(Rational(rnd.rational(5)));
    const UnivariatePoly q1 = q, q2 = l1 * q, q3 = (l1 * l2) * q;

    const auto refl = decide_poly_equivalence(q1, c, q1, c);
    REQUIRE(std::holds_alternative<PolyEquivWitness>(refl));
    if (q.is_zero()) continue;
    CHECK(std::get<PolyEquivWitness>(refl).lambda == FieldElement(1));
    const auto ab = decide_poly_equivalence(q1, c, q2, c);
    const auto ba = decide_poly_equivalence(q2, c, q1, c);
    const auto bc = decide_poly_equivalence(q2, c, q3, c);
    const auto ac = decide_poly_equivalence(q1, c, q3, c);
    REQUIRE(std::holds_alternative<PolyEquivWitness>(ab));
    REQUIRE(std::holds_alternative<PolyEquivWitness>(ba));
    REQUIRE(std::holds_alternative<PolyEquivWitness>(bc));
    REQUIRE(std::holds_alternative<PolyEquivWitness>(ac));
    CHECK(std::get<PolyEquivWitness>(ab).lambda * std::get<PolyEquivWitness>(ba).lambda == FieldElement(1));
    CHECK(std::get<PolyEquivWitness>(ab).lambda * std::get<PolyEquivWitness>(bc).lambda ==
          std::get<PolyEquivWitness>(ac).lambda);

    // witness soundness: Phi(P_q1) = P_q2 exactly
    const int n = static_cast<int>(rnd.integer(1, 3));
    const RingEndomorphism phi = build_poly_equiv_automorphism(std::get<PolyEquivWitness>(ab), n);
    CHECK(phi.apply(build_Pq(RingSignature(n, false), q1)) == build_Pq(RingSignature(n, false), q2));
  }
}

TEST_CASE("hypersurface equivalence examples") {
  const auto v = decide_hypersurface_equivalence(UnivariatePoly{-1, 1}, 1, UnivariatePoly{-1, 4},
                                                 FieldElement(Rational(1, 4)));
  const HyperEquivWitness* w = hyper_witness(v);
  REQUIRE(w != nullptr);
  CHECK(w->lambda == FieldElement(1));
  CHECK(w->mu == FieldElement(4));
  CHECK(w->epsilon * w->epsilon == FieldElement(Rational(1, 4)));

  for (unsigned k = 1; k <= 3; ++k) {
    for (unsigned k2 = 1; k2 <= 3; ++k2) {
      const auto vk = decide_hypersurface_equivalence(q_power(k), 0, q_power(k2), 0);
      if (k == k2) CHECK(hyper_witness(vk) != nullptr);
      else CHECK(std::holds_alternative<NotEquivalent>(vk));
    }
  }

  const auto same = decide_hypersurface_equivalence(UnivariatePoly{3, 0, 1}, 2, UnivariatePoly{3, 0, 1}, 2);
  REQUIRE(hyper_witness(same) != nullptr);
  CHECK(hyper_witness(same)->lambda == FieldElement(1));
  CHECK(hyper_witness(same)->mu == FieldElement(1));
  CHECK(hyper_witness(same)->epsilon == FieldElement(1));

  CHECK(std::holds_alternative<NotEquivalent>(decide_hypersurface_equivalence(q_power(1), 0, q_power(1), 1)));
}

TEST_CASE("hypersurface witness automorphism") {
  const HyperEquivWitness w{1, 4, FieldElement(Rational(1, 2))};
  const PqSpec h1(1, UnivariatePoly{-1, 1}, 1);
  const PqSpec h2(1, UnivariatePoly{-1, 4}, FieldElement(Rational(1, 4)));
  const RingEndomorphism phi = build_hyper_equiv_automorphism(w, 1);
  // The built map carries P_q1 - c1 to mu (P_q2 - c2).
  CHECK(phi.apply(h1.relation()) == FieldElement(4) * h2.relation());
  CHECK(dense_apply(phi, h1.relation()) == oracle::scale(oracle::from_library(h2.relation()), 4));
  CHECK(all_identity(compose_endos(phi, hyper_equiv_inverse(w, 1))));
  CHECK(all_identity(compose_endos(hyper_equiv_inverse(w, 1), phi)));
  CHECK(verify_hyper_equivalence(h1, h2, w).pass());

  CHECK(all_identity(build_hyper_equiv_automorphism(HyperEquivWitness{1, 1, 1}, 2)));
  try {
    (void)build_hyper_equiv_automorphism(HyperEquivWitness{1, -1, 1}, 1);
    FAIL("expected InvalidWitness");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidWitness);
  }
}

TEST_CASE("mu roots outside the rationals") {
  // mu^2 = 2
  const UnivariatePoly q1{1, 0, 1}, q2{1, 0, 2};
  const auto rational = decide_hypersurface_equivalence(q1, 0, q2, 0);
  REQUIRE(std::holds_alternative<NotDecidableInField>(rational));
  CHECK(std::get<NotDecidableInField>(rational).relation.find("mu^2 = 2") != std::string::npos);

  // In Q(sqrt(2)) mu = sqrt(2) exists but 1/mu is not a square there.
  const auto ext = decide_hypersurface_equivalence(q1, 0, q2, 0, Rational(2));
  CHECK(std::holds_alternative<NotDecidableInField>(ext));

  // mu = -1 needs epsilon = sqrt(-1).
  const UnivariatePoly a{1, 1}, b{1, -1};
  CHECK(std::holds_alternative<NotDecidableInField>(decide_hypersurface_equivalence(a, 0, b, 0)));
  const auto gauss = decide_hypersurface_equivalence(a, 0, b, 0, Rational(-1));
  const HyperEquivWitness* w = hyper_witness(gauss);
  REQUIRE(w != nullptr);
  CHECK(w->mu == FieldElement(-1));
  CHECK(w->epsilon * w->epsilon == FieldElement(-1));
  const PqSpec h1(2, a, 0), h2(2, b, 0);
  CHECK(verify_hyper_equivalence(h1, h2, *w).pass());

  // mu^2 = 4 and mu^3 = 8 are consistent only with mu = 2, which needs sqrt(1/2).
  const UnivariatePoly c1{1, 0, 1, 1}, c2{1, 0, 4, 8};
  CHECK(std::holds_alternative<NotDecidableInField>(decide_hypersurface_equivalence(c1, 0, c2, 0)));
  const auto with2 = decide_hypersurface_equivalence(c1, 0, c2, 0, Rational(2));
  REQUIRE(hyper_witness(with2) != nullptr);
  CHECK(hyper_witness(with2)->mu == FieldElement(2));
}

TEST_CASE("hypersurface verdicts agree with the brute-force oracle on random pairs") {
  oracle::Random rnd(42);
  int equivalent = 0;
  for (int i = 0; i < 400; ++i) {
    oracle::Coeffs q1;
    for (int j = 0; j <= 3; ++j) q1.push_back(mpq_class(rnd.integer(-2, 2)));
    q1 = oracle::trim(q1);
    // Half of the partners are built as lambda q1(mu t) so that witnesses occur.
    oracle::Coeffs q2;
    const mpq_class c1(rnd.integer(-1, 1));
    mpq_class c2(rnd.integer(-1, 1));
    if (i % 2 == 0) {
      const mpq_class mu = rnd.integer(0, 1) ? mpq_class(1, 4) : mpq_class(4);
      const mpq_class lambda = rnd.integer(0, 1) ? mpq_class(1) : mpq_class(-2);
      mpq_class m = 1;
      for (const auto& c : q1) {
        q2.push_back(lambda * c * m);
        m *= mu;
      }
      c2 = c1 / mu;
    } else {
      for (int j = 0; j <= 3; ++j) q2.push_back(mpq_class(rnd.integer(-2, 2)));
      q2 = oracle::trim(q2);
    }
    const auto verdict = decide_hypersurface_equivalence(oracle::to_univariate(q1), FieldElement(Rational(c1)),
                                                         oracle::to_univariate(q2), FieldElement(Rational(c2)));
    const auto expected = oracle::rational_witness(q1, c1, q2, c2);
    CHECK(expected.has_value() == (hyper_witness(verdict) != nullptr));
    if (const HyperEquivWitness* w = hyper_witness(verdict)) {
      ++equivalent;
      const PqSpec h1(1, oracle::to_univariate(q1), FieldElement(Rational(c1)));
      const PqSpec h2(1, oracle::to_univariate(q2), FieldElement(Rational(c2)));
      CHECK(build_hyper_equiv_automorphism(*w, 1).apply(h1.relation()) == w->mu * h2.relation());
    }
  }
  CHECK(equivalent > 50);
}

TEST_CASE("stable pair images") {
  const RingSignature sig(1, true);
  const StableEquivPair trivial = build_stable_equivalence(UnivariatePoly{7}, 1);
  CHECK(all_identity(trivial.phi));
  CHECK(all_identity(trivial.psi));

  const StableEquivPair lin = build_stable_equivalence(UnivariatePoly{-1, 1}, 1);
  CHECK(lin.r == UnivariatePoly::constant(FieldElement(Rational(1, 2))));
  CHECK(lin.phi.image(sig.z()) == Polynomial::parse(sig, "z - 1/2*x1*z + x1^2*w"));

  const StableEquivPair sq = build_stable_equivalence(q_power(2), 1);
  CHECK(sq.r == UnivariatePoly(std::vector<FieldElement>{FieldElement(-1), FieldElement(Rational(1, 2))}));
  const Polynomial p0 = build_Pq(sig, UnivariatePoly{1});
  const Polynomial x = Polynomial::parse(sig, "x1"), z = Polynomial::parse(sig, "z");
  CHECK(sq.phi.image(sig.z()) ==
        (Polynomial::constant(sig, 1) - x * FieldElement(Rational(1, 2)) * (p0 - Polynomial::constant(sig, 2))) * z +
            Polynomial::parse(sig, "x1^2*w"));
}

TEST_CASE("stable pair identities against the dense oracle") {
  for (int n = 1; n <= 2; ++n) {
    for (unsigned k = 1; k <= 2; ++k) {
      const StableEquivPair pair = build_stable_equivalence(q_power(k), n);
      const RingSignature sig(n, true);
      const Polynomial pq = build_Pq(sig, pair.q);
      const Polynomial p0 = build_Pq(sig, UnivariatePoly::constant(pair.q(0)));
      CHECK(dense_apply(pair.phi, pq) == oracle::from_library(p0));
      CHECK(dense_apply(pair.psi, p0) == oracle::from_library(pq));
    }
  }
}

TEST_CASE("stable pair composes to the identity by direct substitution") {
  for (const UnivariatePoly& q : {UnivariatePoly{-1, 1}, UnivariatePoly{-2, 1}}) {
    const StableEquivPair pair = build_stable_equivalence(q, 1);
    CHECK(all_identity(compose_endos(pair.phi, pair.psi)));
    CHECK(all_identity(compose_endos(pair.psi, pair.phi)));
  }
}

TEST_CASE("stable certificates for Q_k") {
  for (int n = 1; n <= 2; ++n) {
    for (unsigned k = 1; k <= 3; ++k) {
      const StableEquivPair pair = build_stable_equivalence(q_power(k), n);
      const Certificate cert = verify_stable_equivalence(pair, n, CheckOptions{1, 20});
      CHECK_MESSAGE(cert.pass(), "n=" << n << " k=" << k);
      const StableDegreeBounds b = stable_degree_bounds(pair.q, n);
      CHECK(pair.phi.image(RingSignature(n, true).y()).total_degree() <= b.phi_y);
      CHECK(pair.psi.image(RingSignature(n, true).y()).total_degree() <= b.psi_y);
    }
  }
  CHECK(verify_stable_equivalence(build_stable_equivalence(UnivariatePoly{3}, 2), 2).pass());
}

TEST_CASE("sign-corrupted Phi(w) is rejected") {
  const StableEquivPair bad = corrupt_phi_w_sign(build_stable_equivalence(q_power(2), 1));
  const Certificate cert = verify_stable_equivalence(bad, 1, CheckOptions{1, 20});
  CHECK_FALSE(cert.pass());
  const Check* first = cert.first_failure();
  REQUIRE(first != nullptr);
  CHECK(first->name.rfind("(c)", 0) == 0);
  CHECK(first->residual.has_value());
  CHECK_FALSE(all_identity(compose_endos(corrupt_phi_w_sign(build_stable_equivalence(q_power(1), 1)).phi,
                                         build_stable_equivalence(q_power(1), 1).psi)));
}

TEST_CASE("theorem certificate") {
  const Certificate cert = theorem_certificate(1, 2, {FieldElement(0), FieldElement(1), FieldElement(2)},
                                               CheckOptions{0, 10});
  CHECK(cert.pass());
  const Json j = cert.to_json();
  CHECK(j["pass"] == true);
  CHECK(j["checks"].size() == cert.checks().size());
  const auto& notes = cert.notes();
  CHECK(std::any_of(notes.begin(), notes.end(), [](const std::string& s) { return s.find("(z^2 - 2)") != std::string::npos; }));
  try {
    (void)theorem_certificate(1, 1, default_c_samples());
    FAIL("expected Precondition");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Precondition);
  }
}

TEST_CASE("equivalence certificate covers all verdicts") {
  const PqSpec h1(1, UnivariatePoly{-1, 1}, 1), h2(1, UnivariatePoly{-1, 4}, FieldElement(Rational(1, 4)));
  CHECK(equivalence_certificate(h1, h2).pass());
  CHECK(equivalence_certificate(PqSpec(1, q_power(1), 0), PqSpec(1, q_power(2), 0)).pass());
  const Json j = verdict_to_json(decide_hypersurface_equivalence(h1.q, h1.c, h2.q, h2.c));
  CHECK(j["verdict"] == "Equivalent");
  CHECK(j["mu"] == "4");
}
