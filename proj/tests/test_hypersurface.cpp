#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "stably/hypersurface.hpp"

using namespace stably;

namespace {

UnivariatePoly q_power(unsigned k) { return UnivariatePoly{-1, 1}.pow(k); }

PqSpec random_spec(oracle::Random& rnd, const FieldElement& c) {
  oracle::Coeffs q;
  const long deg = rnd.integer(0, 5);
  for (long j = 0; j <= deg; ++j) q.push_back(rnd.rational(20));
  return PqSpec(static_cast<int>(rnd.integer(1, 3)), oracle::to_univariate(oracle::trim(q)), c);
}

const std::vector<FieldElement> kLevels = {FieldElement(0), FieldElement(1), FieldElement(-1), FieldElement(2),
                                           FieldElement(-2), FieldElement(Rational(1, 2))};

}  // namespace

TEST_CASE("build_Pq reference values") {
  const RingSignature s1(1, false);
  CHECK(build_Pq(PqSpec(1, UnivariatePoly{-1, 1}, 0)) == Polynomial::parse(s1, "x1^2*y + z^2 + x1*z^2 - x1"));
  CHECK(build_Pq(PqSpec(2, UnivariatePoly(), 0)) == Polynomial::parse(RingSignature(2, false), "x1^2*x2^2*y + z^2"));
  CHECK(build_Pq(PqSpec(1, UnivariatePoly{1}, 0)) == Polynomial::parse(s1, "x1^2*y + z^2 + x1"));
}

TEST_CASE("fiber isomorphism images") {
  const RingSignature s1(1, false);
  CHECK(is_identity(fiber_isomorphism(PqSpec(1, UnivariatePoly{5}, 3)).phi));
  CHECK(fiber_isomorphism(PqSpec(1, UnivariatePoly{-1, 1}, 1)).phi.image(s1.y()) ==
        Polynomial::parse(s1, "y + x1*y"));
  CHECK(fiber_isomorphism(PqSpec(1, UnivariatePoly{0, 1}, 0)).phi.image(s1.y()) ==
        Polynomial::parse(s1, "y + x1*y"));

  // phi and psi from g = (q(t) - q(c)) / (t - c), computed by long division here.
  const PqSpec spec(1, UnivariatePoly{2, -1, 3}, FieldElement(Rational(1, 2)));
  const auto g = oracle::divide_by_linear(oracle::rational_coeffs(spec.q), mpq_class(1, 2));
  const mpq_class qc = oracle::horner(oracle::rational_coeffs(spec.q), mpq_class(1, 2));
  const Polynomial gz = oracle::to_univariate(g).compose(Polynomial::parse(s1, "z^2"));
  const Polynomial y = Polynomial::parse(s1, "y"), x = Polynomial::parse(s1, "x1");
  const FiberIsoPair pair = fiber_isomorphism(spec);
  CHECK(pair.phi.image(s1.y()) == (Polynomial::constant(s1, 1) + x * gz) * y + FieldElement(Rational(qc)) * gz);
  CHECK(pair.psi.image(s1.y()) ==
        (Polynomial::constant(s1, 1) - x * gz) * y - spec.q.compose(Polynomial::parse(s1, "z^2")) * gz);
  CHECK(pair.phi.image(s1.z()) == Polynomial::parse(s1, "z"));
  CHECK(pair.psi.image(s1.x(1)) == x);
}

TEST_CASE("fiber certificate on the reference example") {
  const PqSpec spec(2, q_power(3), 1);
  const Certificate cert = verify_fiber_isomorphism(spec);
  CHECK(cert.pass());
  CHECK(cert.checks().size() >= 4);
  for (const Check& c : cert.checks()) CHECK_MESSAGE(c.pass(), c.name);
}

TEST_CASE("fiber certificate for q = 0 is trivial") {
  for (const FieldElement& c : kLevels) CHECK(verify_fiber_isomorphism(PqSpec(2, UnivariatePoly(), c)).pass());
}

TEST_CASE("corrupted fiber map fails") {
  const PqSpec spec(1, UnivariatePoly{-2, 1}, 1);
  FiberIsoPair pair = fiber_isomorphism(spec);
  const RingSignature sig = spec.signature();
  // drop the q(c) g(z^2) term
  const Polynomial gz = pair.g.compose(Polynomial::parse(sig, "z^2"));
  pair.phi.set_image(sig.y(), pair.phi.image(sig.y()) - spec.q_at_c() * gz);
  const Certificate cert = verify_fiber_isomorphism(spec, pair);
  CHECK_FALSE(cert.pass());
  REQUIRE(cert.first_failure() != nullptr);
  CHECK(cert.first_failure()->residual.has_value());
}

TEST_CASE("fiber certificates on random specs") {
  oracle::Random rnd(31);
  for (int i = 0; i < 60; ++i) {
    const FieldElement& c = kLevels[static_cast<std::size_t>(rnd.integer(0, 5))];
    const PqSpec spec = random_spec(rnd, c);
    const Certificate cert = verify_fiber_isomorphism(spec, CheckOptions{static_cast<std::uint64_t>(i), 10});
    CHECK_MESSAGE(cert.pass(), spec.str());
  }
}

TEST_CASE("factorization unit is 1 at x = 0") {
  oracle::Random rnd(32);
  for (int i = 0; i < 30; ++i) {
    const PqSpec spec = random_spec(rnd, FieldElement(Rational(rnd.rational(5))));
    const FiberIsoPair pair = fiber_isomorphism(spec);
    const RingSignature sig = spec.signature();
    const Polynomial unit = pair.phi.image(sig.y()).partial_derivative(sig.y());
    std::vector<Polynomial> at_zero;
    for (std::size_t v = 0; v < sig.num_vars(); ++v) {
      at_zero.push_back(sig.is_x(v) ? Polynomial(sig) : Polynomial::variable(sig, v));
    }
    CHECK(unit.substitute(at_zero) == Polynomial::constant(sig, 1));
  }
}

TEST_CASE("classification") {
  CHECK(classify(PqSpec(1, UnivariatePoly{-1, 1}, 1)).name() == "V_{0,1}");
  CHECK(classify(PqSpec(1, UnivariatePoly{-2, 1}, 1)).name() == "V_{1,1}");
  CHECK(classify(PqSpec(1, UnivariatePoly(), 0)).name() == "V_{0,0}");
  CHECK(classify(PqSpec(1, UnivariatePoly{1}, 0)).name() == "V_{1,0}");
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const IsoClass cls{a == 1, b == 1};
      CHECK(classify(cls.reference(2)) == cls);
    }
  }
}

TEST_CASE("classification depends only on q(c) and c") {
  oracle::Random rnd(33);
  for (int i = 0; i < 100; ++i) {
    const FieldElement& c = kLevels[static_cast<std::size_t>(rnd.integer(0, 5))];
    const PqSpec spec = random_spec(rnd, c);
    const PqSpec reduced(spec.n, UnivariatePoly::constant(spec.q_at_c()), c);
    CHECK(classify(spec) == classify(reduced));
    CHECK(isomorphic(spec, reduced));
  }
}

TEST_CASE("Q_k family is fiberwise isomorphic") {
  for (const FieldElement& c : kLevels) {
    for (unsigned k = 1; k <= 4; ++k) {
      CHECK(classify(PqSpec(1, q_power(k), c)) == classify(PqSpec(1, q_power(1), c)));
      for (unsigned k2 = 1; k2 <= 4; ++k2) CHECK(isomorphic(PqSpec(2, q_power(k), c), PqSpec(2, q_power(k2), c)));
    }
  }
  CHECK_FALSE(isomorphic(PqSpec(1, UnivariatePoly{-1, 1}, 1), PqSpec(1, UnivariatePoly{-2, 1}, 1)));
}

TEST_CASE("isomorphic requires equal dimension") {
  try {
    (void)isomorphic(PqSpec(1, UnivariatePoly{1}, 0), PqSpec(2, UnivariatePoly{1}, 0));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("spec json") {
  const PqSpec spec(3, UnivariatePoly{1, 0, -2}, FieldElement(Rational(-1, 2)));
  const Json j = spec.to_json();
  CHECK(j["n"] == 3);
  CHECK(j["c"] == "-1/2");
  const PqSpec back = PqSpec::from_json(j);
  CHECK(back.q == spec.q);
  CHECK(back.c == spec.c);
  CHECK(back.n == 3);
}
