#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "stably/pq.hpp"

using namespace stably;

namespace {

Polynomial random_poly(oracle::Random& rnd, const RingSignature& sig, int terms, unsigned max_exp) {
  Polynomial p(sig);
  for (int i = 0; i < terms; ++i) {
    Monomial m(sig.num_vars());
    for (std::size_t v = 0; v < sig.num_vars(); ++v) m[v] = static_cast<unsigned>(rnd.integer(0, max_exp));
    p += Polynomial::monomial(sig, m, FieldElement(Rational(rnd.rational(20))));
  }
  return p;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("signature layout") {
  const RingSignature sig(3, true);
  CHECK(sig.num_vars() == 6);
  CHECK(sig.x(1) == 0);
  CHECK(sig.x(3) == 2);
  CHECK(sig.y() == 3);
  CHECK(sig.z() == 4);
  CHECK(sig.w() == 5);
  CHECK(sig.var_name(4) == "z");
  CHECK(code_of([] { RingSignature(2, false).w(); }) == ErrorCode::UnknownVariable);
}

TEST_CASE("parse and print") {
  const RingSignature s1(1, false);
  CHECK(Polynomial::parse(s1, "1/2*x1^2*y").str() == "1/2*x1^2*y");
  const RingSignature s2(2, false);
  const Polynomial p = Polynomial::parse(s2, "x1^2*x2^2*y + z^2");
  CHECK(p.size() == 2);
  CHECK(Polynomial::parse(s2, p.str()) == p);
  CHECK(Polynomial::parse(s2, "z*z - z^2").is_zero());
  CHECK(Polynomial::parse(s2, "x1 + 1").pow(2) == Polynomial::parse(s2, "x1^2 + 2*x1 + 1"));
  CHECK(Polynomial::parse(s2, "3/4 x1*y - 2*z").str() == "3/4*x1*y - 2*z");
  CHECK(code_of([&] { Polynomial::parse(s2, "x1^"); }) == ErrorCode::Parse);
  CHECK(code_of([&] { Polynomial::parse(s2, "x3"); }) == ErrorCode::Parse);
  CHECK(code_of([&] { Polynomial::parse(s2, "w"); }) == ErrorCode::Parse);
}

TEST_CASE("parse of print is the identity on random polynomials") {
  oracle::Random rnd(3);
  const RingSignature sig(2, true);
  for (int i = 0; i < 100; ++i) {
    const Polynomial p = random_poly(rnd, sig, 6, 3);
    CHECK(Polynomial::parse(sig, p.str()) == p);
  }
}

TEST_CASE("grlex order") {
  const RingSignature sig(1, false);
  const Polynomial p = Polynomial::parse(sig, "x1 + z^3 + y^2*z");
  CHECK(p.leading_term().monomial == Monomial{0, 2, 1});
  CHECK(p.str() == "y^2*z + z^3 + x1");
  CHECK(Monomial::grlex_compare(Monomial{1, 0, 0}, Monomial{0, 1, 0}) > 0);
  CHECK(Monomial::grlex_compare(Monomial{0, 0, 2}, Monomial{1, 0, 0}) > 0);
}

TEST_CASE("ring operations agree with the dense oracle") {
  oracle::Random rnd(7);
  const RingSignature sig(2, false);
  for (int i = 0; i < 60; ++i) {
    const Polynomial a = random_poly(rnd, sig, 5, 3), b = random_poly(rnd, sig, 5, 3);
    const auto da = oracle::from_library(a), db = oracle::from_library(b);
    CHECK(oracle::from_library(a + b) == oracle::add(da, db));
    CHECK(oracle::from_library(a - b) == oracle::sub(da, db));
    CHECK(oracle::from_library(a * b) == oracle::mul(da, db));
    CHECK(oracle::from_library(a.pow(3)) == oracle::power(da, 3, sig.num_vars()));
  }
}

TEST_CASE("substitution and evaluation agree with the dense oracle") {
  oracle::Random rnd(8);
  const RingSignature sig(1, true);
  for (int i = 0; i < 30; ++i) {
    const Polynomial f = random_poly(rnd, sig, 4, 3);
    std::vector<Polynomial> images;
    std::vector<oracle::Dense> dense_images;
    for (std::size_t v = 0; v < sig.num_vars(); ++v) {
      images.push_back(random_poly(rnd, sig, 3, 2));
      dense_images.push_back(oracle::from_library(images.back()));
    }
    CHECK(oracle::from_library(f.substitute(images)) ==
          oracle::substitute(oracle::from_library(f), dense_images, sig.num_vars()));

    std::vector<FieldElement> pt;
    std::vector<mpq_class> qpt;
    for (std::size_t v = 0; v < sig.num_vars(); ++v) {
      qpt.push_back(rnd.rational(10));
      pt.emplace_back(Rational(qpt.back()));
    }
    CHECK(f.evaluate(pt).as_rational().value() == oracle::evaluate(oracle::from_library(f), qpt));
  }
}

TEST_CASE("ring axioms") {
  oracle::Random rnd(9);
  const RingSignature sig(2, false);
  for (int i = 0; i < 50; ++i) {
    const Polynomial a = random_poly(rnd, sig, 4, 2), b = random_poly(rnd, sig, 4, 2), c = random_poly(rnd, sig, 4, 2);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a - a == Polynomial(sig));
  }
}

TEST_CASE("partial derivative") {
  const RingSignature sig(2, false);
  CHECK(Polynomial::parse(sig, "z^2").partial_derivative(sig.z()) == Polynomial::parse(sig, "2*z"));
  CHECK(Polynomial::parse(sig, "x1^2*x2^2*y").partial_derivative(sig.y()) == Polynomial::parse(sig, "x1^2*x2^2"));
  CHECK(code_of([&] { Polynomial::parse(sig, "z").partial_derivative(9); }) == ErrorCode::UnknownVariable);

  oracle::Random rnd(10);
  for (int i = 0; i < 30; ++i) {
    const Polynomial a = random_poly(rnd, sig, 4, 3), b = random_poly(rnd, sig, 4, 3);
    for (std::size_t v = 0; v < sig.num_vars(); ++v) {
      CHECK((a * b).partial_derivative(v) == a.partial_derivative(v) * b + a * b.partial_derivative(v));
    }
  }
}

TEST_CASE("exact division") {
  oracle::Random rnd(12);
  const RingSignature sig(1, false);
  for (int i = 0; i < 40; ++i) {
    const Polynomial a = random_poly(rnd, sig, 4, 3);
    const Polynomial b = random_poly(rnd, sig, 3, 2);
    if (b.is_zero()) continue;
    const auto q = (a * b).exact_divide(b);
    REQUIRE(q.has_value());
    CHECK(*q == a);
  }
  CHECK_FALSE(Polynomial::parse(sig, "x1 + 1").exact_divide(Polynomial::parse(sig, "x1")).has_value());
}

TEST_CASE("x power bracket") {
  CHECK(x_power_bracket(RingSignature(2, false), 2).str() == "x1^2*x2^2");
  CHECK(x_power_bracket(RingSignature(3, false), 0) == Polynomial::constant(RingSignature(3, false), 1));
  CHECK(x_power_bracket(RingSignature(1, false), 1).str() == "x1");
}

TEST_CASE("x-degree truncation") {
  const RingSignature sig(2, false);
  const Polynomial p = Polynomial::parse(sig, "x1*x2*y + x1 + z^5 + x1^2*x2");
  CHECK(p.truncate_x_degree(1) == Polynomial::parse(sig, "x1 + z^5"));
  CHECK(p.min_x_degree() == 0);
  CHECK(p.max_x_degree() == 3);
}

TEST_CASE("term limit guards expansion") {
  const RingSignature sig(3, false);
  const Polynomial p = Polynomial::parse(sig, "x1 + x2 + x3 + y + z + 1");
  const std::size_t saved = term_limit();
  set_term_limit(50);
  CHECK(code_of([&] { (void)p.pow(6); }) == ErrorCode::ResourceLimit);
  set_term_limit(saved);
  CHECK(p.pow(6).size() > 50);
}

TEST_CASE("univariate helpers against long division") {
  oracle::Random rnd(13);
  for (int i = 0; i < 100; ++i) {
    oracle::Coeffs q;
    const long deg = rnd.integer(0, 6);
    for (long j = 0; j <= deg; ++j) q.push_back(rnd.rational(20));
    q = oracle::trim(q);
    const UnivariatePoly uq = oracle::to_univariate(q);
    const mpq_class c = rnd.rational(5);

    CHECK(oracle::rational_coeffs(difference_quotient(uq, FieldElement(Rational(c)))) ==
          oracle::divide_by_linear(q, c));
    CHECK(oracle::rational_coeffs(half_t_quotient(uq)) == oracle::half_shift(q));
    CHECK(uq(FieldElement(Rational(c))).as_rational().value() == oracle::horner(q, c));
    CHECK(UnivariatePoly::parse_csv(uq.csv()) == uq);
  }
  CHECK(difference_quotient(UnivariatePoly{1, 0, 0, 1}, FieldElement(2)).str() == "t^2 + 2*t + 4");
  CHECK(UnivariatePoly::parse_csv("-1,1,0,0").degree() == 1);
}

TEST_CASE("P_q construction and relation") {
  const PqSpec spec(1, UnivariatePoly{-1, 1}, FieldElement(0));
  CHECK(build_Pq(spec) == Polynomial::parse(spec.signature(), "x1^2*y + z^2 + x1*z^2 - x1"));
  const PqSpec spec2(2, UnivariatePoly{0, 0, 3}, FieldElement(Rational(1, 2)));
  CHECK(spec2.relation() == Polynomial::parse(spec2.signature(), "x1^2*x2^2*y + z^2 + 3*x1*x2*z^4 - 1/2"));
  CHECK(PqSpec::from_json(spec2.to_json()).relation() == spec2.relation());
}

TEST_CASE("reduction modulo the relation") {
  oracle::Random rnd(14);
  const PqSpec spec(1, UnivariatePoly{-1, 2}, FieldElement(3));
  const RingSignature sig = spec.signature();
  for (int i = 0; i < 30; ++i) {
    const Polynomial a = random_poly(rnd, sig, 4, 3), h = random_poly(rnd, sig, 3, 2);
    // Normal form is a function of the residue class and idempotent.
    const Polynomial na = reduce_mod_relation(a, spec);
    CHECK(reduce_mod_relation(a + h * spec.relation(), spec) == na);
    CHECK(reduce_mod_relation(na, spec) == na);
    CHECK(reduce_mod_relation(h * spec.relation(), spec).is_zero());
  }
}
