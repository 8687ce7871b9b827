// Reference implementations used only by the tests. Nothing here calls the
// library's arithmetic: values come in as plain rationals and are recomputed
// with dense maps and schoolbook loops.
#ifndef STABLY_TESTS_ORACLES_HPP
#define STABLY_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "stably/polynomial.hpp"

namespace oracle {

using Exps = std::vector<unsigned>;
using Dense = std::map<Exps, mpq_class>;

inline void add_term(Dense& p, const Exps& e, const mpq_class& c) {
  if (sgn(c) == 0) return;
  auto [it, fresh] = p.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) p.erase(it);
  }
}

// Rational-coefficient polynomials only.
inline Dense from_library(const stably::Polynomial& p) {
  Dense out;
  for (const stably::Term& t : p.terms()) {
    Exps e(t.monomial.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = t.monomial[i];
    add_term(out, e, t.coeff.as_rational().value());
  }
  return out;
}

inline Dense constant(std::size_t nvars, const mpq_class& c) {
  Dense out;
  add_term(out, Exps(nvars, 0), c);
  return out;
}

inline Dense variable(std::size_t nvars, std::size_t var) {
  Exps e(nvars, 0);
  e[var] = 1;
  return Dense{{e, mpq_class(1)}};
}

inline Dense add(const Dense& a, const Dense& b) {
  Dense out = a;
  for (const auto& [e, c] : b) add_term(out, e, c);
  return out;
}

inline Dense scale(const Dense& a, const mpq_class& s) {
  Dense out;
  for (const auto& [e, c] : a) add_term(out, e, c * s);
  return out;
}

inline Dense sub(const Dense& a, const Dense& b) { return add(a, scale(b, -1)); }

inline Dense mul(const Dense& a, const Dense& b) {
  Dense out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Exps e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      add_term(out, e, ca * cb);
    }
  }
  return out;
}

inline Dense power(const Dense& a, unsigned k, std::size_t nvars) {
  Dense out = constant(nvars, 1);
  for (unsigned i = 0; i < k; ++i) out = mul(out, a);
  return out;
}

// f(images[0], images[1], ...) by expanding every monomial separately.
inline Dense substitute(const Dense& f, const std::vector<Dense>& images, std::size_t target_vars) {
  Dense out;
  for (const auto& [e, c] : f) {
    Dense term = constant(target_vars, c);
    for (std::size_t i = 0; i < e.size(); ++i) term = mul(term, power(images[i], e[i], target_vars));
    out = add(out, term);
  }
  return out;
}

inline mpq_class evaluate(const Dense& f, const std::vector<mpq_class>& point) {
  mpq_class acc = 0;
  for (const auto& [e, c] : f) {
    mpq_class term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
    }
    acc += term;
  }
  return acc;
}

inline bool equal(const Dense& a, const Dense& b) { return a == b; }

// ---------------------------------------------------------- univariates

using Coeffs = std::vector<mpq_class>;  // constant term first

inline Coeffs trim(Coeffs c) {
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
  return c;
}

inline Coeffs rational_coeffs(const stably::UnivariatePoly& q) {
  Coeffs out;
  for (const auto& c : q.coefficients()) out.push_back(c.as_rational().value());
  return out;
}

inline mpq_class horner(const Coeffs& q, const mpq_class& t) {
  mpq_class acc = 0;
  for (auto it = q.rbegin(); it != q.rend(); ++it) acc = acc * t + *it;
  return acc;
}

// Long division of q(t) - q(c) by (t - c).
inline Coeffs divide_by_linear(const Coeffs& q, const mpq_class& c) {
  if (q.size() <= 1) return {};
  Coeffs quotient(q.size() - 1);
  mpq_class carry = 0;
  for (std::size_t i = q.size() - 1; i >= 1; --i) {
    carry = q[i] + carry * c;
    quotient[i - 1] = carry;
  }
  return trim(quotient);
}

// (q(t) - q(0)) / (2t)
inline Coeffs half_shift(const Coeffs& q) {
  Coeffs out;
  for (std::size_t i = 1; i < q.size(); ++i) out.push_back(q[i] / 2);
  return trim(out);
}

// ----------------------------------------------------- exponential series

// Coefficients e_0..e_N of exp(u(t)) for u with u_0 = 0, from E' = u'E:
//   m e_m = sum_{k=1}^{m} k u_k e_{m-k}.
inline Coeffs exp_coeffs(const Coeffs& u, unsigned order) {
  Coeffs e(order + 1, 0);
  e[0] = 1;
  for (unsigned m = 1; m <= order; ++m) {
    mpq_class acc = 0;
    for (unsigned k = 1; k <= m; ++k) {
      if (k < u.size()) acc += mpq_class(k) * u[k] * e[m - k];
    }
    e[m] = acc / m;
  }
  return e;
}

inline Coeffs series_mul(const Coeffs& a, const Coeffs& b, unsigned order) {
  Coeffs out(order + 1, 0);
  for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// ----------------------------------------------------- hypersurface oracle

struct Witness {
  mpq_class lambda, mu, epsilon;
};

// Exact rational square root, if any.
inline std::optional<mpq_class> rational_sqrt(const mpq_class& a) {
  if (sgn(a) < 0) return std::nullopt;
  mpz_class num = a.get_num(), den = a.get_den();
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return mpq_class(rn, rd);
}

// A scaling x1 -> a x1, y -> b y, z -> g z carries P_q1 - c1 to mu (P_q2 - c2)
// iff g^2 = mu, a^2 b = mu, a q1(mu t) = mu q2(t) and c1 = mu c2. With
// lambda = a / mu this is q2 = lambda q1(mu t), and epsilon = 1/g.
inline bool scaling_fits(const Coeffs& q1, const mpq_class& c1, const Coeffs& q2, const mpq_class& c2,
                         const mpq_class& mu, mpq_class* lambda_out) {
  if (c1 != mu * c2) return false;
  if (q1.size() != q2.size()) return false;
  if (q1.empty()) {
    *lambda_out = 1;
    return true;
  }
  const std::size_t top = q1.size() - 1;
  mpq_class mu_pow = 1;
  for (std::size_t i = 0; i < top; ++i) mu_pow *= mu;
  const mpq_class lambda = q2[top] / (q1[top] * mu_pow);
  mpq_class m = 1;
  for (std::size_t i = 0; i < q1.size(); ++i) {
    if (lambda * q1[i] * m != q2[i]) return false;
    m *= mu;
  }
  *lambda_out = lambda;
  return true;
}

// Exhaustive search over rational mu. For integer coefficients in [-2, 2]
// every ratio of two nonzero coefficient products lies in +-{1/4, 1/2, 1, 2, 4},
// so a rational mu with mu^g equal to such a ratio is one of these values;
// with both levels nonzero mu = c1/c2 is forced.
inline std::optional<Witness> rational_witness(const Coeffs& q1, const mpq_class& c1, const Coeffs& q2,
                                               const mpq_class& c2) {
  std::vector<mpq_class> candidates;
  for (int s : {1, -1}) {
    for (const mpq_class m : {mpq_class(1), mpq_class(2), mpq_class(4), mpq_class(1, 2), mpq_class(1, 4)}) {
      candidates.push_back(s * m);
    }
  }
  if (sgn(c1) != 0 && sgn(c2) != 0) candidates.push_back(c1 / c2);
  for (const mpq_class& mu : candidates) {
    mpq_class lambda;
    if (!scaling_fits(q1, c1, q2, c2, mu, &lambda)) continue;
    const auto eps = rational_sqrt(1 / mu);
    if (eps) return Witness{lambda, mu, *eps};
  }
  return std::nullopt;
}

// Floating-point search over complex mu of the form 2^{k/6} e^{2 pi i m / 12},
// which contains every root of mu^g = +-2^j for g <= 3, plus mu = c1/c2.
inline bool complex_scaling_exists(const Coeffs& q1, const mpq_class& c1, const Coeffs& q2, const mpq_class& c2) {
  using C = std::complex<double>;
  if (q1.size() != q2.size()) return false;
  if ((sgn(c1) == 0) != (sgn(c2) == 0)) return false;
  std::vector<C> candidates;
  if (sgn(c1) != 0) {
    candidates.push_back(C(mpq_class(c1 / c2).get_d(), 0));
  } else {
    for (int k = -12; k <= 12; ++k) {
      for (int m = 0; m < 12; ++m) candidates.push_back(std::polar(std::pow(2.0, k / 6.0), 2 * M_PI * m / 12));
    }
  }
  const double tol = 1e-9;
  for (const C& mu : candidates) {
    if (std::abs(c1.get_d() - mu * c2.get_d()) > tol) continue;
    if (q1.empty()) return true;
    const std::size_t top = q1.size() - 1;
    const C lambda = q2[top].get_d() / (q1[top].get_d() * std::pow(mu, static_cast<double>(top)));
    bool ok = true;
    C m = 1;
    for (std::size_t i = 0; i < q1.size() && ok; ++i) {
      ok = std::abs(lambda * q1[i].get_d() * m - q2[i].get_d()) < tol;
      m *= mu;
    }
    if (ok) return true;
  }
  return false;
}

// ------------------------------------------------------------ generators

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  // p/q with |p| <= bound, 1 <= q <= bound.
  mpq_class rational(long bound) {
    mpq_class r(integer(-bound, bound), integer(1, bound));
    r.canonicalize();
    return r;
  }

  mpq_class nonzero_rational(long bound) {
    while (true) {
      mpq_class r = rational(bound);
      if (sgn(r) != 0) return r;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline stably::Rational to_rational(const mpq_class& q) { return stably::Rational(q); }

inline stably::UnivariatePoly to_univariate(const Coeffs& c) {
  std::vector<stably::FieldElement> fe;
  for (const auto& x : c) fe.emplace_back(stably::Rational(x));
  return stably::UnivariatePoly(fe);
}

}  // namespace oracle

#endif  // STABLY_TESTS_ORACLES_HPP
