#ifndef STABLY_POLYNOMIAL_HPP
#define STABLY_POLYNOMIAL_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "stably/field.hpp"

namespace stably {

/// Ambient ring Q[x1..xn, y, z] or Q[x1..xn, y, z, w].
/// Variable indices: x_i -> i-1, y -> n, z -> n+1, w -> n+2.
struct RingSignature {
  int n = 1;
  bool has_w = false;

  RingSignature() = default;
  RingSignature(int n_, bool has_w_);

  std::size_t num_vars() const noexcept { return static_cast<std::size_t>(n) + (has_w ? 3 : 2); }
  std::size_t x(int i) const;  // 1-based, as in x1..xn
  std::size_t y() const noexcept { return static_cast<std::size_t>(n); }
  std::size_t z() const noexcept { return static_cast<std::size_t>(n) + 1; }
  std::size_t w() const;
  bool is_x(std::size_t var) const noexcept { return var < static_cast<std::size_t>(n); }

  std::string var_name(std::size_t var) const;
  std::optional<std::size_t> find_var(std::string_view name) const;
  std::string str() const;

  friend bool operator==(const RingSignature&, const RingSignature&) = default;
};

class Monomial {
 public:
  using Exponent = std::uint32_t;

  Monomial() = default;
  explicit Monomial(std::size_t num_vars) : e_(num_vars, 0) {}
  Monomial(std::initializer_list<Exponent> exps) : e_(exps) {}

  std::size_t size() const noexcept { return e_.size(); }
  Exponent operator[](std::size_t i) const noexcept { return e_[i]; }
  Exponent& operator[](std::size_t i) noexcept { return e_[i]; }

  std::uint64_t total_degree() const noexcept;
  /// Total degree in the first `n` variables (the x's).
  std::uint64_t x_degree(int n) const noexcept;
  bool is_one() const noexcept;
  bool divides(const Monomial& other) const noexcept;

  Monomial operator*(const Monomial& other) const;
  /// Requires divides(other) to hold for `this` dividing `other`.
  Monomial quotient_of(const Monomial& other) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
  std::size_t hash() const noexcept;

  /// Graded lexicographic comparison; w > z > y > xn > ... > x1 break ties.
  static int grlex_compare(const Monomial& a, const Monomial& b) noexcept;

 private:
  boost::container::small_vector<Exponent, 8> e_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    return Monomial::grlex_compare(a, b) > 0;
  }
};

struct Term {
  Monomial monomial;
  FieldElement coeff;
};

/// Current bound on the number of terms of any intermediate result.
/// Defaults to 10^6; STABLY_DISTINCT_TERM_LIMIT overrides it at first use.
std::size_t term_limit();
void set_term_limit(std::size_t limit);

/// Sparse polynomial with canonical, grlex-descending term storage and no
/// zero coefficients, so structural equality is polynomial equality.
class Polynomial {
 public:
  explicit Polynomial(RingSignature sig = RingSignature());

  static Polynomial constant(const RingSignature& sig, const FieldElement& c);
  static Polynomial variable(const RingSignature& sig, std::size_t var);
  static Polynomial monomial(const RingSignature& sig, Monomial m, FieldElement c = FieldElement(1));
  /// Combines duplicates, drops zeros and sorts.
  static Polynomial from_terms(const RingSignature& sig, std::vector<Term> terms);

  /// Grammar: terms joined by +/-; term = coefficient ["*"] factors;
  /// factor = var ["^" int]; a coefficient is a rational or a parenthesized
  /// field element. Whitespace is ignored.
  static Polynomial parse(const RingSignature& sig, std::string_view text);
  std::string str() const;

  const RingSignature& signature() const noexcept { return sig_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  FieldElement constant_term() const;
  const Term& leading_term() const;

  /// Degree in one variable; -1 for the zero polynomial.
  long degree(std::size_t var) const;
  long total_degree() const;
  /// Smallest / largest total x-degree over the terms; -1 for zero.
  long min_x_degree() const;
  long max_x_degree() const;
  bool involves(std::size_t var) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const FieldElement& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const FieldElement& c) { return a *= c; }
  friend Polynomial operator*(const FieldElement& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;
  Polynomial pow(unsigned exponent) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial partial_derivative(std::size_t var) const;

  /// Image under the ring map sending variable v to images[v]. The images
  /// share one target signature, which becomes the result's signature.
  Polynomial substitute(std::span<const Polynomial> images) const;

  FieldElement evaluate(std::span<const FieldElement> point) const;

  /// q with *this == divisor * q, or nullopt when the division leaves a
  /// remainder (single-divisor grlex division).
  std::optional<Polynomial> exact_divide(const Polynomial& divisor) const;

  /// Re-expresses the polynomial in `target`, which must agree on n. Dropping
  /// w requires the polynomial not to involve w.
  Polynomial embed(const RingSignature& target) const;

  /// Discards every term of total x-degree above `order`.
  Polynomial truncate_x_degree(std::uint64_t order) const;

 private:
  friend class TermAccumulator;
  void check_same_signature(const Polynomial& o, const char* op) const;

  RingSignature sig_;
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

/// x1^k * ... * xn^k.
Polynomial x_power_bracket(const RingSignature& sig, unsigned k);

/// Dense univariate polynomial in a formal variable t, lowest degree first.
class UnivariatePoly {
 public:
  UnivariatePoly() = default;
  explicit UnivariatePoly(std::vector<FieldElement> coefficients);
  UnivariatePoly(std::initializer_list<long> coefficients);

  static UnivariatePoly constant(const FieldElement& c);
  static UnivariatePoly monomial(unsigned degree, const FieldElement& c = FieldElement(1));
  /// Comma-separated coefficients, constant term first ("-1,1" is t-1).
  static UnivariatePoly parse_csv(std::string_view csv);
  std::string csv() const;
  std::string str(std::string_view var = "t") const;

  const std::vector<FieldElement>& coefficients() const noexcept { return c_; }
  FieldElement coeff(std::size_t i) const;
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  /// Indices of the nonzero coefficients, ascending.
  std::vector<std::size_t> support() const;

  FieldElement operator()(const FieldElement& t) const;
  /// q(p) by Horner's scheme.
  Polynomial compose(const Polynomial& p) const;
  UnivariatePoly derivative() const;
  /// t -> mu*t.
  UnivariatePoly scale_argument(const FieldElement& mu) const;

  UnivariatePoly& operator+=(const UnivariatePoly& o);
  UnivariatePoly& operator-=(const UnivariatePoly& o);
  friend UnivariatePoly operator+(UnivariatePoly a, const UnivariatePoly& b) { return a += b; }
  friend UnivariatePoly operator-(UnivariatePoly a, const UnivariatePoly& b) { return a -= b; }
  friend UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b);
  friend UnivariatePoly operator*(const FieldElement& c, const UnivariatePoly& a);
  UnivariatePoly pow(unsigned exponent) const;

  friend bool operator==(const UnivariatePoly&, const UnivariatePoly&) = default;

 private:
  void trim();
  std::vector<FieldElement> c_;
};

std::ostream& operator<<(std::ostream& os, const UnivariatePoly& q);

/// g with q(t) - q(c) = g(t) * (t - c), by synthetic division.
UnivariatePoly difference_quotient(const UnivariatePoly& q, const FieldElement& c);

/// r with q(t) - q(0) = 2t * r(t).
UnivariatePoly half_t_quotient(const UnivariatePoly& q);

/// Normal form of p modulo P_q - c, where P_q = x^[2]y + z^2 + x^[1]q(z^2):
/// every monomial divisible by x^[2]y is rewritten with
/// x^[2]y -> c - z^2 - x^[1]q(z^2) until none remains. Each rewrite lowers
/// the y-degree by one, so the number of rewrites is at most the sum over
/// y-levels of the terms present at that level; `steps` reports it.
Polynomial reduce_mod_relation(const Polynomial& p, const UnivariatePoly& q,
                               const FieldElement& c, std::size_t* steps = nullptr);

}  // namespace stably

#endif  // STABLY_POLYNOMIAL_HPP
