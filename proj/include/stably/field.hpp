#ifndef STABLY_FIELD_HPP
#define STABLY_FIELD_HPP

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "stably/errors.hpp"

namespace stably {

/// Arbitrary-precision rational in canonical form (positive denominator,
/// coprime numerator and denominator).
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT: implicit by design of the numeric tower
  Rational(long num, long den);
  explicit Rational(mpq_class value);

  /// Accepts "p" or "p/q" with an optional leading sign.
  static Rational parse(std::string_view text);
  std::string str() const;

  const mpq_class& value() const noexcept { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const noexcept { return sgn(q_) == 0; }
  bool is_one() const noexcept { return q_ == 1; }
  bool is_integer() const noexcept { return q_.get_den() == 1; }
  int sign() const noexcept { return sgn(q_); }
  double to_double() const { return q_.get_d(); }

  Rational inverse() const;
  Rational pow(long exponent) const;
  Rational abs() const { return Rational(::abs(q_)); }

  /// Non-negative rational square root, if one exists.
  std::optional<Rational> sqrt() const;
  /// Real rational m-th root (m >= 1); for even m only the positive root.
  std::optional<Rational> root(unsigned m) const;

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const noexcept;

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Element a + b*sqrt(d) of Q or of a single quadratic extension Q(sqrt(d)).
///
/// The discriminant is normalized to a squarefree integer, and elements with
/// b = 0 carry no discriminant at all, so they combine with any extension.
/// Mixing two elements with b != 0 over different discriminants throws
/// MixedDiscriminant.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(long value) : a_(value) {}  // NOLINT
  FieldElement(Rational value) : a_(std::move(value)) {}  // NOLINT
  FieldElement(Rational a, Rational b, Rational d);

  /// sqrt(d) as a field element (rational when d is a perfect square).
  static FieldElement sqrt_of(const Rational& d);

  /// Accepts rational text or "a+b*sqrt(d)" (also "a-b*sqrt(d)", "b*sqrt(d)").
  static FieldElement parse(std::string_view text);
  std::string str() const;

  bool is_rational() const noexcept { return ext_ == nullptr; }
  bool is_zero() const noexcept { return ext_ == nullptr && a_.is_zero(); }
  bool is_one() const noexcept { return ext_ == nullptr && a_.is_one(); }
  const Rational& rational_part() const noexcept { return a_; }
  Rational irrational_coefficient() const;
  /// Squarefree discriminant, or 0 for rational elements.
  Rational discriminant() const;
  /// Valid only when is_rational().
  const Rational& as_rational() const;

  FieldElement inverse() const;
  FieldElement pow(long exponent) const;
  /// a - b*sqrt(d).
  FieldElement conjugate() const;

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  FieldElement operator-() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b);

  std::size_t hash() const noexcept;
  /// Diagnostic only; never used for identity checks. NaN for d < 0.
  double to_double() const;

 private:
  struct Ext {
    Rational b;
    Rational d;
  };

  FieldElement(Rational a, std::shared_ptr<const Ext> ext)
      : a_(std::move(a)), ext_(std::move(ext)) {}
  static FieldElement make(Rational a, Rational b, const Rational& d);
  const Rational* common_discriminant(const FieldElement& o) const;

  Rational a_;
  std::shared_ptr<const Ext> ext_;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& e);

/// Square root of `a` inside the current field: a rational root if one
/// exists, else a root in Q(sqrt(ambient_discriminant)) (or in a's own
/// extension). Returns nullopt (NotASquare) otherwise. Pass 0 for "Q only".
std::optional<FieldElement> sqrt_in_field(const FieldElement& a,
                                          const Rational& ambient_discriminant = Rational(0));

/// Squarefree normalization: d = s^2 * core with core a squarefree integer.
/// Returns {core, s}. Full factorization is attempted for |numerator*denominator|
/// below 10^12; larger values keep any square factor above 10^6 in the core.
std::pair<Rational, Rational> squarefree_decomposition(const Rational& d);

}  // namespace stably

template <>
struct std::hash<stably::Rational> {
  std::size_t operator()(const stably::Rational& r) const noexcept { return r.hash(); }
};

template <>
struct std::hash<stably::FieldElement> {
  std::size_t operator()(const stably::FieldElement& e) const noexcept { return e.hash(); }
};

#endif  // STABLY_FIELD_HPP
