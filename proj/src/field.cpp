#include "stably/field.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace stably {

namespace {

void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::size_t hash_mpz(const mpz_class& z) {
  const mpz_srcptr p = z.get_mpz_t();
  std::size_t h = static_cast<std::size_t>(p->_mp_size);
  const int limbs = std::abs(p->_mp_size);
  for (int i = 0; i < limbs; ++i) hash_combine(h, static_cast<std::size_t>(p->_mp_d[i]));
  return h;
}

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept(std::string_view word) {
    skip_space();
    if (text_.substr(pos_, word.size()) == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }
  bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

  // Unsigned rational: digits ["/" digits].
  Rational unsigned_rational() {
    const std::size_t start = pos_;
    mpz_class num = digits();
    mpz_class den = 1;
    if (accept('/')) {
      den = digits();
      if (den == 0) throw ParseError("zero denominator", start);
    }
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(q);
  }

  std::size_t pos() const { return pos_; }

 private:
  mpz_class digits() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected digits", start);
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

// ---------------------------------------------------------------- Rational

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(mpq_class value) : q_(std::move(value)) { q_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  Scanner s(text);
  const bool negative = s.accept('-');
  if (!negative) s.accept('+');
  Rational r = s.unsigned_rational();
  if (!s.at_end()) throw ParseError("trailing characters in rational", s.pos());
  return negative ? -r : r;
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  return Rational(mpq_class(1) / q_);
}

Rational Rational::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  mpq_class r;
  r.get_num() = num;
  r.get_den() = den;  // already coprime
  return Rational(r);
}

std::optional<Rational> Rational::sqrt() const {
  if (sign() < 0) return std::nullopt;
  return root(2);
}

std::optional<Rational> Rational::root(unsigned m) const {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "zeroth root");
  if (m == 1) return *this;
  if (sign() < 0 && m % 2 == 0) return std::nullopt;
  mpz_class num = ::abs(q_.get_num());
  mpz_class rn, rd;
  if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), m) == 0) return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), q_.get_den_mpz_t(), m) == 0) return std::nullopt;
  if (sign() < 0) rn = -rn;
  return Rational(mpq_class(rn, rd));
}

std::size_t Rational::hash() const noexcept {
  std::size_t h = hash_mpz(q_.get_num());
  hash_combine(h, hash_mpz(q_.get_den()));
  return h;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

// ------------------------------------------------------------ squarefree

std::pair<Rational, Rational> squarefree_decomposition(const Rational& d) {
  if (d.is_zero()) return {Rational(0), Rational(0)};
  // sqrt(p/q) = sqrt(p*q)/q
  const mpz_class den = d.denominator();
  mpz_class rem = ::abs(d.numerator()) * den;
  mpz_class core = 1;
  mpz_class square = 1;

  auto strip = [&](unsigned long f) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(rem.get_mpz_t(), f) != 0) {
      mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), f);
      ++e;
    }
    for (unsigned i = 0; i < e / 2; ++i) square *= f;
    if (e % 2 == 1) core *= f;
  };

  constexpr unsigned long kTrialLimit = 1000000UL;
  strip(2);
  for (unsigned long f = 3; f <= kTrialLimit; f += 2) {
    if (mpz_cmp_ui(rem.get_mpz_t(), 1) == 0) break;
    // rem has no factor below f, so if f*f > rem it is 1 or prime
    mpz_class ff = mpz_class(f) * f;
    if (ff > rem) break;
    strip(f);
  }
  if (rem > 1) {
    if (mpz_perfect_square_p(rem.get_mpz_t()) != 0) {
      mpz_class s;
      mpz_sqrt(s.get_mpz_t(), rem.get_mpz_t());
      square *= s;
    } else {
      core *= rem;
    }
  }
  if (d.sign() < 0) core = -core;
  return {Rational(mpq_class(core)), Rational(mpq_class(square, den))};
}

// --------------------------------------------------------- FieldElement

FieldElement::FieldElement(Rational a, Rational b, Rational d) : a_(std::move(a)) {
  if (b.is_zero() || d.is_zero()) return;
  auto [core, s] = squarefree_decomposition(d);
  if (core.is_one()) {
    a_ += b * s;
    return;
  }
  ext_ = std::make_shared<const Ext>(Ext{b * s, core});
}

FieldElement FieldElement::make(Rational a, Rational b, const Rational& d) {
  if (b.is_zero()) return FieldElement(std::move(a));
  return FieldElement(std::move(a), std::make_shared<const Ext>(Ext{std::move(b), d}));
}

FieldElement FieldElement::sqrt_of(const Rational& d) {
  if (d.sign() >= 0) {
    if (auto r = d.sqrt()) return FieldElement(*r);
  }
  return FieldElement(Rational(0), Rational(1), d);
}

Rational FieldElement::irrational_coefficient() const {
  return ext_ ? ext_->b : Rational(0);
}

Rational FieldElement::discriminant() const { return ext_ ? ext_->d : Rational(0); }

const Rational& FieldElement::as_rational() const {
  if (ext_) throw Error(ErrorCode::InvalidArgument, "field element " + str() + " is not rational");
  return a_;
}

const Rational* FieldElement::common_discriminant(const FieldElement& o) const {
  if (!ext_) return o.ext_ ? &o.ext_->d : nullptr;
  if (!o.ext_) return &ext_->d;
  if (ext_->d != o.ext_->d) {
    throw Error(ErrorCode::MixedDiscriminant,
                "mixed discriminants sqrt(" + ext_->d.str() + ") and sqrt(" + o.ext_->d.str() + ")");
  }
  return &ext_->d;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  const Rational* d = common_discriminant(o);
  a_ += o.a_;
  if (d) *this = make(std::move(a_), irrational_coefficient() + o.irrational_coefficient(), *d);
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  const Rational* d = common_discriminant(o);
  a_ -= o.a_;
  if (d) *this = make(std::move(a_), irrational_coefficient() - o.irrational_coefficient(), *d);
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  const Rational* d = common_discriminant(o);
  if (!d) {
    a_ *= o.a_;
    return *this;
  }
  const Rational b1 = irrational_coefficient();
  const Rational b2 = o.irrational_coefficient();
  Rational a = a_ * o.a_ + b1 * b2 * *d;
  Rational b = a_ * b2 + o.a_ * b1;
  const Rational dd = *d;
  *this = make(std::move(a), std::move(b), dd);
  return *this;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (!ext_) return FieldElement(a_.inverse());
  const Rational norm = a_ * a_ - ext_->b * ext_->b * ext_->d;
  return make(a_ / norm, -ext_->b / norm, ext_->d);
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
  if (!ext_ && !o.ext_) {
    a_ /= o.a_;
    return *this;
  }
  return *this *= o.inverse();
}

FieldElement FieldElement::operator-() const {
  if (!ext_) return FieldElement(-a_);
  return make(-a_, -ext_->b, ext_->d);
}

FieldElement FieldElement::conjugate() const {
  if (!ext_) return *this;
  return make(a_, -ext_->b, ext_->d);
}

FieldElement FieldElement::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  if (!ext_) return FieldElement(a_.pow(exponent));
  FieldElement result(1);
  FieldElement base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (a.a_ != b.a_) return false;
  if (!a.ext_ || !b.ext_) return !a.ext_ && !b.ext_;
  return a.ext_->b == b.ext_->b && a.ext_->d == b.ext_->d;
}

std::size_t FieldElement::hash() const noexcept {
  std::size_t h = a_.hash();
  if (ext_) {
    hash_combine(h, ext_->b.hash());
    hash_combine(h, ext_->d.hash());
  }
  return h;
}

double FieldElement::to_double() const {
  if (!ext_) return a_.to_double();
  const double d = ext_->d.to_double();
  if (d < 0) return std::numeric_limits<double>::quiet_NaN();
  return a_.to_double() + ext_->b.to_double() * std::sqrt(d);
}

std::string FieldElement::str() const {
  if (!ext_) return a_.str();
  const Rational& b = ext_->b;
  const std::string radical = (b.abs().is_one() ? "" : b.abs().str() + "*") + "sqrt(" + ext_->d.str() + ")";
  if (a_.is_zero()) return (b.sign() < 0 ? "-" : "") + radical;
  return a_.str() + (b.sign() < 0 ? "-" : "+") + radical;
}

FieldElement FieldElement::parse(std::string_view text) {
  Scanner s(text);

  // [sign] [rational ["*"]] "sqrt(" [sign] rational ")"
  auto radical_tail = [&](Rational coeff) -> FieldElement {
    if (!s.accept("sqrt")) throw ParseError("expected 'sqrt'", s.pos());
    s.expect('(');
    const bool neg = s.accept('-');
    Rational d = s.unsigned_rational();
    if (neg) d = -d;
    s.expect(')');
    return FieldElement(Rational(0), std::move(coeff), std::move(d));
  };
  auto signed_radical = [&](bool negative) -> FieldElement {
    Rational coeff(1);
    if (s.at_digit()) {
      coeff = s.unsigned_rational();
      s.expect('*');
    }
    return radical_tail(negative ? -coeff : coeff);
  };

  bool negative = s.accept('-');
  if (!negative) s.accept('+');
  FieldElement result;
  if (s.peek() == 's') {
    result = signed_radical(negative);
  } else {
    Rational a = s.unsigned_rational();
    if (negative) a = -a;
    if (s.accept('*')) {
      result = radical_tail(std::move(a));
    } else {
      result = FieldElement(std::move(a));
      const char c = s.peek();
      if (c == '+' || c == '-') {
        s.accept(c);
        result += signed_radical(c == '-');
      }
    }
  }
  if (!s.at_end()) throw ParseError("trailing characters in field element", s.pos());
  return result;
}

std::ostream& operator<<(std::ostream& os, const FieldElement& e) { return os << e.str(); }

// ------------------------------------------------------------- sqrt

std::optional<FieldElement> sqrt_in_field(const FieldElement& a, const Rational& ambient_discriminant) {
  Rational ambient(0);
  if (!ambient_discriminant.is_zero()) {
    ambient = squarefree_decomposition(ambient_discriminant).first;
    if (ambient.is_one()) ambient = Rational(0);
  }

  if (a.is_rational()) {
    const Rational& r = a.rational_part();
    if (auto root = r.sqrt()) return FieldElement(*root);
    if (ambient.is_zero()) return std::nullopt;
    // r = s^2 * D  =>  sqrt(r) = s*sqrt(D)
    if (auto s = (r / ambient).sqrt()) return FieldElement(Rational(0), *s, ambient);
    return std::nullopt;
  }

  const Rational d = a.discriminant();
  if (!ambient.is_zero() && ambient != d) {
    throw Error(ErrorCode::MixedDiscriminant,
                "element over sqrt(" + d.str() + ") in context sqrt(" + ambient.str() + ")");
  }
  // (x + y sqrt(d))^2 = A + B sqrt(d): x^2 + d y^2 = A, 2xy = B.
  const Rational& A = a.rational_part();
  const Rational B = a.irrational_coefficient();
  const auto norm_root = (A * A - B * B * d).sqrt();
  if (!norm_root) return std::nullopt;
  for (const Rational& candidate : {(A + *norm_root) / Rational(2), (A - *norm_root) / Rational(2)}) {
    if (candidate.is_zero()) continue;
    if (auto x = candidate.sqrt()) {
      const Rational y = B / (Rational(2) * *x);
      return FieldElement(*x, y, d);
    }
  }
  return std::nullopt;
}

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::MixedDiscriminant: return "MixedDiscriminant";
    case ErrorCode::NotASquare: return "NotASquare";
    case ErrorCode::SignatureMismatch: return "SignatureMismatch";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::ExceededCap: return "ExceededCap";
    case ErrorCode::NotAMultiple: return "NotAMultiple";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidWitness: return "InvalidWitness";
    case ErrorCode::Precondition: return "PreconditionViolation";
    case ErrorCode::NonzeroConstantTerm: return "NonzeroConstantTerm";
  }
  return "Unknown";
}

}  // namespace stably
