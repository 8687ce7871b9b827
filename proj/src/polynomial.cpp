#include "stably/polynomial.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>
#include <unordered_map>

namespace stably {

// ------------------------------------------------------------ signature

RingSignature::RingSignature(int n_, bool has_w_) : n(n_), has_w(has_w_) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "ring signature needs n >= 1");
}

std::size_t RingSignature::x(int i) const {
  if (i < 1 || i > n) throw Error(ErrorCode::UnknownVariable, "x" + std::to_string(i) + " not in " + str());
  return static_cast<std::size_t>(i - 1);
}

std::size_t RingSignature::w() const {
  if (!has_w) throw Error(ErrorCode::UnknownVariable, "w not in " + str());
  return static_cast<std::size_t>(n) + 2;
}

std::string RingSignature::var_name(std::size_t var) const {
  if (var < static_cast<std::size_t>(n)) return "x" + std::to_string(var + 1);
  if (var == y()) return "y";
  if (var == z()) return "z";
  if (has_w && var == z() + 1) return "w";
  throw Error(ErrorCode::UnknownVariable, "variable index " + std::to_string(var) + " not in " + str());
}

std::optional<std::size_t> RingSignature::find_var(std::string_view name) const {
  if (name == "y") return y();
  if (name == "z") return z();
  if (name == "w") return has_w ? std::optional<std::size_t>(z() + 1) : std::nullopt;
  if (name.size() >= 2 && name[0] == 'x' && name[1] != '0') {
    long i = 0;
    for (char c : name.substr(1)) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      i = i * 10 + (c - '0');
      if (i > n) return std::nullopt;
    }
    if (i >= 1) return static_cast<std::size_t>(i - 1);
  }
  return std::nullopt;
}

std::string RingSignature::str() const {
  return "Q[x1..x" + std::to_string(n) + ",y,z" + (has_w ? ",w]" : "]");
}

// ------------------------------------------------------------- monomial

std::uint64_t Monomial::total_degree() const noexcept {
  std::uint64_t d = 0;
  for (Exponent e : e_) d += e;
  return d;
}

std::uint64_t Monomial::x_degree(int n) const noexcept {
  std::uint64_t d = 0;
  for (int i = 0; i < n && static_cast<std::size_t>(i) < e_.size(); ++i) d += e_[static_cast<std::size_t>(i)];
  return d;
}

bool Monomial::is_one() const noexcept {
  return std::all_of(e_.begin(), e_.end(), [](Exponent e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const noexcept {
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > other.e_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += other.e_[i];
  return r;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial r = other;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= e_[i];
  return r;
}

std::size_t Monomial::hash() const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (Exponent e : e_) {
    h ^= e;
    h *= 0x100000001b3ULL;
  }
  return h;
}

int Monomial::grlex_compare(const Monomial& a, const Monomial& b) noexcept {
  const std::uint64_t da = a.total_degree();
  const std::uint64_t db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.e_.size(); ++i) {
    if (a.e_[i] != b.e_[i]) return a.e_[i] < b.e_[i] ? -1 : 1;
  }
  return 0;
}

// ---------------------------------------------------------- term limit

namespace {

std::atomic<std::size_t>& limit_storage() {
  static std::atomic<std::size_t> limit = [] {
    std::size_t value = 1000000;
    if (const char* env = std::getenv("STABLY_DISTINCT_TERM_LIMIT")) {
      char* end = nullptr;
      const unsigned long long parsed = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && parsed > 0) value = static_cast<std::size_t>(parsed);
    }
    return value;
  }();
  return limit;
}

[[noreturn]] void throw_resource_limit(std::size_t size) {
  throw Error(ErrorCode::ResourceLimit, "intermediate result reached " + std::to_string(size) +
                                            " terms (limit " + std::to_string(term_limit()) + ")");
}

}  // namespace

std::size_t term_limit() { return limit_storage().load(); }
void set_term_limit(std::size_t limit) { limit_storage().store(limit); }

// ------------------------------------------------------- accumulation

class TermAccumulator {
 public:
  explicit TermAccumulator(const RingSignature& sig) : sig_(sig), limit_(term_limit()) {}

  void add(const Monomial& m, const FieldElement& c) {
    auto [it, inserted] = map_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
    } else if (map_.size() > limit_) {
      throw_resource_limit(map_.size());
    }
  }

  void add(const Polynomial& p) {
    for (const Term& t : p.terms_) add(t.monomial, t.coeff);
  }

  void add_product(const Polynomial& a, const Polynomial& b) {
    const Polynomial& outer = a.size() <= b.size() ? a : b;
    const Polynomial& inner = a.size() <= b.size() ? b : a;
    if (map_.empty()) map_.reserve(std::min(outer.size() * inner.size(), limit_));
    for (const Term& s : outer.terms_) {
      for (const Term& t : inner.terms_) add(s.monomial * t.monomial, s.coeff * t.coeff);
    }
  }

  Polynomial finish() {
    std::vector<Term> terms;
    terms.reserve(map_.size());
    for (auto& [m, c] : map_) {
      if (!c.is_zero()) terms.push_back(Term{m, std::move(c)});
    }
    map_.clear();
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
      return Monomial::grlex_compare(a.monomial, b.monomial) > 0;
    });
    Polynomial p(sig_);
    p.terms_ = std::move(terms);
    return p;
  }

 private:
  RingSignature sig_;
  std::size_t limit_;
  std::unordered_map<Monomial, FieldElement, MonomialHash> map_;
};

// ---------------------------------------------------------- polynomial

Polynomial::Polynomial(RingSignature sig) : sig_(sig) {}

Polynomial Polynomial::constant(const RingSignature& sig, const FieldElement& c) {
  return monomial(sig, Monomial(sig.num_vars()), c);
}

Polynomial Polynomial::variable(const RingSignature& sig, std::size_t var) {
  if (var >= sig.num_vars()) {
    throw Error(ErrorCode::UnknownVariable, "variable index " + std::to_string(var) + " not in " + sig.str());
  }
  Monomial m(sig.num_vars());
  m[var] = 1;
  return monomial(sig, std::move(m));
}

Polynomial Polynomial::monomial(const RingSignature& sig, Monomial m, FieldElement c) {
  if (m.size() != sig.num_vars()) throw Error(ErrorCode::SignatureMismatch, "monomial length does not match " + sig.str());
  Polynomial p(sig);
  if (!c.is_zero()) p.terms_.push_back(Term{std::move(m), std::move(c)});
  return p;
}

Polynomial Polynomial::from_terms(const RingSignature& sig, std::vector<Term> terms) {
  TermAccumulator acc(sig);
  for (Term& t : terms) {
    if (t.monomial.size() != sig.num_vars()) {
      throw Error(ErrorCode::SignatureMismatch, "monomial length does not match " + sig.str());
    }
    acc.add(t.monomial, t.coeff);
  }
  return acc.finish();
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.is_one());
}

FieldElement Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coeff;
  return FieldElement(0);
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw Error(ErrorCode::InvalidArgument, "zero polynomial has no leading term");
  return terms_.front();
}

long Polynomial::degree(std::size_t var) const {
  if (var >= sig_.num_vars()) throw Error(ErrorCode::UnknownVariable, "variable index out of range");
  if (terms_.empty()) return -1;
  long d = 0;
  for (const Term& t : terms_) d = std::max<long>(d, t.monomial[var]);
  return d;
}

long Polynomial::total_degree() const {
  return terms_.empty() ? -1 : static_cast<long>(terms_.front().monomial.total_degree());
}

long Polynomial::min_x_degree() const {
  if (terms_.empty()) return -1;
  std::uint64_t d = terms_.front().monomial.x_degree(sig_.n);
  for (const Term& t : terms_) d = std::min(d, t.monomial.x_degree(sig_.n));
  return static_cast<long>(d);
}

long Polynomial::max_x_degree() const {
  if (terms_.empty()) return -1;
  std::uint64_t d = 0;
  for (const Term& t : terms_) d = std::max(d, t.monomial.x_degree(sig_.n));
  return static_cast<long>(d);
}

bool Polynomial::involves(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(), [var](const Term& t) { return t.monomial[var] > 0; });
}

void Polynomial::check_same_signature(const Polynomial& o, const char* op) const {
  if (!(sig_ == o.sig_)) {
    throw Error(ErrorCode::SignatureMismatch,
                std::string(op) + ": " + sig_.str() + " vs " + o.sig_.str());
  }
}

namespace {

template <class Combine>
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, Combine combine,
                              bool negate_b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int cmp;
    if (i == a.size()) cmp = -1;
    else if (j == b.size()) cmp = 1;
    else cmp = Monomial::grlex_compare(a[i].monomial, b[j].monomial);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back(negate_b ? Term{b[j].monomial, -b[j].coeff} : b[j]);
      ++j;
    } else {
      FieldElement c = combine(a[i].coeff, b[j].coeff);
      if (!c.is_zero()) out.push_back(Term{a[i].monomial, std::move(c)});
      ++i;
      ++j;
    }
  }
  if (out.size() > term_limit()) throw_resource_limit(out.size());
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_same_signature(o, "add");
  terms_ = merge_terms(terms_, o.terms_, [](const FieldElement& x, const FieldElement& y) { return x + y; }, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_same_signature(o, "sub");
  terms_ = merge_terms(terms_, o.terms_, [](const FieldElement& x, const FieldElement& y) { return x - y; }, true);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_same_signature(b, "mul");
  Polynomial r(a.sig_);
  if (a.is_zero() || b.is_zero()) return r;
  // Multiplication by a single term preserves grlex order.
  if (a.size() == 1 || b.size() == 1) {
    const Term& s = a.size() == 1 ? a.terms_.front() : b.terms_.front();
    const Polynomial& other = a.size() == 1 ? b : a;
    r.terms_.reserve(other.size());
    for (const Term& t : other.terms_) r.terms_.push_back(Term{s.monomial * t.monomial, s.coeff * t.coeff});
    return r;
  }
  TermAccumulator acc(a.sig_);
  acc.add_product(a, b);
  return acc.finish();
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial& Polynomial::operator*=(const FieldElement& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (Term& t : terms_) t.coeff *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (Term& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(sig_, FieldElement(1));
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!(a.sig_ == b.sig_) || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].monomial == b.terms_[i].monomial) || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
  }
  return true;
}

Polynomial Polynomial::partial_derivative(std::size_t var) const {
  if (var >= sig_.num_vars()) {
    throw Error(ErrorCode::UnknownVariable, "variable index " + std::to_string(var) + " not in " + sig_.str());
  }
  Polynomial r(sig_);
  for (const Term& t : terms_) {
    const auto e = t.monomial[var];
    if (e == 0) continue;
    Monomial m = t.monomial;
    m[var] = e - 1;
    r.terms_.push_back(Term{std::move(m), t.coeff * FieldElement(static_cast<long>(e))});
  }
  return r;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> images) const {
  if (images.size() != sig_.num_vars()) {
    throw Error(ErrorCode::SignatureMismatch, "substitution needs one image per variable of " + sig_.str());
  }
  const RingSignature target = images.front().signature();
  for (const Polynomial& img : images) {
    if (!(img.signature() == target)) throw Error(ErrorCode::SignatureMismatch, "substitution images disagree on signature");
  }

  // Variables with single-term images are folded into the term directly;
  // the rest are grouped so each power product is formed once.
  std::vector<std::size_t> general;
  for (std::size_t v = 0; v < images.size(); ++v) {
    if (images[v].size() > 1) general.push_back(v);
  }

  struct KeyHash {
    std::size_t operator()(const std::vector<Monomial::Exponent>& k) const noexcept {
      std::size_t h = 0xcbf29ce484222325ULL;
      for (auto e : k) {
        h ^= e;
        h *= 0x100000001b3ULL;
      }
      return h;
    }
  };
  std::unordered_map<std::vector<Monomial::Exponent>, std::vector<Term>, KeyHash> groups;

  for (const Term& t : terms_) {
    FieldElement c = t.coeff;
    Monomial m(target.num_vars());
    bool vanished = false;
    std::vector<Monomial::Exponent> key;
    key.reserve(general.size());
    std::size_t gi = 0;
    for (std::size_t v = 0; v < images.size(); ++v) {
      const auto e = t.monomial[v];
      if (gi < general.size() && general[gi] == v) {
        key.push_back(e);
        ++gi;
        continue;
      }
      if (e == 0) continue;
      if (images[v].is_zero()) {
        vanished = true;
        break;
      }
      const Term& img = images[v].terms_.front();
      c *= img.coeff.pow(e);
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += img.monomial[i] * e;
    }
    if (!vanished) groups[key].push_back(Term{std::move(m), std::move(c)});
  }

  // powers[g][k] = images[general[g]]^k, filled on demand
  std::vector<std::vector<Polynomial>> powers(general.size());
  auto power = [&](std::size_t g, Monomial::Exponent k) -> const Polynomial& {
    auto& cache = powers[g];
    if (cache.empty()) cache.push_back(constant(target, FieldElement(1)));
    while (cache.size() <= k) cache.push_back(cache.back() * images[general[g]]);
    return cache[k];
  };

  TermAccumulator acc(target);
  for (auto& [key, terms] : groups) {
    Polynomial coeff = from_terms(target, std::move(terms));
    for (std::size_t g = 0; g + 1 < general.size(); ++g) {
      if (key[g] > 0) coeff *= power(g, key[g]);
    }
    if (!general.empty() && key.back() > 0) {
      acc.add_product(coeff, power(general.size() - 1, key.back()));
    } else {
      acc.add(coeff);
    }
  }
  return acc.finish();
}

FieldElement Polynomial::evaluate(std::span<const FieldElement> point) const {
  if (point.size() != sig_.num_vars()) {
    throw Error(ErrorCode::SignatureMismatch, "evaluation point needs one value per variable of " + sig_.str());
  }
  std::vector<std::vector<FieldElement>> powers(point.size());
  auto power = [&](std::size_t v, Monomial::Exponent k) -> const FieldElement& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(FieldElement(1));
    while (cache.size() <= k) cache.push_back(cache.back() * point[v]);
    return cache[k];
  };
  FieldElement sum(0);
  for (const Term& t : terms_) {
    FieldElement term = t.coeff;
    for (std::size_t v = 0; v < point.size(); ++v) {
      if (t.monomial[v] > 0) term *= power(v, t.monomial[v]);
    }
    sum += term;
  }
  return sum;
}

std::optional<Polynomial> Polynomial::exact_divide(const Polynomial& divisor) const {
  check_same_signature(divisor, "exact_divide");
  if (divisor.is_zero()) throw Error(ErrorCode::DivisionByZero, "exact division by the zero polynomial");
  Polynomial q(sig_);
  if (is_zero()) return q;

  const Term& lead = divisor.terms_.front();
  const FieldElement lead_inv = lead.coeff.inverse();
  if (divisor.size() == 1) {
    q.terms_.reserve(terms_.size());
    for (const Term& t : terms_) {
      if (!lead.monomial.divides(t.monomial)) return std::nullopt;
      q.terms_.push_back(Term{lead.monomial.quotient_of(t.monomial), t.coeff * lead_inv});
    }
    return q;
  }

  std::map<Monomial, FieldElement, GrlexGreater> rem;
  for (const Term& t : terms_) rem.emplace(t.monomial, t.coeff);
  const std::size_t limit = term_limit();
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!lead.monomial.divides(top->first)) return std::nullopt;
    const Monomial m = lead.monomial.quotient_of(top->first);
    const FieldElement c = top->second * lead_inv;
    rem.erase(top);
    for (std::size_t i = 1; i < divisor.terms_.size(); ++i) {
      const Term& d = divisor.terms_[i];
      Monomial dm = m * d.monomial;
      FieldElement dc = c * d.coeff;
      auto [it, inserted] = rem.try_emplace(std::move(dm), -dc);
      if (!inserted) {
        it->second -= dc;
        if (it->second.is_zero()) rem.erase(it);
      }
    }
    q.terms_.push_back(Term{m, c});
    if (rem.size() > limit || q.terms_.size() > limit) throw_resource_limit(std::max(rem.size(), q.terms_.size()));
  }
  return q;
}

Polynomial Polynomial::embed(const RingSignature& target) const {
  if (target.n != sig_.n) {
    throw Error(ErrorCode::SignatureMismatch, "cannot embed " + sig_.str() + " into " + target.str());
  }
  if (target == sig_) return *this;
  Polynomial r(target);
  r.terms_.reserve(terms_.size());
  for (const Term& t : terms_) {
    Monomial m(target.num_vars());
    for (std::size_t v = 0; v < t.monomial.size(); ++v) {
      if (v < m.size()) {
        m[v] = t.monomial[v];
      } else if (t.monomial[v] != 0) {
        throw Error(ErrorCode::SignatureMismatch, "polynomial involves w; cannot drop it");
      }
    }
    r.terms_.push_back(Term{std::move(m), t.coeff});
  }
  return r;
}

Polynomial Polynomial::truncate_x_degree(std::uint64_t order) const {
  Polynomial r(sig_);
  for (const Term& t : terms_) {
    if (t.monomial.x_degree(sig_.n) <= order) r.terms_.push_back(t);
  }
  return r;
}

// ------------------------------------------------------- text format

namespace {

std::string monomial_text(const RingSignature& sig, const Monomial& m) {
  std::string out;
  for (std::size_t v = 0; v < m.size(); ++v) {
    if (m[v] == 0) continue;
    if (!out.empty()) out += '*';
    out += sig.var_name(v);
    if (m[v] > 1) out += '^' + std::to_string(m[v]);
  }
  return out;
}

class PolyParser {
 public:
  PolyParser(const RingSignature& sig, std::string_view text) : sig_(sig), text_(text) {}

  Polynomial parse() {
    TermAccumulator acc(sig_);
    skip();
    if (pos_ >= text_.size()) throw ParseError("empty polynomial", pos_);
    bool negative = false;
    if (peek() == '-' || peek() == '+') negative = text_[pos_++] == '-';
    while (true) {
      Term t = term();
      if (negative) t.coeff = -t.coeff;
      acc.add(t.monomial, t.coeff);
      skip();
      if (pos_ >= text_.size()) break;
      const char c = peek();
      if (c != '+' && c != '-') throw ParseError("expected '+' or '-'", pos_);
      negative = c == '-';
      ++pos_;
    }
    return acc.finish();
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool at_var() {
    const char c = peek();
    return c == 'x' || c == 'y' || c == 'z' || c == 'w';
  }

  Monomial::Exponent number() {
    skip();
    const std::size_t start = pos_;
    unsigned long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<unsigned>(text_[pos_] - '0');
      if (v > 0xffffffffULL) throw ParseError("exponent too large", start);
      ++pos_;
    }
    if (start == pos_) throw ParseError("expected integer", start);
    return static_cast<Monomial::Exponent>(v);
  }

  FieldElement coefficient() {
    skip();
    const std::size_t start = pos_;
    if (text_[pos_] == '(') {
      std::size_t close = pos_;
      for (int depth = 0; close < text_.size(); ++close) {
        if (text_[close] == '(') ++depth;
        if (text_[close] == ')' && --depth == 0) break;
      }
      if (close >= text_.size()) throw ParseError("unbalanced parenthesis", start);
      const std::string_view inner = text_.substr(pos_ + 1, close - pos_ - 1);
      pos_ = close + 1;
      try {
        return FieldElement::parse(inner);
      } catch (const ParseError& e) {
        throw ParseError("bad coefficient", start + 1 + e.position());
      }
    }
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    skip();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      skip();
      const std::size_t den = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (den == pos_) throw ParseError("expected denominator", den);
    }
    std::string digits;
    for (char c : text_.substr(start, pos_ - start))
      if (!std::isspace(static_cast<unsigned char>(c))) digits += c;
    try {
      return FieldElement(Rational::parse(digits));
    } catch (const ParseError& e) {
      throw ParseError("bad coefficient", start);
    }
  }

  void factor(Monomial& m) {
    skip();
    const std::size_t start = pos_;
    std::size_t end = pos_ + 1;
    if (text_[pos_] == 'x') {
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
    }
    const std::string_view name = text_.substr(start, end - start);
    const auto var = sig_.find_var(name);
    if (!var) throw ParseError("unknown variable '" + std::string(name) + "' for " + sig_.str(), start);
    pos_ = end;
    Monomial::Exponent e = 1;
    if (peek() == '^') {
      ++pos_;
      e = number();
    }
    m[*var] += e;
  }

  Term term() {
    skip();
    FieldElement c(1);
    bool have_coeff = false;
    const char first = peek();
    if (std::isdigit(static_cast<unsigned char>(first)) || first == '(') {
      c = coefficient();
      have_coeff = true;
      if (peek() == '*') {
        ++pos_;
        if (!at_var()) throw ParseError("expected variable after '*'", pos_);
      }
    }
    Monomial m(sig_.num_vars());
    if (at_var()) {
      factor(m);
      while (peek() == '*') {
        ++pos_;
        if (!at_var()) throw ParseError("expected variable after '*'", pos_);
        factor(m);
      }
    } else if (!have_coeff) {
      throw ParseError("expected term", pos_);
    }
    return Term{std::move(m), std::move(c)};
  }

  const RingSignature& sig_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(const RingSignature& sig, std::string_view text) {
  return PolyParser(sig, text).parse();
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const Term& t : terms_) {
    const std::string mono = monomial_text(sig_, t.monomial);
    std::string coeff_text;
    bool negative = false;
    if (t.coeff.is_rational()) {
      const Rational& r = t.coeff.rational_part();
      negative = r.sign() < 0;
      const Rational mag = r.abs();
      if (!(mag.is_one() && !mono.empty())) coeff_text = mag.str();
    } else {
      coeff_text = "(" + t.coeff.str() + ")";
    }
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    out += coeff_text;
    if (!coeff_text.empty() && !mono.empty()) out += '*';
    out += mono;
    first = false;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

Polynomial x_power_bracket(const RingSignature& sig, unsigned k) {
  Monomial m(sig.num_vars());
  for (int i = 0; i < sig.n; ++i) m[static_cast<std::size_t>(i)] = k;
  return Polynomial::monomial(sig, std::move(m));
}

// ------------------------------------------------------ univariate

UnivariatePoly::UnivariatePoly(std::vector<FieldElement> coefficients) : c_(std::move(coefficients)) { trim(); }

UnivariatePoly::UnivariatePoly(std::initializer_list<long> coefficients) {
  for (long v : coefficients) c_.emplace_back(v);
  trim();
}

void UnivariatePoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UnivariatePoly UnivariatePoly::constant(const FieldElement& c) { return UnivariatePoly(std::vector<FieldElement>{c}); }

UnivariatePoly UnivariatePoly::monomial(unsigned degree, const FieldElement& c) {
  std::vector<FieldElement> coeffs(degree + 1, FieldElement(0));
  coeffs[degree] = c;
  return UnivariatePoly(std::move(coeffs));
}

UnivariatePoly UnivariatePoly::parse_csv(std::string_view csv) {
  std::vector<FieldElement> coeffs;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = csv.find(',', start);
    const std::string_view item = csv.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    try {
      coeffs.push_back(FieldElement::parse(item));
    } catch (const ParseError& e) {
      throw ParseError("bad coefficient list", start + e.position());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return UnivariatePoly(std::move(coeffs));
}

std::string UnivariatePoly::csv() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ',';
    out += c_[i].str();
  }
  return out;
}

std::string UnivariatePoly::str(std::string_view var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    std::string coeff = c_[i].is_rational() ? c_[i].str() : "(" + c_[i].str() + ")";
    bool negative = c_[i].is_rational() && c_[i].rational_part().sign() < 0;
    if (negative) coeff = coeff.substr(1);
    if (!out.empty()) out += negative ? " - " : " + ";
    else if (negative) out += '-';
    const bool unit = coeff == "1" && i > 0;
    if (!unit) out += coeff;
    if (i > 0) {
      if (!unit) out += '*';
      out += var;
      if (i > 1) out += '^' + std::to_string(i);
    }
  }
  return out;
}

FieldElement UnivariatePoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : FieldElement(0); }

std::vector<std::size_t> UnivariatePoly::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) s.push_back(i);
  return s;
}

FieldElement UnivariatePoly::operator()(const FieldElement& t) const {
  FieldElement acc(0);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
  return acc;
}

Polynomial UnivariatePoly::compose(const Polynomial& p) const {
  const RingSignature& sig = p.signature();
  Polynomial acc(sig);
  for (std::size_t i = c_.size(); i-- > 0;) {
    acc = acc * p + Polynomial::constant(sig, c_[i]);
  }
  return acc;
}

UnivariatePoly UnivariatePoly::derivative() const {
  if (c_.size() <= 1) return UnivariatePoly();
  std::vector<FieldElement> d;
  d.reserve(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * FieldElement(static_cast<long>(i)));
  return UnivariatePoly(std::move(d));
}

UnivariatePoly UnivariatePoly::scale_argument(const FieldElement& mu) const {
  std::vector<FieldElement> out = c_;
  FieldElement power(1);
  for (auto& c : out) {
    c *= power;
    power *= mu;
  }
  return UnivariatePoly(std::move(out));
}

UnivariatePoly& UnivariatePoly::operator+=(const UnivariatePoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), FieldElement(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UnivariatePoly& UnivariatePoly::operator-=(const UnivariatePoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), FieldElement(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b) {
  if (a.is_zero() || b.is_zero()) return UnivariatePoly();
  std::vector<FieldElement> out(a.c_.size() + b.c_.size() - 1, FieldElement(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  return UnivariatePoly(std::move(out));
}

UnivariatePoly operator*(const FieldElement& c, const UnivariatePoly& a) {
  std::vector<FieldElement> out = a.c_;
  for (auto& x : out) x *= c;
  return UnivariatePoly(std::move(out));
}

UnivariatePoly UnivariatePoly::pow(unsigned exponent) const {
  UnivariatePoly result = constant(FieldElement(1));
  for (unsigned i = 0; i < exponent; ++i) result = result * *this;
  return result;
}

std::ostream& operator<<(std::ostream& os, const UnivariatePoly& q) { return os << q.str(); }

UnivariatePoly difference_quotient(const UnivariatePoly& q, const FieldElement& c) {
  const auto& a = q.coefficients();
  if (a.size() <= 1) return UnivariatePoly();
  // Horner: b_{m-1} = a_m, b_{i-1} = a_i + c*b_i; the remainder is q(c).
  std::vector<FieldElement> b(a.size() - 1, FieldElement(0));
  b.back() = a.back();
  for (std::size_t i = b.size() - 1; i-- > 0;) b[i] = a[i + 1] + c * b[i + 1];
  return UnivariatePoly(std::move(b));
}

UnivariatePoly half_t_quotient(const UnivariatePoly& q) {
  const auto& a = q.coefficients();
  if (a.size() <= 1) return UnivariatePoly();
  std::vector<FieldElement> r;
  r.reserve(a.size() - 1);
  const FieldElement half = FieldElement(Rational(1, 2));
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * half);
  return UnivariatePoly(std::move(r));
}

// ------------------------------------------------------ normal form

Polynomial reduce_mod_relation(const Polynomial& p, const UnivariatePoly& q, const FieldElement& c,
                               std::size_t* steps) {
  const RingSignature& sig = p.signature();
  const std::size_t y = sig.y();
  const std::size_t z = sig.z();

  // c - z^2 - x^[1] q(z^2), as a term list free of y
  std::vector<Term> rhs;
  {
    Polynomial z2 = Polynomial::variable(sig, z).pow(2);
    Polynomial r = Polynomial::constant(sig, c) - z2 - x_power_bracket(sig, 1) * q.compose(z2);
    rhs = r.terms();
  }

  const long ydeg = p.degree(y);
  std::size_t count = 0;
  if (ydeg <= 0) {
    if (steps) *steps = 0;
    return p;
  }

  std::vector<std::unordered_map<Monomial, FieldElement, MonomialHash>> levels(static_cast<std::size_t>(ydeg) + 1);
  for (const Term& t : p.terms()) levels[t.monomial[y]].emplace(t.monomial, t.coeff);

  std::vector<Term> normal;
  const std::size_t limit = term_limit();
  for (std::size_t k = levels.size(); k-- > 1;) {
    auto& below = levels[k - 1];
    for (auto& [m, coeff] : levels[k]) {
      if (coeff.is_zero()) continue;
      bool divisible = true;
      for (int i = 0; i < sig.n; ++i) {
        if (m[static_cast<std::size_t>(i)] < 2) {
          divisible = false;
          break;
        }
      }
      if (!divisible) {
        normal.push_back(Term{m, coeff});
        continue;
      }
      Monomial base = m;
      for (int i = 0; i < sig.n; ++i) base[static_cast<std::size_t>(i)] -= 2;
      base[y] -= 1;
      for (const Term& r : rhs) {
        auto [it, inserted] = below.try_emplace(base * r.monomial, coeff * r.coeff);
        if (!inserted) it->second += coeff * r.coeff;
      }
      if (below.size() > limit) throw_resource_limit(below.size());
      ++count;
    }
    levels[k].clear();
  }
  for (auto& [m, coeff] : levels[0]) {
    if (!coeff.is_zero()) normal.push_back(Term{m, coeff});
  }
  if (steps) *steps = count;
  return Polynomial::from_terms(sig, std::move(normal));
}

}  // namespace stably
