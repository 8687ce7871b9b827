#include "stably/certificate.hpp"

#include <algorithm>
#include <sstream>

namespace stably {

Certificate::Certificate(std::string claim, Json inputs) : claim_(std::move(claim)), inputs_(std::move(inputs)) {}

Check& Certificate::add(Check check) {
  checks_.push_back(std::move(check));
  return checks_.back();
}

void Certificate::absorb(const Certificate& sub, const std::string& prefix) {
  for (const Check& c : sub.checks_) {
    Check copy = c;
    copy.name = prefix + c.name;
    checks_.push_back(std::move(copy));
  }
  for (const std::string& n : sub.notes_) {
    if (std::find(notes_.begin(), notes_.end(), n) == notes_.end()) notes_.push_back(n);
  }
}

bool Certificate::pass() const {
  return !checks_.empty() && std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass(); });
}

const Check* Certificate::first_failure() const {
  for (const Check& c : checks_)
    if (!c.pass()) return &c;
  return nullptr;
}

namespace {

const char* kind_name(CheckKind k) {
  switch (k) {
    case CheckKind::Identity: return "identity";
    case CheckKind::IdentityModRelation: return "identity mod relation";
    case CheckKind::Fact: break;
  }
  return "fact";
}

}  // namespace

Json Certificate::to_json() const {
  Json checks = Json::array();
  for (const Check& c : checks_) {
    Json j{{"name", c.name}, {"anchor", c.anchor}, {"kind", kind_name(c.kind)}, {"pass", c.pass()},
           {"symbolic", c.symbolic_pass}};
    if (c.residual) j["residual"] = *c.residual;
    if (c.samples) {
      Json s{{"points", c.samples->points}, {"agreed", c.samples->agreed}};
      if (!c.samples->first_disagreement.empty()) s["first_disagreement"] = c.samples->first_disagreement;
      j["samples"] = s;
    }
    if (!c.note.empty()) j["note"] = c.note;
    checks.push_back(std::move(j));
  }
  return Json{{"claim", claim_}, {"inputs", inputs_}, {"checks", checks}, {"notes", notes_}, {"pass", pass()}};
}

std::string Certificate::to_text() const {
  std::ostringstream os;
  os << "claim: " << claim_ << '\n';
  if (!inputs_.empty()) os << "inputs: " << inputs_.dump() << '\n';
  for (const Check& c : checks_) {
    os << (c.pass() ? "[PASS] " : "[FAIL] ") << c.name << '\n';
    os << "       " << c.anchor << '\n';
    if (c.samples) {
      os << "       samples " << c.samples->agreed << '/' << c.samples->points;
      if (!c.samples->first_disagreement.empty()) os << " (" << c.samples->first_disagreement << ')';
      os << '\n';
    }
    if (!c.note.empty()) os << "       note: " << c.note << '\n';
    if (c.residual) os << "       residual: " << *c.residual << '\n';
  }
  for (const std::string& n : notes_) os << "note: " << n << '\n';
  os << "result: " << (pass() ? "PASS" : "FAIL") << " (" << checks_.size() << " checks)\n";
  return os.str();
}

std::string residual_text(const Polynomial& residual) {
  constexpr std::size_t kMaxChars = 400;
  std::string text = residual.str();
  if (text.size() > kMaxChars) {
    text = text.substr(0, kMaxChars) + " ... (" + std::to_string(residual.size()) + " terms)";
  }
  return text;
}

Check exact_identity(std::string name, std::string anchor, const Polynomial& lhs, const Polynomial& rhs) {
  Check c{std::move(name), std::move(anchor)};
  c.kind = CheckKind::Identity;
  const Polynomial diff = lhs - rhs;
  c.symbolic_pass = diff.is_zero();
  if (!c.symbolic_pass) c.residual = residual_text(diff);
  return c;
}

Check identity_mod_relation(std::string name, std::string anchor, const Polynomial& difference, const PqSpec& spec) {
  Check c{std::move(name), std::move(anchor)};
  c.kind = CheckKind::IdentityModRelation;
  const Polynomial reduced = reduce_mod_relation(difference, spec);
  c.symbolic_pass = reduced.is_zero();
  if (!c.symbolic_pass) c.residual = residual_text(reduced);
  return c;
}

Check fact(std::string name, std::string anchor, bool holds, std::string note) {
  Check c{std::move(name), std::move(anchor)};
  c.symbolic_pass = holds;
  c.note = std::move(note);
  return c;
}

// -------------------------------------------------------------- sampling

Rational Sampler::rational() {
  std::uniform_int_distribution<long> num(-10000, 10000);
  std::uniform_int_distribution<long> den(1, 10000);
  const long a = num(rng_);
  const long b = den(rng_);
  return Rational(a, b);
}

Rational Sampler::nonzero_rational() {
  Rational r = rational();
  while (r.is_zero()) r = rational();
  return r;
}

std::vector<FieldElement> Sampler::point(const RingSignature& sig) {
  std::vector<FieldElement> p;
  p.reserve(sig.num_vars());
  for (std::size_t v = 0; v < sig.num_vars(); ++v) p.emplace_back(rational());
  return p;
}

std::vector<FieldElement> Sampler::point_on(const PqSpec& spec, bool with_w) {
  const RingSignature sig = spec.signature(with_w);
  std::vector<FieldElement> p(sig.num_vars());
  FieldElement bracket(1);
  for (int i = 1; i <= sig.n; ++i) {
    p[sig.x(i)] = FieldElement(nonzero_rational());
    bracket *= p[sig.x(i)];
  }
  p[sig.z()] = FieldElement(rational());
  if (with_w) p[sig.w()] = FieldElement(rational());
  const FieldElement z2 = p[sig.z()] * p[sig.z()];
  p[sig.y()] = (spec.c - z2 - bracket * spec.q(z2)) / (bracket * bracket);
  return p;
}

void sample_check(Check& check, const CheckOptions& opts,
                  const std::function<std::optional<std::string>(Sampler&)>& trial) {
  if (opts.samples == 0) return;
  std::uint64_t seed = opts.seed * 0x9e3779b97f4a7c15ULL + std::hash<std::string>{}(check.name);
  Sampler sampler(seed);
  SampleReport report;
  for (unsigned i = 0; i < opts.samples; ++i) {
    ++report.points;
    auto bad = trial(sampler);
    if (!bad) {
      ++report.agreed;
    } else if (report.first_disagreement.empty()) {
      report.first_disagreement = *bad;
    }
  }
  check.samples = report;
}

namespace {

struct Dual {
  FieldElement value;
  FieldElement slope;

  Dual operator*(const Dual& o) const { return {value * o.value, value * o.slope + slope * o.value}; }
};

}  // namespace

FieldElement directional_derivative(const Polynomial& f, std::span<const FieldElement> point,
                                    std::span<const FieldElement> direction) {
  const std::size_t nv = f.signature().num_vars();
  if (point.size() != nv || direction.size() != nv) {
    throw Error(ErrorCode::SignatureMismatch, "directional derivative needs full point and direction");
  }
  std::vector<std::vector<Dual>> powers(nv);
  auto power = [&](std::size_t v, Monomial::Exponent k) -> const Dual& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Dual{FieldElement(1), FieldElement(0)});
    while (cache.size() <= k) cache.push_back(cache.back() * Dual{point[v], direction[v]});
    return cache[k];
  };
  FieldElement slope(0);
  for (const Term& t : f.terms()) {
    Dual acc{t.coeff, FieldElement(0)};
    for (std::size_t v = 0; v < nv; ++v) {
      if (t.monomial[v] > 0) acc = acc * power(v, t.monomial[v]);
    }
    slope += acc.slope;
  }
  return slope;
}

std::optional<std::string> compare_pullback(const RingEndomorphism& phi, const Polynomial& f,
                                            const std::function<FieldElement(std::span<const FieldElement>)>& g,
                                            std::span<const FieldElement> point) {
  const std::vector<FieldElement> image = phi.map_point(point);
  const FieldElement lhs = f.evaluate(image);
  const FieldElement rhs = g(point);
  if (lhs == rhs) return std::nullopt;
  return "lhs " + lhs.str().substr(0, 60) + " != rhs " + rhs.str().substr(0, 60);
}

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 wide = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(wide & kSamplePrime) + static_cast<std::uint64_t>(wide >> 61);
  if (r >= kSamplePrime) r -= kSamplePrime;
  return r;
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  if (r >= kSamplePrime) r -= kSamplePrime;
  return r;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, base);
    base = mul_mod(base, base);
    e >>= 1;
  }
  return r;
}

std::uint64_t mpz_mod_prime(const mpz_class& v) {
  mpz_class r = v % mpz_class(static_cast<unsigned long>(kSamplePrime));
  if (r < 0) r += static_cast<unsigned long>(kSamplePrime);
  return r.get_ui();
}

}  // namespace

std::uint64_t reduce_mod_prime(const FieldElement& a) {
  if (!a.is_rational()) throw Error(ErrorCode::InvalidArgument, "modular sampling needs rational coefficients");
  const Rational& r = a.rational_part();
  const std::uint64_t den = mpz_mod_prime(r.denominator());
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "denominator divisible by the sampling prime");
  return mul_mod(mpz_mod_prime(r.numerator()), pow_mod(den, kSamplePrime - 2));
}

std::vector<std::uint64_t> reduce_mod_prime(std::span<const FieldElement> point) {
  std::vector<std::uint64_t> out;
  out.reserve(point.size());
  for (const FieldElement& a : point) out.push_back(reduce_mod_prime(a));
  return out;
}

std::uint64_t evaluate_mod_prime(const Polynomial& f, std::span<const std::uint64_t> point) {
  const std::size_t nv = f.signature().num_vars();
  if (point.size() != nv) throw Error(ErrorCode::SignatureMismatch, "point has the wrong number of coordinates");
  std::vector<std::vector<std::uint64_t>> powers(nv);
  std::uint64_t sum = 0;
  for (const Term& t : f.terms()) {
    std::uint64_t acc = reduce_mod_prime(t.coeff);
    for (std::size_t v = 0; v < nv; ++v) {
      const auto e = t.monomial[v];
      if (e == 0) continue;
      auto& cache = powers[v];
      if (cache.empty()) cache.push_back(1);
      while (cache.size() <= e) cache.push_back(mul_mod(cache.back(), point[v]));
      acc = mul_mod(acc, cache[e]);
    }
    sum = add_mod(sum, acc);
  }
  return sum;
}

std::vector<std::uint64_t> map_point_mod_prime(const RingEndomorphism& phi, std::span<const std::uint64_t> point) {
  std::vector<std::uint64_t> out;
  out.reserve(phi.images().size());
  for (const Polynomial& img : phi.images()) out.push_back(evaluate_mod_prime(img, point));
  return out;
}

}  // namespace stably
