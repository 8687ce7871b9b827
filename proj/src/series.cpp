#include "stably/series.hpp"

namespace stably {

TruncatedSeries::TruncatedSeries(const RingSignature& sig, unsigned order) : poly_(sig), order_(order) {}

TruncatedSeries::TruncatedSeries(Polynomial p, unsigned order) : poly_(p.truncate_x_degree(order)), order_(order) {}

TruncatedSeries TruncatedSeries::truncated(unsigned order) const {
  if (order > order_) throw Error(ErrorCode::InvalidArgument, "cannot raise the order of a truncated series");
  return TruncatedSeries(poly_, order);
}

void TruncatedSeries::check_compatible(const TruncatedSeries& o) const {
  if (order_ != o.order_) {
    throw Error(ErrorCode::InvalidArgument,
                "series orders differ: " + std::to_string(order_) + " vs " + std::to_string(o.order_));
  }
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  check_compatible(o);
  poly_ += o.poly_;
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  check_compatible(o);
  poly_ -= o.poly_;
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  a.check_compatible(b);
  return TruncatedSeries(a.poly_ * b.poly_, a.order_);
}

TruncatedSeries operator*(const FieldElement& c, TruncatedSeries a) {
  a.poly_ *= c;
  return a;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a.order_ == b.order_ && a.poly_ == b.poly_;
}

std::string TruncatedSeries::str() const {
  const std::string tail = "O(x^{" + std::to_string(order_ + 1) + "})";
  if (poly_.is_zero()) return tail;
  return poly_.str() + " + " + tail;
}

namespace {

void require_positive_x_degree(const Polynomial& u) {
  const RingSignature& sig = u.signature();
  for (const Term& t : u.terms()) {
    if (t.monomial.x_degree(sig.n) == 0) {
      throw Error(ErrorCode::NonzeroConstantTerm, "series argument has a term of x-degree 0: " + u.str());
    }
  }
}

// sum_{j=first}^{...} coeff(j) u^{j-first}, stopping once u^{j-first} leaves the order.
template <class Coeff>
TruncatedSeries power_sum(const Polynomial& u, unsigned order, unsigned first, Coeff coeff) {
  require_positive_x_degree(u);
  const RingSignature& sig = u.signature();
  TruncatedSeries sum(sig, order);
  if (u.is_zero()) return TruncatedSeries(Polynomial::constant(sig, coeff(first)), order);
  const TruncatedSeries base(u, order);
  const unsigned m = static_cast<unsigned>(u.min_x_degree());
  TruncatedSeries power(Polynomial::constant(sig, FieldElement(1)), order);
  for (unsigned j = first; (j - first) * m <= order; ++j) {
    sum += coeff(j) * power;
    power = power * base;
  }
  return sum;
}

Rational factorial(unsigned j) {
  Rational f(1);
  for (unsigned i = 2; i <= j; ++i) f *= Rational(static_cast<long>(i));
  return f;
}

}  // namespace

TruncatedSeries exp_series(const Polynomial& u, unsigned order) {
  return power_sum(u, order, 0, [](unsigned j) { return FieldElement(factorial(j).inverse()); });
}

TruncatedSeries second_tail_series(const Polynomial& u, unsigned order) {
  return power_sum(u, order, 2, [](unsigned j) {
    const Rational c = factorial(j).inverse();
    return FieldElement(j % 2 == 0 ? c : -c);
  });
}

SeriesMap build_series_psi(int n, unsigned order, SeriesCorruption corruption) {
  const RingSignature sig(n, false);
  const Polynomial u = x_power_bracket(sig, 1);
  const TruncatedSeries e = exp_series(-u, order);
  const TruncatedSeries half = corruption == SeriesCorruption::FullExponentOnZ
                                   ? e
                                   : exp_series(FieldElement(Rational(-1, 2)) * u, order);
  const TruncatedSeries y(Polynomial::variable(sig, sig.y()), order);
  const TruncatedSeries z(Polynomial::variable(sig, sig.z()), order);
  return SeriesMap{e * y - second_tail_series(u, order), half * z};
}

SeriesMap build_series_psi_inverse(int n, unsigned order) {
  const RingSignature sig(n, false);
  const Polynomial u = x_power_bracket(sig, 1);
  const TruncatedSeries y(Polynomial::variable(sig, sig.y()), order);
  const TruncatedSeries z(Polynomial::variable(sig, sig.z()), order);
  return SeriesMap{exp_series(u, order) * (y + second_tail_series(u, order)),
                   exp_series(FieldElement(Rational(1, 2)) * u, order) * z};
}

TruncatedSeries apply_series_map(const SeriesMap& map, const TruncatedSeries& f) {
  const RingSignature& sig = f.signature();
  const unsigned order = f.order();
  // Horner in y, then z, on the coefficient series in x.
  std::vector<std::vector<Polynomial>> buckets;
  for (const Term& t : f.polynomial().terms()) {
    const auto b = t.monomial[sig.y()];
    const auto c = t.monomial[sig.z()];
    if (buckets.size() <= b) buckets.resize(b + 1);
    if (buckets[b].size() <= c) buckets[b].resize(c + 1, Polynomial(sig));
    Monomial m = t.monomial;
    m[sig.y()] = 0;
    m[sig.z()] = 0;
    buckets[b][c] += Polynomial::monomial(sig, std::move(m), t.coeff);
  }
  TruncatedSeries result(sig, order);
  for (std::size_t b = buckets.size(); b-- > 0;) {
    TruncatedSeries inner(sig, order);
    for (std::size_t c = buckets[b].size(); c-- > 0;) {
      inner = inner * map.z + TruncatedSeries(buckets[b][c], order);
    }
    result = result * map.y + inner;
  }
  return result;
}

namespace {

// Independent route for the random-point check: restrict to the line
// x_i = a_i t with y, z fixed, and work with power series in t.
using TSeries = std::vector<Rational>;

TSeries t_exp(const TSeries& v) {
  // E' = v' E: k E_k = sum_j j v_j E_{k-j}, v_0 = 0.
  TSeries e(v.size(), Rational(0));
  e[0] = Rational(1);
  for (std::size_t k = 1; k < v.size(); ++k) {
    Rational acc(0);
    for (std::size_t j = 1; j <= k; ++j) acc += Rational(static_cast<long>(j)) * v[j] * e[k - j];
    e[k] = acc / Rational(static_cast<long>(k));
  }
  return e;
}

TSeries t_mul(const TSeries& a, const TSeries& b) {
  TSeries r(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < r.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

TSeries restrict_to_line(const Polynomial& p, const std::vector<Rational>& a, const Rational& y, const Rational& z,
                         std::size_t len) {
  const RingSignature& sig = p.signature();
  TSeries r(len, Rational(0));
  for (const Term& t : p.terms()) {
    const std::uint64_t d = t.monomial.x_degree(sig.n);
    if (d >= len) continue;
    Rational c = t.coeff.as_rational();
    for (int i = 1; i <= sig.n; ++i) c *= a[i - 1].pow(t.monomial[sig.x(i)]);
    c *= y.pow(t.monomial[sig.y()]) * z.pow(t.monomial[sig.z()]);
    r[d] += c;
  }
  return r;
}

std::optional<std::string> line_trial(Sampler& s, const SeriesMap& psi, const TruncatedSeries& lhs,
                                      const TruncatedSeries& rhs, int n, unsigned order, bool corrupt) {
  const std::size_t len = order + 1;
  std::vector<Rational> a;
  Rational alpha(1);
  for (int i = 0; i < n; ++i) {
    a.push_back(s.nonzero_rational());
    alpha *= a.back();
  }
  const Rational y0 = s.rational();
  const Rational z0 = s.rational();
  // u = alpha t^n along the line.
  TSeries u(len, Rational(0)), minus_u(len, Rational(0)), minus_half_u(len, Rational(0));
  if (static_cast<std::size_t>(n) < len) {
    u[n] = alpha;
    minus_u[n] = -alpha;
    minus_half_u[n] = corrupt ? -alpha : -alpha / Rational(2);
  }
  const TSeries e = t_exp(minus_u);
  const TSeries eh = t_exp(minus_half_u);
  // tail = (e - 1 + u) / u^2: shift by 2n and divide by alpha^2; needs e to 2n more terms.
  TSeries long_minus_u(len + 2 * n, Rational(0));
  long_minus_u[n] = -alpha;
  TSeries long_e = t_exp(long_minus_u);
  long_e[0] -= Rational(1);
  long_e[n] += alpha;
  TSeries tail(len, Rational(0));
  for (std::size_t k = 0; k < len; ++k) tail[k] = long_e[k + 2 * n] / (alpha * alpha);

  TSeries psi_y(len), psi_z(len);
  for (std::size_t k = 0; k < len; ++k) {
    psi_y[k] = e[k] * y0 - tail[k];
    psi_z[k] = eh[k] * z0;
  }
  // x^[2] = alpha^2 t^{2n}
  TSeries left = t_mul(psi_z, psi_z);
  for (std::size_t k = 0; k + 2 * n < len; ++k) left[k + 2 * n] += alpha * alpha * psi_y[k];
  left[0] -= Rational(1);
  if (static_cast<std::size_t>(n) < len) left[n] += alpha;
  TSeries right(len);
  TSeries p(len, Rational(0));
  p[0] = z0 * z0 - Rational(1);
  if (static_cast<std::size_t>(2 * n) < len) p[2 * n] += alpha * alpha * y0;
  right = t_mul(e, p);

  const TSeries sym_y = restrict_to_line(psi.y.polynomial(), a, y0, z0, len);
  const TSeries sym_z = restrict_to_line(psi.z.polynomial(), a, y0, z0, len);
  const TSeries sym_l = restrict_to_line(lhs.polynomial(), a, y0, z0, len);
  const TSeries sym_r = restrict_to_line(rhs.polynomial(), a, y0, z0, len);
  for (std::size_t k = 0; k < len; ++k) {
    if (sym_y[k] != psi_y[k]) return "Psi(y) differs at t^" + std::to_string(k);
    if (sym_z[k] != psi_z[k]) return "Psi(z) differs at t^" + std::to_string(k);
    if (sym_l[k] != left[k] || sym_r[k] != right[k]) return "sides differ from the line series at t^" + std::to_string(k);
    if (left[k] != right[k]) return "identity fails at t^" + std::to_string(k);
  }
  return std::nullopt;
}

// inner(x, Y(t), Z(t)) along the line, where Y and Z are t-series.
TSeries compose_on_line(const Polynomial& inner, const std::vector<Rational>& a, const TSeries& y, const TSeries& z) {
  const RingSignature& sig = inner.signature();
  const std::size_t len = y.size();
  TSeries r(len, Rational(0));
  for (const Term& t : inner.terms()) {
    const std::uint64_t d = t.monomial.x_degree(sig.n);
    if (d >= len) continue;
    Rational c = t.coeff.as_rational();
    for (int i = 1; i <= sig.n; ++i) c *= a[i - 1].pow(t.monomial[sig.x(i)]);
    TSeries f(len, Rational(0));
    f[d] = c;
    for (unsigned k = 0; k < t.monomial[sig.y()]; ++k) f = t_mul(f, y);
    for (unsigned k = 0; k < t.monomial[sig.z()]; ++k) f = t_mul(f, z);
    for (std::size_t k = 0; k < len; ++k) r[k] += f[k];
  }
  return r;
}

// outer then inner along a random line must return the starting y or z.
std::optional<std::string> round_trip_trial(Sampler& s, const SeriesMap& outer, const TruncatedSeries& inner_image,
                                            bool y_slot, int n, unsigned order) {
  const std::size_t len = order + 1;
  std::vector<Rational> a;
  for (int i = 0; i < n; ++i) a.push_back(s.nonzero_rational());
  const Rational y0 = s.rational();
  const Rational z0 = s.rational();
  const TSeries oy = restrict_to_line(outer.y.polynomial(), a, y0, z0, len);
  const TSeries oz = restrict_to_line(outer.z.polynomial(), a, y0, z0, len);
  const TSeries back = compose_on_line(inner_image.polynomial(), a, oy, oz);
  const Rational& expected = y_slot ? y0 : z0;
  for (std::size_t k = 0; k < len; ++k) {
    if (back[k] != (k == 0 ? expected : Rational(0))) return "round trip differs at t^" + std::to_string(k);
  }
  return std::nullopt;
}

Check series_identity(std::string name, std::string anchor, const TruncatedSeries& lhs, const TruncatedSeries& rhs) {
  Check c{std::move(name), std::move(anchor)};
  c.kind = CheckKind::Identity;
  const Polynomial diff = lhs.polynomial() - rhs.polynomial();
  c.symbolic_pass = diff.is_zero();
  if (!c.symbolic_pass) {
    const long first = diff.min_x_degree();
    Polynomial lowest(diff.signature());
    for (const Term& t : diff.terms()) {
      if (static_cast<long>(t.monomial.x_degree(diff.signature().n)) == first) {
        lowest += Polynomial::monomial(diff.signature(), t.monomial, t.coeff);
      }
    }
    c.residual = residual_text(diff);
    c.note = "first failing x-degree " + std::to_string(first) + ": " + residual_text(lowest);
  }
  return c;
}

struct Sides {
  TruncatedSeries lhs, rhs;
};

Sides identity_sides(const SeriesMap& psi, int n, unsigned order) {
  const RingSignature sig(n, false);
  const Polynomial u = x_power_bracket(sig, 1);
  const Polynomial u2 = x_power_bracket(sig, 2);
  const Polynomial y = Polynomial::variable(sig, sig.y());
  const Polynomial z = Polynomial::variable(sig, sig.z());
  const Polynomial one = Polynomial::constant(sig, FieldElement(1));
  const TruncatedSeries source(u2 * y + z * z + u - one, order);
  const TruncatedSeries target(u2 * y + z * z - one, order);
  return Sides{apply_series_map(psi, source), exp_series(-u, order) * target};
}

}  // namespace

Certificate verify_biholomorphism(int n, unsigned order, const CheckOptions& opts, SeriesCorruption corruption) {
  if (n < 1) throw Error(ErrorCode::Precondition, "n must be >= 1");
  if (order < 2) throw Error(ErrorCode::Precondition, "truncation order must be >= 2");
  Certificate cert("Psi(x^[2]y + z^2 + x^[1] - 1) = exp(-x^[1])(x^[2]y + z^2 - 1) to finite order",
                   Json{{"n", n}, {"order", order}});
  const RingSignature sig(n, false);
  const SeriesMap psi = build_series_psi(n, order, corruption);
  const SeriesMap inv = build_series_psi_inverse(n, order);
  const Sides sides = identity_sides(psi, n, order);

  Check& id = cert.add(series_identity("series identity through x-degree " + std::to_string(order),
                                       "Psi(x^[2]y + z^2 + x^[1] - 1) = exp(-x^[1])(x^[2]y + z^2 - 1)", sides.lhs,
                                       sides.rhs));
  const bool corrupt = corruption != SeriesCorruption::None;
  sample_check(id, opts, [&](Sampler& s) { return line_trial(s, psi, sides.lhs, sides.rhs, n, order, corrupt); });

  const TruncatedSeries y(Polynomial::variable(sig, sig.y()), order);
  const TruncatedSeries z(Polynomial::variable(sig, sig.z()), order);
  const struct {
    const char* name;
    const char* anchor;
    const SeriesMap& outer;
    const TruncatedSeries& inner;
    bool y_slot;
  } trips[] = {
      {"Psi o Psi^-1 fixes y", "Psi(exp(x^[1])(y + tail)) = y", psi, inv.y, true},
      {"Psi o Psi^-1 fixes z", "Psi(exp(x^[1]/2) z) = z", psi, inv.z, false},
      {"Psi^-1 o Psi fixes y", "Psi^-1(Psi(y)) = y", inv, psi.y, true},
      {"Psi^-1 o Psi fixes z", "Psi^-1(Psi(z)) = z", inv, psi.z, false},
  };
  for (const auto& t : trips) {
    Check& c = cert.add(series_identity(t.name, t.anchor, apply_series_map(t.outer, t.inner), t.y_slot ? y : z));
    sample_check(c, opts, [&](Sampler& s) { return round_trip_trial(s, t.outer, t.inner, t.y_slot, n, order); });
  }

  // Coefficients through x-degree M do not move when the order is raised.
  bool coherent = true;
  std::string where;
  for (unsigned m = 2; m < order && coherent; ++m) {
    const SeriesMap low = build_series_psi(n, m, corruption);
    const Sides low_sides = identity_sides(low, n, m);
    coherent = psi.y.truncated(m) == low.y && psi.z.truncated(m) == low.z && sides.lhs.truncated(m) == low_sides.lhs &&
               sides.rhs.truncated(m) == low_sides.rhs;
    if (!coherent) where = "order " + std::to_string(m);
  }
  cert.add(fact("truncation coherence", "order-N coefficients restricted to degree M equal the order-M result",
                coherent, where));
  cert.note("finite-order check only; convergence is not examined");
  return cert;
}

}  // namespace stably
