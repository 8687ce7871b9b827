#ifndef STABLY_SERIES_HPP
#define STABLY_SERIES_HPP

#include <cstdint>
#include <string>

#include "stably/certificate.hpp"

namespace stably {

/// Power series in x with polynomial coefficients in y, z, truncated by total
/// x-degree: every stored monomial has x-degree <= order.
class TruncatedSeries {
 public:
  TruncatedSeries(const RingSignature& sig, unsigned order);
  /// Truncates p to the given order.
  TruncatedSeries(Polynomial p, unsigned order);

  const RingSignature& signature() const noexcept { return poly_.signature(); }
  unsigned order() const noexcept { return order_; }
  const Polynomial& polynomial() const noexcept { return poly_; }
  bool is_zero() const noexcept { return poly_.is_zero(); }

  /// Same series cut down to a lower order.
  TruncatedSeries truncated(unsigned order) const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const FieldElement& c, TruncatedSeries a);
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

  /// "<polynomial> + O(x^{N+1})"
  std::string str() const;

 private:
  void check_compatible(const TruncatedSeries& o) const;

  Polynomial poly_;
  unsigned order_;
};

/// exp(u) to x-degree N. Every term of u must have positive x-degree
/// (NonzeroConstantTerm otherwise).
TruncatedSeries exp_series(const Polynomial& u, unsigned order);

/// (exp(-u) - 1 + u) / u^2 = sum_{j >= 2} (-1)^j u^{j-2} / j! to x-degree N.
TruncatedSeries second_tail_series(const Polynomial& u, unsigned order);

/// Series automorphism Psi of Q[[x]][y, z]:
///   Psi(y) = exp(-x^[1]) y - (exp(-x^[1]) - 1 + x^[1]) / x^[2]
///   Psi(z) = exp(-x^[1]/2) z
/// and its inverse y -> exp(x^[1])(y + tail), z -> exp(x^[1]/2) z.
struct SeriesMap {
  TruncatedSeries y;
  TruncatedSeries z;
};

enum class SeriesCorruption { None, FullExponentOnZ };

SeriesMap build_series_psi(int n, unsigned order, SeriesCorruption corruption = SeriesCorruption::None);
SeriesMap build_series_psi_inverse(int n, unsigned order);

/// Applies a map fixing x to a series in x, y, z.
TruncatedSeries apply_series_map(const SeriesMap& map, const TruncatedSeries& f);

/// Psi(x^[2]y + z^2 + x^[1] - 1) = exp(-x^[1])(x^[2]y + z^2 - 1) through x-degree
/// N, the inverse compositions, and coherence with every lower order.
Certificate verify_biholomorphism(int n, unsigned order, const CheckOptions& opts = {},
                                  SeriesCorruption corruption = SeriesCorruption::None);

}  // namespace stably

#endif  // STABLY_SERIES_HPP
