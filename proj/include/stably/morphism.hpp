#ifndef STABLY_MORPHISM_HPP
#define STABLY_MORPHISM_HPP

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "stably/pq.hpp"

namespace stably {

/// Ring endomorphism of Q[x, y, z(, w)] stored by the images of the
/// generators. Invertibility is never assumed; it is certified by composing
/// with an explicit inverse.
class RingEndomorphism {
 public:
  explicit RingEndomorphism(const RingSignature& sig);  // identity
  RingEndomorphism(const RingSignature& sig, std::vector<Polynomial> images);

  static RingEndomorphism identity(const RingSignature& sig) { return RingEndomorphism(sig); }

  const RingSignature& signature() const noexcept { return sig_; }
  const std::vector<Polynomial>& images() const noexcept { return images_; }
  const Polynomial& image(std::size_t var) const { return images_.at(var); }
  void set_image(std::size_t var, Polynomial image);

  Polynomial apply(const Polynomial& p) const;
  /// The images evaluated at `point`, i.e. the point map of this endomorphism.
  std::vector<FieldElement> map_point(std::span<const FieldElement> point) const;
  bool is_identity() const;

  /// {"x1": "polynomial-text", ..., "y": ..., "z": ...}
  Json to_json() const;
  static RingEndomorphism from_json(const RingSignature& sig, const Json& j);

 private:
  RingSignature sig_;
  std::vector<Polynomial> images_;
};

Polynomial apply_endo(const RingEndomorphism& phi, const Polynomial& p);
/// Generator g maps to outer(inner(g)); as ring maps, outer after inner.
RingEndomorphism compose_endos(const RingEndomorphism& outer, const RingEndomorphism& inner);
bool is_identity(const RingEndomorphism& phi);

/// Q-derivation determined by the images of the generators (Leibniz rule).
class Derivation {
 public:
  explicit Derivation(const RingSignature& sig);  // zero derivation
  Derivation(const RingSignature& sig, std::vector<Polynomial> images);

  const RingSignature& signature() const noexcept { return sig_; }
  const std::vector<Polynomial>& images() const noexcept { return images_; }
  const Polynomial& image(std::size_t var) const { return images_.at(var); }
  void set_image(std::size_t var, Polynomial image);

  /// sum over v of dp/dv * delta(v)
  Polynomial apply(const Polynomial& p) const;
  /// h * delta
  Derivation scaled(const Polynomial& h) const;

  Json to_json() const;
  static Derivation from_json(const RingSignature& sig, const Json& j);

 private:
  RingSignature sig_;
  std::vector<Polynomial> images_;
};

Polynomial apply_derivation(const Derivation& delta, const Polynomial& p);

/// Delta = x^[2] d/dz - 2z(1 + x^[1]q'(z^2)) d/dy, which kills P_q - c.
Derivation build_Delta(const PqSpec& spec);

inline constexpr unsigned kDefaultNilpotencyCap = 64;

/// Smallest m >= 1 with delta^m(p) = 0, reducing every iterate modulo
/// P_q - c when `spec` is given. nullopt once `cap` iterations pass.
std::optional<unsigned> nilpotency_index(const Derivation& delta, const Polynomial& p,
                                         const PqSpec* spec = nullptr,
                                         unsigned cap = kDefaultNilpotencyCap);

/// Upper bound on the nilpotency index of Delta on p: a power y^a z^b needs at
/// most a*(deg_z Delta(y) + 1) + b + 1 applications.
long delta_nilpotency_bound(const PqSpec& spec, const Polynomial& p);

struct NotAMultiple {
  std::string reason;
};

/// h in Q[x] with delta = h * Delta on Q[x,y,z]/(P_q - c), or the first
/// condition that fails.
std::variant<Polynomial, NotAMultiple> decompose_as_Delta_multiple(const Derivation& delta,
                                                                    const PqSpec& spec);

}  // namespace stably

#endif  // STABLY_MORPHISM_HPP
