#ifndef STABLY_CERTIFICATE_HPP
#define STABLY_CERTIFICATE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "stably/morphism.hpp"

namespace stably {

struct CheckOptions {
  std::uint64_t seed = 0;
  /// Random rational points per identity for the evaluation cross-check;
  /// 0 disables it.
  unsigned samples = 100;
};

struct SampleReport {
  unsigned points = 0;
  unsigned agreed = 0;
  std::string first_disagreement;

  bool pass() const noexcept { return agreed == points; }
};

enum class CheckKind { Fact, Identity, IdentityModRelation };

struct Check {
  Check() = default;
  Check(std::string name_, std::string anchor_) : name(std::move(name_)), anchor(std::move(anchor_)) {}

  std::string name;
  /// The identity being checked, written out as a formula.
  std::string anchor;
  CheckKind kind = CheckKind::Fact;
  bool symbolic_pass = false;
  std::optional<std::string> residual;
  std::optional<SampleReport> samples;
  std::string note;

  bool pass() const noexcept { return symbolic_pass && (!samples || samples->pass()); }
};

/// Machine-checked report: passes iff it has checks and all of them pass.
class Certificate {
 public:
  explicit Certificate(std::string claim, Json inputs = Json::object());

  const std::string& claim() const noexcept { return claim_; }
  const Json& inputs() const noexcept { return inputs_; }
  const std::vector<Check>& checks() const noexcept { return checks_; }
  const std::vector<std::string>& notes() const noexcept { return notes_; }

  Check& add(Check check);
  void note(std::string text) { notes_.push_back(std::move(text)); }
  /// Appends the checks and notes of `sub`, prefixing check names.
  void absorb(const Certificate& sub, const std::string& prefix);

  bool pass() const;
  const Check* first_failure() const;

  /// {"claim", "inputs", "checks": [{"name", "anchor", "pass", "residual"?, ...}], "notes", "pass"}
  Json to_json() const;
  std::string to_text() const;

 private:
  std::string claim_;
  Json inputs_;
  std::vector<Check> checks_;
  std::vector<std::string> notes_;
};

/// Residual text, abbreviated for very large polynomials.
std::string residual_text(const Polynomial& residual);

/// Symbolic check lhs == rhs in the ambient ring.
Check exact_identity(std::string name, std::string anchor, const Polynomial& lhs, const Polynomial& rhs);
/// Symbolic check that `difference` reduces to 0 modulo P_q - c.
Check identity_mod_relation(std::string name, std::string anchor, const Polynomial& difference, const PqSpec& spec);
/// A decision or fact that needs no residual.
Check fact(std::string name, std::string anchor, bool holds, std::string note = {});

/// Random rationals with numerators in [-10^4, 10^4] and denominators in [1, 10^4].
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  Rational rational();
  Rational nonzero_rational();
  std::vector<FieldElement> point(const RingSignature& sig);
  /// A point of V(P_q - c): x's nonzero, z (and w) random, y solved for.
  std::vector<FieldElement> point_on(const PqSpec& spec, bool with_w = false);

 private:
  std::mt19937_64 rng_;
};

/// Runs `trial` at opts.samples points and records the outcome in `check`.
/// `trial` returns a description of the disagreement, or nullopt.
void sample_check(Check& check, const CheckOptions& opts,
                  const std::function<std::optional<std::string>(Sampler&)>& trial);

/// Directional derivative of f at `point` along `direction`, computed by
/// dual-number evaluation (independent of symbolic differentiation).
FieldElement directional_derivative(const Polynomial& f, std::span<const FieldElement> point,
                                    std::span<const FieldElement> direction);

/// Trial comparing f(phi(point)) with g(point): the evaluation route of
/// apply_endo(phi, f) == g.
std::optional<std::string> compare_pullback(const RingEndomorphism& phi, const Polynomial& f,
                                            const std::function<FieldElement(std::span<const FieldElement>)>& g,
                                            std::span<const FieldElement> point);

/// Arithmetic modulo the prime 2^61 - 1. Nested compositions of large maps are
/// sampled at a rational point reduced modulo this prime, which avoids the
/// height growth of exact rational evaluation.
inline constexpr std::uint64_t kSamplePrime = (std::uint64_t{1} << 61) - 1;

/// Throws InvalidArgument for irrational elements or denominators divisible by the prime.
std::uint64_t reduce_mod_prime(const FieldElement& a);
std::vector<std::uint64_t> reduce_mod_prime(std::span<const FieldElement> point);
std::uint64_t evaluate_mod_prime(const Polynomial& f, std::span<const std::uint64_t> point);
std::vector<std::uint64_t> map_point_mod_prime(const RingEndomorphism& phi, std::span<const std::uint64_t> point);

}  // namespace stably

#endif  // STABLY_CERTIFICATE_HPP
