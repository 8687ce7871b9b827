#include "stably/morphism.hpp"

#include <algorithm>

namespace stably {

namespace {

std::vector<Polynomial> identity_images(const RingSignature& sig) {
  std::vector<Polynomial> images;
  images.reserve(sig.num_vars());
  for (std::size_t v = 0; v < sig.num_vars(); ++v) images.push_back(Polynomial::variable(sig, v));
  return images;
}

void check_images(const RingSignature& sig, const std::vector<Polynomial>& images, const char* what) {
  if (images.size() != sig.num_vars()) {
    throw Error(ErrorCode::SignatureMismatch,
                std::string(what) + " needs " + std::to_string(sig.num_vars()) + " generator images");
  }
  for (const Polynomial& p : images) {
    if (!(p.signature() == sig)) throw Error(ErrorCode::SignatureMismatch, std::string(what) + " image outside " + sig.str());
  }
}

void check_signature(const RingSignature& expected, const Polynomial& p, const char* what) {
  if (!(p.signature() == expected)) {
    throw Error(ErrorCode::SignatureMismatch,
                std::string(what) + ": " + p.signature().str() + " vs " + expected.str());
  }
}

Json images_to_json(const RingSignature& sig, const std::vector<Polynomial>& images) {
  Json j = Json::object();
  for (std::size_t v = 0; v < images.size(); ++v) j[sig.var_name(v)] = images[v].str();
  return j;
}

std::vector<Polynomial> images_from_json(const RingSignature& sig, const Json& j, std::vector<Polynomial> defaults) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "generator images must be a JSON object");
  for (const auto& [name, text] : j.items()) {
    const auto var = sig.find_var(name);
    if (!var) throw Error(ErrorCode::UnknownVariable, "unknown generator '" + name + "' for " + sig.str());
    if (!text.is_string()) throw Error(ErrorCode::InvalidArgument, "image of '" + name + "' must be polynomial text");
    defaults[*var] = Polynomial::parse(sig, text.get<std::string>());
  }
  return defaults;
}

}  // namespace

// ------------------------------------------------------- endomorphism

RingEndomorphism::RingEndomorphism(const RingSignature& sig) : sig_(sig), images_(identity_images(sig)) {}

RingEndomorphism::RingEndomorphism(const RingSignature& sig, std::vector<Polynomial> images)
    : sig_(sig), images_(std::move(images)) {
  check_images(sig_, images_, "endomorphism");
}

void RingEndomorphism::set_image(std::size_t var, Polynomial image) {
  check_signature(sig_, image, "endomorphism image");
  images_.at(var) = std::move(image);
}

Polynomial RingEndomorphism::apply(const Polynomial& p) const {
  check_signature(sig_, p, "apply_endo");
  return p.substitute(images_);
}

std::vector<FieldElement> RingEndomorphism::map_point(std::span<const FieldElement> point) const {
  std::vector<FieldElement> out;
  out.reserve(images_.size());
  for (const Polynomial& img : images_) out.push_back(img.evaluate(point));
  return out;
}

bool RingEndomorphism::is_identity() const {
  for (std::size_t v = 0; v < images_.size(); ++v) {
    if (!(images_[v] == Polynomial::variable(sig_, v))) return false;
  }
  return true;
}

Json RingEndomorphism::to_json() const { return images_to_json(sig_, images_); }

RingEndomorphism RingEndomorphism::from_json(const RingSignature& sig, const Json& j) {
  return RingEndomorphism(sig, images_from_json(sig, j, identity_images(sig)));
}

Polynomial apply_endo(const RingEndomorphism& phi, const Polynomial& p) { return phi.apply(p); }

RingEndomorphism compose_endos(const RingEndomorphism& outer, const RingEndomorphism& inner) {
  if (!(outer.signature() == inner.signature())) {
    throw Error(ErrorCode::SignatureMismatch, "compose_endos: " + outer.signature().str() + " vs " + inner.signature().str());
  }
  std::vector<Polynomial> images;
  images.reserve(inner.images().size());
  for (const Polynomial& g : inner.images()) images.push_back(outer.apply(g));
  return RingEndomorphism(outer.signature(), std::move(images));
}

bool is_identity(const RingEndomorphism& phi) { return phi.is_identity(); }

// ---------------------------------------------------------- derivation

Derivation::Derivation(const RingSignature& sig) : sig_(sig), images_(sig.num_vars(), Polynomial(sig)) {}

Derivation::Derivation(const RingSignature& sig, std::vector<Polynomial> images) : sig_(sig), images_(std::move(images)) {
  check_images(sig_, images_, "derivation");
}

void Derivation::set_image(std::size_t var, Polynomial image) {
  check_signature(sig_, image, "derivation image");
  images_.at(var) = std::move(image);
}

Polynomial Derivation::apply(const Polynomial& p) const {
  check_signature(sig_, p, "apply_derivation");
  Polynomial sum(sig_);
  for (std::size_t v = 0; v < images_.size(); ++v) {
    if (images_[v].is_zero() || !p.involves(v)) continue;
    sum += p.partial_derivative(v) * images_[v];
  }
  return sum;
}

Derivation Derivation::scaled(const Polynomial& h) const {
  check_signature(sig_, h, "scaled derivation");
  std::vector<Polynomial> images;
  images.reserve(images_.size());
  for (const Polynomial& img : images_) images.push_back(h * img);
  return Derivation(sig_, std::move(images));
}

Json Derivation::to_json() const { return images_to_json(sig_, images_); }

Derivation Derivation::from_json(const RingSignature& sig, const Json& j) {
  return Derivation(sig, images_from_json(sig, j, std::vector<Polynomial>(sig.num_vars(), Polynomial(sig))));
}

Polynomial apply_derivation(const Derivation& delta, const Polynomial& p) { return delta.apply(p); }

Derivation build_Delta(const PqSpec& spec) {
  const RingSignature sig = spec.signature();
  Derivation delta(sig);
  const Polynomial z = Polynomial::variable(sig, sig.z());
  delta.set_image(sig.z(), x_power_bracket(sig, 2));
  const Polynomial unit = Polynomial::constant(sig, FieldElement(1)) +
                          x_power_bracket(sig, 1) * spec.q.derivative().compose(z * z);
  delta.set_image(sig.y(), FieldElement(-2) * (z * unit));
  return delta;
}

std::optional<unsigned> nilpotency_index(const Derivation& delta, const Polynomial& p, const PqSpec* spec,
                                         unsigned cap) {
  if (cap < 1) throw Error(ErrorCode::InvalidArgument, "nilpotency cap must be >= 1");
  Polynomial current = spec ? reduce_mod_relation(p, *spec) : p;
  for (unsigned m = 1; m <= cap; ++m) {
    current = delta.apply(current);
    if (spec) current = reduce_mod_relation(current, *spec);
    if (current.is_zero()) return m;
  }
  return std::nullopt;
}

long delta_nilpotency_bound(const PqSpec& spec, const Polynomial& p) {
  const RingSignature& sig = p.signature();
  const long weight_y = build_Delta(spec).image(sig.y()).degree(sig.z()) + 1;
  long bound = 1;
  for (const Term& t : p.terms()) {
    bound = std::max(bound, static_cast<long>(t.monomial[sig.y()]) * weight_y + static_cast<long>(t.monomial[sig.z()]) + 1);
  }
  return bound;
}

std::variant<Polynomial, NotAMultiple> decompose_as_Delta_multiple(const Derivation& delta, const PqSpec& spec) {
  const RingSignature sig = spec.signature();
  if (!(delta.signature() == sig)) {
    throw Error(ErrorCode::SignatureMismatch, "decomposition needs a derivation of " + sig.str());
  }
  auto reduce = [&](const Polynomial& p) { return reduce_mod_relation(p, spec); };

  for (int i = 1; i <= sig.n; ++i) {
    if (!reduce(delta.image(sig.x(i))).is_zero()) {
      return NotAMultiple{"delta(x" + std::to_string(i) + ") is not zero modulo the relation"};
    }
  }
  const Polynomial a = reduce(delta.image(sig.z()));
  if (a.involves(sig.y()) || a.involves(sig.z())) {
    return NotAMultiple{"delta(z) = " + a.str() + " is not in Q[x]"};
  }
  auto h = a.exact_divide(x_power_bracket(sig, 2));
  if (!h) return NotAMultiple{"x^[2] does not divide delta(z) = " + a.str()};
  if (!reduce(delta.apply(spec.relation())).is_zero()) {
    return NotAMultiple{"delta does not annihilate P_q - c"};
  }
  const Polynomial mismatch = reduce(delta.image(sig.y()) - *h * build_Delta(spec).image(sig.y()));
  if (!mismatch.is_zero()) {
    return NotAMultiple{"delta(y) differs from h*Delta(y) by " + mismatch.str()};
  }
  return *std::move(h);
}

}  // namespace stably
