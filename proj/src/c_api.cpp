#include "stably_distinct.h"

#include <cstring>
#include <new>
#include <string>

#include "stably/equivalence.hpp"
#include "stably/series.hpp"

struct sd_poly {
  stably::Polynomial value;
};
struct sd_spec {
  stably::PqSpec value;
};
struct sd_verdict {
  stably::HyperEquivVerdict value;
};
struct sd_certificate {
  stably::Certificate value;
};

namespace {

thread_local std::string g_last_error;

template <class F>
sd_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return SD_OK;
  } catch (const stably::Error& e) {
    g_last_error = e.what();
    return static_cast<sd_status>(static_cast<int>(e.code()));
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return SD_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SD_ERR_RESOURCE_LIMIT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SD_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return SD_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw stably::Error(stably::ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

stably::CheckOptions options(const sd_check_options* opts) {
  stably::CheckOptions o;
  if (opts) {
    o.seed = opts->seed;
    o.samples = opts->samples;
  }
  return o;
}

stably::Rational ambient(const char* d) { return d && *d ? stably::Rational::parse(d) : stably::Rational(0); }

std::vector<stably::FieldElement> field_list(std::string_view csv) {
  std::vector<stably::FieldElement> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = csv.find(',', start);
    out.push_back(stably::FieldElement::parse(csv.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

template <class Op>
sd_status binary(const sd_poly* a, const sd_poly* b, sd_poly** out, Op op) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = new sd_poly{op(a->value, b->value)};
  });
}

sd_status emit(stably::Certificate cert, sd_certificate** out) {
  *out = new sd_certificate{std::move(cert)};
  return SD_OK;
}

}  // namespace

extern "C" {

const char* sd_version(void) { return "1.0.0"; }

const char* sd_status_name(sd_status status) {
  if (status == SD_OK) return "OK";
  if (status == SD_ERR_INTERNAL) return "Internal";
  return stably::error_code_name(static_cast<stably::ErrorCode>(status));
}

const char* sd_last_error(void) { return g_last_error.c_str(); }

void sd_string_free(char* s) { delete[] s; }

sd_status sd_set_term_limit(size_t limit) {
  return guarded([&] {
    if (limit == 0) throw stably::Error(stably::ErrorCode::InvalidArgument, "term limit must be positive");
    stably::set_term_limit(limit);
  });
}

// ------------------------------------------------------------ polynomials

sd_status sd_poly_parse(int n, int with_w, const char* text, sd_poly** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new sd_poly{stably::Polynomial::parse(stably::RingSignature(n, with_w != 0), text)};
  });
}

void sd_poly_free(sd_poly* p) { delete p; }

sd_status sd_poly_to_string(const sd_poly* p, char** out) {
  return guarded([&] {
    require(p, "p");
    require(out, "out");
    *out = copy_string(p->value.str());
  });
}

sd_status sd_poly_add(const sd_poly* a, const sd_poly* b, sd_poly** out) {
  return binary(a, b, out, [](const auto& x, const auto& y) { return x + y; });
}

sd_status sd_poly_sub(const sd_poly* a, const sd_poly* b, sd_poly** out) {
  return binary(a, b, out, [](const auto& x, const auto& y) { return x - y; });
}

sd_status sd_poly_mul(const sd_poly* a, const sd_poly* b, sd_poly** out) {
  return binary(a, b, out, [](const auto& x, const auto& y) { return x * y; });
}

sd_status sd_poly_pow(const sd_poly* a, unsigned exponent, sd_poly** out) {
  return guarded([&] {
    require(a, "a");
    require(out, "out");
    *out = new sd_poly{a->value.pow(exponent)};
  });
}

sd_status sd_poly_exact_divide(const sd_poly* a, const sd_poly* b, sd_poly** out) {
  return binary(a, b, out, [](const auto& x, const auto& y) {
    auto q = x.exact_divide(y);
    if (!q) throw stably::Error(stably::ErrorCode::NotDivisible, y.str() + " does not divide " + x.str());
    return *std::move(q);
  });
}

sd_status sd_poly_equal(const sd_poly* a, const sd_poly* b, int* out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = a->value == b->value ? 1 : 0;
  });
}

// ------------------------------------------------------------------ specs

sd_status sd_spec_create(int n, const char* q_csv, const char* c, sd_spec** out) {
  return guarded([&] {
    require(q_csv, "q_csv");
    require(c, "c");
    require(out, "out");
    *out = new sd_spec{stably::PqSpec(n, stably::UnivariatePoly::parse_csv(q_csv), stably::FieldElement::parse(c))};
  });
}

sd_status sd_spec_from_json(const char* json, sd_spec** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new sd_spec{stably::PqSpec::from_json(stably::Json::parse(json))};
  });
}

sd_status sd_spec_to_json(const sd_spec* spec, char** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = copy_string(spec->value.to_json().dump());
  });
}

void sd_spec_free(sd_spec* spec) { delete spec; }

sd_status sd_spec_relation(const sd_spec* spec, sd_poly** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = new sd_poly{spec->value.relation()};
  });
}

sd_status sd_classify(const sd_spec* spec, char** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = copy_string(stably::classify(spec->value).name());
  });
}

sd_status sd_isomorphic(const sd_spec* a, const sd_spec* b, int* out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = stably::isomorphic(a->value, b->value) ? 1 : 0;
  });
}

sd_status sd_reduce(const sd_spec* spec, const sd_poly* p, sd_poly** out) {
  return guarded([&] {
    require(spec, "spec");
    require(p, "p");
    require(out, "out");
    *out = new sd_poly{stably::reduce_mod_relation(p->value, spec->value)};
  });
}

sd_status sd_delta_apply(const sd_spec* spec, const sd_poly* p, sd_poly** out) {
  return guarded([&] {
    require(spec, "spec");
    require(p, "p");
    require(out, "out");
    *out = new sd_poly{stably::build_Delta(spec->value).apply(p->value)};
  });
}

sd_status sd_delta_nilpotency(const sd_spec* spec, const sd_poly* p, unsigned cap, unsigned* out) {
  return guarded([&] {
    require(spec, "spec");
    require(p, "p");
    require(out, "out");
    const auto m = stably::nilpotency_index(stably::build_Delta(spec->value), p->value, &spec->value, cap);
    if (!m) throw stably::Error(stably::ErrorCode::ExceededCap, "Delta^m(p) != 0 for m <= " + std::to_string(cap));
    *out = *m;
  });
}

// ------------------------------------------------------------ equivalence

sd_status sd_decide_equivalence(const sd_spec* a, const sd_spec* b, const char* ambient_d, sd_verdict** out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = new sd_verdict{stably::decide_hypersurface_equivalence(a->value.q, a->value.c, b->value.q, b->value.c,
                                                                  ambient(ambient_d))};
  });
}

sd_status sd_verdict_name(const sd_verdict* v, char** out) {
  return guarded([&] {
    require(v, "verdict");
    require(out, "out");
    *out = copy_string(stably::verdict_name(v->value));
  });
}

sd_status sd_verdict_to_json(const sd_verdict* v, char** out) {
  return guarded([&] {
    require(v, "verdict");
    require(out, "out");
    *out = copy_string(stably::verdict_to_json(v->value).dump());
  });
}

void sd_verdict_free(sd_verdict* v) { delete v; }

// ----------------------------------------------------------- certificates

sd_status sd_verify_fiber(const sd_spec* spec, const sd_check_options* opts, sd_certificate** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    emit(stably::verify_fiber_isomorphism(spec->value, options(opts)), out);
  });
}

sd_status sd_verify_stable(int n, const char* q_csv, const sd_check_options* opts, sd_certificate** out) {
  return guarded([&] {
    require(q_csv, "q_csv");
    require(out, "out");
    if (n < 1) throw stably::Error(stably::ErrorCode::InvalidArgument, "n must be >= 1");
    const auto q = stably::UnivariatePoly::parse_csv(q_csv);
    emit(stably::verify_stable_equivalence(stably::build_stable_equivalence(q, n), n, options(opts)), out);
  });
}

sd_status sd_verify_theorem(int n, int k_max, const char* c_samples_csv, const sd_check_options* opts,
                            sd_certificate** out) {
  return guarded([&] {
    require(out, "out");
    std::vector<stably::FieldElement> levels = stably::default_c_samples();
    if (c_samples_csv) levels = field_list(c_samples_csv);
    emit(stably::theorem_certificate(n, k_max, levels, options(opts)), out);
  });
}

sd_status sd_verify_equivalence(const sd_spec* a, const sd_spec* b, const char* ambient_d,
                                const sd_check_options* opts, sd_certificate** out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    emit(stably::equivalence_certificate(a->value, b->value, ambient(ambient_d), options(opts)), out);
  });
}

sd_status sd_verify_biholomorphism(int n, unsigned order, const sd_check_options* opts, sd_certificate** out) {
  return guarded([&] {
    require(out, "out");
    emit(stably::verify_biholomorphism(n, order, options(opts)), out);
  });
}

sd_status sd_certificate_passed(const sd_certificate* cert, int* out) {
  return guarded([&] {
    require(cert, "certificate");
    require(out, "out");
    *out = cert->value.pass() ? 1 : 0;
  });
}

sd_status sd_certificate_to_json(const sd_certificate* cert, char** out) {
  return guarded([&] {
    require(cert, "certificate");
    require(out, "out");
    *out = copy_string(cert->value.to_json().dump(2));
  });
}

sd_status sd_certificate_to_text(const sd_certificate* cert, char** out) {
  return guarded([&] {
    require(cert, "certificate");
    require(out, "out");
    *out = copy_string(cert->value.to_text());
  });
}

void sd_certificate_free(sd_certificate* cert) { delete cert; }

}  // extern "C"
