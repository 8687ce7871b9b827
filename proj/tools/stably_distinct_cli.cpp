// Batch front end over the C API.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stably_distinct.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Config {
  int n = 1;
  std::string q;
  std::string q2;
  std::string c = "0";
  std::string c2 = "0";
  std::string sqrt_d;
  std::string c_samples;
  int k_max = 3;
  unsigned order = 8;
  std::string format = "text";
  std::uint64_t seed = 0;
  unsigned samples = 100;
};

// A failing library call, mapped onto an exit code.
struct Failure {
  sd_status status;
  std::string message;
};

void check(sd_status s) {
  if (s != SD_OK) throw Failure{s, std::string(sd_status_name(s)) + ": " + sd_last_error()};
}

std::string take(char* s) {
  std::string out(s);
  sd_string_free(s);
  return out;
}

struct SpecDeleter {
  void operator()(sd_spec* s) const { sd_spec_free(s); }
};
struct CertDeleter {
  void operator()(sd_certificate* c) const { sd_certificate_free(c); }
};
struct VerdictDeleter {
  void operator()(sd_verdict* v) const { sd_verdict_free(v); }
};
using SpecPtr = std::unique_ptr<sd_spec, SpecDeleter>;
using CertPtr = std::unique_ptr<sd_certificate, CertDeleter>;
using VerdictPtr = std::unique_ptr<sd_verdict, VerdictDeleter>;

SpecPtr make_spec(int n, const std::string& q, const std::string& c) {
  sd_spec* s = nullptr;
  check(sd_spec_create(n, q.c_str(), c.c_str(), &s));
  return SpecPtr(s);
}

int report(const Config& cfg, CertPtr cert, Json extra = Json::object()) {
  int passed = 0;
  check(sd_certificate_passed(cert.get(), &passed));
  if (cfg.format == "json") {
    char* text = nullptr;
    check(sd_certificate_to_json(cert.get(), &text));
    Json j = Json::parse(take(text));
    if (!extra.empty()) {
      extra["certificate"] = std::move(j);
      j = std::move(extra);
    }
    std::cout << j.dump(2) << '\n';
  } else {
    char* text = nullptr;
    check(sd_certificate_to_text(cert.get(), &text));
    std::cout << take(text);
  }
  return passed ? kExitPass : kExitFail;
}

// CLI11 reads "-1,1" after --q as a flag; glue such values to their option.
std::vector<std::string> normalize_args(int argc, char** argv) {
  static const char* const kValued[] = {"--q", "--q2", "--c", "--c2", "--sqrt", "--c-samples"};
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    bool glued = false;
    for (const char* opt : kValued) {
      if (a == opt && i + 1 < argc) {
        args.push_back(a + "=" + argv[++i]);
        glued = true;
        break;
      }
    }
    if (!glued) args.push_back(std::move(a));
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for the P_q family of hypersurfaces and their stable equivalences"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--seed", cfg.seed, "Seed for random-point checks");
    sub->add_option("--samples", cfg.samples, "Random points per identity (0 disables)");
  };
  auto need_n = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "Number of x variables")->required()->check(CLI::Range(1, 64));
  };

  auto* theorem = app.add_subcommand("verify-theorem", "Certificate for both parts of the main theorem");
  need_n(theorem);
  theorem->add_option("--k-max", cfg.k_max, "Largest k for Q_k")->check(CLI::Range(2, 12));
  theorem->add_option("--c-samples", cfg.c_samples, "Levels c for the fiber checks, comma separated");
  common(theorem);

  auto* classify = app.add_subcommand("classify", "Isomorphism class V_{a,b} of V(P_q - c)");
  need_n(classify);
  classify->add_option("--q", cfg.q, "Coefficients of q, constant term first")->required();
  classify->add_option("--c", cfg.c, "Level c");
  common(classify);

  auto* equiv = app.add_subcommand("equiv", "Decide equivalence of V(P_q - c) and V(P_q2 - c2)");
  need_n(equiv);
  equiv->add_option("--q", cfg.q, "Coefficients of q1")->required();
  equiv->add_option("--c", cfg.c, "Level c1");
  equiv->add_option("--q2", cfg.q2, "Coefficients of q2")->required();
  equiv->add_option("--c2", cfg.c2, "Level c2");
  equiv->add_option("--sqrt", cfg.sqrt_d, "Also search Q(sqrt(D))");
  common(equiv);

  auto* stable = app.add_subcommand("stable-equiv", "Verify the stable equivalence of P_q and P_{q(0)}");
  need_n(stable);
  stable->add_option("--q", cfg.q, "Coefficients of q")->required();
  common(stable);

  auto* fiber = app.add_subcommand("fiber-iso", "Verify V(P_q - c) ~= V(P_{q(c)} - c)");
  need_n(fiber);
  fiber->add_option("--q", cfg.q, "Coefficients of q")->required();
  fiber->add_option("--c", cfg.c, "Level c");
  common(fiber);

  auto* series = app.add_subcommand("series-check", "Finite-order check of the series automorphism");
  need_n(series);
  series->add_option("--order", cfg.order, "Truncation order in x-degree")->check(CLI::Range(2u, 64u));
  common(series);

  try {
    std::vector<std::string> args = normalize_args(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const sd_check_options opts{cfg.seed, cfg.samples};
  try {
    if (*classify) {
      const SpecPtr spec = make_spec(cfg.n, cfg.q, cfg.c);
      char* name = nullptr;
      check(sd_classify(spec.get(), &name));
      const std::string cls = take(name);
      if (cfg.format == "json") {
        char* sj = nullptr;
        check(sd_spec_to_json(spec.get(), &sj));
        std::cout << Json{{"spec", Json::parse(take(sj))}, {"class", cls}}.dump(2) << '\n';
      } else {
        std::cout << cls << '\n';
      }
      return kExitPass;
    }
    if (*equiv) {
      const SpecPtr a = make_spec(cfg.n, cfg.q, cfg.c);
      const SpecPtr b = make_spec(cfg.n, cfg.q2, cfg.c2);
      const char* d = cfg.sqrt_d.empty() ? nullptr : cfg.sqrt_d.c_str();
      sd_verdict* raw = nullptr;
      check(sd_decide_equivalence(a.get(), b.get(), d, &raw));
      const VerdictPtr verdict(raw);
      char* name = nullptr;
      check(sd_verdict_name(verdict.get(), &name));
      char* vj = nullptr;
      check(sd_verdict_to_json(verdict.get(), &vj));
      const Json verdict_json = Json::parse(take(vj));
      sd_certificate* cert = nullptr;
      check(sd_verify_equivalence(a.get(), b.get(), d, &opts, &cert));
      if (cfg.format == "text") std::cout << take(name) << '\n';
      else sd_string_free(name);
      return report(cfg, CertPtr(cert), Json{{"verdict", verdict_json}});
    }
    sd_certificate* cert = nullptr;
    if (*theorem) {
      check(sd_verify_theorem(cfg.n, cfg.k_max, cfg.c_samples.empty() ? nullptr : cfg.c_samples.c_str(), &opts,
                              &cert));
    } else if (*stable) {
      check(sd_verify_stable(cfg.n, cfg.q.c_str(), &opts, &cert));
    } else if (*fiber) {
      const SpecPtr spec = make_spec(cfg.n, cfg.q, cfg.c);
      check(sd_verify_fiber(spec.get(), &opts, &cert));
    } else {
      check(sd_verify_biholomorphism(cfg.n, cfg.order, &opts, &cert));
    }
    return report(cfg, CertPtr(cert));
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    switch (f.status) {
      case SD_ERR_INVALID_ARGUMENT:
      case SD_ERR_PARSE:
      case SD_ERR_PRECONDITION:
      case SD_ERR_DIMENSION_MISMATCH:
      case SD_ERR_UNKNOWN_VARIABLE:
        return kExitUsage;
      default:
        return kExitFail;
    }
  }
}
