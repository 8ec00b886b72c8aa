#include "fusionkit.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <optional>
#include <string>

#include "backtrack.h"
#include "cache.h"
#include "catalog.h"
#include "fusion.h"
#include "linking.h"
#include "report.h"

namespace {

using namespace fusionkit;

thread_local std::string g_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

FusionLimits to_limits(const fk_caps* caps) {
  FusionLimits lim;
  if (caps) {
    if (caps->max_s_order) lim.max_s_order = caps->max_s_order;
    if (caps->max_morphisms) lim.max_morphisms = caps->max_morphisms;
    if (caps->max_aut_bruteforce) lim.max_aut_bruteforce = caps->max_aut_bruteforce;
  }
  return lim;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct Resolved {
  PermGroup group;
  int p;
};

Resolved resolve(const char* selector, int p) {
  if (!selector || !*selector) throw std::invalid_argument("empty group selector");
  GroupSpec gs = group_from_selector(selector);
  if (p <= 0) {
    if (!gs.file_p) throw std::invalid_argument("no prime given and none in the input");
    p = *gs.file_p;
  }
  if (!is_prime(p)) throw std::invalid_argument("p must be a prime");
  return {std::move(gs.group), p};
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

int run(char** out_json, const std::function<std::string()>& fn) {
  if (!out_json) {
    g_error = "out_json is null";
    return FK_EINPUT;
  }
  try {
    std::string text = fn();
    char* c = dup_string(text);
    if (!c) {
      g_error = "allocation failure";
      return FK_EINTERNAL;
    }
    *out_json = c;
    g_error.clear();
    return FK_OK;
  } catch (const CapacityError& e) {
    g_error = e.what();
    return FK_ECAPACITY;
  } catch (const std::invalid_argument& e) {
    g_error = e.what();
    return FK_EINPUT;
  } catch (const std::exception& e) {
    g_error = e.what();
    return FK_EINTERNAL;
  }
}

// Computes (or replays) one cached document.  The stored bytes are returned
// unchanged on a hit, so warm results equal cold ones exactly.
std::string cached(const std::string& description,
                   const std::function<std::string()>& compute) {
  ResultCache cache;
  std::string key = ResultCache::key(description);
  if (auto hit = cache.load(key)) return *hit;
  std::string text = compute();
  cache.store(key, text);
  return text;
}

std::string analyze_text(const PermGroup& g, int p, const std::string& input,
                         bool with_linking, const FusionLimits& lim) {
  std::string command = with_linking ? "analyze+linking" : "analyze";
  return cached(cache_description(command, p, lim, {&g}), [&] {
    auto t0 = std::chrono::steady_clock::now();
    FusionSystem F = fusion_from_group(g, p, nullptr, lim);
    std::optional<MuKappaReport> mk;
    if (with_linking) mk = mu_kappa_report(F);
    return analysis_report(F, input, mk ? &*mk : nullptr, ms_since(t0)).dump(2) + "\n";
  });
}

}  // namespace

extern "C" {

const char* fk_version(void) { return "fusionkit 1.0"; }

const char* fk_last_error(void) { return g_error.c_str(); }

void fk_string_free(char* s) { std::free(s); }

int fk_analyze(const char* selector, int p, int with_linking,
               const fk_caps* caps, char** out_json) {
  return run(out_json, [&] {
    Resolved r = resolve(selector, p);
    return analyze_text(r.group, r.p, selector, with_linking != 0, to_limits(caps));
  });
}

int fk_reduce(const char* selector, int p, const fk_caps* caps, char** out_json) {
  return run(out_json, [&] {
    Resolved r = resolve(selector, p);
    FusionLimits lim = to_limits(caps);
    return cached(cache_description("reduce", r.p, lim, {&r.group}), [&] {
      auto t0 = std::chrono::steady_clock::now();
      FusionSystem F = fusion_from_group(r.group, r.p, nullptr, lim);
      ReductionTrace tr = reduce(F);
      return reduce_report(F, tr, selector, ms_since(t0)).dump(2) + "\n";
    });
  });
}

int fk_compare(const char* selector_a, const char* selector_b, int p,
               const fk_caps* caps, char** out_json) {
  return run(out_json, [&] {
    Resolved a = resolve(selector_a, p);
    Resolved b = resolve(selector_b, p);
    if (a.p != b.p) throw std::invalid_argument("the inputs name different primes");
    FusionLimits lim = to_limits(caps);
    return cached(cache_description("compare", a.p, lim, {&a.group, &b.group}), [&] {
      auto t0 = std::chrono::steady_clock::now();
      FusionSystem Fa = fusion_from_group(a.group, a.p, nullptr, lim);
      FusionSystem Fb = fusion_from_group(b.group, b.p, nullptr, lim);
      return compare_report(Fa, Fb, selector_a, selector_b, ms_since(t0)).dump(2) + "\n";
    });
  });
}

int fk_linking(const char* selector, int p, const fk_caps* caps, char** out_json) {
  return run(out_json, [&] {
    Resolved r = resolve(selector, p);
    FusionLimits lim = to_limits(caps);
    return cached(cache_description("linking", r.p, lim, {&r.group}), [&] {
      auto t0 = std::chrono::steady_clock::now();
      FusionSystem F = fusion_from_group(r.group, r.p, nullptr, lim);
      MuKappaReport mk = mu_kappa_report(F);
      return linking_report(F, mk, selector, ms_since(t0)).dump(2) + "\n";
    });
  });
}

int fk_catalog(char** out_json) {
  return run(out_json, [&] { return catalog_report().dump(2) + "\n"; });
}

}  // extern "C"

struct fk_system {
  fusionkit::FusionSystem F;
  std::string selector;
  fusionkit::FusionLimits lim;
};

extern "C" {

int fk_system_open(const char* selector, int p, const fk_caps* caps,
                   fk_system** out) {
  if (!out) {
    g_error = "out is null";
    return FK_EINPUT;
  }
  try {
    Resolved r = resolve(selector, p);
    FusionLimits lim = to_limits(caps);
    auto* s = new fk_system{fusion_from_group(r.group, r.p, nullptr, lim),
                            selector, lim};
    *out = s;
    g_error.clear();
    return FK_OK;
  } catch (const CapacityError& e) {
    g_error = e.what();
    return FK_ECAPACITY;
  } catch (const std::invalid_argument& e) {
    g_error = e.what();
    return FK_EINPUT;
  } catch (const std::exception& e) {
    g_error = e.what();
    return FK_EINTERNAL;
  }
}

void fk_system_close(fk_system* s) { delete s; }

int fk_system_p(const fk_system* s) { return s ? s->F.p : 0; }

uint64_t fk_system_s_order(const fk_system* s) {
  return s ? s->F.S.order() : 0;
}

int fk_system_analyze(fk_system* s, int with_linking, char** out_json) {
  if (!s) {
    g_error = "system is null";
    return FK_EINPUT;
  }
  return run(out_json, [&] {
    return analyze_text(s->F.G, s->F.p, s->selector, with_linking != 0, s->lim);
  });
}

}  // extern "C"
