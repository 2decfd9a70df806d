#include "fermi/fermi.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <thread>

#include "fermi/canonical.hpp"
#include "fermi/error.hpp"
#include "fermi/polycert.hpp"
#include "fermi/random.hpp"
#include "fermi/report.hpp"
#include "fermi/state_io.hpp"
#include "fermi/states.hpp"
#include "fermi/verify.hpp"

struct fermi_state {
  fermi::FermionState psi;
};

namespace {

thread_local std::string g_last_error;

fermi_status set_error(fermi_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs body and maps exceptions to status codes.
template <class F>
fermi_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return FERMI_OK;
  } catch (const fermi::Error& e) {
    return set_error(static_cast<fermi_status>(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return set_error(FERMI_PARSE_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(FERMI_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return set_error(FERMI_INTERNAL, e.what());
  } catch (...) {
    return set_error(FERMI_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* what) {
  fermi::require(p != nullptr, fermi::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

void put_state(fermi::FermionState psi, fermi_state** out) {
  need(out, "out");
  *out = new fermi_state{std::move(psi)};
}

void put_json(const nlohmann::json& doc, char** out) {
  need(out, "out");
  *out = dup_string(doc.dump(2));
  fermi::require(*out != nullptr, fermi::ErrorCode::Capacity, "out of memory");
}

int resolve_threads(int threads) { return threads > 0 ? threads : fermi_default_threads(); }

fermi::ReduceOptions reduce_opts(const fermi_reduce_options* opts) {
  fermi::ReduceOptions r;
  if (opts) {
    if (opts->tol > 0) r.tol = opts->tol;
    if (opts->restarts > 0) r.restarts = opts->restarts;
    r.seed = opts->seed;
    r.threads = resolve_threads(opts->threads);
  } else {
    r.threads = resolve_threads(0);
  }
  return r;
}

}  // namespace

extern "C" {

const char* fermi_last_error(void) { return g_last_error.c_str(); }

void fermi_string_free(char* s) { std::free(s); }

int fermi_default_threads(void) {
  if (const char* env = std::getenv("FERMI_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void fermi_state_free(fermi_state* s) { delete s; }

fermi_status fermi_state_read(const char* path, fermi_state** out) {
  return guarded([&] {
    need(path, "path");
    put_state(fermi::read_state_file(path), out);
  });
}

fermi_status fermi_state_write(const fermi_state* s, const char* path) {
  return guarded([&] {
    need(s, "state");
    need(path, "path");
    fermi::write_state_file(s->psi, path);
  });
}

fermi_status fermi_state_parse(const char* json, fermi_state** out) {
  return guarded([&] {
    need(json, "json");
    put_state(fermi::parse_state(json), out);
  });
}

fermi_status fermi_state_to_json(const fermi_state* s, char** out) {
  return guarded([&] {
    need(s, "state");
    need(out, "out");
    *out = dup_string(fermi::dump_state(s->psi));
  });
}

fermi_status fermi_state_shape(const fermi_state* s, int* m, int* n) {
  return guarded([&] {
    need(s, "state");
    if (m) *m = s->psi.m();
    if (n) *n = s->psi.n();
  });
}

fermi_status fermi_state_hash(const fermi_state* s, char** out) {
  return guarded([&] {
    need(s, "state");
    need(out, "out");
    *out = dup_string(fermi::state_hash(s->psi));
  });
}

fermi_status fermi_state_random(int m, int n, uint64_t seed, fermi_state** out) {
  return guarded([&] { put_state(fermi::random_state(m, n, seed), out); });
}

fermi_status fermi_state_bcs(int n, int m, fermi_state** out) {
  return guarded([&] { put_state(fermi::bcs_state(n, m), out); });
}

fermi_status fermi_state_slater(int m, const int* indices, int n, fermi_state** out) {
  return guarded([&] {
    fermi::require(n >= 0, fermi::ErrorCode::InvalidArgument, "n must be >= 0");
    if (n > 0) need(indices, "indices");
    std::vector<int> idx(indices, indices + n);
    put_state(fermi::FermionState::basis_state(fermi::Combination(m, idx)), out);
  });
}

fermi_status fermi_state_planted_sov(int m, uint64_t seed, fermi_state** out) {
  return guarded([&] { put_state(fermi::planted_sov_state(m, seed), out); });
}

fermi_status fermi_takagi(const fermi_state* s, char** report) {
  return guarded([&] {
    need(s, "state");
    put_json(fermi::takagi_report(s->psi, fermi::takagi_2vector(s->psi)), report);
  });
}

fermi_status fermi_canon5(const fermi_state* s, char** report) {
  return guarded([&] {
    need(s, "state");
    put_json(fermi::canon5_report(s->psi, fermi::canonical_3in5(s->psi)), report);
  });
}

fermi_status fermi_reduce_sov(const fermi_state* s, const fermi_reduce_options* opts, char** report,
                              fermi_state** reduced) {
  return guarded([&] {
    need(s, "state");
    const fermi::ReduceOptions o = reduce_opts(opts);
    fermi::ReductionResult r = fermi::reduce_to_sov(s->psi, o);
    put_json(fermi::reduction_report("reduce-sov", s->psi, r, o), report);
    if (reduced) *reduced = new fermi_state{std::move(r.reduced)};
  });
}

fermi_status fermi_reduce_minimal(const fermi_state* s, const fermi_reduce_options* opts, char** report,
                                  fermi_state** reduced) {
  return guarded([&] {
    need(s, "state");
    fermi::MinimalOptions o;
    o.sov = reduce_opts(opts);
    fermi::ReductionResult r = fermi::reduce_to_minimal(s->psi, o);
    put_json(fermi::reduction_report("reduce-minimal", s->psi, r, o.sov), report);
    if (reduced) *reduced = new fermi_state{std::move(r.reduced)};
  });
}

fermi_status fermi_certify(const char* request_json, char** report, fermi_verdict* verdict) {
  return guarded([&] {
    need(request_json, "request");
    const nlohmann::json req = nlohmann::json::parse(request_json);
    fermi::require(req.contains("m"), fermi::ErrorCode::InvalidArgument, "certify request needs \"m\"");
    const int m = req.at("m").get<int>();
    fermi::SubspaceSpec spec;
    const bool has_preset = req.contains("preset");
    const bool has_excluded = req.contains("excluded");
    fermi::require(has_preset != has_excluded, fermi::ErrorCode::InvalidArgument,
                   "certify request needs exactly one of \"preset\" or \"excluded\"");
    if (has_preset) {
      spec = fermi::preset_spec(req.at("preset").get<std::string>(), m);
    } else {
      spec.m = m;
      for (const auto& t : req.at("excluded")) {
        fermi::require(t.is_array() && t.size() == 3, fermi::ErrorCode::Parse, "excluded entries must be 3-element lists");
        spec.excluded.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
      }
    }
    spec.validate();

    fermi::CertifyOptions opts;
    if (req.contains("budget")) opts.multiplier_budget = req.at("budget").get<int>();
    if (req.contains("multiplier")) opts.multiplier = fermi::parse_monomial(req.at("multiplier").get<std::string>(), m);
    if (req.contains("eliminate_last_var")) {
      opts.elimination = req.at("eliminate_last_var").get<bool>() ? fermi::Elimination::On : fermi::Elimination::Off;
    }
    opts.threads = resolve_threads(req.value("threads", 0));

    const fermi::Certificate cert = fermi::certify(spec, opts);
    put_json(fermi::certificate_report(cert), report);
    if (verdict) *verdict = static_cast<fermi_verdict>(static_cast<int>(cert.verdict));
  });
}

fermi_status fermi_coeff_table(int max_m, char** report) {
  return guarded([&] {
    fermi::require(max_m >= 4 && max_m <= 200, fermi::ErrorCode::InvalidArgument, "max_m must be in [4, 200]");
    put_json(fermi::coeff_table_report(max_m), report);
  });
}

fermi_status fermi_dims(int m, int n, char** report) {
  return guarded([&] { put_json(fermi::dims_json(fermi::dims_report(m, n)), report); });
}

fermi_status fermi_bcs_check(int n, int m, int restarts, uint64_t seed, int threads, char** report) {
  return guarded([&] {
    fermi::BcsCheckOptions opts;
    if (restarts > 0) opts.experiment.restarts = restarts;
    opts.experiment.seed = seed;
    opts.experiment.threads = resolve_threads(threads);
    put_json(fermi::bcs_check_report(n, m, opts), report);
  });
}

fermi_status fermi_escape(const fermi_state* s, int restarts, uint64_t seed, int threads, double threshold,
                          char** report) {
  return guarded([&] {
    need(s, "state");
    fermi::ExperimentOptions opts;
    if (restarts > 0) opts.restarts = restarts;
    opts.seed = seed;
    opts.threads = resolve_threads(threads);
    const fermi::EscapeResult r = fermi::sov_escape_experiment(s->psi, opts);
    put_json(fermi::escape_report(s->psi, r, opts, threshold), report);
  });
}

fermi_status fermi_verify(int threads, const int* only, int only_count, fermi_verify_callback cb, void* user,
                          int* failures) {
  return guarded([&] {
    fermi::VerifyOptions opts;
    opts.threads = resolve_threads(threads);
    if (only && only_count > 0) opts.only.assign(only, only + only_count);
    int failed = 0;
    fermi::run_acceptance(opts, [&](const fermi::CriterionResult& r) {
      if (!r.passed) ++failed;
      if (cb) cb(r.index, r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), r.seconds, user);
    });
    if (failures) *failures = failed;
  });
}

int fermi_verify_criterion_count(void) { return fermi::acceptance_criterion_count(); }

}  // extern "C"
