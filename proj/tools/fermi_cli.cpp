// Command-line front end. Uses only the C API in fermi/fermi.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fermi/fermi.h"

namespace {

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(fermi_status st) {
  if (st != FERMI_OK) throw CliError(fermi_last_error());
}

struct StateDeleter {
  void operator()(fermi_state* s) const { fermi_state_free(s); }
};
using StatePtr = std::unique_ptr<fermi_state, StateDeleter>;

struct StringDeleter {
  void operator()(char* s) const { fermi_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

StatePtr read_state(const std::string& path) {
  fermi_state* s = nullptr;
  check(fermi_state_read(path.c_str(), &s));
  return StatePtr(s);
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw CliError("cannot open '" + output + "' for writing");
  out << text << '\n';
  if (!out) throw CliError("write to '" + output + "' failed");
}

void emit_owned(char* raw, const std::string& output) {
  OwnedString s(raw);
  emit(s.get(), output);
}

// Whitespace separated triples, '#' starts a comment; or a JSON array of triples.
nlohmann::json read_excluded(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw CliError(path + ": " + e.what());
    }
    return doc.is_object() ? doc.at("excluded") : doc;
  }
  nlohmann::json out = nlohmann::json::array();
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    line = line.substr(0, line.find('#'));
    std::istringstream ls(line);
    std::vector<int> vals;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw CliError(path + ":" + std::to_string(lineno) + ": not an integer '" + tok + "'");
      }
    }
    if (vals.empty()) continue;
    if (vals.size() != 3) throw CliError(path + ":" + std::to_string(lineno) + ": expected 3 indices");
    out.push_back(vals);
  }
  return out;
}

std::vector<int> parse_indices(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw CliError("bad index '" + tok + "'");
    }
  }
  return out;
}

std::string coeff_table_text(const nlohmann::json& doc) {
  const int max_m = doc.at("max_m").get<int>();
  const int top = max_m - 2;
  std::ostringstream out;
  out << "M";
  for (int p = 0; p <= top; ++p) out << " & a_" << p;
  out << '\n';
  for (const auto& row : doc.at("rows")) {
    const int M = row.at("M").get<int>();
    const auto& a = row.at("a");
    // Even rows end at a_{M-1}, odd rows at a_{M-2}, matching the printed layout.
    const int last = M % 2 == 0 ? M - 1 : M - 2;
    out << M;
    for (int p = 0; p <= top; ++p) {
      out << " & ";
      if (p <= last) out << a.at(static_cast<std::size_t>(p)).get<std::string>();
    }
    out << '\n';
  }
  std::string s = out.str();
  s.pop_back();
  return s;
}

void verify_line(int index, const char* name, int passed, const char* detail, double seconds, void*) {
  std::printf("[%s] %d %s (%.2fs): %s\n", passed ? "PASS" : "FAIL", index, name, seconds, detail);
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fermionic multilinear algebra toolkit"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: FERMI_THREADS or core count)")
      ->check(CLI::NonNegativeNumber);

  std::string input;
  std::string output;
  std::uint64_t seed = 0;
  int restarts = 0;

  auto* gen = app.add_subcommand("gen", "Write a random, BCS, Slater or planted SOV state");
  std::string kind = "random";
  int gm = 0;
  int gn = 0;
  std::string indices;
  gen->add_option("--kind", kind, "random | bcs | slater | planted")
      ->check(CLI::IsMember({"random", "bcs", "slater", "planted"}));
  gen->add_option("--m", gm, "Number of modes")->required();
  gen->add_option("--n", gn, "Number of particles");
  gen->add_option("--indices", indices, "Comma separated 1-based modes for --kind slater");
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--output,-o", output, "State file (default: stdout)");

  auto* takagi = app.add_subcommand("takagi", "Canonical form of a 2-vector");
  takagi->add_option("--input,-i", input, "State file")->required();
  takagi->add_option("--output,-o", output, "Report file");

  auto* canon5 = app.add_subcommand("canon5", "Canonical form of a 3-vector in 5 modes");
  canon5->add_option("--input,-i", input, "State file")->required();
  canon5->add_option("--output,-o", output, "Report file");

  double tol = 0.0;
  std::string state_out;
  auto add_reduce = [&](CLI::App* sub) {
    sub->add_option("--input,-i", input, "State file")->required();
    sub->add_option("--output,-o", output, "Report file");
    sub->add_option("--state-out", state_out, "Write the reduced state here");
    sub->add_option("--restarts", restarts, "Optimizer restarts");
    sub->add_option("--seed", seed, "Random seed");
    sub->add_option("--tol", tol, "Relative residual tolerance");
  };
  auto* rsov = app.add_subcommand("reduce-sov", "Rotate a 3-vector into the single occupancy subspace");
  add_reduce(rsov);
  auto* rmin = app.add_subcommand("reduce-minimal", "Reduce a 3-vector to the minimal even subspace");
  add_reduce(rmin);

  auto* certify = app.add_subcommand("certify", "Exact universality certificate for a subspace");
  int cm = 0;
  std::string excluded_file;
  std::string preset;
  std::string multiplier;
  bool eliminate = false;
  int budget = 0;
  certify->add_option("--m", cm, "Number of modes")->required();
  auto* ex_opt = certify->add_option("--excluded-file", excluded_file, "Excluded triples (text or JSON)");
  auto* pre_opt = certify->add_option("--preset", preset, "sov | minimal-even | minimal-odd")
                      ->check(CLI::IsMember({"sov", "minimal-even", "minimal-odd"}));
  ex_opt->excludes(pre_opt);
  certify->add_option("--multiplier", multiplier, "Monomial such as x1*x3^2");
  certify->add_flag("--eliminate-last-var", eliminate, "Drop x_M before pairing (odd m)");
  certify->add_option("--budget", budget, "Maximum multipliers to try");
  certify->add_option("--output,-o", output, "Report file");

  auto* atable = app.add_subcommand("atable", "Coefficient table a_p^(M)");
  int max_m = 8;
  bool as_json = false;
  atable->add_option("--max-m", max_m, "Largest M")->required();
  atable->add_flag("--json", as_json, "Print the JSON report");
  atable->add_option("--output,-o", output, "Output file");

  auto* dims = app.add_subcommand("dims", "Dimension counts for (m, n)");
  int dm = 0;
  int dn = 0;
  dims->add_option("--m", dm, "Number of modes")->required();
  dims->add_option("--n", dn, "Number of particles")->required();
  dims->add_option("--output,-o", output, "Report file");

  auto* bcs = app.add_subcommand("bcs-check", "Obstruction and invariance checks for psi_{n,m}");
  int bn = 0;
  int bm = 0;
  bcs->add_option("--n", bn, "Number of particles")->required();
  bcs->add_option("--m", bm, "Number of modes")->required();
  bcs->add_option("--restarts", restarts, "Optimizer restarts");
  bcs->add_option("--seed", seed, "Random seed");
  bcs->add_option("--output,-o", output, "Report file");

  auto* escape = app.add_subcommand("escape", "Best distance to the single occupancy bundle");
  double threshold = 0.01;
  escape->add_option("--input,-i", input, "State file")->required();
  escape->add_option("--restarts", restarts, "Optimizer restarts");
  escape->add_option("--seed", seed, "Random seed");
  escape->add_option("--threshold", threshold, "Reported reach threshold");
  escape->add_option("--output,-o", output, "Report file");

  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  std::vector<int> only;
  verify->add_option("--only", only, "Criterion numbers to run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const int nthreads = threads > 0 ? threads : fermi_default_threads();
    char* report = nullptr;

    if (gen->parsed()) {
      fermi_state* s = nullptr;
      if (kind == "random") {
        check(fermi_state_random(gm, gn, seed, &s));
      } else if (kind == "bcs") {
        check(fermi_state_bcs(gn, gm, &s));
      } else if (kind == "planted") {
        check(fermi_state_planted_sov(gm, seed, &s));
      } else {
        const std::vector<int> idx = parse_indices(indices);
        check(fermi_state_slater(gm, idx.data(), static_cast<int>(idx.size()), &s));
      }
      StatePtr st(s);
      if (output.empty()) {
        check(fermi_state_to_json(st.get(), &report));
        emit_owned(report, "");
      } else {
        check(fermi_state_write(st.get(), output.c_str()));
      }
      return 0;
    }
    if (takagi->parsed()) {
      check(fermi_takagi(read_state(input).get(), &report));
      emit_owned(report, output);
      return 0;
    }
    if (canon5->parsed()) {
      check(fermi_canon5(read_state(input).get(), &report));
      emit_owned(report, output);
      return 0;
    }
    if (rsov->parsed() || rmin->parsed()) {
      const StatePtr st = read_state(input);
      const fermi_reduce_options opts{tol, restarts, seed, nthreads};
      fermi_state* reduced = nullptr;
      auto fn = rsov->parsed() ? fermi_reduce_sov : fermi_reduce_minimal;
      check(fn(st.get(), &opts, &report, state_out.empty() ? nullptr : &reduced));
      const StatePtr red(reduced);
      emit_owned(report, output);
      if (red) check(fermi_state_write(red.get(), state_out.c_str()));
      return 0;
    }
    if (certify->parsed()) {
      if (preset.empty() && excluded_file.empty()) throw CliError("certify needs --preset or --excluded-file");
      nlohmann::json req = {{"m", cm}, {"threads", nthreads}};
      if (!preset.empty()) req["preset"] = preset;
      else req["excluded"] = read_excluded(excluded_file);
      if (!multiplier.empty()) req["multiplier"] = multiplier;
      if (eliminate) req["eliminate_last_var"] = true;
      if (budget > 0) req["budget"] = budget;
      fermi_verdict verdict = FERMI_VERDICT_UNKNOWN;
      check(fermi_certify(req.dump().c_str(), &report, &verdict));
      emit_owned(report, output);
      return verdict == FERMI_VERDICT_UNKNOWN ? 2 : 0;
    }
    if (atable->parsed()) {
      check(fermi_coeff_table(max_m, &report));
      OwnedString s(report);
      emit(as_json ? std::string(s.get()) : coeff_table_text(nlohmann::json::parse(s.get())), output);
      return 0;
    }
    if (dims->parsed()) {
      check(fermi_dims(dm, dn, &report));
      emit_owned(report, output);
      return 0;
    }
    if (bcs->parsed()) {
      check(fermi_bcs_check(bn, bm, restarts, seed, nthreads, &report));
      emit_owned(report, output);
      return 0;
    }
    if (escape->parsed()) {
      check(fermi_escape(read_state(input).get(), restarts, seed, nthreads, threshold, &report));
      emit_owned(report, output);
      return 0;
    }
    if (verify->parsed()) {
      int failures = 0;
      check(fermi_verify(nthreads, only.data(), static_cast<int>(only.size()), verify_line, nullptr, &failures));
      std::printf("%d failed\n", failures);
      return failures == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
