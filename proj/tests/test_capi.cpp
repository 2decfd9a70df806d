// Exercises the shared library and the command-line tool through their public surfaces only.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

#include <json.hpp>

#include "fermi/fermi.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  fermi_string_free(s);
  return out;
}

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(FERMI_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string tmp(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

TEST(CApi, StateLifecycle) {
  fermi_state* s = nullptr;
  ASSERT_EQ(fermi_state_random(6, 3, 7, &s), FERMI_OK);
  int m = 0, n = 0;
  ASSERT_EQ(fermi_state_shape(s, &m, &n), FERMI_OK);
  EXPECT_EQ(m, 6);
  EXPECT_EQ(n, 3);
  char* json = nullptr;
  ASSERT_EQ(fermi_state_to_json(s, &json), FERMI_OK);
  fermi_state* back = nullptr;
  ASSERT_EQ(fermi_state_parse(json, &back), FERMI_OK);
  fermi_string_free(json);
  char* h1 = nullptr;
  char* h2 = nullptr;
  fermi_state_hash(s, &h1);
  fermi_state_hash(back, &h2);
  EXPECT_EQ(take(h1), take(h2));
  fermi_state_free(s);
  fermi_state_free(back);
  fermi_state_free(nullptr);
}

TEST(CApi, ErrorsMapToStatus) {
  fermi_state* s = nullptr;
  EXPECT_EQ(fermi_state_parse("{not json", &s), FERMI_PARSE_ERROR);
  EXPECT_NE(std::string(fermi_last_error()), "");
  EXPECT_EQ(s, nullptr);
  EXPECT_EQ(fermi_state_read("/nonexistent/x.json", &s), FERMI_IO_ERROR);
  EXPECT_EQ(fermi_state_bcs(3, 6, &s), FERMI_INVALID_ARGUMENT);
  EXPECT_EQ(fermi_takagi(nullptr, nullptr), FERMI_INVALID_ARGUMENT);
  const int idx[] = {2, 1};
  EXPECT_EQ(fermi_state_slater(4, idx, 2, &s), FERMI_INVALID_ARGUMENT);
  char* report = nullptr;
  EXPECT_EQ(fermi_certify(R"({"m": 7})", &report, nullptr), FERMI_INVALID_ARGUMENT);
  EXPECT_EQ(fermi_certify(R"({"m": 7, "preset": "nope"})", &report, nullptr), FERMI_INVALID_ARGUMENT);
  EXPECT_EQ(fermi_state_random(6, 3, 1, &s), FERMI_OK);
  EXPECT_STREQ(fermi_last_error(), "");
  fermi_state_free(s);
}

TEST(CApi, CertifyMinimalOdd) {
  char* report = nullptr;
  fermi_verdict v = FERMI_VERDICT_UNKNOWN;
  ASSERT_EQ(fermi_certify(R"({"m": 7, "preset": "minimal-odd", "threads": 2})", &report, &v), FERMI_OK);
  EXPECT_EQ(v, FERMI_VERDICT_UNIVERSAL);
  const auto doc = nlohmann::json::parse(take(report));
  const std::string pairing = doc.at("pairing").get<std::string>();
  EXPECT_TRUE(pairing == "48" || pairing == "-48");
}

TEST(CApi, ReduceReturnsReducedState) {
  fermi_state* s = nullptr;
  ASSERT_EQ(fermi_state_random(7, 3, 3, &s), FERMI_OK);
  const fermi_reduce_options opts{0.0, 0, 0, 1};
  char* report = nullptr;
  fermi_state* reduced = nullptr;
  ASSERT_EQ(fermi_reduce_sov(s, &opts, &report, &reduced), FERMI_OK);
  ASSERT_NE(reduced, nullptr);
  const auto doc = nlohmann::json::parse(take(report));
  EXPECT_TRUE(doc.at("success").get<bool>());
  EXPECT_LE(doc.at("relative_residual").get<double>(), 1e-12);
  fermi_state_free(reduced);
  fermi_state_free(s);
}

TEST(CApi, VerifySubsetReportsEachCriterion) {
  EXPECT_EQ(fermi_verify_criterion_count(), 10);
  int seen = 0;
  int failures = -1;
  const int only[] = {2, 10};
  auto cb = [](int, const char*, int, const char*, double, void* user) { ++*static_cast<int*>(user); };
  ASSERT_EQ(fermi_verify(1, only, 2, cb, &seen, &failures), FERMI_OK);
  EXPECT_EQ(seen, 2);
  EXPECT_EQ(failures, 0);
}

TEST(Cli, CertifyExample) {
  const CliRun r = run_cli("certify --m 7 --preset minimal-odd");
  EXPECT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc.at("verdict"), "Universal");
  EXPECT_EQ(doc.at("pairing").get<std::string>().back(), '8');
}

TEST(Cli, UnknownVerdictExitsTwo) {
  const std::string path = tmp("fermi_cli_empty.txt");
  std::ofstream(path) << "# nothing excluded\n";
  const CliRun r = run_cli("certify --m 3 --excluded-file " + path + " --multiplier x1^3");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("verdict"), "Unknown");
  std::filesystem::remove(path);
}

TEST(Cli, ExcludedFileMatchesPreset) {
  const std::string path = tmp("fermi_cli_excluded.json");
  char* report = nullptr;
  ASSERT_EQ(fermi_certify(R"({"m": 6, "preset": "minimal-even"})", &report, nullptr), FERMI_OK);
  const auto preset = nlohmann::json::parse(take(report));
  std::ofstream(path) << preset.at("excluded").dump();
  const CliRun r = run_cli("certify --m 6 --excluded-file " + path);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("pairing"), preset.at("pairing"));
  std::filesystem::remove(path);
}

TEST(Cli, DimsExample) {
  const CliRun r = run_cli("dims --m 6 --n 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("universal_lower_bound"), "5");
}

TEST(Cli, TableRowsVerbatim) {
  const CliRun r = run_cli("atable --max-m 8");
  EXPECT_EQ(r.code, 0);
  const std::string want =
      "M & a_0 & a_1 & a_2 & a_3 & a_4 & a_5 & a_6\n"
      "4 & 1 & 1 & 1 & 0 &  &  & \n"
      "5 & 0 & 1 & 1 & 0 &  &  & \n"
      "6 & 1 & 2 & 3 & 2 & 1 & 0 & \n"
      "7 & 0 & 2 & 4 & 4 & 2 & 0 & \n"
      "8 & 1 & 3 & 7 & 9 & 7 & 3 & 1\n";
  EXPECT_EQ(r.out, want);
}

TEST(Cli, GenRoundTripAndDeterminism) {
  const std::string a = tmp("fermi_cli_gen_a.json");
  const std::string b = tmp("fermi_cli_gen_b.json");
  ASSERT_EQ(run_cli("gen --kind random --m 6 --n 3 --seed 11 -o " + a).code, 0);
  ASSERT_EQ(run_cli("gen --kind random --m 6 --n 3 --seed 11 -o " + b).code, 0);
  std::ifstream fa(a), fb(b);
  const std::string sa((std::istreambuf_iterator<char>(fa)), {});
  const std::string sb((std::istreambuf_iterator<char>(fb)), {});
  EXPECT_EQ(sa, sb);

  fermi_state* direct = nullptr;
  fermi_state* read = nullptr;
  ASSERT_EQ(fermi_state_random(6, 3, 11, &direct), FERMI_OK);
  ASSERT_EQ(fermi_state_read(a.c_str(), &read), FERMI_OK);
  char* h1 = nullptr;
  char* h2 = nullptr;
  fermi_state_hash(direct, &h1);
  fermi_state_hash(read, &h2);
  EXPECT_EQ(take(h1), take(h2));
  fermi_state_free(direct);
  fermi_state_free(read);

  const CliRun r1 = run_cli("--threads 1 reduce-sov -i " + a + " --seed 3");
  const CliRun r2 = run_cli("--threads 3 reduce-sov -i " + a + " --seed 3");
  EXPECT_EQ(r1.code, 0);
  EXPECT_EQ(r1.out, r2.out);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(Cli, MalformedInputExitsOne) {
  const std::string path = tmp("fermi_cli_bad.json");
  std::ofstream(path) << "{\"m\": 5";
  EXPECT_EQ(run_cli("canon5 -i " + path).code, 1);
  EXPECT_EQ(run_cli("takagi -i /nonexistent/file.json").code, 1);
  EXPECT_EQ(run_cli("dims --m 6").code, 1);
  EXPECT_EQ(run_cli("no-such-command").code, 1);
  std::filesystem::remove(path);
}

TEST(Cli, EscapeAndBcsCheck) {
  const std::string path = tmp("fermi_cli_bcs.json");
  ASSERT_EQ(run_cli("gen --kind bcs --n 4 --m 8 -o " + path).code, 0);
  const CliRun e = run_cli("escape --input " + path + " --restarts 10");
  EXPECT_EQ(e.code, 0);
  const auto doc = nlohmann::json::parse(e.out);
  EXPECT_GT(doc.at("best_residual").get<double>(), 0.01);
  EXPECT_FALSE(doc.at("reached_threshold").get<bool>());
  const CliRun b = run_cli("bcs-check --n 4 --m 8 --restarts 10");
  EXPECT_EQ(b.code, 0);
  const auto bd = nlohmann::json::parse(b.out);
  EXPECT_GT(bd.at("obstruction").at("best_residual").get<double>(), 1e-8);
  EXPECT_TRUE(bd.at("last_pair_contraction").at("exact").get<bool>());
  std::filesystem::remove(path);
}

}  // namespace
