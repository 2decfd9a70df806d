#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "fermi/error.hpp"
#include "fermi/random.hpp"
#include "fermi/state_io.hpp"

namespace fermi {
namespace {

TEST(StateIo, RoundTripIsBitExact) {
  const FermionState psi = random_state(7, 3, 1234);
  const FermionState back = parse_state(dump_state(psi));
  ASSERT_EQ(back.m(), 7);
  ASSERT_EQ(back.n(), 3);
  for (Eigen::Index i = 0; i < psi.amps().size(); ++i) {
    EXPECT_EQ(back.amps()[i].real(), psi.amps()[i].real());
    EXPECT_EQ(back.amps()[i].imag(), psi.amps()[i].imag());
  }
  EXPECT_EQ(state_hash(back), state_hash(psi));
}

TEST(StateIo, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "fermi_io_roundtrip.json";
  const FermionState psi = random_state(6, 2, 5);
  write_state_file(psi, path.string());
  EXPECT_EQ(max_abs_diff(read_state_file(path.string()), psi), 0.0);
  std::filesystem::remove(path);
}

TEST(StateIo, OmittedAmplitudesAreZero) {
  const FermionState psi = parse_state(R"({"m": 4, "n": 2, "amps": [{"indices": [2, 3], "re": 0.5, "im": -1}]})");
  EXPECT_EQ(psi.amp(Combination(4, {2, 3})), cplx(0.5, -1));
  EXPECT_EQ(psi.norm2(), 1.25);
}

TEST(StateIo, MalformedInputs) {
  auto code = [](const std::string& text) {
    try {
      parse_state(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Internal;
  };
  EXPECT_EQ(code("{"), ErrorCode::Parse);
  EXPECT_EQ(code(R"({"m": 4, "amps": []})"), ErrorCode::Parse);
  EXPECT_EQ(code(R"({"m": 4, "n": 2, "amps": [{"indices": [1], "re": 1, "im": 0}]})"), ErrorCode::Parse);
  EXPECT_EQ(code(R"({"m": 4, "n": 2, "amps": [{"indices": [2, 1], "re": 1, "im": 0}]})"), ErrorCode::Parse);
  EXPECT_THROW(read_state_file("/nonexistent/dir/state.json"), Error);
}

TEST(Random, SeedsAreReproducible) {
  EXPECT_EQ(max_abs_diff(random_state(6, 3, 9), random_state(6, 3, 9)), 0.0);
  EXPECT_GT(max_abs_diff(random_state(6, 3, 9), random_state(6, 3, 10)), 0.0);
  EXPECT_NEAR(random_state(6, 3, 9).norm(), 1.0, 1e-14);
}

}  // namespace
}  // namespace fermi
