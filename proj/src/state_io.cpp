#include "fermi/state_io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fermi/error.hpp"

namespace fermi {

using nlohmann::json;

json state_to_json(const FermionState& psi) {
  json amps = json::array();
  const auto& b = psi.basis();
  for (std::size_t r = 0; r < b.size(); ++r) {
    const cplx v = psi.amps()[static_cast<Eigen::Index>(r)];
    if (std::bit_cast<std::uint64_t>(v.real()) == 0 && std::bit_cast<std::uint64_t>(v.imag()) == 0) continue;
    amps.push_back({{"indices", Combination::from_mask(psi.m(), b.mask(r)).indices()},
                    {"re", v.real()},
                    {"im", v.imag()}});
  }
  return {{"m", psi.m()}, {"n", psi.n()}, {"amps", std::move(amps)}};
}

FermionState state_from_json(const json& doc) {
  try {
    require(doc.is_object(), ErrorCode::Parse, "state document must be an object");
    require(doc.contains("m") && doc.contains("n") && doc.contains("amps"), ErrorCode::Parse,
            "state document needs fields m, n, amps");
    const int m = doc.at("m").get<int>();
    const int n = doc.at("n").get<int>();
    require(m >= 0 && m <= kMaxModes && n >= 0 && n <= m, ErrorCode::Parse,
            "state document: invalid (m, n)");
    FermionState zero(m, n);
    Eigen::VectorXcd amps = zero.amps();
    std::vector<bool> seen(zero.dim(), false);
    for (const auto& rec : doc.at("amps")) {
      const auto indices = rec.at("indices").get<std::vector<int>>();
      require(static_cast<int>(indices.size()) == n, ErrorCode::Parse,
              "state document: record has wrong number of indices");
      Combination c(m, indices);
      const std::size_t r = zero.basis().rank(c.mask());
      require(!seen[r], ErrorCode::Parse, "state document: duplicate combination");
      seen[r] = true;
      const double re = rec.value("re", 0.0);
      const double im = rec.value("im", 0.0);
      amps[static_cast<Eigen::Index>(r)] = cplx(re, im);
    }
    return FermionState(m, n, std::move(amps));
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("state document: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) fail(ErrorCode::Parse, e.what());
    throw;
  }
}

std::string dump_state(const FermionState& psi) { return state_to_json(psi).dump(2) + "\n"; }

FermionState parse_state(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("state document is not valid JSON: ") + e.what());
  }
  return state_from_json(doc);
}

FermionState read_state_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::Io, "cannot open state file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_state(ss.str());
}

void write_state_file(const FermionState& psi, const std::string& path) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorCode::Io, "cannot write state file: " + path);
  out << dump_state(psi);
  require(static_cast<bool>(out), ErrorCode::Io, "write failed: " + path);
}

json matrix_to_json(const Eigen::MatrixXcd& a) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back({a(i, j).real(), a(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const json& doc) {
  try {
    const auto rows = static_cast<Eigen::Index>(doc.size());
    require(rows > 0, ErrorCode::Parse, "matrix document is empty");
    const auto cols = static_cast<Eigen::Index>(doc.at(0).size());
    Eigen::MatrixXcd a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const auto& row = doc.at(static_cast<std::size_t>(i));
      require(static_cast<Eigen::Index>(row.size()) == cols, ErrorCode::Parse, "matrix document is ragged");
      for (Eigen::Index j = 0; j < cols; ++j) {
        const auto& e = row.at(static_cast<std::size_t>(j));
        a(i, j) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
      }
    }
    return a;
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("matrix document: ") + e.what());
  }
}

std::string state_hash(const FermionState& psi) {
  const std::string text = state_to_json(psi).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace fermi
