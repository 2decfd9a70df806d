#pragma once

#include <string>

#include <json.hpp>

#include "fermi/state.hpp"

namespace fermi {

// State documents:
//   {"m": 6, "n": 3, "amps": [{"indices": [1, 3, 5], "re": 0.5, "im": -0.25}, ...]}
// Omitted combinations are zero. Doubles round-trip bit-exactly.

nlohmann::json state_to_json(const FermionState& psi);
FermionState state_from_json(const nlohmann::json& doc);

std::string dump_state(const FermionState& psi);
FermionState parse_state(const std::string& text);

FermionState read_state_file(const std::string& path);
void write_state_file(const FermionState& psi, const std::string& path);

/// Row-major list of [re, im] pairs.
nlohmann::json matrix_to_json(const Eigen::MatrixXcd& a);
Eigen::MatrixXcd matrix_from_json(const nlohmann::json& doc);

/// FNV-1a over the canonical state document, as a 16-digit hex string.
std::string state_hash(const FermionState& psi);

}  // namespace fermi
