#pragma once

// JSON input/output: state and context documents, density matrices, channel
// witnesses, run manifests and report helpers shared by the CLI and tests.

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "tmon/channels.hpp"
#include "tmon/core.hpp"
#include "tmon/quantum.hpp"

namespace tmon::io {

using json = nlohmann::json;

/// Raised on malformed inputs; carries a human-readable location.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StateDoc {
  ProbDist state;
  std::optional<Hamiltonian> hamiltonian;
};

/// {"probs": [..], "energies": [..]}; probs entries may be numbers or
/// "num/den" strings (all-string/integer vectors load in exact mode).
StateDoc parse_state(const json& j);
StateDoc load_state(const std::string& path);
json state_to_json(const ProbDist& p, const Hamiltonian* h = nullptr);

/// {"beta": x, "k": 1.0}
ThermalContext parse_context(const json& j);
ThermalContext load_context(const std::string& path);

/// {"re": [[..]], "im": [[..]]}
DensityMatrix parse_density(const json& j);
DensityMatrix load_density(const std::string& path);

json matrix_to_json(const StochasticMatrix& m);

/// Rounds to 12 significant digits (the output contract for all numerics).
double sig12(double x);
json number_or_inf(ExtendedReal x);

/// FNV-1a 64-bit digest of the file bytes, hex-encoded.
std::string file_digest(const std::string& path);

/// {"command", "inputs": {path: digest}, "seed", "tool_version"}
json run_manifest(const std::string& command, const std::vector<std::string>& inputs,
                  std::optional<std::uint64_t> seed);

json load_json(const std::string& path);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace tmon::io
