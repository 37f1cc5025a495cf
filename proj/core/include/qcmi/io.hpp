#pragma once

// JSON formats for states, Kraus channels/POVMs and scenarios.
//
//   state:     {"labels": [...], "dims": [...], "matrix": {"re": [[...]], "im": [[...]]}}
//              or "vector": {"re": [...], "im": [...]} for a pure state
//   operators: {"target": [...], "ops": [{"re": ..., "im": ...}, ...], "kind": "kraus" | "povm"}
//   scenario:  {"initial_as": <state> | "bell:d", "initial_env": <state>,
//               "family": "partial_swap" | "dephasing" | "paper_example"
//                         | {"custom": [{"t": ..., "re": ..., "im": ...}, ...]}}
//
// Malformed input raises Error(ErrorKind::Parse) naming the offending field;
// syntax errors carry the line and column.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qcmi/channels.hpp"
#include "qcmi/dynamics.hpp"

namespace qcmi {

using Json = nlohmann::json;

Json parse_json_text(const std::string& text, const std::string& source = "input");
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& field = "matrix");

/// Validates the result with require_valid (NotDensityMatrix and friends).
LabeledState state_from_json(const Json& j);
Json state_to_json(const LabeledState& s);
LabeledState load_state(const std::string& path);

enum class OperatorKind { Kraus, Povm };

struct OperatorSet {
  LabelSet target;
  std::vector<Matrix> ops;
  OperatorKind kind = OperatorKind::Kraus;
};

OperatorSet operators_from_json(const Json& j);
Json operators_to_json(const OperatorSet& ops);
Json povm_to_json(const Povm& povm);
KrausChannel to_channel(const OperatorSet& ops);
Povm to_povm(const OperatorSet& ops);

Scenario scenario_from_json(const Json& j);

}  // namespace qcmi
