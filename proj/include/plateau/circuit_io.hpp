#pragma once

#include <string>

#include "plateau/circuit.hpp"

namespace plateau {

// Circuit file format: {"n": .., "m": .., "gates": [{"kind": "h", "qubits": [0]},
// {"kind": "rot", "qubits": [0,2], "generator": "XY", "param_index": 3}, ...]}.
// A rotation's generator string lists one letter per entry of its qubit list.
std::string circuit_to_json(const ParameterizedCircuit& c, int indent = 2);
ParameterizedCircuit circuit_from_json(const std::string& text);

void save_circuit(const ParameterizedCircuit& c, const std::string& path);
ParameterizedCircuit load_circuit(const std::string& path);

}  // namespace plateau
