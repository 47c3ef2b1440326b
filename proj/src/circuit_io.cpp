#include "plateau/circuit_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace plateau {

using nlohmann::json;

std::string circuit_to_json(const ParameterizedCircuit& c, int indent) {
  json gates = json::array();
  for (const auto& g : c.gates()) {
    json jg;
    jg["kind"] = gate_kind_name(g.kind);
    jg["qubits"] = g.qubits;
    if (g.kind == GateKind::Rotation || g.kind == GateKind::FixedRotation) {
      std::string letters;
      for (auto q : g.qubits) letters += pauli_char(g.generator.at(q));
      jg["generator"] = letters;
    }
    if (g.kind == GateKind::Rotation) jg["param_index"] = g.param_index;
    if (g.kind == GateKind::FixedRotation) jg["angle"] = g.angle;
    gates.push_back(std::move(jg));
  }
  json j;
  j["n"] = c.num_qubits();
  j["m"] = c.num_parameters();
  j["gates"] = std::move(gates);
  return j.dump(indent);
}

ParameterizedCircuit circuit_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("circuit JSON: ") + e.what());
  }
  if (!j.contains("n") || !j.contains("m") || !j.contains("gates"))
    throw std::invalid_argument("circuit JSON: required fields are n, m, gates");
  std::size_t n = j.at("n").get<std::size_t>();
  std::size_t m = j.at("m").get<std::size_t>();
  std::vector<Gate> gates;
  std::size_t index = 0;
  for (const auto& jg : j.at("gates")) {
    try {
      GateKind kind = gate_kind_from_name(jg.at("kind").get<std::string>());
      std::vector<std::uint32_t> qubits = jg.at("qubits").get<std::vector<std::uint32_t>>();
      switch (kind) {
        case GateKind::Hadamard:
        case GateKind::PhaseS:
          if (qubits.size() != 1) throw std::invalid_argument("expected one qubit");
          gates.push_back(kind == GateKind::Hadamard ? make_hadamard(n, qubits[0])
                                                     : make_phase_s(n, qubits[0]));
          break;
        case GateKind::Cnot:
        case GateKind::Cz:
        case GateKind::Swap: {
          if (qubits.size() != 2) throw std::invalid_argument("expected two qubits");
          if (kind == GateKind::Cnot)
            gates.push_back(make_cnot(n, qubits[0], qubits[1]));
          else if (kind == GateKind::Cz)
            gates.push_back(make_cz(n, qubits[0], qubits[1]));
          else
            gates.push_back(make_swap(n, qubits[0], qubits[1]));
          break;
        }
        case GateKind::Rotation:
        case GateKind::FixedRotation: {
          std::string letters = jg.at("generator").get<std::string>();
          if (letters.size() != qubits.size())
            throw std::invalid_argument("generator letter count differs from qubit list");
          PauliString gen(n);
          for (std::size_t i = 0; i < qubits.size(); ++i) {
            if (qubits[i] >= n) throw std::invalid_argument("qubit index out of range");
            Pauli p = pauli_from_char(letters[i]);
            if (p == Pauli::I) throw std::invalid_argument("generator letter must be non-identity");
            gen.set(qubits[i], p);
          }
          if (kind == GateKind::Rotation) {
            Gate g = make_rotation(gen, jg.at("param_index").get<std::int32_t>());
            gates.push_back(std::move(g));
          } else {
            Gate g = make_rotation(gen, -1);
            g.kind = GateKind::FixedRotation;
            g.param_index = -1;
            g.angle = jg.at("angle").get<double>();
            gates.push_back(std::move(g));
          }
          break;
        }
      }
    } catch (const std::exception& e) {
      throw std::invalid_argument("circuit JSON: gate " + std::to_string(index) + ": " + e.what());
    }
    ++index;
  }
  return ParameterizedCircuit(n, m, std::move(gates));
}

void save_circuit(const ParameterizedCircuit& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << circuit_to_json(c) << '\n';
}

ParameterizedCircuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return circuit_from_json(text);
}

}  // namespace plateau
