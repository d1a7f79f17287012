// JSON (de)serialization for catalogs, verification reports, transcripts and
// sweeps. Key order is fixed and output always ends in a newline so that
// identical inputs produce byte-identical files.
#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "aqd/analysis.hpp"
#include "aqd/pauli_group.hpp"
#include "aqd/protocol.hpp"
#include "aqd/state_catalog.hpp"

namespace aqd {

using Json = nlohmann::ordered_json;

inline Json group_to_json(const std::string& name, const OperatorGroup& group) {
  Json j;
  j["name"] = name;
  j["order"] = group.size();
  Json elements = Json::array();
  for (const PauliWord& w : group.elements()) elements.push_back(w.str());
  j["elements"] = std::move(elements);
  return j;
}

inline Json group_catalog_to_json() {
  Json j = Json::array();
  const GroupCatalog& catalog = GroupCatalog::instance();
  for (const std::string& name : catalog.names())
    j.push_back(group_to_json(name, catalog.get(name)));
  return j;
}

inline Json state_to_json(const NamedState& state) {
  Json j;
  j["name"] = state.name;
  j["n"] = state.num_qubits();
  Json amps = Json::array();
  for (const Complex& a : state.vector.amplitudes()) {
    Json pair = Json::array();
    pair.push_back(a.real());
    pair.push_back(a.imag());
    amps.push_back(std::move(pair));
  }
  j["amplitudes"] = std::move(amps);
  j["provenance"] = state.provenance;
  return j;
}

inline NamedState state_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  CVec amps;
  for (const Json& pair : j.at("amplitudes"))
    amps.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  return NamedState{j.at("name").get<std::string>(), j.at("provenance").get<std::string>(),
                    StateVector(n, std::move(amps))};
}

inline Json state_catalog_to_json() {
  Json j = Json::array();
  const StateCatalog& catalog = StateCatalog::instance();
  for (const std::string& name : catalog.names()) j.push_back(state_to_json(catalog.get(name)));
  return j;
}

inline Json table_checks_to_json(const std::vector<TableCheck>& checks) {
  Json j = Json::array();
  for (const TableCheck& c : checks) {
    Json row;
    row["row"] = c.row;
    if (!c.subject.empty()) row["subject"] = c.subject;
    row["status"] = to_string(c.status);
    row["detail"] = c.detail;
    j.push_back(std::move(row));
  }
  return j;
}

inline Json config_to_json(const ProtocolConfig& config) {
  Json j;
  j["state_name"] = config.secret_initial_state ? "(secret)" : config.state_name;
  j["bob_group"] = config.bob_group_name;
  j["alice_group"] = config.alice_group_name;
  j["encoded_qubits_bob"] = config.encoded_qubits_bob;
  j["travel_qubits"] = config.travel_qubits;
  j["copies"] = config.copies;
  j["decoys_per_leg"] = config.resolved_decoys_per_leg();
  j["error_threshold"] = config.error_threshold;
  if (config.noise) {
    Json noise;
    noise["kind"] = to_string(config.noise->kind);
    noise["eta"] = config.noise->eta;
    j["noise"] = std::move(noise);
  } else {
    j["noise"] = nullptr;
  }
  j["eve"] = to_string(config.eve);
  j["seed"] = config.seed;
  j["secret_initial_state"] = config.secret_initial_state;
  return j;
}

inline ProtocolConfig config_from_json(const Json& j) {
  ProtocolConfig config;
  config.state_name = j.at("state_name").get<std::string>();
  config.bob_group_name = j.at("bob_group").get<std::string>();
  config.alice_group_name = j.at("alice_group").get<std::string>();
  config.encoded_qubits_bob = j.at("encoded_qubits_bob").get<std::vector<int>>();
  config.travel_qubits = j.at("travel_qubits").get<std::vector<int>>();
  if (j.contains("copies")) config.copies = j.at("copies").get<int>();
  if (j.contains("decoys_per_leg")) config.decoys_per_leg = j.at("decoys_per_leg").get<int>();
  if (j.contains("error_threshold"))
    config.error_threshold = j.at("error_threshold").get<double>();
  if (j.contains("noise") && !j.at("noise").is_null()) {
    NoiseSpec noise;
    noise.kind = parse_channel_kind(j.at("noise").at("kind").get<std::string>());
    noise.eta = j.at("noise").at("eta").get<double>();
    config.noise = noise;
  }
  if (j.contains("eve")) config.eve = parse_eve_kind(j.at("eve").get<std::string>());
  if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("secret_initial_state"))
    config.secret_initial_state = j.at("secret_initial_state").get<bool>();
  return config;
}

inline Json decoy_check_to_json(const DecoyCheckResult& check) {
  Json j;
  j["tested"] = check.tested;
  j["errors"] = check.errors;
  j["rate"] = check.rate;
  return j;
}

inline Json transcript_to_json(const ProtocolTranscript& t) {
  Json j;
  j["initial_state"] = t.initial_state;
  j["config"] = config_to_json(t.config);
  j["bob_encodings"] = t.bob_encodings;
  j["alice_encodings"] = t.alice_encodings;
  j["permutation_forward"] = t.permutation_forward;
  j["permutation_backward"] = t.permutation_backward;
  j["decoy_check_forward"] = decoy_check_to_json(t.decoy_check_forward);
  j["decoy_check_backward"] = decoy_check_to_json(t.decoy_check_backward);
  j["announced_outcomes"] = t.announced_outcomes;
  j["decoded_by_alice"] = t.decoded_by_alice.bits;
  j["decoded_by_bob"] = t.decoded_by_bob.bits;
  j["decode_anomalies"] = t.decode_anomalies;
  j["abort"] = t.abort;
  j["abort_stage"] = t.abort_stage;
  return j;
}

inline Json sweep_to_json(const SweepResult& result) {
  Json j;
  Json rows = Json::array();
  for (const SweepRow& r : result.rows) {
    Json row;
    row["model"] = to_string(r.model);
    row["travel_count"] = r.travel_count;
    row["eta"] = r.eta;
    row["fidelity_closed"] = r.fidelity_closed;
    row["fidelity_simulated"] = r.fidelity_simulated;
    row["abs_err"] = r.abs_err;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["max_abs_err"] = result.max_abs_err;
  return j;
}

inline std::string dumps(const Json& j) { return j.dump(2) + "\n"; }

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  Json j;
  in >> j;
  return j;
}

}  // namespace aqd
