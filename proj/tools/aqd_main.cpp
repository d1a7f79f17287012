// Command-line surface for the dialogue toolkit: catalog inspection, table
// verification, protocol runs, fidelity sweeps and efficiency reports.
// Exit codes: 0 success or clean protocol abort, 1 verification/config
// failure, 2 usage error.
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aqd/analysis.hpp"
#include "aqd/channels.hpp"
#include "aqd/pauli_group.hpp"
#include "aqd/protocol.hpp"
#include "aqd/qstate.hpp"
#include "aqd/rng.hpp"
#include "aqd/serialize.hpp"
#include "aqd/state_catalog.hpp"

namespace {

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    aqd::write_text_file(out_path, text);
  }
}

std::string join_words(const std::vector<aqd::PauliWord>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i].str();
  }
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out + "}";
}

std::string percent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", value * 100.0);
  std::string s(buf);
  if (s.size() > 2 && s.compare(s.size() - 2, 2, ".0") == 0) s.erase(s.size() - 2);
  return s + "%";
}

// Matches an enumerated subgroup against the named catalog entries.
std::string catalog_name_of(const aqd::OperatorGroup& group) {
  const aqd::GroupCatalog& catalog = aqd::GroupCatalog::instance();
  for (const std::string& name : catalog.names()) {
    const aqd::OperatorGroup& named = catalog.get(name);
    if (named.word_length() == group.word_length() && named == group) return name;
  }
  return "";
}

int cmd_groups(const std::string& name, int subgroup_order, bool json,
               const std::string& out_path) {
  const aqd::GroupCatalog& catalog = aqd::GroupCatalog::instance();
  if (name.empty()) {
    if (json) {
      emit(aqd::dumps(aqd::group_catalog_to_json()), out_path);
      return 0;
    }
    std::ostringstream text;
    for (const std::string& n : catalog.names()) {
      const aqd::OperatorGroup& g = catalog.get(n);
      text << n << std::string(n.size() < 10 ? 10 - n.size() : 1, ' ') << "order " << g.size()
           << "\n";
    }
    emit(text.str(), out_path);
    return 0;
  }

  const aqd::OperatorGroup& group = catalog.get(name);  // throws on unknown name
  std::vector<aqd::OperatorGroup> subgroups;
  if (subgroup_order > 0)
    subgroups = aqd::subgroups_of_order(group, static_cast<std::size_t>(subgroup_order));

  if (json) {
    aqd::Json j = aqd::group_to_json(aqd::GroupCatalog::canonical_name(name), group);
    aqd::Json gens = aqd::Json::array();
    for (const aqd::PauliWord& w : aqd::minimal_generators(group)) gens.push_back(w.str());
    j["generators"] = std::move(gens);
    if (subgroup_order > 0) {
      aqd::Json subs = aqd::Json::array();
      for (const aqd::OperatorGroup& s : subgroups) {
        aqd::Json sub;
        sub["order"] = s.size();
        aqd::Json elements = aqd::Json::array();
        for (const aqd::PauliWord& w : s.elements()) elements.push_back(w.str());
        sub["elements"] = std::move(elements);
        const std::string named = catalog_name_of(s);
        if (named.empty()) sub["catalog_name"] = nullptr;
        else sub["catalog_name"] = named;
        subs.push_back(std::move(sub));
      }
      j["subgroups"] = std::move(subs);
    }
    emit(aqd::dumps(j), out_path);
    return 0;
  }

  std::ostringstream text;
  text << aqd::GroupCatalog::canonical_name(name) << "  order " << group.size() << "\n";
  text << "elements:   " << join_words(group.elements()) << "\n";
  text << "generators: " << join_words(aqd::minimal_generators(group)) << "\n";
  if (subgroup_order > 0) {
    text << "subgroups of order " << subgroup_order << ": " << subgroups.size() << "\n";
    for (const aqd::OperatorGroup& s : subgroups) {
      text << "  " << join_words(s.elements());
      const std::string named = catalog_name_of(s);
      if (!named.empty()) text << "   = " << named;
      text << "\n";
    }
  }
  emit(text.str(), out_path);
  return 0;
}

int cmd_states(const std::string& name, bool json, const std::string& out_path) {
  const aqd::StateCatalog& catalog = aqd::StateCatalog::instance();
  if (name.empty()) {
    if (json) {
      emit(aqd::dumps(aqd::state_catalog_to_json()), out_path);
      return 0;
    }
    std::ostringstream text;
    for (const std::string& n : catalog.names()) {
      const aqd::NamedState& s = catalog.get(n);
      text << n << std::string(n.size() < 14 ? 14 - n.size() : 1, ' ') << s.num_qubits()
           << " qubits  " << s.provenance << "\n";
    }
    emit(text.str(), out_path);
    return 0;
  }

  const aqd::NamedState& state = catalog.get(name);  // throws on unknown name
  if (json) {
    emit(aqd::dumps(aqd::state_to_json(state)), out_path);
    return 0;
  }
  std::ostringstream text;
  text << state.name << "  " << state.num_qubits() << " qubits  " << state.provenance << "\n";
  for (std::size_t i = 0; i < state.vector.dim(); ++i) {
    const aqd::Complex a = state.vector.amp(i);
    if (std::abs(a) < 1e-15) continue;
    text << "|" << aqd::bits_of_index(i, state.num_qubits()) << ">  "
         << aqd::format_double(a.real());
    if (std::abs(a.imag()) > 1e-15) text << " + " << aqd::format_double(a.imag()) << "i";
    text << "\n";
  }
  emit(text.str(), out_path);
  return 0;
}

int cmd_verify_tables(const std::string& states_file, bool json, const std::string& out_path) {
  std::map<std::string, aqd::NamedState> overrides;
  if (!states_file.empty()) {
    const aqd::Json j = aqd::read_json_file(states_file);
    if (j.is_array()) {
      for (const aqd::Json& entry : j) {
        aqd::NamedState s = aqd::state_from_json(entry);
        overrides.emplace(s.name, std::move(s));
      }
    } else {
      aqd::NamedState s = aqd::state_from_json(j);
      overrides.emplace(s.name, std::move(s));
    }
  }

  const std::vector<aqd::TableCheck> table1 = aqd::verify_table1(overrides);
  const std::vector<aqd::TableCheck> table2 = aqd::verify_table2();

  int failures = 0;
  for (const aqd::TableCheck& c : table1)
    if (c.status == aqd::CheckStatus::Fail) ++failures;
  for (const aqd::TableCheck& c : table2)
    if (c.status == aqd::CheckStatus::Fail) ++failures;

  if (json) {
    aqd::Json j;
    j["table1"] = aqd::table_checks_to_json(table1);
    j["table2"] = aqd::table_checks_to_json(table2);
    j["failures"] = failures;
    emit(aqd::dumps(j), out_path);
  } else {
    std::ostringstream text;
    const auto print = [&text](const std::vector<aqd::TableCheck>& checks) {
      for (const aqd::TableCheck& c : checks) {
        std::string label = c.row;
        if (!c.subject.empty()) label += " x " + c.subject;
        text << "  " << aqd::to_string(c.status)
             << std::string(std::string(aqd::to_string(c.status)).size() < 11
                                ? 11 - std::string(aqd::to_string(c.status)).size()
                                : 1,
                            ' ')
             << label << std::string(label.size() < 28 ? 28 - label.size() : 1, ' ') << c.detail
             << "\n";
      }
    };
    text << "state-group compatibility (table 1):\n";
    print(table1);
    text << "scheme asymmetry (table 2):\n";
    print(table2);
    text << "failures: " << failures << "\n";
    emit(text.str(), out_path);
  }
  return failures == 0 ? 0 : 1;
}

struct RunFlags {
  std::string config_file;
  std::string state = "cluster4";
  std::string bob = "G2";
  std::string alice = "G1";
  std::vector<int> encoded_qubits;
  std::vector<int> travel_qubits;
  int copies = 1;
  int decoys = -1;
  double threshold = 0.11;
  std::string noise_kind;
  double eta = 0.0;
  std::string eve = "none";
  bool secret = false;
  std::string bob_msg;
  std::string alice_msg;
  std::uint64_t seed = 0;
};

// Default travel qubits: the first subset of Bob's encoded qubits on which
// Alice's words embed inside Bob's group.
std::vector<int> default_travel_qubits(const aqd::ProtocolConfig& config) {
  const aqd::OperatorGroup& bob = aqd::GroupCatalog::instance().get(config.bob_group_name);
  const aqd::OperatorGroup& alice = aqd::GroupCatalog::instance().get(config.alice_group_name);
  const int l = alice.word_length();
  std::vector<int> found;
  aqd::detail::for_each_combination(
      static_cast<int>(config.encoded_qubits_bob.size()), l, [&](const std::vector<int>& combo) {
        if (!found.empty()) return;
        std::vector<int> candidate;
        for (int j : combo) candidate.push_back(config.encoded_qubits_bob[j]);
        for (const aqd::PauliWord& a : alice.elements())
          if (!bob.contains(aqd::reposition_word(a, candidate, config.encoded_qubits_bob)))
            return;
        found = std::move(candidate);
      });
  if (found.empty())
    throw std::invalid_argument("no travel-qubit subset lets group " + config.alice_group_name +
                                " embed into " + config.bob_group_name +
                                "; pass --travel-qubits explicitly");
  return found;
}

int cmd_run(const RunFlags& flags, const CLI::App* sub, bool json, std::string out_path) {
  aqd::ProtocolConfig config;
  if (!flags.config_file.empty()) config = aqd::config_from_json(aqd::read_json_file(flags.config_file));

  const auto given = [sub](const std::string& flag) { return sub->count(flag) > 0; };
  if (flags.config_file.empty() || given("--state")) config.state_name = flags.state;
  if (flags.config_file.empty() || given("--bob")) config.bob_group_name = flags.bob;
  if (flags.config_file.empty() || given("--alice")) config.alice_group_name = flags.alice;
  if (given("--encoded-qubits")) config.encoded_qubits_bob = flags.encoded_qubits;
  if (given("--travel-qubits")) config.travel_qubits = flags.travel_qubits;
  if (flags.config_file.empty() || given("--copies")) config.copies = flags.copies;
  if (flags.config_file.empty() || given("--decoys")) config.decoys_per_leg = flags.decoys;
  if (flags.config_file.empty() || given("--threshold")) config.error_threshold = flags.threshold;
  if (given("--noise"))
    config.noise = aqd::NoiseSpec{aqd::parse_channel_kind(flags.noise_kind), flags.eta};
  if (flags.config_file.empty() || given("--eve")) config.eve = aqd::parse_eve_kind(flags.eve);
  if (flags.config_file.empty() || given("--seed")) config.seed = flags.seed;
  if (given("--secret")) config.secret_initial_state = true;

  // Fill in encoding positions when not specified: the lexicographically
  // smallest assignment passing the densecodability gate, then the first
  // travel subset compatible with Alice's group.
  if (config.encoded_qubits_bob.empty()) {
    const auto positions =
        aqd::find_encoded_qubits(aqd::get_state(config.state_name),
                                 aqd::GroupCatalog::instance().get(config.bob_group_name));
    if (!positions)
      throw std::invalid_argument("state " + config.state_name + " and group " +
                                  config.bob_group_name + " admit no densecodable assignment");
    config.encoded_qubits_bob = *positions;
  }
  if (config.travel_qubits.empty()) config.travel_qubits = default_travel_qubits(config);

  aqd::Rng rng(config.seed);
  const aqd::OperatorGroup& bob_group = aqd::GroupCatalog::instance().get(config.bob_group_name);
  const aqd::OperatorGroup& alice_group =
      aqd::GroupCatalog::instance().get(config.alice_group_name);
  const std::size_t bob_len = aqd::bits_per_word(bob_group) * config.copies;
  const std::size_t alice_len = aqd::bits_per_word(alice_group) * config.copies;
  const aqd::Message bob_msg =
      flags.bob_msg.empty() ? aqd::random_message(bob_len, rng) : aqd::Message{flags.bob_msg};
  const aqd::Message alice_msg = flags.alice_msg.empty() ? aqd::random_message(alice_len, rng)
                                                         : aqd::Message{flags.alice_msg};

  const aqd::ProtocolTranscript transcript = aqd::run(config, bob_msg, alice_msg, rng);

  if (out_path.empty()) out_path = "transcript.json";
  aqd::write_text_file(out_path, aqd::dumps(aqd::transcript_to_json(transcript)));

  if (json) {
    std::cout << aqd::dumps(aqd::transcript_to_json(transcript));
    return 0;
  }

  std::cout << "state " << transcript.initial_state << ", bob " << config.bob_group_name << " on "
            << join_ints(config.encoded_qubits_bob) << ", alice " << config.alice_group_name
            << " on " << join_ints(config.travel_qubits) << ", copies " << config.copies
            << ", seed " << config.seed << "\n";
  const auto print_check = [](const char* leg, const aqd::DecoyCheckResult& c) {
    std::cout << leg << " decoy check: tested " << c.tested << ", errors " << c.errors
              << ", rate " << aqd::format_double(c.rate) << "\n";
  };
  print_check("forward", transcript.decoy_check_forward);
  if (transcript.abort && transcript.abort_stage == "forward-decoy-check") {
    std::cout << "aborted at forward-decoy-check (threshold "
              << aqd::format_double(config.error_threshold) << ")\n";
    return 0;
  }
  print_check("backward", transcript.decoy_check_backward);
  if (transcript.abort) {
    std::cout << "aborted at backward-decoy-check (threshold "
              << aqd::format_double(config.error_threshold) << ")\n";
    return 0;
  }

  std::cout << "bob sent      " << bob_msg.bits << "\n";
  std::cout << "alice decoded " << transcript.decoded_by_alice.bits
            << (transcript.decoded_by_alice.bits == bob_msg.bits ? "  (exact)" : "  (errors)")
            << "\n";
  std::cout << "alice sent    " << alice_msg.bits << "\n";
  std::cout << "bob decoded   " << transcript.decoded_by_bob.bits
            << (transcript.decoded_by_bob.bits == alice_msg.bits ? "  (exact)" : "  (errors)")
            << "\n";
  if (transcript.decode_anomalies)
    std::cout << "decode anomalies: " << transcript.decode_anomalies << "\n";
  std::cout << "transcript written to " << out_path << "\n";
  return 0;
}

int cmd_sweep(const std::string& model, int travel, double step, bool json,
              const std::string& out_path) {
  const aqd::ChannelKind kind = aqd::parse_channel_kind(model);
  const aqd::SweepResult result = aqd::sweep(kind, travel, aqd::eta_grid(step));

  if (json) {
    emit(aqd::dumps(aqd::sweep_to_json(result)), out_path);
  } else {
    std::ostringstream csv;
    aqd::write_sweep_csv(result, csv);
    emit(csv.str(), out_path);
  }
  const std::string summary =
      "max |closed - simulated| = " + aqd::format_double(result.max_abs_err) + "\n";
  if (out_path.empty()) {
    std::cerr << summary;
  } else {
    std::cout << summary;
  }
  return 0;
}

int cmd_efficiency(const CLI::App* sub, const std::string& preset, long long c, long long q,
                   long long t, long long b, bool qsdc, long long copies, int alice_bits,
                   int bob_bits, bool secret, bool json, const std::string& out_path) {
  const auto given = [sub](const std::string& flag) { return sub->count(flag) > 0; };

  std::optional<int> leakage;
  if (given("--alice-bits") || given("--bob-bits")) {
    if (!(given("--alice-bits") && given("--bob-bits")))
      throw std::invalid_argument("leakage needs both --alice-bits and --bob-bits");
    leakage = aqd::leakage_bits(alice_bits, bob_bits, secret);
  }

  aqd::EfficiencyInput input;
  std::string label;
  if (!preset.empty()) {
    input = aqd::efficiency_presets().at(preset);
    label = preset;
  } else if (given("--c") || given("--Q") || given("--t") || given("--b")) {
    if (!(given("--c") && given("--Q") && given("--t") && given("--b")))
      throw std::invalid_argument("custom efficiency needs all of --c, --Q, --t, --b");
    input = aqd::EfficiencyInput{c, q, t, b, 4};
    label = "custom";
  } else if (leakage) {
    // Leakage needs no efficiency input; answer the bare query directly.
    if (json) {
      aqd::Json j;
      j["leakage_bits"] = *leakage;
      emit(aqd::dumps(j), out_path);
    } else {
      emit("leakage: " + std::to_string(*leakage) + " bits\n", out_path);
    }
    return 0;
  } else {
    // No selection: list the presets.
    if (json) {
      aqd::Json j = aqd::Json::array();
      for (const auto& [name, in] : aqd::efficiency_presets()) {
        const aqd::Rational r = aqd::qubit_efficiency(in);
        aqd::Json row;
        row["preset"] = name;
        row["rational"] = r.str();
        row["value"] = r.value();
        j.push_back(std::move(row));
      }
      emit(aqd::dumps(j), out_path);
    } else {
      std::ostringstream text;
      for (const auto& [name, in] : aqd::efficiency_presets()) {
        const aqd::Rational r = aqd::qubit_efficiency(in);
        text << name << std::string(name.size() < 14 ? 14 - name.size() : 1, ' ') << r.str()
             << " = " << percent(r.value()) << "\n";
      }
      emit(text.str(), out_path);
    }
    return 0;
  }

  const aqd::Rational plain = aqd::qubit_efficiency(input);
  std::optional<aqd::Rational> amortized;
  std::optional<aqd::Rational> finite;
  if (qsdc) {
    amortized = aqd::qsdc_amortized_efficiency(input);
    if (given("--copies")) finite = aqd::qsdc_efficiency(input, copies);
  }

  if (json) {
    aqd::Json j;
    j["label"] = label;
    j["c"] = input.c;
    j["Q"] = input.Q;
    j["t"] = input.t;
    j["b"] = input.b;
    j["efficiency"] = {{"rational", plain.str()}, {"value", plain.value()}};
    if (amortized)
      j["qsdc_amortized"] = {{"rational", amortized->str()}, {"value", amortized->value()}};
    if (finite) j["qsdc_finite"] = {{"rational", finite->str()}, {"value", finite->value()}};
    if (leakage) j["leakage_bits"] = *leakage;
    emit(aqd::dumps(j), out_path);
  } else {
    std::ostringstream text;
    text << label << ": efficiency " << plain.str() << " = " << percent(plain.value()) << "\n";
    if (amortized)
      text << "qsdc amortized limit: " << amortized->str() << " = " << percent(amortized->value())
           << "\n";
    if (finite)
      text << "qsdc at " << copies << " copies: " << finite->str() << " = "
           << percent(finite->value()) << "\n";
    if (leakage) text << "leakage: " << *leakage << " bits\n";
    emit(text.str(), out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dialogue-protocol simulator and analysis toolkit"};
  app.require_subcommand(1);

  std::string out_path;
  bool json = false;

  // groups
  auto* groups_cmd = app.add_subcommand("groups", "List operator groups or inspect one");
  std::string group_name;
  int subgroup_order = 0;
  groups_cmd->add_option("name", group_name, "Group name, e.g. G2 or G2^4(8)");
  groups_cmd->add_option("--subgroups", subgroup_order, "Enumerate subgroups of this order")
      ->check(CLI::PositiveNumber);
  groups_cmd->add_flag("--json", json, "Emit JSON");
  groups_cmd->add_option("--out", out_path, "Write output to this file");

  // states
  auto* states_cmd = app.add_subcommand("states", "List cataloged states or inspect one");
  std::string state_name;
  states_cmd->add_option("name", state_name, "State name, e.g. cluster4");
  states_cmd->add_flag("--json", json, "Emit JSON");
  states_cmd->add_option("--out", out_path, "Write output to this file");

  // verify-tables
  auto* verify_cmd =
      app.add_subcommand("verify-tables", "Check the compatibility and scheme tables");
  std::string states_file;
  verify_cmd->add_option("--states", states_file,
                         "JSON file of state definitions overriding the catalog");
  verify_cmd->add_flag("--json", json, "Emit JSON");
  verify_cmd->add_option("--out", out_path, "Write output to this file");

  // run
  auto* run_cmd = app.add_subcommand("run", "Execute a protocol round");
  RunFlags flags;
  run_cmd->add_option("--config", flags.config_file, "Protocol config JSON file");
  run_cmd->add_option("--state", flags.state, "Channel state name");
  run_cmd->add_option("--bob", flags.bob, "Bob's group name");
  run_cmd->add_option("--alice", flags.alice, "Alice's group name");
  run_cmd->add_option("--encoded-qubits", flags.encoded_qubits,
                      "Qubits Bob's group acts on (default: searched)");
  run_cmd->add_option("--travel-qubits", flags.travel_qubits,
                      "Qubits that travel and carry Alice's encoding (default: searched)");
  run_cmd->add_option("--copies", flags.copies, "Channel-state copies")->check(CLI::PositiveNumber);
  run_cmd->add_option("--decoys", flags.decoys, "Decoy qubits per leg (default: travel x copies)");
  run_cmd->add_option("--threshold", flags.threshold, "Decoy error-rate abort threshold");
  run_cmd->add_option("--noise", flags.noise_kind, "Noise model on travel qubits")
      ->check(CLI::IsMember({"AD", "PD"}));
  run_cmd->add_option("--eta", flags.eta, "Noise rate in [0,1]");
  run_cmd->add_option("--eve", flags.eve, "Eavesdropper model")
      ->check(CLI::IsMember({"none", "intercept-resend"}));
  run_cmd->add_flag("--secret", flags.secret, "Keep the initial state out of the transcript");
  run_cmd->add_option("--bob-msg", flags.bob_msg, "Bob's bits (default: random from seed)");
  run_cmd->add_option("--alice-msg", flags.alice_msg, "Alice's bits (default: random from seed)");
  run_cmd->add_option("--seed", flags.seed, "Random seed");
  run_cmd->add_flag("--json", json, "Print the transcript JSON to stdout");
  run_cmd->add_option("--out", out_path, "Transcript path (default transcript.json)");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Fidelity-vs-noise sweep as CSV");
  std::string sweep_model;
  int sweep_travel = 2;
  double sweep_step = 0.05;
  sweep_cmd->add_option("--model", sweep_model, "Noise model")
      ->required()
      ->check(CLI::IsMember({"AD", "PD"}));
  sweep_cmd->add_option("--travel", sweep_travel, "Travel qubit count (1 or 2)")
      ->check(CLI::Range(1, 2));
  sweep_cmd->add_option("--step", sweep_step, "Eta grid step");
  sweep_cmd->add_flag("--json", json, "Emit JSON instead of CSV");
  sweep_cmd->add_option("--out", out_path, "CSV path (default stdout)");

  // efficiency
  auto* eff_cmd = app.add_subcommand("efficiency", "Qubit-efficiency and leakage report");
  std::string preset;
  long long eff_c = 0, eff_q = 0, eff_t = 0, eff_b = 0, eff_copies = 1;
  int alice_bits = 0, bob_bits = 0;
  bool qsdc = false, secret_eff = false;
  std::vector<std::string> preset_names;
  for (const auto& [name, in] : aqd::efficiency_presets()) preset_names.push_back(name);
  eff_cmd->add_option("--preset", preset, "Named scenario")->check(CLI::IsMember(preset_names));
  eff_cmd->add_option("--c", eff_c, "Message bits per copy (both parties)");
  eff_cmd->add_option("--Q", eff_q, "Channel-state qubits per copy");
  eff_cmd->add_option("--t", eff_t, "Travel qubits per copy");
  eff_cmd->add_option("--b", eff_b, "Classical decoding bits per copy");
  eff_cmd->add_flag("--qsdc", qsdc, "Also report the secret-initial-state amortized limit");
  eff_cmd->add_option("--copies", eff_copies, "Finite copy count for the qsdc report")
      ->check(CLI::PositiveNumber);
  eff_cmd->add_option("--alice-bits", alice_bits, "Alice's bits per copy, for leakage");
  eff_cmd->add_option("--bob-bits", bob_bits, "Bob's bits per copy, for leakage");
  eff_cmd->add_flag("--secret", secret_eff, "Secret initial state (forces leakage 0)");
  eff_cmd->add_flag("--json", json, "Emit JSON");
  eff_cmd->add_option("--out", out_path, "Write output to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (groups_cmd->parsed()) return cmd_groups(group_name, subgroup_order, json, out_path);
    if (states_cmd->parsed()) return cmd_states(state_name, json, out_path);
    if (verify_cmd->parsed()) return cmd_verify_tables(states_file, json, out_path);
    if (run_cmd->parsed()) {
      try {
        return cmd_run(flags, run_cmd, json, out_path);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
      }
    }
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_model, sweep_travel, sweep_step, json, out_path);
    if (eff_cmd->parsed())
      return cmd_efficiency(eff_cmd, preset, eff_c, eff_q, eff_t, eff_b, qsdc, eff_copies,
                            alice_bits, bob_bits, secret_eff, json, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
