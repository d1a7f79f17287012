// Executable dialogue protocol: Bob prepares entangled copies and encodes
// his message, travel qubits cross a (possibly noisy, possibly intercepted)
// link twice with decoy-based eavesdropping checks on each leg, Alice
// encodes on the travel qubits in between, and Bob's announced measurement
// outcomes let both parties decode each other's bits.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aqd/channels.hpp"
#include "aqd/pauli_group.hpp"
#include "aqd/qstate.hpp"
#include "aqd/rng.hpp"
#include "aqd/state_catalog.hpp"

namespace aqd {

enum class EveKind { None, InterceptResend };

inline const char* to_string(EveKind k) {
  switch (k) {
    case EveKind::None: return "none";
    case EveKind::InterceptResend: return "intercept-resend";
  }
  throw std::logic_error("to_string: bad EveKind");
}

inline EveKind parse_eve_kind(const std::string& name) {
  if (name == "none") return EveKind::None;
  if (name == "intercept-resend" || name == "intercept_resend") return EveKind::InterceptResend;
  throw std::invalid_argument("unknown eavesdropper model '" + name + "'");
}

struct NoiseSpec {
  ChannelKind kind;
  double eta;
};

struct ProtocolConfig {
  std::string state_name;
  std::string bob_group_name;
  std::string alice_group_name;
  std::vector<int> encoded_qubits_bob;
  std::vector<int> travel_qubits;
  int copies = 1;
  int decoys_per_leg = -1;  // negative: default to travel qubits * copies
  double error_threshold = 0.11;
  std::optional<NoiseSpec> noise;
  EveKind eve = EveKind::None;
  std::uint64_t seed = 0;
  bool secret_initial_state = false;

  int resolved_decoys_per_leg() const {
    if (decoys_per_leg >= 0) return decoys_per_leg;
    return static_cast<int>(travel_qubits.size()) * copies;
  }
};

struct Message {
  std::string bits;
};

inline void check_bits(const Message& m, std::size_t expected, const std::string& who) {
  if (m.bits.size() != expected)
    throw std::invalid_argument(who + " message must be " + std::to_string(expected) +
                                " bits, got " + std::to_string(m.bits.size()));
  for (char c : m.bits)
    if (c != '0' && c != '1')
      throw std::invalid_argument(who + " message contains a non-bit character");
}

inline Message random_message(std::size_t length, Rng& rng) {
  std::string bits(length, '0');
  for (char& c : bits) c = rng.below(2) ? '1' : '0';
  return Message{std::move(bits)};
}

struct DecoyCheckResult {
  int tested = 0;
  int errors = 0;
  double rate = 0.0;
};

struct ProtocolTranscript {
  std::string initial_state;
  ProtocolConfig config;
  std::vector<std::size_t> bob_encodings;
  std::vector<std::size_t> alice_encodings;
  std::vector<int> permutation_forward;
  std::vector<int> permutation_backward;
  DecoyCheckResult decoy_check_forward;
  DecoyCheckResult decoy_check_backward;
  std::vector<std::size_t> announced_outcomes;
  Message decoded_by_alice;  // Bob's bits as recovered by Alice
  Message decoded_by_bob;    // Alice's bits as recovered by Bob
  int decode_anomalies = 0;
  bool abort = false;
  std::string abort_stage;
};

// Maps a bit string to the group element at the matching canonical index.
inline PauliWord encode(const std::string& bits, const OperatorGroup& group) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < group.size()) ++k;
  if (bits.size() != k)
    throw std::invalid_argument("encode: need " + std::to_string(k) + " bits for a group of order " +
                                std::to_string(group.size()));
  std::size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("encode: non-bit character");
    index = (index << 1) | static_cast<std::size_t>(c - '0');
  }
  return group.element(index);
}

inline std::string bits_of_index(std::size_t index, std::size_t width) {
  std::string bits(width, '0');
  for (std::size_t i = 0; i < width; ++i)
    if ((index >> (width - 1 - i)) & 1u) bits[i] = '1';
  return bits;
}

inline std::size_t bits_per_word(const OperatorGroup& group) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < group.size()) ++k;
  return k;
}

namespace detail {

// Decoy alphabet: index 0..3 = |0>, |1>, |+>, |->. The first two live in the
// Z basis, the last two in the X basis.
inline const StateVector& decoy_state(int index) {
  static const std::vector<StateVector> states = [] {
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<StateVector> s;
    s.push_back(StateVector(1, {Complex{1}, Complex{0}}));
    s.push_back(StateVector(1, {Complex{0}, Complex{1}}));
    s.push_back(StateVector(1, {Complex{r}, Complex{r}}));
    s.push_back(StateVector(1, {Complex{r}, Complex{-r}}));
    return s;
  }();
  return states.at(index);
}

inline const SquareMatrix& zx_projector(int basis, int outcome) {
  static const std::vector<SquareMatrix> projectors = [] {
    std::vector<SquareMatrix> p;
    p.push_back(SquareMatrix(2, {Complex{1}, Complex{0}, Complex{0}, Complex{0}}));
    p.push_back(SquareMatrix(2, {Complex{0}, Complex{0}, Complex{0}, Complex{1}}));
    p.push_back(SquareMatrix(2, {Complex{0.5}, Complex{0.5}, Complex{0.5}, Complex{0.5}}));
    p.push_back(SquareMatrix(2, {Complex{0.5}, Complex{-0.5}, Complex{-0.5}, Complex{0.5}}));
    return p;
  }();
  return projectors.at(basis * 2 + outcome);
}

inline std::vector<double> clamped(std::vector<double> probs) {
  for (double& p : probs)
    if (p < 0.0) p = 0.0;
  return probs;
}

// Projective measurement of one qubit in the Z (basis = 0) or X (basis = 1)
// basis; collapses the state, which doubles as Eve's re-prepared qubit.
inline std::pair<int, DensityMatrix> measure_qubit_zx(const DensityMatrix& rho, int qubit,
                                                      int basis, Rng& rng) {
  const std::size_t d = rho.dim();
  std::vector<CVec> branch(2);
  std::vector<double> probs(2);
  for (int o = 0; o < 2; ++o) {
    branch[o] = conjugate_on_qubits(zx_projector(basis, o), {qubit}, rho.entries(),
                                    rho.num_qubits());
    double tr = 0.0;
    for (std::size_t i = 0; i < d; ++i) tr += branch[o][i * d + i].real();
    probs[o] = tr;
  }
  const int outcome = static_cast<int>(rng.sample_cdf(clamped(probs)));
  CVec post = std::move(branch[outcome]);
  const double inv = 1.0 / probs[outcome];
  for (Complex& e : post) e *= inv;
  return {outcome, DensityMatrix(rho.num_qubits(), std::move(post))};
}

}  // namespace detail

// Measures each received decoy in its preparation basis and counts results
// that differ from the prepared state. Positions are already un-permuted.
inline DecoyCheckResult bb84_decoy_check(const std::vector<int>& prepared,
                                         const std::vector<DensityMatrix>& received, Rng& rng) {
  if (prepared.size() != received.size())
    throw std::invalid_argument("bb84_decoy_check: prepared/received count mismatch");
  DecoyCheckResult result;
  result.tested = static_cast<int>(prepared.size());
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    const double match = fidelity_pure(received[i], detail::decoy_state(prepared[i]));
    const std::size_t outcome = rng.sample_cdf(detail::clamped({match, 1.0 - match}));
    if (outcome == 1) ++result.errors;
  }
  result.rate = result.tested ? static_cast<double>(result.errors) / result.tested : 0.0;
  return result;
}

namespace detail {

// Alice's word placed into Bob's word coordinates: factor i lands at the
// position of travel_qubits[i] inside encoded_qubits_bob, identity elsewhere.
inline PauliWord embed_alice_word(const PauliWord& alice_word, const ProtocolConfig& config) {
  return reposition_word(alice_word, config.travel_qubits, config.encoded_qubits_bob);
}

struct ResolvedConfig {
  NamedState state;
  OperatorGroup bob_group;
  OperatorGroup alice_group;
  OrthonormalBasis basis;
  std::size_t bob_bits_per_copy;
  std::size_t alice_bits_per_copy;
};

inline ResolvedConfig resolve_config(const ProtocolConfig& config) {
  if (config.copies < 1) throw std::invalid_argument("copies must be at least 1");
  if (!(config.error_threshold >= 0.0 && config.error_threshold <= 1.0))
    throw std::invalid_argument("error threshold must lie in [0,1]");
  const NamedState& state = get_state(config.state_name);
  const OperatorGroup& bob = GroupCatalog::instance().get(config.bob_group_name);
  const OperatorGroup& alice = GroupCatalog::instance().get(config.alice_group_name);
  if (bob.size() != state.vector.dim())
    throw std::invalid_argument("Bob's group order must be 2^(state qubits) so that his basis is "
                                "complete; group " + config.bob_group_name + " has order " +
                                std::to_string(bob.size()));
  if (alice.word_length() != static_cast<int>(config.travel_qubits.size()))
    throw std::invalid_argument("Alice's group word length must equal the travel qubit count");
  check_targets(config.travel_qubits, state.num_qubits());
  // Subgroup condition: every Alice word, embedded at the travel positions,
  // must be one of Bob's words, otherwise announcements are not decodable.
  for (const PauliWord& a : alice.elements())
    if (!bob.contains(embed_alice_word(a, config)))
      throw std::invalid_argument("Alice's group does not embed into Bob's group at the travel "
                                  "positions (offending word " + a.str() + ")");
  OrthonormalBasis basis =
      densecodable_basis(state.vector, bob, config.encoded_qubits_bob);
  return ResolvedConfig{state, bob, alice, std::move(basis), bits_per_word(bob),
                        bits_per_word(alice)};
}

struct LegOutcome {
  std::vector<int> permutation;
  DecoyCheckResult check;
};

// One traversal of the link: the receiver's decoy verdict plus the wire
// permutation. Copies and decoys are noised first (the channel acts along
// the whole leg), then Eve intercepts each wire slot in transmission order.
inline LegOutcome run_leg(std::vector<DensityMatrix>& copies, const ProtocolConfig& config,
                          Rng& rng) {
  const int l = static_cast<int>(config.travel_qubits.size());
  const int message_slots = l * config.copies;
  const int decoys = config.resolved_decoys_per_leg();

  std::vector<int> prepared(decoys);
  for (int& p : prepared) p = static_cast<int>(rng.below(4));
  std::vector<DensityMatrix> decoy_qubits;
  decoy_qubits.reserve(decoys);
  for (int p : prepared) decoy_qubits.push_back(DensityMatrix::from_pure(decoy_state(p)));

  std::vector<int> permutation = rng.permutation(message_slots + decoys);

  if (config.noise) {
    const KrausChannel ch = make_channel(config.noise->kind, config.noise->eta);
    for (DensityMatrix& rho : copies)
      rho = apply_noise(rho, ch, TraversalPlan{config.travel_qubits, 1});
    for (DensityMatrix& rho : decoy_qubits) rho = apply_noise(rho, ch, TraversalPlan{{0}, 1});
  }

  if (config.eve == EveKind::InterceptResend) {
    std::vector<int> slot_at_wire(permutation.size());
    for (std::size_t slot = 0; slot < permutation.size(); ++slot)
      slot_at_wire[permutation[slot]] = static_cast<int>(slot);
    for (std::size_t wire = 0; wire < slot_at_wire.size(); ++wire) {
      const int slot = slot_at_wire[wire];
      const int basis = static_cast<int>(rng.below(2));
      if (slot < message_slots) {
        const int copy = slot / l;
        const int qubit = config.travel_qubits[slot % l];
        copies[copy] = measure_qubit_zx(copies[copy], qubit, basis, rng).second;
      } else {
        DensityMatrix& rho = decoy_qubits[slot - message_slots];
        rho = measure_qubit_zx(rho, 0, basis, rng).second;
      }
    }
  }

  LegOutcome out;
  out.permutation = std::move(permutation);
  out.check = bb84_decoy_check(prepared, decoy_qubits, rng);
  return out;
}

}  // namespace detail

inline Message decode_as_alice(const ProtocolTranscript& transcript, const Message& alice_msg);
inline Message decode_as_bob(const ProtocolTranscript& transcript, const Message& bob_msg);

namespace detail {

inline std::pair<Message, int> decode_alice_words(const ProtocolConfig& config,
                                                  const std::vector<std::size_t>& announced,
                                                  const std::vector<std::size_t>& bob_encodings) {
  const OperatorGroup& bob = GroupCatalog::instance().get(config.bob_group_name);
  const OperatorGroup& alice = GroupCatalog::instance().get(config.alice_group_name);
  const std::size_t m = bits_per_word(alice);
  Message out;
  int anomalies = 0;
  for (std::size_t copy = 0; copy < announced.size(); ++copy) {
    if (announced[copy] >= bob.size())
      throw std::out_of_range("announced outcome index out of basis range");
    const PauliWord composed =
        mul(bob.element(announced[copy]), bob.element(bob_encodings[copy]));
    // Pull Alice's factors back out of Bob's word coordinates.
    std::vector<PauliFactor> alice_factors(config.travel_qubits.size(), PauliFactor::I);
    bool consistent = true;
    for (std::size_t j = 0; j < config.encoded_qubits_bob.size(); ++j) {
      const int qubit = config.encoded_qubits_bob[j];
      std::size_t i = 0;
      while (i < config.travel_qubits.size() && config.travel_qubits[i] != qubit) ++i;
      if (i < config.travel_qubits.size()) {
        alice_factors[i] = composed.factor(static_cast<int>(j));
      } else if (composed.factor(static_cast<int>(j)) != PauliFactor::I) {
        consistent = false;
      }
    }
    std::optional<std::size_t> index;
    if (consistent) index = alice.find(PauliWord(std::move(alice_factors)));
    if (!index) {
      // Noise drove the outcome outside Alice's coset: fall back to the
      // identity word and record the anomaly.
      ++anomalies;
      index = 0;
    }
    out.bits += bits_of_index(*index, m);
  }
  return {std::move(out), anomalies};
}

}  // namespace detail

// Full protocol round. All randomness (decoy draws, permutations, Eve's
// choices, measurement sampling) comes from the one rng in a fixed order,
// so a (config, messages, seed) triple fully determines the transcript.
inline ProtocolTranscript run(const ProtocolConfig& config, const Message& bob_msg,
                              const Message& alice_msg, Rng& rng) {
  const detail::ResolvedConfig resolved = detail::resolve_config(config);
  const std::size_t p = static_cast<std::size_t>(config.copies);
  check_bits(bob_msg, resolved.bob_bits_per_copy * p, "Bob's");
  check_bits(alice_msg, resolved.alice_bits_per_copy * p, "Alice's");

  ProtocolTranscript t;
  t.config = config;
  t.initial_state = config.secret_initial_state ? "(secret)" : config.state_name;

  // Bob prepares p copies and applies his encoding word to each.
  std::vector<DensityMatrix> copies;
  copies.reserve(p);
  for (std::size_t copy = 0; copy < p; ++copy) {
    const std::string bits =
        bob_msg.bits.substr(copy * resolved.bob_bits_per_copy, resolved.bob_bits_per_copy);
    const PauliWord word = encode(bits, resolved.bob_group);
    t.bob_encodings.push_back(resolved.bob_group.index_of(word));
    copies.push_back(DensityMatrix::from_pure(apply_on_qubits(
        matrix_of(word), config.encoded_qubits_bob, resolved.state.vector)));
  }

  // Forward leg and Alice's decoy check.
  detail::LegOutcome forward = detail::run_leg(copies, config, rng);
  t.permutation_forward = std::move(forward.permutation);
  t.decoy_check_forward = forward.check;
  if (forward.check.rate > config.error_threshold) {
    t.abort = true;
    t.abort_stage = "forward-decoy-check";
    return t;
  }

  // Alice applies her encoding word to the travel qubits of each copy.
  for (std::size_t copy = 0; copy < p; ++copy) {
    const std::string bits =
        alice_msg.bits.substr(copy * resolved.alice_bits_per_copy, resolved.alice_bits_per_copy);
    const PauliWord word = encode(bits, resolved.alice_group);
    t.alice_encodings.push_back(resolved.alice_group.index_of(word));
    copies[copy] = apply_on_qubits(matrix_of(word), config.travel_qubits, copies[copy]);
  }

  // Backward leg and Bob's decoy check.
  detail::LegOutcome backward = detail::run_leg(copies, config, rng);
  t.permutation_backward = std::move(backward.permutation);
  t.decoy_check_backward = backward.check;
  if (backward.check.rate > config.error_threshold) {
    t.abort = true;
    t.abort_stage = "backward-decoy-check";
    return t;
  }

  // Bob measures every copy in the scheme basis and announces the indices.
  for (std::size_t copy = 0; copy < p; ++copy)
    t.announced_outcomes.push_back(
        static_cast<std::size_t>(measure_in_basis(copies[copy], resolved.basis, rng).index));

  t.decoded_by_alice = decode_as_alice(t, alice_msg);
  auto [decoded, anomalies] =
      detail::decode_alice_words(config, t.announced_outcomes, t.bob_encodings);
  t.decoded_by_bob = std::move(decoded);
  t.decode_anomalies = anomalies;
  return t;
}

inline ProtocolTranscript run(const ProtocolConfig& config, const Message& bob_msg,
                              const Message& alice_msg) {
  Rng rng(config.seed);
  return run(config, bob_msg, alice_msg, rng);
}

// Alice holds her own per-copy words; composing each announced word with her
// own (every word is its own inverse) isolates Bob's word, whose canonical
// index spells his bits.
inline Message decode_as_alice(const ProtocolTranscript& transcript, const Message& alice_msg) {
  const ProtocolConfig& config = transcript.config;
  const OperatorGroup& bob = GroupCatalog::instance().get(config.bob_group_name);
  const OperatorGroup& alice = GroupCatalog::instance().get(config.alice_group_name);
  const std::size_t m = bits_per_word(alice);
  const std::size_t n = bits_per_word(bob);
  check_bits(alice_msg, m * transcript.announced_outcomes.size(), "Alice's");
  Message out;
  for (std::size_t copy = 0; copy < transcript.announced_outcomes.size(); ++copy) {
    if (transcript.announced_outcomes[copy] >= bob.size())
      throw std::out_of_range("announced outcome index out of basis range");
    const PauliWord own =
        detail::embed_alice_word(encode(alice_msg.bits.substr(copy * m, m), alice), config);
    const PauliWord bob_word = mul(bob.element(transcript.announced_outcomes[copy]), own);
    out.bits += bits_of_index(bob.index_of(bob_word), n);
  }
  return out;
}

// Bob composes each announced word with his own word, leaving Alice's
// embedded word; its factors at the travel positions spell her bits.
inline Message decode_as_bob(const ProtocolTranscript& transcript, const Message& bob_msg) {
  const ProtocolConfig& config = transcript.config;
  const OperatorGroup& bob = GroupCatalog::instance().get(config.bob_group_name);
  const std::size_t n = bits_per_word(bob);
  check_bits(bob_msg, n * transcript.announced_outcomes.size(), "Bob's");
  std::vector<std::size_t> bob_encodings;
  for (std::size_t copy = 0; copy < transcript.announced_outcomes.size(); ++copy)
    bob_encodings.push_back(bob.index_of(encode(bob_msg.bits.substr(copy * n, n), bob)));
  return detail::decode_alice_words(config, transcript.announced_outcomes, bob_encodings).first;
}

}  // namespace aqd
