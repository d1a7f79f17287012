// Average-fidelity machinery for the noisy dialogue, the matching
// closed-form polynomials, sweep generation for plotting, and the qubit
// efficiency / leakage bookkeeping.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "aqd/channels.hpp"
#include "aqd/pauli_group.hpp"
#include "aqd/qstate.hpp"
#include "aqd/state_catalog.hpp"

namespace aqd {

// Closed-form average fidelity, keyed by channel and travel-qubit count
// (each travel qubit crosses the link twice, once per leg).
inline double closed_form_fidelity(ChannelKind model, int travel_count, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::invalid_argument("closed_form_fidelity: eta must lie in [0,1]");
  if (travel_count != 1 && travel_count != 2)
    throw std::invalid_argument("closed_form_fidelity: travel count must be 1 or 2");
  const double e = eta;
  switch (model) {
    case ChannelKind::AD:
      if (travel_count == 1) return (e - 2.0) * (e - 2.0) / 4.0;
      return (((e - 4.0) * e + 12.0) * e * e - 16.0 * e + 8.0) / 8.0;
    case ChannelKind::PD: {
      if (travel_count == 1) return (e * e - 2.0 * e + 2.0) / 2.0;
      const double d = (e - 1.0) * (e - 1.0);
      return (d * d + 1.0) / 2.0;
    }
    case ChannelKind::Identity:
      return 1.0;
  }
  throw std::logic_error("closed_form_fidelity: bad ChannelKind");
}

// Exact Kraus-sum average fidelity over all (Bob word, Alice word) pairs.
// Per pair: the noiseless target is U_A U_B |phi>, and the actual state
// picks up one channel pass on the travel qubits per leg, i.e. before and
// after Alice's encoding. No sampling is involved.
//
// Alice's words, embedded at the travel positions, must fall inside Bob's
// group; the (state, Bob group, Bob qubits) triple is deliberately not
// required to pass the densecodability gate, since this average is defined
// for any encoding layout.
inline double average_fidelity(const StateVector& state, const OperatorGroup& bob_group,
                               const std::vector<int>& encoded_qubits_bob,
                               const OperatorGroup& alice_group,
                               const std::vector<int>& travel_qubits, const KrausChannel& ch) {
  detail::check_targets(encoded_qubits_bob, state.num_qubits());
  detail::check_targets(travel_qubits, state.num_qubits());
  for (const PauliWord& a : alice_group.elements())
    if (!bob_group.contains(reposition_word(a, travel_qubits, encoded_qubits_bob)))
      throw std::invalid_argument("average_fidelity: Alice's group does not embed into Bob's "
                                  "group at the travel positions");
  const TraversalPlan leg{travel_qubits, 1};
  double total = 0.0;
  for (const PauliWord& wb : bob_group.elements()) {
    const StateVector encoded_by_bob =
        apply_on_qubits(matrix_of(wb), encoded_qubits_bob, state);
    const DensityMatrix after_forward_leg =
        apply_noise(DensityMatrix::from_pure(encoded_by_bob), ch, leg);
    for (const PauliWord& wa : alice_group.elements()) {
      const UnitaryMatrix ua = matrix_of(wa);
      const StateVector target = apply_on_qubits(ua, travel_qubits, encoded_by_bob);
      const DensityMatrix after_alice = apply_on_qubits(ua, travel_qubits, after_forward_leg);
      const DensityMatrix after_backward_leg = apply_noise(after_alice, ch, leg);
      total += fidelity_pure(after_backward_leg, target);
    }
  }
  return total / static_cast<double>(bob_group.size() * alice_group.size());
}

inline double average_fidelity(const EncodingScheme& scheme, const OperatorGroup& alice_group,
                               const std::vector<int>& travel_qubits, const KrausChannel& ch) {
  return average_fidelity(scheme.state.vector, scheme.group, scheme.encoded_qubits, alice_group,
                          travel_qubits, ch);
}

struct SweepRow {
  ChannelKind model;
  int travel_count;
  double eta;
  double fidelity_closed;
  double fidelity_simulated;
  double abs_err;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double max_abs_err = 0.0;
};

// Evenly spaced eta grid over [0,1] including both endpoints. When 1/step
// is integral the points are computed as i/n so the endpoints are exact.
inline std::vector<double> eta_grid(double step) {
  if (!(step > 0.0 && step <= 1.0))
    throw std::invalid_argument("eta_grid: step must lie in (0,1]");
  std::vector<double> grid;
  const double inv = 1.0 / step;
  const long n = std::lround(inv);
  if (n >= 1 && std::abs(inv - static_cast<double>(n)) < 1e-9) {
    for (long i = 0; i <= n; ++i) grid.push_back(static_cast<double>(i) / static_cast<double>(n));
  } else {
    for (double e = 0.0; e < 1.0 - 1e-12; e += step) grid.push_back(e);
    grid.push_back(1.0);
  }
  return grid;
}

/// Reference configuration for the sweep: the 4-qubit cluster state with
// Bob's full 2-qubit group on qubits (0,1). With two travel qubits Alice
// uses the full 2-qubit group on (0,1); with one travel qubit she uses the
// full 1-qubit group on qubit 0. This layout reproduces the closed forms
// point for point.
inline SweepResult sweep(ChannelKind model, int travel_count, const std::vector<double>& grid) {
  if (travel_count != 1 && travel_count != 2)
    throw std::invalid_argument("sweep: travel count must be 1 or 2");
  if (model != ChannelKind::AD && model != ChannelKind::PD)
    throw std::invalid_argument("sweep: model must be AD or PD");
  const StateVector& state = get_state("cluster4").vector;
  const OperatorGroup& bob = GroupCatalog::instance().get("G2");
  const std::vector<int> bob_qubits{0, 1};
  const OperatorGroup& alice =
      GroupCatalog::instance().get(travel_count == 2 ? "G2" : "G1");
  const std::vector<int> travel_qubits =
      travel_count == 2 ? std::vector<int>{0, 1} : std::vector<int>{0};

  SweepResult result;
  for (double eta : grid) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("sweep: eta grid leaves [0,1]");
    const double closed = closed_form_fidelity(model, travel_count, eta);
    const double simulated = average_fidelity(state, bob, bob_qubits, alice, travel_qubits,
                                              make_channel(model, eta));
    const double err = std::abs(closed - simulated);
    result.rows.push_back(SweepRow{model, travel_count, eta, closed, simulated, err});
    if (err > result.max_abs_err) result.max_abs_err = err;
  }
  return result;
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

inline void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "model,travel_count,eta,fidelity_closed,fidelity_simulated,abs_err\n";
  for (const SweepRow& r : result.rows)
    out << to_string(r.model) << ',' << r.travel_count << ',' << format_double(r.eta) << ','
        << format_double(r.fidelity_closed) << ',' << format_double(r.fidelity_simulated) << ','
        << format_double(r.abs_err) << '\n';
}

// Exact ratio, kept unreduced so the bookkeeping stays visible (4/6, not
// 2/3); reduced() divides out the gcd when the limit form is wanted.
struct Rational {
  long long num = 0;
  long long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  Rational reduced() const {
    const long long g = std::gcd(num, den);
    return g ? Rational{num / g, den / g} : *this;
  }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
};

// c message bits carried per copy costing Q channel qubits, t travel qubits
// (counted twice, once per leg) and b classical decoding bits; the optional
// fixed overhead models the extra qubits spent keeping the initial state
// secret.
struct EfficiencyInput {
  long long c = 0;
  long long Q = 0;
  long long t = 0;
  long long b = 0;
  long long qsdc_overhead = 4;
};

inline Rational qubit_efficiency(const EfficiencyInput& in) {
  const long long den = in.Q + 2 * in.t + in.b;
  if (den <= 0) throw std::invalid_argument("qubit_efficiency: zero denominator");
  return Rational{in.c, den};
}

// Finite-copy efficiency with the secret-initial-state overhead included:
// (c n) / ((Q + 2t) n + overhead + b n).
inline Rational qsdc_efficiency(const EfficiencyInput& in, long long copies) {
  if (copies < 1) throw std::invalid_argument("qsdc_efficiency: copies must be at least 1");
  const long long den = (in.Q + 2 * in.t + in.b) * copies + in.qsdc_overhead;
  if (den <= 0) throw std::invalid_argument("qsdc_efficiency: zero denominator");
  return Rational{in.c * copies, den};
}

// Copy count to infinity: the fixed overhead vanishes and the ratio reduces.
inline Rational qsdc_amortized_efficiency(const EfficiencyInput& in) {
  return qubit_efficiency(in).reduced();
}

inline const std::map<std::string, EfficiencyInput>& efficiency_presets() {
  static const std::map<std::string, EfficiencyInput> presets = {
      {"bell-qd", {4, 2, 1, 2, 4}},     {"cluster-qd", {8, 4, 2, 4, 4}},
      {"cluster-aqd", {6, 4, 1, 4, 4}}, {"ghz-qd", {6, 3, 2, 3, 4}},
      {"ghz-aqd", {5, 3, 1, 3, 4}},
  };
  return presets;
}

// Bits an outsider learns about the exchanged messages from the public
// announcement alone: total encoded bits minus the smaller party's share,
// i.e. max(m, n). Keeping the initial state secret removes the leak.
inline int leakage_bits(int m, int n, bool secret_initial_state = false) {
  if (m < 0 || n < 0) throw std::invalid_argument("leakage_bits: negative bit count");
  if (secret_initial_state) return 0;
  return std::max(m, n);
}

}  // namespace aqd
