// Single-qubit Kraus channels and their application to the travel qubits of
// a register. Home qubits are never touched; each travel qubit passes
// through the channel independently, once per traversal of the link.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aqd/qstate.hpp"

namespace aqd {

enum class ChannelKind { AD, PD, Identity };

inline const char* to_string(ChannelKind k) {
  switch (k) {
    case ChannelKind::AD: return "AD";
    case ChannelKind::PD: return "PD";
    case ChannelKind::Identity: return "identity";
  }
  throw std::logic_error("to_string: bad ChannelKind");
}

inline ChannelKind parse_channel_kind(const std::string& name) {
  if (name == "AD" || name == "ad") return ChannelKind::AD;
  if (name == "PD" || name == "pd") return ChannelKind::PD;
  if (name == "identity" || name == "none") return ChannelKind::Identity;
  throw std::invalid_argument("unknown channel kind '" + name + "'");
}

// A set of 2x2 Kraus operators forming a trace-preserving map.
class KrausChannel {
 public:
  KrausChannel(ChannelKind kind, double rate, std::vector<SquareMatrix> kraus_ops)
      : kind_(kind), rate_(rate), ops_(std::move(kraus_ops)) {
    if (ops_.empty()) throw std::invalid_argument("KrausChannel: no operators");
    SquareMatrix sum = SquareMatrix::zero(2);
    for (const SquareMatrix& e : ops_) {
      if (e.dim() != 2) throw std::invalid_argument("KrausChannel: operators must be 2x2");
      const SquareMatrix term = e.adjoint() * e;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) sum.at(r, c) += term.at(r, c);
    }
    if (sum.max_abs_diff(SquareMatrix::identity(2)) > kConstructTol)
      throw std::invalid_argument("KrausChannel: completeness sum deviates from identity");
  }

  ChannelKind kind() const { return kind_; }
  double rate() const { return rate_; }
  const std::vector<SquareMatrix>& kraus_ops() const { return ops_; }

 private:
  ChannelKind kind_;
  double rate_;
  std::vector<SquareMatrix> ops_;
};

namespace detail {

inline void check_rate(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::invalid_argument("channel rate must lie in [0,1], got " + std::to_string(eta));
}

}  // namespace detail

// Energy loss: |1> decays to |0> with probability eta.
//   E0 = |0><0| + sqrt(1-eta) |1><1|,  E1 = sqrt(eta) |0><1|
inline KrausChannel ad_channel(double eta) {
  detail::check_rate(eta);
  const double keep = std::sqrt(1.0 - eta);
  SquareMatrix e0(2, {Complex{1}, Complex{0}, Complex{0}, Complex{keep}});
  SquareMatrix e1(2, {Complex{0}, Complex{std::sqrt(eta)}, Complex{0}, Complex{0}});
  return KrausChannel(ChannelKind::AD, eta, {std::move(e0), std::move(e1)});
}

// Dephasing: off-diagonal coherence shrinks by (1-eta), populations stay.
//   E0 = sqrt(1-eta) I,  E1 = sqrt(eta) |0><0|,  E2 = sqrt(eta) |1><1|
inline KrausChannel pd_channel(double eta) {
  detail::check_rate(eta);
  const double keep = std::sqrt(1.0 - eta);
  const double drop = std::sqrt(eta);
  SquareMatrix e0(2, {Complex{keep}, Complex{0}, Complex{0}, Complex{keep}});
  SquareMatrix e1(2, {Complex{drop}, Complex{0}, Complex{0}, Complex{0}});
  SquareMatrix e2(2, {Complex{0}, Complex{0}, Complex{0}, Complex{drop}});
  return KrausChannel(ChannelKind::PD, eta, {std::move(e0), std::move(e1), std::move(e2)});
}

inline KrausChannel identity_channel() {
  return KrausChannel(ChannelKind::Identity, 0.0, {SquareMatrix::identity(2)});
}

inline KrausChannel make_channel(ChannelKind kind, double eta) {
  switch (kind) {
    case ChannelKind::AD: return ad_channel(eta);
    case ChannelKind::PD: return pd_channel(eta);
    case ChannelKind::Identity: return identity_channel();
  }
  throw std::logic_error("make_channel: bad ChannelKind");
}

// Which qubits travel and how many times they cross the noisy link.
struct TraversalPlan {
  std::vector<int> travel_qubits;
  int traversals = 1;
};

// Kraus sum over each travel qubit, repeated per traversal:
//   rho -> sum_i (I ⊗ E_i ⊗ I ...) rho (...)^dag
inline DensityMatrix apply_noise(const DensityMatrix& rho, const KrausChannel& ch,
                                 const TraversalPlan& plan) {
  detail::check_targets(plan.travel_qubits, rho.num_qubits());
  if (plan.traversals < 1 || plan.traversals > 2)
    throw std::invalid_argument("TraversalPlan: traversals must be 1 or 2");
  CVec entries = rho.entries();
  const std::size_t d = rho.dim();
  for (int pass = 0; pass < plan.traversals; ++pass) {
    for (int q : plan.travel_qubits) {
      CVec acc(d * d, Complex{0});
      for (const SquareMatrix& e : ch.kraus_ops()) {
        const CVec term = detail::conjugate_on_qubits(e, {q}, entries, rho.num_qubits());
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += term[i];
      }
      entries = std::move(acc);
    }
  }
  return DensityMatrix(rho.num_qubits(), std::move(entries));
}

}  // namespace aqd
