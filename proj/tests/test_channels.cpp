#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "aqd/channels.hpp"
#include "aqd/qstate.hpp"
#include "aqd/rng.hpp"
#include "test_util.hpp"

using namespace aqd;
using Catch::Matchers::WithinAbs;

namespace {

DensityMatrix plus_dm() {
  const double h = 1.0 / std::sqrt(2.0);
  return DensityMatrix::from_pure(StateVector(1, {Complex{h}, Complex{h}}));
}

// Hand-rolled single-qubit Kraus sum, used as the oracle for the library's
// multi-qubit application path.
DensityMatrix apply_single(const KrausChannel& ch, const DensityMatrix& rho) {
  CVec out(4, Complex{0});
  for (const SquareMatrix& e : ch.kraus_ops()) {
    const SquareMatrix& ed = e.adjoint();
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        Complex sum{0};
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) sum += e.at(r, a) * rho.at(a, b) * ed.at(b, c);
        out[static_cast<std::size_t>(r) * 2 + c] += sum;
      }
  }
  return DensityMatrix(1, std::move(out));
}

}  // namespace

TEST_CASE("channel constructors enforce Kraus completeness", "[channels]") {
  // A single damped identity does not resolve to a trace-preserving map.
  const SquareMatrix half(2, {Complex{0.5}, Complex{0}, Complex{0}, Complex{0.5}});
  REQUIRE_THROWS_AS(KrausChannel(ChannelKind::Identity, 0.0, {half}), std::invalid_argument);

  REQUIRE_NOTHROW(ad_channel(0.0));
  REQUIRE_NOTHROW(ad_channel(1.0));
  REQUIRE_NOTHROW(pd_channel(0.37));
  REQUIRE_THROWS_AS(ad_channel(-0.1), std::invalid_argument);
  REQUIRE_THROWS_AS(pd_channel(1.1), std::invalid_argument);
}

TEST_CASE("channel kinds parse and print", "[channels]") {
  REQUIRE(parse_channel_kind("AD") == ChannelKind::AD);
  REQUIRE(parse_channel_kind("pd") == ChannelKind::PD);
  REQUIRE(parse_channel_kind("none") == ChannelKind::Identity);
  REQUIRE_THROWS_AS(parse_channel_kind("dephase"), std::invalid_argument);
  REQUIRE(std::string(to_string(ChannelKind::AD)) == "AD");
  REQUIRE(std::string(to_string(ChannelKind::Identity)) == "identity");
}

TEST_CASE("amplitude damping relaxes population and shrinks coherence", "[channels]") {
  const double eta = 0.3;
  const KrausChannel ch = ad_channel(eta);

  SECTION("excited population decays by eta") {
    const DensityMatrix rho = apply_noise(DensityMatrix::from_pure(StateVector::basis_state(1, 1)),
                                          ch, {{0}, 1});
    REQUIRE_THAT(rho.at(0, 0).real(), WithinAbs(eta, 1e-14));
    REQUIRE_THAT(rho.at(1, 1).real(), WithinAbs(1.0 - eta, 1e-14));
    REQUIRE_THAT(std::abs(rho.at(0, 1)), WithinAbs(0.0, 1e-14));
  }

  SECTION("coherence scales by sqrt(1 - eta)") {
    const DensityMatrix rho = apply_noise(plus_dm(), ch, {{0}, 1});
    REQUIRE_THAT(rho.at(0, 1).real(), WithinAbs(0.4183300132670378, 1e-14));
    REQUIRE_THAT(rho.at(0, 0).real(), WithinAbs(0.5 + eta / 2.0, 1e-14));
  }

  SECTION("full damping lands every state on the ground state") {
    Rng rng(11);
    const DensityMatrix rho = apply_noise(
        DensityMatrix::from_pure(testutil::random_state(1, rng)), ad_channel(1.0), {{0}, 1});
    REQUIRE_THAT(rho.at(0, 0).real(), WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("phase damping kills coherence and keeps populations", "[channels]") {
  const double eta = 0.4;
  const DensityMatrix rho = apply_noise(plus_dm(), pd_channel(eta), {{0}, 1});
  REQUIRE_THAT(rho.at(0, 0).real(), WithinAbs(0.5, 1e-14));
  REQUIRE_THAT(rho.at(1, 1).real(), WithinAbs(0.5, 1e-14));
  REQUIRE_THAT(rho.at(0, 1).real(), WithinAbs(0.5 * (1.0 - eta), 1e-14));

  const DensityMatrix dead = apply_noise(plus_dm(), pd_channel(1.0), {{0}, 1});
  REQUIRE_THAT(std::abs(dead.at(0, 1)), WithinAbs(0.0, 1e-14));
}

TEST_CASE("zero rate and the identity channel change nothing", "[channels]") {
  Rng rng(22);
  const DensityMatrix rho = DensityMatrix::from_pure(testutil::random_state(2, rng));
  REQUIRE_THAT(apply_noise(rho, ad_channel(0.0), {{0, 1}, 2}).max_abs_diff(rho),
               WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(apply_noise(rho, pd_channel(0.0), {{0, 1}, 2}).max_abs_diff(rho),
               WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(apply_noise(rho, identity_channel(), {{0, 1}, 2}).max_abs_diff(rho),
               WithinAbs(0.0, 1e-14));
}

TEST_CASE("noise acts on the named travel qubits only", "[channels]") {
  // |0> (x) |+> with damping on qubit 1 must equal |0><0| (x) damped(|+><+|).
  const StateVector zero = StateVector::basis_state(1, 0);
  const double h = 1.0 / std::sqrt(2.0);
  const StateVector plus(1, {Complex{h}, Complex{h}});
  const DensityMatrix joint = DensityMatrix::from_pure(tensor(zero, plus));

  for (const ChannelKind kind : {ChannelKind::AD, ChannelKind::PD}) {
    const KrausChannel ch = make_channel(kind, 0.45);
    const DensityMatrix got = apply_noise(joint, ch, {{1}, 1});
    const DensityMatrix damped = apply_single(ch, plus_dm());

    CVec want(16, Complex{0});
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) want[static_cast<std::size_t>(r) * 4 + c] = damped.at(r, c);
    REQUIRE_THAT(got.max_abs_diff(DensityMatrix(2, std::move(want))), WithinAbs(0.0, 1e-14));
  }
}

TEST_CASE("multi-qubit application factorizes over independent qubits", "[channels]") {
  Rng rng(33);
  const KrausChannel ch = ad_channel(0.25);
  const StateVector psi = testutil::random_state(3, rng);
  const DensityMatrix rho = DensityMatrix::from_pure(psi);

  const DensityMatrix both = apply_noise(rho, ch, {{0, 2}, 1});
  const DensityMatrix seq =
      apply_noise(apply_noise(rho, ch, {{0}, 1}), ch, {{2}, 1});
  REQUIRE_THAT(both.max_abs_diff(seq), WithinAbs(0.0, 1e-13));
}

TEST_CASE("two traversals equal two sequential applications", "[channels]") {
  Rng rng(44);
  for (const ChannelKind kind : {ChannelKind::AD, ChannelKind::PD}) {
    const KrausChannel ch = make_channel(kind, 0.3);
    const DensityMatrix rho = DensityMatrix::from_pure(testutil::random_state(2, rng));
    const DensityMatrix twice = apply_noise(rho, ch, {{0, 1}, 2});
    const DensityMatrix seq = apply_noise(apply_noise(rho, ch, {{0, 1}, 1}), ch, {{0, 1}, 1});
    REQUIRE_THAT(twice.max_abs_diff(seq), WithinAbs(0.0, 1e-13));
  }
  REQUIRE_THROWS_AS(
      apply_noise(DensityMatrix::maximally_mixed(1), ad_channel(0.1), {{0}, 3}),
      std::invalid_argument);
}

TEST_CASE("channels preserve trace and positivity across the rate range", "[channels]") {
  Rng rng(55);
  for (const ChannelKind kind : {ChannelKind::AD, ChannelKind::PD}) {
    for (const double eta : {0.0, 0.1, 0.5, 0.9, 1.0}) {
      const DensityMatrix rho = DensityMatrix::from_pure(testutil::random_state(2, rng));
      const DensityMatrix out = apply_noise(rho, make_channel(kind, eta), {{0, 1}, 2});
      REQUIRE_THAT(out.trace_real(), WithinAbs(1.0, 1e-12));
      REQUIRE_NOTHROW(out.assert_positive_semidefinite());
    }
  }
}

TEST_CASE("the library Kraus sum matches a hand-rolled single-qubit sum", "[channels]") {
  Rng rng(66);
  for (const ChannelKind kind : {ChannelKind::AD, ChannelKind::PD}) {
    for (const double eta : {0.15, 0.6, 0.95}) {
      const KrausChannel ch = make_channel(kind, eta);
      const DensityMatrix rho = DensityMatrix::from_pure(testutil::random_state(1, rng));
      REQUIRE_THAT(apply_noise(rho, ch, {{0}, 1}).max_abs_diff(apply_single(ch, rho)),
                   WithinAbs(0.0, 1e-14));
    }
  }
}
