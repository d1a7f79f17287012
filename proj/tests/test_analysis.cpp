#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "aqd/analysis.hpp"
#include "aqd/state_catalog.hpp"

using namespace aqd;
using Catch::Matchers::WithinAbs;

TEST_CASE("closed-form fidelity curves hit frozen reference values", "[analysis]") {
  // Reference numbers computed once from the polynomial coefficients with
  // independent arithmetic and pinned here.
  REQUIRE_THAT(closed_form_fidelity(ChannelKind::AD, 1, 0.3), WithinAbs(0.7225, 1e-15));
  REQUIRE_THAT(closed_form_fidelity(ChannelKind::AD, 2, 0.3), WithinAbs(0.5225125, 1e-15));
  REQUIRE_THAT(closed_form_fidelity(ChannelKind::PD, 1, 0.3), WithinAbs(0.745, 1e-15));
  REQUIRE_THAT(closed_form_fidelity(ChannelKind::PD, 2, 0.3), WithinAbs(0.62005, 1e-15));

  REQUIRE_THAT(closed_form_fidelity(ChannelKind::AD, 1, 0.5), WithinAbs(0.5625, 1e-15));
  REQUIRE_THAT(closed_form_fidelity(ChannelKind::AD, 2, 0.5), WithinAbs(0.3203125, 1e-15));
  REQUIRE_THAT(closed_form_fidelity(ChannelKind::PD, 1, 0.5), WithinAbs(0.625, 1e-15));
  REQUIRE_THAT(closed_form_fidelity(ChannelKind::PD, 2, 0.5), WithinAbs(0.53125, 1e-15));
}

TEST_CASE("closed forms agree at the endpoints", "[analysis]") {
  for (const ChannelKind model : {ChannelKind::AD, ChannelKind::PD})
    for (int travel = 1; travel <= 2; ++travel)
      REQUIRE_THAT(closed_form_fidelity(model, travel, 0.0), WithinAbs(1.0, 1e-15));

  REQUIRE_THAT(closed_form_fidelity(ChannelKind::AD, 1, 1.0), WithinAbs(0.25, 1e-15));
  REQUIRE_THAT(closed_form_fidelity(ChannelKind::AD, 2, 1.0), WithinAbs(0.125, 1e-15));
  REQUIRE_THAT(closed_form_fidelity(ChannelKind::PD, 1, 1.0), WithinAbs(0.5, 1e-15));
  REQUIRE_THAT(closed_form_fidelity(ChannelKind::PD, 2, 1.0), WithinAbs(0.5, 1e-15));

  REQUIRE_THROWS_AS(closed_form_fidelity(ChannelKind::AD, 3, 0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(closed_form_fidelity(ChannelKind::AD, 1, 1.5), std::invalid_argument);
  REQUIRE_THAT(closed_form_fidelity(ChannelKind::Identity, 2, 0.9), WithinAbs(1.0, 1e-15));
}

TEST_CASE("the eta grid covers [0,1] with exact endpoints", "[analysis]") {
  const std::vector<double> grid = eta_grid(0.05);
  REQUIRE(grid.size() == 21);
  REQUIRE(grid.front() == 0.0);
  REQUIRE(grid.back() == 1.0);
  for (std::size_t i = 0; i < grid.size(); ++i)
    REQUIRE_THAT(grid[i], WithinAbs(0.05 * static_cast<double>(i), 1e-12));

  const std::vector<double> coarse = eta_grid(0.3);
  REQUIRE(coarse.size() == 5);
  REQUIRE(coarse.back() == 1.0);
  REQUIRE_THROWS_AS(eta_grid(0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(eta_grid(-0.5), std::invalid_argument);
}

TEST_CASE("exact simulation reproduces the closed forms pointwise", "[analysis]") {
  for (const ChannelKind model : {ChannelKind::AD, ChannelKind::PD}) {
    for (int travel = 1; travel <= 2; ++travel) {
      const SweepResult result = sweep(model, travel, {0.0, 0.3, 0.7, 1.0});
      INFO(to_string(model) << " travel " << travel);
      REQUIRE(result.max_abs_err < 1e-10);
      REQUIRE(result.rows.size() == 4);
      for (const SweepRow& row : result.rows) {
        REQUIRE(row.model == model);
        REQUIRE(row.travel_count == travel);
        REQUIRE_THAT(row.fidelity_simulated, WithinAbs(row.fidelity_closed, 1e-10));
      }
    }
  }
}

TEST_CASE("raw average fidelity accepts layouts the gate would reject", "[analysis]") {
  // The sweep layout encodes on (0,1) even though that pair fails the
  // orthonormality gate; the averaging path works from raw pieces and must
  // not apply the gate, while the scheme constructor does.
  REQUIRE_THROWS_AS(
      EncodingScheme::make(get_state("cluster4"), GroupCatalog::instance().get("G2"), {0, 1}),
      NotDensecodable);

  const double f = average_fidelity(get_state("cluster4").vector,
                                    GroupCatalog::instance().get("G2"), {0, 1},
                                    GroupCatalog::instance().get("G2"), {0, 1},
                                    identity_channel());
  REQUIRE_THAT(f, WithinAbs(1.0, 1e-12));

  SECTION("alice must still embed into bob's group") {
    REQUIRE_THROWS_AS(
        average_fidelity(get_state("cluster4").vector, GroupCatalog::instance().get("G2^6(8)"),
                         {0, 1}, GroupCatalog::instance().get("g1"), {0}, identity_channel()),
        std::invalid_argument);
  }
}

TEST_CASE("one travel qubit beats two at every interior noise level", "[analysis]") {
  const std::vector<double> grid = eta_grid(0.25);
  for (const ChannelKind model : {ChannelKind::AD, ChannelKind::PD}) {
    const SweepResult one = sweep(model, 1, grid);
    const SweepResult two = sweep(model, 2, grid);
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
      INFO(to_string(model) << " eta " << grid[i]);
      REQUIRE(one.rows[i].fidelity_simulated - two.rows[i].fidelity_simulated > 1e-12);
    }
  }
}

TEST_CASE("sweep output is a stable CSV with a fixed header", "[analysis]") {
  const SweepResult result = sweep(ChannelKind::AD, 2, {0.0, 0.5, 1.0});
  std::ostringstream out;
  write_sweep_csv(result, out);
  const std::string text = out.str();

  REQUIRE(text.rfind("model,travel_count,eta,fidelity_closed,fidelity_simulated,abs_err\n", 0) ==
          0);
  REQUIRE(text.find("AD,2,0.5,0.3203125,0.3203125,") != std::string::npos);

  std::istringstream lines(text);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  REQUIRE(count == 4);  // header + one row per grid point

  SECTION("identical inputs serialize identically") {
    std::ostringstream again;
    write_sweep_csv(sweep(ChannelKind::AD, 2, {0.0, 0.5, 1.0}), again);
    REQUIRE(again.str() == text);
  }
}

TEST_CASE("numeric formatting keeps twelve significant digits", "[analysis]") {
  REQUIRE(format_double(0.05) == "0.05");
  REQUIRE(format_double(1.0) == "1");
  REQUIRE(format_double(0.7225) == "0.7225");
  REQUIRE(format_double(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("rationals reduce only when asked", "[analysis]") {
  const Rational r{8, 12};
  REQUIRE(r.str() == "8/12");
  REQUIRE(r.reduced().str() == "2/3");
  REQUIRE_THAT(r.value(), WithinAbs(2.0 / 3.0, 1e-15));
  REQUIRE(Rational{0, 5}.reduced().str() == "0/1");
}

TEST_CASE("efficiency presets reproduce the published ratios", "[analysis]") {
  const auto& presets = efficiency_presets();
  REQUIRE(qubit_efficiency(presets.at("bell-qd")).str() == "4/6");
  REQUIRE(qubit_efficiency(presets.at("cluster-qd")).str() == "8/12");
  REQUIRE(qubit_efficiency(presets.at("cluster-aqd")).str() == "6/10");
  REQUIRE(qubit_efficiency(presets.at("ghz-qd")).str() == "6/10");
  REQUIRE(qubit_efficiency(presets.at("ghz-aqd")).str() == "5/8");

  REQUIRE_THAT(qubit_efficiency(presets.at("bell-qd")).value(), WithinAbs(2.0 / 3.0, 1e-15));
  REQUIRE_THAT(qubit_efficiency(presets.at("ghz-aqd")).value(), WithinAbs(0.625, 1e-15));

  REQUIRE_THROWS_AS(qubit_efficiency(EfficiencyInput{4, 0, 0, 0, 4}), std::invalid_argument);
}

TEST_CASE("the secret-initial-state variant amortizes the basis announcement", "[analysis]") {
  const EfficiencyInput bell = efficiency_presets().at("bell-qd");
  REQUIRE(qsdc_amortized_efficiency(bell).str() == "2/3");

  // At one copy the extra verification qubits dominate.
  REQUIRE(qsdc_efficiency(bell, 1).str() == "4/10");
  REQUIRE(qsdc_efficiency(bell, 100).str() == "400/604");
  REQUIRE(qsdc_efficiency(bell, 100).reduced().str() == "100/151");

  // The finite-copy ratio climbs toward the amortized limit from below.
  const double limit = qsdc_amortized_efficiency(bell).value();
  double prev = 0.0;
  for (long long n : {1LL, 2LL, 5LL, 20LL, 200LL}) {
    const double v = qsdc_efficiency(bell, n).value();
    REQUIRE(v > prev);
    REQUIRE(v < limit);
    prev = v;
  }
}

TEST_CASE("leakage is the larger message size unless the state is secret", "[analysis]") {
  REQUIRE(leakage_bits(2, 2) == 2);
  REQUIRE(leakage_bits(2, 4) == 4);
  REQUIRE(leakage_bits(4, 2) == 4);
  REQUIRE(leakage_bits(0, 0) == 0);
  REQUIRE(leakage_bits(2, 4, true) == 0);
  REQUIRE_THROWS_AS(leakage_bits(-1, 2), std::invalid_argument);
}
