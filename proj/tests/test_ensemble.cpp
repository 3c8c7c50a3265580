#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "wvsim/ensemble.hpp"
#include "wvsim/rng.hpp"
#include "wvsim/stimulated.hpp"
#include "wvsim/tsvf.hpp"

using namespace wvsim;
using stimulated::StimulatedConfig;

namespace {

StimulatedConfig canonical(double q0 = 10.0) {
  return StimulatedConfig(tsvf::alpha_beta_tsv(4.0, 3.0), q0);
}

}  // namespace

TEST_CASE("single trial is a pure function of seed and index", "[ensemble]") {
  const auto cfg = canonical();
  auto g1 = rng::trial_rng(42, 17);
  auto g2 = rng::trial_rng(42, 17);
  const auto a = ensemble::run_trial(cfg, g1);
  const auto b = ensemble::run_trial(cfg, g2);
  REQUIRE(a.accepted == b.accepted);
  REQUIRE(a.q_samples == b.q_samples);
  if (a.accepted) REQUIRE(a.q_samples.size() == 2);
}

TEST_CASE("most trials fail post-selection", "[ensemble]") {
  const auto cfg = canonical();
  const ensemble::TrialEngine engine(cfg);
  int accepted = 0;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    auto gen = rng::trial_rng(7, i);
    if (engine.run(gen).accepted) ++accepted;
  }
  REQUIRE(accepted > 10);
  REQUIRE(accepted < 120);  // ~2% expected
}

TEST_CASE("ensemble statistics converge on the exact conditional excess", "[ensemble]") {
  const auto cfg = canonical();
  const auto stats = ensemble::run_ensemble(cfg, 200000, 42);

  REQUIRE(stats.n_trials == 200000);
  REQUIRE(stats.seed == 42);
  REQUIRE(stats.mean_excess.size() == 2);
  REQUIRE(stats.n_accepted > 0);
  REQUIRE(stats.acceptance_rate ==
          Catch::Approx(static_cast<double>(stats.n_accepted) / 200000.0));

  const double p = stimulated::success_probability_exact(cfg);
  const double sigma_p = std::sqrt(p * (1.0 - p) / 200000.0);
  REQUIRE(std::abs(stats.acceptance_rate - p) < 4.0 * sigma_p);

  for (std::size_t arm : {0, 1}) {
    const double exact = stimulated::exact_marginal_moments(cfg, arm).excess;
    REQUIRE(std::abs(stats.mean_excess[arm] - exact) < 4.0 * stats.std_err[arm]);
    REQUIRE(stats.std_err[arm] > 0.0);
  }
}

TEST_CASE("fixed seed reproduces bit-identical statistics", "[ensemble]") {
  const auto cfg = canonical();
  const auto a = ensemble::run_ensemble(cfg, 20000, 123);
  const auto b = ensemble::run_ensemble(cfg, 20000, 123);
  REQUIRE(a.n_accepted == b.n_accepted);
  REQUIRE(a.mean_excess == b.mean_excess);
  REQUIRE(a.std_err == b.std_err);

  const auto c = ensemble::run_ensemble(cfg, 20000, 124);
  REQUIRE(a.mean_excess != c.mean_excess);
}

TEST_CASE("worker count does not change the result", "[ensemble]") {
  const auto cfg = canonical();
  const auto one = ensemble::run_ensemble(cfg, 20000, 42, 1);
  for (std::size_t workers : {2, 3, 7}) {
    const auto many = ensemble::run_ensemble(cfg, 20000, 42, workers);
    REQUIRE(many.n_accepted == one.n_accepted);
    REQUIRE(many.mean_excess == one.mean_excess);
    REQUIRE(many.std_err == one.std_err);
    REQUIRE(many.acceptance_rate == one.acceptance_rate);
  }
}

TEST_CASE("an all-rejected ensemble is an error, not a silent zero", "[ensemble]") {
  const auto cfg = canonical();
  // Find a seed whose first trial rejects, then run a one-trial ensemble.
  std::uint64_t seed = 0;
  for (;; ++seed) {
    auto gen = rng::trial_rng(seed, 0);
    if (!ensemble::run_trial(cfg, gen).accepted) break;
  }
  REQUIRE_THROWS_AS(ensemble::run_ensemble(cfg, 1, seed), NoAcceptedTrialsError);
  REQUIRE_THROWS_AS(ensemble::run_ensemble(cfg, 0, 42), RangeError);
}

TEST_CASE("variance report explains the required ensemble size", "[ensemble]") {
  const auto cfg = canonical();
  const auto rows = ensemble::estimator_variance_report(cfg, 50000, 42);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    // One trial's readout noise is of order 2 q0 >> the signal of order 4,
    // which is why thousands of accepted trials are needed per digit.
    REQUIRE(r.per_trial_sd > 4.0 * std::abs(r.signal));
    REQUIRE(r.per_trial_sd == Catch::Approx(2.0 * 10.0).margin(2.0));
    REQUIRE(r.std_err < 0.1 * r.per_trial_sd);
    REQUIRE(r.acceptance_rate == Catch::Approx(0.02).margin(0.01));
  }
  REQUIRE(rows[0].signal == Catch::Approx(4.0).margin(0.05));
  REQUIRE(rows[1].signal == Catch::Approx(-3.0).margin(0.07));
}
