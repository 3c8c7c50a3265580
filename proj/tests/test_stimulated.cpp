#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "fixtures/oracle_values.hpp"
#include "wvsim/errors.hpp"
#include "wvsim/pointer.hpp"
#include "wvsim/stimulated.hpp"
#include "wvsim/tsvf.hpp"

using namespace wvsim;
using stimulated::StimulatedConfig;

namespace {

StimulatedConfig canonical(double q0, bool excitation = false) {
  return StimulatedConfig(tsvf::alpha_beta_tsv(4.0, 3.0), q0, excitation);
}

}  // namespace

TEST_CASE("branch decomposition carries selection amplitudes and shifts", "[stimulated]") {
  const auto cfg = canonical(10.0);
  const auto branches = stimulated::build_branches(cfg);
  REQUIRE(branches.size() == 2);

  // Branch j: atom in arm j, amplitude conj(post_j) pre_j, arm j's beam
  // shifted outward by 1/(2 q0), the other beam untouched.
  for (std::size_t j : {0, 1}) {
    const cplx expect =
        std::conj(cfg.tsv.post().amp(j)) * cfg.tsv.pre().amp(j);
    REQUIRE(std::abs(branches[j].amplitude - expect) < 1e-15);
    REQUIRE(branches[j].arm == j);
    for (std::size_t b : {0, 1}) {
      const double want = 10.0 + (b == j ? 0.05 : 0.0);
      REQUIRE(branches[j].pointer_centers[b] == Catch::Approx(want).epsilon(1e-15));
    }
  }

  // Excitation runs the shift inward instead.
  const auto exc = stimulated::build_branches(canonical(10.0, true));
  REQUIRE(exc[0].pointer_centers[0] == Catch::Approx(10.0 - 0.05).epsilon(1e-15));
}

TEST_CASE("config validation", "[stimulated]") {
  REQUIRE_THROWS_AS(canonical(0.0), RangeError);
  REQUIRE_THROWS_AS(canonical(-1.0), RangeError);
  REQUIRE_THROWS_AS(
      StimulatedConfig(tsvf::alpha_beta_tsv(4.0, 3.0), std::vector<double>{10.0}),
      DimMismatchError);
}

TEST_CASE("success probability has the closed two-arm form", "[stimulated]") {
  // |sum_j A_j|-style norm with the single overlap factor exp(-delta^2/4),
  // delta = 1/(2 q0): (25 - 24 exp(-delta^2/4)) / 50.
  for (double q0 : {5.0, 10.0, 20.0, 40.0}) {
    const double delta = 0.5 / q0;
    const double omega = std::exp(-delta * delta / 4.0);
    const double expect = (25.0 - 24.0 * omega) / 50.0;
    REQUIRE(stimulated::success_probability_exact(canonical(q0)) ==
            Catch::Approx(expect).epsilon(1e-14));
  }
  // And it matches the 2d-quadrature norm of the joint state.
  for (int i = 0; i < 3; ++i) {
    REQUIRE(stimulated::success_probability_exact(canonical(fixtures::kQ0[i])) ==
            Catch::Approx(fixtures::kSuccessQuad[i]).epsilon(1e-11));
  }
}

TEST_CASE("exact marginal excess matches the joint-density quadrature", "[stimulated]") {
  for (int i = 0; i < 3; ++i) {
    const auto cfg = canonical(fixtures::kQ0[i]);
    REQUIRE(stimulated::exact_marginal_moments(cfg, 0).excess ==
            Catch::Approx(fixtures::kExcessQuadR[i]).margin(1e-10));
    REQUIRE(stimulated::exact_marginal_moments(cfg, 1).excess ==
            Catch::Approx(fixtures::kExcessQuadL[i]).margin(1e-10));
  }
}

TEST_CASE("excesses approach the weak values and conserve their sum", "[stimulated]") {
  double prev_err_r = 0.0, prev_err_l = 0.0;
  for (double q0 : {10.0, 20.0, 40.0}) {
    const auto cfg = canonical(q0);
    const auto r = stimulated::exact_marginal_moments(cfg, 0);
    const auto l = stimulated::exact_marginal_moments(cfg, 1);
    const double err_r = std::abs(r.excess - 4.0);
    const double err_l = std::abs(l.excess + 3.0);
    // The anomalous values appear even though each arm holds one photon's
    // worth of field; deviations vanish quadratically in 1/q0.
    REQUIRE(err_r < 30.0 / (q0 * q0));
    REQUIRE(err_l < 30.0 / (q0 * q0));
    REQUIRE(r.excess + l.excess == Catch::Approx(1.0).margin(5.0 / (q0 * q0)));
    if (prev_err_r > 0.0) {
      REQUIRE(prev_err_r / err_r > 3.0);
      REQUIRE(prev_err_r / err_r < 5.0);
      REQUIRE(prev_err_l / err_l > 3.0);
      REQUIRE(prev_err_l / err_l < 5.0);
    }
    prev_err_r = err_r;
    prev_err_l = err_l;
  }
}

TEST_CASE("excitation flips the excess sign structure", "[stimulated]") {
  const auto cfg = canonical(20.0, true);
  const auto r = stimulated::exact_marginal_moments(cfg, 0);
  const auto l = stimulated::exact_marginal_moments(cfg, 1);
  // Absorbing a photon on the 4-arm, emitting on the -3 arm: mirrored signs.
  // The finite-q0 correction here is ~0.02 at q0 = 20, hence the margin.
  REQUIRE(r.excess == Catch::Approx(-4.0).margin(0.05));
  REQUIRE(l.excess == Catch::Approx(3.0).margin(0.05));
}

TEST_CASE("single-pointer conditional state tracks the quadrature oracle", "[stimulated]") {
  const auto cfg = canonical(100.0);
  const auto cond = stimulated::paper_conditional(cfg, 0);
  REQUIRE(pointer::moments(cond).mean_q ==
          Catch::Approx(fixtures::kPaperConditionalMeanR100).margin(1e-9));
  // Mean moves by (weak value) x (shift): 4 * 1/200 on top of q0.
  REQUIRE(pointer::moments(cond).mean_q == Catch::Approx(100.02).margin(1e-4));
}

TEST_CASE("report collects exact, weak, and single-pointer numbers", "[stimulated]") {
  const auto cfg = canonical(40.0);
  const auto rows = stimulated::report(cfg);
  REQUIRE(rows.size() == 2);

  REQUIRE(rows[0].excess_weak == Catch::Approx(4.0).epsilon(1e-12));
  REQUIRE(rows[1].excess_weak == Catch::Approx(-3.0).epsilon(1e-12));
  for (std::size_t a : {0, 1}) {
    REQUIRE(rows[a].arm == a);
    REQUIRE(rows[a].excess_exact ==
            Catch::Approx(stimulated::exact_marginal_moments(cfg, a).excess));
    REQUIRE(rows[a].excess_paper_marginal ==
            Catch::Approx(pointer::photon_excess(stimulated::paper_conditional(cfg, a),
                                                 cfg.q0[a])));
    REQUIRE(rows[a].success_probability_naive == Catch::Approx(0.02).epsilon(1e-12));
    REQUIRE(rows[a].success_probability_exact ==
            Catch::Approx(stimulated::success_probability_exact(cfg)));
    // The two-pointer reduction and the single-pointer shortcut agree to
    // leading order but differ at O(1/q0^2).
    REQUIRE(std::abs(rows[a].excess_exact - rows[a].excess_paper_marginal) < 0.01);
    REQUIRE(rows[a].excess_exact != rows[a].excess_paper_marginal);
  }
}
