// One-shot oracle run: computes reference numbers for the closed-form code
// paths by quadrature / dense scanning, printed at full precision. The
// numbers frozen into tests/fixtures/ come from this program's output; rerun
// it whenever a fixture needs to be re-derived.

#include <cstdio>
#include <vector>

#include "support/quadrature.hpp"
#include "wvsim/pointer.hpp"
#include "wvsim/spontaneous.hpp"
#include "wvsim/stimulated.hpp"
#include "wvsim/tsvf.hpp"

using namespace wvsim;

namespace {

void print(const char* label, double v) { std::printf("%-58s % .17g\n", label, v); }

double dense_peak(const pointer::GaussianMixture& m, double lo, double hi,
                  std::size_t points) {
  const auto value = [&](double x) { return std::norm(pointer::amplitude(m, x)); };
  double best_x = lo, best_v = value(lo);
  const double h = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 1; i < points; ++i) {
    const double x = lo + h * static_cast<double>(i);
    const double v = value(x);
    if (v >= best_v) {
      best_v = v;
      best_x = x;
    }
  }
  double a = best_x - h, b = best_x + h;
  while (b - a > 1e-10) {
    const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
    if (value(m1) <= value(m2)) a = m1;
    else b = m2;
  }
  return 0.5 * (a + b);
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  std::printf("== stimulated: exact marginal excess, 2d quadrature vs closed form ==\n");
  for (double q0 : {10.0, 20.0, 40.0}) {
    const stimulated::StimulatedConfig cfg(tsvf::alpha_beta_tsv(4.0, 3.0), q0);
    const auto quad = testsupport::joint_moments_quad(cfg);
    for (std::size_t arm : {0, 1}) {
      const auto exact = stimulated::exact_marginal_moments(cfg, arm);
      char label[96];
      std::snprintf(label, sizeof(label), "excess_quad   q0=%g arm=%zu", q0, arm);
      print(label, quad.mean_q2[arm] - 1.0 - q0 * q0);
      std::snprintf(label, sizeof(label), "excess_closed q0=%g arm=%zu", q0, arm);
      print(label, exact.excess);
    }
    char label[96];
    std::snprintf(label, sizeof(label), "success_quad  q0=%g", q0);
    print(label, quad.norm2);
  }

  std::printf("\n== stimulated: success probability closed form ==\n");
  for (double q0 : {5.0, 10.0, 20.0, 40.0}) {
    const stimulated::StimulatedConfig cfg(tsvf::alpha_beta_tsv(4.0, 3.0), q0);
    char label[96];
    std::snprintf(label, sizeof(label), "success_closed q0=%g", q0);
    print(label, stimulated::success_probability_exact(cfg));
  }

  std::printf("\n== stimulated: single-pointer (paper-marginal) excess ==\n");
  for (double q0 : {20.0, 40.0}) {
    const stimulated::StimulatedConfig cfg(tsvf::alpha_beta_tsv(4.0, 3.0), q0);
    for (std::size_t arm : {0, 1}) {
      char label[96];
      std::snprintf(label, sizeof(label), "paper_marginal q0=%g arm=%zu", q0, arm);
      print(label, pointer::photon_excess(stimulated::paper_conditional(cfg, arm), q0));
    }
  }

  std::printf("\n== pointer: overlaps and moments vs 1d quadrature ==\n");
  {
    const auto c10 = pointer::coherent_pointer(10.0);
    const auto e10 = pointer::emitted_pointer(10.0);
    print("overlap_quad   coherent(10) emitted(10)",
          testsupport::overlap_quad(c10, e10).real());
    print("overlap_closed coherent(10) emitted(10)", pointer::overlap(c10, e10).real());
    for (double delta : {0.1, 1.0, 5.0}) {
      const auto a = pointer::coherent_pointer(10.0);
      const auto b = pointer::GaussianMixture(
          {pointer::Term{cplx{1.0, 0.0}, pointer::Gaussian{10.0 + delta, 1.0, 0.0}}});
      char label[96];
      std::snprintf(label, sizeof(label), "overlap_quad unit gaussians delta=%g", delta);
      print(label, testsupport::overlap_quad(a, b).real());
    }
    const stimulated::StimulatedConfig cfg100(tsvf::alpha_beta_tsv(4.0, 3.0), 100.0);
    const auto cond = stimulated::paper_conditional(cfg100, 0);
    print("paper_conditional_R mean_quad   q0=100",
          testsupport::moments_quad(cond).mean_q);
    print("paper_conditional_R mean_closed q0=100", pointer::moments(cond).mean_q);
  }

  std::printf("\n== spontaneous: dense-scan peaks ==\n");
  {
    const spontaneous::EmissionConfig canonical(tsvf::alpha_beta_tsv(4.0, 3.0), {1.0, -1.0},
                                                100.0);
    const auto pat = spontaneous::emission_pattern(canonical);
    const auto win = spontaneous::search_window(canonical);
    print("peak_dense canonical d=1 lambda=100",
          dense_peak(pat, win.lo, win.hi, 2000001));
    print("peak_lib   canonical d=1 lambda=100",
          spontaneous::peak_position(pat, win));

    const spontaneous::EmissionConfig wide(tsvf::alpha_beta_tsv(6.0, 5.0), {1.0, -1.0},
                                           200.0);
    const auto pat65 = spontaneous::emission_pattern(wide);
    const auto win65 = spontaneous::search_window(wide);
    print("peak_dense alpha=6 beta=5 d=1 lambda=200",
          dense_peak(pat65, win65.lo, win65.hi, 2000001));
    print("peak_lib   alpha=6 beta=5 d=1 lambda=200",
          spontaneous::peak_position(pat65, win65));
  }

  std::printf("\n== spontaneous: momentum shift, fd quadrature vs prediction ==\n");
  for (double d : {1.0, 2.0}) {
    const spontaneous::EmissionConfig cfg(tsvf::alpha_beta_tsv(cplx{0.0, 4.0}, cplx{3.0, 0.0}),
                                          {d, -d}, 100.0);
    const auto pat = spontaneous::emission_pattern(cfg);
    char label[96];
    std::snprintf(label, sizeof(label), "mean_p_quad      alpha=4i beta=3 d=%g", d);
    print(label, testsupport::mean_p_quad(pat));
    std::snprintf(label, sizeof(label), "mean_p_fourier   alpha=4i beta=3 d=%g", d);
    print(label, pointer::moments(pointer::fourier(pat)).mean_q);
    std::snprintf(label, sizeof(label), "mean_p_predicted alpha=4i beta=3 d=%g", d);
    print(label, spontaneous::predicted_mean_p(cfg));
  }

  return 0;
}
