#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "wvsim/errors.hpp"
#include "wvsim/pointer.hpp"
#include "wvsim/tsvf.hpp"

namespace wvsim {
namespace spontaneous {

// Interferometer whose arm j sits at position arm_positions[j]; the atom
// emits one photon whose spatial profile is a Gaussian of standard deviation
// waist_factor * lambda around the emitting arm. The interesting regime has
// lambda much larger than every arm separation.
struct EmissionConfig {
  tsvf::TwoStateVector tsv;
  std::vector<double> arm_positions;
  double lambda;
  double waist_factor = 1.0;

  EmissionConfig(tsvf::TwoStateVector t, std::vector<double> pos, double lam,
                 double waist = 1.0)
      : tsv(std::move(t)), arm_positions(std::move(pos)), lambda(lam), waist_factor(waist) {
    if (arm_positions.size() != tsv.dim())
      throw DimMismatchError("one position per arm required");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
      throw RangeError("lambda must be positive and finite");
    if (!(waist_factor > 0.0) || !std::isfinite(waist_factor))
      throw RangeError("waist_factor must be positive and finite");
    for (std::size_t i = 0; i < arm_positions.size(); ++i) {
      if (!std::isfinite(arm_positions[i])) throw RangeError("arm position must be finite");
      for (std::size_t j = i + 1; j < arm_positions.size(); ++j)
        if (arm_positions[i] == arm_positions[j])
          throw RangeError("arm positions must be distinct");
    }
  }

  double profile_width() const { return waist_factor * lambda; }
};

// Post-selected photon wavefunction over position: coefficient equal to the
// arm's projector weak value on a Gaussian at the arm's position. The
// coefficients sum to 1, so for well-separated phases the pattern behaves
// like a single emitter at the weak-value-weighted position, which need not
// lie between the arms.
inline pointer::GaussianMixture emission_pattern(const EmissionConfig& cfg) {
  const auto weak = tsvf::arm_weak_values(cfg.tsv);
  std::vector<pointer::Term> terms;
  terms.reserve(weak.size());
  for (std::size_t i = 0; i < weak.size(); ++i)
    terms.push_back(
        {weak[i], pointer::Gaussian{cfg.arm_positions[i], cfg.profile_width(), 0.0}});
  return pointer::GaussianMixture(std::move(terms));
}

// Weak value of the position operator: the real parts of the arm weak values
// weighting the arm positions. For the two-arm (alpha, beta) family at
// (-d, +d) with alpha = beta + 1 this is (alpha + beta) d.
inline double phantom_prediction(const EmissionConfig& cfg) {
  const auto weak = tsvf::arm_weak_values(cfg.tsv);
  double acc = 0.0;
  for (std::size_t i = 0; i < weak.size(); ++i) acc += weak[i].real() * cfg.arm_positions[i];
  return acc;
}

// Regime check, not an assumption: the profile must be wide against the
// weak-value-weighted position scale for the single-emitter picture to hold.
inline bool long_wavelength(const EmissionConfig& cfg) {
  const auto weak = tsvf::arm_weak_values(cfg.tsv);
  double scale = 0.0;
  for (std::size_t i = 0; i < weak.size(); ++i)
    scale += std::abs(weak[i]) * std::abs(cfg.arm_positions[i]);
  return cfg.profile_width() >= 10.0 * scale;
}

struct Window {
  double lo;
  double hi;
};

// Window wide enough for the phantom peak: all arm positions padded by
// max(10 widths, |prediction| + 5 widths).
inline Window search_window(const EmissionConfig& cfg) {
  const double s = cfg.profile_width();
  const double pad = std::max(10.0 * s, std::abs(phantom_prediction(cfg)) + 5.0 * s);
  const auto [lo, hi] =
      std::minmax_element(cfg.arm_positions.begin(), cfg.arm_positions.end());
  return {*lo - pad, *hi + pad};
}

enum class PeakMetric { intensity, amplitude_modulus };

// Global maximizer over the window: coarse scan, ties toward largest x, then
// ternary refinement inside the winning cell down to width * 1e-6. A
// maximizer on the window edge means the window missed the peak.
inline double peak_position(const pointer::GaussianMixture& pattern, Window window,
                            PeakMetric metric = PeakMetric::intensity,
                            std::size_t grid_points = 4096) {
  if (!(window.lo < window.hi) || !std::isfinite(window.lo) || !std::isfinite(window.hi))
    throw RangeError("search window must be a finite nonempty interval");
  if (grid_points < 3) throw RangeError("grid too coarse");
  const auto value = [&](double x) {
    const double a = std::abs(pointer::amplitude(pattern, x));
    return metric == PeakMetric::intensity ? a * a : a;
  };
  const double h = (window.hi - window.lo) / static_cast<double>(grid_points - 1);
  std::size_t best = 0;
  double best_v = value(window.lo);
  for (std::size_t i = 1; i < grid_points; ++i) {
    const double v = value(window.lo + h * static_cast<double>(i));
    if (v >= best_v) {
      best_v = v;
      best = i;
    }
  }
  if (best == 0 || best + 1 == grid_points)
    throw WindowTooSmallError("density maximizer lies on the window boundary");
  double lo = window.lo + h * static_cast<double>(best - 1);
  double hi = window.lo + h * static_cast<double>(best + 1);
  const double tol = pattern.width() * 1e-6;
  while (hi - lo > tol) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (value(m1) <= value(m2))
      lo = m1;
    else
      hi = m2;
  }
  return 0.5 * (lo + hi);
}

// First-order mean momentum of the pattern. Expanding each profile around
// the window center gives g(x) ~ phi(x) exp[x W / (2 s^2)] with
// W = sum_i w_i x_i; the real part of W shifts position, the imaginary part
// is a linear phase, i.e. a momentum shift of Im(W) / (2 s^2).
inline double predicted_mean_p(const EmissionConfig& cfg) {
  const auto weak = tsvf::arm_weak_values(cfg.tsv);
  cplx w_sum{0.0, 0.0};
  for (std::size_t i = 0; i < weak.size(); ++i) w_sum += weak[i] * cfg.arm_positions[i];
  const double s = cfg.profile_width();
  return w_sum.imag() / (2.0 * s * s);
}

struct MomentumReport {
  double mean_p;
  double predicted_mean_p;
};

// Exact mean momentum (moments of the Fourier transform) next to the
// first-order prediction above.
inline MomentumReport momentum_report(const EmissionConfig& cfg) {
  const auto pattern = emission_pattern(cfg);
  return {pointer::moments(pointer::fourier(pattern)).mean_q, predicted_mean_p(cfg)};
}

struct PatternReport {
  double peak_x;
  double mean_x;
  double phantom_prediction;
  double mean_p;
  double predicted_mean_p;
  bool long_wavelength;
};

inline PatternReport pattern_report(const EmissionConfig& cfg) {
  const auto pattern = emission_pattern(cfg);
  const auto mom = momentum_report(cfg);
  PatternReport r;
  r.peak_x = peak_position(pattern, search_window(cfg));
  r.mean_x = pointer::moments(pattern).mean_q;
  r.phantom_prediction = phantom_prediction(cfg);
  r.mean_p = mom.mean_p;
  r.predicted_mean_p = mom.predicted_mean_p;
  r.long_wavelength = long_wavelength(cfg);
  return r;
}

struct SweepRow {
  std::size_t n_arms;
  double phantom_prediction;
  double postselect_probability;
};

// One row per config: pre-selection amplitudes over N arms at the given
// positions, post-selection uniform over the arms (the N-arm analogue of the
// two-arm balanced readout). Demonstrates that spreading the atom over more
// positions buys phantom distance at the cost of post-selection probability.
inline std::vector<SweepRow> n_arm_sweep(const std::vector<std::vector<cplx>>& alphas,
                                         const std::vector<std::vector<double>>& positions) {
  if (alphas.size() != positions.size())
    throw DimMismatchError("one position vector per amplitude vector required");
  std::vector<SweepRow> rows;
  rows.reserve(alphas.size());
  for (std::size_t r = 0; r < alphas.size(); ++r) {
    const std::size_t n = alphas[r].size();
    if (positions[r].size() != n)
      throw DimMismatchError("row amplitude/position length mismatch");
    qcore::PureState pre(alphas[r]);
    qcore::PureState post(std::vector<cplx>(n, cplx{1.0, 0.0}));
    tsvf::TwoStateVector tsv(std::move(pre), std::move(post));
    const auto weak = tsvf::arm_weak_values(tsv);
    double phantom = 0.0;
    for (std::size_t i = 0; i < n; ++i) phantom += weak[i].real() * positions[r][i];
    rows.push_back({n, phantom, tsvf::postselect_probability(tsv)});
  }
  return rows;
}

// Monotone demonstration family for the sweep: equally spaced positions
// x_i = (i - (N-1)/2) d and arm weak values (kappa/d) x_i + 1/N, realized by
// pre-selecting amplitudes proportional to those weak values. The phantom
// grows like N(N^2-1) while the success probability falls like its inverse.
inline std::pair<std::vector<cplx>, std::vector<double>> ramp_family(std::size_t n, double d,
                                                                     double kappa = 3.0) {
  if (n == 0) throw RangeError("need at least one arm");
  if (!(d > 0.0) || !std::isfinite(d)) throw RangeError("spacing d must be positive");
  std::vector<cplx> amps(n);
  std::vector<double> pos(n);
  for (std::size_t i = 0; i < n; ++i) {
    pos[i] = (static_cast<double>(i) - 0.5 * static_cast<double>(n - 1)) * d;
    amps[i] = cplx{(kappa / d) * pos[i] + 1.0 / static_cast<double>(n), 0.0};
  }
  return {std::move(amps), std::move(pos)};
}

}  // namespace spontaneous
}  // namespace wvsim
