#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include "wvsim/errors.hpp"
#include "wvsim/qcore.hpp"
#include "wvsim/rng.hpp"

namespace wvsim {
namespace pointer {

// One Gaussian amplitude factor
//   (2 pi width^2)^{-1/4} exp[-(q - center)^2 / (4 width^2)] exp[i freq q].
// width is the standard deviation of the PROBABILITY density |.|^2, so the
// amplitude carries 4 width^2 in the exponent. freq is a linear phase; it is
// what a momentum-space center turns into under the Fourier transform, and
// carrying it keeps the mixture class closed under fourier().
struct Gaussian {
  double center = 0.0;
  double width = 1.0;
  double freq = 0.0;
};

struct Term {
  cplx coeff{1.0, 0.0};
  Gaussian g;
};

namespace detail {

inline void check_gaussian(const Gaussian& g) {
  if (!(g.width > 0.0) || !std::isfinite(g.width))
    throw RangeError("gaussian width must be positive and finite");
  if (!std::isfinite(g.center) || !std::isfinite(g.freq))
    throw RangeError("gaussian center and freq must be finite");
}

inline void check_equal_width(const Gaussian& a, const Gaussian& b) {
  if (a.width != b.width)
    throw WidthMismatchError("mixture terms must share one width");
}

}  // namespace detail

// <bra|ket> for two unit-norm Gaussian amplitudes of equal width
// (coefficients not included). With m = (mu_bra + mu_ket)/2 and
// df = freq_ket - freq_bra this is
//   exp[-(mu_bra - mu_ket)^2 / (8 s^2)] exp[-s^2 df^2 / 2] exp[i df m].
inline cplx overlap_kernel(const Gaussian& bra, const Gaussian& ket) {
  detail::check_equal_width(bra, ket);
  const double s2 = bra.width * bra.width;
  const double dmu = bra.center - ket.center;
  const double df = ket.freq - bra.freq;
  const double m = 0.5 * (bra.center + ket.center);
  const double mag = std::exp(-dmu * dmu / (8.0 * s2) - 0.5 * s2 * df * df);
  return mag * std::polar(1.0, df * m);
}

// <bra| q |ket> = overlap_kernel * z with z = m + i s^2 df.
inline cplx q_kernel(const Gaussian& bra, const Gaussian& ket) {
  const cplx ovl = overlap_kernel(bra, ket);
  const double s2 = bra.width * bra.width;
  const double df = ket.freq - bra.freq;
  const cplx z{0.5 * (bra.center + ket.center), s2 * df};
  return ovl * z;
}

// <bra| q^2 |ket> = overlap_kernel * (z^2 + s^2).
inline cplx q2_kernel(const Gaussian& bra, const Gaussian& ket) {
  const cplx ovl = overlap_kernel(bra, ket);
  const double s2 = bra.width * bra.width;
  const double df = ket.freq - bra.freq;
  const cplx z{0.5 * (bra.center + ket.center), s2 * df};
  return ovl * (z * z + s2);
}

// Complex-weighted sum of equal-width Gaussians. Immutable after
// construction; the constructor enforces non-emptiness, one shared width,
// and a nonvanishing squared norm.
class GaussianMixture {
 public:
  explicit GaussianMixture(std::vector<Term> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw ZeroNormError("mixture needs at least one term");
    for (const Term& t : terms_) {
      detail::check_gaussian(t.g);
      if (!is_finite(t.coeff)) throw RangeError("non-finite mixture coefficient");
      detail::check_equal_width(terms_.front().g, t.g);
    }
    double n2 = 0.0;
    for (const Term& a : terms_)
      for (const Term& b : terms_)
        n2 += (std::conj(a.coeff) * b.coeff * overlap_kernel(a.g, b.g)).real();
    if (!(n2 > 1e-300)) throw ZeroNormError("mixture has vanishing norm");
    norm2_ = n2;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  double width() const { return terms_.front().g.width; }
  double norm2() const { return norm2_; }

 private:
  std::vector<Term> terms_;
  double norm2_;
};

// Wavefunction value at q (not normalized).
inline cplx amplitude(const GaussianMixture& m, double q) {
  cplx acc{0.0, 0.0};
  for (const Term& t : m.terms()) {
    const double s2 = t.g.width * t.g.width;
    const double d = q - t.g.center;
    const double mag =
        std::pow(2.0 * std::numbers::pi * s2, -0.25) * std::exp(-d * d / (4.0 * s2));
    acc += t.coeff * mag * std::polar(1.0, t.g.freq * q);
  }
  return acc;
}

// <a|b>, coefficients included. Both mixtures must share one width.
inline cplx overlap(const GaussianMixture& a, const GaussianMixture& b) {
  detail::check_equal_width(a.terms().front().g, b.terms().front().g);
  cplx acc{0.0, 0.0};
  for (const Term& ta : a.terms())
    for (const Term& tb : b.terms())
      acc += std::conj(ta.coeff) * tb.coeff * overlap_kernel(ta.g, tb.g);
  return acc;
}

struct Moments {
  double norm2;
  double mean_q;
  double mean_q2;
};

// Exact moments of the normalized density |m(q)|^2 / norm^2.
inline Moments moments(const GaussianMixture& m) {
  double n2 = 0.0, q1 = 0.0, q2 = 0.0;
  for (const Term& a : m.terms())
    for (const Term& b : m.terms()) {
      const cplx w = std::conj(a.coeff) * b.coeff;
      n2 += (w * overlap_kernel(a.g, b.g)).real();
      q1 += (w * q_kernel(a.g, b.g)).real();
      q2 += (w * q2_kernel(a.g, b.g)).real();
    }
  if (!(n2 > 1e-300)) throw ZeroNormError("mixture has vanishing norm");
  return {n2, q1 / n2, q2 / n2};
}

inline double norm2(const GaussianMixture& m) { return m.norm2(); }

inline GaussianMixture scaled(const GaussianMixture& m, cplx s) {
  std::vector<Term> out = m.terms();
  for (Term& t : out) t.coeff *= s;
  return GaussianMixture(std::move(out));
}

inline GaussianMixture normalized(const GaussianMixture& m) {
  return scaled(m, cplx{1.0 / std::sqrt(m.norm2()), 0.0});
}

// Normalized probability density at q.
inline double density(const GaussianMixture& m, double q) {
  return std::norm(amplitude(m, q)) / m.norm2();
}

// Unit-width, unit-norm quadrature pointer of an undisturbed beam at q0.
inline GaussianMixture coherent_pointer(double q0) {
  if (!(q0 > 0.0) || !std::isfinite(q0))
    throw RangeError("pointer center q0 must be positive and finite");
  return GaussianMixture({Term{cplx{1.0, 0.0}, Gaussian{q0, 1.0, 0.0}}});
}

// Pointer after one stimulated emission into the beam: the center moves out
// to q0 + 1/(2 q0), which raises mean(q^2) by exactly 1 + 1/(4 q0^2), i.e.
// one extra photon up to the small bookkeeping correction.
inline GaussianMixture emitted_pointer(double q0) {
  if (!(q0 > 0.0) || !std::isfinite(q0))
    throw RangeError("pointer center q0 must be positive and finite");
  return GaussianMixture({Term{cplx{1.0, 0.0}, Gaussian{q0 + 0.5 / q0, 1.0, 0.0}}});
}

// Photon number carried by the pointer relative to an undisturbed beam at q0,
// reading n = q^2 in scaled units with the vacuum variance subtracted:
// mean_q2(m) - 1 - q0^2. Exactly 0 for coherent_pointer(q0).
inline double photon_excess(const GaussianMixture& m, double q0) {
  return moments(m).mean_q2 - 1.0 - q0 * q0;
}

// Momentum representation. Term-wise exact map: a position center becomes a
// linear phase, a linear phase becomes a momentum center, the width turns
// reciprocal. Applying it twice recovers the original mixture mirrored
// through the origin.
inline GaussianMixture fourier(const GaussianMixture& m) {
  std::vector<Term> out;
  out.reserve(m.size());
  for (const Term& t : m.terms()) {
    Term ft;
    ft.coeff = t.coeff * std::polar(1.0, t.g.freq * t.g.center);
    ft.g.center = t.g.freq;
    ft.g.width = 0.5 / t.g.width;
    ft.g.freq = -t.g.center;
    out.push_back(ft);
  }
  return GaussianMixture(std::move(out));
}

// Draws from density(m, .) by rejection from the positive envelope
// (sum_k |c_k| G_k)^2, which dominates |m(q)|^2 pointwise. The envelope is
// itself a positive mixture of normal densities over term pairs, so
// proposals are exact. Tables are read-only after construction; one Sampler
// can serve many threads as long as each brings its own generator.
class Sampler {
 public:
  explicit Sampler(GaussianMixture m, std::size_t max_rejects = 100000)
      : mix_(std::move(m)), max_rejects_(max_rejects) {
    const auto& ts = mix_.terms();
    const double s2 = mix_.width() * mix_.width();
    double mass = 0.0;
    for (const Term& a : ts)
      for (const Term& b : ts) {
        const double dmu = a.g.center - b.g.center;
        const double w =
            std::abs(a.coeff) * std::abs(b.coeff) * std::exp(-dmu * dmu / (8.0 * s2));
        mass += w;
        cum_.push_back(mass);
        prop_center_.push_back(0.5 * (a.g.center + b.g.center));
      }
    env_mass_ = mass;
  }

  // Expected acceptance rate: norm^2 over envelope mass.
  double acceptance_estimate() const { return mix_.norm2() / env_mass_; }

  double operator()(rng::Xoshiro256pp& gen) const {
    const double sigma = mix_.width();
    for (std::size_t tries = 0; tries < max_rejects_; ++tries) {
      const double u = gen.uniform01() * env_mass_;
      std::size_t k = 0;
      while (k + 1 < cum_.size() && cum_[k] < u) ++k;
      const double q = prop_center_[k] + sigma * gen.normal();
      const double env = envelope(q);
      if (env <= 0.0) continue;
      if (gen.uniform01() * env <= std::norm(amplitude(mix_, q))) return q;
    }
    throw EnvelopeFailureError("rejection sampling stalled: expected acceptance " +
                               std::to_string(acceptance_estimate()));
  }

  const GaussianMixture& mixture() const { return mix_; }

 private:
  double envelope(double q) const {
    double acc = 0.0;
    for (const Term& t : mix_.terms()) {
      const double s2 = t.g.width * t.g.width;
      const double d = q - t.g.center;
      acc += std::abs(t.coeff) *
             std::pow(2.0 * std::numbers::pi * s2, -0.25) * std::exp(-d * d / (4.0 * s2));
    }
    return acc * acc;
  }

  GaussianMixture mix_;
  std::size_t max_rejects_;
  std::vector<double> cum_;
  std::vector<double> prop_center_;
  double env_mass_ = 0.0;
};

inline double sample(const GaussianMixture& m, rng::Xoshiro256pp& gen,
                     std::size_t max_rejects = 100000) {
  return Sampler(m, max_rejects)(gen);
}

// Inverse-CDF draw from a trapezoid grid over +-12 widths around the extreme
// centers. Fallback for mixtures whose cancellation makes rejection stall.
inline double sample_grid(const GaussianMixture& m, rng::Xoshiro256pp& gen,
                          std::size_t points = 4096) {
  double lo = m.terms().front().g.center, hi = lo;
  for (const Term& t : m.terms()) {
    lo = std::min(lo, t.g.center);
    hi = std::max(hi, t.g.center);
  }
  lo -= 12.0 * m.width();
  hi += 12.0 * m.width();
  const double dq = (hi - lo) / static_cast<double>(points - 1);
  std::vector<double> cdf(points, 0.0);
  double prev = density(m, lo);
  for (std::size_t i = 1; i < points; ++i) {
    const double cur = density(m, lo + dq * static_cast<double>(i));
    cdf[i] = cdf[i - 1] + 0.5 * (prev + cur) * dq;
    prev = cur;
  }
  const double total = cdf.back();
  if (!(total > 0.0)) throw ZeroNormError("grid CDF has no mass");
  const double u = gen.uniform01() * total;
  std::size_t k = 1;
  while (k + 1 < points && cdf[k] < u) ++k;
  const double seg = cdf[k] - cdf[k - 1];
  const double frac = seg > 0.0 ? (u - cdf[k - 1]) / seg : 0.5;
  return lo + dq * (static_cast<double>(k - 1) + frac);
}

}  // namespace pointer
}  // namespace wvsim
