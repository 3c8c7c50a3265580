#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "wvsim/errors.hpp"
#include "wvsim/rng.hpp"
#include "wvsim/stimulated.hpp"

namespace wvsim {
namespace ensemble {

struct TrialOutcome {
  bool accepted = false;
  std::vector<double> q_samples;  // one per arm, filled only when accepted
};

struct EnsembleStats {
  std::uint64_t n_trials = 0;
  std::uint64_t n_accepted = 0;
  std::vector<double> mean_excess;  // per arm
  std::vector<double> std_err;      // per arm
  double acceptance_rate = 0.0;
  std::uint64_t seed = 0;
};

// Joint rejection sampler over the post-selected pointer state
// sum_j A_j prod_b G(q_b; center_jb). The envelope replaces A_j by |A_j|,
// which dominates pointwise; a proposal picks a branch pair (j, k) with
// weight |A_j||A_k| prod_b exp(-dmu_b^2/8) and then draws each arm from the
// midpoint normal. Tables are immutable after construction, so one sampler
// serves any number of worker threads, each with its own generator.
class JointSampler {
 public:
  explicit JointSampler(const stimulated::StimulatedConfig& cfg,
                        std::size_t max_rejects = 100000)
      : n_arms_(cfg.tsv.dim()),
        branches_(stimulated::build_branches(cfg)),
        max_rejects_(max_rejects) {
    double mass = 0.0;
    for (const auto& bj : branches_)
      for (const auto& bk : branches_) {
        double w = std::abs(bj.amplitude) * std::abs(bk.amplitude);
        std::vector<double> mid(n_arms_);
        for (std::size_t b = 0; b < n_arms_; ++b) {
          const double dmu = bj.pointer_centers[b] - bk.pointer_centers[b];
          w *= std::exp(-dmu * dmu / 8.0);
          mid[b] = 0.5 * (bj.pointer_centers[b] + bk.pointer_centers[b]);
        }
        mass += w;
        cum_.push_back(mass);
        prop_centers_.push_back(std::move(mid));
      }
    env_mass_ = mass;
    norm2_ = stimulated::success_probability_exact(cfg);
  }

  double acceptance_estimate() const { return norm2_ / env_mass_; }

  void operator()(rng::Xoshiro256pp& gen, std::vector<double>& q_out) const {
    q_out.resize(n_arms_);
    for (std::size_t tries = 0; tries < max_rejects_; ++tries) {
      const double u = gen.uniform01() * env_mass_;
      std::size_t k = 0;
      while (k + 1 < cum_.size() && cum_[k] < u) ++k;
      for (std::size_t b = 0; b < n_arms_; ++b)
        q_out[b] = prop_centers_[k][b] + gen.normal();
      const double env = envelope(q_out);
      if (env <= 0.0) continue;
      if (gen.uniform01() * env <= std::norm(amplitude(q_out))) return;
    }
    throw EnvelopeFailureError("joint rejection sampling stalled: expected acceptance " +
                               std::to_string(acceptance_estimate()));
  }

 private:
  // Unit-width Gaussian amplitude at offset d from its center.
  static double g1(double d) {
    static const double amp0 = std::pow(2.0 * std::numbers::pi, -0.25);
    return amp0 * std::exp(-d * d / 4.0);
  }

  cplx amplitude(const std::vector<double>& q) const {
    cplx acc{0.0, 0.0};
    for (const auto& b : branches_) {
      double prod = 1.0;
      for (std::size_t a = 0; a < n_arms_; ++a) prod *= g1(q[a] - b.pointer_centers[a]);
      acc += b.amplitude * prod;
    }
    return acc;
  }

  double envelope(const std::vector<double>& q) const {
    double acc = 0.0;
    for (const auto& b : branches_) {
      double prod = std::abs(b.amplitude);
      for (std::size_t a = 0; a < n_arms_; ++a) prod *= g1(q[a] - b.pointer_centers[a]);
      acc += prod;
    }
    return acc * acc;
  }

  std::size_t n_arms_;
  std::vector<stimulated::JointBranch> branches_;
  std::size_t max_rejects_;
  std::vector<double> cum_;
  std::vector<std::vector<double>> prop_centers_;
  double env_mass_ = 0.0;
  double norm2_ = 0.0;
};

// One pre-computed experiment, reusable across trials. Post-selection is a
// Bernoulli draw at the exact success probability; the pointer readout on
// success comes from the exact conditional joint density. Each trial
// consumes its own generator, so outcomes are a pure function of
// (config, master seed, trial index).
class TrialEngine {
 public:
  explicit TrialEngine(stimulated::StimulatedConfig cfg)
      : cfg_(std::move(cfg)), sampler_(cfg_), p_(stimulated::success_probability_exact(cfg_)) {}

  const stimulated::StimulatedConfig& config() const { return cfg_; }
  double success_probability() const { return p_; }

  TrialOutcome run(rng::Xoshiro256pp& gen) const {
    TrialOutcome out;
    out.accepted = gen.uniform01() < p_;
    if (out.accepted) sampler_(gen, out.q_samples);
    return out;
  }

 private:
  stimulated::StimulatedConfig cfg_;
  JointSampler sampler_;
  double p_;
};

inline TrialOutcome run_trial(const stimulated::StimulatedConfig& cfg,
                              rng::Xoshiro256pp& gen) {
  return TrialEngine(cfg).run(gen);
}

namespace detail {

inline std::size_t worker_count(std::uint64_t n_trials) {
  std::size_t n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* cap = std::getenv("WVSIM_THREADS")) {
    const long v = std::atol(cap);
    if (v >= 1) n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
  }
  return std::max<std::size_t>(1, std::min<std::size_t>(n, n_trials));
}

}  // namespace detail

// Runs n_trials independent trials and estimates the per-arm photon excess
// q^2 - 1 - q0^2 over the accepted ones. Trials are split into contiguous
// chunks over workers, each trial writing only its own slot in preallocated
// buffers; the final reduction walks trials in index order, so the result is
// bit-identical for any worker count. workers = 0 means all available
// (capped by WVSIM_THREADS); a nonzero value pins the count explicitly.
inline EnsembleStats run_ensemble(const stimulated::StimulatedConfig& cfg,
                                  std::uint64_t n_trials, std::uint64_t seed,
                                  std::size_t workers = 0) {
  if (n_trials < 1) throw RangeError("ensemble needs at least one trial");
  const TrialEngine engine(cfg);
  const std::size_t n_arms = cfg.tsv.dim();

  std::vector<std::uint8_t> accepted(n_trials, 0);
  std::vector<double> excess(n_trials * n_arms, 0.0);

  const auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      auto gen = rng::trial_rng(seed, i);
      TrialOutcome t = engine.run(gen);
      if (!t.accepted) continue;
      accepted[i] = 1;
      for (std::size_t a = 0; a < n_arms; ++a) {
        const double qa = t.q_samples[a];
        excess[i * n_arms + a] = qa * qa - 1.0 - cfg.q0[a] * cfg.q0[a];
      }
    }
  };

  if (workers == 0) workers = detail::worker_count(n_trials);
  workers = std::max<std::size_t>(1, std::min<std::size_t>(workers, n_trials));
  if (workers == 1) {
    worker(0, n_trials);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (n_trials + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::uint64_t lo = w * chunk;
      const std::uint64_t hi = std::min<std::uint64_t>(n_trials, lo + chunk);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  std::uint64_t n_acc = 0;
  std::vector<double> sum(n_arms, 0.0);
  for (std::uint64_t i = 0; i < n_trials; ++i) {
    if (!accepted[i]) continue;
    ++n_acc;
    for (std::size_t a = 0; a < n_arms; ++a) sum[a] += excess[i * n_arms + a];
  }
  if (n_acc == 0) throw NoAcceptedTrialsError("no trial survived post-selection");

  EnsembleStats stats;
  stats.n_trials = n_trials;
  stats.n_accepted = n_acc;
  stats.seed = seed;
  stats.acceptance_rate = static_cast<double>(n_acc) / static_cast<double>(n_trials);
  stats.mean_excess.resize(n_arms);
  stats.std_err.assign(n_arms, 0.0);
  for (std::size_t a = 0; a < n_arms; ++a)
    stats.mean_excess[a] = sum[a] / static_cast<double>(n_acc);
  if (n_acc >= 2) {
    std::vector<double> ss(n_arms, 0.0);
    for (std::uint64_t i = 0; i < n_trials; ++i) {
      if (!accepted[i]) continue;
      for (std::size_t a = 0; a < n_arms; ++a) {
        const double d = excess[i * n_arms + a] - stats.mean_excess[a];
        ss[a] += d * d;
      }
    }
    for (std::size_t a = 0; a < n_arms; ++a)
      stats.std_err[a] =
          std::sqrt(ss[a] / static_cast<double>(n_acc - 1) / static_cast<double>(n_acc));
  }
  return stats;
}

struct VarianceRow {
  std::size_t arm;
  double signal;        // exact conditional excess, the quantity being estimated
  double per_trial_sd;  // sample standard deviation of one accepted trial's estimate
  double std_err;       // at this ensemble size
  double acceptance_rate;
};

// Quantifies why the anomalous excess needs a large ensemble: one trial's
// estimator is noisy on the scale of q0, so the signal sits far below the
// per-trial noise until ~(q0/signal)^2 accepted trials have been averaged.
inline std::vector<VarianceRow> estimator_variance_report(
    const stimulated::StimulatedConfig& cfg, std::uint64_t n_trials,
    std::uint64_t seed = 42) {
  const EnsembleStats stats = run_ensemble(cfg, n_trials, seed);
  std::vector<VarianceRow> rows;
  rows.reserve(cfg.tsv.dim());
  for (std::size_t a = 0; a < cfg.tsv.dim(); ++a) {
    VarianceRow r;
    r.arm = a;
    r.signal = stimulated::exact_marginal_moments(cfg, a).excess;
    r.std_err = stats.std_err[a];
    r.per_trial_sd = stats.std_err[a] * std::sqrt(static_cast<double>(stats.n_accepted));
    r.acceptance_rate = stats.acceptance_rate;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace ensemble
}  // namespace wvsim
