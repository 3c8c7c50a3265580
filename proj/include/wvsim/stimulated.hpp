#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "wvsim/errors.hpp"
#include "wvsim/pointer.hpp"
#include "wvsim/tsvf.hpp"

namespace wvsim {
namespace stimulated {

// Interferometer with one laser pointer per arm. The atom crossing arm j
// emits into that arm's beam with certainty, moving the pointer center from
// q0 to q0 + 1/(2 q0) (one photon in scaled quadrature units). With
// excitation = true the atom starts in the ground state and absorbs instead,
// flipping the shift sign.
struct StimulatedConfig {
  tsvf::TwoStateVector tsv;
  std::vector<double> q0;
  bool excitation = false;

  StimulatedConfig(tsvf::TwoStateVector t, std::vector<double> q, bool exc = false)
      : tsv(std::move(t)), q0(std::move(q)), excitation(exc) {
    if (q0.size() != tsv.dim())
      throw DimMismatchError("one pointer per arm required");
    for (double v : q0)
      if (!(v > 0.0) || !std::isfinite(v))
        throw RangeError("pointer center q0 must be positive and finite");
  }

  StimulatedConfig(tsvf::TwoStateVector t, double q, bool exc = false)
      : tsv(std::move(t)), q0(tsv.dim(), q), excitation(exc) {
    if (!(q > 0.0) || !std::isfinite(q))
      throw RangeError("pointer center q0 must be positive and finite");
  }

  double shift(std::size_t arm) const {
    return (excitation ? -0.5 : 0.5) / q0[arm];
  }
};

// One term of the post-selected joint state: the atom took arm `arm`, the
// photon part collapsed to amplitude <post|P_arm|pre>, and every pointer
// keeps its center except the struck arm's.
struct JointBranch {
  std::size_t arm;
  cplx amplitude;
  std::vector<double> pointer_centers;
};

// The branch amplitudes sum to <post|pre>: the projectors sum to identity.
inline std::vector<JointBranch> build_branches(const StimulatedConfig& cfg) {
  const std::size_t n = cfg.tsv.dim();
  std::vector<JointBranch> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    JointBranch b;
    b.arm = j;
    b.amplitude = std::conj(cfg.tsv.post().amp(j)) * cfg.tsv.pre().amp(j);
    b.pointer_centers = cfg.q0;
    b.pointer_centers[j] += cfg.shift(j);
    out.push_back(std::move(b));
  }
  return out;
}

// Product of single-pointer overlaps between two branches, over every arm
// except `skip` (pass dim() or more to include all arms). The all-arm product
// with j != k is the which-path distinguishability left in the beams.
inline cplx branch_overlap(const StimulatedConfig& cfg, const JointBranch& bra,
                           const JointBranch& ket, std::size_t skip) {
  cplx acc{1.0, 0.0};
  for (std::size_t b = 0; b < cfg.tsv.dim(); ++b) {
    if (b == skip) continue;
    acc *= pointer::overlap_kernel(pointer::Gaussian{bra.pointer_centers[b], 1.0, 0.0},
                                   pointer::Gaussian{ket.pointer_centers[b], 1.0, 0.0});
  }
  return acc;
}

// Squared norm of the post-selected joint state. Tends to |<post|pre>|^2 as
// all q0 -> infinity, where the pointers stop recording which-path
// information.
inline double success_probability_exact(const StimulatedConfig& cfg) {
  const auto branches = build_branches(cfg);
  double n2 = 0.0;
  for (const JointBranch& bj : branches)
    for (const JointBranch& bk : branches)
      n2 += (std::conj(bj.amplitude) * bk.amplitude *
             branch_overlap(cfg, bj, bk, cfg.tsv.dim()))
                .real();
  return n2;
}

struct ExactMoments {
  double mean_q;
  double mean_q2;
  double excess;
};

// Moments of the post-selected reduced state of one arm's pointer, with the
// other pointers traced out exactly. Every pair of branches contributes a
// cross term damped by the other arms' overlap product; that damping is the
// decoherence the single-pointer description below leaves out.
inline ExactMoments exact_marginal_moments(const StimulatedConfig& cfg, std::size_t arm) {
  if (arm >= cfg.tsv.dim()) throw IndexOutOfRangeError("arm index out of range");
  const auto branches = build_branches(cfg);
  double n2 = 0.0, q1 = 0.0, q2 = 0.0;
  for (const JointBranch& bj : branches)
    for (const JointBranch& bk : branches) {
      const pointer::Gaussian ga{bj.pointer_centers[arm], 1.0, 0.0};
      const pointer::Gaussian gb{bk.pointer_centers[arm], 1.0, 0.0};
      const cplx w = std::conj(bj.amplitude) * bk.amplitude * branch_overlap(cfg, bj, bk, arm);
      n2 += (w * pointer::overlap_kernel(ga, gb)).real();
      q1 += (w * pointer::q_kernel(ga, gb)).real();
      q2 += (w * pointer::q2_kernel(ga, gb)).real();
    }
  if (!(n2 > 1e-300)) throw ZeroNormError("post-selected state has vanishing norm");
  const double mean_q = q1 / n2;
  const double mean_q2 = q2 / n2;
  return {mean_q, mean_q2, mean_q2 - 1.0 - cfg.q0[arm] * cfg.q0[arm]};
}

// Single-pointer description of one arm: weak-value-weighted mixture of the
// shifted and unshifted pointer, w * G(q0 + shift) + (1 - w) * G(q0).
// Left unnormalized. This treats the arm's pointer as the only meter and is
// exact only to first order in 1/q0; exact_marginal_moments is the reference.
inline pointer::GaussianMixture paper_conditional(const StimulatedConfig& cfg,
                                                  std::size_t arm) {
  if (arm >= cfg.tsv.dim()) throw IndexOutOfRangeError("arm index out of range");
  const cplx w = tsvf::arm_weak_values(cfg.tsv)[arm];
  const double q0 = cfg.q0[arm];
  return pointer::GaussianMixture(
      {pointer::Term{w, pointer::Gaussian{q0 + cfg.shift(arm), 1.0, 0.0}},
       pointer::Term{cplx{1.0, 0.0} - w, pointer::Gaussian{q0, 1.0, 0.0}}});
}

struct ConditionalReport {
  std::size_t arm;
  double excess_exact;
  double excess_weak;
  double excess_paper_marginal;
  double success_probability_exact;
  double success_probability_naive;
};

// Side-by-side photon excess per arm: exact reduced-state value, the plain
// weak value, and the single-pointer mixture value.
inline std::vector<ConditionalReport> report(const StimulatedConfig& cfg) {
  const auto weak = tsvf::arm_weak_values(cfg.tsv);
  const double p_exact = success_probability_exact(cfg);
  const double p_naive = tsvf::postselect_probability(cfg.tsv);
  std::vector<ConditionalReport> out;
  out.reserve(cfg.tsv.dim());
  for (std::size_t a = 0; a < cfg.tsv.dim(); ++a) {
    ConditionalReport r;
    r.arm = a;
    r.excess_exact = exact_marginal_moments(cfg, a).excess;
    r.excess_weak = weak[a].real();
    r.excess_paper_marginal = pointer::photon_excess(paper_conditional(cfg, a), cfg.q0[a]);
    r.success_probability_exact = p_exact;
    r.success_probability_naive = p_naive;
    out.push_back(r);
  }
  return out;
}

}  // namespace stimulated
}  // namespace wvsim
