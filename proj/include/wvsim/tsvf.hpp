#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "wvsim/errors.hpp"
#include "wvsim/qcore.hpp"

namespace wvsim {
namespace tsvf {

using qcore::Operator;
using qcore::PureState;

// A pre-selected state together with a post-selected one over the same arms.
// The overlap <post|pre> is the denominator of every weak value, so a pair
// whose overlap falls below the floor is rejected at construction: conditional
// quantities are not meaningful at an (almost) orthogonal selection.
class TwoStateVector {
 public:
  TwoStateVector(PureState pre, PureState post, double orthogonality_floor = 1e-10)
      : pre_(std::move(pre)), post_(std::move(post)) {
    if (pre_.dim() != post_.dim())
      throw DimMismatchError("pre- and post-selection dimensions differ");
    overlap_ = qcore::inner(post_, pre_);
    if (std::abs(overlap_) < orthogonality_floor)
      throw OrthogonalSelectionError("pre- and post-selection are (nearly) orthogonal");
  }

  const PureState& pre() const { return pre_; }
  const PureState& post() const { return post_; }
  std::size_t dim() const { return pre_.dim(); }

  // <post|pre>
  cplx overlap() const { return overlap_; }

 private:
  PureState pre_;
  PureState post_;
  cplx overlap_;
};

// <post|A|pre> / <post|pre>. Complex in general; the real part shifts a
// weakly coupled pointer's position, the imaginary part its momentum.
inline cplx weak_value(const TwoStateVector& tsv, const Operator& a) {
  if (a.dim() != tsv.dim()) throw DimMismatchError("operator/selection dimension mismatch");
  return qcore::dot(tsv.post().amps(), qcore::apply(a, tsv.pre())) / tsv.overlap();
}

// Weak value of each arm projector. These always sum to exactly 1 in exact
// arithmetic since the projectors sum to the identity.
inline std::vector<cplx> arm_weak_values(const TwoStateVector& tsv) {
  std::vector<cplx> out(tsv.dim());
  for (std::size_t i = 0; i < tsv.dim(); ++i)
    out[i] = std::conj(tsv.post().amp(i)) * tsv.pre().amp(i) / tsv.overlap();
  return out;
}

// |<post|pre>|^2: the probability that the post-selection succeeds when the
// arms are measured projectively and nothing else has disturbed the state.
inline double postselect_probability(const TwoStateVector& tsv) {
  return std::norm(tsv.overlap());
}

// Two-arm preparation family over arms (R, L): normalized alpha|R> - beta|L>
// with the relative minus sign built in. (4, 3) gives the canonical
// (0.8, -0.6) preparation.
inline PureState alpha_beta_preselection(cplx alpha, cplx beta) {
  return PureState({alpha, -beta});
}

// Balanced readout paired with the alpha/beta preparation: post = (1,1)/sqrt2.
// The projector weak values come out alpha/(alpha-beta) and -beta/(alpha-beta),
// so whenever alpha = beta + 1 they are exactly (alpha, -beta) and can be
// dialed to arbitrarily large values at the cost of a small overlap.
// Complex alpha, beta are allowed; alpha = beta throws (orthogonal selection).
inline TwoStateVector alpha_beta_tsv(cplx alpha, cplx beta,
                                     double orthogonality_floor = 1e-10) {
  PureState post({cplx{1.0, 0.0}, cplx{1.0, 0.0}});
  return TwoStateVector(alpha_beta_preselection(alpha, beta), std::move(post),
                        orthogonality_floor);
}

// True when the counting interpretation "alpha extra photons right, beta
// missing left" applies literally: alpha and beta real with alpha = beta + 1.
inline bool alpha_beta_rule_applies(cplx alpha, cplx beta, double tol = 1e-12) {
  return std::abs(alpha.imag()) <= tol && std::abs(beta.imag()) <= tol &&
         std::abs(alpha.real() - beta.real() - 1.0) <= tol;
}

// Closed form for the arm weak values of alpha_beta_selection, usable without
// building the states.
inline std::pair<cplx, cplx> alpha_beta_weak_values(cplx alpha, cplx beta) {
  const cplx d = alpha - beta;
  if (std::abs(d) == 0.0)
    throw OrthogonalSelectionError("alpha = beta gives an orthogonal selection");
  return {alpha / d, -beta / d};
}

}  // namespace tsvf
}  // namespace wvsim
