#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "wvsim/errors.hpp"

namespace wvsim {

using cplx = std::complex<double>;

inline bool is_finite(cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Minimal dense complex linear algebra over small Hilbert spaces (interferometer
// arms). Dimensions stay tiny, so everything is a plain vector/matrix with no
// sparsity or expression machinery. All values are immutable after construction.
namespace qcore {

// Normalized state vector over N arms. Construction normalizes and keeps the
// raw input norm around for diagnostics. Global phase is preserved as given.
class PureState {
 public:
  explicit PureState(std::vector<cplx> amps) : amps_(std::move(amps)) {
    if (amps_.empty()) throw ZeroVectorError("state needs at least one amplitude");
    double n2 = 0.0;
    for (const cplx& a : amps_) {
      if (!is_finite(a)) throw RangeError("non-finite amplitude in state");
      n2 += std::norm(a);
    }
    if (n2 <= 1e-300) throw ZeroVectorError("all state amplitudes are zero");
    input_norm_ = std::sqrt(n2);
    for (cplx& a : amps_) a /= input_norm_;
  }

  std::size_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amps() const { return amps_; }
  cplx amp(std::size_t i) const { return amps_.at(i); }

  // Norm of the vector as supplied, before normalization.
  double input_norm() const { return input_norm_; }

 private:
  std::vector<cplx> amps_;
  double input_norm_ = 1.0;
};

inline PureState make_state(std::vector<cplx> amps) { return PureState(std::move(amps)); }

// <bra|ket>, conjugate-linear in the first argument.
inline cplx inner(const PureState& bra, const PureState& ket) {
  if (bra.dim() != ket.dim())
    throw DimMismatchError("inner product between states of different dimension");
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < bra.dim(); ++i) acc += std::conj(bra.amp(i)) * ket.amp(i);
  return acc;
}

inline cplx dot(const std::vector<cplx>& bra, const std::vector<cplx>& ket) {
  if (bra.size() != ket.size())
    throw DimMismatchError("dot product between vectors of different dimension");
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < bra.size(); ++i) acc += std::conj(bra[i]) * ket[i];
  return acc;
}

// Dense square matrix, row-major.
class Operator {
 public:
  explicit Operator(std::size_t dim) : dim_(dim), e_(dim * dim, cplx{0.0, 0.0}) {
    if (dim == 0) throw RangeError("operator dimension must be positive");
  }

  static Operator identity(std::size_t dim) {
    Operator op(dim);
    for (std::size_t i = 0; i < dim; ++i) op.at(i, i) = 1.0;
    return op;
  }

  std::size_t dim() const { return dim_; }

  cplx& at(std::size_t r, std::size_t c) { return e_[r * dim_ + c]; }
  const cplx& at(std::size_t r, std::size_t c) const { return e_[r * dim_ + c]; }

  Operator adjoint() const {
    Operator out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) out.at(r, c) = std::conj(at(c, r));
    return out;
  }

  Operator operator*(const Operator& rhs) const {
    if (dim_ != rhs.dim_) throw DimMismatchError("operator product dimension mismatch");
    Operator out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t k = 0; k < dim_; ++k) {
        const cplx a = at(r, k);
        if (a == cplx{0.0, 0.0}) continue;
        for (std::size_t c = 0; c < dim_; ++c) out.at(r, c) += a * rhs.at(k, c);
      }
    return out;
  }

  Operator operator+(const Operator& rhs) const {
    if (dim_ != rhs.dim_) throw DimMismatchError("operator sum dimension mismatch");
    Operator out(dim_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] + rhs.e_[i];
    return out;
  }

  friend Operator operator*(cplx s, const Operator& op) {
    Operator out(op.dim_);
    for (std::size_t i = 0; i < op.e_.size(); ++i) out.e_[i] = s * op.e_[i];
    return out;
  }

  // Max absolute entry of (this - rhs); the comparison metric used by the
  // projector/unitary checks.
  double max_abs_diff(const Operator& rhs) const {
    if (dim_ != rhs.dim_) throw DimMismatchError("operator comparison dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < e_.size(); ++i) m = std::max(m, std::abs(e_[i] - rhs.e_[i]));
    return m;
  }

  bool is_projector(double tol = 1e-12) const {
    return ((*this) * (*this)).max_abs_diff(*this) <= tol &&
           adjoint().max_abs_diff(*this) <= tol;
  }

  bool is_unitary(double tol = 1e-12) const {
    return (adjoint() * (*this)).max_abs_diff(identity(dim_)) <= tol;
  }

 private:
  std::size_t dim_;
  std::vector<cplx> e_;
};

// Projector onto a single arm: 1 at (arm, arm), zero elsewhere.
inline Operator arm_projector(std::size_t dim, std::size_t arm) {
  if (arm >= dim) throw IndexOutOfRangeError("arm index out of range");
  Operator op(dim);
  op.at(arm, arm) = 1.0;
  return op;
}

// 2x2 beam splitter with |t|^2 = transmission. The convention is the Hermitian
// involution
//     [  t          -r e^{-i phase} ]
//     [ -r e^{i phase}   -t         ]
// so the reflected amplitude into the second port carries the minus sign: a
// single-arm input through a 64%-transmission splitter comes out as
// (0.8, -0.6), and applying the same splitter twice is the identity.
inline Operator beam_splitter(double transmission, double phase = 0.0) {
  if (!(transmission > 0.0 && transmission < 1.0))
    throw RangeError("beam splitter transmission must lie in (0, 1)");
  if (!std::isfinite(phase)) throw RangeError("beam splitter phase must be finite");
  const double t = std::sqrt(transmission);
  const double r = std::sqrt(1.0 - transmission);
  const cplx ph = std::polar(1.0, phase);
  Operator op(2);
  op.at(0, 0) = t;
  op.at(0, 1) = -r * std::conj(ph);
  op.at(1, 0) = -r * ph;
  op.at(1, 1) = -t;
  return op;
}

// Plain matrix-vector product. Deliberately does not renormalize: conditional
// amplitudes downstream need the raw vector.
inline std::vector<cplx> apply(const Operator& op, const std::vector<cplx>& v) {
  if (op.dim() != v.size()) throw DimMismatchError("operator/state dimension mismatch");
  std::vector<cplx> out(v.size(), cplx{0.0, 0.0});
  for (std::size_t r = 0; r < op.dim(); ++r)
    for (std::size_t c = 0; c < op.dim(); ++c) out[r] += op.at(r, c) * v[c];
  return out;
}

inline std::vector<cplx> apply(const Operator& op, const PureState& s) {
  return apply(op, s.amps());
}

}  // namespace qcore
}  // namespace wvsim
