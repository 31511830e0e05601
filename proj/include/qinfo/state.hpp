// Copyright 2026 The qinfo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Finite-dimensional state algebra: state vectors, density operators,
// composition, reduction, purification, Schmidt form, entropy and the
// distance measures between states.

#pragma once

#include "qinfo/core.hpp"
#include "qinfo/probability.hpp"

#include <optional>

namespace qinfo {

namespace detail {
inline std::vector<std::size_t> checked_dims(std::vector<std::size_t> dims, std::size_t total) {
  if (dims.empty()) return {total};
  for (auto d : dims) require(d >= 1, "subsystem dimensions must be positive");
  require(product(dims) == total, "subsystem dimensions do not multiply to the state dimension");
  return dims;
}
}  // namespace detail

/// Unit-norm amplitude vector with an optional tensor factorisation.
class StateVector {
 public:
  explicit StateVector(Vector amps, std::vector<std::size_t> dims = {})
      : amps_(std::move(amps)), dims_(detail::checked_dims(std::move(dims), std::size_t(amps_.size()))) {
    detail::require(amps_.size() >= 1, "state vector must be non-empty");
    detail::require(std::abs(amps_.squaredNorm() - 1.0) <= tol::state_norm, "state vector is not normalised");
  }

  static StateVector normalized(Vector amps, std::vector<std::size_t> dims = {}) {
    const double n = amps.norm();
    detail::require(n > 0.0, "cannot normalise the zero vector");
    return StateVector(amps / n, std::move(dims));
  }

  /// |index> in dimension `dim`.
  static StateVector basis(std::size_t dim, std::size_t index) {
    detail::require(index < dim, "basis index out of range");
    Vector v = Vector::Zero(Eigen::Index(dim));
    v(Eigen::Index(index)) = 1.0;
    return StateVector(std::move(v));
  }

  /// cos(theta)|0> + sin(theta)|1>: a linear polarisation at angle theta.
  static StateVector polarization(double theta) {
    Vector v(2);
    v << std::cos(theta), std::sin(theta);
    return StateVector::normalized(std::move(v));
  }

  std::size_t dim() const { return std::size_t(amps_.size()); }
  const Vector& amps() const { return amps_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  cplx operator[](std::size_t i) const { return amps_(Eigen::Index(i)); }

  StateVector with_dims(std::vector<std::size_t> dims) const { return StateVector(amps_, std::move(dims)); }

 private:
  Vector amps_;
  std::vector<std::size_t> dims_;
};

/// Hermitian, positive semidefinite, unit-trace operator.
class DensityOperator {
 public:
  explicit DensityOperator(Matrix m, std::vector<std::size_t> dims = {}) : m_(std::move(m)) {
    detail::require(m_.rows() == m_.cols() && m_.rows() >= 1, "density operator must be square");
    dims_ = detail::checked_dims(std::move(dims), std::size_t(m_.rows()));
    detail::require(hermiticity_error(m_) <= tol::hermitian, "density operator is not Hermitian");
    detail::require(std::abs(m_.trace() - cplx(1.0)) <= tol::trace, "density operator trace is not 1");
    detail::require(hermitian_eigenvalues(m_).minCoeff() >= -tol::psd, "density operator is not positive");
  }

  explicit DensityOperator(const StateVector& psi) : m_(projector(psi.amps())), dims_(psi.dims()) {}

  /// Hermitian-symmetrises and trace-normalises before validating.
  static DensityOperator normalized(const Matrix& m, std::vector<std::size_t> dims = {}) {
    Matrix h = hermitian_part(m);
    const double tr = h.trace().real();
    detail::require(tr > 0.0, "cannot normalise an operator with non-positive trace");
    return DensityOperator(h / tr, std::move(dims));
  }

  static DensityOperator maximally_mixed(std::size_t d) { return DensityOperator(identity(d) / double(d)); }

  static DensityOperator diagonal(const std::vector<double>& probs) {
    const Distribution p(probs);
    Matrix m = Matrix::Zero(Eigen::Index(p.size()), Eigen::Index(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) m(Eigen::Index(i), Eigen::Index(i)) = p[i];
    return DensityOperator(std::move(m));
  }

  std::size_t dim() const { return std::size_t(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  const std::vector<std::size_t>& dims() const { return dims_; }

  DensityOperator with_dims(std::vector<std::size_t> dims) const { return DensityOperator(m_, std::move(dims)); }

  /// Tr(rho^2).
  double purity() const { return (m_ * m_).trace().real(); }

 private:
  Matrix m_;
  std::vector<std::size_t> dims_;
};

// ---------------------------------------------------------------------------
// Composition and reduction

inline StateVector tensor(const StateVector& a, const StateVector& b) {
  std::vector<std::size_t> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return StateVector::normalized(kron(a.amps(), b.amps()), std::move(dims));
}

inline DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  std::vector<std::size_t> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityOperator(kron(a.matrix(), b.matrix()), std::move(dims));
}

/// Reduced operator on the subsystems listed in `keep` (ascending order of
/// the factorisation). Keeping nothing returns the 1x1 operator [Tr rho].
inline Matrix partial_trace_matrix(const Matrix& m, std::span<const std::size_t> dims,
                                   std::span<const std::size_t> keep) {
  detail::require(std::size_t(m.rows()) == product(dims), "operator does not match factorisation");
  const std::size_t k = dims.size();
  std::vector<bool> kept(k, false);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    detail::require(keep[i] < k, "subsystem index out of range");
    detail::require(i == 0 || keep[i] > keep[i - 1], "kept subsystems must be strictly increasing");
    kept[keep[i]] = true;
  }
  std::vector<std::size_t> kdims, tdims;
  for (std::size_t i = 0; i < k; ++i) (kept[i] ? kdims : tdims).push_back(dims[i]);
  const std::size_t dk = product(kdims), dt = product(tdims);

  // Full multi-index from a (kept, traced) pair of flat indices.
  std::vector<std::size_t> full_index(dk * dt);
  std::vector<std::size_t> digits(k);
  for (std::size_t a = 0; a < dk; ++a) {
    for (std::size_t t = 0; t < dt; ++t) {
      std::size_t ra = a, rt = t;
      for (std::size_t i = k; i-- > 0;) {
        if (kept[i]) {
          digits[i] = ra % dims[i];
          ra /= dims[i];
        } else {
          digits[i] = rt % dims[i];
          rt /= dims[i];
        }
      }
      std::size_t flat = 0;
      for (std::size_t i = 0; i < k; ++i) flat = flat * dims[i] + digits[i];
      full_index[a * dt + t] = flat;
    }
  }
  Matrix out = Matrix::Zero(Eigen::Index(dk), Eigen::Index(dk));
  for (std::size_t a = 0; a < dk; ++a)
    for (std::size_t b = 0; b < dk; ++b) {
      cplx s = 0.0;
      for (std::size_t t = 0; t < dt; ++t)
        s += m(Eigen::Index(full_index[a * dt + t]), Eigen::Index(full_index[b * dt + t]));
      out(Eigen::Index(a), Eigen::Index(b)) = s;
    }
  return out;
}

inline DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::size_t> keep) {
  detail::require(rho.dims().size() >= 1, "partial trace needs a factorisation");
  std::vector<std::size_t> kdims;
  for (auto i : keep) {
    detail::require(i < rho.dims().size(), "subsystem index out of range");
    kdims.push_back(rho.dims()[i]);
  }
  Matrix reduced = partial_trace_matrix(rho.matrix(), rho.dims(), keep);
  if (kdims.empty()) kdims.push_back(1);
  return DensityOperator::normalized(reduced, std::move(kdims));
}

/// Reduced state of a single subsystem.
inline DensityOperator partial_trace(const DensityOperator& rho, std::size_t keep) {
  detail::require(rho.dims().size() >= 2 || keep == 0, "state has no subsystem to trace out");
  const std::size_t k[] = {keep};
  return partial_trace(rho, std::span<const std::size_t>(k));
}

// ---------------------------------------------------------------------------
// Spectra, purification and Schmidt form

struct SpectralDecomposition {
  RealVector eigenvalues;  ///< descending
  Matrix eigenvectors;     ///< columns, matching eigenvalues

  Matrix reconstruct() const {
    return eigenvectors * eigenvalues.cast<cplx>().asDiagonal() * eigenvectors.adjoint();
  }
};

inline SpectralDecomposition spectral_decomposition(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(hermitian));
  const Eigen::Index d = es.eigenvalues().size();
  SpectralDecomposition out{RealVector(d), Matrix(d, d)};
  for (Eigen::Index i = 0; i < d; ++i) {
    out.eigenvalues(i) = es.eigenvalues()(d - 1 - i);
    out.eigenvectors.col(i) = es.eigenvectors().col(d - 1 - i);
  }
  return out;
}

inline SpectralDecomposition spectral_decomposition(const DensityOperator& rho) {
  return spectral_decomposition(rho.matrix());
}

/// Spectrum of rho with values below the clipping threshold set to 0,
/// descending.
inline std::vector<double> clipped_spectrum(const DensityOperator& rho) {
  const RealVector ev = spectral_decomposition(rho).eigenvalues;
  std::vector<double> out(std::size_t(ev.size()));
  for (Eigen::Index i = 0; i < ev.size(); ++i) out[std::size_t(i)] = ev(i) > tol::eigen_clip ? ev(i) : 0.0;
  return out;
}

inline std::size_t rank(const DensityOperator& rho) {
  std::size_t r = 0;
  for (double x : clipped_spectrum(rho)) r += x > 0.0;
  return r;
}

/// |Psi> = sum_i sqrt(lambda_i) |psi_i> (x) |i> on system (x) ancilla, with
/// ancilla dimension rank(rho).
inline StateVector purify(const DensityOperator& rho) {
  const SpectralDecomposition sd = spectral_decomposition(rho);
  const std::size_t d = rho.dim();
  const std::size_t r = std::max<std::size_t>(1, rank(rho));
  Vector psi = Vector::Zero(Eigen::Index(d * r));
  for (std::size_t i = 0; i < r; ++i) {
    const double lam = std::max(0.0, sd.eigenvalues(Eigen::Index(i)));
    Vector anc = Vector::Zero(Eigen::Index(r));
    anc(Eigen::Index(i)) = 1.0;
    psi += std::sqrt(lam) * kron(Vector(sd.eigenvectors.col(Eigen::Index(i))), anc);
  }
  return StateVector::normalized(std::move(psi), {d, r});
}

/// sum_i c_i |a_i> (x) |b_i> with c_i descending and c_i^2 > 1e-12.
struct SchmidtForm {
  std::vector<double> coefficients;
  Matrix left;   ///< dA x N, orthonormal columns
  Matrix right;  ///< dB x N, orthonormal columns

  std::size_t schmidt_number() const { return coefficients.size(); }

  std::vector<double> weights() const {
    std::vector<double> w;
    for (double c : coefficients) w.push_back(c * c);
    return w;
  }

  Vector reconstruct() const {
    Vector psi = Vector::Zero(left.rows() * right.rows());
    for (std::size_t i = 0; i < coefficients.size(); ++i)
      psi += coefficients[i] * kron(Vector(left.col(Eigen::Index(i))), Vector(right.col(Eigen::Index(i))));
    return psi;
  }
};

namespace detail {
inline std::pair<std::size_t, std::size_t> bipartition(const StateVector& psi,
                                                       std::optional<std::pair<std::size_t, std::size_t>> split) {
  if (split) {
    require(split->first * split->second == psi.dim(), "split does not match state dimension");
    return *split;
  }
  require(psi.dims().size() == 2, "state needs a bipartite factorisation or an explicit split");
  return {psi.dims()[0], psi.dims()[1]};
}
}  // namespace detail

/// Schmidt decomposition via the SVD of the dA x dB amplitude matrix.
inline SchmidtForm schmidt_decompose(const StateVector& psi,
                                     std::optional<std::pair<std::size_t, std::size_t>> split = std::nullopt) {
  const auto [da, db] = detail::bipartition(psi, split);
  Matrix c{Eigen::Index(da), Eigen::Index(db)};
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < db; ++b) c(Eigen::Index(a), Eigen::Index(b)) = psi[a * db + b];
  Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  std::size_t keep = 0;
  while (keep < std::size_t(s.size()) && s(Eigen::Index(keep)) * s(Eigen::Index(keep)) > tol::eigen_clip) ++keep;
  SchmidtForm out;
  out.left = svd.matrixU().leftCols(Eigen::Index(keep));
  out.right = svd.matrixV().conjugate().leftCols(Eigen::Index(keep));
  for (std::size_t i = 0; i < keep; ++i) out.coefficients.push_back(s(Eigen::Index(i)));
  return out;
}

// ---------------------------------------------------------------------------
// Entropy and distances

/// S(rho) = -Tr rho log rho, eigenvalues below 1e-12 treated as 0.
inline double von_neumann_entropy(const DensityOperator& rho, LogBase base = LogBase::bits) {
  double s = 0.0;
  for (double x : clipped_spectrum(rho)) s += detail::xlogx_nats(x);
  return from_nats(std::max(0.0, s), base);
}

namespace detail {
inline void require_same_dim(const DensityOperator& a, const DensityOperator& b) {
  require(a.dim() == b.dim(), "states have different dimensions");
}
}  // namespace detail

/// F = (Tr sqrt(sqrt(rho1) rho0 sqrt(rho1)))^2, so F = |<psi0|psi1>|^2 for
/// pure states.
inline double fidelity(const DensityOperator& rho0, const DensityOperator& rho1) {
  detail::require_same_dim(rho0, rho1);
  const Matrix s1 = hermitian_function(rho1.matrix(), [](double x) { return x > tol::eigen_clip ? std::sqrt(x) : 0.0; });
  const RealVector ev = hermitian_eigenvalues(s1 * rho0.matrix() * s1);
  double tr = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) tr += ev(i) > tol::eigen_clip ? std::sqrt(ev(i)) : 0.0;
  return std::clamp(tr * tr, 0.0, 1.0);
}

inline double fidelity(const StateVector& a, const StateVector& b) {
  detail::require(a.dim() == b.dim(), "states have different dimensions");
  return std::min(1.0, std::norm(a.amps().dot(b.amps())));
}

/// sqrt(F): the statistical overlap of the optimal measurement.
inline double statistical_overlap(const DensityOperator& rho0, const DensityOperator& rho1) {
  return std::sqrt(fidelity(rho0, rho1));
}

/// Trace norm ||rho0 - rho1||_1 = Tr|rho0 - rho1|, without a 1/2 factor;
/// ranges over [0, 2].
inline double trace_distance(const DensityOperator& rho0, const DensityOperator& rho1) {
  detail::require_same_dim(rho0, rho1);
  return trace_norm_hermitian(rho0.matrix() - rho1.matrix());
}

/// Angle arccos|<psi0|psi1>| between rays, in [0, pi/2].
inline double hilbert_angle(const StateVector& a, const StateVector& b) {
  detail::require(a.dim() == b.dim(), "states have different dimensions");
  return std::acos(std::min(1.0, std::abs(a.amps().dot(b.amps()))));
}

/// Equality up to a global phase: |<a|b>| >= 1 - 1e-10.
inline bool same_ray(const StateVector& a, const StateVector& b, double tolerance = 1e-10) {
  return a.dim() == b.dim() && std::abs(a.amps().dot(b.amps())) >= 1.0 - tolerance;
}

}  // namespace qinfo
