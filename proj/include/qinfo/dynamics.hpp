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

// Measurements, state updates and operator-sum channels.

#pragma once

#include "qinfo/core.hpp"
#include "qinfo/rng.hpp"
#include "qinfo/state.hpp"

#include <functional>
#include <optional>

namespace qinfo {

/// Complete set of orthogonal projectors.
class ProjectiveMeasurement {
 public:
  explicit ProjectiveMeasurement(std::vector<Matrix> projectors) : projectors_(std::move(projectors)) {
    detail::require(!projectors_.empty(), "measurement needs at least one projector");
    const Eigen::Index d = projectors_.front().rows();
    Matrix sum = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < projectors_.size(); ++i) {
      const Matrix& p = projectors_[i];
      detail::require(p.rows() == d && p.cols() == d, "projectors must share one square dimension");
      detail::require(hermiticity_error(p) <= tol::completeness, "projector is not Hermitian");
      for (std::size_t j = 0; j < projectors_.size(); ++j) {
        const Matrix expected = i == j ? p : Matrix::Zero(d, d);
        detail::require((p * projectors_[j] - expected).cwiseAbs().maxCoeff() <= tol::completeness,
                        "projectors are not orthogonal idempotents");
      }
      sum += p;
    }
    detail::require((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <= tol::completeness,
                    "projectors do not sum to the identity");
  }

  /// Rank-1 projectors onto the columns of a unitary.
  static ProjectiveMeasurement from_basis(const Matrix& columns) {
    std::vector<Matrix> ps;
    for (Eigen::Index i = 0; i < columns.cols(); ++i) ps.push_back(projector(columns.col(i)));
    return ProjectiveMeasurement(std::move(ps));
  }

  static ProjectiveMeasurement computational(std::size_t d) { return from_basis(identity(d)); }

  std::size_t outcomes() const { return projectors_.size(); }
  std::size_t dim() const { return std::size_t(projectors_.front().rows()); }
  const std::vector<Matrix>& projectors() const { return projectors_; }
  const Matrix& operator[](std::size_t i) const { return projectors_[i]; }

 private:
  std::vector<Matrix> projectors_;
};

/// Positive operator-valued measure: PSD elements summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<Matrix> elements) : elements_(std::move(elements)) {
    detail::require(!elements_.empty(), "POVM needs at least one element");
    const Eigen::Index d = elements_.front().rows();
    Matrix sum = Matrix::Zero(d, d);
    for (const Matrix& e : elements_) {
      detail::require(e.rows() == d && e.cols() == d, "POVM elements must share one square dimension");
      detail::require(hermiticity_error(e) <= tol::completeness, "POVM element is not Hermitian");
      detail::require(hermitian_eigenvalues(e).minCoeff() >= -tol::psd, "POVM element is not positive");
      sum += e;
    }
    detail::require((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <= tol::completeness,
                    "POVM elements do not sum to the identity");
  }

  explicit Povm(const ProjectiveMeasurement& m) : Povm(m.projectors()) {}

  /// (2/3)|psi_k><psi_k| for three real qubit states 120 degrees apart on the
  /// Bloch circle (polarisations 0, 60, 120 degrees).
  static Povm trine() {
    std::vector<Matrix> es;
    for (int k = 0; k < 3; ++k)
      es.push_back((2.0 / 3.0) * projector(StateVector::polarization(k * std::numbers::pi / 3.0).amps()));
    return Povm(std::move(es));
  }

  std::size_t outcomes() const { return elements_.size(); }
  std::size_t dim() const { return std::size_t(elements_.front().rows()); }
  const std::vector<Matrix>& elements() const { return elements_; }
  const Matrix& operator[](std::size_t i) const { return elements_[i]; }

 private:
  std::vector<Matrix> elements_;
};

/// Operator-sum channel rho -> sum N rho N^dagger with sum N^dagger N = I.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<Matrix> ops) : ops_(std::move(ops)) {
    detail::require(!ops_.empty(), "channel needs at least one Kraus operator");
    const Eigen::Index din = ops_.front().cols(), dout = ops_.front().rows();
    Matrix sum = Matrix::Zero(din, din);
    for (const Matrix& n : ops_) {
      detail::require(n.cols() == din && n.rows() == dout, "Kraus operators must share one shape");
      sum += n.adjoint() * n;
    }
    detail::require((sum - Matrix::Identity(din, din)).cwiseAbs().maxCoeff() <= tol::completeness,
                    "Kraus operators are not trace preserving");
  }

  static KrausChannel identity_channel(std::size_t d) { return KrausChannel({identity(d)}); }

  static KrausChannel unitary(const Matrix& u) { return KrausChannel({u}); }

  /// {sqrt(1-3p/4) I, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z}; p = 1 maps
  /// every qubit state to I/2.
  static KrausChannel depolarizing(double p) {
    detail::require(p >= 0.0 && p <= 4.0 / 3.0, "depolarizing parameter out of range");
    const double a = std::sqrt(1.0 - 3.0 * p / 4.0), b = std::sqrt(p / 4.0);
    return KrausChannel({a * pauli::I(), b * pauli::X(), b * pauli::Y(), b * pauli::Z()});
  }

  /// Phase damping in the computational basis; lambda = 1 removes all
  /// coherences.
  static KrausChannel dephasing(double lambda) {
    detail::require(lambda >= 0.0 && lambda <= 1.0, "dephasing strength must lie in [0, 1]");
    return KrausChannel({std::sqrt(1.0 - lambda / 2.0) * pauli::I(), std::sqrt(lambda / 2.0) * pauli::Z()});
  }

  std::size_t input_dim() const { return std::size_t(ops_.front().cols()); }
  std::size_t output_dim() const { return std::size_t(ops_.front().rows()); }
  const std::vector<Matrix>& operators() const { return ops_; }

  Matrix apply(const Matrix& x) const {
    Matrix out = Matrix::Zero(ops_.front().rows(), ops_.front().rows());
    for (const Matrix& n : ops_) out += n * x * n.adjoint();
    return out;
  }

 private:
  std::vector<Matrix> ops_;
};

// ---------------------------------------------------------------------------

namespace detail {
inline Distribution born_distribution(const DensityOperator& rho, const std::vector<Matrix>& elements) {
  require(rho.dim() == std::size_t(elements.front().rows()), "measurement dimension does not match state");
  std::vector<double> p;
  for (const Matrix& e : elements) {
    const double v = (e * rho.matrix()).trace().real();
    p.push_back(v < 0.0 && v > -1e-12 ? 0.0 : v);
  }
  return Distribution::normalized(std::move(p));
}
}  // namespace detail

/// p(alpha) = Tr(E_alpha rho).
inline Distribution measure_probabilities(const DensityOperator& rho, const Povm& m) {
  return detail::born_distribution(rho, m.elements());
}

inline Distribution measure_probabilities(const DensityOperator& rho, const ProjectiveMeasurement& m) {
  return detail::born_distribution(rho, m.projectors());
}

/// Pi_i rho Pi_i / Tr(Pi_i rho) for a read outcome, sum_i Pi_i rho Pi_i when
/// the outcome is not read.
inline DensityOperator projective_update(const DensityOperator& rho, const ProjectiveMeasurement& m,
                                         std::optional<std::size_t> outcome = std::nullopt) {
  detail::require(rho.dim() == m.dim(), "measurement dimension does not match state");
  if (!outcome) {
    Matrix out = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
    for (const Matrix& p : m.projectors()) out += p * rho.matrix() * p;
    return DensityOperator::normalized(out, rho.dims());
  }
  detail::require(*outcome < m.outcomes(), "outcome index out of range");
  const Matrix& p = m[*outcome];
  const Matrix post = p * rho.matrix() * p;
  const double prob = post.trace().real();
  detail::require(prob > 1e-14, "measurement outcome has zero probability");
  return DensityOperator::normalized(post / prob, rho.dims());
}

/// rho -> sum_mu N_mu rho N_mu^dagger.
inline DensityOperator apply_channel(const DensityOperator& rho, const KrausChannel& ch) {
  detail::require(rho.dim() == ch.input_dim(), "channel input dimension does not match state");
  std::vector<std::size_t> dims = ch.output_dim() == ch.input_dim() ? rho.dims() : std::vector<std::size_t>{};
  return DensityOperator::normalized(ch.apply(rho.matrix()), std::move(dims));
}

// ---------------------------------------------------------------------------
// Complete positivity

/// Linear map on operators, stored through its action on vectorised inputs:
/// vec(Phi(X)) = action * vec(X) with row-major vec(X)[i*d + j] = X(i, j).
class Superoperator {
 public:
  Superoperator(Matrix action, std::size_t d_in, std::size_t d_out)
      : action_(std::move(action)), d_in_(d_in), d_out_(d_out) {
    detail::require(action_.rows() == Eigen::Index(d_out * d_out) && action_.cols() == Eigen::Index(d_in * d_in),
                    "superoperator action has the wrong shape");
  }

  static Superoperator from_kraus(const KrausChannel& ch) {
    return from_function([&ch](const Matrix& x) { return ch.apply(x); }, ch.input_dim());
  }

  /// Tabulates `phi` on the matrix units |i><j|. The map is probed on random
  /// combinations afterwards; a non-linear `phi` is rejected.
  static Superoperator from_function(const std::function<Matrix(const Matrix&)>& phi, std::size_t d_in) {
    detail::require(d_in >= 1, "input dimension must be positive");
    const Eigen::Index d = Eigen::Index(d_in);
    Matrix unit = Matrix::Zero(d, d);
    unit(0, 0) = 1.0;
    const Eigen::Index dout = phi(unit).rows();
    Matrix action(dout * dout, d * d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) {
        Matrix e = Matrix::Zero(d, d);
        e(i, j) = 1.0;
        const Matrix img = phi(e);
        detail::require(img.rows() == dout && img.cols() == dout, "map output shape varies with input");
        for (Eigen::Index k = 0; k < dout; ++k)
          for (Eigen::Index l = 0; l < dout; ++l) action(k * dout + l, i * d + j) = img(k, l);
      }
    Superoperator out(std::move(action), d_in, std::size_t(dout));
    CounterRng rng(0x5eed11u, d_in);
    for (int probe = 0; probe < 3; ++probe) {
      Matrix x(d, d);
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) x(i, j) = cplx(rng.normal(), rng.normal());
      const double scale = 1.0 + x.cwiseAbs().maxCoeff();
      const double err = (phi(x) - out.apply(x)).cwiseAbs().maxCoeff();
      detail::require(err <= 1e-9 * scale * double(d * d), "map is not linear");
    }
    return out;
  }

  Matrix apply(const Matrix& x) const {
    const Eigen::Index d = Eigen::Index(d_in_), dout = Eigen::Index(d_out_);
    Vector v(d * d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) v(i * d + j) = x(i, j);
    const Vector w = action_ * v;
    Matrix out(dout, dout);
    for (Eigen::Index k = 0; k < dout; ++k)
      for (Eigen::Index l = 0; l < dout; ++l) out(k, l) = w(k * dout + l);
    return out;
  }

  /// (1/d) sum_ij |i><j| (x) Phi(|i><j|); unit trace for trace-preserving maps.
  Matrix choi() const {
    const Eigen::Index d = Eigen::Index(d_in_), dout = Eigen::Index(d_out_);
    Matrix c = Matrix::Zero(d * dout, d * dout);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < dout; ++k)
          for (Eigen::Index l = 0; l < dout; ++l) c(i * dout + k, j * dout + l) = action_(k * dout + l, i * d + j);
    return c / double(d);
  }

  const Matrix& action() const { return action_; }
  std::size_t input_dim() const { return d_in_; }
  std::size_t output_dim() const { return d_out_; }

 private:
  Matrix action_;
  std::size_t d_in_, d_out_;
};

struct CpCheck {
  bool completely_positive = false;
  double min_eigenvalue = 0.0;  ///< of the normalised Choi matrix
  Vector witness;               ///< eigenvector for min_eigenvalue
};

/// CP iff the Choi matrix is PSD (eigenvalue tolerance -1e-9).
inline CpCheck is_completely_positive(const Superoperator& phi) {
  const Matrix c = phi.choi();
  detail::require(hermiticity_error(c) <= 1e-9, "Choi matrix is not Hermitian; map is not Hermiticity preserving");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(c));
  CpCheck out;
  out.min_eigenvalue = es.eigenvalues()(0);
  out.witness = es.eigenvectors().col(0);
  out.completely_positive = out.min_eigenvalue >= -tol::cp_choi;
  return out;
}

inline CpCheck is_completely_positive(const KrausChannel& ch) {
  return is_completely_positive(Superoperator::from_kraus(ch));
}

/// X -> X^T on a d-level system: positive but not completely positive.
inline Superoperator transpose_map(std::size_t d) {
  return Superoperator::from_function([](const Matrix& x) { return Matrix(x.transpose()); }, d);
}

// ---------------------------------------------------------------------------
// POVM realisation on a larger space

struct PovmRealization {
  std::size_t ancilla_dim = 0;
  Matrix unitary;                       ///< on system (x) ancilla
  ProjectiveMeasurement ancilla_measurement;  ///< I (x) |alpha><alpha|
  std::vector<Matrix> recovered;        ///< E_alpha read back through the dilation
  double max_error = 0.0;
};

/// Realises a POVM as a unitary on system (x) ancilla followed by a
/// projective ancilla measurement. The Kraus operators are M_alpha =
/// sqrt(E_alpha); the isometry |psi> -> sum_alpha M_alpha|psi> (x) |alpha> is
/// completed to a unitary with an orthonormal basis of its complement. The
/// recovered elements <psi,0| U^dagger (I (x) P_alpha) U |psi,0> must match the
/// inputs to 1e-9.
inline PovmRealization povm_via_ancilla(const Povm& povm) {
  const std::size_t d = povm.dim(), n = povm.outcomes();
  const Eigen::Index dn = Eigen::Index(d * n);
  Matrix iso = Matrix::Zero(dn, Eigen::Index(d));
  for (std::size_t a = 0; a < n; ++a) {
    const Matrix m = psd_sqrt(povm[a]);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) iso(Eigen::Index(i * n + a), Eigen::Index(j)) = m(Eigen::Index(i), Eigen::Index(j));
  }
  // Orthonormal complement of range(iso).
  Eigen::HouseholderQR<Matrix> qr(iso);
  const Matrix q = qr.householderQ();
  const Matrix complement = q.rightCols(dn - Eigen::Index(d));

  Matrix u(dn, dn);
  Eigen::Index next = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t a = 0; a < n; ++a) {
      const Eigen::Index col = Eigen::Index(i * n + a);
      if (a == 0)
        u.col(col) = iso.col(Eigen::Index(i));
      else
        u.col(col) = complement.col(next++);
    }
  if ((u.adjoint() * u - Matrix::Identity(dn, dn)).cwiseAbs().maxCoeff() > 1e-9)
    throw std::logic_error("POVM dilation failed to produce a unitary");

  std::vector<Matrix> anc_projectors;
  for (std::size_t a = 0; a < n; ++a) {
    Matrix pa = Matrix::Zero(Eigen::Index(n), Eigen::Index(n));
    pa(Eigen::Index(a), Eigen::Index(a)) = 1.0;
    anc_projectors.push_back(kron(identity(d), pa));
  }
  PovmRealization out{n, u, ProjectiveMeasurement(anc_projectors), {}, 0.0};
  for (std::size_t a = 0; a < n; ++a) {
    Matrix e{Eigen::Index(d), Eigen::Index(d)};
    const Matrix heis = u.adjoint() * anc_projectors[a] * u;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) e(Eigen::Index(i), Eigen::Index(j)) = heis(Eigen::Index(i * n), Eigen::Index(j * n));
    out.max_error = std::max(out.max_error, (e - povm[a]).cwiseAbs().maxCoeff());
    out.recovered.push_back(std::move(e));
  }
  if (out.max_error > 1e-9) throw std::logic_error("POVM dilation does not reproduce the POVM elements");
  return out;
}

}  // namespace qinfo
