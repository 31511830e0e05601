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

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qinfo {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Raised when an input violates a documented invariant (bad distribution,
/// non-Hermitian operator, mismatched dimensions, ...).
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an enumeration would exceed the configured cap.
class capacity_exceeded : public validation_error {
 public:
  using validation_error::validation_error;
};

enum class LogBase { bits, nats };

inline double log_in(double x, LogBase base) {
  return base == LogBase::bits ? std::log2(x) : std::log(x);
}

/// Converts a quantity expressed in nats into `base`.
inline double from_nats(double value, LogBase base) {
  return base == LogBase::bits ? value / std::numbers::ln2 : value;
}

inline double to_nats(double value, LogBase base) {
  return base == LogBase::bits ? value * std::numbers::ln2 : value;
}

inline const char* to_string(LogBase base) { return base == LogBase::bits ? "bits" : "nats"; }

namespace tol {
inline constexpr double distribution_sum = 1e-12;
inline constexpr double state_norm = 1e-12;
inline constexpr double hermitian = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double psd = 1e-10;
inline constexpr double completeness = 1e-10;
inline constexpr double eigen_clip = 1e-12;
inline constexpr double cp_choi = 1e-9;
}  // namespace tol

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw validation_error(message);
}

// -x log x with the 0 log 0 = 0 convention, in nats.
inline double xlogx_nats(double x) { return x > 0.0 ? -x * std::log(x) : 0.0; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Small dense linear-algebra helpers shared by every quantum module.

inline Matrix identity(std::size_t d) { return Matrix::Identity(Eigen::Index(d), Eigen::Index(d)); }

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline Matrix outer(const Vector& a, const Vector& b) { return a * b.adjoint(); }
inline Matrix projector(const Vector& v) { return v * v.adjoint(); }

inline double hermiticity_error(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

/// Eigenvalues of a Hermitian matrix, ascending.
inline RealVector hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

/// f(M) for Hermitian M, applied on the spectrum.
template <typename F>
Matrix hermitian_function(const Matrix& m, F&& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  RealVector vals = es.eigenvalues().unaryExpr([&](double x) { return double(f(x)); });
  return es.eigenvectors() * vals.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

/// Principal square root of a positive semidefinite matrix; small negative
/// eigenvalues from rounding are clipped.
inline Matrix psd_sqrt(const Matrix& m) {
  return hermitian_function(m, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

/// Tr|A| for Hermitian A.
inline double trace_norm_hermitian(const Matrix& m) { return hermitian_eigenvalues(m).cwiseAbs().sum(); }

inline std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

namespace pauli {
inline Matrix I() { return identity(2); }
inline Matrix X() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Matrix Y() {
  Matrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
inline Matrix Z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

/// Enumeration cap for exhaustive block enumerations. QINFO_ENUM_CAP in the
/// environment overrides the compiled default.
inline std::uint64_t enumeration_cap(std::uint64_t fallback) {
  if (const char* env = std::getenv("QINFO_ENUM_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return fallback;
}

}  // namespace qinfo
