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

// Random states, unitaries and distributions for property tests and demos.

#pragma once

#include "qinfo/core.hpp"
#include "qinfo/probability.hpp"
#include "qinfo/rng.hpp"
#include "qinfo/state.hpp"

namespace qinfo::random {

inline Matrix ginibre(CounterRng& rng, std::size_t rows, std::size_t cols) {
  Matrix g{Eigen::Index(rows), Eigen::Index(cols)};
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  return g;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of R's
/// diagonal folded back into Q.
inline Matrix haar_unitary(CounterRng& rng, std::size_t d) {
  const Matrix g = ginibre(rng, d, d);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    const cplx rd = r(i, i);
    const double a = std::abs(rd);
    if (a > 0.0) q.col(i) *= rd / a;
  }
  return q;
}

inline StateVector state_vector(CounterRng& rng, std::size_t d, std::vector<std::size_t> dims = {}) {
  Vector v{Eigen::Index(d)};
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(rng.normal(), rng.normal());
  return StateVector::normalized(std::move(v), std::move(dims));
}

/// Random mixed state of rank <= `rank` (Hilbert-Schmidt measure for full rank).
inline DensityOperator density(CounterRng& rng, std::size_t d, std::size_t rank = 0, std::vector<std::size_t> dims = {}) {
  if (rank == 0) rank = d;
  const Matrix g = ginibre(rng, d, rank);
  return DensityOperator::normalized(g * g.adjoint(), std::move(dims));
}

inline Distribution distribution(CounterRng& rng, std::size_t n) {
  std::vector<double> w(n);
  for (double& x : w) x = -std::log(std::max(rng.uniform(), 1e-300));  // flat Dirichlet
  return Distribution::normalized(std::move(w));
}

inline JointDistribution joint(CounterRng& rng, std::size_t rows, std::size_t cols) {
  const Distribution flat = distribution(rng, rows * cols);
  return JointDistribution(rows, cols, flat.vector());
}

/// Kraus operators {N_mu} with sum N^dagger N = I: blocks of a random isometry.
inline std::vector<Matrix> kraus_operators(CounterRng& rng, std::size_t d_in, std::size_t d_out, std::size_t count) {
  detail::require(d_in >= 1 && count * d_out >= d_in, "need count * d_out >= d_in for a trace-preserving channel");
  const Matrix u = haar_unitary(rng, d_out * count);
  const Matrix iso = u.leftCols(Eigen::Index(d_in));
  std::vector<Matrix> ops;
  for (std::size_t k = 0; k < count; ++k) ops.push_back(iso.middleRows(Eigen::Index(k * d_out), Eigen::Index(d_out)));
  return ops;
}

/// Rank-1 POVM elements {G^{-1/2} v v^dagger G^{-1/2}} from random vectors.
inline std::vector<Matrix> povm_elements(CounterRng& rng, std::size_t d, std::size_t count) {
  detail::require(d >= 1 && count >= d, "a rank-1 POVM needs at least d elements");
  std::vector<Vector> vs;
  Matrix g = Matrix::Zero(Eigen::Index(d), Eigen::Index(d));
  for (std::size_t k = 0; k < count; ++k) {
    vs.push_back(state_vector(rng, d).amps());
    g += projector(vs.back());
  }
  const Matrix g_inv_sqrt = hermitian_function(g, [](double x) { return x > 1e-14 ? 1.0 / std::sqrt(x) : 0.0; });
  std::vector<Matrix> out;
  for (const auto& v : vs) out.push_back(projector(g_inv_sqrt * v));
  return out;
}

}  // namespace qinfo::random
