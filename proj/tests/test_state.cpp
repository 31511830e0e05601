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

#include <cmath>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "qinfo/random.hpp"
#include "qinfo/state.hpp"

using Catch::Matchers::WithinAbs;
using namespace qinfo;

namespace {

Vector amps(std::initializer_list<cplx> xs) {
  Vector v{Eigen::Index(xs.size())};
  Eigen::Index i = 0;
  for (cplx x : xs) v(i++) = x;
  return v;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// Component formula rho^A_{ab} = sum_nu rho_{a nu, b nu}.
Matrix oracle_trace_b(const Matrix& rho, Eigen::Index da, Eigen::Index db) {
  Matrix out = Matrix::Zero(da, da);
  for (Eigen::Index a = 0; a < da; ++a)
    for (Eigen::Index b = 0; b < da; ++b)
      for (Eigen::Index nu = 0; nu < db; ++nu) out(a, b) += rho(a * db + nu, b * db + nu);
  return out;
}

Matrix oracle_trace_a(const Matrix& rho, Eigen::Index da, Eigen::Index db) {
  Matrix out = Matrix::Zero(db, db);
  for (Eigen::Index a = 0; a < db; ++a)
    for (Eigen::Index b = 0; b < db; ++b)
      for (Eigen::Index mu = 0; mu < da; ++mu) out(a, b) += rho(mu * db + a, mu * db + b);
  return out;
}

const StateVector kPsiMinus(amps({0, std::sqrt(0.5), -std::sqrt(0.5), 0}), {2, 2});

}  // namespace

TEST_CASE("state validation", "[state]") {
  CHECK_THROWS_AS(StateVector(amps({1, 1})), validation_error);
  CHECK_THROWS_AS(StateVector(amps({1, 0, 0}), {2, 2}), validation_error);
  CHECK_THROWS_AS(DensityOperator(Matrix::Identity(2, 2)), validation_error);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityOperator(neg), validation_error);
  Matrix nonherm = Matrix::Identity(2, 2) / 2.0;
  nonherm(0, 1) = 0.3;
  CHECK_THROWS_AS(DensityOperator(nonherm), validation_error);
}

TEST_CASE("tensor products", "[state]") {
  const auto ket01 = tensor(StateVector::basis(2, 0), StateVector::basis(2, 1));
  CHECK(ket01[1] == cplx(1.0));
  CHECK(ket01.dims() == std::vector<std::size_t>{2, 2});
  const auto mixed = tensor(DensityOperator::maximally_mixed(2), DensityOperator::maximally_mixed(2));
  CHECK(max_abs(mixed.matrix() - Matrix::Identity(4, 4) / 4.0) < 1e-15);

  CounterRng rng(11);
  const Matrix a = random::ginibre(rng, 2, 2), b = random::ginibre(rng, 3, 3);
  const Vector x = random::ginibre(rng, 2, 1).col(0), y = random::ginibre(rng, 3, 1).col(0);
  // Oracle: (A (x) B)(x (x) y) by explicit index arithmetic.
  Vector expect{6};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) expect(i * 3 + j) = (a * x)(i) * (b * y)(j);
  CHECK((kron(a, b) * kron(x, y) - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace", "[state]") {
  const DensityOperator singlet(kPsiMinus);
  CHECK(max_abs(partial_trace(singlet, 0).matrix() - Matrix::Identity(2, 2) / 2.0) < 1e-15);
  CHECK(max_abs(partial_trace(singlet, 1).matrix() - Matrix::Identity(2, 2) / 2.0) < 1e-15);

  CounterRng rng(12);
  const auto ra = random::density(rng, 2), rb = random::density(rng, 3);
  CHECK(max_abs(partial_trace(tensor(ra, rb), 0).matrix() - ra.matrix()) < 1e-12);
  CHECK(max_abs(partial_trace(tensor(ra, rb), 1).matrix() - rb.matrix()) < 1e-12);

  const auto rab = random::density(rng, 6, 0, {2, 3});
  CHECK(max_abs(partial_trace(rab, 0).matrix() - oracle_trace_b(rab.matrix(), 2, 3)) < 1e-12);
  CHECK(max_abs(partial_trace(rab, 1).matrix() - oracle_trace_a(rab.matrix(), 2, 3)) < 1e-12);
  CHECK_THAT(partial_trace(rab, 0).matrix().trace().real(), WithinAbs(1.0, 1e-12));

  CHECK_THROWS_AS(partial_trace(DensityOperator::maximally_mixed(4), 1), validation_error);
  CHECK_THROWS_AS(partial_trace(rab, 2), validation_error);

  const auto rabc = random::density(rng, 12, 0, {2, 3, 2});
  const std::array<std::size_t, 2> keep{0, 2};
  const auto rac = partial_trace(rabc, keep);
  CHECK(rac.dims() == std::vector<std::size_t>{2, 2});
  // Oracle: sum over the middle index.
  Matrix expect = Matrix::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int c2 = 0; c2 < 2; ++c2)
          for (int b = 0; b < 3; ++b) expect(a * 2 + c, a2 * 2 + c2) += rabc.matrix()(a * 6 + b * 2 + c, a2 * 6 + b * 2 + c2);
  CHECK(max_abs(rac.matrix() - expect) < 1e-12);
}

TEST_CASE("purification", "[state]") {
  const auto psi = StateVector::normalized(amps({0.6, cplx(0, 0.8)}));
  const auto p = purify(DensityOperator(psi));
  CHECK(p.dims() == std::vector<std::size_t>{2, 1});
  CHECK_THAT(std::abs(p.amps().dot(psi.amps())), WithinAbs(1.0, 1e-12));

  const auto mm = purify(DensityOperator::maximally_mixed(2));
  const auto w = schmidt_decompose(mm).weights();
  REQUIRE(w.size() == 2);
  CHECK_THAT(w[0], WithinAbs(0.5, 1e-12));
  CHECK_THAT(w[1], WithinAbs(0.5, 1e-12));

  CounterRng rng(13);
  const auto rho = random::density(rng, 3, 3);
  const auto big = purify(rho);
  CHECK(big.dims() == std::vector<std::size_t>{3, 3});
  CHECK(max_abs(partial_trace(DensityOperator(big), 0).matrix() - rho.matrix()) < 1e-9);

  const auto rank2 = random::density(rng, 4, 2);
  CHECK(purify(rank2).dims() == std::vector<std::size_t>{4, 2});
}

TEST_CASE("Schmidt decomposition", "[state]") {
  const auto prod = tensor(StateVector::polarization(0.3), StateVector::polarization(1.1));
  CHECK(schmidt_decompose(prod).schmidt_number() == 1);

  const StateVector phi(amps({std::sqrt(0.5), 0, 0, std::sqrt(0.5)}), {2, 2});
  const auto f = schmidt_decompose(phi);
  REQUIRE(f.schmidt_number() == 2);
  CHECK_THAT(f.coefficients[0], WithinAbs(std::sqrt(0.5), 1e-12));
  CHECK_THAT(f.coefficients[1], WithinAbs(std::sqrt(0.5), 1e-12));

  const StateVector skew(amps({std::sqrt(0.9), 0, 0, std::sqrt(0.1)}), {2, 2});
  const auto g = schmidt_decompose(skew);
  CHECK_THAT(g.coefficients[0], WithinAbs(std::sqrt(0.9), 1e-12));
  CHECK_THAT(g.coefficients[1], WithinAbs(std::sqrt(0.1), 1e-12));

  CounterRng rng(14);
  const auto psi = random::state_vector(rng, 12, {3, 4});
  const auto h = schmidt_decompose(psi);
  CHECK((h.reconstruct() - psi.amps()).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((h.left.adjoint() * h.left - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
  const auto spec_a = clipped_spectrum(partial_trace(DensityOperator(psi), 0));
  const auto w = h.weights();
  for (std::size_t i = 0; i < w.size(); ++i) CHECK_THAT(w[i], WithinAbs(spec_a[i], 1e-9));
  CHECK_THROWS_AS(schmidt_decompose(StateVector::basis(6, 0)), validation_error);
  CHECK(schmidt_decompose(StateVector::basis(6, 0), std::pair<std::size_t, std::size_t>{2, 3}).schmidt_number() == 1);
}

TEST_CASE("von Neumann entropy", "[state]") {
  CHECK_THAT(von_neumann_entropy(DensityOperator(StateVector::polarization(0.7))), WithinAbs(0.0, 1e-12));
  CHECK_THAT(von_neumann_entropy(DensityOperator::maximally_mixed(2)), WithinAbs(1.0, 1e-12));
  CHECK_THAT(von_neumann_entropy(DensityOperator::maximally_mixed(5)), WithinAbs(std::log2(5.0), 1e-12));
  const double c = std::pow(std::cos(std::numbers::pi / 8.0), 2);
  CHECK_THAT(von_neumann_entropy(DensityOperator::diagonal({c, 1.0 - c})), WithinAbs(0.6008, 1e-4));
  CHECK_THAT(von_neumann_entropy(DensityOperator::maximally_mixed(2), LogBase::nats), WithinAbs(std::log(2.0), 1e-12));
}

TEST_CASE("fidelity, overlap, trace distance, angle", "[state]") {
  const StateVector h = StateVector::polarization(0.0), d = StateVector::polarization(std::numbers::pi / 4.0);
  const StateVector v = StateVector::polarization(std::numbers::pi / 2.0);
  const DensityOperator rh(h), rd(d), rv(v);
  CHECK_THAT(fidelity(rh, rh), WithinAbs(1.0, 1e-12));
  CHECK_THAT(fidelity(rh, rv), WithinAbs(0.0, 1e-12));
  CHECK_THAT(fidelity(rh, rd), WithinAbs(0.5, 1e-12));
  CHECK_THAT(statistical_overlap(rh, rd), WithinAbs(0.70711, 1e-5));
  CHECK_THAT(fidelity(h, d), WithinAbs(0.5, 1e-12));
  CHECK_THAT(trace_distance(rh, rh), WithinAbs(0.0, 1e-12));
  CHECK_THAT(trace_distance(rh, rv), WithinAbs(2.0, 1e-12));
  CHECK_THAT(hilbert_angle(h, h), WithinAbs(0.0, 1e-7));
  CHECK_THAT(hilbert_angle(h, v), WithinAbs(std::numbers::pi / 2.0, 1e-12));
  CHECK_THAT(hilbert_angle(h, d), WithinAbs(std::numbers::pi / 4.0, 1e-12));
  CHECK(same_ray(h, StateVector(cplx(0, 1) * h.amps())));
  CHECK_THROWS_AS(fidelity(rh, DensityOperator::maximally_mixed(3)), validation_error);

  CounterRng rng(15);
  for (int i = 0; i < 50; ++i) {
    const auto a = random::density(rng, 3), b = random::density(rng, 3), c = random::density(rng, 3);
    CHECK(trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-12);
    CHECK_THAT(fidelity(a, b), WithinAbs(fidelity(b, a), 1e-9));
    const double f = fidelity(a, b);
    CHECK(f >= -1e-12);
    CHECK(f <= 1.0 + 1e-12);
  }
  const auto a = random::state_vector(rng, 3), b = random::state_vector(rng, 3);
  CHECK_THAT(fidelity(DensityOperator(a), DensityOperator(b)), WithinAbs(std::norm(a.amps().dot(b.amps())), 1e-10));
}
