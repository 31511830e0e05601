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
#include "qinfo/entanglement.hpp"
#include "qinfo/random.hpp"

using Catch::Matchers::WithinAbs;
using namespace qinfo;

namespace {

const double r2 = 1.0 / std::sqrt(2.0);
const cplx im{0.0, 1.0};

Matrix mat2(cplx a, cplx b, cplx c, cplx d) {
  Matrix m{2, 2};
  m << a, b, c, d;
  return m;
}

Matrix oracle_pauli(int axis) {
  if (axis == 0) return mat2(0, 1, 1, 0);
  if (axis == 1) return mat2(0, -im, im, 0);
  return mat2(1, 0, 0, -1);
}

Matrix oracle_kron(const Matrix& a, const Matrix& b) {
  Matrix out{a.rows() * b.rows(), a.cols() * b.cols()};
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Bell vectors in index order phi+, psi+, phi-, psi-.
Vector oracle_bell(int k) {
  Vector v = Vector::Zero(4);
  const double s = k >= 2 ? -1.0 : 1.0;
  if (k % 2 == 0) {
    v(0) = r2;
    v(3) = s * r2;
  } else {
    v(1) = r2;
    v(2) = s * r2;
  }
  return v;
}

int oracle_classify(const Vector& v) {
  for (int k = 0; k < 4; ++k)
    if (std::abs(std::abs(oracle_bell(k).dot(v)) - 1.0) < 1e-9) return k;
  return -1;
}

// Four-qubit permutation for CNOT A->C and B->D; bit 3 is qubit A.
Matrix oracle_bxor() {
  Matrix u = Matrix::Zero(16, 16);
  for (int x = 0; x < 16; ++x) {
    const int a = (x >> 3) & 1, b = (x >> 2) & 1, c = (x >> 1) & 1, d = x & 1;
    const int y = (a << 3) | (b << 2) | ((c ^ a) << 1) | (d ^ b);
    u(y, x) = 1.0;
  }
  return u;
}

const char* axis_name(int a) { return a == 0 ? "x" : a == 1 ? "y" : "z"; }

}  // namespace

TEST_CASE("Bell states are orthonormal with maximally mixed halves", "[entanglement]") {
  const Matrix b = bell_basis();
  CHECK((b.adjoint() * b - identity(4)).norm() < 1e-12);
  for (std::size_t k = 0; k < 4; ++k) {
    const BellLabel l = BellLabel::from_index(k);
    CHECK(l.index() == k);
    CHECK(BellLabel::parse(l.name()) == l);
    CHECK((bell_state(l).amps() - oracle_bell(int(k))).norm() < 1e-12);
    const DensityOperator rho(bell_state(l));
    CHECK((partial_trace(rho, 0).matrix() - identity(2) / 2.0).norm() < 1e-12);
    CHECK((partial_trace(rho, 1).matrix() - identity(2) / 2.0).norm() < 1e-12);
    CHECK(classify_bell(bell_state(l)) == l);
  }
  CHECK(phi_plus.name() == "phi_plus");
  CHECK(psi_minus.name() == "psi_minus");
  CHECK_THROWS_AS(BellLabel::parse("phi"), validation_error);
  CHECK_FALSE(classify_bell(tensor(StateVector::basis(2, 0), StateVector::basis(2, 0))).has_value());
}

TEST_CASE("Pure-state entanglement entropy", "[entanglement]") {
  for (std::size_t k = 0; k < 4; ++k)
    CHECK_THAT(entanglement_entropy(bell_state(BellLabel::from_index(k))), WithinAbs(1.0, 1e-12));
  CHECK_THAT(entanglement_entropy(bell_state(phi_plus), std::nullopt, LogBase::nats),
             WithinAbs(std::numbers::ln2, 1e-12));

  const StateVector product = tensor(StateVector::polarization(0.3), StateVector::polarization(1.1));
  CHECK_THAT(entanglement_entropy(product), WithinAbs(0.0, 1e-12));
  CHECK(is_separable_pure(product));
  CHECK_FALSE(is_separable_pure(bell_state(psi_minus)));

  Vector v = Vector::Zero(4);
  v(0) = std::sqrt(0.9);
  v(3) = std::sqrt(0.1);
  const StateVector partial(v, {2, 2});
  const double h = -0.9 * std::log2(0.9) - 0.1 * std::log2(0.1);
  CHECK_THAT(entanglement_entropy(partial), WithinAbs(h, 1e-12));
  CHECK_THAT(entanglement_entropy(partial), WithinAbs(0.46900, 1e-5));

  CounterRng rng(7, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix u = oracle_kron(random::haar_unitary(rng, 2), random::haar_unitary(rng, 2));
    const StateVector moved = StateVector::normalized(u * partial.amps(), {2, 2});
    CHECK_THAT(entanglement_entropy(moved), WithinAbs(h, 1e-10));
  }

  // Qubit times qutrit split.
  const StateVector big = random::state_vector(rng, 6, {2, 3});
  const double e = entanglement_entropy(big);
  CHECK(e >= 0.0);
  CHECK(e <= 1.0 + 1e-12);
  CHECK_THAT(e, WithinAbs(von_neumann_entropy(partial_trace(DensityOperator(big), 0)), 1e-10));
}

TEST_CASE("Pair operations permute the Bell basis", "[entanglement]") {
  const Axis axes[] = {Axis::x, Axis::y, Axis::z};
  for (int a = 0; a < 3; ++a) {
    const Matrix uni = oracle_kron(oracle_pauli(a), identity(2));
    const Matrix rot = (identity(2) - im * oracle_pauli(a)) * r2;
    const Matrix bil = oracle_kron(rot, rot);
    for (int k = 0; k < 4; ++k) {
      const StateVector in = bell_state(BellLabel::from_index(std::size_t(k)));
      INFO("axis " << axis_name(a) << " input " << k);
      const int expect_uni = oracle_classify(uni * oracle_bell(k));
      const int expect_bil = oracle_classify(bil * oracle_bell(k));
      REQUIRE(expect_uni >= 0);
      REQUIRE(expect_bil >= 0);
      const auto got_uni = classify_bell(apply_pair_op(in, Unilateral{axes[a]}));
      const auto got_bil = classify_bell(apply_pair_op(in, Bilateral{axes[a]}));
      REQUIRE(got_uni.has_value());
      REQUIRE(got_bil.has_value());
      CHECK(int(got_uni->index()) == expect_uni);
      CHECK(int(got_bil->index()) == expect_bil);
    }
  }

  CHECK(classify_bell(apply_pair_op(bell_state(phi_plus), Unilateral{Axis::y})) == psi_minus);
  CHECK(classify_bell(apply_pair_op(bell_state(phi_plus), Bilateral{Axis::y})) == phi_plus);

  const Matrix bx = oracle_bxor();
  CHECK((pair_op_unitary(BilateralCnot{}) - bx).norm() < 1e-12);
  for (int s = 0; s < 4; ++s) {
    for (int t = 0; t < 4; ++t) {
      const StateVector in(oracle_kron(oracle_bell(s), oracle_bell(t)).col(0), {2, 2, 2, 2});
      const StateVector out = apply_pair_op(in, BilateralCnot{});
      // The output stays a product of Bell pairs; read each one off.
      int found = 0;
      for (int s2 = 0; s2 < 4; ++s2)
        for (int t2 = 0; t2 < 4; ++t2)
          if (std::abs(std::abs(oracle_kron(oracle_bell(s2), oracle_bell(t2)).col(0).dot(out.amps())) - 1.0) < 1e-9) {
            ++found;
            // Amplitude bits: target flips when source is psi. Phase bits: source flips when target is phi-.
            const int sa = s % 2, sp = s / 2, ta = t % 2, tp = t / 2;
            CHECK(s2 % 2 == sa);
            CHECK(t2 % 2 == (ta ^ sa));
            CHECK(s2 / 2 == (sp ^ tp));
            CHECK(t2 / 2 == tp);
          }
      CHECK(found == 1);
    }
  }
  // Source psi+, target phi+ gives psi+ on both pairs.
  const StateVector in = tensor(bell_state(psi_plus), bell_state(phi_plus));
  const StateVector expect = tensor(bell_state(psi_plus), bell_state(psi_plus));
  CHECK(same_ray(apply_pair_op(in, BilateralCnot{}), expect));

  CHECK_THROWS_AS(apply_pair_op(DensityOperator(bell_state(phi_plus)), BilateralCnot{}), validation_error);
  CHECK_THROWS_AS(apply_pair_op(DensityOperator::maximally_mixed(2), Unilateral{Axis::x}), validation_error);
  CHECK(to_string(PairOp{Bilateral{Axis::x}}) == "B_x");
  CHECK(to_string(PairOp{Unilateral{Axis::z}}) == "sigma_z");
  CHECK(to_string(PairOp{BilateralCnot{}}) == "BXOR");
}

TEST_CASE("Werner states", "[entanglement]") {
  CHECK((werner_density(1.0).matrix() - projector(oracle_bell(0))).norm() < 1e-12);
  CHECK((werner_density(0.25).matrix() - identity(4) / 4.0).norm() < 1e-12);
  const auto ev = clipped_spectrum(werner_density(0.7));
  REQUIRE(ev.size() == 4);
  std::vector<double> sorted(ev.begin(), ev.end());
  std::sort(sorted.begin(), sorted.end());
  CHECK_THAT(sorted[0], WithinAbs(0.1, 1e-12));
  CHECK_THAT(sorted[1], WithinAbs(0.1, 1e-12));
  CHECK_THAT(sorted[2], WithinAbs(0.1, 1e-12));
  CHECK_THAT(sorted[3], WithinAbs(0.7, 1e-12));
  for (double f : {0.0, 0.1, 0.25, 0.5, 0.7, 0.93, 1.0}) {
    CHECK_THAT(fidelity_to_phi_plus(werner_density(f)), WithinAbs(f, 1e-12));
    const auto w = bell_weights(werner_density(f));
    for (std::size_t k = 1; k < 4; ++k) CHECK_THAT(w[k], WithinAbs((1.0 - f) / 3.0, 1e-12));
  }
  CHECK_THROWS_AS(werner_density(-0.1), validation_error);
  CHECK_THROWS_AS(werner_density(1.1), validation_error);
}

TEST_CASE("Twirling produces Werner form", "[entanglement]") {
  CHECK(rotation_group().size() == 24);
  for (std::size_t k = 0; k < 24; ++k) {
    const Matrix u = twirl_unitary(k);
    CHECK((u.adjoint() * u - identity(4)).norm() < 1e-12);
    CHECK(std::abs(std::abs(oracle_bell(0).dot(u * oracle_bell(0))) - 1.0) < 1e-12);
    for (std::size_t j = 0; j < k; ++j) {
      const cplx ov = (rotation_group()[j].adjoint() * rotation_group()[k]).trace() / 2.0;
      CHECK(std::abs(ov) < 1.0 - 1e-6);
    }
  }

  // Exact group average from the listed unitaries agrees with the closed form.
  CounterRng rng(11, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityOperator rho = random::density(rng, 4, 0, {2, 2});
    Matrix avg = Matrix::Zero(4, 4);
    for (std::size_t k = 0; k < 24; ++k) avg += twirl_unitary(k) * rho.matrix() * twirl_unitary(k).adjoint();
    avg /= 24.0;
    const DensityOperator t = twirl(rho);
    CHECK((avg - t.matrix()).norm() < 1e-10);
    CHECK_THAT(fidelity_to_phi_plus(t), WithinAbs(fidelity_to_phi_plus(rho), 1e-12));
    CHECK((twirl(t).matrix() - t.matrix()).norm() < 1e-12);
    CHECK(von_neumann_entropy(t) >= von_neumann_entropy(rho) - 1e-10);
  }

  for (double f : {0.3, 0.7, 1.0}) CHECK((twirl(werner_density(f)).matrix() - werner_density(f).matrix()).norm() < 1e-12);
  CHECK_THAT(fidelity_to_phi_plus(twirl(DensityOperator(bell_state(psi_minus)))), WithinAbs(0.0, 1e-12));

  const DensityOperator rho = random::density(rng, 4, 2, {2, 2});
  const DensityOperator mc = twirl(rho, MonteCarloTwirl{5, 20000});
  CHECK((mc.matrix() - twirl(rho).matrix()).cwiseAbs().maxCoeff() < 1e-2);
  CHECK((twirl(rho, MonteCarloTwirl{5, 2000}).matrix() - twirl(rho, MonteCarloTwirl{5, 2000}).matrix()).norm() == 0.0);
  CHECK_THROWS_AS(twirl(rho, MonteCarloTwirl{5, 0}), validation_error);
  CHECK_THROWS_AS(twirl(DensityOperator::maximally_mixed(2)), validation_error);
}

TEST_CASE("CHSH values", "[entanglement]") {
  const ChshSetting e91 = E91Axes{}.chsh();
  CHECK_THAT(chsh_value(DensityOperator(bell_state(psi_minus)), e91), WithinAbs(-2.0 * std::numbers::sqrt2, 1e-12));
  CHECK_THAT(chsh_value(werner_density(0.7), e91), WithinAbs(0.6 * 2.0 * std::numbers::sqrt2, 1e-12));

  // Correlation oracle: E(a, b) = -a.b for the singlet.
  for (double da : {0.0, 30.0, 77.0})
    for (double db : {-45.0, 10.0, 90.0})
      CHECK_THAT(correlation(DensityOperator(bell_state(psi_minus)), plane_axis(da), plane_axis(db)),
                 WithinAbs(-std::cos((da - db) * std::numbers::pi / 180.0), 1e-12));

  CounterRng rng(3, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityOperator prod = tensor(random::density(rng, 2), random::density(rng, 2));
    CHECK(std::abs(chsh_value(prod, e91)) <= 2.0 + 1e-12);
  }

  const auto threshold = werner_chsh_threshold(e91);
  REQUIRE(threshold.has_value());
  const double expect = (1.0 + 3.0 / std::numbers::sqrt2) / 4.0;
  CHECK_THAT(*threshold, WithinAbs(expect, 1e-9));
  CHECK_THAT(*threshold, WithinAbs(0.78033, 1e-5));
  CHECK_THAT(std::abs(chsh_value(werner_density(*threshold), e91)), WithinAbs(2.0, 1e-8));

  // Axes that cannot beat the classical bound report no threshold.
  const ChshSetting flat({plane_axis(0), plane_axis(0)}, {plane_axis(0), plane_axis(0)});
  CHECK_FALSE(werner_chsh_threshold(flat).has_value());

  CHECK_THROWS_AS(ChshSetting({Axis3{1, 1, 0}, plane_axis(0)}, {plane_axis(0), plane_axis(90)}), validation_error);
  CHECK((spin_projector(plane_axis(0), 1) + spin_projector(plane_axis(0), -1) - identity(2)).norm() < 1e-12);
}
