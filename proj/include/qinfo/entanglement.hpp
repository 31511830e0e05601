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

// Bell basis, pure-state entanglement, Werner states, pair operations and
// CHSH correlations.

#pragma once

#include "qinfo/core.hpp"
#include "qinfo/probability.hpp"
#include "qinfo/rng.hpp"
#include "qinfo/state.hpp"

#include <array>
#include <variant>

namespace qinfo {

/// Bell state label. Amplitude bit: psi = 0, phi = 1. Phase bit: + = 0, - = 1.
struct BellLabel {
  int amplitude_bit = 1;
  int phase_bit = 0;

  friend bool operator==(const BellLabel&, const BellLabel&) = default;

  /// Bell-basis index: phi+ 0, psi+ 1, phi- 2, psi- 3.
  std::size_t index() const { return std::size_t(2 * phase_bit + (1 - amplitude_bit)); }
  static BellLabel from_index(std::size_t i) {
    detail::require(i < 4, "Bell index out of range");
    return {1 - int(i % 2), int(i / 2)};
  }

  std::string name() const {
    return std::string(amplitude_bit ? "phi" : "psi") + (phase_bit ? "_minus" : "_plus");
  }

  static BellLabel parse(const std::string& s) {
    for (std::size_t i = 0; i < 4; ++i)
      if (from_index(i).name() == s) return from_index(i);
    throw validation_error("unknown Bell label '" + s + "' (expected phi_plus, phi_minus, psi_plus or psi_minus)");
  }
};

inline constexpr BellLabel phi_plus{1, 0};
inline constexpr BellLabel phi_minus{1, 1};
inline constexpr BellLabel psi_plus{0, 0};
inline constexpr BellLabel psi_minus{0, 1};

inline StateVector bell_state(const BellLabel& label) {
  const double r = 1.0 / std::sqrt(2.0);
  const double sign = label.phase_bit ? -1.0 : 1.0;
  Vector v = Vector::Zero(4);
  if (label.amplitude_bit) {
    v(0) = r;
    v(3) = sign * r;
  } else {
    v(1) = r;
    v(2) = sign * r;
  }
  return StateVector(v, {2, 2});
}

/// Columns are phi+, psi+, phi-, psi- in `BellLabel::index` order.
inline Matrix bell_basis() {
  Matrix b{4, 4};
  for (std::size_t i = 0; i < 4; ++i) b.col(Eigen::Index(i)) = bell_state(BellLabel::from_index(i)).amps();
  return b;
}

/// The Bell label of `psi` if it is a Bell state up to global phase.
inline std::optional<BellLabel> classify_bell(const StateVector& psi, double tolerance = 1e-9) {
  detail::require(psi.dim() == 4, "Bell classification needs a two-qubit state");
  for (std::size_t i = 0; i < 4; ++i) {
    const BellLabel l = BellLabel::from_index(i);
    if (fidelity(bell_state(l), psi) > 1.0 - tolerance) return l;
  }
  return std::nullopt;
}

/// Weights <nu|rho|nu> in `BellLabel::index` order.
inline std::array<double, 4> bell_weights(const DensityOperator& rho) {
  detail::require(rho.dim() == 4, "Bell weights need a two-qubit state");
  std::array<double, 4> w{};
  for (std::size_t i = 0; i < 4; ++i) {
    const Vector v = bell_state(BellLabel::from_index(i)).amps();
    w[i] = std::max(0.0, v.dot(rho.matrix() * v).real());
  }
  return w;
}

// ---------------------------------------------------------------------------
// Pure-state entanglement

/// E = H(Schmidt weights) = S(rho_A).
inline double entanglement_entropy(const StateVector& psi,
                                   std::optional<std::pair<std::size_t, std::size_t>> split = std::nullopt,
                                   LogBase base = LogBase::bits) {
  return shannon_entropy(Distribution::normalized(schmidt_decompose(psi, split).weights()), base);
}

/// Product state test: every Schmidt weight after the first is below 1e-9.
inline bool is_separable_pure(const StateVector& psi,
                              std::optional<std::pair<std::size_t, std::size_t>> split = std::nullopt) {
  const auto w = schmidt_decompose(psi, split).weights();
  return w.size() <= 1 || w[1] <= 1e-9;
}

// ---------------------------------------------------------------------------
// Werner states and twirling

/// W_F = F |phi+><phi+| + (1-F)/3 (remaining Bell projectors).
inline DensityOperator werner_density(double f) {
  detail::require(f >= 0.0 && f <= 1.0, "Werner fidelity must lie in [0, 1]");
  Matrix m = Matrix::Zero(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const double w = i == phi_plus.index() ? f : (1.0 - f) / 3.0;
    m += w * projector(bell_state(BellLabel::from_index(i)).amps());
  }
  return DensityOperator(m, {2, 2});
}

inline double fidelity_to_phi_plus(const DensityOperator& rho) { return bell_weights(rho)[phi_plus.index()]; }

enum class Axis { x, y, z };

inline Matrix pauli_for(Axis a) {
  switch (a) {
    case Axis::x: return pauli::X();
    case Axis::y: return pauli::Y();
    case Axis::z: return pauli::Z();
  }
  throw std::logic_error("bad axis");
}

/// pi/2 rotation (I - i sigma)/sqrt(2).
inline Matrix half_pi_rotation(Axis a) { return (pauli::I() - cplx(0, 1) * pauli_for(a)) / std::sqrt(2.0); }

namespace detail {

// Operator acting as `op` on the listed qubits (qubit 0 most significant) of
// an n-qubit register.
inline Matrix on_qubits(const Matrix& op, std::span<const std::size_t> targets, std::size_t n) {
  const std::size_t dim = std::size_t(1) << n;
  std::size_t mask = 0;
  for (std::size_t t : targets) mask |= std::size_t(1) << (n - 1 - t);
  auto sub = [&](std::size_t idx) {
    std::size_t s = 0;
    for (std::size_t t : targets) s = (s << 1) | ((idx >> (n - 1 - t)) & 1U);
    return Eigen::Index(s);
  };
  Matrix out = Matrix::Zero(Eigen::Index(dim), Eigen::Index(dim));
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      if ((r & ~mask) == (c & ~mask)) out(Eigen::Index(r), Eigen::Index(c)) = op(sub(r), sub(c));
  return out;
}

inline Matrix cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

// Canonical representative of U modulo global phase.
inline Matrix strip_phase(const Matrix& u) {
  Eigen::Index r = 0, c = 0;
  u.cwiseAbs().maxCoeff(&r, &c);
  return u * (std::abs(u(r, c)) / u(r, c));
}

}  // namespace detail

struct Unilateral {
  Axis axis;  ///< sigma on Alice's qubit
};
struct Bilateral {
  Axis axis;  ///< the same pi/2 rotation on both qubits
};
/// Pairs AB (source) and CD (target) in qubit order A, B, C, D; CNOTs A->C
/// and B->D.
struct BilateralCnot {};

using PairOp = std::variant<Unilateral, Bilateral, BilateralCnot>;

inline std::string to_string(const PairOp& op) {
  static const char* axes[] = {"x", "y", "z"};
  return std::visit(
      [](const auto& o) -> std::string {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Unilateral>) return std::string("sigma_") + axes[int(o.axis)];
        else if constexpr (std::is_same_v<T, Bilateral>) return std::string("B_") + axes[int(o.axis)];
        else return "BXOR";
      },
      op);
}

inline Matrix pair_op_unitary(const PairOp& op) {
  return std::visit(
      [](const auto& o) -> Matrix {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Unilateral>) {
          return kron(pauli_for(o.axis), pauli::I());
        } else if constexpr (std::is_same_v<T, Bilateral>) {
          const Matrix r = half_pi_rotation(o.axis);
          return kron(r, r);
        } else {
          const std::array<std::size_t, 2> ac{0, 2}, bd{1, 3};
          return detail::on_qubits(detail::cnot(), bd, 4) * detail::on_qubits(detail::cnot(), ac, 4);
        }
      },
      op);
}

inline DensityOperator apply_pair_op(const DensityOperator& rho, const PairOp& op) {
  const Matrix u = pair_op_unitary(op);
  detail::require(rho.dim() == std::size_t(u.rows()),
                  std::holds_alternative<BilateralCnot>(op) ? "bilateral CNOT needs two pairs (16-dim state)"
                                                            : "pair operation needs a two-qubit state");
  return DensityOperator::normalized(u * rho.matrix() * u.adjoint(), rho.dims());
}

inline StateVector apply_pair_op(const StateVector& psi, const PairOp& op) {
  const Matrix u = pair_op_unitary(op);
  detail::require(psi.dim() == std::size_t(u.rows()), "pair operation dimension mismatch");
  return StateVector::normalized(u * psi.amps(), psi.dims());
}

/// The 24 single-qubit rotations generated by the pi/2 rotations about x, y
/// and z, modulo global phase.
inline const std::vector<Matrix>& rotation_group() {
  static const std::vector<Matrix> group = [] {
    std::vector<Matrix> g{pauli::I()};
    const std::array<Matrix, 3> gens{half_pi_rotation(Axis::x), half_pi_rotation(Axis::y), half_pi_rotation(Axis::z)};
    for (std::size_t i = 0; i < g.size(); ++i)
      for (const auto& gen : gens) {
        const Matrix cand = detail::strip_phase(gen * g[i]);
        const bool seen = std::any_of(g.begin(), g.end(), [&](const Matrix& h) { return (h - cand).norm() < 1e-9; });
        if (!seen) g.push_back(cand);
      }
    if (g.size() != 24) throw std::logic_error("rotation group has unexpected order");
    return g;
  }();
  return group;
}

/// Twirl element k: bilateral rotation U (x) U conjugated by Alice's sigma_y,
/// which keeps phi+ as the invariant state.
inline Matrix twirl_unitary(std::size_t k) {
  const Matrix& u = rotation_group().at(k);
  return kron(pauli::Y() * u * pauli::Y(), u);
}

struct ExactTwirl {};
struct MonteCarloTwirl {
  std::uint64_t seed = 1;
  std::size_t samples = 100000;
};
using TwirlMode = std::variant<ExactTwirl, MonteCarloTwirl>;

/// Brings a two-qubit state to Werner form W_F with F = <phi+|rho|phi+>.
inline DensityOperator twirl(const DensityOperator& rho, const TwirlMode& mode = ExactTwirl{}) {
  detail::require(rho.dim() == 4, "twirl needs a two-qubit state");
  if (std::holds_alternative<ExactTwirl>(mode)) return werner_density(std::clamp(fidelity_to_phi_plus(rho), 0.0, 1.0));
  const auto& mc = std::get<MonteCarloTwirl>(mode);
  detail::require(mc.samples > 0, "twirl needs at least one sample");
  std::array<std::size_t, 24> counts{};
  for (std::size_t s = 0; s < mc.samples; ++s) ++counts[CounterRng(mc.seed, s).below(24)];
  Matrix acc = Matrix::Zero(4, 4);
  for (std::size_t k = 0; k < 24; ++k) {
    if (counts[k] == 0) continue;
    const Matrix u = twirl_unitary(k);
    acc += double(counts[k]) * (u * rho.matrix() * u.adjoint());
  }
  return DensityOperator::normalized(acc / double(mc.samples), {2, 2});
}

// ---------------------------------------------------------------------------
// CHSH

using Axis3 = Eigen::Vector3d;

/// Axes 0 and 2 of each party in the S = E(0,0) - E(0,2) + E(2,0) + E(2,2)
/// combination; stored as {axis 0, axis 2}.
struct ChshSetting {
  std::array<Axis3, 2> alice;
  std::array<Axis3, 2> bob;

  ChshSetting(std::array<Axis3, 2> a, std::array<Axis3, 2> b) : alice(a), bob(b) {
    for (const auto& v : alice) detail::require(std::abs(v.norm() - 1.0) <= 1e-10, "CHSH axes must be unit vectors");
    for (const auto& v : bob) detail::require(std::abs(v.norm() - 1.0) <= 1e-10, "CHSH axes must be unit vectors");
  }
};

/// Bloch vector in the x-z plane at angle `deg` from the x axis.
inline Axis3 plane_axis(double deg) {
  const double t = deg * std::numbers::pi / 180.0;
  return {std::cos(t), 0.0, std::sin(t)};
}

/// Three bases per party: Alice at 90, 45, 0 degrees and Bob at 45, 0, -45.
struct E91Axes {
  std::array<Axis3, 3> alice{plane_axis(90), plane_axis(45), plane_axis(0)};
  std::array<Axis3, 3> bob{plane_axis(45), plane_axis(0), plane_axis(-45)};

  ChshSetting chsh() const { return ChshSetting({alice[0], alice[2]}, {bob[0], bob[2]}); }
};

/// Projector onto the +1 (s = +1) or -1 eigenspace of n . sigma.
inline Matrix spin_projector(const Axis3& n, int s) {
  const Matrix ns = n.x() * pauli::X() + n.y() * pauli::Y() + n.z() * pauli::Z();
  return 0.5 * (pauli::I() + double(s) * ns);
}

/// E = P++ + P-- - P+- - P-+ from Born probabilities.
inline double correlation(const DensityOperator& rho, const Axis3& a, const Axis3& b) {
  detail::require(rho.dim() == 4, "correlation needs a two-qubit state");
  double e = 0.0;
  for (int s : {1, -1})
    for (int t : {1, -1}) {
      const double p = (kron(spin_projector(a, s), spin_projector(b, t)) * rho.matrix()).trace().real();
      e += double(s * t) * p;
    }
  return e;
}

inline double chsh_value(const DensityOperator& rho, const ChshSetting& s) {
  const double v = correlation(rho, s.alice[0], s.bob[0]) - correlation(rho, s.alice[0], s.bob[1]) +
                   correlation(rho, s.alice[1], s.bob[0]) + correlation(rho, s.alice[1], s.bob[1]);
  if (std::abs(v) > 2.0 * std::numbers::sqrt2 + 1e-10) throw std::logic_error("CHSH value exceeds the Tsirelson bound");
  return v;
}

/// Smallest Werner fidelity with |S| > 2 at `s`, by bisection on [1/4, 1].
/// Returns nullopt when W_1 itself does not exceed 2.
inline std::optional<double> werner_chsh_threshold(const ChshSetting& s, double tolerance = 1e-12) {
  auto excess = [&](double f) { return std::abs(chsh_value(werner_density(f), s)) - 2.0; };
  double lo = 0.25, hi = 1.0;
  if (excess(hi) <= 0.0) return std::nullopt;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace qinfo
