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

// Seeded simulations of key distribution, teleportation, superdense coding,
// entanglement swapping and entanglement purification.

#pragma once

#include "qinfo/core.hpp"
#include "qinfo/dynamics.hpp"
#include "qinfo/entanglement.hpp"
#include "qinfo/rng.hpp"
#include "qinfo/state.hpp"

#include <variant>

namespace qinfo {

// ---------------------------------------------------------------------------
// Eavesdroppers

struct NoEve {};

enum class EveBasisPolicy { random, z, x };

/// Eve measures the flying qubit and resends her outcome state.
struct InterceptResend {
  EveBasisPolicy policy = EveBasisPolicy::random;
};

/// An arbitrary qubit channel applied to the flying qubit.
struct KrausAttack {
  KrausChannel channel;
};

using EveStrategy = std::variant<NoEve, InterceptResend, KrausAttack>;

inline EveBasisPolicy parse_eve_basis_policy(const std::string& s) {
  if (s == "random") return EveBasisPolicy::random;
  if (s == "z") return EveBasisPolicy::z;
  if (s == "x") return EveBasisPolicy::x;
  throw validation_error("unknown intercept basis policy '" + s + "' (expected random, z or x)");
}

namespace detail {
inline void require_qubit_attack(const EveStrategy& eve) {
  if (const auto* k = std::get_if<KrausAttack>(&eve))
    require(k->channel.input_dim() == 2 && k->channel.output_dim() == 2, "Kraus attack must map a qubit to a qubit");
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Transcripts

struct QkdRound {
  int alice_basis = 0;
  int alice_value = 0;  ///< prepared bit (BB84) or Alice's outcome bit (E91)
  int bob_basis = 0;
  int bob_outcome = 0;  ///< Bob's outcome bit; for E91, 0 means "+"
  std::string eve_action = "none";
};

struct QkdTranscript {
  std::vector<QkdRound> rounds;
  std::vector<std::size_t> sifted_rounds;
  std::vector<int> sifted_key_alice;
  std::vector<int> sifted_key_bob;
  double qber = 0.0;           ///< mismatch fraction on sifted bits (0 when nothing was sifted)
  double sift_fraction = 0.0;  ///< sifted rounds / rounds
  std::optional<double> chsh_estimate;  ///< E91 only
  bool aborted = false;
};

// ---------------------------------------------------------------------------
// BB84

struct Bb84Config {
  std::size_t rounds = 1000;
  std::uint64_t seed = 1;
  EveStrategy eve = NoEve{};
  double qber_threshold = 0.11;  ///< abort when the sifted error rate exceeds this
  double second_basis_angle = std::numbers::pi / 4.0;  ///< polarisation angle of the second basis' 0 state
};

/// Alice prepares polarisation states from random basis/value bits, Bob measures
/// in a random basis, and the matched-basis rounds form the sifted key. Round r
/// draws from stream r in a fixed order: Alice basis, Alice value, Eve basis,
/// Eve outcome, Bob basis, Bob outcome.
inline QkdTranscript bb84(const Bb84Config& cfg) {
  detail::require(cfg.rounds >= 1, "BB84 needs at least one round");
  detail::require_qubit_attack(cfg.eve);
  auto basis_state = [&](int basis, int value) {
    return StateVector::polarization(basis * cfg.second_basis_angle + value * std::numbers::pi / 2.0);
  };
  auto prob_zero = [&](const DensityOperator& rho, int basis) {
    const Vector v = basis_state(basis, 0).amps();
    return std::clamp(v.dot(rho.matrix() * v).real(), 0.0, 1.0);
  };

  QkdTranscript t;
  t.rounds.reserve(cfg.rounds);
  for (std::size_t r = 0; r < cfg.rounds; ++r) {
    CounterRng rng(cfg.seed, r);
    QkdRound round;
    round.alice_basis = int(rng.bit());
    round.alice_value = int(rng.bit());
    DensityOperator flying(basis_state(round.alice_basis, round.alice_value));

    if (const auto* ir = std::get_if<InterceptResend>(&cfg.eve)) {
      const std::uint64_t coin = rng.bit();
      const int eb = ir->policy == EveBasisPolicy::random ? int(coin) : (ir->policy == EveBasisPolicy::z ? 0 : 1);
      const int eo = rng.uniform() < prob_zero(flying, eb) ? 0 : 1;
      flying = DensityOperator(basis_state(eb, eo));
      round.eve_action = std::string("measure_") + (eb == 0 ? "z" : "x") + "=" + std::to_string(eo);
    } else if (const auto* ka = std::get_if<KrausAttack>(&cfg.eve)) {
      rng.bit();
      rng.uniform();
      flying = apply_channel(flying, ka->channel);
      round.eve_action = "kraus";
    } else {
      rng.bit();
      rng.uniform();
    }

    round.bob_basis = int(rng.bit());
    round.bob_outcome = rng.uniform() < prob_zero(flying, round.bob_basis) ? 0 : 1;
    if (round.bob_basis == round.alice_basis) {
      t.sifted_rounds.push_back(r);
      t.sifted_key_alice.push_back(round.alice_value);
      t.sifted_key_bob.push_back(round.bob_outcome);
    }
    t.rounds.push_back(std::move(round));
  }
  std::size_t errors = 0;
  for (std::size_t i = 0; i < t.sifted_key_alice.size(); ++i) errors += t.sifted_key_alice[i] != t.sifted_key_bob[i];
  t.qber = t.sifted_rounds.empty() ? 0.0 : double(errors) / double(t.sifted_rounds.size());
  t.sift_fraction = double(t.sifted_rounds.size()) / double(cfg.rounds);
  t.aborted = t.qber > cfg.qber_threshold;
  return t;
}

// ---------------------------------------------------------------------------
// E91

struct E91Config {
  std::size_t rounds = 1000;
  std::uint64_t seed = 1;
  EveStrategy eve = NoEve{};  ///< acts on Bob's half of each pair
  double qber_threshold = 0.11;
  double chsh_threshold = 2.0;  ///< abort when |S| does not exceed this
  E91Axes axes{};
};

/// Singlet pairs measured along three axes per party. Key bits come from the
/// (Alice 1, Bob 0) and (Alice 2, Bob 1) rounds, where outcomes are
/// anti-correlated; Bob's bit is complemented. S is estimated from rounds
/// with both bases in {0, 2}.
inline QkdTranscript ekert91(const E91Config& cfg) {
  detail::require(cfg.rounds >= 1, "E91 needs at least one round");
  detail::require_qubit_attack(cfg.eve);
  const DensityOperator singlet(bell_state(psi_minus));
  std::array<double, 9> corr_sum{};
  std::array<std::size_t, 9> corr_n{};

  QkdTranscript t;
  t.rounds.reserve(cfg.rounds);
  for (std::size_t r = 0; r < cfg.rounds; ++r) {
    CounterRng rng(cfg.seed, r);
    QkdRound round;
    round.alice_basis = int(rng.below(3));
    round.bob_basis = int(rng.below(3));
    const Axis3& a = cfg.axes.alice[std::size_t(round.alice_basis)];
    const Axis3& b = cfg.axes.bob[std::size_t(round.bob_basis)];

    Matrix pair = singlet.matrix();
    if (const auto* ir = std::get_if<InterceptResend>(&cfg.eve)) {
      const std::uint64_t coin = rng.bit();
      const bool use_z = ir->policy == EveBasisPolicy::random ? coin == 0 : ir->policy == EveBasisPolicy::z;
      const Axis3 axis = use_z ? plane_axis(90) : plane_axis(0);
      const Matrix p_plus = kron(pauli::I(), spin_projector(axis, 1));
      const Matrix p_minus = kron(pauli::I(), spin_projector(axis, -1));
      const double pp = std::clamp((p_plus * pair).trace().real(), 0.0, 1.0);
      const bool plus = rng.uniform() < pp;
      const Matrix& proj = plus ? p_plus : p_minus;
      pair = proj * pair * proj;
      pair /= pair.trace().real();
      round.eve_action = std::string("measure_") + (use_z ? "z" : "x") + "=" + (plus ? "+" : "-");
    } else if (const auto* ka = std::get_if<KrausAttack>(&cfg.eve)) {
      rng.bit();
      rng.uniform();
      std::vector<Matrix> lifted;
      for (const auto& k : ka->channel.operators()) lifted.push_back(kron(pauli::I(), k));
      pair = KrausChannel(lifted).apply(pair);
      round.eve_action = "kraus";
    } else {
      rng.bit();
      rng.uniform();
    }

    std::array<double, 4> probs{};
    for (int s = 0; s < 2; ++s)
      for (int u = 0; u < 2; ++u) {
        const Matrix proj = kron(spin_projector(a, s == 0 ? 1 : -1), spin_projector(b, u == 0 ? 1 : -1));
        probs[std::size_t(2 * s + u)] = std::max(0.0, (proj * pair).trace().real());
      }
    const std::size_t joint = rng.categorical(probs);
    round.alice_value = int(joint / 2);
    round.bob_outcome = int(joint % 2);

    const std::size_t ab = std::size_t(3 * round.alice_basis + round.bob_basis);
    corr_sum[ab] += round.alice_value == round.bob_outcome ? 1.0 : -1.0;
    ++corr_n[ab];
    const bool key_round = (round.alice_basis == 1 && round.bob_basis == 0) || (round.alice_basis == 2 && round.bob_basis == 1);
    if (key_round) {
      t.sifted_rounds.push_back(r);
      t.sifted_key_alice.push_back(round.alice_value);
      t.sifted_key_bob.push_back(1 - round.bob_outcome);
    }
    t.rounds.push_back(std::move(round));
  }
  std::size_t errors = 0;
  for (std::size_t i = 0; i < t.sifted_key_alice.size(); ++i) errors += t.sifted_key_alice[i] != t.sifted_key_bob[i];
  t.qber = t.sifted_rounds.empty() ? 0.0 : double(errors) / double(t.sifted_rounds.size());
  t.sift_fraction = double(t.sifted_rounds.size()) / double(cfg.rounds);

  auto e = [&](int i, int j) -> std::optional<double> {
    const std::size_t k = std::size_t(3 * i + j);
    if (corr_n[k] == 0) return std::nullopt;
    return corr_sum[k] / double(corr_n[k]);
  };
  const auto e00 = e(0, 0), e02 = e(0, 2), e20 = e(2, 0), e22 = e(2, 2);
  if (e00 && e02 && e20 && e22) t.chsh_estimate = *e00 - *e02 + *e20 + *e22;
  t.aborted = t.qber > cfg.qber_threshold || (t.chsh_estimate && std::abs(*t.chsh_estimate) <= cfg.chsh_threshold);
  return t;
}

// ---------------------------------------------------------------------------
// Teleportation

/// Pauli that maps Bob's post-measurement state back to mu.
inline Matrix teleport_correction(const BellLabel& outcome) {
  if (outcome == phi_plus) return pauli::I();
  if (outcome == phi_minus) return pauli::Z();
  if (outcome == psi_plus) return pauli::X();
  return pauli::Y();
}

struct TeleportResult {
  BellLabel outcome;
  std::array<double, 4> outcome_probs{};  ///< in `BellLabel::index` order
  StateVector bob_before;
  StateVector bob_after;
  double fidelity = 0.0;  ///< |<mu|bob_after>|^2
};

namespace detail {
// Bob's normalised state after outcome `l` on qubits (C, A) of |mu>_C |phi+>_AB.
inline std::pair<Vector, double> teleport_branch(const StateVector& mu, const BellLabel& l) {
  const Vector joint = kron(mu.amps(), bell_state(phi_plus).amps());
  const Vector nu = bell_state(l).amps();
  Vector bob = Vector::Zero(2);
  for (Eigen::Index ca = 0; ca < 4; ++ca)
    for (Eigen::Index b = 0; b < 2; ++b) bob(b) += std::conj(nu(ca)) * joint(2 * ca + b);
  const double p = bob.squaredNorm();
  return {bob / std::sqrt(p), p};
}
}  // namespace detail

/// Teleports qubit `mu` through a shared phi+ pair. With `fixed` set the Bell
/// outcome is forced; otherwise it is sampled from stream 0 of `seed`.
inline TeleportResult teleport(const StateVector& mu, std::optional<BellLabel> fixed, std::uint64_t seed = 0) {
  detail::require(mu.dim() == 2, "teleportation input must be a qubit");
  std::array<double, 4> probs{};
  for (std::size_t i = 0; i < 4; ++i) probs[i] = detail::teleport_branch(mu, BellLabel::from_index(i)).second;
  const BellLabel outcome = fixed ? *fixed : BellLabel::from_index(CounterRng(seed, 0).categorical(probs));
  const Vector before = detail::teleport_branch(mu, outcome).first;
  const StateVector after = StateVector::normalized(teleport_correction(outcome) * before);
  return {outcome, probs, StateVector(before), after, fidelity(mu, after)};
}

/// Bob's state averaged over outcomes when no correction is applied.
inline DensityOperator teleport_uncorrected_average(const StateVector& mu) {
  Matrix m = Matrix::Zero(2, 2);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto [bob, p] = detail::teleport_branch(mu, BellLabel::from_index(i));
    m += p * projector(bob);
  }
  return DensityOperator::normalized(m);
}

// ---------------------------------------------------------------------------
// Superdense coding

/// Alice's encoding unitary for message 0..3: I, sigma_x, sigma_y, sigma_z.
inline Matrix superdense_encoding(unsigned message) {
  switch (message) {
    case 0: return pauli::I();
    case 1: return pauli::X();
    case 2: return pauli::Y();
    case 3: return pauli::Z();
    default: throw validation_error("superdense message must be two bits (0..3)");
  }
}

/// Bell outcome decoding to a message: phi+ 0, psi+ 1, psi- 2, phi- 3.
inline unsigned superdense_decode(const BellLabel& l) {
  if (l == phi_plus) return 0;
  if (l == psi_plus) return 1;
  if (l == psi_minus) return 2;
  return 3;
}

struct SuperdenseResult {
  unsigned message = 0;
  std::array<double, 4> decode_probs{};  ///< Pr(decoded message = m)
  unsigned decoded = 0;                  ///< sampled from decode_probs
};

/// Alice encodes on her half of `shared` (phi+ by default) and Bob performs a
/// Bell measurement on both qubits.
inline SuperdenseResult superdense_send(unsigned message, std::uint64_t seed = 0,
                                        const std::optional<DensityOperator>& shared = std::nullopt) {
  const Matrix u = kron(superdense_encoding(message), pauli::I());
  const DensityOperator pair = shared ? *shared : DensityOperator(bell_state(phi_plus));
  detail::require(pair.dim() == 4, "superdense coding needs a two-qubit shared state");
  const DensityOperator sent = DensityOperator::normalized(u * pair.matrix() * u.adjoint());
  SuperdenseResult out;
  out.message = message;
  const auto w = bell_weights(sent);
  for (std::size_t i = 0; i < 4; ++i) out.decode_probs[superdense_decode(BellLabel::from_index(i))] += w[i];
  out.decoded = unsigned(CounterRng(seed, 0).categorical(out.decode_probs));
  return out;
}

// ---------------------------------------------------------------------------
// Entanglement swapping

/// Alice's Pauli taking the AD pair from `l` to phi+.
inline Matrix swap_correction(const BellLabel& l) {
  if (l == phi_plus) return pauli::I();
  if (l == psi_plus) return pauli::X();
  if (l == phi_minus) return pauli::Z();
  return pauli::Y();
}

struct SwapResult {
  BellLabel bc_outcome;
  std::array<double, 4> outcome_probs{};
  StateVector ad_before;
  StateVector ad_after;
  double fidelity_to_phi_plus = 0.0;
};

/// Pairs AB and CD start in phi+; a Bell measurement on BC projects AD onto
/// the same Bell state, which a Pauli on A turns into phi+.
inline SwapResult entanglement_swap(std::optional<BellLabel> fixed, std::uint64_t seed = 0) {
  const Vector abcd = kron(bell_state(phi_plus).amps(), bell_state(phi_plus).amps());
  auto branch = [&](const BellLabel& l) {
    const Vector nu = bell_state(l).amps();
    Vector ad = Vector::Zero(4);
    for (Eigen::Index a = 0; a < 2; ++a)
      for (Eigen::Index bc = 0; bc < 4; ++bc)
        for (Eigen::Index d = 0; d < 2; ++d) ad(2 * a + d) += std::conj(nu(bc)) * abcd(8 * a + 2 * bc + d);
    return ad;
  };
  SwapResult out{phi_plus, {}, StateVector::basis(4, 0), StateVector::basis(4, 0), 0.0};
  for (std::size_t i = 0; i < 4; ++i) out.outcome_probs[i] = branch(BellLabel::from_index(i)).squaredNorm();
  out.bc_outcome = fixed ? *fixed : BellLabel::from_index(CounterRng(seed, 0).categorical(out.outcome_probs));
  out.ad_before = StateVector::normalized(branch(out.bc_outcome), {2, 2});
  out.ad_after = StateVector::normalized(kron(swap_correction(out.bc_outcome), pauli::I()) * out.ad_before.amps(), {2, 2});
  out.fidelity_to_phi_plus = fidelity(bell_state(phi_plus), out.ad_after);
  return out;
}

// ---------------------------------------------------------------------------
// Entanglement purification

struct PurifyStep {
  double f_next = 0.0;
  double p_pass = 0.0;
};

/// One recursion step on W_F (x) W_F.
inline PurifyStep purify_step_analytic(double f) {
  detail::require(f >= 0.0 && f <= 1.0, "fidelity must lie in [0, 1]");
  const double g = 1.0 - f;
  const double p_pass = f * f + 2.0 / 3.0 * f * g + 5.0 / 9.0 * g * g;
  return {(f * f + g * g / 9.0) / p_pass, p_pass};
}

struct PurifyExact {
  double p_pass = 0.0;
  double f_next = 0.0;
  std::array<double, 4> target_outcome_probs{};  ///< (c, d) = 00, 01, 10, 11
  std::array<std::array<double, 4>, 4> source_bell_weights{};  ///< per target outcome, unnormalised
};

/// Density-matrix evaluation of one step: W_F (x) W_F, bilateral CNOT, local Z
/// measurements of the target qubits. A target whose two outcomes agree is in
/// a phi state; that pair is kept.
inline PurifyExact purify_step_exact(double f) {
  const DensityOperator w = werner_density(f);
  const DensityOperator after = apply_pair_op(tensor(w, w).with_dims({2, 2, 2, 2}), BilateralCnot{});
  PurifyExact out;
  double kept_good = 0.0;
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t d = 0; d < 2; ++d) {
      Vector cd = Vector::Zero(4);
      cd(Eigen::Index(2 * c + d)) = 1.0;
      const Matrix proj = kron(identity(4), projector(cd));
      const Matrix branch = proj * after.matrix() * proj;
      const std::array<std::size_t, 2> dims{4, 4};
      const std::array<std::size_t, 1> keep{0};
      const Matrix source = partial_trace_matrix(branch, dims, keep);
      const double p = std::max(0.0, source.trace().real());
      out.target_outcome_probs[2 * c + d] = p;
      for (std::size_t i = 0; i < 4; ++i) {
        const Vector v = bell_state(BellLabel::from_index(i)).amps();
        out.source_bell_weights[2 * c + d][i] = std::max(0.0, v.dot(source * v).real());
      }
      if (c == d) {
        out.p_pass += p;
        kept_good += out.source_bell_weights[2 * c + d][phi_plus.index()];
      }
    }
  out.f_next = out.p_pass > 0.0 ? kept_good / out.p_pass : 0.0;
  return out;
}

struct PurifySample {
  double f_next = 0.0;       ///< fraction of kept sources found in phi+
  double p_pass = 0.0;       ///< kept / attempted
  std::size_t pairs_in = 0;
  std::size_t pairs_out = 0;  ///< surviving sources
  std::size_t good_out = 0;   ///< surviving sources in phi+
};

/// Monte-Carlo step over `n_pairs` Werner pairs: each consecutive couple is
/// sampled from the exact joint distribution of target outcomes and source
/// Bell label. Couple k uses stream (stream_base + k).
inline PurifySample purify_step_simulated(double f, std::size_t n_pairs, std::uint64_t seed,
                                          std::uint64_t stream_base = 0) {
  detail::require(n_pairs % 2 == 0, "purification needs an even number of pairs");
  const PurifyExact ex = purify_step_exact(f);
  std::array<double, 16> joint{};
  for (std::size_t o = 0; o < 4; ++o)
    for (std::size_t i = 0; i < 4; ++i) joint[4 * o + i] = ex.source_bell_weights[o][i];
  PurifySample out;
  out.pairs_in = n_pairs;
  const std::size_t couples = n_pairs / 2;
  for (std::size_t k = 0; k < couples; ++k) {
    CounterRng rng(seed, stream_base + k);
    const std::size_t draw = rng.categorical(joint);
    const std::size_t o = draw / 4, label = draw % 4;
    if (o == 0 || o == 3) {
      ++out.pairs_out;
      if (label == phi_plus.index()) ++out.good_out;
    }
  }
  out.p_pass = couples ? double(out.pairs_out) / double(couples) : 0.0;
  out.f_next = out.pairs_out ? double(out.good_out) / double(out.pairs_out) : 0.0;
  return out;
}

struct PurificationRound {
  double f = 0.0;       ///< fidelity entering the round
  double p_pass = 0.0;
  double f_next = 0.0;
  double pairs_remaining = 0.0;  ///< expected (analytic) or counted (simulated) pairs after the round
};

struct AnalyticPurification {};
struct SimulatedPurification {
  std::uint64_t seed = 1;
  std::size_t pairs = 100000;
};
using PurificationMode = std::variant<AnalyticPurification, SimulatedPurification>;

struct PurificationRun {
  double initial_f = 0.0;
  std::vector<PurificationRound> rounds;
  PurificationMode mode;
};

/// Iterates the purification step. Simulated runs re-twirl the survivors to
/// W_F with F their empirical phi+ fraction; an odd leftover pair skips the
/// round and rejoins with its own sampled Bell label.
inline PurificationRun purify(double f0, std::size_t n_rounds, const PurificationMode& mode) {
  detail::require(f0 >= 0.0 && f0 <= 1.0, "fidelity must lie in [0, 1]");
  PurificationRun run{f0, {}, mode};
  double f = f0;
  if (std::holds_alternative<AnalyticPurification>(mode)) {
    double pairs = 1.0;
    for (std::size_t r = 0; r < n_rounds; ++r) {
      const PurifyStep s = purify_step_analytic(f);
      pairs *= s.p_pass / 2.0;
      run.rounds.push_back({f, s.p_pass, s.f_next, pairs});
      f = s.f_next;
    }
    return run;
  }
  const auto& sim = std::get<SimulatedPurification>(mode);
  std::size_t pairs = sim.pairs;
  for (std::size_t r = 0; r < n_rounds && pairs >= 2; ++r) {
    const std::uint64_t base = std::uint64_t(r) << 40;
    const std::size_t leftover = pairs % 2;
    const PurifySample s = purify_step_simulated(f, pairs - leftover, sim.seed, base);
    std::size_t good = s.good_out, total = s.pairs_out;
    if (leftover) {
      good += CounterRng(sim.seed, base | ((std::uint64_t(1) << 40) - 1)).uniform() < f ? 1 : 0;
      ++total;
    }
    const double f_next = total ? double(good) / double(total) : 0.0;
    run.rounds.push_back({f, s.p_pass, f_next, double(total)});
    f = f_next;
    pairs = total;
  }
  return run;
}

}  // namespace qinfo
