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
#include "qinfo/protocols.hpp"
#include "qinfo/random.hpp"

using Catch::Matchers::WithinAbs;
using namespace qinfo;

namespace {

StateVector bloch_state(double theta, double phi) {
  Vector v{2};
  v(0) = std::cos(theta / 2.0);
  v(1) = std::polar(std::sin(theta / 2.0), phi);
  return StateVector(v);
}

// Counts Bell-label pairs: source and target labels drawn from the Werner
// weights, bilateral XOR updates, keep when the target is a phi state.
std::pair<double, double> oracle_purify(double f) {
  const double w[4] = {f, (1 - f) / 3, (1 - f) / 3, (1 - f) / 3};
  double pass = 0.0, good = 0.0;
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t) {
      const int s_amp = s % 2, s_phase = s / 2, t_amp = t % 2, t_phase = t / 2;
      const int t_amp_out = t_amp ^ s_amp;
      const int s_out = 2 * (s_phase ^ t_phase) + s_amp;
      if (t_amp_out != 0) continue;
      pass += w[s] * w[t];
      if (s_out == 0) good += w[s] * w[t];
    }
  return {good / pass, pass};
}

}  // namespace

TEST_CASE("Teleportation restores the input for every outcome", "[protocols]") {
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 4; ++j) {
      const StateVector mu = bloch_state(std::numbers::pi * (i + 0.5) / 8.0, 2.0 * std::numbers::pi * j / 4.0);
      double total = 0.0;
      for (std::size_t k = 0; k < 4; ++k) {
        const BellLabel l = BellLabel::from_index(k);
        const TeleportResult r = teleport(mu, l);
        CHECK(r.outcome == l);
        CHECK_THAT(r.fidelity, WithinAbs(1.0, 1e-12));
        CHECK(same_ray(r.bob_after, mu));
        total += r.outcome_probs[k];
      }
      CHECK_THAT(total, WithinAbs(1.0, 1e-12));
      const DensityOperator avg = teleport_uncorrected_average(mu);
      CHECK((avg.matrix() - identity(2) / 2.0).norm() < 1e-12);
    }
  for (std::size_t k = 0; k < 4; ++k) {
    const TeleportResult r = teleport(bloch_state(1.0, 0.3), BellLabel::from_index(k));
    for (double q : r.outcome_probs) CHECK_THAT(q, WithinAbs(0.25, 1e-12));
  }
  const TeleportResult sampled = teleport(bloch_state(0.4, 1.0), std::nullopt, 99);
  CHECK(sampled.outcome == teleport(bloch_state(0.4, 1.0), std::nullopt, 99).outcome);
  CHECK_THAT(sampled.fidelity, WithinAbs(1.0, 1e-12));
  CHECK_THROWS_AS(teleport(StateVector::basis(3, 0), phi_plus), validation_error);
}

TEST_CASE("Superdense coding", "[protocols]") {
  for (unsigned m = 0; m < 4; ++m) {
    const SuperdenseResult r = superdense_send(m, 17);
    CHECK(r.decoded == m);
    CHECK_THAT(r.decode_probs[m], WithinAbs(1.0, 1e-12));
  }
  const auto mixed = DensityOperator::maximally_mixed(4).with_dims({2, 2});
  for (unsigned m = 0; m < 4; ++m) {
    const SuperdenseResult r = superdense_send(m, 17, mixed);
    for (double p : r.decode_probs) CHECK_THAT(p, WithinAbs(0.25, 1e-12));
  }
  const SuperdenseResult noisy = superdense_send(2, 3, werner_density(0.7));
  CHECK_THAT(noisy.decode_probs[2], WithinAbs(0.7, 1e-12));
  CHECK_THROWS_AS(superdense_send(4), validation_error);
}

TEST_CASE("Entanglement swapping yields phi+ after correction", "[protocols]") {
  double total = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const SwapResult r = entanglement_swap(BellLabel::from_index(k));
    CHECK_THAT(r.fidelity_to_phi_plus, WithinAbs(1.0, 1e-12));
    CHECK(same_ray(r.ad_after, bell_state(phi_plus)));
    CHECK(classify_bell(r.ad_before) == BellLabel::from_index(k));
    total += r.outcome_probs[k];
  }
  CHECK_THAT(total, WithinAbs(1.0, 1e-12));
}

TEST_CASE("BB84 error rates", "[protocols]") {
  Bb84Config cfg;
  cfg.rounds = 10000;
  cfg.seed = 2024;
  const QkdTranscript clean = bb84(cfg);
  CHECK(clean.qber == 0.0);
  CHECK(clean.sift_fraction >= 0.47);
  CHECK(clean.sift_fraction <= 0.53);
  CHECK_FALSE(clean.aborted);
  CHECK(clean.sifted_key_alice == clean.sifted_key_bob);
  CHECK(clean.rounds.size() == cfg.rounds);
  CHECK(clean.sifted_rounds.size() == clean.sifted_key_alice.size());
  for (std::size_t r : clean.sifted_rounds) CHECK(clean.rounds[r].alice_basis == clean.rounds[r].bob_basis);

  cfg.eve = InterceptResend{};
  const QkdTranscript tapped = bb84(cfg);
  CHECK(tapped.qber >= 0.235);
  CHECK(tapped.qber <= 0.265);
  CHECK(tapped.aborted);

  // Eve always in the first basis: errors only in second-basis rounds.
  cfg.eve = InterceptResend{EveBasisPolicy::z};
  const QkdTranscript fixed = bb84(cfg);
  std::size_t z_err = 0, x_err = 0, z_n = 0, x_n = 0;
  for (std::size_t r : fixed.sifted_rounds) {
    const auto& q = fixed.rounds[r];
    const bool err = q.alice_value != q.bob_outcome;
    (q.alice_basis == 0 ? z_n : x_n)++;
    if (err) (q.alice_basis == 0 ? z_err : x_err)++;
  }
  CHECK(z_err == 0);
  CHECK_THAT(double(x_err) / double(x_n), WithinAbs(0.5, 0.05));

  cfg.eve = NoEve{};
  CHECK(bb84(cfg).sifted_key_alice == clean.sifted_key_alice);
  cfg.rounds = 0;
  CHECK_THROWS_AS(bb84(cfg), validation_error);
}

TEST_CASE("E91 reproduces the quantum CHSH value", "[protocols]") {
  E91Config cfg;
  cfg.rounds = 100000;
  cfg.seed = 91;
  const QkdTranscript t = ekert91(cfg);
  REQUIRE(t.chsh_estimate.has_value());
  CHECK_THAT(*t.chsh_estimate, WithinAbs(-2.0 * std::numbers::sqrt2, 0.05));
  CHECK(t.qber == 0.0);
  CHECK_FALSE(t.aborted);
  CHECK_THAT(t.sift_fraction, WithinAbs(2.0 / 9.0, 0.01));

  cfg.rounds = 20000;
  cfg.eve = InterceptResend{};
  const QkdTranscript tapped = ekert91(cfg);
  REQUIRE(tapped.chsh_estimate.has_value());
  CHECK(std::abs(*tapped.chsh_estimate) < 2.0);
  CHECK(tapped.aborted);
}

TEST_CASE("Purification step", "[protocols]") {
  const PurifyStep s = purify_step_analytic(0.7);
  CHECK_THAT(s.f_next, WithinAbs(0.5 / 0.68, 1e-12));
  CHECK_THAT(s.f_next, WithinAbs(0.735294117647, 1e-12));
  CHECK_THAT(s.p_pass, WithinAbs(0.68, 1e-12));

  for (double f : {0.0, 0.2, 0.25, 0.4, 0.5, 0.6, 0.7, 0.85, 0.99, 1.0}) {
    const auto [of, op] = oracle_purify(f);
    const PurifyStep a = purify_step_analytic(f);
    const PurifyExact e = purify_step_exact(f);
    CHECK_THAT(a.f_next, WithinAbs(of, 1e-12));
    CHECK_THAT(a.p_pass, WithinAbs(op, 1e-12));
    CHECK_THAT(e.f_next, WithinAbs(of, 1e-10));
    CHECK_THAT(e.p_pass, WithinAbs(op, 1e-10));
    if (f > 0.5 && f < 1.0) CHECK(a.f_next > f);
  }
  CHECK_THAT(purify_step_analytic(0.25).f_next, WithinAbs(0.25, 1e-12));
  CHECK_THAT(purify_step_analytic(1.0).f_next, WithinAbs(1.0, 1e-12));

  const PurifySample sim = purify_step_simulated(0.7, 100000, 8);
  const double couples = 50000.0;
  CHECK(std::abs(sim.p_pass - 0.68) <= 5.0 * std::sqrt(0.68 * 0.32 / couples));
  const double sd = std::sqrt(s.f_next * (1.0 - s.f_next) / double(sim.pairs_out));
  CHECK(std::abs(sim.f_next - s.f_next) <= 5.0 * sd);
  CHECK_THROWS_AS(purify_step_simulated(0.7, 7, 1), validation_error);

  const PurificationRun run = purify(0.7, 5, AnalyticPurification{});
  REQUIRE(run.rounds.size() == 5);
  for (std::size_t r = 1; r < run.rounds.size(); ++r) {
    CHECK(run.rounds[r].f > run.rounds[r - 1].f);
    CHECK_THAT(run.rounds[r].f, WithinAbs(run.rounds[r - 1].f_next, 1e-15));
  }
  const PurificationRun a = purify(0.75, 2, SimulatedPurification{42, 4000});
  const PurificationRun b = purify(0.75, 2, SimulatedPurification{42, 4000});
  REQUIRE(a.rounds.size() == b.rounds.size());
  for (std::size_t r = 0; r < a.rounds.size(); ++r) CHECK(a.rounds[r].f_next == b.rounds[r].f_next);
  CHECK_THROWS_AS(purify(1.5, 1, AnalyticPurification{}), validation_error);
}
