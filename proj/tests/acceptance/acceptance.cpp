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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qinfo/qinfo.hpp"

using namespace qinfo;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<void(Outcome&)> body;
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

void entropy_trio(Outcome& o) {
  std::vector<double> pocket{0.9};
  pocket.insert(pocket.end(), 100, 0.001);
  const double h1 = shannon_entropy(Distribution(pocket), LogBase::nats);
  const double h2 = shannon_entropy(Distribution::uniform(100), LogBase::nats);
  const double h3 = 0.9 * shannon_entropy(Distribution::point_mass(1, 0), LogBase::nats) +
                    0.1 * shannon_entropy(Distribution::uniform(100), LogBase::nats);
  o.detail << "H = " << h1 << ", " << h2 << ", " << h3 << " nats";
  o.require(near(h1, 0.7856, 1e-3), "0.7856");
  o.require(near(h2, 4.605, 1e-3), "4.605");
  o.require(near(h3, 0.4605, 1e-3), "0.4605");
}

void ternary_capacity(Outcome& o) {
  double worst = 0.0;
  for (int k = 0; k <= 5; ++k) {
    const double p = 0.1 * k;
    const double closed = channel_capacity_closed(Ternary{p}).capacity;
    const double numeric = channel_capacity_numeric(ternary_channel(p)).capacity;
    worst = std::max(worst, std::abs(closed - numeric));
  }
  const double c05 = channel_capacity_numeric(ternary_channel(0.5)).capacity;
  o.detail << "max |closed - numeric| = " << worst << ", C(0.5) = " << c05;
  o.require(worst <= 1e-6, "agreement to 1e-6");
  o.require(near(c05, 1.0, 1e-9), "C(0.5) = 1");
  o.require(near(channel_capacity_closed(Ternary{0.5}).capacity, 1.0, 1e-9), "closed C(0.5) = 1");
}

void holevo_example(Outcome& o) {
  const Ensemble e = horizontal_diagonal_ensemble();
  const double chi = holevo_chi(e);
  const AccessibleInfoResult r = accessible_information_search(e);
  o.detail << "chi = " << chi << ", J_lower = " << r.j_lower;
  o.require(near(chi, 0.6008, 5e-4), "chi = 0.6008");
  o.require(r.j_lower < chi, "J_lower < chi");
  o.require(r.j_lower > 0.35, "J_lower > 0.35");
}

void chsh(Outcome& o) {
  const double s = chsh_value(DensityOperator(bell_state(psi_minus)), E91Axes{}.chsh());
  E91Config cfg;
  cfg.rounds = 100000;
  cfg.seed = 1;
  const QkdTranscript t = ekert91(cfg);
  const double est = t.chsh_estimate.value_or(0.0);
  o.detail << "S exact = " << s << ", S Monte-Carlo = " << est;
  o.require(near(s, -2.0 * std::numbers::sqrt2, 1e-9), "exact -2 sqrt 2");
  o.require(t.chsh_estimate.has_value() && near(est, -2.0 * std::numbers::sqrt2, 0.05), "Monte-Carlo within 0.05");
}

void purification(Outcome& o) {
  const PurifyStep s = purify_step_analytic(0.7);
  o.detail << "F' = " << s.f_next << ", p_pass = " << s.p_pass;
  o.require(near(s.f_next, 0.5 / 0.68, 1e-12), "F' = 0.7352941...");
  o.require(near(s.p_pass, 0.68, 1e-12), "p_pass = 0.68");

  const std::size_t pairs = 100000;
  const PurifySample sim = purify_step_simulated(0.7, pairs, 1);
  const double couples = double(pairs / 2);
  const double sd_p = std::sqrt(s.p_pass * (1 - s.p_pass) / couples);
  const double sd_f = std::sqrt(s.f_next * (1 - s.f_next) / double(std::max<std::size_t>(sim.pairs_out, 1)));
  o.detail << ", simulated (" << sim.f_next << ", " << sim.p_pass << ")";
  o.require(std::abs(sim.p_pass - s.p_pass) <= 5 * sd_p, "simulated p_pass within 5 sigma");
  o.require(std::abs(sim.f_next - s.f_next) <= 5 * sd_f, "simulated F' within 5 sigma");

  o.require(near(purify_step_analytic(0.25).f_next, 0.25, 1e-12), "fixed point 1/4");
  o.require(near(purify_step_analytic(1.0).f_next, 1.0, 1e-12), "fixed point 1");
  bool monotone = true;
  for (int k = 1; k < 100; ++k) {
    const double f = 0.5 + 0.005 * k;
    if (!(purify_step_analytic(f).f_next > f)) monotone = false;
  }
  o.require(monotone, "F' > F on (1/2, 1)");
}

void teleport_family(Outcome& o) {
  double worst = 1.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 4; ++j) {
      Vector v{2};
      const double theta = std::numbers::pi * (i + 0.5) / 8.0, phi = 2.0 * std::numbers::pi * j / 4.0;
      v(0) = std::cos(theta / 2);
      v(1) = std::polar(std::sin(theta / 2), phi);
      const StateVector mu(v);
      for (std::size_t k = 0; k < 4; ++k) worst = std::min(worst, teleport(mu, BellLabel::from_index(k)).fidelity);
    }
  int decoded = 0;
  for (unsigned m = 0; m < 4; ++m) decoded += superdense_send(m, m).decoded == m;
  double swap_worst = 1.0;
  for (std::size_t k = 0; k < 4; ++k)
    swap_worst = std::min(swap_worst, entanglement_swap(BellLabel::from_index(k)).fidelity_to_phi_plus);
  o.detail << "min teleport fidelity = " << worst << ", superdense " << decoded << "/4, min swap fidelity = "
           << swap_worst;
  o.require(worst >= 1 - 1e-10, "teleport fidelity");
  o.require(decoded == 4, "superdense 4/4");
  o.require(swap_worst >= 1 - 1e-10, "swap to phi+");
}

void bb84_rates(Outcome& o) {
  Bb84Config cfg;
  cfg.rounds = 10000;
  cfg.seed = 1;
  const QkdTranscript clean = bb84(cfg);
  cfg.eve = InterceptResend{};
  const QkdTranscript tapped = bb84(cfg);
  o.detail << "QBER none = " << clean.qber << ", sift = " << clean.sift_fraction
           << ", QBER intercept = " << tapped.qber;
  o.require(clean.qber == 0.0, "QBER 0 without Eve");
  o.require(clean.sift_fraction >= 0.47 && clean.sift_fraction <= 0.53, "sift fraction");
  o.require(tapped.qber >= 0.235 && tapped.qber <= 0.265, "intercept QBER");
}

void schumacher(Outcome& o) {
  const DensityOperator rho = DensityOperator::diagonal({0.9, 0.1});
  const SignalSource src = SignalSource::eigenensemble(rho);
  const SchumacherResult typ = schumacher_roundtrip(src, 12, TypicalMode{0.1});
  o.detail << "typical: F = " << typ.avg_fidelity << " vs 1 - 2 eta = " << typ.lemma1_bound;
  o.require(typ.avg_fidelity > typ.lemma1_bound, "F > 1 - 2 eta");

  // Every rate on a grid strictly below S - delta must push F under 0.5.
  const double edge = typ.entropy_bits - 0.1;
  double worst = 0.0, worst_rate = 0.0;
  for (int k = 1; k <= 40; ++k) {
    const double r = edge * (1.0 - k / 40.0);
    const SchumacherResult low = schumacher_roundtrip(src, 12, TruncateMode{r});
    if (low.avg_fidelity > worst) {
      worst = low.avg_fidelity;
      worst_rate = r;
    }
  }
  o.detail << "; below S - delta: max F = " << worst << " at rate " << worst_rate;
  o.require(worst < 0.5, "F < 0.5 for rates below S - delta at n = 12");
}

void error_correction(Outcome& o) {
  const CodeSubspace code = CodeSubspace::repetition3();
  const QeccReport x = qecc_check(code, PauliErrorSet({"III", "XII", "IXI", "IIX"}));
  const QeccReport z = qecc_check(code, PauliErrorSet({"III", "ZII"}));
  double worst = 1.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double theta = std::numbers::pi * (i + 0.5) / 4.0, phi = 2.0 * std::numbers::pi * j / 4.0;
      for (const char* e : {"III", "XII", "IXI", "IIX"})
        worst = std::min(worst, recovery_demo(std::cos(theta / 2), std::polar(std::sin(theta / 2), phi), e).fidelity);
    }
  o.detail << "X set correctable = " << x.correctable << ", Z witness = "
           << (z.witness ? z.witness->error_s + "/" + z.witness->error_t : std::string("none"))
           << ", min recovery fidelity = " << worst;
  o.require(x.correctable, "X set correctable");
  o.require(!z.correctable && z.witness.has_value(), "Z witness");
  o.require(worst >= 1 - 1e-10, "recovery fidelity");
}

void properties(Outcome& o) {
  const std::string cmd = std::string("\"") + QINFO_PROPERTY_TEST + "\" --reporter compact > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  o.detail << "property suite exit code " << rc;
  o.require(rc == 0, "property suite");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "entropy trio", 0.001, entropy_trio},
      {2, "ternary capacity", 1.0, ternary_capacity},
      {3, "Holevo example", 30.0, holevo_example},
      {4, "CHSH", 10.0, chsh},
      {5, "purification", 20.0, purification},
      {6, "teleportation/superdense/swap", 5.0, teleport_family},
      {7, "BB84", 10.0, bb84_rates},
      {8, "Schumacher", 60.0, schumacher},
      {9, "QECC", 5.0, error_correction},
      {10, "property suites", 600.0, properties},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) {
      o.pass = false;
      o.detail << " [over time limit " << c.limit_seconds << " s]";
    }
    failures += !o.pass;
    std::printf("%s %2d %s (%.3f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
