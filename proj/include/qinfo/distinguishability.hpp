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

// Ensembles, Holevo information, accessible-information search and the
// two-state distinguishability measures.

#pragma once

#include "qinfo/core.hpp"
#include "qinfo/dynamics.hpp"
#include "qinfo/probability.hpp"
#include "qinfo/rng.hpp"
#include "qinfo/state.hpp"

#include <optional>

namespace qinfo {

/// Signal states rho_i prepared with probabilities p(i).
class Ensemble {
 public:
  Ensemble(Distribution probs, std::vector<DensityOperator> states) : probs_(std::move(probs)), states_(std::move(states)) {
    detail::require(probs_.size() == states_.size(), "ensemble needs one probability per state");
    for (const auto& s : states_) detail::require(s.dim() == states_.front().dim(), "ensemble states must share a dimension");
  }

  static Ensemble pure(Distribution probs, const std::vector<StateVector>& states) {
    std::vector<DensityOperator> rhos;
    for (const auto& s : states) rhos.emplace_back(s);
    return Ensemble(std::move(probs), std::move(rhos));
  }

  /// Eigenstates of rho weighted by its eigenvalues.
  static Ensemble eigenensemble(const DensityOperator& rho) {
    const SpectralDecomposition sd = spectral_decomposition(rho);
    std::vector<double> p;
    std::vector<DensityOperator> states;
    for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
      if (sd.eigenvalues(i) <= tol::eigen_clip) continue;
      p.push_back(sd.eigenvalues(i));
      states.emplace_back(StateVector::normalized(sd.eigenvectors.col(i)));
    }
    return Ensemble(Distribution::normalized(std::move(p)), std::move(states));
  }

  std::size_t size() const { return states_.size(); }
  std::size_t dim() const { return states_.front().dim(); }
  const Distribution& probs() const { return probs_; }
  const std::vector<DensityOperator>& states() const { return states_; }

  /// rho = sum p(i) rho_i.
  DensityOperator average() const {
    Matrix m = Matrix::Zero(Eigen::Index(dim()), Eigen::Index(dim()));
    for (std::size_t i = 0; i < size(); ++i) m += probs_[i] * states_[i].matrix();
    return DensityOperator::normalized(m);
  }

 private:
  Distribution probs_;
  std::vector<DensityOperator> states_;
};

/// {|H>, |45 deg>} with equal priors.
inline Ensemble horizontal_diagonal_ensemble() {
  return Ensemble::pure(Distribution::uniform(2),
                        {StateVector::polarization(0.0), StateVector::polarization(std::numbers::pi / 4.0)});
}

/// chi = S(sum p_i rho_i) - sum p_i S(rho_i).
inline double holevo_chi(const Ensemble& e, LogBase base = LogBase::bits) {
  double chi = von_neumann_entropy(e.average(), base);
  for (std::size_t i = 0; i < e.size(); ++i) chi -= e.probs()[i] * von_neumann_entropy(e.states()[i], base);
  return std::max(0.0, chi);
}

/// I_P = H(p(i)); never below S(rho).
inline double preparation_information(const Ensemble& e, LogBase base = LogBase::bits) {
  const double ip = shannon_entropy(e.probs(), base);
  if (von_neumann_entropy(e.average(), base) > ip + 1e-10)
    throw std::logic_error("S(rho) exceeds the preparation information");
  return ip;
}

namespace detail {
// I(X:Y) for the joint p(i, b) = p_i Tr(E_b rho_i), in nats, without
// re-validating the joint distribution.
inline double povm_information_nats(const Ensemble& e, const std::vector<Matrix>& povm) {
  const std::size_t ni = e.size(), nb = povm.size();
  std::vector<double> joint(ni * nb), qb(nb, 0.0);
  for (std::size_t i = 0; i < ni; ++i)
    for (std::size_t b = 0; b < nb; ++b) {
      const double v = std::max(0.0, (povm[b] * e.states()[i].matrix()).trace().real()) * e.probs()[i];
      joint[i * nb + b] = v;
      qb[b] += v;
    }
  double info = 0.0;
  for (std::size_t i = 0; i < ni; ++i)
    for (std::size_t b = 0; b < nb; ++b) {
      const double v = joint[i * nb + b];
      if (v > 0.0 && qb[b] > 0.0) info += v * std::log(v / (e.probs()[i] * qb[b]));
    }
  return std::max(0.0, info);
}
}  // namespace detail

/// Mutual information between preparation and outcome of `povm`.
inline double povm_mutual_information(const Ensemble& e, const Povm& povm, LogBase base = LogBase::bits) {
  detail::require(e.dim() == povm.dim(), "POVM dimension does not match ensemble");
  return from_nats(detail::povm_information_nats(e, povm.elements()), base);
}

struct AccessibleSearchConfig {
  std::size_t restarts = 6;               ///< random starts per element count
  std::size_t max_evaluations = 6000;     ///< per local refinement
  std::uint64_t seed = 1;
  std::size_t max_dim = 4;
};

struct AccessibleInfoResult {
  double j_lower = 0.0;  ///< best mutual information found (a lower bound on J)
  double holevo_chi = 0.0;
  Povm best;
  bool approximate = false;  ///< some local refinement ran out of budget
  std::size_t evaluations = 0;
  LogBase base = LogBase::bits;
};

namespace detail {

// Rank-1 POVM {G^{-1/2} v_b v_b^dagger G^{-1/2}} from 2*d*n real parameters.
inline std::vector<Matrix> povm_from_params(std::span<const double> x, std::size_t d, std::size_t n) {
  std::vector<Vector> vs(n, Vector(Eigen::Index(d)));
  Matrix g = Matrix::Zero(Eigen::Index(d), Eigen::Index(d));
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t i = 0; i < d; ++i) vs[b](Eigen::Index(i)) = cplx(x[2 * (b * d + i)], x[2 * (b * d + i) + 1]);
    g += projector(vs[b]);
  }
  const Matrix g_inv_sqrt = hermitian_function(g, [](double v) { return v > 1e-14 ? 1.0 / std::sqrt(v) : 0.0; });
  std::vector<Matrix> out;
  for (const auto& v : vs) out.push_back(projector(g_inv_sqrt * v));
  return out;
}

inline bool povm_complete(const std::vector<Matrix>& es) {
  Matrix s = Matrix::Zero(es.front().rows(), es.front().cols());
  for (const auto& e : es) s += e;
  return (s - Matrix::Identity(s.rows(), s.cols())).cwiseAbs().maxCoeff() <= 1e-9;
}

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

// Minimises f from x0 with an initial simplex of edge `step`.
template <typename F>
NelderMeadResult nelder_mead(F&& f, std::vector<double> x0, double step, std::size_t max_evals, double ftol = 1e-13) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
  std::vector<double> vals(n + 1);
  std::size_t evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };
  for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);
  std::vector<std::size_t> order(n + 1);
  bool converged = false;
  while (evals < max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    if (std::abs(vals[worst] - vals[best]) <= ftol * (1.0 + std::abs(vals[best]))) {
      converged = true;
      break;
    }
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i)
      if (i != worst)
        for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / double(n);
    auto along = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t k = 0; k < n; ++k) p[k] = centroid[k] + t * (pts[worst][k] - centroid[k]);
      return p;
    };
    const auto xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      const auto xe = along(-2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
    } else if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
    } else {
      const bool outside = fr < vals[worst];
      const auto xc = along(outside ? -0.5 : 0.5);
      const double fc = eval(xc);
      if (fc < std::min(fr, vals[worst])) {
        pts[worst] = xc;
        vals[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t k = 0; k < n; ++k) pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
          vals[i] = eval(pts[i]);
        }
      }
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  return {pts[std::size_t(it - vals.begin())], *it, evals, converged};
}

}  // namespace detail

/// Lower bound on the accessible information J = max over POVMs of I(X:Y).
///
/// Searches rank-1 POVMs with D <= N <= D^2 elements. Each candidate is
/// parameterised by N unnormalised vectors v_b; completeness is restored by
/// E_b = G^{-1/2} v_b v_b^dagger G^{-1/2} with G = sum v_b v_b^dagger. Every
/// element count gets `restarts` random starts refined by Nelder-Mead, and the
/// eigenbasis of the average state is always tried. The result is checked
/// against the Holevo bound; a violation throws std::logic_error.
inline AccessibleInfoResult accessible_information_search(const Ensemble& e, const AccessibleSearchConfig& cfg = {},
                                                          LogBase base = LogBase::bits) {
  const std::size_t d = e.dim();
  detail::require(d <= cfg.max_dim, "ensemble dimension exceeds the accessible-information search limit");
  const SpectralDecomposition sd = spectral_decomposition(e.average());
  std::vector<Matrix> best;
  for (Eigen::Index i = 0; i < sd.eigenvectors.cols(); ++i) best.push_back(projector(sd.eigenvectors.col(i)));
  double best_nats = detail::povm_information_nats(e, best);

  AccessibleInfoResult out{0.0, holevo_chi(e, base), Povm(best), false, 1, base};
  if (d > 1 && e.size() > 1) {
    for (std::size_t n = d; n <= d * d; ++n) {
      for (std::size_t r = 0; r < cfg.restarts; ++r) {
        CounterRng rng(cfg.seed, (std::uint64_t(n) << 32) | r);
        std::vector<double> x0(2 * d * n);
        for (double& v : x0) v = rng.normal();
        auto objective = [&](const std::vector<double>& x) {
          const auto povm = detail::povm_from_params(x, d, n);
          if (!detail::povm_complete(povm)) return 1.0;  // rank-deficient frame
          return -detail::povm_information_nats(e, povm);
        };
        const auto res = detail::nelder_mead(objective, x0, 0.5, cfg.max_evaluations);
        out.evaluations += res.evaluations;
        out.approximate = out.approximate || !res.converged;
        if (-res.value > best_nats) {
          auto povm = detail::povm_from_params(res.x, d, n);
          if (detail::povm_complete(povm)) {
            best_nats = -res.value;
            best = std::move(povm);
          }
        }
      }
    }
  }
  // Symmetrise numerically before handing the POVM to the validating type.
  Matrix sum = Matrix::Zero(Eigen::Index(d), Eigen::Index(d));
  for (auto& m : best) {
    m = hermitian_part(m);
    sum += m;
  }
  const Matrix fix = hermitian_function(sum, [](double v) { return 1.0 / std::sqrt(v); });
  for (auto& m : best) m = hermitian_part(fix * m * fix);
  out.best = Povm(best);
  out.j_lower = from_nats(detail::povm_information_nats(e, out.best.elements()), base);
  if (out.j_lower > out.holevo_chi + 1e-9) throw std::logic_error("accessible information exceeds the Holevo bound");
  return out;
}

// ---------------------------------------------------------------------------
// Two-state discrimination

struct DiscriminationProblem {
  double prior0 = 0.5;
  double prior1 = 0.5;
  DensityOperator rho0;
  DensityOperator rho1;

  DiscriminationProblem(double p0, double p1, DensityOperator r0, DensityOperator r1)
      : prior0(p0), prior1(p1), rho0(std::move(r0)), rho1(std::move(r1)) {
    Distribution check({p0, p1});
    detail::require(rho0.dim() == rho1.dim(), "states have different dimensions");
  }
};

/// Minimum error probability (Helstrom): 1/2 (1 - ||pi0 rho0 - pi1 rho1||_1).
inline double error_probability(const DiscriminationProblem& p) {
  const double tn = trace_norm_hermitian(p.prior0 * p.rho0.matrix() - p.prior1 * p.rho1.matrix());
  return std::clamp(0.5 * (1.0 - tn), 0.0, 0.5);
}

struct ChernoffResult {
  double lambda = 1.0;  ///< min over alpha of sum p0^alpha p1^(1-alpha)
  double alpha = 0.5;   ///< minimiser
};

/// Chernoff bound by golden-section search of the convex function
/// alpha -> sum p0^alpha p1^(1-alpha) on [0, 1].
inline ChernoffResult chernoff_bound(const Distribution& p0, const Distribution& p1) {
  detail::require(p0.size() == p1.size(), "distributions need a common alphabet");
  auto f = [&](double a) {
    double s = 0.0;
    for (std::size_t i = 0; i < p0.size(); ++i) {
      if (p0[i] == 0.0 || p1[i] == 0.0) continue;
      s += std::pow(p0[i], a) * std::pow(p1[i], 1.0 - a);
    }
    return s;
  };
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = 1.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > 1e-12) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  const double a = 0.5 * (lo + hi);
  return {f(a), a};
}

/// Bhattacharyya overlap sum sqrt(p0 p1).
inline double classical_overlap(const Distribution& p0, const Distribution& p1) {
  detail::require(p0.size() == p1.size(), "distributions need a common alphabet");
  double s = 0.0;
  for (std::size_t i = 0; i < p0.size(); ++i) s += std::sqrt(p0[i] * p1[i]);
  return std::min(1.0, s);
}

// ---------------------------------------------------------------------------
// Unambiguous discrimination

struct UnambiguousResult {
  std::vector<Matrix> elements;     ///< E_1..E_n, scaled
  Matrix inconclusive;              ///< E_0 = I - sum E_k
  std::vector<double> scales;       ///< E_k = scale_k |u_k><u_k|
  std::vector<double> success_probs;  ///< Tr(E_k |psi_k><psi_k|)
  double average_success = 0.0;
  double max_cross_term = 0.0;        ///< max_{j != k} Tr(E_j |psi_k><psi_k|)
  double unscaled_max_eigenvalue = 0.0;  ///< of sum |u_k><u_k| with unit scales
  bool unscaled_is_povm = false;
};

/// Zero-error discrimination of linearly independent pure states.
///
/// E_k is proportional to the projector onto the direction orthogonal to every
/// other state (the normalised reciprocal vector). The scales maximise the
/// average success sum p_k s_k |<u_k|psi_k>|^2 subject to
/// E_0 = I - sum s_k |u_k><u_k| >= 0, solved with a log-barrier Newton method.
/// On ties the central path converges to the analytic centre of the optimal
/// face, which equalises per-state success for symmetric problems.
inline UnambiguousResult unambiguous_discriminator(const std::vector<StateVector>& states,
                                                   std::optional<Distribution> priors = std::nullopt) {
  const std::size_t n = states.size();
  detail::require(n >= 1, "need at least one state");
  const std::size_t d = states.front().dim();
  for (const auto& s : states) detail::require(s.dim() == d, "states must share a dimension");
  detail::require(n <= d, "more states than dimensions: states are linearly dependent");
  const Distribution pri = priors ? *priors : Distribution::uniform(n);
  detail::require(pri.size() == n, "one prior per state");

  Matrix psi{Eigen::Index(d), Eigen::Index(n)};
  for (std::size_t k = 0; k < n; ++k) psi.col(Eigen::Index(k)) = states[k].amps();
  const Matrix gram = psi.adjoint() * psi;
  detail::require(std::abs(gram.determinant()) > 1e-10, "states are linearly dependent");
  const Matrix dual = psi * gram.inverse();

  std::vector<Vector> u(n);
  std::vector<Matrix> proj(n);
  std::vector<double> gain(n), c(n);
  Matrix sum_unscaled = Matrix::Zero(Eigen::Index(d), Eigen::Index(d));
  for (std::size_t k = 0; k < n; ++k) {
    u[k] = dual.col(Eigen::Index(k)).normalized();
    proj[k] = projector(u[k]);
    gain[k] = std::norm(u[k].dot(psi.col(Eigen::Index(k))));
    c[k] = pri[k] * gain[k];
    sum_unscaled += proj[k];
  }
  UnambiguousResult out;
  out.unscaled_max_eigenvalue = hermitian_eigenvalues(sum_unscaled).maxCoeff();
  out.unscaled_is_povm = out.unscaled_max_eigenvalue <= 1.0 + 1e-10;

  auto slack = [&](const std::vector<double>& s) {
    Matrix m = identity(d);
    for (std::size_t k = 0; k < n; ++k) m -= s[k] * proj[k];
    return m;
  };
  auto feasible = [&](const std::vector<double>& s) {
    for (double v : s)
      if (!(v > 0.0)) return false;
    return hermitian_eigenvalues(slack(s)).minCoeff() > 0.0;
  };
  auto barrier = [&](const std::vector<double>& s, double t) {
    double v = 0.0;
    for (std::size_t k = 0; k < n; ++k) v += t * c[k] * s[k] + std::log(s[k]);
    const RealVector ev = hermitian_eigenvalues(slack(s));
    for (Eigen::Index i = 0; i < ev.size(); ++i) v += std::log(ev(i));
    return v;
  };

  std::vector<double> s(n, 0.5 / out.unscaled_max_eigenvalue);
  for (double t = 1.0; t < 1e14; t *= 8.0) {
    for (int it = 0; it < 100; ++it) {
      const Matrix minv = slack(s).inverse();
      Eigen::VectorXd g{Eigen::Index(n)};
      Eigen::MatrixXd h{Eigen::Index(n), Eigen::Index(n)};
      for (std::size_t k = 0; k < n; ++k) {
        const Vector mk = minv * u[k];
        g(Eigen::Index(k)) = t * c[k] - u[k].dot(mk).real() + 1.0 / s[k];
        for (std::size_t l = 0; l < n; ++l)
          h(Eigen::Index(k), Eigen::Index(l)) = -std::norm(u[l].dot(mk)) - (k == l ? 1.0 / (s[k] * s[k]) : 0.0);
      }
      const Eigen::VectorXd step = -h.ldlt().solve(g);
      const double decrement = g.dot(step);
      if (decrement < 1e-14) break;
      double alpha = 1.0;
      const double f0 = barrier(s, t);
      std::vector<double> trial(n);
      for (;;) {
        for (std::size_t k = 0; k < n; ++k) trial[k] = s[k] + alpha * step(Eigen::Index(k));
        if (feasible(trial) && barrier(trial, t) >= f0 + 0.25 * alpha * g.dot(step)) break;
        alpha *= 0.5;
        if (alpha < 1e-16) break;
      }
      if (alpha < 1e-16) break;
      s = trial;
    }
  }

  out.scales = s;
  out.inconclusive = slack(s);
  for (std::size_t k = 0; k < n; ++k) {
    out.elements.push_back(s[k] * proj[k]);
    out.success_probs.push_back(s[k] * gain[k]);
    out.average_success += pri[k] * s[k] * gain[k];
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (j != k)
        out.max_cross_term =
            std::max(out.max_cross_term, std::abs((out.elements[j] * projector(states[k].amps())).trace().real()));
  return out;
}

}  // namespace qinfo
