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

// Classical probability and information functionals: entropies, mutual
// information, relative entropy, Bayes updates, channel capacity, typical
// sets and a random-coding demonstration of the noisy coding theorem.

#pragma once

#include "qinfo/core.hpp"
#include "qinfo/rng.hpp"

#include <limits>
#include <optional>
#include <sstream>
#include <unordered_set>
#include <variant>

namespace qinfo {

/// Probability vector over a finite alphabet.
class Distribution {
 public:
  Distribution() = default;

  explicit Distribution(std::vector<double> probs) : probs_(std::move(probs)) { validate(); }
  Distribution(std::initializer_list<double> probs) : Distribution(std::vector<double>(probs)) {}

  /// Rescales non-negative weights to unit sum. Throws when all weights are 0.
  static Distribution normalized(std::vector<double> weights) {
    double total = 0.0;
    for (double& w : weights) {
      if (w < 0.0 && w > -1e-12) w = 0.0;
      detail::require(w >= 0.0 && std::isfinite(w), "distribution weight must be non-negative and finite");
      total += w;
    }
    detail::require(total > 0.0, "distribution weights sum to zero");
    for (double& w : weights) w /= total;
    return Distribution(std::move(weights));
  }

  static Distribution uniform(std::size_t n) {
    detail::require(n >= 1, "alphabet must be non-empty");
    return Distribution(std::vector<double>(n, 1.0 / double(n)));
  }

  static Distribution point_mass(std::size_t n, std::size_t at) {
    detail::require(at < n, "point mass outside alphabet");
    std::vector<double> p(n, 0.0);
    p[at] = 1.0;
    return Distribution(std::move(p));
  }

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }
  const std::vector<double>& vector() const { return probs_; }

 private:
  void validate() const {
    detail::require(!probs_.empty(), "distribution must have at least one entry");
    double sum = 0.0;
    for (double p : probs_) {
      detail::require(std::isfinite(p) && p >= 0.0, "distribution entries must be non-negative");
      sum += p;
    }
    detail::require(std::abs(sum - 1.0) <= tol::distribution_sum, "distribution does not sum to 1");
  }

  std::vector<double> probs_;
};

/// Joint distribution p(a, b) stored row-major with rows indexed by a.
class JointDistribution {
 public:
  JointDistribution(std::size_t rows, std::size_t cols, std::vector<double> probs)
      : rows_(rows), cols_(cols), probs_(std::move(probs)) {
    detail::require(rows_ >= 1 && cols_ >= 1, "joint distribution needs positive dimensions");
    detail::require(probs_.size() == rows_ * cols_, "joint distribution shape mismatch");
    Distribution check(probs_);  // validates entries and normalisation
  }

  static JointDistribution from_rows(const std::vector<std::vector<double>>& rows) {
    detail::require(!rows.empty(), "joint distribution needs at least one row");
    std::vector<double> flat;
    for (const auto& r : rows) {
      detail::require(r.size() == rows.front().size(), "ragged joint distribution");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return JointDistribution(rows.size(), rows.front().size(), std::move(flat));
  }

  /// p(a) p(b).
  static JointDistribution product(const Distribution& pa, const Distribution& pb) {
    std::vector<double> flat;
    flat.reserve(pa.size() * pb.size());
    for (double a : pa.probs())
      for (double b : pb.probs()) flat.push_back(a * b);
    return JointDistribution(pa.size(), pb.size(), std::move(flat));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t a, std::size_t b) const { return probs_[a * cols_ + b]; }
  std::span<const double> flat() const { return probs_; }

  Distribution marginal_a() const {
    std::vector<double> m(rows_, 0.0);
    for (std::size_t a = 0; a < rows_; ++a)
      for (std::size_t b = 0; b < cols_; ++b) m[a] += (*this)(a, b);
    return Distribution::normalized(std::move(m));
  }

  Distribution marginal_b() const {
    std::vector<double> m(cols_, 0.0);
    for (std::size_t a = 0; a < rows_; ++a)
      for (std::size_t b = 0; b < cols_; ++b) m[b] += (*this)(a, b);
    return Distribution::normalized(std::move(m));
  }

  /// p(a | b) for an observed column b with p(b) > 0.
  Distribution conditional_a_given_b(std::size_t b) const {
    detail::require(b < cols_, "conditioning index out of range");
    std::vector<double> col(rows_);
    for (std::size_t a = 0; a < rows_; ++a) col[a] = (*this)(a, b);
    return Distribution::normalized(std::move(col));
  }

 private:
  std::size_t rows_, cols_;
  std::vector<double> probs_;
};

/// Memoryless channel given by transition probabilities p(y | x), one row per input.
class DiscreteChannel {
 public:
  explicit DiscreteChannel(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {
    detail::require(!rows_.empty(), "channel needs at least one input symbol");
    for (const auto& r : rows_) {
      detail::require(r.size() == rows_.front().size(), "channel rows must share an output alphabet");
      Distribution check(r);
    }
  }

  std::size_t inputs() const { return rows_.size(); }
  std::size_t outputs() const { return rows_.front().size(); }
  double operator()(std::size_t x, std::size_t y) const { return rows_[x][y]; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

  JointDistribution joint(const Distribution& input) const {
    detail::require(input.size() == inputs(), "input distribution does not match channel alphabet");
    std::vector<double> flat;
    flat.reserve(inputs() * outputs());
    for (std::size_t x = 0; x < inputs(); ++x)
      for (std::size_t y = 0; y < outputs(); ++y) flat.push_back(input[x] * rows_[x][y]);
    return JointDistribution(inputs(), outputs(), std::move(flat));
  }

  Distribution output(const Distribution& input) const { return joint(input).marginal_b(); }

 private:
  std::vector<std::vector<double>> rows_;
};

inline DiscreteChannel binary_symmetric_channel(double flip) {
  detail::require(flip >= 0.0 && flip <= 1.0, "flip probability must lie in [0, 1]");
  return DiscreteChannel({{1.0 - flip, flip}, {flip, 1.0 - flip}});
}

/// Symbol 0 passes untouched; symbols 1 and 2 are swapped with probability p.
inline DiscreteChannel ternary_channel(double p) {
  detail::require(p >= 0.0 && p <= 1.0, "swap probability must lie in [0, 1]");
  return DiscreteChannel({{1.0, 0.0, 0.0}, {0.0, 1.0 - p, p}, {0.0, p, 1.0 - p}});
}

inline DiscreteChannel noiseless_channel(std::size_t n) {
  detail::require(n >= 1, "alphabet must be non-empty");
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1.0;
  return DiscreteChannel(std::move(rows));
}

// ---------------------------------------------------------------------------
// Entropy functionals

namespace detail {
inline double entropy_nats(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) h += xlogx_nats(x);
  return h;
}
}  // namespace detail

/// H(p) = -sum p log p, with 0 log 0 = 0.
inline double shannon_entropy(const Distribution& p, LogBase base = LogBase::bits) {
  return from_nats(detail::entropy_nats(p.probs()), base);
}

/// Binary entropy function h(p).
inline double binary_entropy(double p, LogBase base = LogBase::bits) {
  detail::require(p >= 0.0 && p <= 1.0, "binary entropy argument must lie in [0, 1]");
  return from_nats(detail::xlogx_nats(p) + detail::xlogx_nats(1.0 - p), base);
}

inline double joint_entropy(const JointDistribution& j, LogBase base = LogBase::bits) {
  return from_nats(detail::entropy_nats(j.flat()), base);
}

/// H(B|A) = H(A,B) - H(A).
inline double conditional_entropy(const JointDistribution& j, LogBase base = LogBase::bits) {
  return joint_entropy(j, base) - shannon_entropy(j.marginal_a(), base);
}

/// I(A:B) = H(A) + H(B) - H(A,B).
inline double mutual_information(const JointDistribution& j, LogBase base = LogBase::bits) {
  const double i = shannon_entropy(j.marginal_a(), base) + shannon_entropy(j.marginal_b(), base) -
                   joint_entropy(j, base);
  return std::max(0.0, i);
}

/// D(p || q); +infinity when p puts mass where q has none.
inline double kl_divergence(const Distribution& p, const Distribution& q, LogBase base = LogBase::bits) {
  detail::require(p.size() == q.size(), "relative entropy needs a common alphabet");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
    d += p[i] * std::log(p[i] / q[i]);
  }
  return from_nats(std::max(0.0, d), base);
}

/// Posterior over hypotheses after observing `observation`, where
/// likelihoods(h, o) = p(o | h).
inline Distribution bayes_posterior(const Distribution& prior, const DiscreteChannel& likelihoods,
                                    std::size_t observation) {
  detail::require(prior.size() == likelihoods.inputs(), "prior does not match hypothesis count");
  detail::require(observation < likelihoods.outputs(), "observation index out of range");
  std::vector<double> post(prior.size());
  double evidence = 0.0;
  for (std::size_t h = 0; h < prior.size(); ++h) {
    post[h] = prior[h] * likelihoods(h, observation);
    evidence += post[h];
  }
  detail::require(evidence > 0.0, "observation has zero probability under the prior");
  for (double& x : post) x /= evidence;
  return Distribution::normalized(std::move(post));
}

// ---------------------------------------------------------------------------
// Channel capacity

struct CapacityResult {
  double capacity = 0.0;  ///< in the requested LogBase
  Distribution optimal_input;
  std::size_t iterations = 0;
};

struct BinarySymmetric {
  double flip;
};
struct Ternary {
  double swap;
};
struct Noiseless {
  std::size_t symbols;
};
using ClosedFormChannel = std::variant<BinarySymmetric, Ternary, Noiseless>;

/// Capacities with known closed forms. The ternary case uses
/// alpha = h(p) in nats, P = e^a / (e^a + 2), C = log((e^a + 2) / e^a).
inline CapacityResult channel_capacity_closed(const ClosedFormChannel& kind, LogBase base = LogBase::bits) {
  return std::visit(
      [base](const auto& k) -> CapacityResult {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, BinarySymmetric>) {
          detail::require(k.flip >= 0.0 && k.flip <= 1.0, "flip probability must lie in [0, 1]");
          const double c_bits = 1.0 - binary_entropy(k.flip, LogBase::bits);
          return {base == LogBase::bits ? c_bits : c_bits * std::numbers::ln2, Distribution::uniform(2), 0};
        } else if constexpr (std::is_same_v<K, Ternary>) {
          detail::require(k.swap >= 0.0 && k.swap <= 1.0, "swap probability must lie in [0, 1]");
          const double alpha = binary_entropy(k.swap, LogBase::nats);
          const double ea = std::exp(alpha);
          const double big = ea / (ea + 2.0), small = 1.0 / (ea + 2.0);
          const double c_nats = std::log((ea + 2.0) / ea);
          return {from_nats(c_nats, base), Distribution::normalized({big, small, small}), 0};
        } else {
          detail::require(k.symbols >= 1, "alphabet must be non-empty");
          return {log_in(double(k.symbols), base), Distribution::uniform(k.symbols), 0};
        }
      },
      kind);
}

/// Raised when the capacity iteration hits its cap; carries the best iterate.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, CapacityResult best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const CapacityResult& best() const { return best_; }

 private:
  CapacityResult best_;
};

/// max over p(x) of I(X:Y) by alternating maximisation (Blahut-Arimoto).
///
/// Each sweep computes the output law q = pW, the per-input divergences
/// D_x = D(W(.|x) || q) and reweights p(x) proportionally to p(x) e^{D_x}.
/// The iterate's mutual information I = sum p(x) D_x and max_x D_x bracket the
/// capacity; the loop stops when that bracket, and hence the capacity change
/// between sweeps, falls below `tol` (in nats).
inline CapacityResult channel_capacity_numeric(const DiscreteChannel& ch, double tol = 1e-12,
                                               LogBase base = LogBase::bits, std::size_t max_iterations = 100000) {
  detail::require(tol > 0.0, "tolerance must be positive");
  const std::size_t nx = ch.inputs(), ny = ch.outputs();
  std::vector<double> p(nx, 1.0 / double(nx)), q(ny), d(nx);
  double lower = 0.0, upper = std::numeric_limits<double>::infinity();
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    std::fill(q.begin(), q.end(), 0.0);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) q[y] += p[x] * ch(x, y);
    for (std::size_t x = 0; x < nx; ++x) {
      double dx = 0.0;
      for (std::size_t y = 0; y < ny; ++y)
        if (ch(x, y) > 0.0) dx += ch(x, y) * std::log(ch(x, y) / q[y]);
      d[x] = dx;
    }
    lower = 0.0;
    upper = -std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < nx; ++x) {
      lower += p[x] * d[x];
      upper = std::max(upper, d[x]);
    }
    if (upper - lower < tol) return {from_nats(std::max(0.0, lower), base), Distribution::normalized(p), it};
    const double shift = upper;
    for (std::size_t x = 0; x < nx; ++x) p[x] *= std::exp(d[x] - shift);
    double s = 0.0;
    for (double v : p) s += v;
    for (double& v : p) v /= s;
  }
  throw convergence_error("capacity iteration did not converge",
                          {from_nats(std::max(0.0, lower), base), Distribution::normalized(p), max_iterations});
}

// ---------------------------------------------------------------------------
// Typical sets

inline constexpr std::uint64_t kDefaultTypicalSetCap = std::uint64_t(1) << 22;

struct TypicalSetResult {
  std::size_t block_length = 0;
  double epsilon = 0.0;
  double entropy_bits = 0.0;
  std::vector<std::vector<std::uint32_t>> members;  ///< sequences of symbol indices
  double total_prob = 0.0;
  std::uint64_t sequences_examined = 0;

  std::size_t size() const { return members.size(); }
  /// Upper bound |A| < 2^{n(H+eps)}; holds for every n.
  bool upper_size_bound_holds() const {
    return std::log2(double(size())) < double(block_length) * (entropy_bits + epsilon);
  }
  /// |A| > (1-eps) 2^{n(H-eps)}; asymptotic.
  bool lower_size_bound_holds() const {
    return double(size()) > (1.0 - epsilon) * std::exp2(double(block_length) * (entropy_bits - epsilon));
  }
  /// Prob(A) > 1 - eps; asymptotic.
  bool probability_bound_holds() const { return total_prob > 1.0 - epsilon; }
};

/// Exhaustive enumeration of the epsilon-typical sequences of length n:
/// 2^{-n(H+eps)} <= p(x^n) <= 2^{-n(H-eps)}.
inline TypicalSetResult typical_set(const Distribution& p, std::size_t n, double eps,
                                    std::uint64_t cap = enumeration_cap(kDefaultTypicalSetCap)) {
  detail::require(n >= 1, "block length must be positive");
  detail::require(eps > 0.0, "epsilon must be positive");
  const std::size_t k = p.size();
  const double total = std::pow(double(k), double(n));
  if (total > double(cap)) {
    std::ostringstream msg;
    msg << "typical set enumeration of " << k << "^" << n
        << " sequences exceeds the cap of " << cap
        << "; use a sampling estimate or raise QINFO_ENUM_CAP";
    throw capacity_exceeded(msg.str());
  }
  TypicalSetResult out;
  out.block_length = n;
  out.epsilon = eps;
  out.entropy_bits = shannon_entropy(p, LogBase::bits);

  std::vector<double> logp(k);
  for (std::size_t i = 0; i < k; ++i)
    logp[i] = p[i] > 0.0 ? std::log2(p[i]) : -std::numeric_limits<double>::infinity();
  const double lo = out.entropy_bits - eps, hi = out.entropy_bits + eps;
  constexpr double kEdge = 1e-12;

  std::vector<std::uint32_t> seq(n, 0);
  const std::uint64_t count = std::uint64_t(std::llround(total));
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    double lp = 0.0;
    for (auto s : seq) lp += logp[s];
    if (std::isfinite(lp)) {
      const double rate = -lp / double(n);
      if (rate >= lo - kEdge && rate <= hi + kEdge) {
        out.members.push_back(seq);
        out.total_prob += std::exp2(lp);
      }
    }
    for (std::size_t pos = n; pos-- > 0;) {  // odometer, last symbol fastest
      if (++seq[pos] < k) break;
      seq[pos] = 0;
    }
  }
  out.sequences_examined = count;
  return out;
}

// ---------------------------------------------------------------------------
// Random-coding demonstration

struct CodingRow {
  std::size_t block_length = 0;
  std::uint64_t codebook_size = 0;
  std::size_t trials = 0;
  std::size_t errors = 0;
  double error_rate = 0.0;
  double std_error = 0.0;  ///< binomial standard error of error_rate
};

struct CodingTable {
  double rate = 0.0;
  double capacity_bits = 0.0;
  std::uint64_t seed = 0;
  std::vector<CodingRow> rows;
};

namespace detail {
inline std::uint64_t codebook_size(std::size_t n, double rate, std::size_t alphabet) {
  const double bits = double(n) * rate;
  const double space = double(n) * std::log2(double(alphabet));
  detail::require(bits <= space + 1e-9, "rate exceeds log2 of the input alphabet");
  detail::require(space <= 62.0, "block too long for packed codewords");
  return std::max<std::uint64_t>(1, std::uint64_t(std::floor(std::exp2(bits) + 1e-9)));
}
}  // namespace detail

/// Monte-Carlo block error rates of random codes with maximum-likelihood
/// decoding.
///
/// Each trial draws a fresh codebook of floor(2^{nR}) distinct codewords with
/// i.i.d. uniform symbols, sends a uniformly chosen message through `ch` and
/// decodes by maximum likelihood; exact likelihood ties go to the
/// lexicographically smallest codeword. Trial t of block length n draws from
/// the counter stream (seed, (n << 40) | t), so results do not depend on
/// evaluation order.
inline CodingTable noisy_coding_demo(const DiscreteChannel& ch, double rate, const std::vector<std::size_t>& block_lengths,
                                     std::size_t trials, std::uint64_t seed) {
  detail::require(rate > 0.0, "rate must be positive");
  detail::require(!block_lengths.empty(), "need at least one block length");
  detail::require(trials >= 1, "need at least one trial");
  CodingTable table;
  table.rate = rate;
  table.seed = seed;
  table.capacity_bits = channel_capacity_numeric(ch, 1e-10).capacity;

  const std::size_t nx = ch.inputs(), ny = ch.outputs();
  std::vector<double> loglik(nx * ny);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      loglik[x * ny + y] = ch(x, y) > 0.0 ? std::log(ch(x, y)) : -std::numeric_limits<double>::infinity();

  for (std::size_t n : block_lengths) {
    detail::require(n >= 1, "block lengths must be positive");
    const std::uint64_t m = detail::codebook_size(n, rate, nx);
    CodingRow row{n, m, trials, 0, 0.0, 0.0};
    std::vector<std::uint32_t> book(m * n), received(n);
    std::unordered_set<std::uint64_t> seen;
    for (std::size_t t = 0; t < trials; ++t) {
      CounterRng rng(seed, (std::uint64_t(n) << 40) | std::uint64_t(t));
      seen.clear();
      for (std::uint64_t w = 0; w < m; ++w) {
        for (;;) {
          std::uint64_t key = 0;
          for (std::size_t i = 0; i < n; ++i) {
            book[w * n + i] = std::uint32_t(rng.below(nx));
            key = key * nx + book[w * n + i];
          }
          if (seen.insert(key).second) break;
        }
      }
      const std::uint64_t sent = rng.below(m);
      for (std::size_t i = 0; i < n; ++i) {
        const auto x = book[sent * n + i];
        received[i] = std::uint32_t(rng.categorical(ch.rows()[x]));
      }
      std::uint64_t best = 0;
      double best_score = -std::numeric_limits<double>::infinity();
      bool have_best = false;
      for (std::uint64_t w = 0; w < m; ++w) {
        double score = 0.0;
        for (std::size_t i = 0; i < n && score != -std::numeric_limits<double>::infinity(); ++i)
          score += loglik[book[w * n + i] * ny + received[i]];
        if (!have_best || score > best_score) {
          best = w;
          best_score = score;
          have_best = true;
        } else if (score == best_score &&
                   std::lexicographical_compare(book.begin() + std::ptrdiff_t(w * n), book.begin() + std::ptrdiff_t(w * n + n),
                                                book.begin() + std::ptrdiff_t(best * n),
                                                book.begin() + std::ptrdiff_t(best * n + n))) {
          best = w;
        }
      }
      if (best != sent) ++row.errors;
    }
    row.error_rate = double(row.errors) / double(trials);
    row.std_error = std::sqrt(row.error_rate * (1.0 - row.error_rate) / double(trials));
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace qinfo
