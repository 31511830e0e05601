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

// Typical-subspace compression at small block lengths, quantum error
// correction conditions and the Hamming bound.

#pragma once

#include "qinfo/core.hpp"
#include "qinfo/probability.hpp"
#include "qinfo/state.hpp"

#include <variant>

namespace qinfo {

inline constexpr std::uint64_t kDefaultBlockCap = std::uint64_t(1) << 14;

namespace detail {
inline std::uint64_t checked_power(std::size_t base, std::size_t n, std::uint64_t cap, const char* what) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > cap / std::max<std::size_t>(base, 1)) {
      throw capacity_exceeded(std::string(what) + ": " + std::to_string(base) + "^" + std::to_string(n) +
                              " exceeds the enumeration cap of " + std::to_string(cap) +
                              " (raise QINFO_ENUM_CAP or reduce the block length)");
    }
    total *= base;
  }
  return total;
}

// Digits of `index` in base d, most significant first.
inline void digits_of(std::uint64_t index, std::size_t d, std::vector<std::uint32_t>& out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = std::uint32_t(index % d);
    index /= d;
  }
}
}  // namespace detail

/// Span of selected eigenvectors of rho^{(x)n}. Members are eigen-index
/// strings (flat, base d, most significant first) in descending eigenvalue
/// order; the explicit projector is only built on request.
struct TypicalSubspace {
  std::size_t n = 0;
  std::size_t d = 0;
  double delta = 0.0;
  double entropy_bits = 0.0;          ///< S(rho)
  std::vector<double> eigenvalues;    ///< of rho, descending
  Matrix eigenvectors;                ///< columns match `eigenvalues`
  std::vector<std::uint64_t> members;
  std::vector<double> member_eigenvalues;
  double weight = 0.0;  ///< Tr(Pi rho^{(x)n})

  std::size_t dimension() const { return members.size(); }
  double eta() const { return std::max(0.0, 1.0 - weight); }

  /// Product eigenvector for a member string.
  Vector product_vector(std::uint64_t member) const {
    std::vector<std::uint32_t> digits(n);
    detail::digits_of(member, d, digits);
    Vector v = Vector::Ones(1);
    for (auto k : digits) v = kron(v, Vector(eigenvectors.col(Eigen::Index(k))));
    return v;
  }

  Matrix projector_matrix(std::uint64_t max_dim = 1U << 10) const {
    const std::uint64_t total = detail::checked_power(d, n, max_dim, "explicit typical projector");
    Matrix p = Matrix::Zero(Eigen::Index(total), Eigen::Index(total));
    for (auto m : members) p += projector(product_vector(m));
    return p;
  }

  // Bounds with epsilon taken as eta.
  bool eigenvalue_bounds_hold() const {
    const double lo = -double(n) * (entropy_bits + delta), hi = -double(n) * (entropy_bits - delta);
    return std::all_of(member_eigenvalues.begin(), member_eigenvalues.end(), [&](double l) {
      const double lg = std::log2(l);
      return lg > lo - 1e-12 && lg < hi + 1e-12;
    });
  }
  bool upper_dimension_bound_holds() const {
    return double(dimension()) <= std::exp2(double(n) * (entropy_bits + delta)) * (1.0 + 1e-12);
  }
  bool lower_dimension_bound_holds() const {
    return (1.0 - eta()) * std::exp2(double(n) * (entropy_bits - delta)) <= double(dimension()) * (1.0 + 1e-12);
  }
};

namespace detail {

struct BlockSpectrum {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
  double entropy_bits = 0.0;
  std::uint64_t total = 0;
};

inline BlockSpectrum block_spectrum(const DensityOperator& rho, std::size_t n, std::uint64_t cap) {
  require(n >= 1, "block length must be at least 1");
  const SpectralDecomposition sd = spectral_decomposition(rho);
  BlockSpectrum b;
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) b.eigenvalues.push_back(std::max(0.0, sd.eigenvalues(i)));
  b.eigenvectors = sd.eigenvectors;
  b.entropy_bits = von_neumann_entropy(rho, LogBase::bits);
  b.total = checked_power(rho.dim(), n, cap, "typical subspace");
  return b;
}

inline double string_eigenvalue(std::uint64_t idx, const std::vector<double>& mu, std::size_t n,
                                std::vector<std::uint32_t>& digits) {
  digits.resize(n);
  digits_of(idx, mu.size(), digits);
  double p = 1.0;
  for (auto k : digits) p *= mu[k];
  return p;
}

inline TypicalSubspace make_subspace(const BlockSpectrum& b, std::size_t n, double delta,
                                     std::vector<std::pair<double, std::uint64_t>> chosen) {
  std::stable_sort(chosen.begin(), chosen.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  TypicalSubspace t;
  t.n = n;
  t.d = b.eigenvalues.size();
  t.delta = delta;
  t.entropy_bits = b.entropy_bits;
  t.eigenvalues = b.eigenvalues;
  t.eigenvectors = b.eigenvectors;
  for (const auto& [l, idx] : chosen) {
    t.members.push_back(idx);
    t.member_eigenvalues.push_back(l);
    t.weight += l;
  }
  return t;
}

}  // namespace detail

/// Eigenvectors of rho^{(x)n} with 2^{-n(S+delta)} < lambda < 2^{-n(S-delta)}.
/// Pure rho yields the single product vector (the window degenerates at S = 0).
inline TypicalSubspace build_typical_subspace(const DensityOperator& rho, std::size_t n, double delta,
                                              std::uint64_t cap = enumeration_cap(kDefaultBlockCap)) {
  detail::require(delta > 0.0, "delta must be positive");
  const auto b = detail::block_spectrum(rho, n, cap);
  const double lo = -double(n) * (b.entropy_bits + delta), hi = -double(n) * (b.entropy_bits - delta);
  std::vector<std::pair<double, std::uint64_t>> chosen;
  std::vector<std::uint32_t> digits;
  for (std::uint64_t idx = 0; idx < b.total; ++idx) {
    const double l = detail::string_eigenvalue(idx, b.eigenvalues, n, digits);
    if (l <= 0.0) continue;
    const double lg = std::log2(l);
    if (lg > lo + 1e-12 && lg < hi - 1e-12) chosen.emplace_back(l, idx);
  }
  auto t = detail::make_subspace(b, n, delta, std::move(chosen));
  if (!t.eigenvalue_bounds_hold() || !t.upper_dimension_bound_holds() || !t.lower_dimension_bound_holds())
    throw std::logic_error("typical subspace violates its defining bounds");
  return t;
}

/// The `k` largest eigenvectors of rho^{(x)n} (ties broken by index).
inline TypicalSubspace top_eigenspace(const DensityOperator& rho, std::size_t n, std::uint64_t k,
                                      std::uint64_t cap = enumeration_cap(kDefaultBlockCap)) {
  const auto b = detail::block_spectrum(rho, n, cap);
  detail::require(k >= 1 && k <= b.total, "subspace dimension out of range");
  std::vector<std::pair<double, std::uint64_t>> all;
  std::vector<std::uint32_t> digits;
  for (std::uint64_t idx = 0; idx < b.total; ++idx) all.emplace_back(detail::string_eigenvalue(idx, b.eigenvalues, n, digits), idx);
  std::stable_sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  all.resize(std::size_t(k));
  return detail::make_subspace(b, n, 0.0, std::move(all));
}

/// Pure-state signal source: letters |phi_a> with probabilities p(a).
struct SignalSource {
  Distribution probs;
  std::vector<StateVector> letters;

  SignalSource(Distribution p, std::vector<StateVector> s) : probs(std::move(p)), letters(std::move(s)) {
    detail::require(probs.size() == letters.size() && !letters.empty(), "one probability per letter");
    for (const auto& l : letters) detail::require(l.dim() == letters.front().dim(), "letters must share a dimension");
  }

  static SignalSource eigenensemble(const DensityOperator& rho) {
    const SpectralDecomposition sd = spectral_decomposition(rho);
    std::vector<double> p;
    std::vector<StateVector> s;
    for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
      if (sd.eigenvalues(i) <= tol::eigen_clip) continue;
      p.push_back(sd.eigenvalues(i));
      s.push_back(StateVector::normalized(sd.eigenvectors.col(i)));
    }
    return SignalSource(Distribution::normalized(std::move(p)), std::move(s));
  }

  DensityOperator density() const {
    const std::size_t d = letters.front().dim();
    Matrix m = Matrix::Zero(Eigen::Index(d), Eigen::Index(d));
    for (std::size_t a = 0; a < letters.size(); ++a) m += probs[a] * projector(letters[a].amps());
    return DensityOperator::normalized(m);
  }
};

struct TypicalMode {
  double delta = 0.1;
};
/// Keep the top floor(2^{n R}) eigenvectors.
struct TruncateMode {
  double rate = 0.0;
};
using CompressionMode = std::variant<TypicalMode, TruncateMode>;

struct SchumacherResult {
  std::size_t n = 0;
  double avg_fidelity = 0.0;  ///< sum p(a) <a|rho_a|a> over n-letter words
  double rate = 0.0;          ///< log2(dim Lambda) / n qubits per signal
  std::size_t dimension = 0;
  double weight = 0.0;        ///< Tr(Lambda rho^{(x)n})
  double eta = 0.0;           ///< 1 - weight
  double lemma1_bound = 0.0;  ///< 1 - 2 eta
  double lemma2_bound = 0.0;  ///< largest weight of any dim-Lambda subspace
  double entropy_bits = 0.0;
  std::uint64_t words = 0;

  bool lemma1_holds() const { return avg_fidelity >= lemma1_bound - 1e-12; }
  bool lemma2_holds() const { return avg_fidelity <= lemma2_bound + 1e-12; }
};

/// Block transposition through Lambda. A word |a> is projected onto Lambda;
/// the rejected component is replaced by the junk vector |j>, the member of
/// Lambda with the largest eigenvalue. The received state is
/// rho_a = Lambda|a><a|Lambda + (1 - x)|j><j| with x = <a|Lambda|a>, so
/// F_a = x^2 + (1 - x)|<a|j>|^2.
inline SchumacherResult schumacher_roundtrip(const SignalSource& src, std::size_t n, const CompressionMode& mode,
                                             std::uint64_t cap = enumeration_cap(kDefaultBlockCap)) {
  const DensityOperator rho = src.density();
  TypicalSubspace lambda = [&] {
    if (const auto* t = std::get_if<TypicalMode>(&mode)) return build_typical_subspace(rho, n, t->delta, cap);
    const double r = std::get<TruncateMode>(mode).rate;
    detail::require(r >= 0.0, "rate must be non-negative");
    const auto total = detail::checked_power(rho.dim(), n, cap, "typical subspace");
    const double k = std::floor(std::exp2(double(n) * r) + 1e-9);
    return top_eigenspace(rho, n, std::uint64_t(std::clamp(k, 1.0, double(total))), cap);
  }();

  const std::size_t letters = src.letters.size();
  const std::uint64_t words = detail::checked_power(letters, n, cap, "signal words");
  // overlap[k][a] = |<v_k|phi_a>|^2
  std::vector<std::vector<double>> overlap(lambda.d, std::vector<double>(letters));
  for (std::size_t k = 0; k < lambda.d; ++k)
    for (std::size_t a = 0; a < letters; ++a)
      overlap[k][a] = std::norm(lambda.eigenvectors.col(Eigen::Index(k)).dot(src.letters[a].amps()));

  std::vector<std::vector<std::uint32_t>> member_digits;
  for (auto m : lambda.members) {
    std::vector<std::uint32_t> dg(n);
    detail::digits_of(m, lambda.d, dg);
    member_digits.push_back(std::move(dg));
  }

  SchumacherResult out;
  out.n = n;
  out.words = words;
  std::vector<std::uint32_t> word(n);
  for (std::uint64_t w = 0; w < words; ++w) {
    detail::digits_of(w, letters, word);
    double pa = 1.0;
    for (auto a : word) pa *= src.probs[a];
    if (pa == 0.0) continue;
    double x = 0.0, junk = 0.0;
    for (std::size_t m = 0; m < member_digits.size(); ++m) {
      double ov = 1.0;
      for (std::size_t i = 0; i < n && ov > 0.0; ++i) ov *= overlap[member_digits[m][i]][word[i]];
      x += ov;
      if (m == 0) junk = ov;
    }
    x = std::min(x, 1.0);
    out.avg_fidelity += pa * (x * x + (1.0 - x) * junk);
  }

  out.dimension = lambda.dimension();
  out.rate = out.dimension ? std::log2(double(out.dimension)) / double(n) : 0.0;
  out.weight = lambda.weight;
  out.eta = lambda.eta();
  out.lemma1_bound = 1.0 - 2.0 * out.eta;
  out.lemma2_bound = out.dimension ? top_eigenspace(rho, n, out.dimension, cap).weight : 0.0;
  out.entropy_bits = lambda.entropy_bits;
  return out;
}

/// Entanglement fidelity <Psi|(I (x) C)(|Psi><Psi|)|Psi> of the transposition
/// C applied to the system half of the purification of rho^{(x)n}. The
/// reference basis of the purification is rotated by `reference_unitary`.
inline double compression_entanglement_fidelity(const DensityOperator& rho, std::size_t n, double delta,
                                                const Matrix& reference_unitary) {
  const TypicalSubspace lambda = build_typical_subspace(rho, n, delta, 1U << 10);
  detail::require(std::size_t(reference_unitary.rows()) == rho.dim(), "unitary dimension mismatch");
  if (lambda.members.empty()) return 0.0;
  Matrix rho_n = Matrix::Ones(1, 1), u_n = Matrix::Ones(1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    rho_n = kron(rho_n, rho.matrix());
    u_n = kron(u_n, reference_unitary);
  }
  // |Psi> = sum_{r,m} C(r, m) |r>|m> with Tr_R = rho_n.
  const Matrix c = (psd_sqrt(rho_n) * u_n).transpose();
  const Matrix gram = c.adjoint() * c;  // <Psi|(I (x) K)|Psi> = sum K(m, m') gram(m, m')
  auto expect = [&](const Matrix& k) { return gram.cwiseProduct(k).sum(); };
  const Matrix pi = lambda.projector_matrix();
  double fe = std::norm(expect(pi));
  const Vector junk = lambda.product_vector(lambda.members.front());
  const SpectralDecomposition comp = spectral_decomposition(Matrix(identity(std::size_t(pi.rows())) - pi));
  for (Eigen::Index k = 0; k < comp.eigenvalues.size(); ++k) {
    if (comp.eigenvalues(k) < 0.5) continue;
    fe += std::norm(expect(outer(junk, comp.eigenvectors.col(k))));
  }
  return fe;
}

// ---------------------------------------------------------------------------
// Error correction

namespace qecc {
/// Y = XZ, a real matrix.
inline Matrix Y() { return pauli::X() * pauli::Z(); }
}  // namespace qecc

/// Pauli error strings over {I, X, Y, Z}, one letter per qubit.
class PauliErrorSet {
 public:
  explicit PauliErrorSet(std::vector<std::string> errors) : errors_(std::move(errors)) {
    detail::require(!errors_.empty(), "error set is empty");
    for (const auto& e : errors_) {
      detail::require(e.size() == errors_.front().size() && !e.empty(), "error strings must share a qubit count");
      for (char c : e) detail::require(std::string_view("IXYZ").find(c) != std::string_view::npos, "error letters must be I, X, Y or Z");
    }
  }

  std::size_t qubits() const { return errors_.front().size(); }
  std::size_t size() const { return errors_.size(); }
  const std::vector<std::string>& errors() const { return errors_; }

  static std::size_t weight(const std::string& e) { return std::size_t(std::count_if(e.begin(), e.end(), [](char c) { return c != 'I'; })); }

  static Matrix matrix(const std::string& e) {
    Matrix m = Matrix::Ones(1, 1);
    for (char c : e) {
      switch (c) {
        case 'I': m = kron(m, pauli::I()); break;
        case 'X': m = kron(m, pauli::X()); break;
        case 'Y': m = kron(m, qecc::Y()); break;
        case 'Z': m = kron(m, pauli::Z()); break;
        default: throw validation_error("bad Pauli letter");
      }
    }
    return m;
  }

 private:
  std::vector<std::string> errors_;
};

/// Orthonormal codewords spanning the code space.
class CodeSubspace {
 public:
  explicit CodeSubspace(std::vector<StateVector> codewords) : words_(std::move(codewords)) {
    detail::require(!words_.empty(), "code needs at least one codeword");
    const std::size_t d = words_.front().dim();
    detail::require(d >= 2 && (d & (d - 1)) == 0, "codewords must be n-qubit states");
    for (std::size_t i = 0; i < words_.size(); ++i) {
      detail::require(words_[i].dim() == d, "codewords must share a dimension");
      for (std::size_t j = 0; j < i; ++j)
        detail::require(std::abs(words_[i].amps().dot(words_[j].amps())) <= 1e-10, "codewords must be orthonormal");
    }
  }

  /// {|000>, |111>}.
  static CodeSubspace repetition3() { return CodeSubspace({StateVector::basis(8, 0), StateVector::basis(8, 7)}); }

  std::size_t qubits() const { return std::size_t(std::countr_zero(words_.front().dim())); }
  const std::vector<StateVector>& codewords() const { return words_; }

 private:
  std::vector<StateVector> words_;
};

struct QeccWitness {
  std::string error_s;
  std::string error_t;
  std::size_t u = 0;
  std::size_t v = 0;
  cplx value_u{};  ///< <u|Ms^dagger Mt|v> for off-diagonal, <u|..|u> for diagonal
  cplx value_v{};  ///< <v|..|v> for a diagonal violation
  bool diagonal = false;
};

struct QeccReport {
  bool correctable = true;
  std::optional<QeccWitness> witness;
  std::size_t pairs_checked = 0;
};

/// Checks <u|Ms^dagger Mt|v> = 0 for u != v and <u|Ms^dagger Mt|u> independent
/// of u, for every pair (s, t); stops at the first violation.
inline QeccReport qecc_check(const CodeSubspace& code, const PauliErrorSet& errors, double tolerance = 1e-10) {
  detail::require(code.qubits() == errors.qubits(), "code and error set disagree on the qubit count");
  const auto& w = code.codewords();
  std::vector<Matrix> ms;
  for (const auto& e : errors.errors()) ms.push_back(PauliErrorSet::matrix(e));
  QeccReport rep;
  for (std::size_t s = 0; s < ms.size(); ++s)
    for (std::size_t t = 0; t < ms.size(); ++t) {
      ++rep.pairs_checked;
      const Matrix m = ms[s].adjoint() * ms[t];
      std::vector<Vector> mw;
      for (const auto& x : w) mw.push_back(m * x.amps());
      for (std::size_t u = 0; u < w.size(); ++u)
        for (std::size_t v = 0; v < w.size(); ++v) {
          const cplx val = w[u].amps().dot(mw[v]);
          if (u != v && std::abs(val) > tolerance) {
            rep.correctable = false;
            rep.witness = QeccWitness{errors.errors()[s], errors.errors()[t], u, v, val, {}, false};
            return rep;
          }
        }
      const cplx first = w[0].amps().dot(mw[0]);
      for (std::size_t u = 1; u < w.size(); ++u) {
        const cplx val = w[u].amps().dot(mw[u]);
        if (std::abs(val - first) > tolerance) {
          rep.correctable = false;
          rep.witness = QeccWitness{errors.errors()[s], errors.errors()[t], 0, u, first, val, true};
          return rep;
        }
      }
    }
  return rep;
}

struct RecoveryResult {
  double fidelity = 0.0;                   ///< <psi_L|rho_out|psi_L>
  std::array<double, 4> syndrome_probs{};  ///< (Z1Z2, Z2Z3) = (+,+), (+,-), (-,+), (-,-)
  bool correctable = true;                 ///< error lies in {I, X1, X2, X3}
};

/// Three-qubit repetition code: encode a|000> + b|111>, apply `error`, measure
/// the Z1Z2 and Z2Z3 parities and apply the indicated X correction.
inline RecoveryResult recovery_demo(cplx a, cplx b, const std::string& error) {
  const PauliErrorSet es({error});
  detail::require(es.qubits() == 3, "recovery demo uses three qubits");
  Vector logical = Vector::Zero(8);
  logical(0) = a;
  logical(7) = b;
  const double norm = logical.norm();
  detail::require(norm > 0.0, "logical amplitudes must not both vanish");
  logical /= norm;
  const Vector corrupted = PauliErrorSet::matrix(error) * logical;

  const Matrix z12 = PauliErrorSet::matrix("ZZI"), z23 = PauliErrorSet::matrix("IZZ");
  const std::array<std::string, 4> fixes{"III", "IIX", "XII", "IXI"};
  RecoveryResult out;
  Matrix rho_out = Matrix::Zero(8, 8);
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2) {
      const Matrix p = 0.25 * (identity(8) + (s1 ? -1.0 : 1.0) * z12) * (identity(8) + (s2 ? -1.0 : 1.0) * z23);
      const Vector branch = PauliErrorSet::matrix(fixes[std::size_t(2 * s1 + s2)]) * (p * corrupted);
      out.syndrome_probs[std::size_t(2 * s1 + s2)] = branch.squaredNorm();
      rho_out += projector(branch);
    }
  out.fidelity = std::clamp(logical.dot(rho_out * logical).real(), 0.0, 1.0);
  out.correctable = error == "III" || error == "XII" || error == "IXI" || error == "IIX";
  return out;
}

/// k <= n - log2 sum_{i<=t} C(n, i), with the sum in exact integer arithmetic.
inline double hamming_bound(std::size_t n, std::size_t t) {
  detail::require(t <= n, "need 0 <= t <= n");
  using u128 = unsigned __int128;
  const u128 limit = ~u128(0);
  u128 sum = 0, binom = 1;
  for (std::size_t i = 0; i <= t; ++i) {
    if (i > 0) {
      // binom(n, i) = binom(n, i-1) * (n - i + 1) / i, exact at each step.
      const u128 num = n - i + 1;
      detail::require(binom <= limit / num, "binomial sum overflows 128-bit arithmetic");
      binom = binom * num / i;
    }
    detail::require(sum <= limit - binom, "binomial sum overflows 128-bit arithmetic");
    sum += binom;
  }
  // log2 of a 128-bit integer: split off the high bits to keep precision.
  const double hi = double(std::uint64_t(sum >> 64)), lo = double(std::uint64_t(sum));
  return double(n) - std::log2(std::ldexp(hi, 64) + lo);
}

}  // namespace qinfo
