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

// Command-line front end for the qinfo demos.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qinfo/json_io.hpp"
#include "qinfo/qinfo.hpp"

namespace {

using qinfo::cplx;
using qinfo::validation_error;
using qinfo::json_io::json;
using qinfo::json_io::number;
using qinfo::json_io::to_json;

struct Common {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
  std::string transcript;
  std::string base = "bits";
};

void add_common(CLI::App* sub, Common& c, bool with_base = false) {
  sub->add_option("--seed", c.seed, "64-bit seed; a random seed is drawn and reported when omitted");
  sub->add_option("--out", c.out, "write the summary to this file instead of stdout");
  sub->add_option("--format", c.format, "summary format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--transcript", c.transcript, "write per-round records as JSON lines to this file");
  if (with_base) sub->add_option("--base", c.base, "logarithm base")->check(CLI::IsMember({"bits", "nats"}));
}

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed) return *c.seed;
  std::random_device rd;
  const std::uint64_t s = (std::uint64_t(rd()) << 32) ^ std::uint64_t(rd());
  std::cerr << "seed: " << s << "\n";
  return s;
}

qinfo::LogBase log_base(const Common& c) { return c.base == "nats" ? qinfo::LogBase::nats : qinfo::LogBase::bits; }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw validation_error("not a number: '" + s + "'");
  }
  if (used != s.size()) throw validation_error("not a number: '" + s + "'");
  return v;
}

/// Accepts "0.6", "0.8i", "-i", "0.5+0.5i" and "0.5-0.5i".
cplx parse_complex(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) throw validation_error("empty amplitude");
  if (s.back() != 'i') return {parse_real(s), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  auto imag_of = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t);
  };
  if (cut == std::string::npos) return {0.0, imag_of(body)};
  return {parse_real(body.substr(0, cut)), imag_of(body.substr(cut))};
}

qinfo::Vector parse_amplitudes(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.empty()) throw validation_error("no amplitudes given");
  qinfo::Vector v{Eigen::Index(parts.size())};
  for (std::size_t i = 0; i < parts.size(); ++i) v(Eigen::Index(i)) = parse_complex(parts[i]);
  return v;
}

std::vector<std::vector<double>> parse_rows(const std::string& s) {
  std::vector<std::vector<double>> rows;
  for (const auto& r : split(s, ';')) {
    std::vector<double> row;
    for (const auto& x : split(r, ',')) row.push_back(parse_real(x));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw validation_error("no rows given");
  return rows;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw validation_error("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string csv_field(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : qinfo::json_io::dump(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

void emit(const json& summary, const Common& c) {
  std::ostringstream os;
  if (c.format == "csv") {
    std::string header, row;
    for (auto it = summary.begin(); it != summary.end(); ++it) {
      if (!header.empty()) {
        header += ',';
        row += ',';
      }
      header += it.key();
      row += csv_field(it.value());
    }
    os << header << "\n" << row << "\n";
  } else {
    os << qinfo::json_io::dump(summary, 2) << "\n";
  }
  if (c.out.empty()) {
    std::cout << os.str();
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw validation_error("cannot write '" + c.out + "'");
  f << os.str();
}

void write_lines(const std::vector<json>& lines, const Common& c) {
  if (c.transcript.empty()) return;
  std::ofstream f(c.transcript, std::ios::binary);
  if (!f) throw validation_error("cannot write '" + c.transcript + "'");
  for (const auto& l : lines) f << qinfo::json_io::dump(l) << "\n";
}

json probs_json(const std::array<double, 4>& p) { return to_json(std::span<const double>(p)); }

std::string bits_string(const std::vector<int>& bits) {
  std::string s;
  for (int b : bits) s += char('0' + b);
  return s;
}

qinfo::EveStrategy parse_eve(const std::string& spec) {
  if (spec == "none") return qinfo::NoEve{};
  if (spec == "intercept") return qinfo::InterceptResend{qinfo::EveBasisPolicy::random};
  if (spec == "intercept-z") return qinfo::InterceptResend{qinfo::EveBasisPolicy::z};
  if (spec == "intercept-x") return qinfo::InterceptResend{qinfo::EveBasisPolicy::x};
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
    if (kind == "depolarize") return qinfo::KrausAttack{qinfo::KrausChannel::depolarizing(parse_real(arg))};
    if (kind == "dephase") return qinfo::KrausAttack{qinfo::KrausChannel::dephasing(parse_real(arg))};
    if (kind == "kraus") return qinfo::KrausAttack{qinfo::json_io::channel_from(read_json(arg))};
  }
  throw validation_error("unknown eavesdropper '" + spec +
                         "' (none, intercept, intercept-z, intercept-x, depolarize:P, dephase:P, kraus:FILE)");
}

json transcript_summary(const qinfo::QkdTranscript& t, std::uint64_t seed) {
  json j{{"rounds", t.rounds.size()},
         {"sifted", t.sifted_rounds.size()},
         {"sift_fraction", number(t.sift_fraction)},
         {"qber", number(t.qber)},
         {"aborted", t.aborted}};
  if (t.chsh_estimate) j["chsh_estimate"] = number(*t.chsh_estimate);
  j["key_alice"] = bits_string(t.sifted_key_alice);
  j["key_bob"] = bits_string(t.sifted_key_bob);
  j["seed"] = seed;
  return j;
}

std::vector<json> transcript_lines(const qinfo::QkdTranscript& t) {
  std::vector<json> lines;
  std::vector<bool> sifted(t.rounds.size(), false);
  for (auto r : t.sifted_rounds) sifted[r] = true;
  for (std::size_t i = 0; i < t.rounds.size(); ++i) {
    const auto& r = t.rounds[i];
    lines.push_back(json{{"round", i},
                         {"alice_basis", r.alice_basis},
                         {"alice_value", r.alice_value},
                         {"bob_basis", r.bob_basis},
                         {"bob_outcome", r.bob_outcome},
                         {"eve", r.eve_action},
                         {"sifted", bool(sifted[i])}});
  }
  return lines;
}

std::string base_key(const std::string& stem, const Common& c) { return stem + "_" + c.base; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qinfo: quantum information demos"};
  app.require_subcommand(1);
  Common common;
  std::map<CLI::App*, std::function<void()>> actions;

  // entropy
  {
    auto* s = app.add_subcommand("entropy", "Shannon entropy, joint measures and relative entropy");
    add_common(s, common, true);
    auto probs = std::make_shared<std::vector<double>>();
    auto kl = std::make_shared<std::vector<double>>();
    auto joint = std::make_shared<std::string>();
    auto* p_opt = s->add_option("--probs", *probs, "distribution p, comma separated")->delimiter(',');
    s->add_option("--kl", *kl, "second distribution q for D(p||q)")->delimiter(',')->needs(p_opt);
    auto* j_opt = s->add_option("--joint", *joint, "joint distribution rows 'a,b;c,d' (rows index A)");
    p_opt->excludes(j_opt);
    actions[s] = [=, &common] {
      const auto base = log_base(common);
      json out{{"command", "entropy"}, {"base", common.base}};
      if (!joint->empty()) {
        const auto j = qinfo::JointDistribution::from_rows(parse_rows(*joint));
        out["joint_entropy"] = number(qinfo::joint_entropy(j, base));
        out["entropy_a"] = number(qinfo::shannon_entropy(j.marginal_a(), base));
        out["entropy_b"] = number(qinfo::shannon_entropy(j.marginal_b(), base));
        out["conditional_entropy_b_given_a"] = number(qinfo::conditional_entropy(j, base));
        out["mutual_information"] = number(qinfo::mutual_information(j, base));
      } else {
        if (probs->empty()) throw validation_error("give --probs or --joint");
        const qinfo::Distribution p(*probs);
        out["entropy"] = number(qinfo::shannon_entropy(p, base));
        if (!kl->empty()) out["kl_divergence"] = number(qinfo::kl_divergence(p, qinfo::Distribution(*kl), base));
      }
      emit(out, common);
    };
  }

  // capacity
  {
    auto* s = app.add_subcommand("capacity", "Channel capacity, closed form or numerical");
    add_common(s, common, true);
    auto bsc = std::make_shared<std::optional<double>>();
    auto ternary = std::make_shared<std::optional<double>>();
    auto noiseless = std::make_shared<std::optional<std::size_t>>();
    auto channel = std::make_shared<std::string>();
    auto numeric = std::make_shared<bool>(false);
    auto tol = std::make_shared<double>(1e-12);
    auto* g = s->add_option_group("channel", "channel choice");
    g->add_option("--bsc", *bsc, "binary symmetric channel with this flip probability");
    g->add_option("--ternary", *ternary, "ternary channel with this swap probability");
    g->add_option("--noiseless", *noiseless, "noiseless channel on this many symbols");
    g->add_option("--channel", *channel, "transition rows p(y|x) as 'a,b;c,d'");
    g->require_option(1);
    s->add_flag("--numeric", *numeric, "also run the numerical optimiser on closed-form channels");
    s->add_option("--tol", *tol, "numerical stopping tolerance in nats");
    actions[s] = [=, &common] {
      const auto base = log_base(common);
      const std::string key = base_key("capacity", common);
      json out{{"command", "capacity"}, {"base", common.base}};
      std::optional<qinfo::DiscreteChannel> ch;
      std::optional<qinfo::ClosedFormChannel> closed;
      if (*bsc) {
        closed = qinfo::BinarySymmetric{**bsc};
        ch = qinfo::binary_symmetric_channel(**bsc);
      } else if (*ternary) {
        closed = qinfo::Ternary{**ternary};
        ch = qinfo::ternary_channel(**ternary);
      } else if (*noiseless) {
        closed = qinfo::Noiseless{**noiseless};
        ch = qinfo::noiseless_channel(**noiseless);
      } else {
        ch = qinfo::DiscreteChannel(parse_rows(*channel));
      }
      if (closed) {
        const auto r = qinfo::channel_capacity_closed(*closed, base);
        out["method"] = "closed_form";
        out[key] = number(r.capacity);
        out["optimal_input"] = to_json(r.optimal_input);
      }
      if (!closed || *numeric) {
        const auto r = qinfo::channel_capacity_numeric(*ch, *tol, base);
        const std::string prefix = closed ? "numeric_" : "";
        if (!closed) out["method"] = "numeric";
        out[prefix + key] = number(r.capacity);
        out[prefix + "optimal_input"] = to_json(r.optimal_input);
        out["iterations"] = r.iterations;
      }
      emit(out, common);
    };
  }

  // typical
  {
    auto* s = app.add_subcommand("typical", "Enumerate the epsilon-typical set of an i.i.d. source");
    add_common(s, common);
    auto probs = std::make_shared<std::vector<double>>();
    auto n = std::make_shared<std::size_t>(10);
    auto eps = std::make_shared<double>(0.1);
    s->add_option("--probs", *probs, "source distribution")->delimiter(',')->required();
    s->add_option("--n", *n, "block length");
    s->add_option("--eps", *eps, "typicality tolerance");
    actions[s] = [=, &common] {
      const auto t = qinfo::typical_set(qinfo::Distribution(*probs), *n, *eps);
      json out{{"command", "typical"},
               {"n", t.block_length},
               {"eps", number(t.epsilon)},
               {"entropy_bits", number(t.entropy_bits)},
               {"size", t.size()},
               {"total_prob", number(t.total_prob)},
               {"sequences_examined", t.sequences_examined},
               {"upper_size_bound_holds", t.upper_size_bound_holds()},
               {"lower_size_bound_holds", t.lower_size_bound_holds()},
               {"probability_bound_holds", t.probability_bound_holds()}};
      std::vector<json> lines;
      for (const auto& m : t.members) lines.push_back(json{{"sequence", m}});
      write_lines(lines, common);
      emit(out, common);
    };
  }

  // shannon2
  {
    auto* s = app.add_subcommand("shannon2", "Random-coding block error rates with ML decoding");
    add_common(s, common);
    auto bsc = std::make_shared<std::optional<double>>();
    auto channel = std::make_shared<std::string>();
    auto rate = std::make_shared<double>(0.25);
    auto lengths = std::make_shared<std::vector<std::size_t>>(std::vector<std::size_t>{4, 8, 12});
    auto trials = std::make_shared<std::size_t>(200);
    auto* g = s->add_option_group("channel", "channel choice");
    g->add_option("--bsc", *bsc, "binary symmetric channel flip probability");
    g->add_option("--channel", *channel, "transition rows p(y|x)");
    g->require_option(1);
    s->add_option("--rate", *rate, "code rate in bits per symbol");
    s->add_option("--n", *lengths, "block lengths")->delimiter(',');
    s->add_option("--trials", *trials, "trials per block length");
    actions[s] = [=, &common] {
      const std::uint64_t seed = resolve_seed(common);
      const auto ch = *bsc ? qinfo::binary_symmetric_channel(**bsc) : qinfo::DiscreteChannel(parse_rows(*channel));
      const auto table = qinfo::noisy_coding_demo(ch, *rate, *lengths, *trials, seed);
      json rows = json::array();
      std::vector<json> lines;
      for (const auto& r : table.rows) {
        json row{{"n", r.block_length},
                 {"codebook_size", r.codebook_size},
                 {"trials", r.trials},
                 {"errors", r.errors},
                 {"error_rate", number(r.error_rate)},
                 {"std_error", number(r.std_error)}};
        lines.push_back(row);
        rows.push_back(std::move(row));
      }
      write_lines(lines, common);
      emit(json{{"command", "shannon2"},
                {"rate", number(table.rate)},
                {"capacity_bits", number(table.capacity_bits)},
                {"rows", rows},
                {"seed", seed}},
           common);
    };
  }

  // holevo
  {
    auto* s = app.add_subcommand("holevo", "Holevo quantity and accessible-information search");
    add_common(s, common, true);
    auto file = std::make_shared<std::string>();
    auto preset = std::make_shared<std::string>();
    auto restarts = std::make_shared<std::size_t>(6);
    auto evals = std::make_shared<std::size_t>(6000);
    auto* g = s->add_option_group("ensemble", "ensemble choice");
    g->add_option("--ensemble", *file, "ensemble JSON {probs, states}")->check(CLI::ExistingFile);
    g->add_option("--preset", *preset, "built-in ensemble")->check(CLI::IsMember({"hv45"}));
    g->require_option(1);
    s->add_option("--restarts", *restarts, "random starts per POVM size");
    s->add_option("--evals", *evals, "evaluation budget per local search");
    actions[s] = [=, &common] {
      const std::uint64_t seed = resolve_seed(common);
      const auto base = log_base(common);
      const auto e = preset->empty() ? qinfo::json_io::ensemble_from(read_json(*file)) : qinfo::horizontal_diagonal_ensemble();
      qinfo::AccessibleSearchConfig cfg;
      cfg.restarts = *restarts;
      cfg.max_evaluations = *evals;
      cfg.seed = seed;
      const auto r = qinfo::accessible_information_search(e, cfg, base);
      emit(json{{"command", "holevo"},
                {"base", common.base},
                {"holevo_chi", number(r.holevo_chi)},
                {"preparation_information", number(qinfo::preparation_information(e, base))},
                {"j_lower", number(r.j_lower)},
                {"approximate", r.approximate},
                {"evaluations", r.evaluations},
                {"best_povm", to_json(r.best.elements())},
                {"seed", seed}},
           common);
    };
  }

  // discriminate
  {
    auto* s = app.add_subcommand("discriminate", "Two-state discrimination, unambiguous measurement, Chernoff bound");
    add_common(s, common);
    auto file = std::make_shared<std::string>();
    auto preset = std::make_shared<std::string>();
    auto unambiguous = std::make_shared<bool>(false);
    auto p0 = std::make_shared<std::vector<double>>();
    auto p1 = std::make_shared<std::vector<double>>();
    auto* g = s->add_option_group("input", "input choice");
    g->add_option("--states", *file, "ensemble JSON {probs, states}; probs are the priors")->check(CLI::ExistingFile);
    g->add_option("--preset", *preset, "built-in pair")->check(CLI::IsMember({"hv45"}));
    auto* c0 = g->add_option("--p0", *p0, "first distribution for the Chernoff bound")->delimiter(',');
    s->add_option("--p1", *p1, "second distribution for the Chernoff bound")->delimiter(',')->needs(c0);
    g->require_option(1);
    s->add_flag("--unambiguous", *unambiguous, "compute the zero-error measurement for pure states");
    actions[s] = [=, &common] {
      json out{{"command", "discriminate"}};
      if (!p0->empty()) {
        if (p1->empty()) throw validation_error("--p0 needs --p1");
        const qinfo::Distribution a(*p0), b(*p1);
        const auto c = qinfo::chernoff_bound(a, b);
        out["chernoff_lambda"] = number(c.lambda);
        out["chernoff_alpha"] = number(c.alpha);
        out["classical_overlap"] = number(qinfo::classical_overlap(a, b));
        emit(out, common);
        return;
      }
      json spec;
      if (!preset->empty()) {
        const double r = std::sqrt(0.5);
        spec = json::object();
        spec["probs"] = json::array({0.5, 0.5});
        spec["states"] = json::array({json::array({1.0, 0.0}), json::array({r, r})});
      } else {
        spec = read_json(*file);
      }
      const auto e = qinfo::json_io::ensemble_from(spec);
      if (*unambiguous) {
        std::vector<qinfo::StateVector> states;
        for (const auto& st : spec.at("states")) states.push_back(qinfo::json_io::state_from(st));
        const auto r = qinfo::unambiguous_discriminator(states, e.probs());
        out["average_success"] = number(r.average_success);
        out["success_probs"] = to_json(std::span<const double>(r.success_probs));
        out["scales"] = to_json(std::span<const double>(r.scales));
        out["max_cross_term"] = number(r.max_cross_term);
        out["unscaled_is_povm"] = r.unscaled_is_povm;
        out["elements"] = to_json(r.elements);
        out["inconclusive"] = to_json(r.inconclusive);
        emit(out, common);
        return;
      }
      if (e.size() != 2) throw validation_error("two-state discrimination needs exactly two states");
      const auto& st = e.states();
      const qinfo::DiscriminationProblem p(e.probs()[0], e.probs()[1], st[0], st[1]);
      out["error_probability"] = number(qinfo::error_probability(p));
      out["fidelity"] = number(qinfo::fidelity(st[0], st[1]));
      out["statistical_overlap"] = number(qinfo::statistical_overlap(st[0], st[1]));
      out["trace_distance"] = number(qinfo::trace_distance(st[0], st[1]));
      emit(out, common);
    };
  }

  // chsh
  {
    auto* s = app.add_subcommand("chsh", "CHSH value of a two-qubit state");
    add_common(s, common);
    auto label = std::make_shared<std::string>();
    auto werner = std::make_shared<std::optional<double>>();
    auto state_file = std::make_shared<std::string>();
    auto setting = std::make_shared<std::string>();
    auto threshold = std::make_shared<bool>(false);
    auto* g = s->add_option_group("state", "state choice");
    g->add_option("--state", *label, "Bell label")
        ->check(CLI::IsMember({"phi_plus", "phi_minus", "psi_plus", "psi_minus"}));
    g->add_option("--werner", *werner, "Werner state with this fidelity");
    g->add_option("--state-file", *state_file, "density operator JSON")->check(CLI::ExistingFile);
    s->add_option("--setting", *setting, "CHSH axes JSON {alice: [a0, a2], bob: [b0, b2]}")->check(CLI::ExistingFile);
    s->add_flag("--threshold", *threshold, "report the Werner fidelity above which |S| exceeds 2");
    actions[s] = [=, &common] {
      const qinfo::ChshSetting cs = setting->empty() ? qinfo::E91Axes{}.chsh() : qinfo::json_io::chsh_from(read_json(*setting));
      json out{{"command", "chsh"}, {"setting", to_json(cs)}};
      std::optional<qinfo::DensityOperator> rho;
      if (!label->empty()) rho = qinfo::DensityOperator(qinfo::bell_state(qinfo::BellLabel::parse(*label)));
      if (*werner) rho = qinfo::werner_density(**werner);
      if (!state_file->empty()) rho = qinfo::json_io::density_from(read_json(*state_file));
      if (!rho && !*threshold) rho = qinfo::DensityOperator(qinfo::bell_state(qinfo::psi_minus));
      if (rho) {
        const double v = qinfo::chsh_value(*rho, cs);
        out["S"] = number(v);
        out["local_bound"] = 2;
        out["tsirelson_bound"] = number(2.0 * std::sqrt(2.0));
        out["violates_local"] = std::abs(v) > 2.0 + 1e-12;
      }
      if (*threshold) {
        const auto t = qinfo::werner_chsh_threshold(cs);
        out["werner_threshold"] = t ? number(*t) : json(nullptr);
      }
      emit(out, common);
    };
  }

  // bb84
  {
    auto* s = app.add_subcommand("bb84", "BB84 key distribution");
    add_common(s, common);
    auto rounds = std::make_shared<std::size_t>(10000);
    auto eve = std::make_shared<std::string>("none");
    auto qber = std::make_shared<double>(0.11);
    s->add_option("--rounds", *rounds, "number of transmitted qubits");
    s->add_option("--eve", *eve, "none, intercept, intercept-z, intercept-x, depolarize:P, dephase:P, kraus:FILE");
    s->add_option("--qber-threshold", *qber, "abort above this sifted error rate");
    actions[s] = [=, &common] {
      qinfo::Bb84Config cfg;
      cfg.rounds = *rounds;
      cfg.seed = resolve_seed(common);
      cfg.eve = parse_eve(*eve);
      cfg.qber_threshold = *qber;
      const auto t = qinfo::bb84(cfg);
      write_lines(transcript_lines(t), common);
      json out{{"command", "bb84"}, {"eve", *eve}};
      out.update(transcript_summary(t, cfg.seed));
      emit(out, common);
    };
  }

  // e91
  {
    auto* s = app.add_subcommand("e91", "Entanglement-based key distribution with a CHSH test");
    add_common(s, common);
    auto rounds = std::make_shared<std::size_t>(10000);
    auto eve = std::make_shared<std::string>("none");
    auto qber = std::make_shared<double>(0.11);
    auto chsh = std::make_shared<double>(2.0);
    s->add_option("--rounds", *rounds, "number of shared pairs");
    s->add_option("--eve", *eve, "none, intercept, intercept-z, intercept-x, depolarize:P, dephase:P, kraus:FILE");
    s->add_option("--qber-threshold", *qber, "abort above this sifted error rate");
    s->add_option("--chsh-threshold", *chsh, "abort when |S| does not exceed this");
    actions[s] = [=, &common] {
      qinfo::E91Config cfg;
      cfg.rounds = *rounds;
      cfg.seed = resolve_seed(common);
      cfg.eve = parse_eve(*eve);
      cfg.qber_threshold = *qber;
      cfg.chsh_threshold = *chsh;
      const auto t = qinfo::ekert91(cfg);
      write_lines(transcript_lines(t), common);
      json out{{"command", "e91"}, {"eve", *eve}};
      out.update(transcript_summary(t, cfg.seed));
      emit(out, common);
    };
  }

  // teleport
  {
    auto* s = app.add_subcommand("teleport", "Teleport a qubit state through phi+");
    add_common(s, common);
    auto state = std::make_shared<std::string>();
    auto outcome = std::make_shared<std::string>();
    s->add_option("--state", *state, "amplitudes, e.g. '1,0' or '0.6,0.8i'")->required();
    s->add_option("--outcome", *outcome, "force the Bell outcome")
        ->check(CLI::IsMember({"phi_plus", "phi_minus", "psi_plus", "psi_minus"}));
    actions[s] = [=, &common] {
      const std::uint64_t seed = outcome->empty() ? resolve_seed(common) : common.seed.value_or(0);
      const auto mu = qinfo::StateVector::normalized(parse_amplitudes(*state));
      std::optional<qinfo::BellLabel> fixed;
      if (!outcome->empty()) fixed = qinfo::BellLabel::parse(*outcome);
      const auto r = qinfo::teleport(mu, fixed, seed);
      const auto avg = qinfo::teleport_uncorrected_average(mu);
      emit(json{{"command", "teleport"},
                {"outcome", r.outcome.name()},
                {"outcome_probs", probs_json(r.outcome_probs)},
                {"bob_before", to_json(r.bob_before.amps())},
                {"bob_after", to_json(r.bob_after.amps())},
                {"fidelity", number(r.fidelity)},
                {"uncorrected_average", to_json(avg.matrix())},
                {"seed", seed}},
           common);
    };
  }

  // superdense
  {
    auto* s = app.add_subcommand("superdense", "Send two classical bits with one qubit");
    add_common(s, common);
    auto message = std::make_shared<std::string>();
    auto shared = std::make_shared<std::string>("phi_plus");
    s->add_option("--message", *message, "0..3 or two bits such as '10'")->required();
    s->add_option("--shared", *shared, "shared state: phi_plus, mixed, or werner:F");
    actions[s] = [=, &common] {
      const std::uint64_t seed = resolve_seed(common);
      unsigned m = 0;
      if (message->size() == 2 && message->find_first_not_of("01") == std::string::npos) {
        m = unsigned(2 * ((*message)[0] - '0') + ((*message)[1] - '0'));
      } else {
        const double v = parse_real(*message);
        if (v != std::floor(v) || v < 0 || v > 3) throw validation_error("message must be 0..3");
        m = unsigned(v);
      }
      std::optional<qinfo::DensityOperator> pair;
      if (*shared == "mixed") {
        pair = qinfo::DensityOperator::maximally_mixed(4).with_dims({2, 2});
      } else if (shared->rfind("werner:", 0) == 0) {
        pair = qinfo::werner_density(parse_real(shared->substr(7)));
      } else if (*shared != "phi_plus") {
        throw validation_error("unknown shared state '" + *shared + "'");
      }
      const auto r = qinfo::superdense_send(m, seed, pair);
      emit(json{{"command", "superdense"},
                {"message", r.message},
                {"decoded", r.decoded},
                {"decode_probs", probs_json(r.decode_probs)},
                {"success_probability", number(r.decode_probs[r.message])},
                {"seed", seed}},
           common);
    };
  }

  // swap
  {
    auto* s = app.add_subcommand("swap", "Entanglement swapping of two phi+ pairs");
    add_common(s, common);
    auto outcome = std::make_shared<std::string>();
    s->add_option("--outcome", *outcome, "force the BC Bell outcome")
        ->check(CLI::IsMember({"phi_plus", "phi_minus", "psi_plus", "psi_minus"}));
    actions[s] = [=, &common] {
      const std::uint64_t seed = outcome->empty() ? resolve_seed(common) : common.seed.value_or(0);
      std::optional<qinfo::BellLabel> fixed;
      if (!outcome->empty()) fixed = qinfo::BellLabel::parse(*outcome);
      const auto r = qinfo::entanglement_swap(fixed, seed);
      const auto before = qinfo::classify_bell(r.ad_before);
      emit(json{{"command", "swap"},
                {"bc_outcome", r.bc_outcome.name()},
                {"outcome_probs", probs_json(r.outcome_probs)},
                {"ad_before", before ? json(before->name()) : json(nullptr)},
                {"ad_after", to_json(r.ad_after.amps())},
                {"fidelity_to_phi_plus", number(r.fidelity_to_phi_plus)},
                {"seed", seed}},
           common);
    };
  }

  // purify
  {
    auto* s = app.add_subcommand("purify", "Recurrence purification of Werner pairs");
    add_common(s, common);
    auto from = std::make_shared<double>(0.7);
    auto rounds = std::make_shared<std::size_t>(1);
    auto mode = std::make_shared<std::string>("analytic");
    auto pairs = std::make_shared<std::size_t>(100000);
    s->add_option("--from", *from, "initial Werner fidelity");
    s->add_option("--rounds", *rounds, "number of purification rounds");
    s->add_option("--mode", *mode, "analytic or simulated")->check(CLI::IsMember({"analytic", "simulated"}));
    s->add_option("--pairs", *pairs, "initial pair count for simulated runs");
    actions[s] = [=, &common] {
      json out{{"command", "purify"}, {"mode", *mode}, {"initial_F", number(*from)}};
      qinfo::PurificationMode pm = qinfo::AnalyticPurification{};
      if (*mode == "simulated") {
        const std::uint64_t seed = resolve_seed(common);
        pm = qinfo::SimulatedPurification{seed, *pairs};
        out["seed"] = seed;
      }
      const auto run = qinfo::purify(*from, *rounds, pm);
      json rows = json::array();
      std::vector<json> lines;
      for (std::size_t i = 0; i < run.rounds.size(); ++i) {
        const auto& r = run.rounds[i];
        json row{{"round", i + 1},
                 {"F", number(r.f)},
                 {"p_pass", number(r.p_pass)},
                 {"F_next", number(r.f_next)},
                 {"pairs_remaining", number(r.pairs_remaining)}};
        lines.push_back(row);
        rows.push_back(std::move(row));
      }
      if (!run.rounds.empty()) {
        out["F_next"] = number(run.rounds.back().f_next);
        out["p_pass"] = number(run.rounds.back().p_pass);
      }
      out["rounds"] = rows;
      write_lines(lines, common);
      emit(out, common);
    };
  }

  // schumacher
  {
    auto* s = app.add_subcommand("schumacher", "Block compression through the typical subspace");
    add_common(s, common);
    auto rho = std::make_shared<std::vector<double>>();
    auto ensemble = std::make_shared<std::string>();
    auto n = std::make_shared<std::size_t>(12);
    auto delta = std::make_shared<std::optional<double>>();
    auto rate = std::make_shared<std::optional<double>>();
    auto* g = s->add_option_group("source", "signal source");
    g->add_option("--rho", *rho, "diagonal density operator; letters are its eigenvectors")->delimiter(',');
    g->add_option("--ensemble", *ensemble, "pure-state ensemble JSON {probs, states}")->check(CLI::ExistingFile);
    g->require_option(1);
    auto* d_opt = s->add_option("--delta", *delta, "typicality tolerance");
    s->add_option("--rate", *rate, "keep the top 2^(n rate) eigenvectors instead")->excludes(d_opt);
    s->add_option("--n", *n, "block length");
    actions[s] = [=, &common] {
      std::optional<qinfo::SignalSource> src;
      if (!rho->empty()) {
        src = qinfo::SignalSource::eigenensemble(qinfo::DensityOperator::diagonal(*rho));
      } else {
        const json j = read_json(*ensemble);
        std::vector<qinfo::StateVector> letters;
        for (const auto& st : j.at("states")) letters.push_back(qinfo::json_io::state_from(st));
        src.emplace(qinfo::json_io::distribution_from(j.at("probs")), std::move(letters));
      }
      qinfo::CompressionMode mode = qinfo::TypicalMode{delta->value_or(0.1)};
      if (*rate) mode = qinfo::TruncateMode{**rate};
      const auto r = qinfo::schumacher_roundtrip(*src, *n, mode);
      json out{{"command", "schumacher"},
               {"n", r.n},
               {"mode", *rate ? "truncate" : "typical"},
               {"avg_fidelity", number(r.avg_fidelity)},
               {"rate", number(r.rate)},
               {"dimension", r.dimension},
               {"weight", number(r.weight)},
               {"eta", number(r.eta)},
               {"lemma1_bound", number(r.lemma1_bound)},
               {"lemma2_bound", number(r.lemma2_bound)},
               {"lemma1_holds", r.lemma1_holds()},
               {"lemma2_holds", r.lemma2_holds()},
               {"entropy_bits", number(r.entropy_bits)},
               {"words", r.words}};
      if (*rate) out["target_rate"] = number(**rate);
      else out["delta"] = number(delta->value_or(0.1));
      emit(out, common);
    };
  }

  // qecc
  {
    auto* s = app.add_subcommand("qecc", "Error-correction condition checker and repetition-code recovery");
    add_common(s, common);
    auto code = std::make_shared<std::string>();
    auto errors = std::make_shared<std::vector<std::string>>();
    auto recover = std::make_shared<bool>(false);
    auto alpha = std::make_shared<std::string>("1");
    auto beta = std::make_shared<std::string>("0");
    auto error = std::make_shared<std::string>("III");
    auto* c_opt = s->add_option("--code", *code, "code JSON {codewords, errors}")->check(CLI::ExistingFile);
    s->add_option("--errors", *errors, "Pauli error strings, e.g. III,XII,IXI,IIX")->delimiter(',');
    auto* r_flag = s->add_flag("--recover", *recover, "run the three-qubit recovery instead of the checker");
    s->add_option("--alpha", *alpha, "logical |0> amplitude")->needs(r_flag);
    s->add_option("--beta", *beta, "logical |1> amplitude")->needs(r_flag);
    s->add_option("--error", *error, "error applied before recovery")->needs(r_flag);
    r_flag->excludes(c_opt);
    actions[s] = [=, &common] {
      if (*recover) {
        const auto r = qinfo::recovery_demo(parse_complex(*alpha), parse_complex(*beta), *error);
        emit(json{{"command", "qecc"},
                  {"mode", "recover"},
                  {"error", *error},
                  {"fidelity", number(r.fidelity)},
                  {"syndrome_probs", probs_json(r.syndrome_probs)},
                  {"correctable", r.correctable}},
             common);
        return;
      }
      std::optional<qinfo::CodeSubspace> cs;
      std::vector<std::string> errs = *errors;
      if (!code->empty()) {
        const json j = read_json(*code);
        auto [c, e] = qinfo::json_io::code_from(j);
        cs = std::move(c);
        if (errs.empty()) errs = e.errors();
      } else {
        cs = qinfo::CodeSubspace::repetition3();
        if (errs.empty()) errs = {"III", "XII", "IXI", "IIX"};
      }
      const auto rep = qinfo::qecc_check(*cs, qinfo::PauliErrorSet(errs));
      json out{{"command", "qecc"},
               {"mode", "check"},
               {"errors", errs},
               {"correctable", rep.correctable},
               {"pairs_checked", rep.pairs_checked}};
      if (rep.witness) {
        const auto& w = *rep.witness;
        out["witness"] = json{{"error_s", w.error_s},
                              {"error_t", w.error_t},
                              {"u", w.u},
                              {"v", w.v},
                              {"value_u", to_json(w.value_u)},
                              {"value_v", to_json(w.value_v)},
                              {"kind", w.diagonal ? "diagonal" : "off_diagonal"}};
      }
      emit(out, common);
    };
  }

  // hamming
  {
    auto* s = app.add_subcommand("hamming", "Hamming bound on linear codes");
    add_common(s, common);
    auto n = std::make_shared<std::size_t>(0);
    auto t = std::make_shared<std::size_t>(1);
    s->add_option("--n", *n, "block length")->required();
    s->add_option("--t", *t, "correctable errors");
    actions[s] = [=, &common] {
      const double b = qinfo::hamming_bound(*n, *t);
      emit(json{{"command", "hamming"},
                {"n", *n},
                {"t", *t},
                {"k_bound", number(b)},
                {"max_k", b < 0 ? json(nullptr) : json(std::int64_t(std::floor(b + 1e-9)))}},
           common);
    };
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    for (auto& [sub, run] : actions)
      if (sub->parsed()) run();
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
