// Copyright 2026 The trinecode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trinecode/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "trinecode/circuits.hpp"
#include "trinecode/expsim.hpp"
#include "trinecode/infotheory.hpp"
#include "trinecode/reliability.hpp"
#include "trinecode/trine.hpp"

namespace trinecode::cli {

namespace {

using json = nlohmann::ordered_json;

// Raised for bad flag values found after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json channel_json(const ChannelMatrix& ch) {
  json rows = json::array();
  for (Eigen::Index x = 0; x < ch.inputs(); ++x) {
    json row = json::array();
    for (Eigen::Index y = 0; y < ch.outputs(); ++y) row.push_back(ch.p(x, y));
    rows.push_back(std::move(row));
  }
  return {{"inputs", ch.input_labels}, {"outputs", ch.output_labels}, {"p", rows}};
}

void channel_csv(std::ostream& os, std::string_view name, const ChannelMatrix& ch) {
  for (Eigen::Index x = 0; x < ch.inputs(); ++x) {
    for (Eigen::Index y = 0; y < ch.outputs(); ++y) {
      os << name << ".p[" << ch.output_labels[static_cast<std::size_t>(y)] << '|'
         << ch.input_labels[static_cast<std::size_t>(x)] << "]," << num(ch.p(x, y)) << '\n';
    }
  }
}

json noise_json(const expsim::NoiseModel& nm) {
  return {{"visibility", nm.visibility},
          {"dark_rate", nm.dark_rate},
          {"background_rate", nm.background_rate},
          {"detector_efficiency", nm.detector_efficiency},
          {"signal_rate", nm.signal_rate},
          {"law", nm.law == expsim::VisibilityLaw::Linear ? "linear" : "quadratic"}};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path);
}

struct Common {
  std::string format = "csv";
  std::string out;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out, "Write output to this path instead of stdout");
}

void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
  } else {
    write_file(c.out, text);
  }
}

std::string cmd_report(const Common& c) {
  const auto r = info::superadditivity_report();
  const ChannelMatrix acc = trine::ideal_channel(trine::ChannelKind::Acc);
  const ChannelMatrix c1 = trine::ideal_channel(trine::ChannelKind::C1);
  const ChannelMatrix srm = trine::ideal_channel(trine::ChannelKind::Srm);
  std::ostringstream os;
  if (c.format == "json") {
    json j = {{"i_acc", r.i_acc},
              {"c1", r.c1},
              {"i2", r.i2},
              {"i2_per_letter", r.i2_per_letter},
              {"gain", r.gain},
              {"channels", {{"acc", channel_json(acc)}, {"c1", channel_json(c1)}, {"srm", channel_json(srm)}}}};
    os << j.dump(2) << '\n';
    return os.str();
  }
  os << "quantity,value\n";
  os << "i_acc," << num(r.i_acc) << '\n';
  os << "c1," << num(r.c1) << '\n';
  os << "i2," << num(r.i2) << '\n';
  os << "i2_per_letter," << num(r.i2_per_letter) << '\n';
  os << "gain," << num(r.gain) << '\n';
  channel_csv(os, "acc", acc);
  channel_csv(os, "c1", c1);
  channel_csv(os, "srm", srm);
  return os.str();
}

std::string cmd_sweep(const Common& c, const std::string& kind, int points) {
  const auto grid = info::default_offset_grid(points);
  const auto curve = info::offset_sweep(info::sweep_kind_from_string(kind), grid);
  std::ostringstream os;
  if (c.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < curve.offsets.size(); ++i) {
      rows.push_back({{"phi_off", curve.offsets[i]}, {"bits", curve.values[i]}});
    }
    os << json{{"kind", kind}, {"rows", rows}}.dump(2) << '\n';
    return os.str();
  }
  os << "phi_off,bits\n";
  for (std::size_t i = 0; i < curve.offsets.size(); ++i) {
    os << num(curve.offsets[i]) << ',' << num(curve.values[i]) << '\n';
  }
  return os.str();
}

std::string cmd_circuit(const Common& c, const std::string& target) {
  circuits::GateSequence gs;
  double residual = 0.0;
  bool check = true;
  if (target == "srm") {
    const CMatrix u = circuits::decoder_unitary();
    gs = circuits::decoder_circuit();
    residual = (gs.matrix() - u).cwiseAbs().maxCoeff();
    const Ensemble words = trine::codeword_ensemble();
    const ChannelMatrix ideal = trine::ideal_channel(trine::ChannelKind::Srm);
    static constexpr int kOutcomeOfBasis[4] = {0, 1, -1, 2};
    for (std::size_t x = 0; x < words.size(); ++x) {
      const CVector v = circuits::simulate_gates(gs, words.states[x].vector);
      for (int k = 0; k < 4; ++k) {
        const double p = std::norm(v(k));
        const double want = kOutcomeOfBasis[k] < 0 ? 0.0 : ideal.p(static_cast<Eigen::Index>(x), kOutcomeOfBasis[k]);
        check = check && std::abs(p - want) <= 1e-10;
      }
    }
  } else {
    const auto acc = circuits::acc_circuit();
    gs = acc.gates;
    residual = (gs.matrix() - acc.extension.unitary).cwiseAbs().maxCoeff();
    const Ensemble letters = trine::letter_ensemble();
    const ChannelMatrix ideal = trine::ideal_channel(trine::ChannelKind::Acc);
    for (std::size_t x = 0; x < letters.size(); ++x) {
      const CVector v = circuits::simulate_gates(gs, acc.extension.embed(letters.states[x].vector));
      std::vector<double> probs(3, 0.0);
      double padding = 0.0;
      for (int k = 0; k < 4; ++k) {
        const auto o = acc.extension.outcome_of_basis[static_cast<std::size_t>(k)];
        if (o) {
          probs[*o] += std::norm(v(k));
        } else {
          padding += std::norm(v(k));
        }
      }
      check = check && padding <= 1e-10;
      for (int y = 0; y < 3; ++y) {
        check = check && std::abs(probs[static_cast<std::size_t>(y)] - ideal.p(static_cast<Eigen::Index>(x), y)) <= 1e-10;
      }
    }
  }
  const std::string text = circuits::serialize(gs);
  std::ostringstream os;
  if (c.format == "json") {
    json lines = json::array();
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    os << json{{"target", target},
               {"gates", lines},
               {"gate_count", gs.size()},
               {"residual", residual},
               {"outcome_check", check ? "pass" : "fail"}}
              .dump(2)
       << '\n';
    return os.str();
  }
  os << text;
  os << "# gate_count " << gs.size() << '\n';
  os << "# residual " << num(residual) << '\n';
  os << "# outcome_check " << (check ? "pass" : "fail") << '\n';
  return os.str();
}

std::string cmd_qchc(const Common& c, const std::vector<double>& rates, const std::vector<long>& ns,
                     std::optional<double> solve) {
  std::ostringstream os;
  if (solve) {
    json rows = json::array();
    if (c.format != "json") os << "scheme,k_over_n,target_pe,n\n";
    for (double k : rates) {
      for (auto s : {rel::Scheme::Classical, rel::Scheme::Qchc}) {
        const long n = rel::codelength_for(*solve, k, s);
        if (c.format == "json") {
          rows.push_back({{"scheme", rel::to_string(s)}, {"k_over_n", k}, {"target_pe", *solve}, {"n", n}});
        } else {
          os << rel::to_string(s) << ',' << num(k) << ',' << num(*solve) << ',' << n << '\n';
        }
      }
    }
    if (c.format == "json") os << rows.dump(2) << '\n';
    return os.str();
  }
  const auto rows = rel::qchc_compare(rates, ns);
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"scheme", rel::to_string(r.scheme)},
                     {"k_over_n", r.k_over_n},
                     {"R", r.rate},
                     {"n", r.n},
                     {"Er", r.er},
                     {"Pe_bound", r.pe_bound}});
    }
    os << arr.dump(2) << '\n';
    return os.str();
  }
  return rel::compare_csv(rows);
}

std::string cmd_srm_table(const Common& c) {
  const Povm m = trine::srm_povm_closed_form(true);
  const ChannelMatrix ch = born_channel(trine::codeword_ensemble(), m);
  std::ostringstream os;
  if (c.format == "json") {
    os << channel_json(ch).dump(2) << '\n';
    return os.str();
  }
  os << "input,outcome,p\n";
  for (Eigen::Index x = 0; x < ch.inputs(); ++x) {
    for (Eigen::Index y = 0; y < ch.outputs(); ++y) {
      os << ch.input_labels[static_cast<std::size_t>(x)] << ',' << ch.output_labels[static_cast<std::size_t>(y)] << ','
         << num(ch.p(x, y)) << '\n';
    }
  }
  return os.str();
}

std::string cmd_reliability(const Common& c, const std::string& scheme, std::optional<double> rate, int points) {
  const bool classical = scheme == "classical";
  const double eps = rel::trine_bsc_epsilon();
  const double cap = classical ? info::c1_trine() : rel::rate_ceiling(rel::Scheme::Qchc) * std::log2(3.0);
  std::vector<double> grid;
  if (rate) {
    grid.push_back(*rate);
  } else {
    for (int i = 0; i < points; ++i) grid.push_back(cap * i / points);
  }
  std::ostringstream os;
  json arr = json::array();
  if (c.format != "json") os << "scheme,R,Er,regime,rho_star\n";
  for (double r : grid) {
    const auto e = classical ? rel::er_bsc_closed(r, eps) : rel::er_ternary_closed(r);
    if (c.format == "json") {
      json row = {{"scheme", scheme}, {"R", r}, {"Er", e.er}, {"regime", rel::to_string(e.regime)}};
      row["rho_star"] = e.rho_star ? json(*e.rho_star) : json(nullptr);
      arr.push_back(std::move(row));
    } else {
      os << scheme << ',' << num(r) << ',' << num(e.er) << ',' << rel::to_string(e.regime) << ','
         << (e.rho_star ? num(*e.rho_star) : std::string("1")) << '\n';
    }
  }
  if (c.format == "json") os << arr.dump(2) << '\n';
  return os.str();
}

struct ExpsimFlags {
  std::string kind;
  std::optional<double> visibility;
  std::optional<double> dark;
  std::optional<double> background;
  std::optional<double> efficiency;
  std::optional<double> rate;
  std::optional<double> duration;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_expsim(const ExpsimFlags& f, std::ostream& out) {
  const auto kind = expsim::experiment_kind_from_string(f.kind);
  expsim::NoiseModel nm = expsim::nominal_noise(kind);
  if (f.visibility) nm.visibility = *f.visibility;
  if (f.dark) nm.dark_rate = *f.dark;
  if (f.background) nm.background_rate = *f.background;
  if (f.efficiency) nm.detector_efficiency = *f.efficiency;
  if (f.rate) nm.signal_rate = *f.rate;
  if (f.duration) nm.duration = *f.duration;
  try {
    nm.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto res = expsim::reproduce_experiment(kind, nm, f.seed);
  json counts = json::array();
  for (Eigen::Index x = 0; x < res.counts.counts.rows(); ++x) {
    json row = json::array();
    for (Eigen::Index y = 0; y < res.counts.counts.cols(); ++y) row.push_back(res.counts.counts(x, y));
    counts.push_back(std::move(row));
  }
  const json result = {{"kind", f.kind},
                       {"seed", f.seed},
                       {"bits", res.info.bits},
                       {"per_letter", res.info.per_letter},
                       {"length", res.info.length},
                       {"duration", res.counts.duration},
                       {"noise", noise_json(nm)},
                       {"counts", counts},
                       {"channel", channel_json(res.estimate.channel)}};
  out << result.dump(2) << '\n';
  if (!f.out.empty()) {
    write_file(f.out, res.counts.to_csv());
    const json sidecar = {{"duration", res.counts.duration}, {"seed", f.seed}, {"noise", noise_json(nm)}};
    write_file(f.out + ".json", sidecar.dump(2) + "\n");
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trine coding toolkit: capacities, decoders, circuits, error exponents and experiment simulation",
               "trinecode"};
  app.require_subcommand(1);
  app.allow_windows_style_options(false);

  Common report_c, sweep_c, circuit_c, qchc_c, srm_c, rel_c;

  auto* report = app.add_subcommand("report", "Capacity summary and channel matrices");
  add_common(report, report_c);

  auto* sweep = app.add_subcommand("sweep", "Mutual information against signal-set rotation");
  std::string sweep_kind;
  int points = 121;
  sweep->add_option("kind", sweep_kind, "acc or srm")->required()->check(CLI::IsMember({"acc", "srm"}));
  sweep->add_option("--points", points, "Grid points over [-pi/3, pi/3]")->check(CLI::PositiveNumber);
  add_common(sweep, sweep_c);

  auto* circuit = app.add_subcommand("circuit", "Gate-level decoder circuits");
  std::string target;
  circuit->add_option("target", target, "srm or acc")->required()->check(CLI::IsMember({"srm", "acc"}));
  add_common(circuit, circuit_c);

  auto* qchc = app.add_subcommand("qchc", "Finite-length error bounds, classical against hybrid coding");
  std::vector<double> rates{0.1, 0.62};
  std::vector<long> ns{100, 200, 500, 1000, 2000, 5000, 10000, 20000, 50000, 100000};
  std::optional<double> solve;
  qchc->add_option("--rate", rates, "Code rates k/n")->delimiter(',');
  qchc->add_option("--n", ns, "Code lengths (even)")->delimiter(',');
  qchc->add_option("--solve", solve, "Print the code length reaching this error probability");
  add_common(qchc, qchc_c);

  auto* expsim_cmd = app.add_subcommand("expsim", "Seeded photon-counting simulation");
  ExpsimFlags ef;
  expsim_cmd->add_option("kind", ef.kind, "acc_pol, acc_loc, c1 or srm")
      ->required()
      ->check(CLI::IsMember({"acc", "acc_pol", "acc_loc", "c1", "srm"}));
  expsim_cmd->add_option("--visibility", ef.visibility, "Interferometer visibility (default: per experiment)");
  expsim_cmd->add_option("--dark", ef.dark, "Dark counts per second per detector (default 100)");
  expsim_cmd->add_option("--background", ef.background, "Background counts per second (default 300)");
  expsim_cmd->add_option("--efficiency", ef.efficiency, "Detector efficiency (default 0.7)");
  expsim_cmd->add_option("--rate", ef.rate, "Photons per second per input (default 1e6)");
  expsim_cmd->add_option("--duration", ef.duration, "Seconds per input (default 5)");
  expsim_cmd->add_option("--seed", ef.seed, "RNG seed (default 1)");
  expsim_cmd->add_option("--out", ef.out, "Write counts CSV here and the run description to <out>.json");

  auto* srm_table = app.add_subcommand("srm-table", "Code-word channel under the square-root measurement");
  add_common(srm_table, srm_c);

  auto* reliability = app.add_subcommand("reliability", "Random-coding exponent E_r(R)");
  std::string scheme = "classical";
  std::optional<double> rate;
  int rel_points = 50;
  reliability->add_option("--scheme", scheme, "classical or qchc")->check(CLI::IsMember({"classical", "qchc"}));
  reliability->add_option("--rate", rate, "Single rate R in bits per channel use");
  reliability->add_option("--points", rel_points, "Grid points over [0, capacity)")->check(CLI::PositiveNumber);
  add_common(reliability, rel_c);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (report->parsed()) emit(report_c, cmd_report(report_c), out);
    if (sweep->parsed()) emit(sweep_c, cmd_sweep(sweep_c, sweep_kind, points), out);
    if (circuit->parsed()) emit(circuit_c, cmd_circuit(circuit_c, target), out);
    if (qchc->parsed()) emit(qchc_c, cmd_qchc(qchc_c, rates, ns, solve), out);
    if (srm_table->parsed()) emit(srm_c, cmd_srm_table(srm_c), out);
    if (reliability->parsed()) emit(rel_c, cmd_reliability(rel_c, scheme, rate, rel_points), out);
    if (expsim_cmd->parsed()) return cmd_expsim(ef, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

}  // namespace trinecode::cli
