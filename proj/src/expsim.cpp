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

#include "trinecode/expsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "trinecode/trine.hpp"

namespace trinecode::expsim {

namespace {

using std::numbers::pi;

constexpr int kModes = 4;
constexpr int kAH = 0;
constexpr int kBH = 1;
constexpr int kAV = 2;
constexpr int kBV = 3;

void check_modes(const OpticsElement& e, std::size_t n) {
  if (e.modes.size() != n) throw std::invalid_argument("optics element has the wrong number of modes");
  for (int m : e.modes) {
    if (m < 0 || m >= kModes) throw std::invalid_argument("optics element mode out of range");
  }
}

}  // namespace

Eigen::Matrix2d hwp_matrix(double theta) {
  const double c = std::cos(2.0 * theta);
  const double s = std::sin(2.0 * theta);
  Eigen::Matrix2d m;
  m << -c, s, s, c;
  return m;
}

CMatrix OpticsElement::transfer() const {
  const Complex i(0.0, 1.0);
  switch (kind) {
    case ElementKind::Hwp:
      check_modes(*this, 2);
      return hwp_matrix(param).cast<Complex>();
    case ElementKind::Pbs: {
      // Horizontal modes pass; the vertical mode of one arm is reflected
      // into the other with a factor i.
      check_modes(*this, 2);
      CMatrix m(2, 2);
      m << 0.0, i, i, 0.0;
      return m;
    }
    case ElementKind::Bs5050: {
      check_modes(*this, 2);
      CMatrix m(2, 2);
      m << 1.0, i, i, 1.0;
      return m / std::numbers::sqrt2;
    }
    case ElementKind::Phase: {
      check_modes(*this, 1);
      CMatrix m(1, 1);
      m(0, 0) = std::polar(1.0, param);
      return m;
    }
  }
  throw std::invalid_argument("unknown optics element");
}

CMatrix OpticsElement::transfer4() const {
  const CMatrix local = transfer();
  CMatrix m = CMatrix::Identity(kModes, kModes);
  for (std::size_t r = 0; r < modes.size(); ++r) {
    for (std::size_t c = 0; c < modes.size(); ++c) {
      m(modes[r], modes[c]) = local(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return m;
}

HwpAngles hwp_angles(double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  HwpAngles a{};
  a.theta0 = 0.5 * std::atan(std::sqrt(std::max(0.0, (1.0 - c) / (1.0 + c))));
  a.theta1 = 0.5 * std::atan(-s / (1.0 + c));
  a.theta2 = 1.0 - c < 1e-300 ? -pi / 4.0 : 0.5 * std::atan(-s / (1.0 - c));
  return a;
}

CVector encoder_state(double phi) {
  const HwpAngles a = hwp_angles(phi);
  const double c0 = std::cos(2.0 * a.theta0);
  const double s0 = std::sin(2.0 * a.theta0);
  const double c1 = std::cos(2.0 * a.theta1);
  const double s1 = std::sin(2.0 * a.theta1);
  const double c2 = std::cos(2.0 * a.theta2);
  const double s2 = std::sin(2.0 * a.theta2);
  return qmath::cvec({c0 * c1, -s0 * s2, -c0 * s1, s0 * c2});
}

std::vector<OpticsElement> encoder_elements(double phi) {
  const HwpAngles a = hwp_angles(phi);
  return {
      {ElementKind::Hwp, a.theta0, {kAH, kAV}},
      {ElementKind::Pbs, 0.0, {kAV, kBV}},
      {ElementKind::Phase, -pi / 2.0, {kBV}},
      {ElementKind::Hwp, a.theta1, {kAH, kAV}},
      {ElementKind::Hwp, -a.theta2, {kBH, kBV}},
  };
}

CVector encoder_optical(double phi) {
  CVector v = qmath::basis_vector<double>(kModes, kAH);
  for (const auto& e : encoder_elements(phi)) v = e.transfer4() * v;
  return v;
}

void NoiseModel::validate() const {
  if (!(visibility >= 0.0 && visibility <= 1.0)) throw std::invalid_argument("visibility must lie in [0, 1]");
  if (!(dark_rate >= 0.0) || !std::isfinite(dark_rate)) throw std::invalid_argument("dark rate must be non-negative");
  if (!(background_rate >= 0.0) || !std::isfinite(background_rate)) {
    throw std::invalid_argument("background rate must be non-negative");
  }
  if (!(detector_efficiency > 0.0 && detector_efficiency <= 1.0)) {
    throw std::invalid_argument("detector efficiency must lie in (0, 1]");
  }
  if (!(signal_rate >= 0.0) || !std::isfinite(signal_rate)) throw std::invalid_argument("signal rate must be non-negative");
  if (!(duration > 0.0) || !std::isfinite(duration)) throw std::invalid_argument("duration must be positive");
}

NoiseModel NoiseModel::ideal() {
  NoiseModel nm;
  nm.visibility = 1.0;
  nm.dark_rate = 0.0;
  nm.background_rate = 0.0;
  return nm;
}

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::AccPolarization: return "acc_pol";
    case ExperimentKind::AccLocation: return "acc_loc";
    case ExperimentKind::C1: return "c1";
    case ExperimentKind::Srm: return "srm";
  }
  return "?";
}

ExperimentKind experiment_kind_from_string(std::string_view s) {
  if (s == "acc_pol" || s == "acc") return ExperimentKind::AccPolarization;
  if (s == "acc_loc") return ExperimentKind::AccLocation;
  if (s == "c1") return ExperimentKind::C1;
  if (s == "srm") return ExperimentKind::Srm;
  throw std::invalid_argument("unknown experiment kind: " + std::string(s));
}

NoiseModel nominal_noise(ExperimentKind k) {
  NoiseModel nm;
  switch (k) {
    case ExperimentKind::AccPolarization: nm.visibility = 0.9916; break;
    case ExperimentKind::AccLocation: nm.visibility = 0.9905; break;
    case ExperimentKind::C1: nm.visibility = 1.0; break;
    case ExperimentKind::Srm: nm.visibility = 0.9848; break;
  }
  return nm;
}

ChannelMatrix ideal_experiment_channel(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::AccPolarization:
    case ExperimentKind::AccLocation: return trine::ideal_channel(trine::ChannelKind::Acc);
    case ExperimentKind::C1: return trine::ideal_channel(trine::ChannelKind::C1);
    case ExperimentKind::Srm: return trine::ideal_channel(trine::ChannelKind::Srm);
  }
  throw std::invalid_argument("unknown experiment kind");
}

ChannelMatrix apply_visibility(const ChannelMatrix& ideal, double v, VisibilityLaw law) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("visibility must lie in [0, 1]");
  const double w = law == VisibilityLaw::Linear ? v : v * v;
  ChannelMatrix out = ideal;
  out.p = w * ideal.p + Eigen::MatrixXd::Constant(ideal.inputs(), ideal.outputs(),
                                                  (1.0 - w) / static_cast<double>(ideal.outputs()));
  return out;
}

ChannelMatrix noisy_channel(const ChannelMatrix& ideal, const NoiseModel& nm) {
  nm.validate();
  ChannelMatrix out = apply_visibility(ideal, nm.visibility, nm.law);
  const double ny = static_cast<double>(ideal.outputs());
  const double floor_rate = ny * nm.dark_rate + nm.background_rate;
  const double signal = nm.detector_efficiency * nm.signal_rate;
  if (floor_rate > 0.0) {
    const double w = floor_rate / (signal + floor_rate);
    out.p = (1.0 - w) * out.p + Eigen::MatrixXd::Constant(out.inputs(), out.outputs(), w / ny);
  }
  for (Eigen::Index x = 0; x < out.inputs(); ++x) out.p.row(x) /= out.p.row(x).sum();
  return out;
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::int64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw std::invalid_argument("poisson mean must be finite and non-negative");
  if (mean == 0.0) return 0;
  if (mean < 10.0) {
    const double limit = std::exp(-mean);
    std::int64_t k = 0;
    double prod = uniform();
    while (prod > limit) {
      ++k;
      prod *= uniform();
    }
    return k;
  }
  // Hormann (1993), transformed rejection with squeeze.
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <= -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::int64_t>(k);
    }
  }
}

std::string CountTable::to_csv() const {
  std::ostringstream os;
  os << "input,outcome,count\n";
  for (Eigen::Index x = 0; x < counts.rows(); ++x) {
    for (Eigen::Index y = 0; y < counts.cols(); ++y) {
      os << input_labels[static_cast<std::size_t>(x)] << ',' << output_labels[static_cast<std::size_t>(y)] << ','
         << counts(x, y) << '\n';
    }
  }
  return os.str();
}

CountTable simulate_counts(const ChannelMatrix& ch, double mean_rate, double duration, const NoiseModel& nm,
                           std::uint64_t seed) {
  if (!(mean_rate >= 0.0) || !std::isfinite(mean_rate)) throw std::invalid_argument("mean rate must be non-negative");
  if (!(duration > 0.0) || !std::isfinite(duration)) throw std::invalid_argument("duration must be positive");
  ch.validate();
  Rng rng(seed);
  CountTable t;
  t.counts.resize(ch.inputs(), ch.outputs());
  t.input_labels = ch.input_labels;
  t.output_labels = ch.output_labels;
  for (Eigen::Index x = static_cast<Eigen::Index>(t.input_labels.size()); x < ch.inputs(); ++x) {
    t.input_labels.push_back(std::to_string(x));
  }
  for (Eigen::Index y = static_cast<Eigen::Index>(t.output_labels.size()); y < ch.outputs(); ++y) {
    t.output_labels.push_back(std::to_string(y));
  }
  t.duration = duration;
  t.seed = seed;
  t.noise = nm;
  const double lambda = nm.detector_efficiency * mean_rate * duration;
  const double floor_mean = nm.dark_rate * duration + nm.background_rate * duration / static_cast<double>(ch.outputs());
  for (Eigen::Index x = 0; x < ch.inputs(); ++x) {
    for (Eigen::Index y = 0; y < ch.outputs(); ++y) {
      const double p = std::clamp(ch.p(x, y), 0.0, 1.0);
      t.counts(x, y) = rng.poisson(lambda * p) + rng.poisson(floor_mean);
    }
  }
  return t;
}

ChannelEstimate estimate_channel(const CountTable& ct) {
  const Eigen::Index nx = ct.counts.rows();
  const Eigen::Index ny = ct.counts.cols();
  Eigen::MatrixXd p(nx, ny);
  Eigen::MatrixXd se(nx, ny);
  for (Eigen::Index x = 0; x < nx; ++x) {
    const auto total = ct.counts.row(x).sum();
    if (total <= 0) throw std::invalid_argument("estimate_channel: input row " + std::to_string(x) + " has no counts");
    const double n = static_cast<double>(total);
    for (Eigen::Index y = 0; y < ny; ++y) {
      const double q = static_cast<double>(ct.counts(x, y)) / n;
      p(x, y) = q;
      se(x, y) = std::sqrt(q * (1.0 - q) / n);
    }
  }
  return {ChannelMatrix(std::move(p), ct.input_labels, ct.output_labels), std::move(se)};
}

ExperimentResult reproduce_experiment(ExperimentKind k, const NoiseModel& nm, std::uint64_t seed) {
  nm.validate();
  const ChannelMatrix ideal = ideal_experiment_channel(k);
  // The c1 measurement is a single polarisation analyser with no
  // interferometer, so visibility does not enter.
  const ChannelMatrix ch = k == ExperimentKind::C1 ? ideal : apply_visibility(ideal, nm.visibility, nm.law);
  CountTable counts = simulate_counts(ch, nm.signal_rate, nm.duration, nm, seed);
  ChannelEstimate est = estimate_channel(counts);
  const int length = k == ExperimentKind::Srm ? 2 : 1;
  const double bits = info::mutual_information_uniform(est.channel);
  return {info::InfoResult::make(bits, length, std::string(to_string(k))), std::move(counts), std::move(est)};
}

double calibrate_visibility(double target_bits, const NoiseModel& nm, double lo, double hi) {
  if (!(lo >= 0.0 && hi <= 1.0 && lo < hi)) throw std::invalid_argument("calibrate_visibility: bad bracket");
  const ChannelMatrix ideal = trine::ideal_channel(trine::ChannelKind::Srm);
  auto mi = [&](double v) {
    NoiseModel m = nm;
    m.visibility = v;
    return info::mutual_information_uniform(noisy_channel(ideal, m));
  };
  if (!(mi(lo) <= target_bits && target_bits <= mi(hi))) {
    throw std::domain_error("calibrate_visibility: target not bracketed by the visibility range");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mi(mid) < target_bits) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace trinecode::expsim
