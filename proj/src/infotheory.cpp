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

#include "trinecode/infotheory.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Geometry>

#include "optimize.hpp"
#include "trinecode/trine.hpp"

namespace trinecode::info {

namespace {

using std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double mi_table(std::span<const double> priors, const Eigen::MatrixXd& p) {
  const Eigen::Index nx = p.rows();
  const Eigen::Index ny = p.cols();
  double total = 0.0;
  for (Eigen::Index y = 0; y < ny; ++y) {
    double py = 0.0;
    for (Eigen::Index x = 0; x < nx; ++x) py += priors[static_cast<std::size_t>(x)] * p(x, y);
    if (py <= 0.0) continue;
    for (Eigen::Index x = 0; x < nx; ++x) {
      const double pxy = p(x, y);
      const double px = priors[static_cast<std::size_t>(x)];
      if (pxy > 0.0 && px > 0.0) total += px * pxy * std::log2(pxy / py);
    }
  }
  return std::max(0.0, total);
}

// Real qubit ensemble as 2-vectors.
std::vector<Eigen::Vector2d> real_qubits(const Ensemble& e) {
  if (e.dim() != 2) throw std::invalid_argument("accessible_info_optimize: ensemble must be a qubit ensemble");
  std::vector<Eigen::Vector2d> out;
  for (const auto& st : e.states) {
    if (st.vector.imag().cwiseAbs().maxCoeff() > 1e-12) {
      throw std::invalid_argument("accessible_info_optimize: ensemble amplitudes must be real");
    }
    out.emplace_back(st.vector.real());
  }
  return out;
}

struct RealRank1 {
  std::vector<double> angles;
  std::vector<double> weights;
  bool valid = false;
};

// Weights making sum_k w_k u_k u_k^T = I for u_k = (cos t_k, sin t_k):
// sum w = 2, sum w cos 2t = 0, sum w sin 2t = 0.
RealRank1 three_outcome(const std::vector<double>& angles) {
  Eigen::Matrix3d a;
  for (int k = 0; k < 3; ++k) {
    a(0, k) = 1.0;
    a(1, k) = std::cos(2.0 * angles[static_cast<std::size_t>(k)]);
    a(2, k) = std::sin(2.0 * angles[static_cast<std::size_t>(k)]);
  }
  RealRank1 r{angles, {}, false};
  Eigen::FullPivLU<Eigen::Matrix3d> lu(a);
  if (std::abs(lu.determinant()) < 1e-9) return r;
  const Eigen::Vector3d w = lu.solve(Eigen::Vector3d(2.0, 0.0, 0.0));
  if (w.minCoeff() < -1e-12) return r;
  r.weights = {std::max(0.0, w(0)), std::max(0.0, w(1)), std::max(0.0, w(2))};
  r.valid = true;
  return r;
}

RealRank1 two_outcome(double theta) { return {{theta, theta + pi / 2.0}, {1.0, 1.0}, true}; }

double rank1_information(const Ensemble& e, const std::vector<Eigen::Vector2d>& psi, const RealRank1& m) {
  if (!m.valid) return kNegInf;
  Eigen::MatrixXd p(static_cast<Eigen::Index>(psi.size()), static_cast<Eigen::Index>(m.angles.size()));
  for (std::size_t x = 0; x < psi.size(); ++x) {
    for (std::size_t k = 0; k < m.angles.size(); ++k) {
      const double ov = std::cos(m.angles[k]) * psi[x](0) + std::sin(m.angles[k]) * psi[x](1);
      p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(k)) = m.weights[k] * ov * ov;
    }
  }
  return mi_table(e.priors, p);
}

Povm to_povm(const RealRank1& m) {
  std::vector<CVector> vecs;
  for (std::size_t k = 0; k < m.angles.size(); ++k) {
    const double s = std::sqrt(m.weights[k]);
    vecs.push_back(qmath::cvec({s * std::cos(m.angles[k]), s * std::sin(m.angles[k])}));
  }
  return Povm::from_vectors(vecs);
}

}  // namespace

InfoResult InfoResult::make(double bits, int length, std::string meta) {
  if (length < 1) throw std::invalid_argument("InfoResult: length must be positive");
  return {bits, bits / length, length, std::move(meta)};
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double mutual_information(std::span<const double> priors, const ChannelMatrix& ch) {
  if (static_cast<Eigen::Index>(priors.size()) != ch.inputs()) {
    throw std::invalid_argument("mutual_information: prior count does not match channel inputs");
  }
  return mi_table(priors, ch.p);
}

double mutual_information_uniform(const ChannelMatrix& ch) {
  const std::vector<double> priors(static_cast<std::size_t>(ch.inputs()), 1.0 / static_cast<double>(ch.inputs()));
  return mutual_information(priors, ch);
}

double c1_trine() { return 1.0 - binary_entropy(trine::constants().epsilon); }

double binary_c1(double kappa) {
  if (kappa < 0.0 || kappa > 1.0) throw std::invalid_argument("binary_c1: kappa must lie in [0, 1]");
  return 1.0 - binary_entropy((1.0 - std::sqrt(1.0 - kappa * kappa)) / 2.0);
}

AccessibleInfoResult accessible_info_optimize(const Ensemble& e, int max_outcomes, const AccessibleInfoOptions& opts) {
  if (max_outcomes < e.dim()) throw std::invalid_argument("accessible_info_optimize: fewer outcomes than dimension");
  const auto psi = real_qubits(e);
  const int outcomes = std::min(max_outcomes, 3);
  const int grid = std::max(opts.angle_grid, 4);
  const double step = pi / grid;

  // Projective candidates.
  RealRank1 best = two_outcome(0.0);
  double best_bits = rank1_information(e, psi, best);
  for (int i = 0; i < grid; ++i) {
    const RealRank1 m = two_outcome(i * step);
    const double v = rank1_information(e, psi, m);
    if (v > best_bits) {
      best = m;
      best_bits = v;
    }
  }
  {
    const auto r = detail::golden_max([&](double t) { return rank1_information(e, psi, two_outcome(t)); },
                                      best.angles[0] - step, best.angles[0] + step, opts.refine_tol);
    if (r.fx > best_bits) {
      best = two_outcome(r.x);
      best_bits = r.fx;
    }
  }

  if (outcomes == 3) {
    RealRank1 tri;
    double tri_bits = kNegInf;
    // Angles are only meaningful mod pi; fix ordering t0 < t1 < t2.
    for (int i = 0; i < grid; ++i) {
      for (int j = i + 1; j < grid; ++j) {
        for (int k = j + 1; k < grid; ++k) {
          const RealRank1 m = three_outcome({i * step, j * step, k * step});
          const double v = rank1_information(e, psi, m);
          if (v > tri_bits) {
            tri = m;
            tri_bits = v;
          }
        }
      }
    }
    if (tri.valid) {
      std::vector<double> angles = tri.angles;
      double width = step;
      for (int round = 0; round < opts.refine_rounds; ++round) {
        for (std::size_t c = 0; c < 3; ++c) {
          auto f = [&](double t) {
            std::vector<double> trial = angles;
            trial[c] = t;
            return rank1_information(e, psi, three_outcome(trial));
          };
          const auto r = detail::golden_max(f, angles[c] - width, angles[c] + width, opts.refine_tol);
          if (r.fx >= tri_bits) {
            angles[c] = r.x;
            tri_bits = r.fx;
          }
        }
        width *= 0.5;
      }
      tri = three_outcome(angles);
      if (tri_bits > best_bits) {
        best = tri;
        best_bits = tri_bits;
      }
    }
  }
  return {to_povm(best), best_bits};
}

std::string_view to_string(SweepKind k) {
  return k == SweepKind::AccPolarization ? "acc" : "srm";
}

SweepKind sweep_kind_from_string(std::string_view s) {
  if (s == "acc" || s == "acc_polarization") return SweepKind::AccPolarization;
  if (s == "srm" || s == "srm_collective") return SweepKind::SrmCollective;
  throw std::invalid_argument("unknown sweep kind: " + std::string(s));
}

std::vector<double> default_offset_grid(int points) {
  if (points < 1) throw std::invalid_argument("offset grid needs at least one point");
  if (points == 1) return {0.0};
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = -pi / 3.0 + (2.0 * pi / 3.0) * i / (points - 1);
  // Pin the centre so the matched point is evaluated exactly.
  if (points % 2 == 1) g[static_cast<std::size_t>(points / 2)] = 0.0;
  return g;
}

SweepCurve offset_sweep(SweepKind kind, std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("offset_sweep: empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("offset_sweep: offsets must be strictly increasing");
  }
  SweepCurve curve;
  const Povm meas = kind == SweepKind::AccPolarization ? trine::acc_povm() : trine::srm_povm_closed_form();
  for (double off : grid) {
    std::vector<LabeledState> states;
    for (int x = 0; x < 3; ++x) {
      const double phi = 2.0 * pi * x / 3.0 + off;
      states.push_back({std::to_string(x),
                        kind == SweepKind::AccPolarization ? trine::letter_at(phi) : trine::codeword_at(phi)});
    }
    curve.offsets.push_back(off);
    curve.values.push_back(mutual_information_uniform(born_channel(Ensemble(std::move(states)), meas)));
  }
  return curve;
}

SuperadditivityReport superadditivity_report() {
  SuperadditivityReport r;
  r.i_acc = mutual_information_uniform(trine::ideal_channel(trine::ChannelKind::Acc));
  r.c1 = c1_trine();
  r.i2 = mutual_information_uniform(trine::ideal_channel(trine::ChannelKind::Srm));
  r.i2_per_letter = r.i2 / 2.0;
  r.gain = r.i2_per_letter - r.c1;
  return r;
}

Ensemble binary_code_ensemble(double kappa, std::span<const std::vector<int>> words, std::span<const double> priors) {
  const CVector zero = qmath::cvec({1.0, 0.0});
  const CVector one = qmath::cvec({kappa, std::sqrt(std::max(0.0, 1.0 - kappa * kappa))});
  std::vector<LabeledState> states;
  for (const auto& w : words) {
    CVector v = qmath::cvec({1.0});
    std::string label;
    for (int bit : w) {
      v = qmath::tensor(v, bit ? one : zero);
      label += bit ? '1' : '0';
    }
    states.push_back({label, v});
  }
  return Ensemble(std::move(states), std::vector<double>(priors.begin(), priors.end()));
}

namespace {

double srm_information(const Ensemble& e) {
  return mutual_information(e.priors, born_channel(e, sqrt_measurement(e)));
}

// Maximises I(X:Y) over priors (softmax logits) and orthonormal bases of the
// span of three linearly independent real code words, starting from the SRM.
double optimised_projective_information(const Ensemble& start, std::vector<double>* best_priors) {
  const auto eig = qmath::eig_hermitian(start.density());
  const Eigen::MatrixXd span = eig.vectors.leftCols(3).real();
  std::vector<Eigen::Vector3d> coords;
  for (const auto& st : start.states) coords.emplace_back(span.transpose() * st.vector.real());
  const Povm srm = sqrt_measurement(start);
  Eigen::Matrix3d base;
  for (int y = 0; y < 3; ++y) base.col(y) = span.transpose() * srm.vectors[static_cast<std::size_t>(y)]->real();
  // Nearest orthogonal matrix, guarding against rounding in the SRM basis.
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(base, Eigen::ComputeFullU | Eigen::ComputeFullV);
  base = svd.matrixU() * svd.matrixV().transpose();

  auto unpack_priors = [](const Eigen::VectorXd& z) {
    Eigen::Vector3d w(std::exp(z(3)), std::exp(z(4)), 1.0);
    return Eigen::Vector3d(w / w.sum());
  };
  auto objective = [&](const Eigen::VectorXd& z) {
    const Eigen::Vector3d rv = z.head<3>();
    const double angle = rv.norm();
    const Eigen::Matrix3d rot =
        angle > 0 ? Eigen::AngleAxisd(angle, rv / angle).toRotationMatrix() : Eigen::Matrix3d::Identity();
    const Eigen::Matrix3d basis = base * rot;
    const Eigen::Vector3d pri = unpack_priors(z);
    Eigen::MatrixXd p(3, 3);
    for (int x = 0; x < 3; ++x) {
      for (int y = 0; y < 3; ++y) {
        const double ov = basis.col(y).dot(coords[static_cast<std::size_t>(x)]);
        p(x, y) = ov * ov;
      }
    }
    const double pr[3] = {pri(0), pri(1), pri(2)};
    return -mi_table(pr, p);
  };

  Eigen::VectorXd z0 = Eigen::VectorXd::Zero(5);
  z0(3) = std::log(start.priors[0] / start.priors[2]);
  z0(4) = std::log(start.priors[1] / start.priors[2]);
  double best = -objective(z0);
  Eigen::VectorXd best_z = z0;
  for (int restart = 0; restart < 3; ++restart) {
    const auto r = detail::nelder_mead(objective, best_z, restart == 0 ? 0.2 : 0.05, 1e-15, 6000);
    if (-r.fx > best) {
      best = -r.fx;
      best_z = r.x;
    }
  }
  if (best_priors) {
    const Eigen::Vector3d pri = unpack_priors(best_z);
    *best_priors = {pri(0), pri(1), pri(2)};
  }
  return best;
}

}  // namespace

BlockGainRecord binary_block_gain(double kappa, int length) {
  if (!(kappa > 0.0 && kappa < 1.0)) throw std::invalid_argument("binary_block_gain: kappa must lie in (0, 1)");
  BlockGainRecord rec;
  rec.kappa = kappa;
  rec.length = length;
  rec.c1 = binary_c1(kappa);

  if (length == 3) {
    rec.words = {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}};
    rec.priors.assign(4, 0.25);
    rec.bits = srm_information(binary_code_ensemble(kappa, rec.words, rec.priors));
    rec.per_letter = rec.bits / 3.0;
    rec.gain = rec.per_letter - rec.c1;
    rec.srm_gain = rec.gain;
    return rec;
  }
  if (length != 2) throw std::invalid_argument("binary_block_gain: length must be 2 or 3");

  const std::vector<std::vector<int>> all = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  double best_srm = kNegInf;
  double best_opt = kNegInf;
  for (std::size_t drop = 0; drop < 4; ++drop) {
    std::vector<std::vector<int>> words;
    for (std::size_t i = 0; i < 4; ++i) {
      if (i != drop) words.push_back(all[i]);
    }
    double subset_best = kNegInf;
    std::vector<double> subset_priors;
    for (int a = 1; a <= 98; ++a) {
      for (int b = 1; a + b <= 99; ++b) {
        const std::vector<double> pri = {a / 100.0, b / 100.0, (100 - a - b) / 100.0};
        const double v = srm_information(binary_code_ensemble(kappa, words, pri));
        if (v > subset_best) {
          subset_best = v;
          subset_priors = pri;
        }
      }
    }
    best_srm = std::max(best_srm, subset_best);
    std::vector<double> opt_priors;
    const double opt = std::max(
        subset_best, optimised_projective_information(binary_code_ensemble(kappa, words, subset_priors), &opt_priors));
    if (opt > best_opt) {
      best_opt = opt;
      rec.words = words;
      rec.priors = opt > subset_best ? opt_priors : subset_priors;
    }
  }
  rec.bits = best_opt;
  rec.per_letter = best_opt / 2.0;
  rec.gain = rec.per_letter - rec.c1;
  rec.srm_gain = best_srm / 2.0 - rec.c1;
  return rec;
}

BlockGainRecord max_binary_block_gain(int length, std::span<const double> kappas) {
  if (kappas.empty()) throw std::invalid_argument("max_binary_block_gain: empty kappa grid");
  BlockGainRecord best;
  best.gain = kNegInf;
  for (double k : kappas) {
    BlockGainRecord r = binary_block_gain(k, length);
    if (r.gain > best.gain) best = std::move(r);
  }
  return best;
}

std::vector<double> arange(double lo, double hi, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("arange: step must be positive");
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

}  // namespace trinecode::info
