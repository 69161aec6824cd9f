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

#include "trinecode/reliability.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "optimize.hpp"
#include "trinecode/infotheory.hpp"
#include "trinecode/trine.hpp"

namespace trinecode::rel {

namespace {

constexpr double kRhoLo = 1e-6;
constexpr double kRhoTol = 1e-10;
constexpr double kBisectTol = 1e-12;

double kl_binary(double p, double q) {
  double v = 0.0;
  if (p > 0.0) v += p * std::log2(p / q);
  if (p < 1.0) v += (1.0 - p) * std::log2((1.0 - p) / (1.0 - q));
  return v;
}

// Bisection for a decreasing g on [lo, hi] with g(lo) >= target >= g(hi).
template <typename G>
double bisect_decreasing(G&& g, double lo, double hi, double target) {
  for (int it = 0; it < 200 && hi - lo > kBisectTol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void check_rate(double rate) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw std::invalid_argument("rate must be finite and non-negative");
}

// Maximises E_0(rho, P) over P by exponentiated gradient on
// sum_y (sum_x P(x) w_xy)^{1+rho}, which is convex in P.
std::vector<double> optimise_priors(double rho, const ChannelMatrix& ch) {
  const Eigen::Index nx = ch.inputs();
  const Eigen::MatrixXd w = ch.p.array().pow(1.0 / (1.0 + rho)).matrix();
  Eigen::VectorXd pri = Eigen::VectorXd::Constant(nx, 1.0 / static_cast<double>(nx));
  for (int it = 0; it < 500; ++it) {
    const Eigen::RowVectorXd a = pri.transpose() * w;
    const Eigen::RowVectorXd a_rho = a.array().pow(rho).matrix();
    const double g = (a.array() * a_rho.array()).sum();
    const Eigen::VectorXd beta = (w * a_rho.transpose()) / g;
    Eigen::VectorXd next = pri.array() * beta.array().pow(-1.0 / rho);
    next /= next.sum();
    const double delta = (next - pri).cwiseAbs().maxCoeff();
    pri = next;
    if (delta < 1e-14) break;
  }
  return {pri.data(), pri.data() + nx};
}

double blahut_arimoto(const ChannelMatrix& ch) {
  const Eigen::Index nx = ch.inputs();
  std::vector<double> pri(static_cast<std::size_t>(nx), 1.0 / static_cast<double>(nx));
  double best = 0.0;
  for (int it = 0; it < 2000; ++it) {
    Eigen::RowVectorXd q = Eigen::RowVectorXd::Zero(ch.outputs());
    for (Eigen::Index x = 0; x < nx; ++x) q += pri[static_cast<std::size_t>(x)] * ch.p.row(x);
    std::vector<double> d(pri.size());
    double z = 0.0;
    for (Eigen::Index x = 0; x < nx; ++x) {
      double kl = 0.0;
      for (Eigen::Index y = 0; y < ch.outputs(); ++y) {
        if (ch.p(x, y) > 0.0) kl += ch.p(x, y) * std::log2(ch.p(x, y) / q(y));
      }
      d[static_cast<std::size_t>(x)] = pri[static_cast<std::size_t>(x)] * std::exp2(kl);
      z += d[static_cast<std::size_t>(x)];
    }
    for (auto& v : d) v /= z;
    const double mi = info::mutual_information(d, ch);
    const bool done = std::abs(mi - best) < 1e-15;
    best = std::max(best, mi);
    pri = std::move(d);
    if (done) break;
  }
  return best;
}

const trine::TrineConstants& tc() { return trine::constants(); }

}  // namespace

std::string_view to_string(Scheme s) { return s == Scheme::Classical ? "classical" : "qchc"; }

std::string_view to_string(Regime r) { return r == Regime::BelowR0 ? "below_R0" : "above_R0"; }

double e0(double rho, std::span<const double> priors, const ChannelMatrix& ch) {
  if (!(rho > 0.0 && rho <= 1.0)) throw std::invalid_argument("e0: rho must lie in (0, 1]");
  if (static_cast<Eigen::Index>(priors.size()) != ch.inputs()) {
    throw std::invalid_argument("e0: prior count does not match channel inputs");
  }
  double total = 0.0;
  for (Eigen::Index y = 0; y < ch.outputs(); ++y) {
    double inner = 0.0;
    for (Eigen::Index x = 0; x < ch.inputs(); ++x) {
      inner += priors[static_cast<std::size_t>(x)] * std::pow(ch.p(x, y), 1.0 / (1.0 + rho));
    }
    total += std::pow(inner, 1.0 + rho);
  }
  return -std::log2(total);
}

ExponentResult er_general(double rate, const ChannelMatrix& ch, PriorMode mode) {
  check_rate(rate);
  const std::vector<double> uniform(static_cast<std::size_t>(ch.inputs()), 1.0 / static_cast<double>(ch.inputs()));
  const double ceiling = mode == PriorMode::Uniform ? info::mutual_information(uniform, ch) : blahut_arimoto(ch);
  ExponentResult res;
  if (rate >= ceiling) {
    res.er = 0.0;
    res.regime = Regime::AboveR0;
    res.above_capacity = true;
    return res;
  }
  auto objective = [&](double rho) {
    if (mode == PriorMode::Uniform) return e0(rho, uniform, ch) - rho * rate;
    return e0(rho, optimise_priors(rho, ch), ch) - rho * rate;
  };
  const auto best = detail::golden_max(objective, kRhoLo, 1.0, kRhoTol);
  res.er = std::max(0.0, best.fx);
  if (best.x >= 1.0 - 1e-8) {
    res.regime = Regime::BelowR0;
  } else {
    res.regime = Regime::AboveR0;
    res.rho_star = best.x;
  }
  return res;
}

ChannelMatrix bsc(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("bsc: crossover must lie in [0, 1]");
  Eigen::MatrixXd p(2, 2);
  p << 1.0 - eps, eps, eps, 1.0 - eps;
  return ChannelMatrix(std::move(p), {"0", "1"}, {"0", "1"});
}

ChannelMatrix ternary_channel() { return trine::ideal_channel(trine::ChannelKind::Srm); }

double trine_bsc_epsilon() { return tc().epsilon; }

double cutoff_rate_bsc(double eps) {
  const double e1 = std::sqrt(eps) / (std::sqrt(eps) + std::sqrt(1.0 - eps));
  return 1.0 - info::binary_entropy(e1);
}

namespace {

double ternary_gamma(double rho) {
  const double c2 = tc().cos_half_gamma * tc().cos_half_gamma;
  const double s2 = tc().sin_half_gamma * tc().sin_half_gamma;
  const double d = std::pow(c2, 1.0 / (1.0 + rho));
  const double o = std::pow(0.5 * s2, 1.0 / (1.0 + rho));
  return 2.0 * o / (d + 2.0 * o);
}

double ternary_rate_of_gamma(double g) { return std::log2(3.0) - g - info::binary_entropy(g); }

}  // namespace

double cutoff_rate_ternary() { return ternary_rate_of_gamma(ternary_gamma(1.0)); }

ExponentResult er_bsc_closed(double rate, double eps) {
  check_rate(rate);
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("er_bsc_closed: eps must lie in (0, 1/2)");
  const double cap = 1.0 - info::binary_entropy(eps);
  if (rate >= cap) throw std::domain_error("er_bsc_closed: rate at or above capacity");
  ExponentResult res;
  const double e1 = std::sqrt(eps) / (std::sqrt(eps) + std::sqrt(1.0 - eps));
  const double r0 = 1.0 - info::binary_entropy(e1);
  if (rate < r0) {
    res.er = 1.0 - 2.0 * std::log2(std::sqrt(eps) + std::sqrt(1.0 - eps)) - rate;
    res.regime = Regime::BelowR0;
    return res;
  }
  const double er = bisect_decreasing([](double e) { return 1.0 - info::binary_entropy(e); }, eps, e1, rate);
  res.er = kl_binary(er, eps);
  res.regime = Regime::AboveR0;
  res.rho_star = std::log(eps / (1.0 - eps)) / std::log(er / (1.0 - er)) - 1.0;
  return res;
}

ExponentResult er_ternary_closed(double rate) {
  check_rate(rate);
  const double c = tc().cos_half_gamma;
  const double s = tc().sin_half_gamma;
  const double s2 = s * s;
  const double i2 = ternary_rate_of_gamma(s2);
  if (rate >= i2) throw std::domain_error("er_ternary_closed: rate at or above I2");
  ExponentResult res;
  const double g1 = ternary_gamma(1.0);
  if (rate < ternary_rate_of_gamma(g1)) {
    res.er = std::log2(3.0) - 2.0 * std::log2(c + std::numbers::sqrt2 * s) - rate;
    res.regime = Regime::BelowR0;
    return res;
  }
  const double g = bisect_decreasing(ternary_rate_of_gamma, s2, g1, rate);
  res.er = kl_binary(g, s2);
  res.regime = Regime::AboveR0;
  res.rho_star = std::log(s2 / (2.0 * c * c)) / std::log(g / (2.0 * (1.0 - g))) - 1.0;
  return res;
}

double rate_ceiling(Scheme s) {
  if (s == Scheme::Classical) return info::c1_trine();
  return ternary_rate_of_gamma(tc().sin_half_gamma * tc().sin_half_gamma) / std::log2(3.0);
}

namespace {

double scheme_rate(double k_over_n, Scheme s) { return s == Scheme::Classical ? k_over_n : k_over_n * std::log2(3.0); }

double scheme_exponent(double k_over_n, Scheme s) {
  if (!(k_over_n >= 0.0)) throw std::invalid_argument("k/n must be non-negative");
  if (k_over_n >= rate_ceiling(s)) {
    throw std::domain_error(std::string(to_string(s)) + ": k/n at or above the rate ceiling");
  }
  const double r = scheme_rate(k_over_n, s);
  return s == Scheme::Classical ? er_bsc_closed(r, tc().epsilon).er : er_ternary_closed(r).er;
}

// Exponent per channel use of the block: n for classical, n/2 for QCHC.
double uses(long n, Scheme s) { return s == Scheme::Classical ? static_cast<double>(n) : static_cast<double>(n) / 2.0; }

void check_n(long n, Scheme s) {
  if (n < 1) throw std::invalid_argument("code length must be positive");
  if (s == Scheme::Qchc && n % 2 != 0) throw std::invalid_argument("qchc code length must be even");
}

}  // namespace

double error_bound(long n, double k_over_n, Scheme s) {
  check_n(n, s);
  return std::exp2(-uses(n, s) * scheme_exponent(k_over_n, s));
}

long codelength_for(double target_pe, double k_over_n, Scheme s) {
  if (!(target_pe > 0.0 && target_pe <= 1.0)) throw std::invalid_argument("target error probability must lie in (0, 1]");
  const double er = scheme_exponent(k_over_n, s);
  const long step = s == Scheme::Classical ? 1 : 2;
  if (target_pe >= 1.0) return step;
  if (er <= 0.0) throw std::domain_error("zero exponent: no finite code length reaches the target");
  const double blocks = -std::log2(target_pe) / er;
  long n = step * std::max(1L, static_cast<long>(std::ceil(blocks)));
  // Guard the ceil against rounding on either side.
  while (n > step && std::exp2(-uses(n - step, s) * er) <= target_pe) n -= step;
  while (std::exp2(-uses(n, s) * er) > target_pe) n += step;
  return n;
}

std::vector<CompareRow> qchc_compare(std::span<const double> k_over_n, std::span<const long> ns) {
  std::vector<CompareRow> rows;
  for (double k : k_over_n) {
    const double erc = scheme_exponent(k, Scheme::Classical);
    const double erq = scheme_exponent(k, Scheme::Qchc);
    for (long n : ns) {
      check_n(n, Scheme::Qchc);
      rows.push_back({Scheme::Classical, k, scheme_rate(k, Scheme::Classical), n, erc,
                      std::exp2(-uses(n, Scheme::Classical) * erc)});
      rows.push_back({Scheme::Qchc, k, scheme_rate(k, Scheme::Qchc), n, erq, std::exp2(-uses(n, Scheme::Qchc) * erq)});
    }
  }
  return rows;
}

std::string compare_csv(std::span<const CompareRow> rows) {
  std::ostringstream os;
  os << "scheme,k_over_n,R,n,Er,Pe_bound\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%.10g,%.10g,%ld,%.10g,%.10g\n", std::string(to_string(r.scheme)).c_str(),
                  r.k_over_n, r.rate, r.n, r.er, r.pe_bound);
    os << buf;
  }
  return os.str();
}

double effective_rate(double rate, long n, double tau0) {
  if (n < 2) throw std::invalid_argument("effective_rate: n must be at least 2");
  if (!(tau0 > 0.0)) throw std::invalid_argument("effective_rate: tau0 must be positive");
  const double nd = static_cast<double>(n);
  const double chi = std::pow(nd * std::log2(nd), 2.0);
  return rate * nd / (chi * tau0);
}

}  // namespace trinecode::rel
