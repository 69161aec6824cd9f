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

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trinecode/measurement.hpp"

/// Random-coding error exponents and finite-length error bounds.
///
/// All logarithms are base 2, so exponents and rates are in bits.
namespace trinecode::rel {

enum class Regime { BelowR0, AboveR0 };

struct ExponentResult {
  double er = 0.0;
  /// Maximising rho; empty in the low-rate regime where rho = 1.
  std::optional<double> rho_star;
  Regime regime = Regime::BelowR0;
  /// Set by er_general when R is at or above the mutual information.
  bool above_capacity = false;
};

enum class Scheme { Classical, Qchc };

std::string_view to_string(Scheme s);
std::string_view to_string(Regime r);

/// E_0(rho, P) = -log2 sum_y (sum_x P(x) P(y|x)^{1/(1+rho)})^{1+rho}.
/// Throws std::invalid_argument for rho outside (0, 1] or mismatched priors.
double e0(double rho, std::span<const double> priors, const ChannelMatrix& ch);

enum class PriorMode { Uniform, Optimize };

/// max over rho in (0, 1] of E_0(rho, P) - rho R by golden-section search.
/// With PriorMode::Optimize the inner maximisation over P uses exponentiated
/// gradient steps. Rates at or above the mutual information give er = 0 with
/// `above_capacity` set. Throws std::invalid_argument for R < 0.
ExponentResult er_general(double rate, const ChannelMatrix& ch, PriorMode priors = PriorMode::Uniform);

/// Binary symmetric channel with crossover `eps`.
ChannelMatrix bsc(double eps);
/// Ternary channel of the collective decoder.
ChannelMatrix ternary_channel();

/// Crossover probability of the single-letter trine channel, (2 - sqrt3)/4.
double trine_bsc_epsilon();

/// Cutoff rate R_0 of BSC(eps): 1 - H(eps_1), eps_1 = sqrt(eps)/(sqrt(eps) + sqrt(1-eps)).
double cutoff_rate_bsc(double eps);
/// Cutoff rate of the ternary channel: log2 3 - Gamma_1 - H(Gamma_1).
double cutoff_rate_ternary();

/// Closed form for BSC(eps). Throws std::domain_error for R outside
/// [0, 1 - H(eps)) and std::invalid_argument for eps outside (0, 1/2).
ExponentResult er_bsc_closed(double rate, double eps);
/// Closed form for the ternary channel. Throws std::domain_error for R
/// outside [0, I2).
ExponentResult er_ternary_closed(double rate);

/// Rate ceilings on k/n: C1 for the classical scheme, I2/log2 3 for QCHC.
double rate_ceiling(Scheme s);

/// Classical: 2^{-n E_r(k/n)} on the trine BSC. QCHC: 2^{-(n/2) E_r(R_QC)}
/// on the ternary channel with R_QC = (k/n) log2 3. Throws
/// std::invalid_argument for n < 1 or odd n with QCHC, std::domain_error
/// for k/n at or above the scheme's ceiling.
double error_bound(long n, double k_over_n, Scheme s);

/// Smallest n (even for QCHC) with error_bound(n) <= target_pe. Throws
/// std::invalid_argument for target_pe outside (0, 1] and std::domain_error
/// for k/n at or above the ceiling.
long codelength_for(double target_pe, double k_over_n, Scheme s);

struct CompareRow {
  Scheme scheme;
  double k_over_n;
  double rate;  // R per scheme
  long n;
  double er;
  double pe_bound;
};

/// For each rate and each n, one classical row then one QCHC row. Every n
/// must be even and positive.
std::vector<CompareRow> qchc_compare(std::span<const double> k_over_n, std::span<const long> ns);

/// Columns scheme,k_over_n,R,n,Er,Pe_bound with a header line.
std::string compare_csv(std::span<const CompareRow> rows);

/// R n / (chi(n) tau0) with chi(n) = (n log2 n)^2. The constant in chi is
/// unknown, so only ratios of effective rates are meaningful. Throws
/// std::invalid_argument for n < 2 or tau0 <= 0.
double effective_rate(double rate, long n, double tau0);

}  // namespace trinecode::rel
