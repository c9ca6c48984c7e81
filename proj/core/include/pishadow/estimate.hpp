// Copyright 2026 The pishadow developers
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

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pishadow/channel.hpp"
#include "pishadow/pibasis.hpp"
#include "pishadow/sim.hpp"

namespace pishadow {

/// Single-record estimator value <rotated-projector(theta, h), M^-1 O>.
/// Convenience form that solves per call; use ShotEvaluator for loops.
double single_shot(const MeasurementRecord& record, const PIVector& obs_vec,
                   const ChannelMatrix& ch);

/// Precompiled estimator for one observable: the channel solve happens once
/// at construction and records are evaluated from support lists (per-parity
/// Krawtchouk rows in PauliPI, one Wigner row per populated irrep in
/// SchurPI).
class ShotEvaluator {
 public:
  ShotEvaluator(const PIVector& obs_vec, const ChannelMatrix& ch);
  ~ShotEvaluator();
  ShotEvaluator(ShotEvaluator&&) noexcept;
  ShotEvaluator& operator=(ShotEvaluator&&) noexcept;

  double evaluate(const MeasurementRecord& record) const;

  /// Parallel evaluation of a whole dataset; output order matches input
  /// order and is independent of thread count.
  std::vector<double> evaluate_all(
      const std::vector<MeasurementRecord>& records) const;

  int n() const;

 private:
  struct Impl;
  std::unique_ptr<const Impl> impl_;
};

/// Pairwise-summed mean (deterministic for a fixed input order).
double mean(const std::vector<double>& values);

/// Median of K batch means; batches are the first K * floor(S / K) values
/// split contiguously, the remainder is dropped. Even K averages the two
/// middle batch means.
double median_of_means(const std::vector<double>& values, int batches);

/// Unbiased sample variance (two-pass, pairwise-summed).
double empirical_variance(const std::vector<double>& values);

struct EstimateReport {
  std::string observable;
  std::string protocol;
  int n = 0;
  std::int64_t shots = 0;
  std::string method;            // "mean" or "median-of-means"
  double estimate = 0.0;         // value of the chosen method
  double mean = 0.0;
  double median_of_means = 0.0;
  int batches = 0;               // K (0 when MoM not computed)
  double empirical_variance = 0.0;
  std::optional<double> exact_variance;
  std::optional<double> bound;
  std::string bound_kind;
};

/// Evaluates a collective-rotation dataset and reports the plain mean as
/// the estimate (median-of-means still included for reference).
EstimateReport estimate_mean(const Dataset& ds, const ObservableSpec& obs,
                             const ChannelMatrix& ch);

/// Same evaluation with the median of `batches` batch means as the
/// estimate; the default matches the CLI configuration.
EstimateReport estimate_median_of_means(const Dataset& ds,
                                        const ObservableSpec& obs,
                                        const ChannelMatrix& ch,
                                        int batches = 10);

/// Exact single-shot variance of the collective-rotation estimator,
///   Var = E[ohat^2] - Tr[O rho]^2,
/// from the closed-form triple-overlap weights in PauliPI. Both vectors and
/// the channel must be PauliPI; cost grows as the cube of the basis size,
/// so n is capped (default 10).
double exact_variance(const PIVector& obs_pauli, const PIVector& state_pauli,
                      const ChannelMatrix& pauli_ch, int max_n = 10);

/// Log-log regression of variance against n plus shape diagnostics.
struct ScalingFit {
  double slope = 0.0;        // d log(var) / d log(n)
  double intercept = 0.0;
  double r_squared = 0.0;
  bool nonincreasing = false;
  bool nondecreasing = false;
  // True when log(var) is fit distinctly better by a term linear in n than
  // by one linear in log(n), i.e. the series looks exponential.
  bool exponential_suspected = false;
};

/// Fits (n, variance) points; requires at least four points with positive
/// variances.
ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& points);

/// Structured serialization of a report.
std::string report_json(const EstimateReport& r);
std::string report_csv_header();
std::string report_csv_row(const EstimateReport& r);

}  // namespace pishadow
