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

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "oracle.hpp"
#include "pishadow/channel.hpp"
#include "pishadow/estimate.hpp"
#include "pishadow/pibasis.hpp"
#include "pishadow/rng.hpp"
#include "pishadow/sim.hpp"

using namespace pishadow;

namespace {

double sample_se(const std::vector<double>& v) {
  return std::sqrt(empirical_variance(v) / static_cast<double>(v.size()));
}

/// 0.6 GHZ + 0.4 (uniform over Hamming class h): mixes several irreps and
/// keeps cross-weight coherences.
PIVector mixed_state(int n, Basis basis, int h) {
  PIVector g = ghz_state(n, basis);
  PIVector ph = observable_to_pivector(ObservableSpec::hamming_projector(h),
                                       n, basis);
  PIVector v = PIVector::zero(basis, n);
  v.coeffs = 0.6 * g.coeffs + (0.4 / binomial(n, h)) * ph.coeffs;
  return v;
}

/// |0...0><0...0| is the h = n Hamming class projector.
PIVector all_zero_state(int n, Basis basis) {
  return observable_to_pivector(ObservableSpec::hamming_projector(n), n,
                                basis);
}

PIVector random_real_pauli(int n, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  PIVector v = PIVector::zero(Basis::PauliPI, n);
  for (Eigen::Index i = 0; i < v.coeffs.size(); ++i) {
    v.coeffs[i] = 2.0 * (static_cast<double>(eng() >> 11) * 0x1p-53) - 1.0;
  }
  return v;
}

struct Moments {
  double first = 0.0;
  double second = 0.0;
};

/// Exact estimator moments E[ohat] and E[ohat^2] by quadrature over the
/// rotation measure: the integrand is a trig polynomial of degree at most
/// 3n in theta1 and theta2, so haar_rule(3n, 3n) integrates it exactly.
Moments quad_moments(const ShotEvaluator& ev, const StateSpec& state, int n,
                     Basis path) {
  Moments m;
  for (const oracle::HaarNode& node : oracle::haar_rule(3 * n, 3 * n)) {
    std::vector<double> p = outcome_distribution(state, n, node.theta, path);
    for (int h = 0; h <= n; ++h) {
      double o = ev.evaluate(MeasurementRecord{node.theta, h});
      double w = node.weight * p[static_cast<std::size_t>(h)];
      m.first += w * o;
      m.second += w * o * o;
    }
  }
  return m;
}

std::vector<ObservableSpec> spec_grid(int n) {
  std::vector<ObservableSpec> specs;
  specs.push_back(
      ObservableSpec::pauli_string(std::string(static_cast<std::size_t>(n),
                                               'Z')));
  std::string xy(static_cast<std::size_t>(n), 'I');
  xy[0] = 'X';
  xy[1] = 'Y';
  specs.push_back(ObservableSpec::pauli_string(xy));
  specs.push_back(
      ObservableSpec::pauli_string(std::string(static_cast<std::size_t>(n),
                                               'I')));
  specs.push_back(ObservableSpec::axis_string('Z', 1));
  specs.push_back(ObservableSpec::hamming_projector(0));
  specs.push_back(ObservableSpec::ghz_projector());
  return specs;
}

std::vector<MeasurementRecord> sample_records(int n, std::size_t count,
                                              std::uint64_t seed) {
  std::vector<MeasurementRecord> recs;
  recs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    RecordRng rng(seed, i);
    EulerAngles t = sample_euler(rng);
    recs.push_back(MeasurementRecord{t, static_cast<int>(i) % (n + 1)});
  }
  return recs;
}

}  // namespace

TEST_CASE("single-qubit estimator closed form") {
  ChannelMatrix ch = build_channel_pauli(1);
  PIVector obs_z = observable_to_pivector(ObservableSpec::pauli_string("Z"),
                                          1, Basis::PauliPI);
  ShotEvaluator ev(obs_z, ch);

  // The inverted channel triples the traceless part, so one record is worth
  // 3 cos(theta2) with the sign of the measured class.
  CHECK(single_shot({EulerAngles{0.0, 0.0, 0.0}, 1}, obs_z, ch) ==
        doctest::Approx(3.0).epsilon(1e-12));
  CHECK(single_shot({EulerAngles{0.0, 0.0, 0.0}, 0}, obs_z, ch) ==
        doctest::Approx(-3.0).epsilon(1e-12));
  for (double t1 : {0.0, 1.3, 4.4}) {
    for (double t2 : {0.0, 0.7, 2.0, 3.1}) {
      MeasurementRecord up{EulerAngles{t1, t2, 0.9}, 1};
      MeasurementRecord dn{EulerAngles{t1, t2, 0.9}, 0};
      CHECK(ev.evaluate(up) ==
            doctest::Approx(3.0 * std::cos(t2)).epsilon(1e-12));
      CHECK(ev.evaluate(dn) ==
            doctest::Approx(-3.0 * std::cos(t2)).epsilon(1e-12));
      CHECK(single_shot(up, obs_z, ch) ==
            doctest::Approx(ev.evaluate(up)).epsilon(1e-12));
    }
  }
}

TEST_CASE("shot evaluator matches the per-record solve and dense algebra") {
  for (int n : {2, 3, 4}) {
    ChannelMatrix chp = build_channel_pauli(n);
    ChannelMatrix chs = build_channel_schur(n);
    oracle::DenseSchurBasis schur_basis(n);
    std::vector<MeasurementRecord> recs = sample_records(n, 24, 500 + n);

    std::vector<ObservableSpec> specs = spec_grid(n);
    for (const ObservableSpec& spec : specs) {
      PIVector vp = observable_to_pivector(spec, n, Basis::PauliPI);
      PIVector vs = observable_to_pivector(spec, n, Basis::SchurPI);
      ShotEvaluator evp(vp, chp);
      ShotEvaluator evs(vs, chs);
      CHECK(evp.n() == n);

      oracle::MatrixXcd solved_dense =
          oracle::dense_from_pauli_pivector(solve(chp, vp));
      oracle::MatrixXcd solved_dense_s = schur_basis.dense(solve(chs, vs));
      CHECK((solved_dense - solved_dense_s).cwiseAbs().maxCoeff() < 1e-9);

      std::vector<double> allp = evp.evaluate_all(recs);
      std::vector<double> alls = evs.evaluate_all(recs);
      for (std::size_t i = 0; i < recs.size(); ++i) {
        double dense = std::real(
            (oracle::dense_rotated_projector(recs[i].theta, recs[i].h, n) *
             solved_dense)
                .trace());
        CHECK(std::abs(allp[i] - dense) < 1e-9);
        CHECK(std::abs(alls[i] - dense) < 1e-9);
        CHECK(allp[i] == evp.evaluate(recs[i]));
        CHECK(alls[i] == evs.evaluate(recs[i]));
        CHECK(std::abs(allp[i] - single_shot(recs[i], vp, chp)) < 1e-10);
        CHECK(std::abs(alls[i] - single_shot(recs[i], vs, chs)) < 1e-10);
      }
    }
  }
}

TEST_CASE("estimator is unbiased under exact quadrature") {
  for (int n : {2, 3}) {
    ChannelMatrix chp = build_channel_pauli(n);
    ChannelMatrix chs = build_channel_schur(n);
    std::vector<PIVector> states_p = {ghz_state(n, Basis::PauliPI),
                                      mixed_state(n, Basis::PauliPI, 1),
                                      all_zero_state(n, Basis::PauliPI)};
    std::vector<PIVector> states_s = {ghz_state(n, Basis::SchurPI),
                                      mixed_state(n, Basis::SchurPI, 1),
                                      all_zero_state(n, Basis::SchurPI)};
    for (const ObservableSpec& spec : spec_grid(n)) {
      PIVector vp = observable_to_pivector(spec, n, Basis::PauliPI);
      PIVector vs = observable_to_pivector(spec, n, Basis::SchurPI);
      ShotEvaluator evp(vp, chp);
      ShotEvaluator evs(vs, chs);
      for (std::size_t s = 0; s < states_p.size(); ++s) {
        double truth = std::real(pi_inner(vp, states_p[s]));
        Moments mp = quad_moments(evp, StateSpec::raw_state(states_p[s]), n,
                                  Basis::PauliPI);
        Moments ms = quad_moments(evs, StateSpec::raw_state(states_s[s]), n,
                                  Basis::SchurPI);
        CHECK(std::abs(mp.first - truth) < 1e-9);
        CHECK(std::abs(ms.first - truth) < 1e-9);
        CHECK(std::abs(mp.second - ms.second) < 1e-8);
      }
    }
  }
}

TEST_CASE("exact variance matches quadrature moments") {
  for (int n : {2, 3}) {
    ChannelMatrix chp = build_channel_pauli(n);
    std::vector<PIVector> states = {ghz_state(n, Basis::PauliPI),
                                    mixed_state(n, Basis::PauliPI, 1),
                                    all_zero_state(n, Basis::PauliPI)};
    std::vector<PIVector> observables;
    for (const ObservableSpec& spec : spec_grid(n)) {
      observables.push_back(observable_to_pivector(spec, n, Basis::PauliPI));
    }
    observables.push_back(random_real_pauli(n, 321));

    for (const PIVector& obs : observables) {
      ShotEvaluator ev(obs, chp);
      BoundParams bp;
      bp.n = n;
      bp.norm_hs2 = obs.coeffs.squaredNorm();
      double bound = variance_bound(BoundKind::SymmPI, bp);
      for (const PIVector& state : states) {
        Moments m = quad_moments(ev, StateSpec::raw_state(state), n,
                                 Basis::PauliPI);
        double want = m.second - m.first * m.first;
        double got = exact_variance(obs, state, chp);
        CHECK(std::abs(got - want) < 1e-8);
        CHECK(got > -1e-9);
        // The closed-form protocol bound dominates every single-observable
        // variance.
        CHECK(got <= bound + 1e-9);
      }
    }
  }
}

TEST_CASE("single-qubit exact variance closed forms") {
  ChannelMatrix ch = build_channel_pauli(1);
  PIVector obs_z = observable_to_pivector(ObservableSpec::pauli_string("Z"),
                                          1, Basis::PauliPI);
  // E[ohat^2] = 9 E[cos^2 theta2] = 3 regardless of the state.
  PIVector up = all_zero_state(1, Basis::PauliPI);
  CHECK(exact_variance(obs_z, up, ch) == doctest::Approx(2.0).epsilon(1e-12));
  PIVector plus = ghz_state(1, Basis::PauliPI);
  CHECK(exact_variance(obs_z, plus, ch) ==
        doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("sampled estimates agree with the exact variance") {
  // Single qubit in |0>: mean 1, variance exactly 2.
  {
    ChannelMatrix ch = build_channel_pauli(1);
    PIVector obs_z = observable_to_pivector(ObservableSpec::pauli_string("Z"),
                                            1, Basis::PauliPI);
    StateSpec state = StateSpec::raw_state(all_zero_state(1, Basis::PauliPI));
    Dataset ds = draw_dataset(state, 1, 200000, 911);
    ShotEvaluator ev(obs_z, ch);
    std::vector<double> est = ev.evaluate_all(ds.records);
    CHECK(std::abs(mean(est) - 1.0) < 5.0 * sample_se(est));
    // Standard error of the variance estimate is about 0.006 here.
    CHECK(std::abs(empirical_variance(est) - 2.0) < 0.05);
  }

  // Four-qubit GHZ with a two-site correlator: empirical variance against
  // the closed-form value.
  {
    int n = 4;
    ChannelMatrix ch = build_channel_pauli(n);
    PIVector obs = observable_to_pivector(ObservableSpec::axis_string('Z', 2),
                                          n, Basis::PauliPI);
    PIVector state = ghz_state(n, Basis::PauliPI);
    double exact = exact_variance(obs, state, ch);
    Dataset ds = draw_dataset(StateSpec::ghz(), n, 200000, 913);
    ShotEvaluator ev(obs, ch);
    std::vector<double> est = ev.evaluate_all(ds.records);
    CHECK(std::abs(mean(est) - 1.0) < 5.0 * sample_se(est));

    double var = empirical_variance(est);
    double m = mean(est);
    double fourth = 0.0;
    for (double x : est) {
      double d = x - m;
      fourth += d * d * d * d;
    }
    fourth /= static_cast<double>(est.size());
    double se_var = std::sqrt((fourth - var * var) /
                              static_cast<double>(est.size()));
    CHECK(std::abs(var - exact) < 6.0 * se_var);
  }
}

TEST_CASE("exact variance input validation") {
  int n = 4;
  ChannelMatrix chp = build_channel_pauli(n);
  ChannelMatrix chs = build_channel_schur(n);
  PIVector obs_p = observable_to_pivector(ObservableSpec::axis_string('Z', 2),
                                          n, Basis::PauliPI);
  PIVector obs_s = observable_to_pivector(ObservableSpec::axis_string('Z', 2),
                                          n, Basis::SchurPI);
  PIVector state = ghz_state(n, Basis::PauliPI);

  CHECK_THROWS_AS(exact_variance(obs_s, state, chs), std::invalid_argument);
  CHECK_THROWS_AS(exact_variance(obs_p, ghz_state(3, Basis::PauliPI), chp),
                  std::invalid_argument);
  CHECK_THROWS_AS(exact_variance(obs_p, state, build_channel_pauli(3)),
                  std::invalid_argument);
  // The default cap refuses large systems unless raised explicitly.
  CHECK_THROWS_AS(exact_variance(obs_p, state, chp, 3),
                  std::invalid_argument);
  CHECK(exact_variance(obs_p, state, chp, 4) ==
        doctest::Approx(exact_variance(obs_p, state, chp)).epsilon(1e-12));
}

TEST_CASE("estimation works on restricted channel sectors") {
  int n = 6;
  ChannelMatrix full = build_channel_schur(n);
  ChannelMatrix diag = build_channel_schur(n, std::vector<int>{0});
  ChannelMatrix ghzch = build_channel_schur(n, std::vector<int>{-n, 0, n});

  PIVector ham = observable_to_pivector(ObservableSpec::hamming_projector(2),
                                        n, Basis::SchurPI);
  PIVector gp = observable_to_pivector(ObservableSpec::ghz_projector(), n,
                                       Basis::SchurPI);
  std::vector<MeasurementRecord> recs = sample_records(n, 40, 700);

  ShotEvaluator ev_full(ham, full);
  ShotEvaluator ev_diag(ham, diag);
  std::vector<double> a = ev_full.evaluate_all(recs);
  std::vector<double> b = ev_diag.evaluate_all(recs);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-10));
  }

  ShotEvaluator ev_gp_full(gp, full);
  ShotEvaluator ev_gp_two(gp, ghzch);
  for (const MeasurementRecord& r : recs) {
    CHECK(ev_gp_full.evaluate(r) ==
          doctest::Approx(ev_gp_two.evaluate(r)).epsilon(1e-10));
  }

  // The GHZ projector populates the extreme coherence sector, which the
  // diagonal-only channel does not carry.
  CHECK_THROWS_AS(ShotEvaluator(gp, diag), std::invalid_argument);
}

TEST_CASE("evaluator agrees across bases at ten qubits") {
  int n = 10;
  ChannelMatrix chp = build_channel_pauli(n);
  ChannelMatrix chs = build_channel_schur(n);
  ObservableSpec spec = ObservableSpec::pauli_string("ZZZZZZZZZZ");
  ShotEvaluator evp(observable_to_pivector(spec, n, Basis::PauliPI), chp);
  ShotEvaluator evs(observable_to_pivector(spec, n, Basis::SchurPI), chs);
  std::vector<MeasurementRecord> recs = sample_records(n, 60, 800);
  std::vector<double> vp = evp.evaluate_all(recs);
  std::vector<double> vs = evs.evaluate_all(recs);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(std::abs(vp[i] - vs[i]) < 1e-8 * (1.0 + std::abs(vp[i])));
  }
}

TEST_CASE("sampled GHZ estimates converge to the truth at ten qubits") {
  int n = 10;
  ChannelMatrix ch = build_channel_schur(n);
  Dataset ds = draw_dataset(StateSpec::ghz(), n, 50000, 1009);
  struct Probe {
    ObservableSpec spec;
    double truth;
  };
  std::vector<Probe> probes;
  probes.push_back({ObservableSpec::pauli_string("ZZZZZZZZZZ"), 1.0});
  probes.push_back({ObservableSpec::ghz_projector(), 1.0});
  probes.push_back({ObservableSpec::axis_string('Z', 2), 1.0});
  for (const Probe& pr : probes) {
    ShotEvaluator ev(observable_to_pivector(pr.spec, n, Basis::SchurPI), ch);
    std::vector<double> est = ev.evaluate_all(ds.records);
    CHECK(std::abs(mean(est) - pr.truth) < 5.0 * sample_se(est));
  }
}

TEST_CASE("record weight class is validated") {
  int n = 3;
  ChannelMatrix ch = build_channel_pauli(n);
  PIVector obs = observable_to_pivector(ObservableSpec::axis_string('Z', 1),
                                        n, Basis::PauliPI);
  ShotEvaluator ev(obs, ch);
  CHECK_THROWS_AS(ev.evaluate({EulerAngles{0.1, 0.2, 0.3}, -1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ev.evaluate({EulerAngles{0.1, 0.2, 0.3}, n + 1}),
                  std::invalid_argument);
  PIVector schur_obs = observable_to_pivector(
      ObservableSpec::axis_string('Z', 1), n, Basis::SchurPI);
  CHECK_THROWS_AS(single_shot({EulerAngles{0.1, 0.2, 0.3}, 1}, schur_obs, ch),
                  std::invalid_argument);
}

TEST_CASE("aggregation helpers") {
  CHECK(mean({1.0, 2.0, 3.0, 4.0}) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK_THROWS_AS(mean({}), std::invalid_argument);

  std::vector<double> ascending;
  for (int i = 0; i < 10; ++i) ascending.push_back(static_cast<double>(i));
  CHECK(median_of_means(ascending, 5) == doctest::Approx(4.5));
  CHECK(median_of_means(ascending, 2) == doctest::Approx(4.5));
  CHECK(median_of_means(ascending, 1) == doctest::Approx(4.5));
  CHECK(median_of_means(ascending, 10) == doctest::Approx(4.5));
  // A remainder that does not fill a batch is dropped.
  std::vector<double> eleven = ascending;
  eleven.push_back(1000.0);
  CHECK(median_of_means(eleven, 5) == doctest::Approx(4.5));
  CHECK_THROWS_AS(median_of_means(ascending, 0), std::invalid_argument);
  CHECK_THROWS_AS(median_of_means(ascending, 11), std::invalid_argument);

  CHECK(empirical_variance({1.0, 1.0, 1.0}) == doctest::Approx(0.0));
  CHECK(empirical_variance({0.0, 2.0}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(empirical_variance({1.0}), std::invalid_argument);
}

TEST_CASE("median of means resists heavy tails") {
  // Symmetric Pareto samples with tail index 1.2: zero mean, no second
  // moment. The plain mean is dominated by rare huge draws while batch
  // medians stay near the center, so the median of means should win in the
  // clear majority of trials.
  int wins = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 eng(static_cast<std::uint64_t>(9000 + trial));
    std::vector<double> xs(2000);
    for (double& x : xs) {
      double u = static_cast<double>(eng() >> 11) * 0x1p-53;
      u = std::max(u, 1e-15);
      double sign = (eng() & 1) ? 1.0 : -1.0;
      x = sign * std::pow(u, -1.0 / 1.2);
    }
    double plain = mean(xs);
    double mom = median_of_means(xs, 10);
    if (std::abs(mom) < std::abs(plain)) ++wins;
  }
  CHECK(wins >= 60);
}

TEST_CASE("estimate reports carry the full summary") {
  int n = 4;
  ChannelMatrix ch = build_channel_pauli(n);
  ObservableSpec obs = ObservableSpec::axis_string('Z', 2);
  Dataset ds = draw_dataset(StateSpec::ghz(), n, 4000, 1201);

  EstimateReport rep = estimate_mean(ds, obs, ch);
  CHECK(rep.observable == "axis:Z:2");
  CHECK(rep.protocol == "symm-pi");
  CHECK(rep.n == n);
  CHECK(rep.shots == 4000);
  CHECK(rep.method == "mean");
  CHECK(rep.estimate == rep.mean);
  CHECK(rep.batches == 10);
  CHECK(rep.empirical_variance > 0.0);
  CHECK(std::abs(rep.mean - 1.0) <
        5.0 * std::sqrt(rep.empirical_variance / 4000.0));
  REQUIRE(rep.bound.has_value());
  PIVector vec = observable_to_pivector(obs, n, Basis::PauliPI);
  BoundParams bp;
  bp.n = n;
  bp.norm_hs2 = vec.coeffs.squaredNorm();
  CHECK(*rep.bound ==
        doctest::Approx(variance_bound(BoundKind::SymmPI, bp)));
  CHECK(rep.bound_kind == "symm-pi");
  CHECK(!rep.exact_variance.has_value());

  EstimateReport mom = estimate_median_of_means(ds, obs, ch, 7);
  CHECK(mom.method == "median-of-means");
  CHECK(mom.batches == 7);
  CHECK(mom.estimate == mom.median_of_means);
  CHECK(mom.mean == rep.mean);
  CHECK(estimate_median_of_means(ds, obs, ch).batches == 10);

  // Fewer shots than batches: the batch count is clamped.
  Dataset tiny = draw_dataset(StateSpec::ghz(), n, 5, 1203);
  CHECK(estimate_median_of_means(tiny, obs, ch).batches == 5);

  Dataset block = draw_dataset_block(StateSpec::ghz(), n, 10, 1205);
  CHECK_THROWS_AS(estimate_mean(block, obs, ch), std::invalid_argument);
  CHECK_THROWS_AS(estimate_mean(ds, obs, build_channel_pauli(3)),
                  std::invalid_argument);
}

TEST_CASE("reports serialize to JSON and CSV") {
  int n = 3;
  ChannelMatrix ch = build_channel_pauli(n);
  ObservableSpec obs = ObservableSpec::axis_string('Z', 2);
  Dataset ds = draw_dataset(StateSpec::ghz(), n, 100, 1301);
  EstimateReport rep = estimate_mean(ds, obs, ch);

  nlohmann::json j = nlohmann::json::parse(report_json(rep));
  CHECK(j.at("observable").get<std::string>() == rep.observable);
  CHECK(j.at("protocol").get<std::string>() == "symm-pi");
  CHECK(j.at("n").get<int>() == n);
  CHECK(j.at("shots").get<std::int64_t>() == 100);
  CHECK(j.at("method").get<std::string>() == "mean");
  CHECK(j.at("estimate").get<double>() == rep.estimate);
  CHECK(j.at("mean").get<double>() == rep.mean);
  CHECK(j.at("median_of_means").get<double>() == rep.median_of_means);
  CHECK(j.at("batches").get<int>() == rep.batches);
  CHECK(j.at("empirical_variance").get<double>() == rep.empirical_variance);
  CHECK(j.at("bound").get<double>() == *rep.bound);
  CHECK(j.at("bound_kind").get<std::string>() == "symm-pi");
  CHECK(!j.contains("exact_variance"));

  EstimateReport with_var = rep;
  with_var.exact_variance = 1.5;
  nlohmann::json j2 = nlohmann::json::parse(report_json(with_var));
  CHECK(j2.at("exact_variance").get<double>() == 1.5);

  auto split = [](const std::string& line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      std::size_t next = line.find(',', pos);
      if (next == std::string::npos) {
        fields.push_back(line.substr(pos));
        break;
      }
      fields.push_back(line.substr(pos, next - pos));
      pos = next + 1;
    }
    return fields;
  };
  std::vector<std::string> head = split(report_csv_header());
  std::vector<std::string> row = split(report_csv_row(rep));
  REQUIRE(head.size() == row.size());
  CHECK(head.size() == 13);
  CHECK(row[0] == "axis:Z:2");
  CHECK(row[1] == "symm-pi");
  CHECK(row[4] == "mean");
  CHECK(row[10].empty());
  std::vector<std::string> row2 = split(report_csv_row(with_var));
  CHECK(row2[10] == "1.5");
}

TEST_CASE("scaling fits recover polynomial and exponential growth") {
  // Linear growth: variance 7 n.
  {
    std::vector<std::pair<double, double>> pts;
    for (double x : {4.0, 6.0, 8.0, 10.0, 12.0}) pts.push_back({x, 7.0 * x});
    ScalingFit fit = scaling_fit(pts);
    CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fit.intercept == doctest::Approx(std::log(7.0)).epsilon(1e-9));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fit.nondecreasing);
    CHECK(!fit.nonincreasing);
    CHECK(!fit.exponential_suspected);
  }

  // Quadratic growth, points supplied out of order.
  {
    std::vector<std::pair<double, double>> pts = {
        {8.0, 128.0}, {4.0, 32.0}, {12.0, 288.0}, {6.0, 72.0}};
    ScalingFit fit = scaling_fit(pts);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(!fit.exponential_suspected);
  }

  // Exponential growth must be flagged.
  {
    std::vector<std::pair<double, double>> pts;
    for (double x : {4.0, 6.0, 8.0, 10.0, 12.0, 14.0}) {
      pts.push_back({x, std::pow(3.0, x)});
    }
    ScalingFit fit = scaling_fit(pts);
    CHECK(fit.exponential_suspected);
    CHECK(fit.nondecreasing);
  }

  // Decreasing series.
  {
    std::vector<std::pair<double, double>> pts;
    for (double x : {4.0, 6.0, 8.0, 10.0}) pts.push_back({x, 50.0 / x});
    ScalingFit fit = scaling_fit(pts);
    CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(fit.nonincreasing);
    CHECK(!fit.nondecreasing);
    CHECK(!fit.exponential_suspected);
  }

  // A constant series is both nonincreasing and nondecreasing.
  {
    std::vector<std::pair<double, double>> pts = {
        {4.0, 5.0}, {6.0, 5.0}, {8.0, 5.0}, {10.0, 5.0}};
    ScalingFit fit = scaling_fit(pts);
    CHECK(fit.slope == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(fit.nonincreasing);
    CHECK(fit.nondecreasing);
    CHECK(!fit.exponential_suspected);
  }

  CHECK_THROWS_AS(scaling_fit({{4.0, 1.0}, {6.0, 2.0}, {8.0, 3.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      scaling_fit({{4.0, 1.0}, {6.0, 0.0}, {8.0, 3.0}, {10.0, 4.0}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      scaling_fit({{-4.0, 1.0}, {6.0, 2.0}, {8.0, 3.0}, {10.0, 4.0}}),
      std::invalid_argument);
}
