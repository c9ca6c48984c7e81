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

#include "pishadow/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "parallel.hpp"

namespace pishadow {

namespace {

double pairwise_sum(const double* data, std::size_t count) {
  if (count <= 32) {
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) acc += data[i];
    return acc;
  }
  std::size_t half = count / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

}  // namespace

double single_shot(const MeasurementRecord& record, const PIVector& obs_vec,
                   const ChannelMatrix& ch) {
  PIVector x = solve(ch, obs_vec);
  PIVector proj = (ch.basis == Basis::PauliPI)
                      ? rotated_projector_pauli(record.theta, record.h, ch.n)
                      : rotated_projector_schur(record.theta, record.h, ch.n);
  return std::real(pi_inner(proj, x));
}

// ---------------------------------------------------------------------------
// ShotEvaluator

struct ShotEvaluator::Impl {
  Basis basis = Basis::PauliPI;
  int n = 0;

  // PauliPI path: the estimate is
  //   sum_k pref_k a(h, m_k) Z_X^kx Z_Y^ky Z_Z^kz x_k
  // with x = M^-1 o folded into pref. The Krawtchouk table a(h, m) is
  // precomputed for all weight classes.
  struct PauliTerm {
    int kx = 0, ky = 0, kz = 0, m = 0;
    std::complex<double> coef;
  };
  std::vector<PauliTerm> pauli_terms;
  Eigen::MatrixXd kraw;  // (h, m) -> a(h, m)

  // SchurPI path: the estimate is
  //   Re sum_lambda sqrt(d) sum_(q,q') d_{q p} d_{q' p} e^{-i theta1 (q'-q)}
  //      x_{lambda q q'}
  // evaluated from one Wigner row per populated irrep per record.
  struct SchurEntry {
    int a = 0, b = 0;        // row/column offsets, q = s - a
    int delta = 0;           // q' - q
    std::complex<double> c;  // sqrt(d_lambda) * x entry
  };
  struct SchurGroup {
    const WignerTable* table = nullptr;
    int two_s = 0;
    std::vector<SchurEntry> entries;
  };
  std::vector<SchurGroup> schur_groups;
  std::vector<int> deltas_used;  // distinct |delta| values, ascending
  int max_mult = 0;

  double evaluate_one(const MeasurementRecord& rec,
                      WignerTable::Scratch& scratch, Eigen::VectorXd& row,
                      std::vector<std::complex<double>>& phases) const;
};

ShotEvaluator::ShotEvaluator(const PIVector& obs_vec, const ChannelMatrix& ch) {
  PIVector x = solve(ch, obs_vec);
  auto impl = std::make_unique<Impl>();
  impl->basis = ch.basis;
  impl->n = ch.n;
  int n = ch.n;

  if (ch.basis == Basis::PauliPI) {
    const auto& comps = enumerate_compositions(n);
    double logn = log_factorial(n);
    double log2n = n * std::log(2.0);
    for (std::size_t i = 0; i < comps.size(); ++i) {
      std::complex<double> xv = x.coeffs[static_cast<Eigen::Index>(i)];
      if (xv == std::complex<double>(0.0, 0.0)) continue;
      const Composition& k = comps[i];
      double log_pref = logn - log_factorial(k.kx) - log_factorial(k.ky) -
                        log_factorial(k.kz) - log_factorial(k.ki) - log2n;
      impl->pauli_terms.push_back(
          {k.kx, k.ky, k.kz, n - k.ki, std::exp(0.5 * log_pref) * xv});
    }
    impl->kraw.resize(n + 1, n + 1);
    for (int h = 0; h <= n; ++h) {
      for (int m = 0; m <= n; ++m) {
        impl->kraw(h, m) = hamming_alpha(h, m, n).a;
      }
    }
  } else {
    const SchurLayout& lay = SchurLayout::get(n);
    std::vector<bool> delta_seen(static_cast<std::size_t>(n) + 1, false);
    for (std::size_t i = 0; i < lay.irreps().size(); ++i) {
      const IrrepLabel& ir = lay.irreps()[i];
      int m = ir.mult;
      Impl::SchurGroup grp;
      grp.two_s = ir.two_s;
      double sd = std::exp(0.5 * ir.log_dim_t);
      std::size_t off = lay.block_offset(i);
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          std::complex<double> xv = x.coeffs[static_cast<Eigen::Index>(
              off + static_cast<std::size_t>(a) * m + b)];
          if (xv == std::complex<double>(0.0, 0.0)) continue;
          // q = s - a, q' = s - b, so q' - q = a - b.
          grp.entries.push_back({a, b, a - b, sd * xv});
          delta_seen[static_cast<std::size_t>(std::abs(a - b))] = true;
        }
      }
      if (!grp.entries.empty()) {
        grp.table = &WignerTable::shared(ir.two_s);
        impl->max_mult = std::max(impl->max_mult, m);
        impl->schur_groups.push_back(std::move(grp));
      }
    }
    for (int d = 0; d <= n; ++d) {
      if (delta_seen[static_cast<std::size_t>(d)]) {
        impl->deltas_used.push_back(d);
      }
    }
  }
  impl_ = std::move(impl);
}

ShotEvaluator::~ShotEvaluator() = default;
ShotEvaluator::ShotEvaluator(ShotEvaluator&&) noexcept = default;
ShotEvaluator& ShotEvaluator::operator=(ShotEvaluator&&) noexcept = default;

int ShotEvaluator::n() const { return impl_->n; }

double ShotEvaluator::Impl::evaluate_one(
    const MeasurementRecord& rec, WignerTable::Scratch& scratch,
    Eigen::VectorXd& row, std::vector<std::complex<double>>& phases) const {
  if (rec.h < 0 || rec.h > n) {
    throw std::invalid_argument("record weight class out of range");
  }
  if (basis == Basis::PauliPI) {
    Eigen::Vector3d z = z_axis_components(rec.theta);
    // Reuse `row` as the flattened power table [x powers | y | z].
    if (row.size() < 3 * (n + 1)) row.resize(3 * (n + 1));
    double* px = row.data();
    double* py = px + (n + 1);
    double* pz = py + (n + 1);
    px[0] = py[0] = pz[0] = 1.0;
    for (int j = 1; j <= n; ++j) {
      px[j] = px[j - 1] * z[0];
      py[j] = py[j - 1] * z[1];
      pz[j] = pz[j - 1] * z[2];
    }
    std::complex<double> acc(0.0, 0.0);
    for (const PauliTerm& t : pauli_terms) {
      acc += t.coef * (kraw(rec.h, t.m) * px[t.kx] * py[t.ky] * pz[t.kz]);
    }
    return acc.real();
  }

  int two_p = 2 * rec.h - n;
  if (phases.size() < 2 * static_cast<std::size_t>(n) + 1) {
    phases.resize(2 * static_cast<std::size_t>(n) + 1);
  }
  for (int d : deltas_used) {
    std::complex<double> ph = std::polar(1.0, -rec.theta.theta1 * d);
    phases[static_cast<std::size_t>(n + d)] = ph;
    phases[static_cast<std::size_t>(n - d)] = std::conj(ph);
  }
  if (row.size() < max_mult) row.resize(max_mult);
  std::complex<double> acc(0.0, 0.0);
  for (const SchurGroup& grp : schur_groups) {
    if (std::abs(two_p) > grp.two_s) continue;
    int m = grp.two_s + 1;
    auto seg = row.segment(0, m);
    // seg[a] = d_{p, q_a}(-theta2) = d_{q_a, p}(theta2) with q_a = s - a.
    grp.table->row(-rec.theta.theta2, two_p, scratch, seg);
    for (const SchurEntry& e : grp.entries) {
      acc += e.c * (seg[e.a] * seg[e.b]) *
             phases[static_cast<std::size_t>(n + e.delta)];
    }
  }
  return acc.real();
}

double ShotEvaluator::evaluate(const MeasurementRecord& record) const {
  WignerTable::Scratch scratch;
  Eigen::VectorXd row;
  std::vector<std::complex<double>> phases;
  return impl_->evaluate_one(record, scratch, row, phases);
}

std::vector<double> ShotEvaluator::evaluate_all(
    const std::vector<MeasurementRecord>& records) const {
  std::vector<double> out(records.size());
  detail::parallel_chunks(records.size(), [&](std::size_t b, std::size_t e) {
    WignerTable::Scratch scratch;
    Eigen::VectorXd row;
    std::vector<std::complex<double>> phases;
    for (std::size_t i = b; i < e; ++i) {
      out[i] = impl_->evaluate_one(records[i], scratch, row, phases);
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Aggregation

double mean(const std::vector<double>& values) {
  if (values.empty()) {
    throw std::invalid_argument("mean of an empty sample");
  }
  return pairwise_sum(values.data(), values.size()) /
         static_cast<double>(values.size());
}

double median_of_means(const std::vector<double>& values, int batches) {
  if (batches < 1) throw std::invalid_argument("batch count must be positive");
  std::size_t k = static_cast<std::size_t>(batches);
  if (values.size() < k) {
    throw std::invalid_argument("fewer samples than batches");
  }
  std::size_t per = values.size() / k;
  std::vector<double> means(k);
  for (std::size_t i = 0; i < k; ++i) {
    means[i] = pairwise_sum(values.data() + i * per, per) /
               static_cast<double>(per);
  }
  std::sort(means.begin(), means.end());
  if (k % 2 == 1) return means[k / 2];
  return 0.5 * (means[k / 2 - 1] + means[k / 2]);
}

double empirical_variance(const std::vector<double>& values) {
  if (values.size() < 2) {
    throw std::invalid_argument("variance needs at least two samples");
  }
  double m = mean(values);
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    double d = values[i] - m;
    sq[i] = d * d;
  }
  return pairwise_sum(sq.data(), sq.size()) /
         static_cast<double>(values.size() - 1);
}

namespace {

EstimateReport build_report(const Dataset& ds, const ObservableSpec& obs,
                            const ChannelMatrix& ch, bool use_mom,
                            int batches) {
  if (ds.protocol != Protocol::SymmPI) {
    throw std::invalid_argument(
        "estimator expects collective-rotation records");
  }
  if (ch.n != ds.n) {
    throw std::invalid_argument("channel and dataset disagree on n");
  }
  PIVector vec = observable_to_pivector(obs, ds.n, ch.basis);
  ShotEvaluator ev(vec, ch);
  std::vector<double> est = ev.evaluate_all(ds.records);

  EstimateReport rep;
  rep.observable = obs.id();
  rep.protocol = protocol_name(ds.protocol);
  rep.n = ds.n;
  rep.shots = ds.shots();
  rep.mean = mean(est);
  int k = std::min<std::int64_t>(batches, ds.shots()) > 0
              ? static_cast<int>(std::min<std::int64_t>(batches, ds.shots()))
              : 1;
  rep.median_of_means = median_of_means(est, k);
  rep.batches = k;
  rep.empirical_variance = est.size() >= 2 ? empirical_variance(est) : 0.0;
  rep.method = use_mom ? "median-of-means" : "mean";
  rep.estimate = use_mom ? rep.median_of_means : rep.mean;

  BoundParams bp;
  bp.n = ds.n;
  bp.norm_hs2 = vec.coeffs.squaredNorm();
  rep.bound = variance_bound(BoundKind::SymmPI, bp);
  rep.bound_kind = "symm-pi";
  return rep;
}

}  // namespace

EstimateReport estimate_mean(const Dataset& ds, const ObservableSpec& obs,
                             const ChannelMatrix& ch) {
  return build_report(ds, obs, ch, false, 10);
}

EstimateReport estimate_median_of_means(const Dataset& ds,
                                        const ObservableSpec& obs,
                                        const ChannelMatrix& ch, int batches) {
  return build_report(ds, obs, ch, true, batches);
}

// ---------------------------------------------------------------------------
// Exact variance

double exact_variance(const PIVector& obs_pauli, const PIVector& state_pauli,
                      const ChannelMatrix& pauli_ch, int max_n) {
  int n = obs_pauli.n;
  if (obs_pauli.basis != Basis::PauliPI ||
      state_pauli.basis != Basis::PauliPI ||
      pauli_ch.basis != Basis::PauliPI) {
    throw std::invalid_argument("exact variance works in the PauliPI basis");
  }
  if (state_pauli.n != n || pauli_ch.n != n) {
    throw std::invalid_argument("exact variance needs matching n");
  }
  if (n > max_n) {
    throw std::invalid_argument(
        "exact variance is cubic in the basis size; raise max_n explicitly "
        "to force large systems");
  }

  PIVector solved = solve(pauli_ch, obs_pauli);
  const auto& comps = enumerate_compositions(n);
  std::size_t dim = comps.size();

  std::vector<double> rho(dim), ot(dim), obs(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    rho[i] = std::real(state_pauli.coeffs[static_cast<Eigen::Index>(i)]);
    ot[i] = std::real(solved.coeffs[static_cast<Eigen::Index>(i)]);
    obs[i] = std::real(obs_pauli.coeffs[static_cast<Eigen::Index>(i)]);
  }

  // Triple weight-overlap table a3(m, m', m'') = sum_h alpha(h,m) alpha(h,m')
  // alpha(h,m'').
  Eigen::MatrixXd alpha(n + 1, n + 1);
  for (int h = 0; h <= n; ++h) {
    for (int m = 0; m <= n; ++m) {
      alpha(h, m) = hamming_alpha(h, m, n).alpha;
    }
  }
  std::vector<double> a3(static_cast<std::size_t>(n + 1) * (n + 1) * (n + 1));
  for (int m0 = 0; m0 <= n; ++m0) {
    for (int m1 = 0; m1 <= n; ++m1) {
      for (int m2 = 0; m2 <= n; ++m2) {
        double s = 0.0;
        for (int h = 0; h <= n; ++h) {
          s += alpha(h, m0) * alpha(h, m1) * alpha(h, m2);
        }
        a3[(static_cast<std::size_t>(m0) * (n + 1) + m1) * (n + 1) + m2] = s;
      }
    }
  }

  std::vector<double> half_log_fact(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) half_log_fact[j] = 0.5 * log_factorial(j);

  double second_moment = 0.0;
  for (std::size_t i1 = 0; i1 < dim; ++i1) {
    if (ot[i1] == 0.0) continue;
    const Composition& k1 = comps[i1];
    for (std::size_t i2 = 0; i2 < dim; ++i2) {
      if (ot[i2] == 0.0) continue;
      const Composition& k2 = comps[i2];
      double pair = ot[i1] * ot[i2];
      for (std::size_t i0 = 0; i0 < dim; ++i0) {
        if (rho[i0] == 0.0) continue;
        const Composition& k0 = comps[i0];
        int kx = k0.kx + k1.kx + k2.kx;
        int ky = k0.ky + k1.ky + k2.ky;
        int kz = k0.kz + k1.kz + k2.kz;
        if ((kx | ky | kz) & 1) continue;
        int mm = kx + ky + kz;
        int m0 = n - k0.ki, m1 = n - k1.ki, m2 = n - k2.ki;
        double logw = log_factorial(mm / 2 + 1) - log_factorial(mm + 2) +
                      log_factorial(kx) - log_factorial(kx / 2) +
                      log_factorial(ky) - log_factorial(ky / 2) +
                      log_factorial(kz) - log_factorial(kz / 2) +
                      half_log_fact[m0] + half_log_fact[m1] +
                      half_log_fact[m2] - half_log_fact[k0.kx] -
                      half_log_fact[k0.ky] - half_log_fact[k0.kz] -
                      half_log_fact[k1.kx] - half_log_fact[k1.ky] -
                      half_log_fact[k1.kz] - half_log_fact[k2.kx] -
                      half_log_fact[k2.ky] - half_log_fact[k2.kz];
        double w = 2.0 * std::exp(logw);
        second_moment +=
            rho[i0] * pair * w *
            a3[(static_cast<std::size_t>(m0) * (n + 1) + m1) * (n + 1) + m2];
      }
    }
  }

  double expectation = 0.0;
  for (std::size_t i = 0; i < dim; ++i) expectation += obs[i] * rho[i];
  return second_moment - expectation * expectation;
}

// ---------------------------------------------------------------------------
// Scaling fits

ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 4) {
    throw std::invalid_argument("scaling fit needs at least four points");
  }
  std::vector<std::pair<double, double>> pts = points;
  std::sort(pts.begin(), pts.end());
  for (const auto& [x, v] : pts) {
    if (x <= 0.0 || v <= 0.0) {
      throw std::invalid_argument(
          "scaling fit needs positive sizes and variances");
    }
  }

  std::size_t m = pts.size();
  auto ols = [m](const std::vector<double>& xs, const std::vector<double>& ys,
                 double* slope, double* intercept) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    double dm = static_cast<double>(m);
    double denom = dm * sxx - sx * sx;
    *slope = (dm * sxy - sx * sy) / denom;
    *intercept = (sy - *slope * sx) / dm;
    double sse = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double r = ys[i] - (*intercept + *slope * xs[i]);
      sse += r * r;
    }
    return sse;
  };

  std::vector<double> logn(m), logv(m), lin(m);
  for (std::size_t i = 0; i < m; ++i) {
    logn[i] = std::log(pts[i].first);
    logv[i] = std::log(pts[i].second);
    lin[i] = pts[i].first;
  }

  ScalingFit fit;
  double sse_log = ols(logn, logv, &fit.slope, &fit.intercept);
  double my = 0.0;
  for (double y : logv) my += y;
  my /= static_cast<double>(m);
  double sst = 0.0;
  for (double y : logv) sst += (y - my) * (y - my);
  fit.r_squared = sst > 0.0 ? 1.0 - sse_log / sst : 1.0;

  fit.nonincreasing = true;
  fit.nondecreasing = true;
  for (std::size_t i = 1; i < m; ++i) {
    if (pts[i].second > pts[i - 1].second * (1.0 + 1e-12)) {
      fit.nonincreasing = false;
    }
    if (pts[i].second < pts[i - 1].second * (1.0 - 1e-12)) {
      fit.nondecreasing = false;
    }
  }

  double es, ei;
  double sse_lin = ols(lin, logv, &es, &ei);
  fit.exponential_suspected = es > 0.0 && sse_lin < 0.25 * sse_log;
  return fit;
}

// ---------------------------------------------------------------------------
// Reports

std::string report_json(const EstimateReport& r) {
  nlohmann::json j;
  j["observable"] = r.observable;
  j["protocol"] = r.protocol;
  j["n"] = r.n;
  j["shots"] = r.shots;
  j["method"] = r.method;
  j["estimate"] = r.estimate;
  j["mean"] = r.mean;
  j["median_of_means"] = r.median_of_means;
  j["batches"] = r.batches;
  j["empirical_variance"] = r.empirical_variance;
  if (r.exact_variance) j["exact_variance"] = *r.exact_variance;
  if (r.bound) {
    j["bound"] = *r.bound;
    j["bound_kind"] = r.bound_kind;
  }
  return j.dump(2);
}

std::string report_csv_header() {
  return "observable,protocol,n,shots,method,estimate,mean,median_of_means,"
         "batches,empirical_variance,exact_variance,bound,bound_kind";
}

std::string report_csv_row(const EstimateReport& r) {
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  std::ostringstream out;
  out << r.observable << ',' << r.protocol << ',' << r.n << ',' << r.shots
      << ',' << r.method << ',' << num(r.estimate) << ',' << num(r.mean) << ','
      << num(r.median_of_means) << ',' << r.batches << ','
      << num(r.empirical_variance) << ','
      << (r.exact_variance ? num(*r.exact_variance) : std::string()) << ','
      << (r.bound ? num(*r.bound) : std::string()) << ',' << r.bound_kind;
  return out.str();
}

}  // namespace pishadow
