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
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cli_common.hpp"
#include "pishadow/util.hpp"

namespace pscli {

using nlohmann::json;
using pishadow::Basis;
using pishadow::ChannelMatrix;
using pishadow::Dataset;
using pishadow::EstimateReport;
using pishadow::ObservableSpec;
using pishadow::PIVector;
using pishadow::Protocol;
using pishadow::StateSpec;

namespace {

constexpr std::int64_t kDefaultShotsSmall = 100000;  // n <= 40
constexpr std::int64_t kDefaultShotsLarge = 10000;   // n > 40
constexpr int kLcMaxN = 12;
constexpr int kExactVarianceMaxN = 10;

struct BenchRow {
  std::string role;
  EstimateReport report;
};

struct SeriesKey {
  std::string protocol;
  std::string role;
  bool operator<(const SeriesKey& o) const {
    return std::tie(protocol, role) < std::tie(o.protocol, o.role);
  }
};

std::vector<std::pair<std::string, ObservableSpec>> bench_roles(int n) {
  return {
      {"z1z2", ObservableSpec::axis_string('Z', 2)},
      {"z-half", ObservableSpec::axis_string('Z', std::max(1, n / 2))},
      {"z-full", ObservableSpec::axis_string('Z', n)},
      {"ghz-proj", ObservableSpec::ghz_projector()},
  };
}

std::string fmt(double x, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, x);
  return buf;
}

// Minimal hand-written log-log chart: one polyline per (protocol, role)
// series of positive variances, axes with decade ticks, and a legend.
std::string render_scaling_svg(
    const std::map<SeriesKey, std::vector<std::pair<double, double>>>&
        series) {
  const double width = 760.0, height = 480.0;
  const double left = 70.0, right = width - 190.0;
  const double top = 24.0, bottom = height - 52.0;

  std::set<double> xs;
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  bool any = false;
  for (const auto& [key, pts] : series) {
    for (const auto& [n, var] : pts) {
      const double lx = std::log10(n), ly = std::log10(var);
      xs.insert(n);
      if (!any) {
        xmin = xmax = lx;
        ymin = ymax = ly;
        any = true;
      } else {
        xmin = std::min(xmin, lx);
        xmax = std::max(xmax, lx);
        ymin = std::min(ymin, ly);
        ymax = std::max(ymax, ly);
      }
    }
  }
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) +
         "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " + fmt(width) +
         " " + fmt(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!any) {
    svg += "<text x=\"40\" y=\"40\" font-family=\"monospace\" "
           "font-size=\"13\">no positive variances to plot</text>\n</svg>\n";
    return svg;
  }
  if (xmax - xmin < 1e-9) xmax = xmin + 1.0;
  if (ymax - ymin < 1e-9) ymax = ymin + 1.0;
  const double xpad = 0.05 * (xmax - xmin), ypad = 0.08 * (ymax - ymin);
  xmin -= xpad;
  xmax += xpad;
  ymin -= ypad;
  ymax += ypad;
  auto px = [&](double lx) {
    return left + (lx - xmin) / (xmax - xmin) * (right - left);
  };
  auto py = [&](double ly) {
    return bottom - (ly - ymin) / (ymax - ymin) * (bottom - top);
  };

  // Frame and axis labels.
  svg += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" +
         fmt(right - left) + "\" height=\"" + fmt(bottom - top) +
         "\" fill=\"none\" stroke=\"#444\"/>\n";
  svg += "<text x=\"" + fmt((left + right) / 2) + "\" y=\"" +
         fmt(height - 12.0) +
         "\" text-anchor=\"middle\" font-family=\"monospace\" "
         "font-size=\"12\">n (log scale)</text>\n";
  svg += "<text x=\"16\" y=\"" + fmt((top + bottom) / 2) +
         "\" text-anchor=\"middle\" font-family=\"monospace\" "
         "font-size=\"12\" transform=\"rotate(-90 16 " +
         fmt((top + bottom) / 2) +
         ")\">single-shot variance (log scale)</text>\n";

  // X ticks at every benchmarked n, y ticks at powers of ten.
  for (double n : xs) {
    const double x = px(std::log10(n));
    svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(bottom) + "\" x2=\"" +
           fmt(x) + "\" y2=\"" + fmt(bottom + 5.0) + "\" stroke=\"#444\"/>\n";
    svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(bottom + 18.0) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"11\">" +
           fmt(n, "%.0f") + "</text>\n";
  }
  const int e_lo = static_cast<int>(std::floor(ymin));
  const int e_hi = static_cast<int>(std::ceil(ymax));
  for (int e = e_lo; e <= e_hi; ++e) {
    if (e < ymin || e > ymax) continue;
    const double y = py(e);
    svg += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
           fmt(right) + "\" y2=\"" + fmt(y) +
           "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fmt(left - 6.0) + "\" y=\"" + fmt(y + 4.0) +
           "\" text-anchor=\"end\" font-family=\"monospace\" "
           "font-size=\"11\">1e" +
           std::to_string(e) + "</text>\n";
  }

  static const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                   "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                   "#bcbd22", "#17becf", "#393b79", "#ad494a"};
  int color_index = 0;
  double legend_y = top + 16.0;
  for (const auto& [key, pts] : series) {
    if (pts.empty()) continue;
    const char* color = kPalette[color_index % 12];
    ++color_index;
    std::vector<std::pair<double, double>> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    std::string path;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      path += (i == 0 ? "M" : " L");
      path += fmt(px(std::log10(sorted[i].first)), "%.2f");
      path += " ";
      path += fmt(py(std::log10(sorted[i].second)), "%.2f");
    }
    svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1.5\"/>\n";
    for (const auto& [n, var] : sorted) {
      svg += "<circle cx=\"" + fmt(px(std::log10(n)), "%.2f") + "\" cy=\"" +
             fmt(py(std::log10(var)), "%.2f") + "\" r=\"2.5\" fill=\"" +
             color + "\"/>\n";
    }
    svg += "<line x1=\"" + fmt(right + 12.0) + "\" y1=\"" + fmt(legend_y) +
           "\" x2=\"" + fmt(right + 34.0) + "\" y2=\"" + fmt(legend_y) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt(right + 40.0) + "\" y=\"" + fmt(legend_y + 4.0) +
           "\" font-family=\"monospace\" font-size=\"11\">" + key.protocol +
           " " + key.role + "</text>\n";
    legend_y += 16.0;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace

int cmd_bench_ghz(const BenchConfig& cfg) {
  std::vector<int> ns;
  for (int n : cfg.n_list) {
    if (n < 2) {
      throw std::invalid_argument(
          "bench-ghz needs n >= 2 (the two-body correlator row)");
    }
    if (std::find(ns.begin(), ns.end(), n) == ns.end()) ns.push_back(n);
  }

  const std::string dir = resolve_cache_dir(cfg.cache_dir);
  ensure_directory(dir);

  std::vector<BenchRow> rows;
  json channel_caches = json::array();

  for (int n : ns) {
    const std::int64_t shots =
        cfg.shots > 0 ? cfg.shots
                      : (n <= 40 ? kDefaultShotsSmall : kDefaultShotsLarge);
    const auto roles = bench_roles(n);

    // The axis observables live in the zero-coherence sector and the GHZ
    // projector additionally touches the extreme sectors, so a channel
    // restricted to {-n, 0, n} serves every row.
    const std::vector<int> deltas{-n, 0, n};
    const std::string ch_path =
        dir + "/" + channel_cache_name(Basis::SchurPI, n, deltas);
    ChannelMatrix ch;
    if (std::filesystem::exists(ch_path)) {
      try {
        ch = pishadow::load_channel(ch_path);
      } catch (const std::exception& e) {
        throw CacheError("failed to load channel cache " + ch_path + ": " +
                         e.what());
      }
      if (ch.n != n || ch.basis != Basis::SchurPI) {
        throw CacheError("channel cache " + ch_path +
                         " does not match n=" + std::to_string(n));
      }
    } else {
      ch = pishadow::build_channel_schur(n, deltas);
      pishadow::save_channel(ch, ch_path);
    }
    channel_caches.push_back(
        json{{"path", ch_path}, {"sha1", file_sha1(ch_path)}});

    std::optional<ChannelMatrix> pauli_ch;
    PIVector ghz_pauli;
    if (n <= kExactVarianceMaxN) {
      pauli_ch = pishadow::build_channel_pauli(n);
      ghz_pauli = pishadow::ghz_state(n, Basis::PauliPI);
    }

    // Collective-rotation protocol: one dataset, one evaluator per row.
    const Dataset ds = pishadow::draw_dataset(StateSpec::ghz(), n, shots,
                                              cfg.seed);
    for (const auto& [role, spec] : roles) {
      const PIVector vec =
          pishadow::observable_to_pivector(spec, n, Basis::SchurPI);
      const pishadow::ShotEvaluator ev(vec, ch);
      const std::vector<double> stream = ev.evaluate_all(ds.records);
      EstimateReport r = report_from_stream(spec.id(), Protocol::SymmPI, n,
                                            stream, 10, false);
      const BoundInfo b =
          analytic_bound(Protocol::SymmPI, spec, vec.coeffs.squaredNorm(), n);
      r.bound = b.value;
      r.bound_kind = b.kind;
      if (pauli_ch.has_value()) {
        r.exact_variance = pishadow::exact_variance(
            pishadow::observable_to_pivector(spec, n, Basis::PauliPI),
            ghz_pauli, *pauli_ch);
      }
      rows.push_back({role, std::move(r)});
    }

    // Block protocol: sampling and estimation fused per observable; the
    // shared seed replays the same sector and Haar draws for every row.
    for (const auto& [role, spec] : roles) {
      const PIVector vec =
          pishadow::observable_to_pivector(spec, n, Basis::SchurPI);
      const std::vector<double> stream = pishadow::simulate_block_cs(
          StateSpec::ghz(), vec, n, shots, cfg.seed);
      EstimateReport r = report_from_stream(spec.id(), Protocol::BlockCS, n,
                                            stream, 10, false);
      const BoundInfo b =
          analytic_bound(Protocol::BlockCS, spec, vec.coeffs.squaredNorm(), n);
      r.bound = b.value;
      r.bound_kind = b.kind;
      rows.push_back({role, std::move(r)});
    }

    // Local Clifford baseline, dense simulation, small n only.
    if (n <= kLcMaxN) {
      std::vector<ObservableSpec> specs;
      specs.reserve(roles.size());
      for (const auto& [role, spec] : roles) specs.push_back(spec);
      const auto streams = pishadow::simulate_lc_baseline(
          pishadow::dense_ghz_vector(n), specs, shots, cfg.seed);
      for (std::size_t i = 0; i < roles.size(); ++i) {
        EstimateReport r = report_from_stream(
            roles[i].second.id(), Protocol::LC, n, streams[i], 10, false);
        const BoundInfo b =
            analytic_bound(Protocol::LC, roles[i].second, 0.0, n);
        r.bound = b.value;
        r.bound_kind = b.kind;
        rows.push_back({roles[i].first, std::move(r)});
      }
    }
  }

  // Per-series variance points and log-log fits.
  std::map<SeriesKey, std::vector<std::pair<double, double>>> series;
  for (const BenchRow& row : rows) {
    if (row.report.empirical_variance > 0.0) {
      series[{row.report.protocol, row.role}].push_back(
          {static_cast<double>(row.report.n), row.report.empirical_variance});
    }
  }
  json fits = json::array();
  std::string fit_lines;
  for (const auto& [key, pts] : series) {
    if (pts.size() < 4) continue;
    const pishadow::ScalingFit fit = pishadow::scaling_fit(pts);
    fits.push_back(json{{"protocol", key.protocol},
                        {"role", key.role},
                        {"points", pts.size()},
                        {"slope", fit.slope},
                        {"intercept", fit.intercept},
                        {"r_squared", fit.r_squared},
                        {"nonincreasing", fit.nonincreasing},
                        {"nondecreasing", fit.nondecreasing},
                        {"exponential_suspected", fit.exponential_suspected}});
    fit_lines += "fit " + key.protocol + " " + key.role + ": points=" +
                 std::to_string(pts.size()) + " slope=" + fmt(fit.slope) +
                 " r2=" + fmt(fit.r_squared) +
                 (fit.exponential_suspected ? " exponential" : "") + "\n";
  }

  std::string csv = "role," + pishadow::report_csv_header() + "\n";
  for (const BenchRow& row : rows) {
    csv += row.role + "," + pishadow::report_csv_row(row.report) + "\n";
  }

  json doc;
  doc["command"] = "bench-ghz";
  doc["config"] = json{{"n_list", ns},
                       {"shots", cfg.shots},
                       {"seed", cfg.seed},
                       {"cache_dir", dir},
                       {"out", cfg.out_prefix}};
  doc["caches"] = json{{"channels", channel_caches}};
  doc["rows"] = json::array();
  for (const BenchRow& row : rows) {
    json r = report_to_json(row.report);
    r["role"] = row.role;
    doc["rows"].push_back(std::move(r));
  }
  doc["fits"] = fits;

  pishadow::write_file_atomic(cfg.out_prefix + ".csv", csv);
  pishadow::write_file_atomic(cfg.out_prefix + ".json", doc.dump(2) + "\n");
  if (cfg.svg) {
    pishadow::write_file_atomic(cfg.out_prefix + ".svg",
                                render_scaling_svg(series));
  }

  std::cout << csv << fit_lines;
  std::cout << "wrote: " << cfg.out_prefix << ".csv " << cfg.out_prefix
            << ".json";
  if (cfg.svg) std::cout << " " << cfg.out_prefix << ".svg";
  std::cout << "\n";
  return kExitOk;
}

}  // namespace pscli
