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

// Batch front end for the permutation-invariant shadow engine.
//
//   channel    build a measurement channel and persist it to the cache
//   sample     draw a measurement dataset with a fixed seed
//   estimate   evaluate observables on a cached dataset
//   variance   exact single-shot estimator variance (n <= 10)
//   bench-ghz  variance-scaling benchmark on GHZ states
//
// Commands are pure functions of their flags and the cache files they read:
// rerunning one against unchanged caches reproduces every output byte for
// byte. Exit codes: 0 success, 2 configuration error, 3 cache missing or
// mismatched, 4 numerical failure.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_common.hpp"
#include "json.hpp"
#include "pishadow/util.hpp"

namespace {

using nlohmann::json;
using pishadow::Basis;
using pishadow::ChannelMatrix;
using pishadow::Dataset;
using pishadow::EstimateReport;
using pishadow::PIVector;
using pishadow::Protocol;
using pscli::CacheError;
using pscli::ObsArg;
using pscli::StateArg;

// Eigensolves above this total dimension are skipped in the channel report;
// the factorization itself has no such limit.
constexpr std::size_t kSpectrumReportMaxDim = 2048;

std::string fmt(double x, const char* spec = "%.15g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, x);
  return buf;
}

Basis resolve_basis(const std::string& flag, int n) {
  if (flag == "pauli") return Basis::PauliPI;
  if (flag == "schur") return Basis::SchurPI;
  // Unset: the composition basis is the cheaper default while it exists.
  return n <= pishadow::kPauliChannelMaxN ? Basis::PauliPI : Basis::SchurPI;
}

const char* basis_name(Basis b) {
  return b == Basis::PauliPI ? "pauli" : "schur";
}

// ---------------------------------------------------------------------------
// channel

struct ChannelOptions {
  int n = 0;
  std::string basis;
  std::string blocks;
  std::string cache_dir;
  std::string out;
};

int cmd_channel(const ChannelOptions& opt) {
  const Basis basis = resolve_basis(opt.basis, opt.n);
  std::optional<std::vector<int>> deltas;
  if (!opt.blocks.empty()) {
    if (basis == Basis::PauliPI) {
      throw std::invalid_argument(
          "--blocks selects coherence sectors of the schur basis; the "
          "pauli-basis channel always builds its eight parity blocks");
    }
    deltas = pscli::parse_int_list(opt.blocks, "--blocks");
  }
  if (basis == Basis::PauliPI && opt.n > pishadow::kPauliChannelMaxN) {
    throw std::invalid_argument(
        "the pauli-basis channel stores all letter compositions and is "
        "limited to n <= " +
        std::to_string(pishadow::kPauliChannelMaxN) +
        "; use --basis schur for larger systems");
  }

  const ChannelMatrix ch = basis == Basis::PauliPI
                               ? pishadow::build_channel_pauli(opt.n)
                               : pishadow::build_channel_schur(opt.n, deltas);

  std::string path = opt.out;
  if (path.empty()) {
    const std::string dir = pscli::resolve_cache_dir(opt.cache_dir);
    pscli::ensure_directory(dir);
    path = dir + "/" + pscli::channel_cache_name(basis, opt.n, deltas);
  }
  pishadow::save_channel(ch, path);

  std::size_t total_dim = 0;
  for (const auto& blk : ch.blocks) total_dim += blk.indices.size();
  std::cout << "basis: " << basis_name(basis) << "\n";
  std::cout << "n: " << opt.n << "\n";
  std::cout << "blocks: " << ch.blocks.size() << "\n";
  std::cout << "dim: " << total_dim << "\n";
  if (ch.blocks.size() <= 16) {
    for (const auto& blk : ch.blocks) {
      std::cout << "block " << blk.key << ": dim " << blk.indices.size()
                << "\n";
    }
  }
  if (total_dim <= kSpectrumReportMaxDim) {
    const std::vector<double> eigs = pishadow::spectrum(ch);
    std::cout << "min eigenvalue: " << fmt(eigs.front()) << "\n";
  } else {
    std::cout << "min eigenvalue: skipped (dim > "
              << kSpectrumReportMaxDim << ")\n";
  }
  std::cout << "cache: " << path << "\n";
  std::cout << "sha1: " << pscli::file_sha1(path) << "\n";
  return pscli::kExitOk;
}

// ---------------------------------------------------------------------------
// sample

struct SampleOptions {
  int n = 0;
  std::string protocol = "symm-pi";
  std::string state = "ghz";
  std::int64_t shots = 0;
  std::uint64_t seed = 0;
  std::string cache_dir;
  std::string out;
};

int cmd_sample(const SampleOptions& opt) {
  const Protocol protocol = pishadow::protocol_from_name(opt.protocol);
  const StateArg state = pscli::parse_state(opt.state);

  Dataset ds;
  switch (protocol) {
    case Protocol::SymmPI:
      ds = pishadow::draw_dataset(state.spec, opt.n, opt.shots, opt.seed);
      break;
    case Protocol::BlockCS:
      ds = pishadow::draw_dataset_block(state.spec, opt.n, opt.shots,
                                        opt.seed);
      break;
    case Protocol::LC:
      if (state.spec.kind != pishadow::StateSpec::Kind::Ghz) {
        throw std::invalid_argument(
            "the lc baseline samples a dense pure state; only --state ghz "
            "is supported");
      }
      ds = pishadow::draw_dataset_lc(pishadow::dense_ghz_vector(opt.n),
                                     opt.shots, opt.seed);
      break;
  }

  std::string path = opt.out;
  if (path.empty()) {
    const std::string dir = pscli::resolve_cache_dir(opt.cache_dir);
    pscli::ensure_directory(dir);
    path = dir + "/" + pscli::dataset_cache_name(protocol, state.tag, opt.n,
                                                 opt.shots, opt.seed);
  }
  pishadow::save_dataset(ds, path);

  std::cout << "protocol: " << opt.protocol << "\n";
  std::cout << "state: " << state.display << "\n";
  std::cout << "n: " << opt.n << "\n";
  std::cout << "shots: " << ds.shots() << "\n";
  std::cout << "seed: " << opt.seed << "\n";
  std::cout << "dataset: " << path << "\n";
  std::cout << "sha1: " << pscli::file_sha1(path) << "\n";
  return pscli::kExitOk;
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateOptions {
  int n = 0;
  std::string protocol = "symm-pi";
  std::string state = "ghz";
  std::string basis;
  std::string blocks;
  std::int64_t shots = 0;
  std::uint64_t seed = 0;
  int batches = 10;
  std::vector<std::string> obs;
  std::string cache_dir;
  std::string out;
};

int cmd_estimate(const EstimateOptions& opt) {
  const Protocol protocol = pishadow::protocol_from_name(opt.protocol);
  const StateArg state = pscli::parse_state(opt.state);
  std::vector<ObsArg> observables;
  observables.reserve(opt.obs.size());
  for (const std::string& arg : opt.obs) {
    observables.push_back(pscli::parse_obs(arg));
  }

  const std::string dir = pscli::resolve_cache_dir(opt.cache_dir);
  const std::string ds_path =
      dir + "/" + pscli::dataset_cache_name(protocol, state.tag, opt.n,
                                            opt.shots, opt.seed);
  if (!std::filesystem::exists(ds_path)) {
    throw CacheError("dataset cache not found: " + ds_path +
                     "; generate it with: pishadow sample --protocol " +
                     opt.protocol + " --state " + state.display + " --n " +
                     std::to_string(opt.n) + " --shots " +
                     std::to_string(opt.shots) + " --seed " +
                     std::to_string(opt.seed));
  }
  Dataset ds;
  try {
    ds = pishadow::load_dataset(ds_path);
  } catch (const std::exception& e) {
    throw CacheError("failed to load dataset cache " + ds_path + ": " +
                     e.what());
  }
  if (ds.n != opt.n || ds.protocol != protocol || ds.seed != opt.seed ||
      ds.shots() != opt.shots) {
    throw CacheError("dataset cache " + ds_path +
                     " does not match the requested configuration");
  }

  json caches;
  caches["dataset"] =
      json{{"path", ds_path}, {"sha1", pscli::file_sha1(ds_path)}};

  std::vector<EstimateReport> reports;
  Basis basis = Basis::PauliPI;
  switch (protocol) {
    case Protocol::SymmPI: {
      basis = resolve_basis(opt.basis, opt.n);
      std::optional<std::vector<int>> deltas;
      if (!opt.blocks.empty()) {
        deltas = pscli::parse_int_list(opt.blocks, "--blocks");
      }
      const std::string ch_path =
          dir + "/" + pscli::channel_cache_name(basis, opt.n, deltas);
      if (!std::filesystem::exists(ch_path)) {
        throw CacheError("channel cache not found: " + ch_path +
                         "; build it with: pishadow channel --n " +
                         std::to_string(opt.n) + " --basis " +
                         basis_name(basis));
      }
      ChannelMatrix ch;
      try {
        ch = pishadow::load_channel(ch_path);
      } catch (const std::exception& e) {
        throw CacheError("failed to load channel cache " + ch_path + ": " +
                         e.what());
      }
      if (ch.n != opt.n || ch.basis != basis) {
        throw CacheError("channel cache " + ch_path +
                         " does not match the requested configuration");
      }
      caches["channel"] =
          json{{"path", ch_path}, {"sha1", pscli::file_sha1(ch_path)}};
      for (const ObsArg& ob : observables) {
        EstimateReport r =
            opt.batches >= 2
                ? pishadow::estimate_median_of_means(ds, ob.spec, ch,
                                                     opt.batches)
                : pishadow::estimate_mean(ds, ob.spec, ch);
        r.observable = ob.label;
        reports.push_back(std::move(r));
      }
      break;
    }
    case Protocol::BlockCS: {
      for (const ObsArg& ob : observables) {
        const PIVector vec =
            pishadow::observable_to_pivector(ob.spec, opt.n, Basis::SchurPI);
        std::vector<double> stream;
        try {
          stream = pishadow::block_estimates(ds, state.spec, vec);
        } catch (const pishadow::NumericalError& e) {
          // A replay mismatch means the dataset was not produced by this
          // seed and state, which is a cache problem rather than a math one.
          throw CacheError("block dataset " + ds_path +
                           " does not replay under this configuration: " +
                           e.what());
        }
        EstimateReport r = pscli::report_from_stream(
            ob.label, protocol, opt.n, stream, opt.batches, true);
        const pscli::BoundInfo b = pscli::analytic_bound(
            protocol, ob.spec, vec.coeffs.squaredNorm(), opt.n);
        r.bound = b.value;
        r.bound_kind = b.kind;
        reports.push_back(std::move(r));
      }
      break;
    }
    case Protocol::LC: {
      std::vector<pishadow::ObservableSpec> specs;
      specs.reserve(observables.size());
      for (const ObsArg& ob : observables) specs.push_back(ob.spec);
      const auto streams = pishadow::lc_estimates(ds, specs);
      for (std::size_t i = 0; i < observables.size(); ++i) {
        EstimateReport r = pscli::report_from_stream(
            observables[i].label, protocol, opt.n, streams[i], opt.batches,
            true);
        const pscli::BoundInfo b =
            pscli::analytic_bound(protocol, observables[i].spec, 0.0, opt.n);
        r.bound = b.value;
        r.bound_kind = b.kind;
        reports.push_back(std::move(r));
      }
      break;
    }
  }

  std::string csv = pishadow::report_csv_header() + "\n";
  for (const EstimateReport& r : reports) {
    csv += pishadow::report_csv_row(r) + "\n";
  }
  std::cout << csv;

  if (!opt.out.empty()) {
    json doc;
    doc["command"] = "estimate";
    doc["config"] = json{{"n", opt.n},
                         {"protocol", opt.protocol},
                         {"state", state.display},
                         {"shots", opt.shots},
                         {"seed", opt.seed},
                         {"batches", opt.batches},
                         {"obs", opt.obs},
                         {"cache_dir", dir}};
    if (protocol == Protocol::SymmPI) {
      doc["config"]["basis"] = basis_name(basis);
      if (!opt.blocks.empty()) doc["config"]["blocks"] = opt.blocks;
    }
    doc["caches"] = caches;
    doc["reports"] = json::array();
    for (const EstimateReport& r : reports) {
      doc["reports"].push_back(pscli::report_to_json(r));
    }
    pishadow::write_file_atomic(opt.out + ".csv", csv);
    pishadow::write_file_atomic(opt.out + ".json", doc.dump(2) + "\n");
    std::cout << "wrote: " << opt.out << ".csv " << opt.out << ".json\n";
  }
  return pscli::kExitOk;
}

// ---------------------------------------------------------------------------
// variance

struct VarianceOptions {
  int n = 0;
  std::string state = "ghz";
  std::vector<std::string> obs;
  std::string out;
};

int cmd_variance(const VarianceOptions& opt) {
  if (opt.n > 10) {
    throw std::invalid_argument(
        "exact variance enumerates triple overlaps over the composition "
        "basis and is limited to n <= 10");
  }
  const StateArg state = pscli::parse_state(opt.state);
  const PIVector state_vec = state.spec.pivector(opt.n, Basis::PauliPI);
  const ChannelMatrix ch = pishadow::build_channel_pauli(opt.n);

  std::string csv = "observable,n,expectation,exact_variance,bound,bound_kind\n";
  json rows = json::array();
  for (const std::string& arg : opt.obs) {
    const ObsArg ob = pscli::parse_obs(arg);
    const PIVector vec =
        pishadow::observable_to_pivector(ob.spec, opt.n, Basis::PauliPI);
    const double expectation = pishadow::pi_inner(vec, state_vec).real();
    const double var = pishadow::exact_variance(vec, state_vec, ch);
    const pscli::BoundInfo b = pscli::analytic_bound(
        Protocol::SymmPI, ob.spec, vec.coeffs.squaredNorm(), opt.n);
    csv += ob.label + "," + std::to_string(opt.n) + "," +
           fmt(expectation, "%.17g") + "," + fmt(var, "%.17g") + "," +
           fmt(*b.value, "%.17g") + "," + b.kind + "\n";
    rows.push_back(json{{"observable", ob.label},
                        {"n", opt.n},
                        {"expectation", expectation},
                        {"exact_variance", var},
                        {"bound", *b.value},
                        {"bound_kind", b.kind}});
  }
  std::cout << csv;

  if (!opt.out.empty()) {
    json doc;
    doc["command"] = "variance";
    doc["config"] = json{
        {"n", opt.n}, {"state", state.display}, {"obs", opt.obs}};
    doc["caches"] = json::object();
    doc["rows"] = rows;
    pishadow::write_file_atomic(opt.out + ".csv", csv);
    pishadow::write_file_atomic(opt.out + ".json", doc.dump(2) + "\n");
    std::cout << "wrote: " << opt.out << ".csv " << opt.out << ".json\n";
  }
  return pscli::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pishadow: permutation-invariant classical shadows on n qubits.\n"
      "Exit codes: 0 ok, 2 configuration error, 3 cache missing or "
      "mismatched, 4 numerical failure.\n"
      "The cache directory is --cache-dir, else $PISHADOW_CACHE_DIR, else "
      "./.pishadow-cache."};
  app.require_subcommand(1);
  app.set_version_flag("--version", "pishadow 0.1.0");

  const std::string obs_help =
      "Observable spec (repeatable): pauli:<letters>, axis:<X|Y|Z>:<k>, "
      "hamming:<h>, ghz-proj, or pivec:<path>";
  const std::string state_help = "Input state: ghz or file:<path>";

  ChannelOptions ch_opt;
  CLI::App* ch_cmd = app.add_subcommand(
      "channel", "Build a measurement channel and write it to the cache");
  ch_cmd->add_option("--n", ch_opt.n, "Qubit count")->required();
  ch_cmd->add_option("--basis", ch_opt.basis,
                     "Operator basis (default: pauli for n <= 40, else schur)")
      ->check(CLI::IsMember({"pauli", "schur"}));
  ch_cmd->add_option("--blocks", ch_opt.blocks,
                     "Comma-separated coherence sectors to build "
                     "(schur basis only; default all 2n+1)");
  ch_cmd->add_option("--cache-dir", ch_opt.cache_dir, "Cache directory");
  ch_cmd->add_option("--out", ch_opt.out,
                     "Explicit cache file path (overrides --cache-dir)");

  SampleOptions sm_opt;
  CLI::App* sm_cmd = app.add_subcommand(
      "sample", "Draw a measurement dataset with a fixed seed");
  sm_cmd->add_option("--n", sm_opt.n, "Qubit count")->required();
  sm_cmd->add_option("--protocol", sm_opt.protocol, "Measurement protocol")
      ->check(CLI::IsMember({"symm-pi", "block", "lc"}));
  sm_cmd->add_option("--state", sm_opt.state, state_help);
  sm_cmd->add_option("--shots", sm_opt.shots, "Number of records")
      ->required();
  sm_cmd->add_option("--seed", sm_opt.seed, "Master seed (required; records "
                                            "derive from (seed, index))")
      ->required();
  sm_cmd->add_option("--cache-dir", sm_opt.cache_dir, "Cache directory");
  sm_cmd->add_option("--out", sm_opt.out,
                     "Explicit dataset path (overrides --cache-dir)");

  EstimateOptions es_opt;
  CLI::App* es_cmd = app.add_subcommand(
      "estimate", "Evaluate observables on a cached dataset");
  es_cmd->add_option("--n", es_opt.n, "Qubit count")->required();
  es_cmd->add_option("--protocol", es_opt.protocol,
                     "Protocol of the cached dataset")
      ->check(CLI::IsMember({"symm-pi", "block", "lc"}));
  es_cmd->add_option("--state", es_opt.state,
                     state_help + " (names the dataset cache; the block "
                                  "protocol also replays against it)");
  es_cmd->add_option("--shots", es_opt.shots, "Shots of the cached dataset")
      ->required();
  es_cmd->add_option("--seed", es_opt.seed, "Seed of the cached dataset")
      ->required();
  es_cmd->add_option("--basis", es_opt.basis,
                     "Channel basis (symm-pi protocol; default: pauli for "
                     "n <= 40, else schur)")
      ->check(CLI::IsMember({"pauli", "schur"}));
  es_cmd->add_option("--blocks", es_opt.blocks,
                     "Coherence sectors of the cached channel (symm-pi)");
  es_cmd->add_option("--batches", es_opt.batches,
                     "Median-of-means batch count; <= 1 reports the plain "
                     "mean");
  es_cmd->add_option("--obs", es_opt.obs, obs_help)->required();
  es_cmd->add_option("--cache-dir", es_opt.cache_dir, "Cache directory");
  es_cmd->add_option("--out", es_opt.out,
                     "Report prefix; writes <prefix>.csv and <prefix>.json");

  VarianceOptions va_opt;
  CLI::App* va_cmd = app.add_subcommand(
      "variance",
      "Exact single-shot variance of the collective-rotation estimator");
  va_cmd->add_option("--n", va_opt.n, "Qubit count (n <= 10)")->required();
  va_cmd->add_option("--state", va_opt.state, state_help);
  va_cmd->add_option("--obs", va_opt.obs, obs_help)->required();
  va_cmd->add_option("--out", va_opt.out,
                     "Report prefix; writes <prefix>.csv and <prefix>.json");

  pscli::BenchConfig bench_cfg;
  std::string n_list_arg;
  CLI::App* bg_cmd = app.add_subcommand(
      "bench-ghz", "Variance-scaling benchmark on GHZ states");
  bg_cmd->add_option("--n-list", n_list_arg, "Comma-separated qubit counts")
      ->required();
  bg_cmd->add_option("--shots", bench_cfg.shots,
                     "Shots per (n, protocol); default 100000 for n <= 40, "
                     "10000 above");
  bg_cmd->add_option("--seed", bench_cfg.seed, "Master seed")->required();
  bg_cmd->add_option("--cache-dir", bench_cfg.cache_dir, "Cache directory");
  bg_cmd->add_option("--out", bench_cfg.out_prefix,
                     "Output prefix (default bench-ghz)");
  bg_cmd->add_flag("--svg,!--no-svg", bench_cfg.svg,
                   "Write the <prefix>.svg chart (default on)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return pscli::kExitConfig;
  }

  try {
    if (ch_cmd->parsed()) return cmd_channel(ch_opt);
    if (sm_cmd->parsed()) return cmd_sample(sm_opt);
    if (es_cmd->parsed()) return cmd_estimate(es_opt);
    if (va_cmd->parsed()) return cmd_variance(va_opt);
    if (bg_cmd->parsed()) {
      bench_cfg.n_list = pscli::parse_int_list(n_list_arg, "--n-list");
      return pscli::cmd_bench_ghz(bench_cfg);
    }
  } catch (const CacheError& e) {
    std::cerr << "error (cache): " << e.what() << "\n";
    return pscli::kExitCache;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error (config): " << e.what() << "\n";
    return pscli::kExitConfig;
  } catch (const pishadow::NumericalError& e) {
    std::cerr << "error (numerical): " << e.what() << "\n";
    return pscli::kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pscli::kExitNumerical;
  }
  return pscli::kExitOk;
}
