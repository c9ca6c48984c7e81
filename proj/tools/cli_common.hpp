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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pishadow/channel.hpp"
#include "pishadow/estimate.hpp"
#include "pishadow/pibasis.hpp"
#include "pishadow/sim.hpp"

// Shared plumbing for the pishadow command-line tool. Every subcommand is a
// pure function of its flags and the cache files it reads: cache locations
// are derived from the configuration alone, randomness flows through the
// seeded samplers, and outputs are written atomically, so rerunning a
// command against unchanged caches reproduces its outputs byte for byte.
namespace pscli {

// Process exit codes, also documented in the tool help text.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCache = 3;
inline constexpr int kExitNumerical = 4;

/// A required cache file is missing, unreadable, or disagrees with the
/// requested configuration. Mapped to exit code 3.
class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cache directory precedence: the --cache-dir flag, then the
/// PISHADOW_CACHE_DIR environment variable, then ./.pishadow-cache.
std::string resolve_cache_dir(const std::string& flag_value);

/// Creates the directory (with parents) when it does not exist yet.
void ensure_directory(const std::string& dir);

/// Canonical channel cache name, e.g. "channel-pauli-n8.bin" or, for a
/// restricted coherence-sector build, "channel-schur-n100-b0.bin" with the
/// sorted deduplicated sector list joined by underscores.
std::string channel_cache_name(pishadow::Basis basis, int n,
                               const std::optional<std::vector<int>>& deltas);

/// Canonical dataset cache name, e.g.
/// "dataset-symm-pi-ghz-n10-s100000-seed7.jsonl".
std::string dataset_cache_name(pishadow::Protocol protocol,
                               const std::string& state_tag, int n,
                               std::int64_t shots, std::uint64_t seed);

/// Parsed --state argument ("ghz" or "file:<path>"): the sampler input plus
/// a stable tag for cache file names. File states tag themselves with a
/// content hash so renaming the file cannot alias two different states.
struct StateArg {
  pishadow::StateSpec spec;
  std::string tag;
  std::string display;
};
StateArg parse_state(const std::string& arg);

/// Parsed --obs argument together with the label used in reports. Raw
/// vector observables keep their "pivec:<path>" spelling as the label.
struct ObsArg {
  pishadow::ObservableSpec spec;
  std::string label;
};
ObsArg parse_obs(const std::string& arg);

/// Reads a coefficient-vector file: a JSON document with fields "basis"
/// ("pauli" or "schur"), "n", and "coeffs", a list of [re, im] pairs (bare
/// numbers are accepted as real entries). Throws std::invalid_argument on
/// malformed content.
pishadow::PIVector load_pivector(const std::string& path);

/// Comma-separated integer list; `what` names the flag in error messages.
std::vector<int> parse_int_list(const std::string& arg, const char* what);

/// Non-identity letter count used by locality-based bounds; the projector
/// observables count as n-local.
int observable_locality(const pishadow::ObservableSpec& spec, int n);

/// Operator norm of the named observables (1 for all of them); nullopt for
/// raw vectors, whose norm is not recoverable from coefficients alone.
std::optional<double> observable_norm_inf(const pishadow::ObservableSpec& spec);

/// Analytic single-shot variance bound of a protocol/observable pair, and
/// the label reported alongside it. norm_hs2 is the squared coefficient
/// norm of the observable (= Tr[O^2] in either orthonormal basis).
struct BoundInfo {
  std::optional<double> value;
  std::string kind;
};
BoundInfo analytic_bound(pishadow::Protocol protocol,
                         const pishadow::ObservableSpec& spec,
                         double norm_hs2, int n);

/// Aggregates a per-shot estimate stream into a report. Batch count is
/// clamped to the stream length; with use_median and at least two batches
/// the median of means becomes the headline estimate, otherwise the mean.
pishadow::EstimateReport report_from_stream(const std::string& observable,
                                            pishadow::Protocol protocol, int n,
                                            const std::vector<double>& stream,
                                            int batches, bool use_median);

/// SHA-1 of a file's bytes, echoed into JSON summaries as the cache hash.
std::string file_sha1(const std::string& path);

/// Report re-serialized as a JSON object for embedding in summaries.
nlohmann::json report_to_json(const pishadow::EstimateReport& r);

/// Configuration of the GHZ scaling benchmark subcommand.
struct BenchConfig {
  std::vector<int> n_list;
  std::int64_t shots = 0;  // 0 selects the per-n default
  std::uint64_t seed = 0;
  std::string cache_dir;       // flag value; empty falls through to env
  std::string out_prefix = "bench-ghz";
  bool svg = true;
};

/// Runs the benchmark: for every n and every observable in {Z1Z2, Z on half
/// the qubits, Z on all qubits, GHZ projector}, estimates the single-shot
/// variance under the collective-rotation, block, and (n <= 12) local
/// Clifford protocols, fits log-variance against log-n per series, and
/// writes <prefix>.csv, <prefix>.json, and optionally <prefix>.svg.
int cmd_bench_ghz(const BenchConfig& cfg);

}  // namespace pscli
