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

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "pishadow/channel.hpp"
#include "pishadow/pibasis.hpp"
#include "pishadow/rng.hpp"

namespace pishadow {

enum class Protocol { SymmPI, BlockCS, LC };

std::string protocol_name(Protocol p);
Protocol protocol_from_name(const std::string& name);

/// One shot of the collective-rotation protocol: the sampled Euler angles
/// and the measured Hamming class h (number of zeros in the outcome).
struct MeasurementRecord {
  EulerAngles theta;
  int h = 0;
};

/// One shot of the block protocol: the sector label (via lambda2) and the
/// computational outcome on the multiplicity register. The Haar unitary is
/// not stored; it is re-derived from the dataset seed and record index.
struct BlockRecord {
  int lambda2 = 0;
  int outcome = 0;
};

struct Dataset {
  int n = 0;
  Protocol protocol = Protocol::SymmPI;
  std::uint64_t seed = 0;
  std::vector<MeasurementRecord> records;   // Protocol::SymmPI
  std::vector<BlockRecord> block_records;   // Protocol::BlockCS
  std::vector<std::string> lc_records;      // Protocol::LC, bitstrings

  std::int64_t shots() const;
};

/// Input states for the samplers. GHZ has dedicated fast paths; any other
/// PI state is passed as a density-operator coefficient vector.
struct StateSpec {
  enum class Kind { Ghz, Raw };
  Kind kind = Kind::Ghz;
  PIVector raw;

  static StateSpec ghz();
  static StateSpec raw_state(PIVector v);
  PIVector pivector(int n, Basis basis) const;
};

/// Draws Euler angles from the collective-rotation measure: theta1 and
/// theta3 uniform on [0, 2pi), theta2 = arccos(1 - 2u) with u uniform,
/// i.e. density sin(theta2)/2 on [0, pi].
EulerAngles sample_euler(RecordRng& rng);

/// Outcome distribution p(h), h = 0..n, of measuring the rotated state in
/// the Hamming basis: p(h) = <rotated_projector(theta, h), rho>. Entries in
/// [-1e-10, 0) are clipped to zero and the vector renormalized; anything
/// more negative, or a total off from 1 by more than 1e-9, raises
/// NumericalError.
std::vector<double> outcome_distribution(const StateSpec& state, int n,
                                         const EulerAngles& theta,
                                         Basis path);

/// Closed-form GHZ outcome distribution, O(n) per angle set.
std::vector<double> ghz_distribution_fast(int n, const EulerAngles& theta);

/// Samples S records of the collective-rotation protocol. Record i is fully
/// determined by (seed, i) regardless of thread count.
Dataset draw_dataset(const StateSpec& state, int n, std::int64_t shots,
                     std::uint64_t seed);

/// Samples S records of the block protocol (sector measurement followed by
/// a Haar unitary and computational readout on the multiplicity register).
Dataset draw_dataset_block(const StateSpec& state, int n, std::int64_t shots,
                           std::uint64_t seed);

/// Per-shot estimates of a SchurPI observable under the block protocol;
/// samples and estimates in one pass (the Haar unitaries never touch disk).
std::vector<double> simulate_block_cs(const StateSpec& state,
                                      const PIVector& obs_schur, int n,
                                      std::int64_t shots, std::uint64_t seed);

/// Replays the Haar draws of a block dataset and evaluates an observable.
std::vector<double> block_estimates(const Dataset& ds, const StateSpec& state,
                                    const PIVector& obs_schur);

/// The 24 single-qubit Cliffords, phase-canonicalized and deterministically
/// ordered (closure of {H, S} under multiplication).
const std::vector<Eigen::Matrix2cd>& single_qubit_cliffords();

/// Dense GHZ state vector, for the baseline sampler and tests.
Eigen::VectorXcd dense_ghz_vector(int n);

/// Random-local-Clifford baseline on a dense pure state (n <= 12):
/// per shot draw one Clifford per qubit, measure all qubits, and evaluate
/// each observable on the product snapshot tensor_i (3 W_i^dag |b_i><b_i|
/// W_i - I). Supported observables: PauliString, AxisString, GhzProjector.
/// Returns one estimate stream per observable.
std::vector<std::vector<double>> simulate_lc_baseline(
    const Eigen::VectorXcd& psi, const std::vector<ObservableSpec>& obs,
    std::int64_t shots, std::uint64_t seed);

/// Samples S baseline shots to bitstring records (Cliffords re-derivable
/// from the seed).
Dataset draw_dataset_lc(const Eigen::VectorXcd& psi, std::int64_t shots,
                        std::uint64_t seed);

/// Replays a baseline dataset against observables.
std::vector<std::vector<double>> lc_estimates(
    const Dataset& ds, const std::vector<ObservableSpec>& obs);

/// Applies the protocol rotation (W(theta)^dag on every qubit) to |psi> and
/// measures all qubits in the computational basis using the supplied
/// stream; returns the bitstring (character '0' or '1' per qubit). Dense,
/// n <= 12.
std::string sample_bitstring(const Eigen::VectorXcd& psi,
                             const EulerAngles& theta, RecordRng& rng);

/// JSONL serialization: first line is a metadata document (format version,
/// n, protocol, seed, shots), then one record per line with floats printed
/// to 17 significant digits. Writing is atomic (temp file + rename).
void save_dataset(const Dataset& ds, const std::string& path);
Dataset load_dataset(const std::string& path);

}  // namespace pishadow
