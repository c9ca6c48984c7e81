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
#include <Eigen/LU>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pishadow/pibasis.hpp"

namespace pishadow {

/// Measurement-channel matrix M of the collective-rotation protocol,
/// restricted to the PI operator space and stored block by block.
///
/// In PauliPI the channel only couples compositions with equal letter
/// parities, giving eight symmetric blocks keyed by the parity class
/// (k_x & 1) << 2 | (k_y & 1) << 1 | (k_z & 1). In SchurPI it maps each
/// coherence sector q' - q = delta to itself, giving 2n + 1 real symmetric
/// blocks keyed by delta. All blocks are positive definite; the smallest
/// eigenvalue of the full matrix is 1 / (2n + 1).
struct ChannelMatrix {
  struct Block {
    int key = 0;                         // parity class or delta
    std::vector<std::size_t> indices;    // global coefficient indices
    Eigen::MatrixXd mat;                 // dense symmetric block
    // Factorization of D^-1 mat D^-1 with D = sqrt(diag(mat)); the
    // equilibration keeps partial-pivot LU accurate even though block
    // eigenvalues range from 1/(2n+1) up to nearly 2^n.
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    Eigen::VectorXd scale;               // the diagonal of D
    bool built = false;
  };

  Basis basis = Basis::PauliPI;
  int n = 0;
  std::vector<Block> blocks;

  const Block* find_block(int key) const;
};

/// Largest n for which the PauliPI channel is built; beyond this the
/// composition space is large enough that the SchurPI path must be used.
inline constexpr int kPauliChannelMaxN = 40;

/// Builds the full PauliPI channel (all eight parity blocks).
/// Throws std::invalid_argument for n > kPauliChannelMaxN.
ChannelMatrix build_channel_pauli(int n);

/// Builds the SchurPI channel. By default all 2n + 1 delta blocks are
/// built; pass an explicit list to restrict to the sectors an observable
/// actually occupies (e.g. {0} for weight-class observables).
ChannelMatrix build_channel_schur(int n,
                                  const std::optional<std::vector<int>>&
                                      deltas = std::nullopt);

/// Applies M to a coefficient vector (basis and n must match the channel;
/// every populated sector must have a built block).
PIVector apply(const ChannelMatrix& ch, const PIVector& v);

/// Solves M x = v blockwise via the cached equilibrated LU factorization.
PIVector solve(const ChannelMatrix& ch, const PIVector& v);

/// Eigenvalues of all built blocks, ascending. For a full build this is the
/// spectrum of M on the PI space.
std::vector<double> spectrum(const ChannelMatrix& ch);

/// Closed-form single-observable variance upper bounds for the protocols
/// compared in the benchmark suite.
enum class BoundKind {
  LocalClifford,     // 4^loc ||O||_inf^2
  GlobalClifford,    // 3 Tr[O^2]
  QstLocalClifford,  // (n^2 + 2n + 2) ||O||_inf^2
  QstGlobalClifford, // 3 (n^2 + 2n + 2) ||O||_inf^2
  BlockCS,           // (m^2 + 1) ||O||_inf^2, m the largest block dimension
  SymmPI,            // (2n + 1) Tr[O^2]
  QuditPI,           // (n + D)^(2D) ||O||_inf^2
};

struct BoundParams {
  int n = -1;             // qubit count (QST variants, SymmPI, QuditPI)
  int loc = -1;           // observable locality (LocalClifford)
  int m = -1;             // block dimension (BlockCS)
  int D = -1;             // local dimension (QuditPI)
  double norm_inf = -1;   // operator norm ||O||_inf
  double norm_hs2 = -1;   // Tr[O^2]
};

/// Evaluates the bound; throws std::invalid_argument when a required
/// parameter is missing for the requested kind.
double variance_bound(BoundKind kind, const BoundParams& p);

/// Serializes every built block to a single cache file: a fixed magic, a
/// JSON metadata document (version, n, basis, block keys and dimensions,
/// an ordering hash over the index layout, a content hash over the payload)
/// followed by one little-endian float64 row-major blob per block.
/// Rebuilding and saving again produces bit-identical bytes.
void save_channel(const ChannelMatrix& ch, const std::string& path);

/// Loads a cache file and refactorizes the blocks. Throws NumericalError on
/// corruption (bad magic, hash mismatch) and std::runtime_error on I/O
/// failure.
ChannelMatrix load_channel(const std::string& path);

}  // namespace pishadow
