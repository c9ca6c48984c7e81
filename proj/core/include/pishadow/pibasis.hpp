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
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pishadow/repcomb.hpp"

namespace pishadow {

/// Orthonormal bases for the space of permutation-invariant (PI) operators
/// on n qubits. Both span the same C(n+3,3)-dimensional space:
///  - PauliPI: symmetrized Pauli strings B_k indexed by letter compositions.
///  - SchurPI: per-irrep matrix units B^lambda_{q,q'} on the spin register.
enum class Basis { PauliPI, SchurPI };

/// Euler angles (z-y-z convention) of a single-qubit rotation
/// W = Rz(theta1) Ry(theta2) Rz(theta3), applied identically to all qubits.
struct EulerAngles {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;
};

/// Index bookkeeping for SchurPI coefficient vectors. Irrep blocks are laid
/// out consecutively in the order produced by enumerate_irreps (lambda2
/// ascending, i.e. spin descending); within an irrep of spin s the element
/// (q, q') sits at offset (s - q) * m + (s - q') with m = 2s + 1 and q read
/// in descending order s, s-1, ..., -s.
class SchurLayout {
 public:
  explicit SchurLayout(int n);

  int n() const { return n_; }
  std::size_t size() const { return size_; }
  const std::vector<IrrepLabel>& irreps() const { return irreps_; }
  std::size_t block_offset(std::size_t irrep_idx) const {
    return offsets_[irrep_idx];
  }

  /// Global coefficient index of B^lambda_{q,q'}; q values doubled.
  std::size_t index(std::size_t irrep_idx, int two_q, int two_qp) const;

  /// Irrep index carrying spin two_s/2, or npos when absent.
  std::size_t irrep_by_two_s(int two_s) const;

  /// Elements (irrep_idx, two_q) such that (q, q + delta) is valid, in
  /// irrep-major order with q descending. These enumerate the coherence
  /// sector q' - q = delta that the measurement channel maps to itself.
  std::vector<std::pair<std::size_t, int>> delta_block(int delta) const;

  /// Shared per-n instance.
  static const SchurLayout& get(int n);

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  int n_;
  std::vector<IrrepLabel> irreps_;
  std::vector<std::size_t> offsets_;
  std::size_t size_;
};

/// Coefficient vector of a PI operator in one of the two bases. Hermitian
/// operators have real coefficients in PauliPI and conjugate-symmetric
/// coefficients (a_{q,q'} = conj(a_{q',q})) in SchurPI.
struct PIVector {
  Basis basis = Basis::PauliPI;
  int n = 0;
  Eigen::VectorXcd coeffs;

  static PIVector zero(Basis basis, int n);
};

/// Hermitian inner product <a, b> = sum_i conj(a_i) b_i. For operator
/// vectors this equals the Hilbert-Schmidt pairing Tr[A^dagger B].
std::complex<double> pi_inner(const PIVector& a, const PIVector& b);

/// Observable descriptions accepted by the conversion and estimation layers.
struct ObservableSpec {
  enum class Kind {
    PauliString,        // literal n-letter string over {I,X,Y,Z}
    AxisString,         // subset-averaged weight-k single-axis string
    HammingProjector,   // projector onto computational weight class h
    GhzProjector,       // |GHZ><GHZ|
    RawPIVector,        // caller-supplied coefficient vector
  };

  Kind kind = Kind::PauliString;
  std::string pauli;       // Kind::PauliString
  char axis = 'Z';         // Kind::AxisString
  int weight = 0;          // Kind::AxisString
  int h = 0;               // Kind::HammingProjector; counts zeros
  PIVector raw;            // Kind::RawPIVector

  static ObservableSpec pauli_string(std::string letters);
  static ObservableSpec axis_string(char axis, int weight);
  static ObservableSpec hamming_projector(int h);
  static ObservableSpec ghz_projector();
  static ObservableSpec raw_vector(PIVector v);

  /// Canonical identifier, e.g. "pauli:ZZ", "axis:Z:2", "hamming:3".
  std::string id() const;
};

/// Overlap Tr[B_k^dagger P] of a literal Pauli string with the symmetrized
/// basis element B_k: zero unless the letter composition of P equals k, else
/// sqrt(2^n * k_x! k_y! k_z! k_i! / n!).
double pauli_overlap(const std::string& pauli, const Composition& k, int n);

/// Krawtchouk-type overlap data for weight classes:
///   a(h, m) = sum_l C(m, l) C(n-m, h-l) (-1)^(m-l)  (integer valued)
///   alpha(h, m) = 2^(-n/2) sqrt(C(n, m)) a(h, m)
/// where h counts zeros in the outcome and m is the non-identity weight.
struct HammingAlpha {
  double alpha = 0.0;
  double a = 0.0;
};
HammingAlpha hamming_alpha(int h, int m, int n);

/// Expands an observable description into basis coefficients. Literal Pauli
/// strings in SchurPI are supported for n <= 10 only (the conversion runs
/// over letter placements); all other combinations work at any n.
PIVector observable_to_pivector(const ObservableSpec& spec, int n,
                                Basis basis);

/// Direction cosines (Z_X, Z_Y, Z_Z) of the rotated Z axis
/// W Z W^dagger = Z_X X + Z_Y Y + Z_Z Z; unit norm.
Eigen::Vector3d z_axis_components(const EulerAngles& theta);

/// PauliPI coefficients of the rotated weight-h projector
/// W^(x n) Pi_h W^(dagger x n):   entry at (k_x,k_y,k_z,k_i) is
/// sqrt(n! / (k_x! k_y! k_z! k_i! 2^n)) a(h, n-k_i) Z_X^k_x Z_Y^k_y Z_Z^k_z.
PIVector rotated_projector_pauli(const EulerAngles& theta, int h, int n);

/// SchurPI coefficients of the unrotated weight-h projector: sqrt(d_lambda)
/// at (lambda, q(h), q(h)) with q(h) = h - n/2, for every irrep containing
/// that weight.
PIVector projector_schur_vector(int h, int n);

/// SchurPI coefficients of the rotated weight-h projector; equals
/// rotate_schur(projector_schur_vector(h, n), theta) but computed directly
/// from one Wigner row per irrep.
PIVector rotated_projector_schur(const EulerAngles& theta, int h, int n);

/// Conjugation action v -> vec(W^(x n) Op(v) W^(dagger x n)) on SchurPI
/// coefficients: per irrep a -> D a D^dagger with D the spin-s rotation.
PIVector rotate_schur(const PIVector& v, const EulerAngles& theta);

/// GHZ state (|0..0> + |1..1>)/sqrt(2) as a density-operator coefficient
/// vector in either basis (closed forms, no dense algebra).
PIVector ghz_state(int n, Basis basis);

}  // namespace pishadow
