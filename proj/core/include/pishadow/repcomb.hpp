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
#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace pishadow {

/// Letter-count vector of an n-qubit Pauli string: how many X, Y, Z and
/// identity factors it contains. Compositions index the symmetrized-Pauli
/// operator basis of the permutation-invariant space.
struct Composition {
  int kx = 0;
  int ky = 0;
  int kz = 0;
  int ki = 0;

  int n() const { return kx + ky + kz + ki; }

  /// Parity class (k_X mod 2, k_Y mod 2, k_Z mod 2) packed into 0..7.
  /// The measurement channel couples compositions only within a class.
  int parity_class() const { return (kx & 1) << 2 | (ky & 1) << 1 | (kz & 1); }

  friend bool operator==(const Composition&, const Composition&) = default;
};

/// Two-row irrep label of the joint S_n x SU(2) decomposition of n qubits.
/// lambda1 >= lambda2 with lambda1 + lambda2 = n. The spin register carries
/// m_lambda = lambda1 - lambda2 + 1 states q = -s..s with s = (lambda1-lambda2)/2;
/// the permutation register has dimension d_lambda (a hook-length count).
struct IrrepLabel {
  int lambda1 = 0;
  int lambda2 = 0;
  int two_s = 0;           ///< 2s = lambda1 - lambda2
  int mult = 0;            ///< m_lambda = two_s + 1
  std::int64_t dim_t = 0;  ///< d_lambda, or -1 if it does not fit in 64 bits
  double log_dim_t = 0.0;  ///< log d_lambda, always finite

  /// Doubled spin projections 2q, ordered q = s down to -s.
  std::vector<int> two_q_values() const;

  /// True when q = two_q/2 is a valid projection for this irrep.
  bool contains_two_q(int two_q) const {
    return std::abs(two_q) <= two_s && (((two_q - two_s) & 1) == 0);
  }
};

/// Occupation vector of an n-symbol string over an s-letter alphabet.
using QuditType = std::vector<int>;

/// Dimension of the permutation-invariant operator space, C(n+3,3).
std::size_t pi_dimension(int n);

/// All compositions of n into four parts, in the canonical order: grouped by
/// parity class (0..7), lexicographic in (k_X,k_Y,k_Z) within a class. The
/// returned reference is to an immutable per-n cache. Throws for n < 1.
const std::vector<Composition>& enumerate_compositions(int n);

/// Position of k in enumerate_compositions(n). Throws if |k| != n or any
/// entry is negative.
std::size_t composition_index(const Composition& k, int n);

/// Half-open ranges [first, last) of each parity class inside the canonical
/// composition order; empty classes give first == last.
std::array<std::pair<std::size_t, std::size_t>, 8> parity_class_ranges(int n);

/// All two-row irrep labels for n qubits, ordered by decreasing spin
/// (lambda2 = 0, 1, ..., floor(n/2)). Throws for n < 1.
std::vector<IrrepLabel> enumerate_irreps(int n);

/// SU(2) Clebsch-Gordan coefficient <j1 m1 j2 m2 | J M> in the
/// Condon-Shortley convention. Arguments are half-integers; anything else is
/// rejected. Returns 0 when M != m1+m2, when J violates the triangle rule,
/// or when some |m| exceeds its j. Evaluated through the Racah closed form
/// with exact big-rational arithmetic, rounded once at the end.
double clebsch_gordan(double j1, double j2, double J, double m1, double m2,
                      double M);

/// Table of CG coefficients for fixed (j1, j2, J), all projections at once.
/// Entry (a, b) holds <j1, j1-a; j2, j2-b | J, (j1-a)+(j2-b)>. Each column of
/// fixed M is the J(J+1)-eigenvector of the tridiagonal J^2 block, extracted
/// by inverse iteration, which stays accurate far beyond where factorial
/// formulas lose digits. Spins passed doubled.
Eigen::MatrixXd clebsch_gordan_table(int two_j1, int two_j2, int two_J);

/// Wigner small-d rotation matrix d^s(theta) = exp(-i theta S_y) in the
/// |s,q> basis, rows and columns ordered q = s..-s. Real orthogonal; stable
/// up to s = 64. Throws for negative or non-half-integer s.
Eigen::MatrixXd wigner_d(double s, double theta);

/// Single row q' = p of wigner_d (spins doubled). Used in hot loops where
/// only one row per sample is needed.
Eigen::VectorXd wigner_d_row(int two_s, double theta, int two_p);

/// Reusable evaluator for d^s(theta) rows. Holds the eigendecomposition of
/// the tridiagonal S_y generator (computed once per spin), after which any
/// row at any angle costs two matrix-vector products. This is what keeps
/// repeated evaluation both fast and orthogonal to machine precision.
class WignerTable {
 public:
  explicit WignerTable(int two_s);

  int two_s() const { return two_s_; }
  int size() const { return two_s_ + 1; }

  /// Scratch space so row() allocates nothing; one per thread.
  struct Scratch {
    Eigen::VectorXd cosv, sinv, a, b;
  };

  /// Writes row q' = p of d^s(theta) into out (length 2s+1, columns ordered
  /// q = s..-s). two_p must be a valid doubled projection.
  void row(double theta, int two_p, Scratch& scratch,
           Eigen::Ref<Eigen::VectorXd> out) const;

  /// Full d^s(theta), rows and columns ordered q = s..-s.
  Eigen::MatrixXd matrix(double theta) const;

  /// Shared per-spin instance (kept alive for the process lifetime).
  static const WignerTable& shared(int two_s);

 private:
  int two_s_;
  Eigen::MatrixXd vecs_;    // eigenvectors of J_x in the q = s..-s basis
  Eigen::VectorXd evals_;   // corresponding eigenvalues
};

/// Number of occupation types of n symbols from an s-letter alphabet,
/// C(n+s-1, s-1). Throws for s < 1 or n < 1.
std::int64_t count_types(int n, int s);

/// All occupation types, lexicographically by decreasing first entries.
std::vector<QuditType> enumerate_types(int n, int s);

/// Multiplicity of the SU(D) irrep with highest weight lambda (at most D
/// parts, padded with zeros) via the Weyl dimension formula.
std::int64_t qudit_multiplicity(const std::vector<int>& lambda, int D);

/// log k! accumulated in extended precision; exact for k <= 20.
double log_factorial(int k);

/// log C(n, k); -inf for k < 0 or k > n.
double log_binomial(int n, int k);

/// C(n, k) as a double (exact until ~2^53).
double binomial(int n, int k);

/// C(n, k) as int64, or -1 on overflow.
std::int64_t binomial_int64(int n, int k);

}  // namespace pishadow
