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

// Self-consistency checks of the brute-force reference implementations. The
// other suites lean on the oracle, so its own arithmetic is pinned here
// against hand-computable values and cross-checks between independent paths.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "pishadow/pibasis.hpp"
#include "pishadow/repcomb.hpp"

using namespace pishadow;
using oracle::MatrixXcd;

namespace {

double hs_inner_real(const MatrixXcd& a, const MatrixXcd& b) {
  return (a.adjoint() * b).trace().real();
}

std::complex<double> hs_inner(const MatrixXcd& a, const MatrixXcd& b) {
  return (a.adjoint() * b).trace();
}

}  // namespace

TEST_CASE("dense Pauli matrices multiply like Paulis") {
  MatrixXcd x = oracle::dense_pauli('X');
  MatrixXcd y = oracle::dense_pauli('Y');
  MatrixXcd z = oracle::dense_pauli('Z');
  std::complex<double> iu(0.0, 1.0);
  CHECK((x * y - iu * z).norm() < 1e-15);
  CHECK((y * z - iu * x).norm() < 1e-15);
  CHECK((x * x - MatrixXcd::Identity(2, 2)).norm() < 1e-15);
  CHECK((oracle::dense_pauli_string("XZ") -
         oracle::kron(x, z)).norm() < 1e-15);
}

TEST_CASE("dense symmetrized Pauli elements are orthonormal") {
  for (int n = 2; n <= 5; ++n) {
    const auto& comps = enumerate_compositions(n);
    std::vector<MatrixXcd> ops;
    ops.reserve(comps.size());
    for (const auto& k : comps) {
      ops.push_back(oracle::dense_symmetrized_pauli(k, n));
    }
    for (std::size_t i = 0; i < ops.size(); ++i) {
      for (std::size_t j = i; j < ops.size(); ++j) {
        double want = (i == j) ? 1.0 : 0.0;
        CHECK(std::abs(hs_inner_real(ops[i], ops[j]) - want) < 1e-12);
      }
    }
  }
}

TEST_CASE("dense Schur basis elements are orthonormal") {
  for (int n = 2; n <= 5; ++n) {
    oracle::DenseSchurBasis basis(n);
    const SchurLayout& lay = SchurLayout::get(n);
    std::vector<MatrixXcd> ops(lay.size());
    for (std::size_t i = 0; i < lay.irreps().size(); ++i) {
      const IrrepLabel& ir = lay.irreps()[i];
      for (int two_q : ir.two_q_values()) {
        for (int two_qp : ir.two_q_values()) {
          ops[lay.index(i, two_q, two_qp)] =
              basis.dense_basis_op(i, two_q, two_qp);
        }
      }
    }
    for (std::size_t i = 0; i < ops.size(); ++i) {
      for (std::size_t j = i; j < ops.size(); ++j) {
        std::complex<double> got = hs_inner(ops[i], ops[j]);
        std::complex<double> want = (i == j) ? 1.0 : 0.0;
        CHECK(std::abs(got - want) < 1e-12);
      }
    }
  }
}

TEST_CASE("the two dense bases are related by a unitary change of basis") {
  for (int n : {3, 4}) {
    const auto& comps = enumerate_compositions(n);
    const SchurLayout& lay = SchurLayout::get(n);
    oracle::DenseSchurBasis basis(n);
    REQUIRE(comps.size() == lay.size());
    Eigen::Index dim = static_cast<Eigen::Index>(lay.size());
    MatrixXcd u(dim, dim);
    for (std::size_t i = 0; i < comps.size(); ++i) {
      MatrixXcd bp = oracle::dense_symmetrized_pauli(comps[i], n);
      PIVector proj = basis.project(bp);
      u.row(static_cast<Eigen::Index>(i)) = proj.coeffs.transpose();
    }
    CHECK((u * u.adjoint() - MatrixXcd::Identity(dim, dim)).norm() < 1e-10);
  }
}

TEST_CASE("dense round trips reproduce coefficient vectors") {
  int n = 4;
  std::mt19937_64 eng(7);
  auto rnd = [&] {
    return 2.0 * (static_cast<double>(eng() >> 11) * 0x1p-53) - 1.0;
  };
  PIVector vp = PIVector::zero(Basis::PauliPI, n);
  for (Eigen::Index i = 0; i < vp.coeffs.size(); ++i) vp.coeffs[i] = rnd();
  PIVector back = oracle::dense_to_pauli_pivector(
      oracle::dense_from_pauli_pivector(vp), n);
  CHECK((back.coeffs - vp.coeffs).norm() < 1e-12);

  oracle::DenseSchurBasis basis(n);
  PIVector vs = PIVector::zero(Basis::SchurPI, n);
  for (Eigen::Index i = 0; i < vs.coeffs.size(); ++i) {
    vs.coeffs[i] = std::complex<double>(rnd(), rnd());
  }
  PIVector back_s = basis.project(basis.dense(vs));
  CHECK((back_s.coeffs - vs.coeffs).norm() < 1e-12);
}

TEST_CASE("Euler rotation matrix") {
  EulerAngles theta{0.3, 1.1, -0.7};
  Eigen::Matrix2cd w = oracle::dense_euler(theta);
  CHECK((w * w.adjoint() - Eigen::Matrix2cd::Identity()).norm() < 1e-14);
  // Rz(t) = diag(e^{-it/2}, e^{it/2}); Ry(pi/2) sends Z to X.
  Eigen::Matrix2cd ry = oracle::dense_euler(EulerAngles{0.0, M_PI / 2, 0.0});
  MatrixXcd rotated = ry * oracle::dense_pauli('Z') * ry.adjoint();
  CHECK((rotated - oracle::dense_pauli('X')).norm() < 1e-14);
  CHECK((oracle::dense_euler_n(theta, 3) -
         oracle::kron(oracle::kron(w, w), w)).norm() < 1e-13);
}

TEST_CASE("dense weight-class projectors resolve the identity") {
  int n = 4;
  MatrixXcd acc = MatrixXcd::Zero(16, 16);
  for (int h = 0; h <= n; ++h) {
    MatrixXcd p = oracle::dense_hamming_projector(h, n);
    CHECK(std::abs(p.trace().real() - binomial(n, h)) < 1e-12);
    CHECK((p * p - p).norm() < 1e-13);
    acc += p;
  }
  CHECK((acc - MatrixXcd::Identity(16, 16)).norm() < 1e-13);
  // h counts zeros: |11> lives in the h = 0 class.
  MatrixXcd p0 = oracle::dense_hamming_projector(0, 2);
  CHECK(std::abs(p0(3, 3).real() - 1.0) < 1e-15);
  CHECK(std::abs(p0(0, 0)) < 1e-15);
}

TEST_CASE("dense GHZ projector") {
  MatrixXcd g = oracle::dense_ghz(3);
  CHECK(std::abs(g.trace().real() - 1.0) < 1e-14);
  CHECK((g * g - g).norm() < 1e-14);
  CHECK(std::abs(g(0, 0).real() - 0.5) < 1e-15);
  CHECK(std::abs(g(0, 7).real() - 0.5) < 1e-15);
  CHECK(std::abs(g(1, 1)) < 1e-15);
}

TEST_CASE("spherical moments") {
  CHECK(oracle::sphere_moment(0, 0, 0) == doctest::Approx(1.0));
  CHECK(oracle::sphere_moment(2, 0, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(oracle::sphere_moment(4, 0, 0) == doctest::Approx(1.0 / 5.0));
  CHECK(oracle::sphere_moment(2, 2, 0) == doctest::Approx(1.0 / 15.0));
  CHECK(oracle::sphere_moment(2, 2, 2) == doctest::Approx(1.0 / 105.0));
  CHECK(oracle::sphere_moment(6, 0, 0) == doctest::Approx(1.0 / 7.0));
  CHECK(oracle::sphere_moment(1, 0, 0) == 0.0);
  CHECK(oracle::sphere_moment(2, 1, 2) == 0.0);
}

TEST_CASE("quadrature rule integrates rotation-measure moments exactly") {
  auto rule = oracle::haar_rule(2, 2);
  double sum_w = 0.0, cos2 = 0.0, cos1 = 0.0, sin2 = 0.0, cossq = 0.0;
  std::complex<double> e1(0.0, 0.0);
  for (const auto& node : rule) {
    sum_w += node.weight;
    cos2 += node.weight * std::cos(node.theta.theta2);
    cossq += node.weight * std::pow(std::cos(node.theta.theta2), 2);
    sin2 += node.weight * std::sin(node.theta.theta2);
    cos1 += node.weight * std::cos(node.theta.theta1);
    e1 += node.weight *
          std::exp(std::complex<double>(0.0, node.theta.theta1));
  }
  CHECK(std::abs(sum_w - 1.0) < 1e-13);
  CHECK(std::abs(cos2) < 1e-13);            // E[cos t2] over sin(t2)/2 dt2
  CHECK(std::abs(cossq - 1.0 / 3.0) < 1e-13);
  CHECK(std::abs(sin2 - M_PI / 4.0) < 1e-13);
  CHECK(std::abs(cos1) < 1e-13);
  CHECK(std::abs(e1) < 1e-13);
}

TEST_CASE("quadrature average of rotated Z tensors matches closed form") {
  for (int m = 1; m <= 3; ++m) {
    auto rule = oracle::haar_rule(m, m);
    Eigen::Index dim = Eigen::Index(1) << m;
    MatrixXcd acc = MatrixXcd::Zero(dim, dim);
    MatrixXcd z = oracle::dense_pauli('Z');
    for (const auto& node : rule) {
      Eigen::Matrix2cd w = oracle::dense_euler(node.theta);
      MatrixXcd zc = w * z * w.adjoint();
      MatrixXcd t = zc;
      for (int j = 1; j < m; ++j) t = oracle::kron(t, zc);
      acc += node.weight * t;
    }
    CHECK((acc - oracle::dense_zw_moment(m)).norm() < 1e-12);
  }
  // m = 2 in closed form: (XX + YY + ZZ) / 3.
  MatrixXcd want = (oracle::dense_pauli_string("XX") +
                    oracle::dense_pauli_string("YY") +
                    oracle::dense_pauli_string("ZZ")) /
                   3.0;
  CHECK((oracle::dense_zw_moment(2) - want).norm() < 1e-14);
}

TEST_CASE("chi-square tail probabilities") {
  // Two degrees of freedom: Q(x) = exp(-x/2) exactly.
  CHECK(oracle::chi2_tail(3.7, 2) == doctest::Approx(std::exp(-1.85)));
  // Four degrees of freedom: Q(x) = exp(-x/2) (1 + x/2).
  CHECK(oracle::chi2_tail(5.0, 4) ==
        doctest::Approx(std::exp(-2.5) * 3.5).epsilon(1e-10));
  // One degree of freedom: Q(x) = erfc(sqrt(x/2)).
  CHECK(oracle::chi2_tail(2.3, 1) ==
        doctest::Approx(std::erfc(std::sqrt(1.15))).epsilon(1e-10));
  CHECK(oracle::chi2_tail(0.0, 7) == doctest::Approx(1.0));
  CHECK(oracle::chi2_tail(500.0, 3) < 1e-100);
  CHECK(oracle::gamma_p(0.5, 0.81) ==
        doctest::Approx(std::erf(0.9)).epsilon(1e-12));
}
