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

#include <cmath>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "pishadow/repcomb.hpp"

using namespace pishadow;

TEST_CASE("composition enumeration covers C(n+3,3) entries exactly once") {
  for (int n : {1, 2, 3, 7, 12}) {
    const auto& comps = enumerate_compositions(n);
    CHECK(comps.size() == pi_dimension(n));
    std::set<std::array<int, 4>> seen;
    for (const Composition& k : comps) {
      CHECK(k.kx + k.ky + k.kz + k.ki == n);
      CHECK(k.kx >= 0);
      CHECK(k.ky >= 0);
      CHECK(k.kz >= 0);
      CHECK(k.ki >= 0);
      seen.insert({k.kx, k.ky, k.kz, k.ki});
    }
    CHECK(seen.size() == comps.size());
  }
}

TEST_CASE("composition_index inverts the enumeration") {
  for (int n : {1, 4, 9}) {
    const auto& comps = enumerate_compositions(n);
    for (std::size_t i = 0; i < comps.size(); ++i) {
      CHECK(composition_index(comps[i], n) == i);
    }
  }
}

TEST_CASE("parity classes are contiguous and consistent") {
  for (int n : {2, 5, 8}) {
    const auto& comps = enumerate_compositions(n);
    auto ranges = parity_class_ranges(n);
    std::size_t covered = 0;
    for (int cls = 0; cls < 8; ++cls) {
      auto [first, last] = ranges[static_cast<std::size_t>(cls)];
      for (std::size_t i = first; i < last; ++i) {
        CHECK(comps[i].parity_class() == cls);
      }
      covered += last - first;
    }
    CHECK(covered == comps.size());
  }
}

TEST_CASE("pi_dimension matches the closed form at n = 100") {
  CHECK(pi_dimension(100) == 176851);
}

TEST_CASE("irrep table for four qubits") {
  auto irreps = enumerate_irreps(4);
  REQUIRE(irreps.size() == 3);
  CHECK(irreps[0].mult == 5);
  CHECK(irreps[1].mult == 3);
  CHECK(irreps[2].mult == 1);
  CHECK(irreps[0].dim_t == 1);
  CHECK(irreps[1].dim_t == 3);
  CHECK(irreps[2].dim_t == 2);
  CHECK(irreps[0].lambda1 == 4);
  CHECK(irreps[0].lambda2 == 0);
  CHECK(irreps[2].two_s == 0);
}

TEST_CASE("irrep dimensions satisfy the two sum rules") {
  for (int n = 1; n <= 30; ++n) {
    auto irreps = enumerate_irreps(n);
    std::int64_t hilbert = 0;
    std::size_t pi = 0;
    for (const auto& ir : irreps) {
      REQUIRE(ir.dim_t > 0);
      hilbert += static_cast<std::int64_t>(ir.mult) * ir.dim_t;
      pi += static_cast<std::size_t>(ir.mult) * ir.mult;
      CHECK(ir.log_dim_t ==
            doctest::Approx(std::log(static_cast<double>(ir.dim_t)))
                .epsilon(1e-13));
    }
    CHECK(hilbert == (std::int64_t(1) << n));
    CHECK(pi == pi_dimension(n));
  }
}

TEST_CASE("projection membership respects spin parity") {
  auto irreps = enumerate_irreps(5);
  const auto& top = irreps[0];
  CHECK(top.two_s == 5);
  CHECK(top.contains_two_q(5));
  CHECK(top.contains_two_q(-3));
  CHECK_FALSE(top.contains_two_q(4));
  CHECK_FALSE(top.contains_two_q(7));
  auto qs = top.two_q_values();
  REQUIRE(qs.size() == 6);
  CHECK(qs.front() == 5);
  CHECK(qs.back() == -5);
}

TEST_CASE("Clebsch-Gordan values for two spin-1/2 systems") {
  CHECK(clebsch_gordan(0.5, 0.5, 1.0, 0.5, 0.5, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(clebsch_gordan(0.5, 0.5, 0.0, 0.5, -0.5, 0.0) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(clebsch_gordan(0.5, 0.5, 1.0, -0.5, 0.5, 0.0) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(clebsch_gordan(0.5, 0.5, 0.0, -0.5, 0.5, 0.0) ==
        doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("Clebsch-Gordan selection rules") {
  CHECK(clebsch_gordan(0.5, 0.5, 1.0, 0.5, -0.5, 1.0) == 0.0);  // M mismatch
  CHECK(clebsch_gordan(0.5, 0.5, 2.0, 0.5, 0.5, 1.0) == 0.0);   // triangle
  CHECK(clebsch_gordan(1.0, 1.0, 1.0, 2.0, -1.0, 1.0) == 0.0);  // |m| > j
  CHECK_THROWS_AS(clebsch_gordan(0.3, 0.5, 1.0, 0.3, 0.5, 0.8),
                  std::invalid_argument);
}

TEST_CASE("Clebsch-Gordan columns are orthonormal") {
  for (auto [j1, j2] : std::vector<std::pair<double, double>>{
           {0.5, 0.5}, {1.0, 1.5}, {2.0, 2.0}, {3.5, 1.0}}) {
    for (double J = std::abs(j1 - j2); J <= j1 + j2 + 0.1; J += 1.0) {
      for (double Jp = std::abs(j1 - j2); Jp <= j1 + j2 + 0.1; Jp += 1.0) {
        double m = std::min(J, Jp);
        double acc = 0.0;
        for (double m1 = -j1; m1 <= j1 + 0.1; m1 += 1.0) {
          acc += clebsch_gordan(j1, j2, J, m1, m - m1, m) *
                 clebsch_gordan(j1, j2, Jp, m1, m - m1, m);
        }
        CHECK(std::abs(acc - (J == Jp ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("Clebsch-Gordan table agrees with the closed form up to 2j = 40") {
  for (auto [two_j1, two_j2, two_J] :
       std::vector<std::array<int, 3>>{{1, 1, 2},
                                       {4, 3, 5},
                                       {10, 10, 8},
                                       {25, 15, 30},
                                       {40, 40, 40},
                                       {40, 2, 40}}) {
    Eigen::MatrixXd table = clebsch_gordan_table(two_j1, two_j2, two_J);
    REQUIRE(table.rows() == two_j1 + 1);
    REQUIRE(table.cols() == two_j2 + 1);
    for (int a = 0; a <= two_j1; ++a) {
      for (int b = 0; b <= two_j2; ++b) {
        double m1 = (two_j1 - 2 * a) / 2.0;
        double m2 = (two_j2 - 2 * b) / 2.0;
        double want = clebsch_gordan(two_j1 / 2.0, two_j2 / 2.0, two_J / 2.0,
                                     m1, m2, m1 + m2);
        CHECK(std::abs(table(a, b) - want) < 1e-12);
      }
    }
  }
}

TEST_CASE("Clebsch-Gordan table stays orthonormal at large spins") {
  // Coupling a hundred qubits walks through spins of this size, so the
  // table must hold machine precision well past the closed-form range.
  for (auto [two_j1, two_j2] :
       std::vector<std::array<int, 2>>{{100, 100}, {100, 60}, {200, 200}}) {
    int lo = std::abs(two_j1 - two_j2);
    int hi = two_j1 + two_j2;
    int step = std::max(2, ((hi - lo) / 6) & ~1);
    std::vector<int> spins;
    for (int two_J = lo; two_J <= hi; two_J += step) spins.push_back(two_J);
    std::vector<Eigen::MatrixXd> tables;
    for (int two_J : spins) {
      tables.push_back(clebsch_gordan_table(two_j1, two_j2, two_J));
    }
    for (std::size_t x = 0; x < spins.size(); ++x) {
      for (std::size_t y = x; y < spins.size(); ++y) {
        int two_Mmax = std::min(spins[x], spins[y]);
        for (int two_M = -two_Mmax; two_M <= two_Mmax; two_M += 2) {
          double acc = 0.0;
          for (int a = 0; a <= two_j1; ++a) {
            int two_m1 = two_j1 - 2 * a;
            int two_m2 = two_M - two_m1;
            if (std::abs(two_m2) > two_j2) continue;
            acc += tables[x](a, (two_j2 - two_m2) / 2) *
                   tables[y](a, (two_j2 - two_m2) / 2);
          }
          CHECK(std::abs(acc - (x == y ? 1.0 : 0.0)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("Wigner d at spin one half") {
  double theta = 0.7321;
  Eigen::MatrixXd d = wigner_d(0.5, theta);
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  CHECK(std::abs(d(0, 0) - c) < 1e-14);
  CHECK(std::abs(d(0, 1) + s) < 1e-14);
  CHECK(std::abs(d(1, 0) - s) < 1e-14);
  CHECK(std::abs(d(1, 1) - c) < 1e-14);
}

TEST_CASE("Wigner d is the identity at zero angle") {
  for (double s : {0.5, 3.0, 17.5}) {
    Eigen::MatrixXd d = wigner_d(s, 0.0);
    CHECK((d - Eigen::MatrixXd::Identity(d.rows(), d.cols()))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("Wigner d stays orthogonal at spin 64") {
  const WignerTable& table = WignerTable::shared(128);
  for (double theta : {0.1, 1.3, 2.9}) {
    Eigen::MatrixXd d = table.matrix(theta);
    Eigen::MatrixXd gram = d.transpose() * d;
    CHECK((gram - Eigen::MatrixXd::Identity(129, 129)).cwiseAbs().maxCoeff() <
          1e-10);
  }
}

TEST_CASE("Wigner d composes angles") {
  for (int two_s : {1, 7, 40, 100}) {
    const WignerTable& table = WignerTable::shared(two_s);
    double a = 0.9, b = -1.7;
    Eigen::MatrixXd lhs = table.matrix(a) * table.matrix(b);
    Eigen::MatrixXd rhs = table.matrix(a + b);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("Wigner row extraction matches the full matrix") {
  for (int two_s : {2, 9, 31}) {
    const WignerTable& table = WignerTable::shared(two_s);
    WignerTable::Scratch scratch;
    Eigen::VectorXd row(two_s + 1);
    for (double theta : {0.0, 0.4, 2.2}) {
      Eigen::MatrixXd full = table.matrix(theta);
      for (int two_p = -two_s; two_p <= two_s; two_p += 2) {
        table.row(theta, two_p, scratch, row);
        int r = (two_s - two_p) / 2;
        CHECK((row.transpose() - full.row(r)).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("type counting") {
  CHECK(count_types(2, 2) == 3);
  CHECK(count_types(1, 4) == 4);
  CHECK(count_types(3, 4) == 20);
  CHECK(enumerate_types(2, 2).size() == 3);
  auto types = enumerate_types(3, 2);
  REQUIRE(types.size() == 4);
  CHECK(types[0] == QuditType{3, 0});
  CHECK(types[3] == QuditType{0, 3});
  CHECK_THROWS_AS(count_types(0, 2), std::invalid_argument);
}

TEST_CASE("qudit irrep multiplicities from the Weyl formula") {
  CHECK(qudit_multiplicity({3, 1}, 2) == 3);
  CHECK(qudit_multiplicity({1, 1, 1}, 3) == 1);
  for (int n : {1, 2, 5, 9}) {
    CHECK(qudit_multiplicity({n, 0, 0}, 3) == (n + 1) * (n + 2) / 2);
  }
}

TEST_CASE("factorial and binomial helpers") {
  CHECK(log_factorial(0) == 0.0);
  CHECK(std::abs(log_factorial(20) - std::log(2432902008176640000.0)) <
        1e-12);
  CHECK(binomial(10, 5) == 252.0);
  CHECK(binomial_int64(52, 26) == 495918532948104LL);
  CHECK(binomial_int64(80, 40) == -1);  // overflows 64 bits
  CHECK(std::exp(log_binomial(100, 50)) ==
        doctest::Approx(1.0089134454556417e29).epsilon(1e-12));
  CHECK(std::isinf(log_binomial(4, 5)));
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(enumerate_compositions(0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_irreps(0), std::invalid_argument);
  CHECK_THROWS_AS(wigner_d(-0.5, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(composition_index(Composition{1, 0, 0, 0}, 2),
                  std::invalid_argument);
}
