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

#include "pishadow/repcomb.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace pishadow {

namespace {

using boost::multiprecision::cpp_int;

constexpr int kLogFactTableSize = 4096;

const double* log_fact_table() {
  static const std::vector<double>* table = [] {
    auto* t = new std::vector<double>(kLogFactTableSize);
    long double acc = 0.0L;
    (*t)[0] = 0.0;
    for (int k = 1; k < kLogFactTableSize; ++k) {
      acc += std::log(static_cast<long double>(k));
      (*t)[k] = static_cast<double>(acc);
    }
    return t;
  }();
  return table->data();
}

int require_doubled(double x, const char* what) {
  double t = 2.0 * x;
  double r = std::round(t);
  if (!(std::abs(t - r) <= 1e-9)) {
    throw std::invalid_argument(std::string(what) +
                                " must be a half-integer, got " +
                                std::to_string(x));
  }
  return static_cast<int>(r);
}

// Returns by value: the memoization vector may reallocate while a caller
// still holds earlier results of the same expression.
cpp_int big_factorial(int k) {
  static std::mutex mu;
  static std::vector<cpp_int> table{cpp_int(1)};
  std::lock_guard<std::mutex> lk(mu);
  while (static_cast<int>(table.size()) <= k) {
    table.push_back(table.back() * static_cast<int>(table.size()));
  }
  return table[k];
}

// Accurate conversion of a positive big rational to double. Shifts the
// numerator so the integer quotient carries ~62 bits, then rescales.
double big_ratio_to_double(const cpp_int& num, const cpp_int& den) {
  if (num.is_zero()) return 0.0;
  long shift = static_cast<long>(boost::multiprecision::msb(num)) -
               static_cast<long>(boost::multiprecision::msb(den));
  long k = 62 - shift;
  cpp_int n2 = k >= 0 ? cpp_int(num << k) : num;
  cpp_int d2 = k >= 0 ? den : cpp_int(den << (-k));
  cpp_int q = n2 / d2;
  double x = static_cast<double>(q.convert_to<std::uint64_t>());
  return std::ldexp(x, static_cast<int>(-k));
}

struct CompCache {
  std::vector<Composition> comps;
  std::array<std::pair<std::size_t, std::size_t>, 8> ranges;
  std::unordered_map<std::uint64_t, std::size_t> index;
};

std::uint64_t comp_key(const Composition& k) {
  return (static_cast<std::uint64_t>(k.kx) << 40) |
         (static_cast<std::uint64_t>(k.ky) << 20) |
         static_cast<std::uint64_t>(k.kz);
}

const CompCache& comp_cache(int n) {
  if (n < 1) throw std::invalid_argument("qubit count must be positive");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CompCache>> caches;
  std::lock_guard<std::mutex> lk(mu);
  auto it = caches.find(n);
  if (it != caches.end()) return *it->second;

  auto cache = std::make_unique<CompCache>();
  cache->comps.reserve(pi_dimension(n));
  for (int cls = 0; cls < 8; ++cls) {
    std::size_t first = cache->comps.size();
    int px = (cls >> 2) & 1, py = (cls >> 1) & 1, pz = cls & 1;
    for (int kx = px; kx <= n; kx += 2) {
      for (int ky = py; kx + ky <= n; ky += 2) {
        for (int kz = pz; kx + ky + kz <= n; kz += 2) {
          cache->comps.push_back({kx, ky, kz, n - kx - ky - kz});
        }
      }
    }
    cache->ranges[cls] = {first, cache->comps.size()};
  }
  cache->index.reserve(cache->comps.size());
  for (std::size_t i = 0; i < cache->comps.size(); ++i) {
    cache->index.emplace(comp_key(cache->comps[i]), i);
  }
  const CompCache& ref = *cache;
  caches.emplace(n, std::move(cache));
  return ref;
}

}  // namespace

double log_factorial(int k) {
  if (k < 0) throw std::invalid_argument("log_factorial of negative value");
  if (k < kLogFactTableSize) return log_fact_table()[k];
  return std::lgamma(static_cast<double>(k) + 1.0);
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r < 9.007199254740992e15 ? std::round(r) : r;
}

std::int64_t binomial_int64(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact: partial value is C(n-k+i, i)
    if (r > static_cast<__int128>(INT64_MAX)) return -1;
  }
  return static_cast<std::int64_t>(r);
}

std::size_t pi_dimension(int n) {
  if (n < 1) throw std::invalid_argument("qubit count must be positive");
  return static_cast<std::size_t>(binomial_int64(n + 3, 3));
}

const std::vector<Composition>& enumerate_compositions(int n) {
  return comp_cache(n).comps;
}

std::array<std::pair<std::size_t, std::size_t>, 8> parity_class_ranges(int n) {
  return comp_cache(n).ranges;
}

std::size_t composition_index(const Composition& k, int n) {
  if (k.kx < 0 || k.ky < 0 || k.kz < 0 || k.ki < 0 || k.n() != n) {
    throw std::invalid_argument("composition does not describe " +
                                std::to_string(n) + " qubits");
  }
  const CompCache& cache = comp_cache(n);
  return cache.index.at(comp_key(k));
}

std::vector<IrrepLabel> enumerate_irreps(int n) {
  if (n < 1) throw std::invalid_argument("qubit count must be positive");
  std::vector<IrrepLabel> out;
  out.reserve(static_cast<std::size_t>(n / 2) + 1);
  for (int l2 = 0; 2 * l2 <= n; ++l2) {
    IrrepLabel lab;
    lab.lambda1 = n - l2;
    lab.lambda2 = l2;
    lab.two_s = lab.lambda1 - lab.lambda2;
    lab.mult = lab.two_s + 1;
    std::int64_t b0 = binomial_int64(n, l2);
    std::int64_t b1 = l2 > 0 ? binomial_int64(n, l2 - 1) : 0;
    lab.dim_t = (b0 < 0 || b1 < 0) ? -1 : b0 - b1;
    lab.log_dim_t = log_factorial(n) - log_factorial(lab.lambda1 + 1) -
                    log_factorial(lab.lambda2) +
                    std::log(static_cast<double>(lab.two_s + 1));
    out.push_back(lab);
  }
  return out;
}

std::vector<int> IrrepLabel::two_q_values() const {
  std::vector<int> q(static_cast<std::size_t>(mult));
  for (int i = 0; i < mult; ++i) q[static_cast<std::size_t>(i)] = two_s - 2 * i;
  return q;
}

double clebsch_gordan(double j1, double j2, double J, double m1, double m2,
                      double M) {
  int tj1 = require_doubled(j1, "j1");
  int tj2 = require_doubled(j2, "j2");
  int tJ = require_doubled(J, "J");
  int tm1 = require_doubled(m1, "m1");
  int tm2 = require_doubled(m2, "m2");
  int tM = require_doubled(M, "M");
  if (tj1 < 0 || tj2 < 0 || tJ < 0) {
    throw std::invalid_argument("total spins must be non-negative");
  }
  if (tm1 + tm2 != tM) return 0.0;
  if (std::abs(tm1) > tj1 || ((tm1 ^ tj1) & 1)) return 0.0;
  if (std::abs(tm2) > tj2 || ((tm2 ^ tj2) & 1)) return 0.0;
  if (std::abs(tM) > tJ || ((tM ^ tJ) & 1)) return 0.0;
  if ((tj1 + tj2 + tJ) & 1) return 0.0;
  if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2) return 0.0;

  // Racah's closed form, evaluated with exact integer arithmetic and rounded
  // once at the end. The alternating sum loses all accuracy in floating
  // point well before j ~ 30; exact rationals have no such limit.
  int a = (tj1 + tj2 - tJ) / 2;
  int g1 = (tj1 - tj2 + tJ) / 2;
  int g2 = (-tj1 + tj2 + tJ) / 2;
  int p = (tj1 + tj2 + tJ) / 2;
  int b1 = (tj1 - tm1) / 2, b2 = (tj1 + tm1) / 2;
  int c1 = (tj2 - tm2) / 2, c2 = (tj2 + tm2) / 2;
  int d1 = (tJ + tM) / 2, d2 = (tJ - tM) / 2;
  int e1 = (tJ - tj2 + tm1) / 2;
  int e2 = (tJ - tj1 - tm2) / 2;

  int kmin = std::max({0, -e1, -e2});
  int kmax = std::min({a, b1, c2});
  if (kmin > kmax) return 0.0;

  // Common denominator for the k-sum: product of all six factorials at kmin,
  // with term ratios applied incrementally would be fiddly; simpler to put
  // each term over fact(p+1)^6-free exact rationals via numerator scaling.
  cpp_int sum_num = 0;
  cpp_int sum_den = 1;
  for (int k = kmin; k <= kmax; ++k) {
    cpp_int term_den = big_factorial(k) * big_factorial(a - k) *
                       big_factorial(b1 - k) * big_factorial(c2 - k) *
                       big_factorial(e1 + k) * big_factorial(e2 + k);
    cpp_int num = sum_num * term_den;
    if (k & 1) {
      num -= sum_den;
    } else {
      num += sum_den;
    }
    sum_num = num;
    sum_den *= term_den;
  }
  if (sum_num.is_zero()) return 0.0;

  // prefactor = (2J+1) * triangle * product of the six projection factorials
  cpp_int pref_num = cpp_int(tJ + 1) * big_factorial(a) * big_factorial(g1) *
                     big_factorial(g2) * big_factorial(d1) *
                     big_factorial(d2) * big_factorial(b1) *
                     big_factorial(b2) * big_factorial(c1) *
                     big_factorial(c2);
  cpp_int pref_den = big_factorial(p + 1);

  cpp_int num = pref_num * sum_num * sum_num;
  cpp_int den = pref_den * sum_den * sum_den;
  double mag = std::sqrt(big_ratio_to_double(num, den));
  return sum_num < 0 ? -mag : mag;
}

Eigen::MatrixXd clebsch_gordan_table(int two_j1, int two_j2, int two_J) {
  if (two_j1 < 0 || two_j2 < 0 || two_J < 0) {
    throw std::invalid_argument("total spins must be non-negative");
  }
  if ((two_j1 + two_j2 + two_J) & 1 || two_J < std::abs(two_j1 - two_j2) ||
      two_J > two_j1 + two_j2) {
    throw std::invalid_argument("spins violate the triangle rule");
  }
  const int rows = two_j1 + 1, cols = two_j2 + 1;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows, cols);

  auto raise = [](int two_j, int two_m) {  // <j,m+1| J+ |j,m>
    return std::sqrt(0.25 * (two_j - two_m) * (two_j + two_m + 2));
  };
  auto lower = [](int two_j, int two_m) {  // <j,m-1| J- |j,m>
    return std::sqrt(0.25 * (two_j + two_m) * (two_j - two_m + 2));
  };

  // Highest weight M = J: a pure-ratio two-term recursion (from J+ = 0) is
  // accurate to O(len * eps) since no cancellation occurs.
  int lo = std::max(-two_j1, two_J - two_j2);  // doubled m1 range at M = J
  int hi = std::min(two_j1, two_J + two_j2);
  int len = (hi - lo) / 2 + 1;
  Eigen::VectorXd cur = Eigen::VectorXd::Zero(len);
  cur[0] = 1.0;
  for (int i = 0; i + 1 < len; ++i) {
    int two_m1 = lo + 2 * i;
    cur[i + 1] = -cur[i] * raise(two_j1, two_m1) /
                 raise(two_j2, two_J - two_m1 - 2);
  }
  cur /= cur.norm();
  if (cur[len - 1] < 0) cur = -cur;

  auto store = [&](int two_M, int lo_m1, const Eigen::VectorXd& c) {
    for (int i = 0; i < c.size(); ++i) {
      int two_m1 = lo_m1 + 2 * i;
      int two_m2 = two_M - two_m1;
      out((two_j1 - two_m1) / 2, (two_j2 - two_m2) / 2) = c[i];
    }
  };
  store(two_J, lo, cur);

  // Remaining columns. Lowering the whole column with J- is exponentially
  // unstable when J < j1 + j2 (error components along higher-J eigenvectors
  // outgrow the wanted one). Each column is instead the eigenvector of the
  // tridiagonal J^2 block on its M subspace, extracted by inverse iteration
  // with the exact eigenvalue J(J+1); the eigenvalues J'(J'+1) are spaced by
  // at least 2J'+2, so two pivoted tridiagonal solves reach machine
  // precision. The overall sign then follows from
  // <f(M), J- f(M+1)> = ||J- f(M+1)|| > 0.
  double jj = 0.25 * two_J * (two_J + 2);
  std::vector<double> d, du, dl, du2, b;
  std::vector<char> swapped;
  for (int two_M = two_J - 2; two_M >= -two_J; two_M -= 2) {
    int nlo = std::max(-two_j1, two_M - two_j2);
    int nhi = std::min(two_j1, two_M + two_j2);
    int nlen = (nhi - nlo) / 2 + 1;
    auto off = [&](int i) {  // couples m1(i) and m1(i+1)
      int two_m1 = nlo + 2 * i;
      return raise(two_j1, two_m1) * lower(two_j2, two_M - two_m1);
    };

    // Factorize (J^2 - J(J+1)) with partial pivoting; zero pivots from the
    // (near-)singular shift become harmless tiny values.
    d.assign(static_cast<std::size_t>(nlen), 0.0);
    du.assign(static_cast<std::size_t>(std::max(nlen - 1, 0)), 0.0);
    dl = du;
    du2.assign(static_cast<std::size_t>(std::max(nlen - 2, 0)), 0.0);
    swapped.assign(static_cast<std::size_t>(std::max(nlen - 1, 0)), 0);
    for (int i = 0; i < nlen; ++i) {
      double m1 = 0.5 * (nlo + 2 * i);
      double m2 = 0.5 * two_M - m1;
      d[static_cast<std::size_t>(i)] = 0.25 * two_j1 * (two_j1 + 2) +
                                       0.25 * two_j2 * (two_j2 + 2) +
                                       2.0 * m1 * m2 - jj;
    }
    double anorm = 1.0;
    for (double v : d) anorm = std::max(anorm, std::abs(v));
    for (int i = 0; i + 1 < nlen; ++i) {
      du[static_cast<std::size_t>(i)] = off(i);
      dl[static_cast<std::size_t>(i)] = off(i);
      anorm = std::max(anorm, std::abs(du[static_cast<std::size_t>(i)]));
    }
    // Perturbation for exactly singular pivots, scaled so the amplified
    // solution stays far from overflow.
    double tiny = 2.3e-16 * anorm;
    for (int i = 0; i + 1 < nlen; ++i) {
      auto si = static_cast<std::size_t>(i);
      if (std::abs(d[si]) >= std::abs(dl[si])) {
        if (d[si] == 0.0) d[si] = tiny;
        double fact = dl[si] / d[si];
        dl[si] = fact;
        d[si + 1] -= fact * du[si];
        if (i + 2 < nlen) du2[si] = 0.0;
      } else {
        double fact = d[si] / dl[si];
        d[si] = dl[si];
        dl[si] = fact;
        double temp = du[si];
        du[si] = d[si + 1];
        d[si + 1] = temp - fact * d[si + 1];
        if (i + 2 < nlen) {
          du2[si] = du[si + 1];
          du[si + 1] = -fact * du[si + 1];
        }
        swapped[si] = 1;
      }
    }
    if (d[static_cast<std::size_t>(nlen - 1)] == 0.0) {
      d[static_cast<std::size_t>(nlen - 1)] = tiny;
    }

    auto solve = [&](std::vector<double>& x) {
      for (int i = 0; i + 1 < nlen; ++i) {
        auto si = static_cast<std::size_t>(i);
        if (swapped[si]) std::swap(x[si], x[si + 1]);
        x[si + 1] -= dl[si] * x[si];
      }
      for (int i = nlen - 1; i >= 0; --i) {
        auto si = static_cast<std::size_t>(i);
        double v = x[si];
        if (i + 1 < nlen) v -= du[si] * x[si + 1];
        if (i + 2 < nlen) v -= du2[si] * x[si + 2];
        x[si] = v / d[si];
      }
      double mx = 0.0;
      for (double v : x) mx = std::max(mx, std::abs(v));
      for (double& v : x) v /= mx;
      double norm = 0.0;
      for (double v : x) norm += v * v;
      norm = std::sqrt(norm);
      for (double& v : x) v /= norm;
    };

    b.resize(static_cast<std::size_t>(nlen));
    for (int i = 0; i < nlen; ++i) {
      // Generic seed without symmetry, so no eigenvector is missed.
      b[static_cast<std::size_t>(i)] =
          std::sin(0.7 * i + 1.0) + 0.25 * std::cos(2.3 * i);
    }
    solve(b);
    solve(b);

    Eigen::VectorXd nxt(nlen);
    for (int i = 0; i < nlen; ++i) nxt[i] = b[static_cast<std::size_t>(i)];

    // Sign from the previous column: each entry of J- cur lands on the m1
    // grid of nxt shifted by the two lowering branches.
    double dot = 0.0;
    for (int i = 0; i < nlen; ++i) {
      int two_m1 = nlo + 2 * i;
      int j = (two_m1 + 2 - lo) / 2;  // index of m1+1 in the previous column
      double w = 0.0;
      if (j >= 0 && j < len) w += cur[j] * lower(two_j1, two_m1 + 2);
      j = (two_m1 - lo) / 2;
      if (j >= 0 && j < len) w += cur[j] * lower(two_j2, two_M + 2 - two_m1);
      dot += nxt[i] * w;
    }
    if (dot < 0) nxt = -nxt;

    store(two_M, nlo, nxt);
    cur = std::move(nxt);
    lo = nlo;
    len = nlen;
  }
  return out;
}

WignerTable::WignerTable(int two_s) : two_s_(two_s) {
  if (two_s < 0) throw std::invalid_argument("spin must be non-negative");
  const int dim = two_s + 1;
  Eigen::MatrixXd jx = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a + 1 < dim; ++a) {
    double v = 0.5 * std::sqrt(static_cast<double>(two_s - a) *
                               static_cast<double>(a + 1));
    jx(a, a + 1) = v;
    jx(a + 1, a) = v;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jx);
  vecs_ = es.eigenvectors();
  evals_ = es.eigenvalues();
}

void WignerTable::row(double theta, int two_p, Scratch& s,
                      Eigen::Ref<Eigen::VectorXd> out) const {
  const int dim = two_s_ + 1;
  if (std::abs(two_p) > two_s_ || ((two_p ^ two_s_) & 1)) {
    throw std::invalid_argument("projection is not valid for this spin");
  }
  const int p_idx = (two_s_ - two_p) / 2;
  s.cosv.resize(dim);
  s.sinv.resize(dim);
  for (int k = 0; k < dim; ++k) {
    double ph = theta * evals_[k];
    s.cosv[k] = std::cos(ph);
    s.sinv[k] = std::sin(ph);
  }
  s.b = vecs_.row(p_idx).transpose().cwiseProduct(s.cosv);
  s.a.noalias() = vecs_ * s.b;                 // sum_k V_mk V_pk cos(theta l_k)
  s.b = vecs_.row(p_idx).transpose().cwiseProduct(s.sinv);
  s.cosv.noalias() = vecs_ * s.b;              // sin-weighted counterpart
  // d_{p,m} = cos((m - p) pi/2 - theta l_k) summed over the eigenbasis;
  // the quarter-turn phase picks cos or sin depending on (m - p) mod 4.
  for (int im = 0; im < dim; ++im) {
    switch (((p_idx - im) % 4 + 4) % 4) {
      case 0: out[im] = s.a[im]; break;
      case 1: out[im] = s.cosv[im]; break;
      case 2: out[im] = -s.a[im]; break;
      default: out[im] = -s.cosv[im]; break;
    }
  }
}

Eigen::MatrixXd WignerTable::matrix(double theta) const {
  const int dim = two_s_ + 1;
  Eigen::ArrayXd ph = evals_.array() * theta;
  Eigen::MatrixXd c =
      vecs_ * ph.cos().matrix().asDiagonal() * vecs_.transpose();
  Eigen::MatrixXd s =
      vecs_ * ph.sin().matrix().asDiagonal() * vecs_.transpose();
  Eigen::MatrixXd out(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int cidx = 0; cidx < dim; ++cidx) {
      switch (((r - cidx) % 4 + 4) % 4) {
        case 0: out(r, cidx) = c(r, cidx); break;
        case 1: out(r, cidx) = s(r, cidx); break;
        case 2: out(r, cidx) = -c(r, cidx); break;
        default: out(r, cidx) = -s(r, cidx); break;
      }
    }
  }
  return out;
}

const WignerTable& WignerTable::shared(int two_s) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<const WignerTable>> tables;
  std::lock_guard<std::mutex> lk(mu);
  auto it = tables.find(two_s);
  if (it == tables.end()) {
    it = tables.emplace(two_s, std::make_unique<const WignerTable>(two_s))
             .first;
  }
  return *it->second;
}

Eigen::MatrixXd wigner_d(double s, double theta) {
  int two_s = require_doubled(s, "s");
  if (two_s < 0) throw std::invalid_argument("spin must be non-negative");
  return WignerTable::shared(two_s).matrix(theta);
}

Eigen::VectorXd wigner_d_row(int two_s, double theta, int two_p) {
  const WignerTable& table = WignerTable::shared(two_s);
  WignerTable::Scratch scratch;
  Eigen::VectorXd out(two_s + 1);
  table.row(theta, two_p, scratch, out);
  return out;
}

std::int64_t count_types(int n, int s) {
  if (n < 1 || s < 1) throw std::invalid_argument("need n >= 1 and s >= 1");
  std::int64_t c = binomial_int64(n + s - 1, s - 1);
  if (c < 0) throw std::overflow_error("type count exceeds 64 bits");
  return c;
}

std::vector<QuditType> enumerate_types(int n, int s) {
  std::int64_t total = count_types(n, s);
  std::vector<QuditType> out;
  out.reserve(static_cast<std::size_t>(total));
  QuditType cur(static_cast<std::size_t>(s), 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == s - 1) {
      cur[static_cast<std::size_t>(pos)] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, n);
  return out;
}

std::int64_t qudit_multiplicity(const std::vector<int>& lambda, int D) {
  if (D < 1) throw std::invalid_argument("local dimension must be positive");
  if (static_cast<int>(lambda.size()) > D) {
    throw std::invalid_argument("partition has more parts than the alphabet");
  }
  std::vector<int> l(lambda);
  l.resize(static_cast<std::size_t>(D), 0);
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i] < 0 || (i + 1 < l.size() && l[i] < l[i + 1])) {
      throw std::invalid_argument("partition parts must be non-increasing");
    }
  }
  __int128 num = 1;
  for (int i = 0; i < D; ++i) {
    for (int j = i + 1; j < D; ++j) {
      num *= l[static_cast<std::size_t>(i)] - l[static_cast<std::size_t>(j)] +
             j - i;
    }
  }
  __int128 den = 1;
  for (int k = 1; k < D; ++k) {
    for (int i = 2; i <= k; ++i) den *= i;
  }
  return static_cast<std::int64_t>(num / den);
}

}  // namespace pishadow
