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

#include "pishadow/pibasis.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "pishadow/util.hpp"

namespace pishadow {

namespace {

constexpr double kLog2 = 0.6931471805599453094;

void check_n(int n) {
  if (n < 1) throw std::invalid_argument("qubit count must be positive");
}

}  // namespace

// ---------------------------------------------------------------------------
// SchurLayout

SchurLayout::SchurLayout(int n) : n_(n) {
  check_n(n);
  irreps_ = enumerate_irreps(n);
  offsets_.resize(irreps_.size());
  std::size_t off = 0;
  for (std::size_t i = 0; i < irreps_.size(); ++i) {
    offsets_[i] = off;
    std::size_t m = static_cast<std::size_t>(irreps_[i].mult);
    off += m * m;
  }
  size_ = off;
}

std::size_t SchurLayout::index(std::size_t irrep_idx, int two_q,
                               int two_qp) const {
  const IrrepLabel& ir = irreps_.at(irrep_idx);
  if (!ir.contains_two_q(two_q) || !ir.contains_two_q(two_qp)) {
    throw std::invalid_argument("weight outside irrep range");
  }
  std::size_t m = static_cast<std::size_t>(ir.mult);
  std::size_t row = static_cast<std::size_t>((ir.two_s - two_q) / 2);
  std::size_t col = static_cast<std::size_t>((ir.two_s - two_qp) / 2);
  return offsets_[irrep_idx] + row * m + col;
}

std::size_t SchurLayout::irrep_by_two_s(int two_s) const {
  if (two_s < 0 || two_s > n_ || (n_ - two_s) % 2 != 0) return npos;
  // lambda2 = (n - two_s) / 2 and irreps are ordered by lambda2 ascending.
  std::size_t idx = static_cast<std::size_t>((n_ - two_s) / 2);
  return idx < irreps_.size() ? idx : npos;
}

std::vector<std::pair<std::size_t, int>> SchurLayout::delta_block(
    int delta) const {
  std::vector<std::pair<std::size_t, int>> out;
  for (std::size_t i = 0; i < irreps_.size(); ++i) {
    const IrrepLabel& ir = irreps_[i];
    // Need both q and q + delta inside [-s, s].
    for (int two_q = ir.two_s; two_q >= -ir.two_s; two_q -= 2) {
      int two_qp = two_q + 2 * delta;
      if (two_qp > ir.two_s || two_qp < -ir.two_s) continue;
      out.emplace_back(i, two_q);
    }
  }
  return out;
}

const SchurLayout& SchurLayout::get(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<SchurLayout>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<SchurLayout>(n);
  return *slot;
}

// ---------------------------------------------------------------------------
// PIVector

PIVector PIVector::zero(Basis basis, int n) {
  check_n(n);
  PIVector v;
  v.basis = basis;
  v.n = n;
  v.coeffs = Eigen::VectorXcd::Zero(
      static_cast<Eigen::Index>(pi_dimension(n)));
  return v;
}

std::complex<double> pi_inner(const PIVector& a, const PIVector& b) {
  if (a.basis != b.basis || a.n != b.n) {
    throw std::invalid_argument("inner product requires matching basis and n");
  }
  return a.coeffs.dot(b.coeffs);
}

// ---------------------------------------------------------------------------
// ObservableSpec

ObservableSpec ObservableSpec::pauli_string(std::string letters) {
  ObservableSpec s;
  s.kind = Kind::PauliString;
  for (char& c : letters) c = static_cast<char>(std::toupper(c));
  for (char c : letters) {
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      throw std::invalid_argument("Pauli string letters must be I, X, Y, Z");
    }
  }
  s.pauli = std::move(letters);
  return s;
}

ObservableSpec ObservableSpec::axis_string(char axis, int weight) {
  axis = static_cast<char>(std::toupper(axis));
  if (axis != 'X' && axis != 'Y' && axis != 'Z') {
    throw std::invalid_argument("axis must be X, Y or Z");
  }
  if (weight < 1) throw std::invalid_argument("axis string weight must be >= 1");
  ObservableSpec s;
  s.kind = Kind::AxisString;
  s.axis = axis;
  s.weight = weight;
  return s;
}

ObservableSpec ObservableSpec::hamming_projector(int h) {
  if (h < 0) throw std::invalid_argument("weight class must be >= 0");
  ObservableSpec s;
  s.kind = Kind::HammingProjector;
  s.h = h;
  return s;
}

ObservableSpec ObservableSpec::ghz_projector() {
  ObservableSpec s;
  s.kind = Kind::GhzProjector;
  return s;
}

ObservableSpec ObservableSpec::raw_vector(PIVector v) {
  ObservableSpec s;
  s.kind = Kind::RawPIVector;
  s.raw = std::move(v);
  return s;
}

std::string ObservableSpec::id() const {
  switch (kind) {
    case Kind::PauliString:
      return "pauli:" + pauli;
    case Kind::AxisString:
      return std::string("axis:") + axis + ":" + std::to_string(weight);
    case Kind::HammingProjector:
      return "hamming:" + std::to_string(h);
    case Kind::GhzProjector:
      return "ghz-proj";
    case Kind::RawPIVector:
      return "pivec";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Overlaps and weight-class data

double pauli_overlap(const std::string& pauli, const Composition& k, int n) {
  check_n(n);
  if (static_cast<int>(pauli.size()) != n) {
    throw std::invalid_argument("Pauli string length must equal n");
  }
  if (k.n() != n) throw std::invalid_argument("composition does not sum to n");
  Composition c{0, 0, 0, 0};
  for (char letter : pauli) {
    switch (std::toupper(letter)) {
      case 'X': ++c.kx; break;
      case 'Y': ++c.ky; break;
      case 'Z': ++c.kz; break;
      case 'I': ++c.ki; break;
      default:
        throw std::invalid_argument("Pauli string letters must be I, X, Y, Z");
    }
  }
  if (!(c == k)) return 0.0;
  double log_val = n * kLog2 + log_factorial(k.kx) + log_factorial(k.ky) +
                   log_factorial(k.kz) + log_factorial(k.ki) -
                   log_factorial(n);
  return std::exp(0.5 * log_val);
}

HammingAlpha hamming_alpha(int h, int m, int n) {
  check_n(n);
  if (h < 0 || h > n || m < 0 || m > n) {
    throw std::invalid_argument("hamming_alpha requires 0 <= h, m <= n");
  }
  double a = 0.0;
  int lo = std::max(0, h - (n - m));
  int hi = std::min(m, h);
  for (int l = lo; l <= hi; ++l) {
    double t = binomial(m, l) * binomial(n - m, h - l);
    a += ((m - l) % 2 == 0) ? t : -t;
  }
  HammingAlpha out;
  out.a = a;
  out.alpha = std::exp(0.5 * (log_binomial(n, m) - n * kLog2)) * a;
  return out;
}

Eigen::Vector3d z_axis_components(const EulerAngles& theta) {
  double s2 = std::sin(theta.theta2);
  return Eigen::Vector3d(s2 * std::cos(theta.theta1),
                         s2 * std::sin(theta.theta1),
                         std::cos(theta.theta2));
}

// ---------------------------------------------------------------------------
// Projectors

PIVector rotated_projector_pauli(const EulerAngles& theta, int h, int n) {
  check_n(n);
  if (h < 0 || h > n) throw std::invalid_argument("weight class out of range");
  PIVector v = PIVector::zero(Basis::PauliPI, n);
  Eigen::Vector3d z = z_axis_components(theta);

  // Power tables and the Krawtchouk row a(h, m), m = 0..n.
  std::vector<double> px(n + 1), py(n + 1), pz(n + 1), arow(n + 1);
  px[0] = py[0] = pz[0] = 1.0;
  for (int j = 1; j <= n; ++j) {
    px[j] = px[j - 1] * z[0];
    py[j] = py[j - 1] * z[1];
    pz[j] = pz[j - 1] * z[2];
  }
  for (int m = 0; m <= n; ++m) arow[m] = hamming_alpha(h, m, n).a;

  const auto& comps = enumerate_compositions(n);
  double logn = log_factorial(n);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const Composition& k = comps[i];
    double log_pref = logn - log_factorial(k.kx) - log_factorial(k.ky) -
                      log_factorial(k.kz) - log_factorial(k.ki) - n * kLog2;
    double val = std::exp(0.5 * log_pref) * arow[n - k.ki] * px[k.kx] *
                 py[k.ky] * pz[k.kz];
    v.coeffs[static_cast<Eigen::Index>(i)] = val;
  }
  return v;
}

PIVector projector_schur_vector(int h, int n) {
  check_n(n);
  if (h < 0 || h > n) throw std::invalid_argument("weight class out of range");
  const SchurLayout& lay = SchurLayout::get(n);
  PIVector v = PIVector::zero(Basis::SchurPI, n);
  int two_p = 2 * h - n;
  for (std::size_t i = 0; i < lay.irreps().size(); ++i) {
    const IrrepLabel& ir = lay.irreps()[i];
    if (!ir.contains_two_q(two_p)) continue;
    v.coeffs[static_cast<Eigen::Index>(lay.index(i, two_p, two_p))] =
        std::exp(0.5 * ir.log_dim_t);
  }
  return v;
}

PIVector rotated_projector_schur(const EulerAngles& theta, int h, int n) {
  check_n(n);
  if (h < 0 || h > n) throw std::invalid_argument("weight class out of range");
  const SchurLayout& lay = SchurLayout::get(n);
  PIVector v = PIVector::zero(Basis::SchurPI, n);
  int two_p = 2 * h - n;
  const std::complex<double> i_unit(0.0, 1.0);

  for (std::size_t i = 0; i < lay.irreps().size(); ++i) {
    const IrrepLabel& ir = lay.irreps()[i];
    if (!ir.contains_two_q(two_p)) continue;
    int m = ir.mult;
    const WignerTable& wt = WignerTable::shared(ir.two_s);
    WignerTable::Scratch scratch;
    Eigen::VectorXd row(m);
    // row[a] = d_{p, q_a}(-theta2) = d_{q_a, p}(theta2), q_a = s - a.
    wt.row(-theta.theta2, two_p, scratch, row);
    double sd = std::exp(0.5 * ir.log_dim_t);
    for (int a = 0; a < m; ++a) {
      int two_q = ir.two_s - 2 * a;
      for (int b = 0; b < m; ++b) {
        int two_qp = ir.two_s - 2 * b;
        double phase = 0.5 * theta.theta1 * (two_qp - two_q);
        v.coeffs[static_cast<Eigen::Index>(lay.index(i, two_q, two_qp))] =
            sd * row[a] * row[b] *
            std::exp(i_unit * phase);
      }
    }
  }
  return v;
}

PIVector rotate_schur(const PIVector& v, const EulerAngles& theta) {
  if (v.basis != Basis::SchurPI) {
    throw std::invalid_argument("rotate_schur requires a SchurPI vector");
  }
  const SchurLayout& lay = SchurLayout::get(v.n);
  PIVector out = PIVector::zero(Basis::SchurPI, v.n);
  const std::complex<double> i_unit(0.0, 1.0);

  for (std::size_t i = 0; i < lay.irreps().size(); ++i) {
    const IrrepLabel& ir = lay.irreps()[i];
    int m = ir.mult;
    Eigen::Index off = static_cast<Eigen::Index>(lay.block_offset(i));
    // Block storage is row-major (bra index major); the column-major map is
    // therefore the transpose of the coefficient matrix.
    Eigen::Map<const Eigen::MatrixXcd> a_in(v.coeffs.data() + off, m, m);
    Eigen::MatrixXcd A = a_in.transpose();

    const WignerTable& wt = WignerTable::shared(ir.two_s);
    Eigen::MatrixXd small_d = wt.matrix(theta.theta2);
    Eigen::MatrixXcd D(m, m);
    for (int r = 0; r < m; ++r) {
      int two_q = ir.two_s - 2 * r;
      std::complex<double> ph1 = std::exp(-i_unit * (0.5 * theta.theta1) *
                                          double(two_q));
      for (int c = 0; c < m; ++c) {
        int two_a = ir.two_s - 2 * c;
        std::complex<double> ph3 = std::exp(-i_unit * (0.5 * theta.theta3) *
                                            double(two_a));
        D(r, c) = ph1 * small_d(r, c) * ph3;
      }
    }
    Eigen::MatrixXcd Ap = D * A * D.adjoint();
    Eigen::Map<Eigen::MatrixXcd> a_out(out.coeffs.data() + off, m, m);
    a_out = Ap.transpose();
  }
  return out;
}

// ---------------------------------------------------------------------------
// GHZ state

PIVector ghz_state(int n, Basis basis) {
  check_n(n);
  if (basis == Basis::SchurPI) {
    const SchurLayout& lay = SchurLayout::get(n);
    PIVector v = PIVector::zero(Basis::SchurPI, n);
    // Only the fully symmetric sector (d_lambda = 1) is populated.
    std::size_t top = lay.irrep_by_two_s(n);
    for (int two_q : {n, -n}) {
      for (int two_qp : {n, -n}) {
        v.coeffs[static_cast<Eigen::Index>(lay.index(top, two_q, two_qp))] =
            0.5;
      }
    }
    return v;
  }

  PIVector v = PIVector::zero(Basis::PauliPI, n);
  for (int m = 0; m <= n; m += 2) {
    Composition k{0, 0, m, n - m};
    double c = std::exp(0.5 * (log_binomial(n, m) - n * kLog2));
    v.coeffs[static_cast<Eigen::Index>(composition_index(k, n))] = c;
  }
  for (int ky = 0; ky <= n; ky += 2) {
    Composition k{n - ky, ky, 0, 0};
    double c = std::exp(0.5 * (log_binomial(n, ky) - n * kLog2));
    if ((ky / 2) % 2 != 0) c = -c;
    v.coeffs[static_cast<Eigen::Index>(composition_index(k, n))] += c;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Pauli string -> SchurPI (letter-placement recursion, n <= 10)

namespace {

// H(r, a, b) accumulates, over all arrangements of the letter multiset r on
// |r| qubits and over all bra/ket bitstrings with a (resp. b) ones, the
// product of single-qubit matrix elements <x|L|y>. The Dicke-block overlap
// of an averaged string is H(r, a, b) / sqrt(C(|r|,a) C(|r|,b)).
class PlacementTable {
 public:
  explicit PlacementTable(const Composition& k)
      : kx_(k.kx), ky_(k.ky), kz_(k.kz), ki_(k.ki) {
    dims_ = {kx_ + 1, ky_ + 1, kz_ + 1, ki_ + 1};
    int total = dims_[0] * dims_[1] * dims_[2] * dims_[3];
    int nmax = k.n();
    tables_.assign(static_cast<std::size_t>(total),
                   Eigen::MatrixXcd());
    // Fill in order of increasing |r| so dependencies exist.
    for (int sz = 0; sz <= nmax; ++sz) {
      for (int rx = 0; rx <= kx_; ++rx) {
        for (int ry = 0; ry <= ky_; ++ry) {
          for (int rz = 0; rz <= kz_; ++rz) {
            int ri = sz - rx - ry - rz;
            if (ri < 0 || ri > ki_) continue;
            fill(rx, ry, rz, ri);
          }
        }
      }
    }
  }

  const Eigen::MatrixXcd& get(int rx, int ry, int rz, int ri) const {
    return tables_[idx(rx, ry, rz, ri)];
  }

 private:
  std::size_t idx(int rx, int ry, int rz, int ri) const {
    return static_cast<std::size_t>(
        ((rx * dims_[1] + ry) * dims_[2] + rz) * dims_[3] + ri);
  }

  void fill(int rx, int ry, int rz, int ri) {
    int sz = rx + ry + rz + ri;
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(sz + 1, sz + 1);
    if (sz == 0) {
      t(0, 0) = 1.0;
      tables_[idx(0, 0, 0, 0)] = std::move(t);
      return;
    }
    const std::complex<double> iu(0.0, 1.0);
    auto add = [&](const Eigen::MatrixXcd& prev, int dx, int dy,
                   std::complex<double> w) {
      for (int a = dx; a <= sz; ++a) {
        if (a - dx >= prev.rows()) continue;
        for (int b = dy; b <= sz; ++b) {
          if (b - dy >= prev.cols()) continue;
          t(a, b) += w * prev(a - dx, b - dy);
        }
      }
    };
    if (ri > 0) {
      const auto& p = get(rx, ry, rz, ri - 1);
      add(p, 0, 0, 1.0);   // <0|I|0>
      add(p, 1, 1, 1.0);   // <1|I|1>
    }
    if (rz > 0) {
      const auto& p = get(rx, ry, rz - 1, ri);
      add(p, 0, 0, 1.0);   // <0|Z|0>
      add(p, 1, 1, -1.0);  // <1|Z|1>
    }
    if (rx > 0) {
      const auto& p = get(rx - 1, ry, rz, ri);
      add(p, 0, 1, 1.0);   // <0|X|1>
      add(p, 1, 0, 1.0);   // <1|X|0>
    }
    if (ry > 0) {
      const auto& p = get(rx, ry - 1, rz, ri);
      add(p, 0, 1, -iu);   // <0|Y|1>
      add(p, 1, 0, iu);    // <1|Y|0>
    }
    tables_[idx(rx, ry, rz, ri)] = std::move(t);
  }

  int kx_, ky_, kz_, ki_;
  std::array<int, 4> dims_;
  std::vector<Eigen::MatrixXcd> tables_;
};

PIVector pauli_string_to_schur(const std::string& pauli, int n) {
  if (n > 10) {
    throw std::invalid_argument(
        "literal Pauli strings in the Schur basis are supported for n <= 10 "
        "only (the conversion enumerates letter placements); use the "
        "PauliPI basis or an axis string instead");
  }
  Composition k{0, 0, 0, 0};
  for (char letter : pauli) {
    switch (std::toupper(letter)) {
      case 'X': ++k.kx; break;
      case 'Y': ++k.ky; break;
      case 'Z': ++k.kz; break;
      default: ++k.ki; break;
    }
  }
  PlacementTable table(k);
  const SchurLayout& lay = SchurLayout::get(n);
  PIVector v = PIVector::zero(Basis::SchurPI, n);
  double log_strings = log_factorial(n) - log_factorial(k.kx) -
                       log_factorial(k.ky) - log_factorial(k.kz) -
                       log_factorial(k.ki);

  for (std::size_t i = 0; i < lay.irreps().size(); ++i) {
    const IrrepLabel& ir = lay.irreps()[i];
    int pairs = ir.lambda2;
    int two_s = ir.two_s;
    int m = ir.mult;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(m, m);

    // Distribute matched letter pairs onto the singlet positions; each
    // non-identity pair contributes a factor -1.
    for (int pi = 0; pi <= pairs; ++pi) {
      if (2 * pi > k.ki) continue;
      for (int px = 0; px + pi <= pairs; ++px) {
        if (2 * px > k.kx) continue;
        for (int py = 0; px + py + pi <= pairs; ++py) {
          if (2 * py > k.ky) continue;
          int pz = pairs - pi - px - py;
          if (2 * pz > k.kz) continue;
          double log_ways = log_factorial(pairs) - log_factorial(pi) -
                            log_factorial(px) - log_factorial(py) -
                            log_factorial(pz);
          double sign = ((pairs - pi) % 2 == 0) ? 1.0 : -1.0;
          const Eigen::MatrixXcd& h =
              table.get(k.kx - 2 * px, k.ky - 2 * py, k.kz - 2 * pz,
                        k.ki - 2 * pi);
          double w = sign * std::exp(log_ways - log_strings);
          // h is (two_s + 1) x (two_s + 1): bra/ket one-counts.
          for (int a = 0; a <= two_s; ++a) {
            double na = std::exp(-0.5 * log_binomial(two_s, a));
            for (int b = 0; b <= two_s; ++b) {
              double nb = std::exp(-0.5 * log_binomial(two_s, b));
              acc(a, b) += w * na * nb * h(a, b);
            }
          }
        }
      }
    }

    double sd = std::exp(0.5 * ir.log_dim_t);
    Eigen::Index off = static_cast<Eigen::Index>(lay.block_offset(i));
    for (int a = 0; a <= two_s; ++a) {
      for (int b = 0; b <= two_s; ++b) {
        // Row index a corresponds to q = s - a (bra), column b to q' (ket).
        v.coeffs[off + a * m + b] = sd * acc(a, b);
      }
    }
  }
  return v;
}

Composition axis_composition(char axis, int weight, int n) {
  Composition k{0, 0, 0, n - weight};
  switch (axis) {
    case 'X': k.kx = weight; break;
    case 'Y': k.ky = weight; break;
    default: k.kz = weight; break;
  }
  return k;
}

PIVector axis_string_schur_z(int weight, int n) {
  const SchurLayout& lay = SchurLayout::get(n);
  PIVector v = PIVector::zero(Basis::SchurPI, n);
  for (int h = 0; h <= n; ++h) {
    int two_p = 2 * h - n;
    double a = hamming_alpha(h, weight, n).a;
    if (a == 0.0) continue;
    double base = a * std::exp(-log_binomial(n, h));
    for (std::size_t i = 0; i < lay.irreps().size(); ++i) {
      const IrrepLabel& ir = lay.irreps()[i];
      if (!ir.contains_two_q(two_p)) continue;
      v.coeffs[static_cast<Eigen::Index>(lay.index(i, two_p, two_p))] +=
          base * std::exp(0.5 * ir.log_dim_t);
    }
  }
  return v;
}

}  // namespace

PIVector observable_to_pivector(const ObservableSpec& spec, int n,
                                Basis basis) {
  check_n(n);
  switch (spec.kind) {
    case ObservableSpec::Kind::PauliString: {
      if (static_cast<int>(spec.pauli.size()) != n) {
        throw std::invalid_argument("Pauli string length must equal n");
      }
      if (basis == Basis::PauliPI) {
        PIVector v = PIVector::zero(Basis::PauliPI, n);
        Composition k{0, 0, 0, 0};
        for (char letter : spec.pauli) {
          switch (letter) {
            case 'X': ++k.kx; break;
            case 'Y': ++k.ky; break;
            case 'Z': ++k.kz; break;
            default: ++k.ki; break;
          }
        }
        v.coeffs[static_cast<Eigen::Index>(composition_index(k, n))] =
            pauli_overlap(spec.pauli, k, n);
        return v;
      }
      return pauli_string_to_schur(spec.pauli, n);
    }
    case ObservableSpec::Kind::AxisString: {
      if (spec.weight > n) {
        throw std::invalid_argument("axis string weight exceeds n");
      }
      if (basis == Basis::PauliPI) {
        PIVector v = PIVector::zero(Basis::PauliPI, n);
        Composition k = axis_composition(spec.axis, spec.weight, n);
        double c = std::exp(
            0.5 * (n * kLog2 - log_binomial(n, spec.weight)));
        v.coeffs[static_cast<Eigen::Index>(composition_index(k, n))] = c;
        return v;
      }
      PIVector z = axis_string_schur_z(spec.weight, n);
      if (spec.axis == 'Z') return z;
      if (spec.axis == 'X') {
        return rotate_schur(z, EulerAngles{0.0, M_PI / 2, 0.0});
      }
      return rotate_schur(z, EulerAngles{M_PI / 2, M_PI / 2, 0.0});
    }
    case ObservableSpec::Kind::HammingProjector: {
      if (spec.h > n) {
        throw std::invalid_argument("weight class out of range");
      }
      if (basis == Basis::SchurPI) return projector_schur_vector(spec.h, n);
      PIVector v = PIVector::zero(Basis::PauliPI, n);
      for (int m = 0; m <= n; ++m) {
        Composition k{0, 0, m, n - m};
        v.coeffs[static_cast<Eigen::Index>(composition_index(k, n))] =
            hamming_alpha(spec.h, m, n).alpha;
      }
      return v;
    }
    case ObservableSpec::Kind::GhzProjector:
      return ghz_state(n, basis);
    case ObservableSpec::Kind::RawPIVector: {
      if (spec.raw.n != n) {
        throw std::invalid_argument("raw vector has mismatched n");
      }
      if (spec.raw.basis != basis) {
        throw std::invalid_argument(
            "raw vector basis does not match the requested basis");
      }
      return spec.raw;
    }
  }
  throw std::invalid_argument("unknown observable kind");
}

}  // namespace pishadow
