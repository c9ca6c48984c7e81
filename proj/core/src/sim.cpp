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

#include "pishadow/sim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "parallel.hpp"
#include "pishadow/util.hpp"

namespace pishadow {

namespace {

constexpr double kTwoPi = 6.283185307179586477;
constexpr double kNegTol = 1e-10;
constexpr double kSumTol = 1e-9;

using Matrix2 = Eigen::Matrix2cd;
const std::complex<double> kI(0.0, 1.0);

Matrix2 rz(double a) {
  Matrix2 m = Matrix2::Zero();
  m(0, 0) = std::exp(-kI * (a / 2));
  m(1, 1) = std::exp(kI * (a / 2));
  return m;
}

Matrix2 ry(double a) {
  Matrix2 m;
  double c = std::cos(a / 2), s = std::sin(a / 2);
  m << c, -s, s, c;
  return m;
}

Matrix2 euler_matrix(const EulerAngles& t) {
  return rz(t.theta1) * ry(t.theta2) * rz(t.theta3);
}

int checked_n_from_psi(const Eigen::VectorXcd& psi) {
  Eigen::Index dim = psi.size();
  int n = 0;
  while ((Eigen::Index(1) << n) < dim) ++n;
  if ((Eigen::Index(1) << n) != dim || n < 1) {
    throw std::invalid_argument("state vector length must be a power of two");
  }
  if (n > 12) {
    throw std::invalid_argument("dense baseline is limited to n <= 12");
  }
  return n;
}

void apply_single_qubit(Eigen::VectorXcd& psi, const Matrix2& g, int qubit,
                        int n) {
  // Qubit 0 is the leftmost factor (most significant bit of the index).
  Eigen::Index stride = Eigen::Index(1) << (n - 1 - qubit);
  for (Eigen::Index base = 0; base < psi.size(); base += 2 * stride) {
    for (Eigen::Index k = 0; k < stride; ++k) {
      auto a = psi[base + k];
      auto b = psi[base + k + stride];
      psi[base + k] = g(0, 0) * a + g(0, 1) * b;
      psi[base + k + stride] = g(1, 0) * a + g(1, 1) * b;
    }
  }
}

int sample_index(const std::vector<double>& p, double u) {
  double acc = 0.0;
  int last = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) last = static_cast<int>(i);
    acc += p[i];
    if (u < acc) return static_cast<int>(i);
  }
  return last;
}

/// Clips tiny negative probabilities to zero, renormalizes, and raises
/// NumericalError when the vector is further from a distribution than the
/// guaranteed envelope allows.
void fix_distribution(std::vector<double>& p) {
  double sum = 0.0;
  for (double& x : p) {
    if (x < 0.0) {
      if (x < -kNegTol) {
        std::ostringstream msg;
        msg << "outcome probability " << x << " below tolerance";
        throw NumericalError(msg.str());
      }
      x = 0.0;
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > kSumTol) {
    std::ostringstream msg;
    msg << "outcome probabilities sum to " << sum;
    throw NumericalError(msg.str());
  }
  for (double& x : p) x /= sum;
}

}  // namespace

std::string protocol_name(Protocol p) {
  switch (p) {
    case Protocol::SymmPI: return "symm-pi";
    case Protocol::BlockCS: return "block";
    case Protocol::LC: return "lc";
  }
  return "unknown";
}

Protocol protocol_from_name(const std::string& name) {
  if (name == "symm-pi") return Protocol::SymmPI;
  if (name == "block") return Protocol::BlockCS;
  if (name == "lc") return Protocol::LC;
  throw std::invalid_argument("unknown protocol: " + name);
}

std::int64_t Dataset::shots() const {
  switch (protocol) {
    case Protocol::SymmPI: return static_cast<std::int64_t>(records.size());
    case Protocol::BlockCS:
      return static_cast<std::int64_t>(block_records.size());
    case Protocol::LC: return static_cast<std::int64_t>(lc_records.size());
  }
  return 0;
}

StateSpec StateSpec::ghz() {
  StateSpec s;
  s.kind = Kind::Ghz;
  return s;
}

StateSpec StateSpec::raw_state(PIVector v) {
  StateSpec s;
  s.kind = Kind::Raw;
  s.raw = std::move(v);
  return s;
}

PIVector StateSpec::pivector(int n, Basis basis) const {
  if (kind == Kind::Ghz) return ghz_state(n, basis);
  if (raw.n != n) throw std::invalid_argument("state has mismatched n");
  if (raw.basis != basis) {
    throw std::invalid_argument("state basis does not match requested basis");
  }
  return raw;
}

EulerAngles sample_euler(RecordRng& rng) {
  EulerAngles t;
  t.theta1 = kTwoPi * rng.uniform();
  t.theta2 = std::acos(1.0 - 2.0 * rng.uniform());
  t.theta3 = kTwoPi * rng.uniform();
  return t;
}

std::vector<double> outcome_distribution(const StateSpec& state, int n,
                                         const EulerAngles& theta,
                                         Basis path) {
  std::vector<double> p(static_cast<std::size_t>(n) + 1);
  if (path == Basis::PauliPI) {
    PIVector rho = state.pivector(n, Basis::PauliPI);
    for (int h = 0; h <= n; ++h) {
      PIVector proj = rotated_projector_pauli(theta, h, n);
      p[static_cast<std::size_t>(h)] = std::real(pi_inner(proj, rho));
    }
  } else {
    PIVector rho = state.pivector(n, Basis::SchurPI);
    // p(h) = Tr[Pi_h W^dag rho W]; rotate the state once, then read the
    // weight diagonals.
    EulerAngles inv{-theta.theta3, -theta.theta2, -theta.theta1};
    PIVector rot = rotate_schur(rho, inv);
    const SchurLayout& lay = SchurLayout::get(n);
    for (int h = 0; h <= n; ++h) {
      int two_p = 2 * h - n;
      double val = 0.0;
      for (std::size_t i = 0; i < lay.irreps().size(); ++i) {
        const IrrepLabel& ir = lay.irreps()[i];
        if (!ir.contains_two_q(two_p)) continue;
        val += std::exp(0.5 * ir.log_dim_t) *
               std::real(rot.coeffs[static_cast<Eigen::Index>(
                   lay.index(i, two_p, two_p))]);
      }
      p[static_cast<std::size_t>(h)] = val;
    }
  }
  fix_distribution(p);
  return p;
}

std::vector<double> ghz_distribution_fast(int n, const EulerAngles& theta) {
  if (n < 1) throw std::invalid_argument("qubit count must be positive");
  std::vector<double> p(static_cast<std::size_t>(n) + 1);
  double c = std::cos(theta.theta2 / 2);
  double s = std::sin(theta.theta2 / 2);
  double logc = (c > 0.0) ? std::log(c) : -HUGE_VAL;
  double logs = (s > 0.0) ? std::log(s) : -HUGE_VAL;
  double cosn = std::cos(n * theta.theta1);
  for (int h = 0; h <= n; ++h) {
    double lc = log_binomial(n, h);
    double la = (h == 0 ? 0.0 : h * logc) + (h == n ? 0.0 : (n - h) * logs);
    double lb = (h == 0 ? 0.0 : h * logs) + (h == n ? 0.0 : (n - h) * logc);
    double t1 = std::exp(lc + 2.0 * la);
    double t2 = std::exp(lc + 2.0 * lb);
    double cross = 2.0 * std::exp(lc + la + lb) * cosn;
    if ((n - h) % 2 != 0) cross = -cross;
    p[static_cast<std::size_t>(h)] = 0.5 * (t1 + t2 + cross);
  }
  fix_distribution(p);
  return p;
}

Dataset draw_dataset(const StateSpec& state, int n, std::int64_t shots,
                     std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shot count must be positive");
  Dataset ds;
  ds.n = n;
  ds.protocol = Protocol::SymmPI;
  ds.seed = seed;
  ds.records.resize(static_cast<std::size_t>(shots));

  bool ghz = (state.kind == StateSpec::Kind::Ghz);
  detail::parallel_chunks(
      static_cast<std::size_t>(shots), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
          RecordRng rng(seed, i);
          EulerAngles t = sample_euler(rng);
          std::vector<double> p =
              ghz ? ghz_distribution_fast(n, t)
                  : outcome_distribution(state, n, t, state.raw.basis);
          double u = rng.uniform();
          ds.records[i] = MeasurementRecord{t, sample_index(p, u)};
        }
      });
  return ds;
}

// ---------------------------------------------------------------------------
// Block protocol

namespace {

struct SectorDecomp {
  std::vector<double> probs;              // per irrep
  std::vector<Eigen::MatrixXcd> rho;      // normalized multiplicity states
};

SectorDecomp decompose_sectors(const StateSpec& state, int n) {
  const SchurLayout& lay = SchurLayout::get(n);
  PIVector rho = state.pivector(n, Basis::SchurPI);
  SectorDecomp out;
  out.probs.resize(lay.irreps().size(), 0.0);
  out.rho.resize(lay.irreps().size());
  for (std::size_t i = 0; i < lay.irreps().size(); ++i) {
    const IrrepLabel& ir = lay.irreps()[i];
    int m = ir.mult;
    Eigen::Map<const Eigen::MatrixXcd> blk(
        rho.coeffs.data() + lay.block_offset(i), m, m);
    // Row-major storage: the map is the transpose of the coefficient matrix.
    Eigen::MatrixXcd tau =
        std::exp(0.5 * ir.log_dim_t) * blk.transpose();
    double p = tau.real().trace();
    if (p < -kNegTol) {
      throw NumericalError("negative sector probability in block sampler");
    }
    p = std::max(p, 0.0);
    out.probs[i] = p;
    if (p > 0.0) out.rho[i] = tau / p;
  }
  double sum = 0.0;
  for (double p : out.probs) sum += p;
  if (std::abs(sum - 1.0) > kSumTol) {
    throw NumericalError("sector probabilities do not sum to one");
  }
  for (double& p : out.probs) p /= sum;
  return out;
}

Eigen::MatrixXcd haar_unitary(int m, RecordRng& rng) {
  Eigen::MatrixXcd z(m, m);
  for (int c = 0; c < m; ++c) {
    for (int r = 0; r < m; ++r) {
      double re = rng.normal();
      double im = rng.normal();
      z(r, c) = std::complex<double>(re, im);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(m, m);
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < m; ++i) {
    std::complex<double> d = r(i, i);
    double a = std::abs(d);
    q.col(i) *= (a > 0.0) ? (d / a) : 1.0;
  }
  return q;
}

struct BlockShot {
  std::size_t irrep_idx = 0;
  int outcome = 0;
  Eigen::MatrixXcd v;
};

BlockShot block_shot(const SectorDecomp& decomp, const SchurLayout& lay,
                     RecordRng& rng) {
  BlockShot shot;
  double u = rng.uniform();
  double acc = 0.0;
  std::size_t pick = 0;
  for (std::size_t i = 0; i < decomp.probs.size(); ++i) {
    if (decomp.probs[i] > 0.0) pick = i;
    acc += decomp.probs[i];
    if (u < acc) { pick = i; break; }
  }
  shot.irrep_idx = pick;
  int m = lay.irreps()[pick].mult;
  shot.v = haar_unitary(m, rng);
  std::vector<double> pj(static_cast<std::size_t>(m));
  const Eigen::MatrixXcd& rho = decomp.rho[pick];
  for (int j = 0; j < m; ++j) {
    pj[static_cast<std::size_t>(j)] =
        std::real((shot.v.row(j) * rho * shot.v.row(j).adjoint())(0, 0));
  }
  fix_distribution(pj);
  shot.outcome = sample_index(pj, rng.uniform());
  return shot;
}

/// Per-sector observable matrices O_lambda(q,q') = o_{lambda q q'} /
/// sqrt(d_lambda) together with their traces.
struct SectorObservable {
  std::vector<Eigen::MatrixXcd> mats;
  std::vector<std::complex<double>> traces;
};

SectorObservable sector_observable(const PIVector& obs, int n) {
  if (obs.basis != Basis::SchurPI || obs.n != n) {
    throw std::invalid_argument(
        "block estimation requires a SchurPI observable for this n");
  }
  const SchurLayout& lay = SchurLayout::get(n);
  SectorObservable so;
  so.mats.resize(lay.irreps().size());
  so.traces.resize(lay.irreps().size());
  for (std::size_t i = 0; i < lay.irreps().size(); ++i) {
    const IrrepLabel& ir = lay.irreps()[i];
    int m = ir.mult;
    Eigen::Map<const Eigen::MatrixXcd> blk(
        obs.coeffs.data() + lay.block_offset(i), m, m);
    so.mats[i] = std::exp(-0.5 * ir.log_dim_t) * blk.transpose();
    so.traces[i] = so.mats[i].trace();
  }
  return so;
}

double block_estimate_shot(const BlockShot& shot, const SectorObservable& so) {
  const Eigen::MatrixXcd& o = so.mats[shot.irrep_idx];
  int m = static_cast<int>(o.rows());
  auto row = shot.v.row(shot.outcome);
  std::complex<double> val = (row * o * row.adjoint())(0, 0);
  return (m + 1) * std::real(val) - std::real(so.traces[shot.irrep_idx]);
}

}  // namespace

Dataset draw_dataset_block(const StateSpec& state, int n, std::int64_t shots,
                           std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shot count must be positive");
  const SchurLayout& lay = SchurLayout::get(n);
  SectorDecomp decomp = decompose_sectors(state, n);
  Dataset ds;
  ds.n = n;
  ds.protocol = Protocol::BlockCS;
  ds.seed = seed;
  ds.block_records.resize(static_cast<std::size_t>(shots));
  detail::parallel_chunks(
      static_cast<std::size_t>(shots), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
          RecordRng rng(seed, i);
          BlockShot shot = block_shot(decomp, lay, rng);
          ds.block_records[i] = BlockRecord{
              lay.irreps()[shot.irrep_idx].lambda2, shot.outcome};
        }
      });
  return ds;
}

std::vector<double> simulate_block_cs(const StateSpec& state,
                                      const PIVector& obs_schur, int n,
                                      std::int64_t shots,
                                      std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shot count must be positive");
  const SchurLayout& lay = SchurLayout::get(n);
  SectorDecomp decomp = decompose_sectors(state, n);
  SectorObservable so = sector_observable(obs_schur, n);
  std::vector<double> est(static_cast<std::size_t>(shots));
  detail::parallel_chunks(
      static_cast<std::size_t>(shots), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
          RecordRng rng(seed, i);
          BlockShot shot = block_shot(decomp, lay, rng);
          est[i] = block_estimate_shot(shot, so);
        }
      });
  return est;
}

std::vector<double> block_estimates(const Dataset& ds, const StateSpec& state,
                                    const PIVector& obs_schur) {
  if (ds.protocol != Protocol::BlockCS) {
    throw std::invalid_argument("dataset does not hold block records");
  }
  const SchurLayout& lay = SchurLayout::get(ds.n);
  SectorDecomp decomp = decompose_sectors(state, ds.n);
  SectorObservable so = sector_observable(obs_schur, ds.n);
  std::vector<double> est(ds.block_records.size());
  detail::parallel_chunks(
      ds.block_records.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
          RecordRng rng(ds.seed, i);
          BlockShot shot = block_shot(decomp, lay, rng);
          const BlockRecord& rec = ds.block_records[i];
          if (lay.irreps()[shot.irrep_idx].lambda2 != rec.lambda2 ||
              shot.outcome != rec.outcome) {
            throw NumericalError(
                "block record replay mismatch; dataset does not match the "
                "seed and state");
          }
          est[i] = block_estimate_shot(shot, so);
        }
      });
  return est;
}

// ---------------------------------------------------------------------------
// Local-Clifford baseline

const std::vector<Matrix2>& single_qubit_cliffords() {
  static const std::vector<Matrix2> group = [] {
    auto canonical = [](Matrix2 m) {
      // Fix the global phase by making the first sizable entry positive
      // real, scanning in row-major order.
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          std::complex<double> z = m(r, c);
          if (std::abs(z) > 1e-9) {
            m *= std::conj(z) / std::abs(z);
            return m;
          }
        }
      }
      return m;
    };
    auto key = [](const Matrix2& m) {
      char buf[200];
      std::snprintf(buf, sizeof(buf), "%.6f,%.6f;%.6f,%.6f;%.6f,%.6f;%.6f,%.6f",
                    m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(),
                    m(0, 1).imag(), m(1, 0).real(), m(1, 0).imag(),
                    m(1, 1).real(), m(1, 1).imag());
      // Avoid distinct keys for +0 and -0.
      std::string s(buf);
      std::size_t pos = 0;
      while ((pos = s.find("-0.000000", pos)) != std::string::npos) {
        s.replace(pos, 9, "0.000000");
      }
      return s;
    };

    Matrix2 h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    Matrix2 s = Matrix2::Zero();
    s(0, 0) = 1.0;
    s(1, 1) = kI;

    std::map<std::string, Matrix2> seen;
    std::vector<Matrix2> frontier{canonical(Matrix2::Identity())};
    seen[key(frontier[0])] = frontier[0];
    while (!frontier.empty()) {
      std::vector<Matrix2> next;
      for (const Matrix2& g : frontier) {
        for (const Matrix2* gen : {&h, &s}) {
          Matrix2 prod = canonical((*gen) * g);
          std::string k = key(prod);
          if (!seen.count(k)) {
            seen[k] = prod;
            next.push_back(prod);
          }
        }
      }
      frontier = std::move(next);
    }
    std::vector<Matrix2> out;
    out.reserve(seen.size());
    for (auto& [k, m] : seen) out.push_back(m);
    if (out.size() != 24) {
      throw std::logic_error("single-qubit Clifford closure has wrong size");
    }
    return out;
  }();
  return group;
}

Eigen::VectorXcd dense_ghz_vector(int n) {
  if (n < 1) throw std::invalid_argument("qubit count must be positive");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index(1) << n);
  double a = 1.0 / std::sqrt(2.0);
  psi[0] = a;
  psi[psi.size() - 1] = a;
  return psi;
}

namespace {

std::string measure_bits(const Eigen::VectorXcd& rotated, RecordRng& rng,
                         int n) {
  double u = rng.uniform();
  double acc = 0.0;
  Eigen::Index pick = rotated.size() - 1;
  for (Eigen::Index i = 0; i < rotated.size(); ++i) {
    acc += std::norm(rotated[i]);
    if (u < acc) {
      pick = i;
      break;
    }
  }
  std::string bits(static_cast<std::size_t>(n), '0');
  for (int q = 0; q < n; ++q) {
    if ((pick >> (n - 1 - q)) & 1) bits[static_cast<std::size_t>(q)] = '1';
  }
  return bits;
}

/// Per (clifford, measured bit) snapshot data reused by every estimator:
/// pauli[P] = Tr[P (3 U^dag |b><b| U - I)] for P in {I,X,Y,Z}, and the
/// matrix elements needed for projector-type observables.
struct CliffordSnapshot {
  double pauli[2][4];
  double s0[2], s1[2];
  std::complex<double> flip[2];  // <1| (3 U^dag |b><b| U) |0>
};

const std::vector<CliffordSnapshot>& clifford_snapshots() {
  static const std::vector<CliffordSnapshot> table = [] {
    const auto& cl = single_qubit_cliffords();
    Matrix2 paulis[4];
    paulis[0] = Matrix2::Identity();
    paulis[1] << 0, 1, 1, 0;
    paulis[2] << 0, -kI, kI, 0;
    paulis[3] << 1, 0, 0, -1;
    std::vector<CliffordSnapshot> out(cl.size());
    for (std::size_t c = 0; c < cl.size(); ++c) {
      const Matrix2& u = cl[c];
      for (int b = 0; b < 2; ++b) {
        Matrix2 snap =
            3.0 * (u.adjoint().col(b) * u.row(b)) - Matrix2::Identity();
        for (int p = 0; p < 4; ++p) {
          out[c].pauli[b][p] = std::real((paulis[p] * snap).trace());
        }
        out[c].s0[b] = std::real(snap(0, 0));
        out[c].s1[b] = std::real(snap(1, 1));
        out[c].flip[b] = snap(1, 0);
      }
    }
    return out;
  }();
  return table;
}

int pauli_letter_index(char letter) {
  switch (letter) {
    case 'I': return 0;
    case 'X': return 1;
    case 'Y': return 2;
    case 'Z': return 3;
  }
  throw std::invalid_argument("bad Pauli letter");
}

double lc_observable_estimate(const ObservableSpec& obs, int n,
                              const std::vector<int>& cliffs,
                              const std::string& bits) {
  const auto& snap = clifford_snapshots();
  switch (obs.kind) {
    case ObservableSpec::Kind::PauliString: {
      double prod = 1.0;
      for (int q = 0; q < n; ++q) {
        int b = bits[static_cast<std::size_t>(q)] - '0';
        prod *= snap[static_cast<std::size_t>(cliffs[q])]
                    .pauli[b][pauli_letter_index(obs.pauli[q])];
      }
      return prod;
    }
    case ObservableSpec::Kind::AxisString: {
      // Subset average: elementary symmetric polynomial over the per-qubit
      // single-letter values, divided by C(n, k).
      int k = obs.weight;
      int p = pauli_letter_index(obs.axis);
      std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
      e[0] = 1.0;
      for (int q = 0; q < n; ++q) {
        int b = bits[static_cast<std::size_t>(q)] - '0';
        double z = snap[static_cast<std::size_t>(cliffs[q])].pauli[b][p];
        for (int j = std::min(k, q + 1); j >= 1; --j) {
          e[static_cast<std::size_t>(j)] +=
              z * e[static_cast<std::size_t>(j - 1)];
        }
      }
      return e[static_cast<std::size_t>(k)] * std::exp(-log_binomial(n, k));
    }
    case ObservableSpec::Kind::GhzProjector: {
      double p00 = 1.0, p11 = 1.0;
      std::complex<double> cross = 1.0;
      for (int q = 0; q < n; ++q) {
        int b = bits[static_cast<std::size_t>(q)] - '0';
        const auto& s = snap[static_cast<std::size_t>(cliffs[q])];
        p00 *= s.s0[b];
        p11 *= s.s1[b];
        cross *= s.flip[b];
      }
      return 0.5 * (p00 + p11) + std::real(cross);
    }
    default:
      throw std::invalid_argument(
          "observable not supported by the local-Clifford baseline");
  }
}

std::vector<int> draw_cliffords(RecordRng& rng, int n) {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    out[static_cast<std::size_t>(q)] = static_cast<int>(rng.uniform_int(24));
  }
  return out;
}

}  // namespace

std::string sample_bitstring(const Eigen::VectorXcd& psi,
                             const EulerAngles& theta, RecordRng& rng) {
  int n = checked_n_from_psi(psi);
  Matrix2 w_dag = euler_matrix(theta).adjoint();
  Eigen::VectorXcd rotated = psi;
  for (int q = 0; q < n; ++q) apply_single_qubit(rotated, w_dag, q, n);
  return measure_bits(rotated, rng, n);
}

std::vector<std::vector<double>> simulate_lc_baseline(
    const Eigen::VectorXcd& psi, const std::vector<ObservableSpec>& obs,
    std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shot count must be positive");
  int n = checked_n_from_psi(psi);
  const auto& cl = single_qubit_cliffords();
  std::vector<std::vector<double>> est(
      obs.size(), std::vector<double>(static_cast<std::size_t>(shots)));
  detail::parallel_chunks(
      static_cast<std::size_t>(shots), [&](std::size_t b, std::size_t e) {
        Eigen::VectorXcd rotated(psi.size());
        for (std::size_t i = b; i < e; ++i) {
          RecordRng rng(seed, i);
          std::vector<int> cliffs = draw_cliffords(rng, n);
          rotated = psi;
          for (int q = 0; q < n; ++q) {
            apply_single_qubit(rotated, cl[static_cast<std::size_t>(
                                   cliffs[static_cast<std::size_t>(q)])],
                               q, n);
          }
          std::string bits = measure_bits(rotated, rng, n);
          for (std::size_t o = 0; o < obs.size(); ++o) {
            est[o][i] = lc_observable_estimate(obs[o], n, cliffs, bits);
          }
        }
      });
  return est;
}

Dataset draw_dataset_lc(const Eigen::VectorXcd& psi, std::int64_t shots,
                        std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shot count must be positive");
  int n = checked_n_from_psi(psi);
  const auto& cl = single_qubit_cliffords();
  Dataset ds;
  ds.n = n;
  ds.protocol = Protocol::LC;
  ds.seed = seed;
  ds.lc_records.resize(static_cast<std::size_t>(shots));
  detail::parallel_chunks(
      static_cast<std::size_t>(shots), [&](std::size_t b, std::size_t e) {
        Eigen::VectorXcd rotated(psi.size());
        for (std::size_t i = b; i < e; ++i) {
          RecordRng rng(seed, i);
          std::vector<int> cliffs = draw_cliffords(rng, n);
          rotated = psi;
          for (int q = 0; q < n; ++q) {
            apply_single_qubit(rotated, cl[static_cast<std::size_t>(
                                   cliffs[static_cast<std::size_t>(q)])],
                               q, n);
          }
          ds.lc_records[i] = measure_bits(rotated, rng, n);
        }
      });
  return ds;
}

std::vector<std::vector<double>> lc_estimates(
    const Dataset& ds, const std::vector<ObservableSpec>& obs) {
  if (ds.protocol != Protocol::LC) {
    throw std::invalid_argument("dataset does not hold baseline records");
  }
  std::vector<std::vector<double>> est(
      obs.size(), std::vector<double>(ds.lc_records.size()));
  detail::parallel_chunks(
      ds.lc_records.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
          RecordRng rng(ds.seed, i);
          std::vector<int> cliffs = draw_cliffords(rng, ds.n);
          for (std::size_t o = 0; o < obs.size(); ++o) {
            est[o][i] =
                lc_observable_estimate(obs[o], ds.n, cliffs, ds.lc_records[i]);
          }
        }
      });
  return est;
}

// ---------------------------------------------------------------------------
// Dataset I/O

void save_dataset(const Dataset& ds, const std::string& path) {
  std::ostringstream out;
  nlohmann::json meta;
  meta["format"] = 1;
  meta["n"] = ds.n;
  meta["protocol"] = protocol_name(ds.protocol);
  meta["seed"] = ds.seed;
  meta["shots"] = ds.shots();
  out << meta.dump() << '\n';

  char buf[160];
  switch (ds.protocol) {
    case Protocol::SymmPI:
      for (const MeasurementRecord& r : ds.records) {
        std::snprintf(buf, sizeof(buf),
                      "{\"theta\":[%.17g,%.17g,%.17g],\"h\":%d}\n",
                      r.theta.theta1, r.theta.theta2, r.theta.theta3, r.h);
        out << buf;
      }
      break;
    case Protocol::BlockCS:
      for (const BlockRecord& r : ds.block_records) {
        std::snprintf(buf, sizeof(buf), "{\"lambda2\":%d,\"j\":%d}\n",
                      r.lambda2, r.outcome);
        out << buf;
      }
      break;
    case Protocol::LC:
      for (const std::string& bits : ds.lc_records) {
        out << "{\"bits\":\"" << bits << "\"}\n";
      }
      break;
  }
  write_file_atomic(path, out.str());
}

Dataset load_dataset(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("dataset file is empty: " + path);
  }
  nlohmann::json meta = nlohmann::json::parse(line);
  if (meta.at("format").get<int>() != 1) {
    throw std::runtime_error("unsupported dataset format: " + path);
  }
  Dataset ds;
  ds.n = meta.at("n").get<int>();
  ds.protocol = protocol_from_name(meta.at("protocol").get<std::string>());
  ds.seed = meta.at("seed").get<std::uint64_t>();
  std::int64_t shots = meta.at("shots").get<std::int64_t>();

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json rec = nlohmann::json::parse(line);
    switch (ds.protocol) {
      case Protocol::SymmPI: {
        auto th = rec.at("theta");
        MeasurementRecord r;
        r.theta = EulerAngles{th.at(0).get<double>(), th.at(1).get<double>(),
                              th.at(2).get<double>()};
        r.h = rec.at("h").get<int>();
        if (r.h < 0 || r.h > ds.n) {
          throw std::runtime_error("dataset record out of range: " + path);
        }
        ds.records.push_back(r);
        break;
      }
      case Protocol::BlockCS:
        ds.block_records.push_back(BlockRecord{rec.at("lambda2").get<int>(),
                                               rec.at("j").get<int>()});
        break;
      case Protocol::LC:
        ds.lc_records.push_back(rec.at("bits").get<std::string>());
        break;
    }
  }
  if (ds.shots() != shots) {
    throw std::runtime_error("dataset record count mismatch: " + path);
  }
  return ds;
}

}  // namespace pishadow
