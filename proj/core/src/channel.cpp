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

#include "pishadow/channel.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <set>
#include <sstream>

#include "json.hpp"
#include "parallel.hpp"
#include "pishadow/util.hpp"

namespace pishadow {

namespace {

constexpr double kLog2 = 0.6931471805599453094;
constexpr char kCacheMagic[9] = "PISHCHN1";

Eigen::VectorXd solve_block(const ChannelMatrix::Block& b,
                            const Eigen::VectorXd& v) {
  auto pass = [&](const Eigen::VectorXd& rhs) -> Eigen::VectorXd {
    Eigen::VectorXd scaled = (rhs.array() / b.scale.array()).matrix();
    return (b.lu.solve(scaled).array() / b.scale.array()).matrix();
  };
  Eigen::VectorXd x = pass(v);
  // One step of iterative refinement; tightens the forward error when block
  // entries span many orders of magnitude (large n).
  Eigen::VectorXd r = v - b.mat * x;
  x += pass(r);
  return x;
}

/// Equilibrated factorization: with D = sqrt(diag(mat)) the scaled matrix
/// D^-1 mat D^-1 has unit diagonal, which keeps partial pivoting reliable
/// across the channel's huge eigenvalue spread. A one-vector round trip
/// guards against silent factorization failure.
void factorize_block(ChannelMatrix::Block& b) {
  Eigen::Index dim = b.mat.rows();
  b.scale.resize(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    double d = b.mat(i, i);
    if (!(d > 0.0)) {
      throw NumericalError("channel block has a non-positive diagonal entry");
    }
    b.scale[i] = std::sqrt(d);
  }
  Eigen::MatrixXd eq = b.mat;
  for (Eigen::Index i = 0; i < dim; ++i) {
    eq.row(i) /= b.scale[i];
    eq.col(i) /= b.scale[i];
  }
  b.lu = Eigen::PartialPivLU<Eigen::MatrixXd>(eq);
  b.built = true;

  Eigen::VectorXd probe = Eigen::VectorXd::Ones(dim);
  Eigen::VectorXd x = solve_block(b, probe);
  double resid = (b.mat * x - probe).norm();
  // The attainable residual is limited by the rounding floor of evaluating
  // mat * x itself, which matters once entries reach ~1e18; a genuinely
  // failed factorization overshoots both terms by many orders.
  double floor_scale = (b.mat.cwiseAbs() * x.cwiseAbs()).norm();
  if (!(resid < 1e-8 * probe.norm() + 1e-12 * floor_scale)) {
    std::ostringstream msg;
    msg << "channel block solve round trip failed (residual "
        << resid / probe.norm() << ")";
    throw NumericalError(msg.str());
  }
}

double pauli_entry(const Composition& a, const Composition& b, int n) {
  if (((a.kx + b.kx) | (a.ky + b.ky) | (a.kz + b.kz)) & 1) return 0.0;
  double logv = -n * kLog2 - std::log(double(2 * n - a.ki - b.ki + 1));
  const int pair_sums[4] = {a.kx + b.kx, a.ky + b.ky, a.kz + b.kz,
                            a.ki + b.ki};
  const int singles[8] = {a.kx, a.ky, a.kz, a.ki, b.kx, b.ky, b.kz, b.ki};
  for (int s : singles) logv -= 0.5 * log_factorial(s);
  for (int ps : pair_sums) {
    logv += log_factorial(ps) - log_factorial(ps / 2);
  }
  double sign = ((std::abs(a.ki - b.ki) / 2) % 2 == 0) ? 1.0 : -1.0;
  return sign * std::exp(logv);
}

}  // namespace

const ChannelMatrix::Block* ChannelMatrix::find_block(int key) const {
  for (const Block& b : blocks) {
    if (b.key == key) return &b;
  }
  return nullptr;
}

ChannelMatrix build_channel_pauli(int n) {
  if (n < 1) throw std::invalid_argument("qubit count must be positive");
  if (n > kPauliChannelMaxN) {
    throw std::invalid_argument(
        "PauliPI channel is limited to n <= " +
        std::to_string(kPauliChannelMaxN) +
        "; use the Schur basis for larger systems");
  }
  ChannelMatrix ch;
  ch.basis = Basis::PauliPI;
  ch.n = n;
  const auto& comps = enumerate_compositions(n);
  auto ranges = parity_class_ranges(n);

  for (int cls = 0; cls < 8; ++cls) {
    auto [begin, end] = ranges[static_cast<std::size_t>(cls)];
    if (begin == end) continue;
    ChannelMatrix::Block blk;
    blk.key = cls;
    std::size_t dim = end - begin;
    blk.indices.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) blk.indices[i] = begin + i;
    blk.mat.resize(static_cast<Eigen::Index>(dim),
                   static_cast<Eigen::Index>(dim));
    detail::parallel_chunks(dim, [&](std::size_t r0, std::size_t r1) {
      for (std::size_t r = r0; r < r1; ++r) {
        const Composition& a = comps[begin + r];
        for (std::size_t c = 0; c <= r; ++c) {
          double v = pauli_entry(a, comps[begin + c], n);
          blk.mat(static_cast<Eigen::Index>(r),
                  static_cast<Eigen::Index>(c)) = v;
          blk.mat(static_cast<Eigen::Index>(c),
                  static_cast<Eigen::Index>(r)) = v;
        }
      }
    });
    factorize_block(blk);
    ch.blocks.push_back(std::move(blk));
  }
  return ch;
}

ChannelMatrix build_channel_schur(
    int n, const std::optional<std::vector<int>>& deltas) {
  if (n < 1) throw std::invalid_argument("qubit count must be positive");
  const SchurLayout& lay = SchurLayout::get(n);
  const auto& irreps = lay.irreps();

  std::vector<int> keys;
  if (deltas) {
    std::set<int> uniq;
    for (int d : *deltas) {
      if (d < -n || d > n) {
        throw std::invalid_argument("coherence sector out of range");
      }
      uniq.insert(d);
    }
    keys.assign(uniq.begin(), uniq.end());
    if (keys.empty()) throw std::invalid_argument("empty sector list");
  } else {
    for (int d = -n; d <= n; ++d) keys.push_back(d);
  }

  ChannelMatrix ch;
  ch.basis = Basis::SchurPI;
  ch.n = n;
  ch.blocks.resize(keys.size());

  // Element offsets of each irrep inside each delta block.
  std::vector<std::vector<std::size_t>> irrep_offset(
      keys.size(), std::vector<std::size_t>(irreps.size(), SchurLayout::npos));
  for (std::size_t bi = 0; bi < keys.size(); ++bi) {
    int delta = keys[bi];
    ChannelMatrix::Block& blk = ch.blocks[bi];
    blk.key = delta;
    auto elems = lay.delta_block(delta);
    blk.indices.reserve(elems.size());
    std::size_t pos = 0;
    std::size_t prev_irrep = SchurLayout::npos;
    for (auto [ir, two_q] : elems) {
      if (ir != prev_irrep) {
        irrep_offset[bi][ir] = pos;
        prev_irrep = ir;
      }
      blk.indices.push_back(lay.index(ir, two_q, two_q + 2 * delta));
      ++pos;
    }
    std::size_t dim = blk.indices.size();
    blk.mat = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                    static_cast<Eigen::Index>(dim));
  }

  // Highest valid q (doubled) of the sector (q, q + delta) in spin two_s.
  auto two_q_max = [](int two_s, int delta) {
    return std::min(two_s, two_s - 2 * delta);
  };
  auto sector_count = [&](int two_s, int delta) {
    int c = two_s + 1 - std::abs(delta);
    return std::max(c, 0);
  };

  // Ordered irrep pairs write disjoint submatrices, so the pair loop can be
  // parallelized without synchronization.
  std::size_t nirr = irreps.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(nirr * nirr);
  for (std::size_t i = 0; i < nirr; ++i) {
    for (std::size_t j = 0; j < nirr; ++j) pairs.emplace_back(i, j);
  }

  detail::parallel_chunks(pairs.size(), [&](std::size_t p0, std::size_t p1) {
    for (std::size_t pi = p0; pi < p1; ++pi) {
      auto [il, ia] = pairs[pi];  // il: source irrep lambda, ia: target alpha
      const IrrepLabel& lam = irreps[il];
      const IrrepLabel& alf = irreps[ia];
      double log_dd = 0.5 * (lam.log_dim_t + alf.log_dim_t);

      int two_s_lo = std::abs(lam.two_s - alf.two_s);
      int two_s_hi = lam.two_s + alf.two_s;
      for (int two_smu = two_s_lo; two_smu <= two_s_hi; two_smu += 2) {
        Eigen::MatrixXd cg =
            clebsch_gordan_table(lam.two_s, alf.two_s, two_smu);

        // Pi factor: squared stretched-coupling overlaps on the diagonal.
        double pi_factor = 0.0;
        int two_q_top = std::min(lam.two_s, alf.two_s);
        for (int two_q = two_q_top; two_q >= -two_q_top; two_q -= 2) {
          if (std::abs(2 * two_q) > two_smu) continue;
          double c = cg(static_cast<Eigen::Index>((lam.two_s - two_q) / 2),
                        static_cast<Eigen::Index>((alf.two_s - two_q) / 2));
          pi_factor += c * c;
        }
        if (pi_factor == 0.0) continue;
        double weight =
            pi_factor * std::exp(log_dd) / double(two_smu + 1);

        for (std::size_t bi = 0; bi < keys.size(); ++bi) {
          int delta = keys[bi];
          if (irrep_offset[bi][il] == SchurLayout::npos ||
              irrep_offset[bi][ia] == SchurLayout::npos) {
            continue;
          }
          if (sector_count(lam.two_s, delta) == 0 ||
              sector_count(alf.two_s, delta) == 0) {
            continue;
          }
          ChannelMatrix::Block& blk = ch.blocks[bi];
          int two_ql_max = two_q_max(lam.two_s, delta);
          int two_qa_max = two_q_max(alf.two_s, delta);
          int cnt_l = sector_count(lam.two_s, delta);
          int cnt_a = sector_count(alf.two_s, delta);
          for (int el = 0; el < cnt_l; ++el) {
            int two_q = two_ql_max - 2 * el;  // source element (q, q+delta)
            std::size_t col = irrep_offset[bi][il] +
                              static_cast<std::size_t>(el);
            // CG arguments for the source pair.
            Eigen::Index a_q =
                static_cast<Eigen::Index>((lam.two_s - two_q) / 2);
            Eigen::Index a_qd = static_cast<Eigen::Index>(
                (lam.two_s - two_q - 2 * delta) / 2);
            for (int ea = 0; ea < cnt_a; ++ea) {
              int two_p = two_qa_max - 2 * ea;
              std::size_t row = irrep_offset[bi][ia] +
                                static_cast<std::size_t>(ea);
              Eigen::Index b_p =
                  static_cast<Eigen::Index>((alf.two_s - two_p) / 2);
              Eigen::Index b_pd = static_cast<Eigen::Index>(
                  (alf.two_s - two_p - 2 * delta) / 2);
              // c(lambda, q+delta, q, alpha, p, p+delta):
              //   CG(q, p+delta) * CG(q+delta, p)
              double v = weight * cg(a_q, b_pd) * cg(a_qd, b_p);
              if (v != 0.0) {
                blk.mat(static_cast<Eigen::Index>(row),
                        static_cast<Eigen::Index>(col)) += v;
              }
            }
          }
        }
      }
    }
  });

  for (ChannelMatrix::Block& blk : ch.blocks) {
    // Entries grow like sqrt(d_lambda d_alpha), so the roundoff asymmetry
    // scales with the matrix itself.
    double scale = blk.mat.cwiseAbs().maxCoeff();
    double asym = (blk.mat - blk.mat.transpose()).cwiseAbs().maxCoeff();
    if (!(asym < 1e-10 * (1.0 + scale))) {
      throw NumericalError("channel block lost symmetry during assembly");
    }
    blk.mat = 0.5 * (blk.mat + blk.mat.transpose()).eval();
    factorize_block(blk);
  }
  return ch;
}

namespace {

/// Gathers the block sub-vector, applies op, scatters back, and verifies no
/// populated coefficient falls outside the built blocks.
template <typename Op>
PIVector blockwise(const ChannelMatrix& ch, const PIVector& v, Op&& op) {
  if (v.basis != ch.basis || v.n != ch.n) {
    throw std::invalid_argument("vector and channel must share basis and n");
  }
  PIVector out = PIVector::zero(v.basis, v.n);
  std::vector<bool> covered(static_cast<std::size_t>(v.coeffs.size()), false);
  for (const ChannelMatrix::Block& b : ch.blocks) {
    if (!b.built) continue;
    Eigen::Index dim = static_cast<Eigen::Index>(b.indices.size());
    Eigen::VectorXd re(dim), im(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      auto z = v.coeffs[static_cast<Eigen::Index>(b.indices[i])];
      re[i] = z.real();
      im[i] = z.imag();
      covered[b.indices[i]] = true;
    }
    Eigen::VectorXd ore = op(b, re);
    Eigen::VectorXd oim = op(b, im);
    for (Eigen::Index i = 0; i < dim; ++i) {
      out.coeffs[static_cast<Eigen::Index>(b.indices[i])] =
          std::complex<double>(ore[i], oim[i]);
    }
  }
  for (Eigen::Index i = 0; i < v.coeffs.size(); ++i) {
    if (!covered[static_cast<std::size_t>(i)] &&
        std::abs(v.coeffs[i]) > 0.0) {
      throw std::invalid_argument(
          "vector is populated outside the built channel blocks");
    }
  }
  return out;
}

}  // namespace

PIVector apply(const ChannelMatrix& ch, const PIVector& v) {
  return blockwise(ch, v,
                   [](const ChannelMatrix::Block& b, const Eigen::VectorXd& x)
                       -> Eigen::VectorXd { return b.mat * x; });
}

PIVector solve(const ChannelMatrix& ch, const PIVector& v) {
  return blockwise(ch, v,
                   [](const ChannelMatrix::Block& b, const Eigen::VectorXd& x)
                       -> Eigen::VectorXd { return solve_block(b, x); });
}

std::vector<double> spectrum(const ChannelMatrix& ch) {
  std::vector<double> evs;
  for (const ChannelMatrix::Block& b : ch.blocks) {
    if (!b.built) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.mat,
                                                      Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      evs.push_back(es.eigenvalues()[i]);
    }
  }
  std::sort(evs.begin(), evs.end());
  return evs;
}

double variance_bound(BoundKind kind, const BoundParams& p) {
  auto need = [](bool ok, const char* what) {
    if (!ok) {
      throw std::invalid_argument(std::string("variance_bound: missing or "
                                              "invalid parameter: ") +
                                  what);
    }
  };
  switch (kind) {
    case BoundKind::LocalClifford:
      need(p.loc >= 0, "loc");
      need(p.norm_inf >= 0, "norm_inf");
      return std::pow(4.0, p.loc) * p.norm_inf * p.norm_inf;
    case BoundKind::GlobalClifford:
      need(p.norm_hs2 >= 0, "norm_hs2");
      return 3.0 * p.norm_hs2;
    case BoundKind::QstLocalClifford:
      need(p.n >= 1, "n");
      need(p.norm_inf >= 0, "norm_inf");
      return (double(p.n) * p.n + 2.0 * p.n + 2.0) * p.norm_inf * p.norm_inf;
    case BoundKind::QstGlobalClifford:
      need(p.n >= 1, "n");
      need(p.norm_inf >= 0, "norm_inf");
      return 3.0 * (double(p.n) * p.n + 2.0 * p.n + 2.0) * p.norm_inf *
             p.norm_inf;
    case BoundKind::BlockCS:
      need(p.m >= 1, "m");
      need(p.norm_inf >= 0, "norm_inf");
      return (double(p.m) * p.m + 1.0) * p.norm_inf * p.norm_inf;
    case BoundKind::SymmPI:
      need(p.n >= 1, "n");
      need(p.norm_hs2 >= 0, "norm_hs2");
      return (2.0 * p.n + 1.0) * p.norm_hs2;
    case BoundKind::QuditPI:
      need(p.n >= 1, "n");
      need(p.D >= 2, "D");
      need(p.norm_inf >= 0, "norm_inf");
      return std::pow(double(p.n) + p.D, 2.0 * p.D) * p.norm_inf * p.norm_inf;
  }
  throw std::invalid_argument("unknown bound kind");
}

// ---------------------------------------------------------------------------
// Cache I/O

void save_channel(const ChannelMatrix& ch, const std::string& path) {
  nlohmann::json meta;
  meta["version"] = 1;
  meta["n"] = ch.n;
  meta["basis"] = (ch.basis == Basis::PauliPI) ? "pauli" : "schur";

  std::string order_desc = meta["basis"].get<std::string>() + ":" +
                           std::to_string(ch.n);
  std::string payload;
  std::vector<int> keys;
  std::vector<std::size_t> dims;
  for (const ChannelMatrix::Block& b : ch.blocks) {
    if (!b.built) continue;
    keys.push_back(b.key);
    dims.push_back(b.indices.size());
    order_desc += "|" + std::to_string(b.key) + ":";
    for (std::size_t idx : b.indices) {
      order_desc += std::to_string(idx) + ",";
    }
    std::size_t bytes = sizeof(double) * static_cast<std::size_t>(
                                             b.mat.size());
    std::size_t old = payload.size();
    payload.resize(old + bytes);
    // Eigen column-major; transpose to row-major for the file layout.
    Eigen::MatrixXd rm = b.mat.transpose();
    std::memcpy(payload.data() + old, rm.data(), bytes);
  }
  meta["block_keys"] = keys;
  meta["block_dims"] = dims;
  meta["ordering_hash"] = sha1_hex(order_desc);
  meta["matrix_hash"] = sha1_hex(payload);

  std::string meta_str = meta.dump();
  std::string out;
  out.reserve(8 + 4 + meta_str.size() + payload.size());
  out.append(kCacheMagic, 8);
  std::uint32_t len = static_cast<std::uint32_t>(meta_str.size());
  char lenb[4];
  for (int i = 0; i < 4; ++i) {
    lenb[i] = static_cast<char>((len >> (8 * i)) & 0xFF);
  }
  out.append(lenb, 4);
  out += meta_str;
  out += payload;
  write_file_atomic(path, out);
}

ChannelMatrix load_channel(const std::string& path) {
  std::string bytes = read_file(path);
  if (bytes.size() < 12 || std::memcmp(bytes.data(), kCacheMagic, 8) != 0) {
    throw NumericalError("channel cache: bad magic: " + path);
  }
  std::uint32_t len = 0;
  for (int i = 0; i < 4; ++i) {
    len |= std::uint32_t(static_cast<unsigned char>(bytes[8 + i])) << (8 * i);
  }
  if (bytes.size() < 12 + len) {
    throw NumericalError("channel cache: truncated metadata: " + path);
  }
  nlohmann::json meta = nlohmann::json::parse(bytes.substr(12, len));
  if (meta.at("version").get<int>() != 1) {
    throw NumericalError("channel cache: unsupported version: " + path);
  }

  ChannelMatrix ch;
  ch.n = meta.at("n").get<int>();
  std::string basis = meta.at("basis").get<std::string>();
  ch.basis = (basis == "pauli") ? Basis::PauliPI : Basis::SchurPI;
  std::vector<int> keys = meta.at("block_keys").get<std::vector<int>>();
  std::vector<std::size_t> dims =
      meta.at("block_dims").get<std::vector<std::size_t>>();
  if (keys.size() != dims.size()) {
    throw NumericalError("channel cache: inconsistent metadata: " + path);
  }

  std::string payload = bytes.substr(12 + len);
  if (meta.at("matrix_hash").get<std::string>() != sha1_hex(payload)) {
    throw NumericalError("channel cache: payload hash mismatch: " + path);
  }

  std::size_t off = 0;
  for (std::size_t bi = 0; bi < keys.size(); ++bi) {
    ChannelMatrix::Block blk;
    blk.key = keys[bi];
    std::size_t dim = dims[bi];
    if (ch.basis == Basis::PauliPI) {
      auto ranges = parity_class_ranges(ch.n);
      auto [begin, end] = ranges[static_cast<std::size_t>(blk.key)];
      if (end - begin != dim) {
        throw NumericalError("channel cache: block size mismatch: " + path);
      }
      blk.indices.resize(dim);
      for (std::size_t i = 0; i < dim; ++i) blk.indices[i] = begin + i;
    } else {
      const SchurLayout& lay = SchurLayout::get(ch.n);
      auto elems = lay.delta_block(blk.key);
      if (elems.size() != dim) {
        throw NumericalError("channel cache: block size mismatch: " + path);
      }
      blk.indices.reserve(dim);
      for (auto [ir, two_q] : elems) {
        blk.indices.push_back(lay.index(ir, two_q, two_q + 2 * blk.key));
      }
    }
    std::size_t bytes_needed = sizeof(double) * dim * dim;
    if (payload.size() < off + bytes_needed) {
      throw NumericalError("channel cache: truncated payload: " + path);
    }
    Eigen::MatrixXd rm(static_cast<Eigen::Index>(dim),
                       static_cast<Eigen::Index>(dim));
    std::memcpy(rm.data(), payload.data() + off, bytes_needed);
    blk.mat = rm.transpose();
    off += bytes_needed;
    factorize_block(blk);
    ch.blocks.push_back(std::move(blk));
  }
  return ch;
}

}  // namespace pishadow
