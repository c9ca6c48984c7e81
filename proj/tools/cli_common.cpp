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

#include "cli_common.hpp"

#include <algorithm>
#include <cctype>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <utility>

#include "pishadow/util.hpp"

namespace pscli {

using nlohmann::json;
using pishadow::Basis;
using pishadow::EstimateReport;
using pishadow::ObservableSpec;
using pishadow::PIVector;
using pishadow::Protocol;
using pishadow::StateSpec;

std::string resolve_cache_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("PISHADOW_CACHE_DIR");
      env != nullptr && *env != '\0') {
    return env;
  }
  return ".pishadow-cache";
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create directory " + dir + ": " +
                             ec.message());
  }
}

std::string channel_cache_name(Basis basis, int n,
                               const std::optional<std::vector<int>>& deltas) {
  std::ostringstream name;
  name << "channel-" << (basis == Basis::PauliPI ? "pauli" : "schur") << "-n"
       << n;
  if (deltas.has_value()) {
    std::vector<int> ds = *deltas;
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    name << "-b";
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (i > 0) name << '_';
      name << ds[i];
    }
  }
  name << ".bin";
  return name.str();
}

std::string dataset_cache_name(Protocol protocol, const std::string& state_tag,
                               int n, std::int64_t shots, std::uint64_t seed) {
  std::ostringstream name;
  name << "dataset-" << pishadow::protocol_name(protocol) << "-" << state_tag
       << "-n" << n << "-s" << shots << "-seed" << seed << ".jsonl";
  return name.str();
}

StateArg parse_state(const std::string& arg) {
  StateArg out;
  out.display = arg;
  if (arg == "ghz") {
    out.spec = StateSpec::ghz();
    out.tag = "ghz";
    return out;
  }
  if (arg.rfind("file:", 0) == 0) {
    const std::string path = arg.substr(5);
    if (path.empty()) {
      throw std::invalid_argument("--state file: requires a path");
    }
    out.spec = StateSpec::raw_state(load_pivector(path));
    out.tag = "file" + file_sha1(path).substr(0, 12);
    return out;
  }
  throw std::invalid_argument("unknown state spec '" + arg +
                              "' (expected ghz or file:<path>)");
}

namespace {

int parse_nonnegative_int(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + " is not an integer: '" + text + "'");
  }
  if (pos != text.size() || value < 0) {
    throw std::invalid_argument(what + " is not a nonnegative integer: '" +
                                text + "'");
  }
  return value;
}

}  // namespace

ObsArg parse_obs(const std::string& arg) {
  ObsArg out;
  out.label = arg;
  if (arg == "ghz-proj") {
    out.spec = ObservableSpec::ghz_projector();
    return out;
  }
  if (arg.rfind("pauli:", 0) == 0) {
    const std::string letters = arg.substr(6);
    if (letters.empty()) {
      throw std::invalid_argument("pauli: observable needs letters");
    }
    for (char c : letters) {
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
        throw std::invalid_argument(
            "pauli string may only contain I, X, Y, Z: '" + letters + "'");
      }
    }
    out.spec = ObservableSpec::pauli_string(letters);
    return out;
  }
  if (arg.rfind("axis:", 0) == 0) {
    const std::string rest = arg.substr(5);
    const std::size_t colon = rest.find(':');
    if (colon != 1 || (rest[0] != 'X' && rest[0] != 'Y' && rest[0] != 'Z')) {
      throw std::invalid_argument(
          "axis observable must look like axis:<X|Y|Z>:<weight>: '" + arg +
          "'");
    }
    const int weight =
        parse_nonnegative_int(rest.substr(colon + 1), "axis weight");
    out.spec = ObservableSpec::axis_string(rest[0], weight);
    return out;
  }
  if (arg.rfind("hamming:", 0) == 0) {
    const int h = parse_nonnegative_int(arg.substr(8), "hamming class");
    out.spec = ObservableSpec::hamming_projector(h);
    return out;
  }
  if (arg.rfind("pivec:", 0) == 0) {
    const std::string path = arg.substr(6);
    if (path.empty()) {
      throw std::invalid_argument("pivec: observable requires a path");
    }
    out.spec = ObservableSpec::raw_vector(load_pivector(path));
    return out;
  }
  throw std::invalid_argument(
      "unknown observable spec '" + arg +
      "' (expected pauli:<letters>, axis:<X|Y|Z>:<k>, hamming:<h>, ghz-proj, "
      "or pivec:<path>)");
}

PIVector load_pivector(const std::string& path) {
  json doc;
  try {
    doc = json::parse(pishadow::read_file(path));
  } catch (const json::exception& e) {
    throw std::invalid_argument("cannot parse pivector file " + path + ": " +
                                e.what());
  }
  try {
    const std::string basis_name = doc.at("basis").get<std::string>();
    Basis basis;
    if (basis_name == "pauli") {
      basis = Basis::PauliPI;
    } else if (basis_name == "schur") {
      basis = Basis::SchurPI;
    } else {
      throw std::invalid_argument("basis must be pauli or schur, got '" +
                                  basis_name + "'");
    }
    const int n = doc.at("n").get<int>();
    PIVector v = PIVector::zero(basis, n);
    const json& coeffs = doc.at("coeffs");
    if (!coeffs.is_array() ||
        coeffs.size() != static_cast<std::size_t>(v.coeffs.size())) {
      throw std::invalid_argument(
          "coeffs must be a list of " + std::to_string(v.coeffs.size()) +
          " entries for n=" + std::to_string(n) + " in the " + basis_name +
          " basis");
    }
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const json& c = coeffs[i];
      if (c.is_number()) {
        v.coeffs[static_cast<Eigen::Index>(i)] = c.get<double>();
      } else if (c.is_array() && c.size() == 2 && c[0].is_number() &&
                 c[1].is_number()) {
        v.coeffs[static_cast<Eigen::Index>(i)] =
            std::complex<double>(c[0].get<double>(), c[1].get<double>());
      } else {
        throw std::invalid_argument("coeff entries must be numbers or "
                                    "[re, im] pairs");
      }
    }
    return v;
  } catch (const json::exception& e) {
    throw std::invalid_argument("malformed pivector file " + path + ": " +
                                e.what());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("malformed pivector file " + path + ": " +
                                e.what());
  }
}

std::vector<int> parse_int_list(const std::string& arg, const char* what) {
  std::vector<int> values;
  std::string token;
  std::istringstream stream(arg);
  while (std::getline(stream, token, ',')) {
    std::size_t pos = 0;
    int value = 0;
    try {
      value = std::stoi(token, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != token.size() || token.empty()) {
      throw std::invalid_argument(std::string(what) +
                                  " expects comma-separated integers, got '" +
                                  arg + "'");
    }
    values.push_back(value);
  }
  if (values.empty()) {
    throw std::invalid_argument(std::string(what) + " is empty");
  }
  return values;
}

int observable_locality(const ObservableSpec& spec, int n) {
  switch (spec.kind) {
    case ObservableSpec::Kind::PauliString: {
      int loc = 0;
      for (char c : spec.pauli) loc += (c != 'I') ? 1 : 0;
      return loc;
    }
    case ObservableSpec::Kind::AxisString:
      return spec.weight;
    case ObservableSpec::Kind::HammingProjector:
    case ObservableSpec::Kind::GhzProjector:
    case ObservableSpec::Kind::RawPIVector:
      return n;
  }
  return n;
}

std::optional<double> observable_norm_inf(const ObservableSpec& spec) {
  switch (spec.kind) {
    case ObservableSpec::Kind::PauliString:
    case ObservableSpec::Kind::AxisString:
    case ObservableSpec::Kind::HammingProjector:
    case ObservableSpec::Kind::GhzProjector:
      // Pauli strings and projectors have unit operator norm; the axis
      // string is an average of commuting unit-norm strings and attains 1.
      return 1.0;
    case ObservableSpec::Kind::RawPIVector:
      return std::nullopt;
  }
  return std::nullopt;
}

BoundInfo analytic_bound(Protocol protocol, const ObservableSpec& spec,
                         double norm_hs2, int n) {
  BoundInfo out;
  pishadow::BoundParams params;
  switch (protocol) {
    case Protocol::SymmPI: {
      params.n = n;
      params.norm_hs2 = norm_hs2;
      out.value = variance_bound(pishadow::BoundKind::SymmPI, params);
      out.kind = "symm-pi";
      return out;
    }
    case Protocol::BlockCS: {
      out.kind = "block-cs";
      if (auto ni = observable_norm_inf(spec)) {
        params.m = n + 1;
        params.norm_inf = *ni;
        out.value = variance_bound(pishadow::BoundKind::BlockCS, params);
      }
      return out;
    }
    case Protocol::LC: {
      out.kind = "local-clifford";
      if (auto ni = observable_norm_inf(spec)) {
        params.loc = observable_locality(spec, n);
        params.norm_inf = *ni;
        out.value = variance_bound(pishadow::BoundKind::LocalClifford, params);
      }
      return out;
    }
  }
  return out;
}

EstimateReport report_from_stream(const std::string& observable,
                                  Protocol protocol, int n,
                                  const std::vector<double>& stream,
                                  int batches, bool use_median) {
  if (stream.empty()) {
    throw std::invalid_argument("cannot report on an empty estimate stream");
  }
  EstimateReport r;
  r.observable = observable;
  r.protocol = pishadow::protocol_name(protocol);
  r.n = n;
  r.shots = static_cast<std::int64_t>(stream.size());
  const int k = std::clamp<int>(batches, 1, static_cast<int>(stream.size()));
  r.mean = pishadow::mean(stream);
  r.median_of_means = pishadow::median_of_means(stream, k);
  r.batches = k;
  r.empirical_variance =
      stream.size() >= 2 ? pishadow::empirical_variance(stream) : 0.0;
  if (use_median && k >= 2) {
    r.method = "median-of-means";
    r.estimate = r.median_of_means;
  } else {
    r.method = "mean";
    r.estimate = r.mean;
  }
  return r;
}

std::string file_sha1(const std::string& path) {
  return pishadow::sha1_hex(pishadow::read_file(path));
}

json report_to_json(const EstimateReport& r) {
  return json::parse(pishadow::report_json(r));
}

}  // namespace pscli
