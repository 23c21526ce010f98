// Copyright 2026 The nqsquench Authors - All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nqs/snapshot.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nqs/errors.hpp"

namespace nqs {

namespace {

constexpr const char *kMagic = "nqs-snapshot";

void fnv_mix(std::uint64_t &h, std::uint64_t word) {
  for (int byte = 0; byte < 8; ++byte) {
    h ^= (word >> (8 * byte)) & 0xffU;
    h *= 0x100000001b3ULL;
  }
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::uint64_t parameter_checksum(const ParameterVector &values) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    fnv_mix(h, std::bit_cast<std::uint64_t>(values(k).real()));
    fnv_mix(h, std::bit_cast<std::uint64_t>(values(k).imag()));
  }
  return h;
}

std::string format_snapshot(const Snapshot &snap) {
  const ParameterVector values = snap.params.flatten();
  std::ostringstream out;
  char checksum[24];
  std::snprintf(checksum, sizeof checksum, "%016llx",
                static_cast<unsigned long long>(parameter_checksum(values)));
  out << kMagic << '\n'
      << snap.params.n_visible() << ' ' << snap.params.n_hidden() << ' '
      << values.size() << ' ' << snap.seed << ' ' << snap.step << ' '
      << fmt17(snap.time) << ' ' << kSnapshotFormatVersion << ' ' << checksum
      << '\n';
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    out << fmt17(values(k).real()) << ' ' << fmt17(values(k).imag()) << '\n';
  }
  return out.str();
}

Snapshot parse_snapshot(const std::string &text) {
  std::istringstream in(text);
  std::string magic;
  if (!std::getline(in, magic) || magic != kMagic) {
    throw InputError("not a parameter snapshot (missing '" +
                     std::string(kMagic) + "' line)");
  }
  long long n = 0, m = 0, p = 0, step = 0;
  unsigned long long seed = 0;
  int version = 0;
  std::string time_str, checksum_str;
  if (!(in >> n >> m >> p >> seed >> step >> time_str >> version >>
        checksum_str)) {
    throw InputError("snapshot header must have 8 fields");
  }
  if (version != kSnapshotFormatVersion) {
    throw InputError("unsupported snapshot format version " +
                     std::to_string(version));
  }
  if (n < 1 || m < 1) throw InputError("snapshot has an empty RBM shape");
  bool visible;
  if (p == n + m + n * m) {
    visible = true;
  } else if (p == m + n * m) {
    visible = false;
  } else {
    throw InputError("snapshot parameter count is inconsistent with N and M");
  }
  ParameterVector values(p);
  for (long long k = 0; k < p; ++k) {
    std::string re, im;
    if (!(in >> re >> im)) {
      throw InputError("snapshot ends after " + std::to_string(k) +
                       " of " + std::to_string(p) + " values");
    }
    values(k) = Complex(std::stod(re), std::stod(im));
  }
  const std::uint64_t expected = std::stoull(checksum_str, nullptr, 16);
  if (parameter_checksum(values) != expected) {
    throw InputError("snapshot checksum mismatch");
  }
  Snapshot snap;
  snap.params = RbmParameters::zeros(static_cast<int>(n), static_cast<int>(m),
                                     visible)
                    .unflatten(values);
  snap.seed = seed;
  snap.step = step;
  snap.time = std::stod(time_str);
  return snap;
}

void write_snapshot(const std::filesystem::path &path, const Snapshot &snap) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write snapshot " + path.string());
  out << format_snapshot(snap);
  if (!out) throw std::runtime_error("error writing snapshot " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open snapshot " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_snapshot(buf.str());
}

}  // namespace nqs
