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

#ifndef NQS_SNAPSHOT_HPP
#define NQS_SNAPSHOT_HPP

#include <cstdint>
#include <filesystem>
#include <string>

#include "nqs/rbm.hpp"

namespace nqs {

// Text snapshot of an RBM parameter vector:
//
//   nqs-snapshot
//   N M P seed step time format_version checksum
//   re im          (P lines, ParameterVector order, 17 significant digits)
//
// The checksum is FNV-1a (64 bit, hex) over the IEEE-754 bit patterns of the
// P (re, im) pairs. Visible biases are present iff P == N + M + N*M.
inline constexpr int kSnapshotFormatVersion = 1;

struct Snapshot {
  RbmParameters params;
  std::uint64_t seed = 0;
  std::int64_t step = 0;
  double time = 0.0;
};

std::uint64_t parameter_checksum(const ParameterVector &values);

std::string format_snapshot(const Snapshot &snap);
// Throws InputError on malformed text or checksum mismatch.
Snapshot parse_snapshot(const std::string &text);

void write_snapshot(const std::filesystem::path &path, const Snapshot &snap);
Snapshot read_snapshot(const std::filesystem::path &path);

}  // namespace nqs

#endif  // NQS_SNAPSHOT_HPP
