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


#ifndef NQS_TRAJECTORY_CSV_HPP
#define NQS_TRAJECTORY_CSV_HPP

#include <string>
#include <vector>

#include "nqs/dynamics.hpp"

namespace nqs {

// Fixed leading columns; observable columns follow in trajectory order.
inline constexpr const char *kTrajectoryHeader =
    "step,time,energy_re,energy_im,energy_var,update_norm,param_norm,residual,"
    "rank_kept,s_eig_min,s_eig_max,fidelity_ed,status";

std::string trajectory_header(const std::vector<std::string> &observables);

// One line per record, floats at 17 significant digits; rank_kept and
// fidelity_ed are empty when absent.
std::string format_trajectory_csv(const Trajectory &traj);
void emit_trajectory_csv(const Trajectory &traj, const std::string &path);

struct ParsedTrajectory {
  std::vector<std::string> observable_names;
  std::vector<TrajectoryRecord> records;
};

// Inverse of format_trajectory_csv. Throws InputError on malformed input.
ParsedTrajectory parse_trajectory_csv(const std::string &text);

std::optional<RunStatus> parse_status(const std::string &name);

}  // namespace nqs

#endif  // NQS_TRAJECTORY_CSV_HPP
