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


#include "nqs/trajectory_csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nqs/errors.hpp"

namespace nqs {

namespace {

std::string real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string &line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_double(const std::string &s, std::size_t line) {
  errno = 0;
  char *end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw InputError("bad number '" + s + "' on CSV line " +
                     std::to_string(line));
  }
  return x;
}

std::int64_t to_int(const std::string &s, std::size_t line) {
  char *end = nullptr;
  const long long x = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw InputError("bad integer '" + s + "' on CSV line " +
                     std::to_string(line));
  }
  return x;
}

}  // namespace

std::optional<RunStatus> parse_status(const std::string &name) {
  if (name == "ok") return RunStatus::kOk;
  if (name == "diverged") return RunStatus::kDiverged;
  if (name == "numeric_error") return RunStatus::kNumericError;
  return std::nullopt;
}

std::string trajectory_header(const std::vector<std::string> &observables) {
  std::string h = kTrajectoryHeader;
  for (const auto &name : observables) h += "," + name;
  return h;
}

std::string format_trajectory_csv(const Trajectory &traj) {
  std::string out = trajectory_header(traj.observable_names) + "\n";
  for (const auto &r : traj.records) {
    out += std::to_string(r.step);
    out += "," + real(r.time);
    out += "," + real(r.energy.real());
    out += "," + real(r.energy.imag());
    out += "," + real(r.energy_variance);
    out += "," + real(r.update_norm);
    out += "," + real(r.param_norm);
    out += "," + real(r.residual);
    out += "," + (r.rank_kept ? std::to_string(*r.rank_kept) : std::string());
    out += "," + real(r.s_eig_min);
    out += "," + real(r.s_eig_max);
    out += "," + (r.fidelity_ed ? real(*r.fidelity_ed) : std::string());
    out += "," + status_name(r.status);
    for (std::size_t k = 0; k < traj.observable_names.size(); ++k) {
      out += "," + (k < r.observables.size() ? real(r.observables[k])
                                             : std::string());
    }
    out += "\n";
  }
  return out;
}

void emit_trajectory_csv(const Trajectory &traj, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << format_trajectory_csv(traj);
  if (!out.flush()) throw std::runtime_error("failed writing " + path);
}

ParsedTrajectory parse_trajectory_csv(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty trajectory CSV");
  const std::string fixed = kTrajectoryHeader;
  if (line.compare(0, fixed.size(), fixed) != 0) {
    throw InputError("trajectory CSV header mismatch");
  }
  ParsedTrajectory out;
  const auto header = split(line);
  constexpr std::size_t kFixed = 13;
  out.observable_names.assign(header.begin() + kFixed, header.end());

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != header.size()) {
      throw InputError("CSV line " + std::to_string(lineno) + " has " +
                       std::to_string(c.size()) + " fields, expected " +
                       std::to_string(header.size()));
    }
    TrajectoryRecord r;
    r.step = to_int(c[0], lineno);
    r.time = to_double(c[1], lineno);
    r.energy = Complex(to_double(c[2], lineno), to_double(c[3], lineno));
    r.energy_variance = to_double(c[4], lineno);
    r.update_norm = to_double(c[5], lineno);
    r.param_norm = to_double(c[6], lineno);
    r.residual = to_double(c[7], lineno);
    if (!c[8].empty()) r.rank_kept = to_int(c[8], lineno);
    r.s_eig_min = to_double(c[9], lineno);
    r.s_eig_max = to_double(c[10], lineno);
    if (!c[11].empty()) r.fidelity_ed = to_double(c[11], lineno);
    const auto status = parse_status(c[12]);
    if (!status) throw InputError("unknown status '" + c[12] + "'");
    r.status = *status;
    for (std::size_t k = kFixed; k < c.size(); ++k) {
      r.observables.push_back(to_double(c[k], lineno));
    }
    out.records.push_back(std::move(r));
  }
  return out;
}

}  // namespace nqs
