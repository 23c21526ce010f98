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

#include "nqs/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "nqs/errors.hpp"

namespace nqs {

using nlohmann::json;

namespace {

std::string join(const std::string &path, const std::string &key) {
  return path.empty() ? key : path + "." + key;
}

// Strict view of one JSON object: every key must be consumed before finish().
class Section {
 public:
  Section(const json &node, std::string path)
      : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) {
      throw ConfigError(path_, (path_.empty() ? "document" : path_) +
                                   " must be an object");
    }
  }

  const std::string &path() const { return path_; }

  bool has(const std::string &key) const { return node_.contains(key); }

  const json &raw(const std::string &key) {
    seen_.insert(key);
    return node_.at(key);
  }

  std::optional<double> number(const std::string &key) {
    if (!has(key)) return std::nullopt;
    const json &v = raw(key);
    if (!v.is_number()) fail(key, "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(key, "must be finite");
    return x;
  }

  double number(const std::string &key, double fallback) {
    return number(key).value_or(fallback);
  }

  double required_number(const std::string &key) {
    auto v = number(key);
    if (!v) fail(key, "is required");
    return *v;
  }

  std::optional<std::int64_t> integer(const std::string &key) {
    if (!has(key)) return std::nullopt;
    const json &v = raw(key);
    if (!v.is_number_integer()) fail(key, "must be an integer");
    return v.get<std::int64_t>();
  }

  std::optional<std::uint64_t> seed(const std::string &key) {
    if (!has(key)) return std::nullopt;
    const json &v = raw(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                   v.get<std::int64_t>() < 0)) {
      fail(key, "must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::optional<bool> boolean(const std::string &key) {
    if (!has(key)) return std::nullopt;
    const json &v = raw(key);
    if (!v.is_boolean()) fail(key, "must be true or false");
    return v.get<bool>();
  }

  std::optional<std::string> string(const std::string &key) {
    if (!has(key)) return std::nullopt;
    const json &v = raw(key);
    if (!v.is_string()) fail(key, "must be a string");
    return v.get<std::string>();
  }

  std::vector<double> number_list(const std::string &key) {
    std::vector<double> out;
    if (!has(key)) return out;
    const json &v = raw(key);
    if (!v.is_array()) fail(key, "must be a list of numbers");
    for (const auto &x : v) {
      if (!x.is_number() || !std::isfinite(x.get<double>())) {
        fail(key, "must be a list of finite numbers");
      }
      out.push_back(x.get<double>());
    }
    return out;
  }

  Section child(const std::string &key) { return Section(raw(key), join(path_, key)); }

  [[noreturn]] void fail(const std::string &key, const std::string &what) const {
    const std::string p = join(path_, key);
    throw ConfigError(p, p + " " + what);
  }

  void finish() const {
    for (const auto &item : node_.items()) {
      if (!seen_.count(item.key())) {
        const std::string p = join(path_, item.key());
        throw ConfigError(p, "unknown key " + p);
      }
    }
  }

 private:
  const json &node_;
  std::string path_;
  std::set<std::string> seen_;
};

void require_positive(Section &s, const std::string &key, double x) {
  if (!(x > 0.0)) s.fail(key, "must be > 0");
}

void require_nonnegative(Section &s, const std::string &key, double x) {
  if (!(x >= 0.0)) s.fail(key, "must be >= 0");
}

json parse_couplings(Section &parent, const std::string &key,
                     const std::string &type, int n_sites) {
  if (!parent.has(key)) parent.fail(key, "is required");
  Section s = parent.child(key);
  json out = json::object();
  if (type == "tfim") {
    out["j"] = s.number("j", 1.0);
    out["hx"] = s.required_number("hx");
    out["hz"] = s.number("hz", 0.0);
  } else if (type == "heisenberg") {
    out["jx"] = s.number("jx", 1.0);
    out["jy"] = s.number("jy", 1.0);
    out["jz"] = s.number("jz", 1.0);
    out["hz"] = s.number("hz", 0.0);
  } else {
    if (!s.has("bonds")) s.fail("bonds", "is required");
    const json &bonds = s.raw("bonds");
    if (!bonds.is_array()) s.fail("bonds", "must be a list of [i, j, jx, jy, jz]");
    json bout = json::array();
    for (const auto &b : bonds) {
      if (!b.is_array() || b.size() != 5 || !b[0].is_number_integer() ||
          !b[1].is_number_integer() || !b[2].is_number() ||
          !b[3].is_number() || !b[4].is_number()) {
        s.fail("bonds", "entries must be [i, j, jx, jy, jz]");
      }
      const auto i = b[0].get<std::int64_t>();
      const auto j = b[1].get<std::int64_t>();
      if (i < 0 || j < 0 || i >= n_sites || j >= n_sites || i == j) {
        s.fail("bonds", "has a bond with invalid sites (" + std::to_string(i) +
                            ", " + std::to_string(j) + ") for n_sites = " +
                            std::to_string(n_sites));
      }
      bout.push_back(b);
    }
    out["bonds"] = bout;
    json fout = json::array();
    if (s.has("fields")) {
      const json &fields = s.raw("fields");
      if (!fields.is_array() || static_cast<int>(fields.size()) != n_sites) {
        s.fail("fields", "must list [hx, hz] for each of the " +
                             std::to_string(n_sites) + " sites");
      }
      for (const auto &f : fields) {
        if (!f.is_array() || f.size() != 2 || !f[0].is_number() ||
            !f[1].is_number()) {
          s.fail("fields", "entries must be [hx, hz]");
        }
        fout.push_back(f);
      }
    } else {
      for (int i = 0; i < n_sites; ++i) fout.push_back(json::array({0.0, 0.0}));
    }
    out["fields"] = fout;
  }
  s.finish();
  return out;
}

SpinHamiltonian build_hamiltonian(const ModelConfig &m, const json &c) {
  if (m.type == "tfim") {
    return tfim_chain(m.n_sites, m.boundary, c.at("j").get<double>(),
                      c.at("hx").get<double>(), c.at("hz").get<double>());
  }
  if (m.type == "heisenberg") {
    return heisenberg_chain(m.n_sites, m.boundary, c.at("jx").get<double>(),
                            c.at("jy").get<double>(), c.at("jz").get<double>(),
                            c.at("hz").get<double>());
  }
  std::vector<Bond> bonds;
  for (const auto &b : c.at("bonds")) {
    bonds.push_back({b[0].get<int>(), b[1].get<int>(), b[2].get<double>(),
                     b[3].get<double>(), b[4].get<double>()});
  }
  std::vector<SiteField> fields;
  for (const auto &f : c.at("fields")) {
    fields.push_back({f[0].get<double>(), f[1].get<double>()});
  }
  return SpinHamiltonian(m.n_sites, std::move(bonds), std::move(fields));
}

ModelConfig parse_model(Section &root) {
  if (!root.has("model")) root.fail("model", "is required");
  Section s = root.child("model");
  ModelConfig m;
  m.type = s.string("type").value_or("tfim");
  if (m.type != "tfim" && m.type != "heisenberg" && m.type != "custom-bonds") {
    s.fail("type", "must be one of tfim, heisenberg, custom-bonds");
  }
  const auto n = s.integer("n_sites");
  if (!n) s.fail("n_sites", "is required");
  if (*n < 1 || *n > 30) s.fail("n_sites", "must lie in [1, 30]");
  m.n_sites = static_cast<int>(*n);
  const std::string boundary = s.string("boundary").value_or("open");
  if (boundary == "open") {
    m.boundary = Boundary::kOpen;
  } else if (boundary == "periodic") {
    m.boundary = Boundary::kPeriodic;
  } else {
    s.fail("boundary", "must be open or periodic");
  }
  m.initial = parse_couplings(s, "initial", m.type, m.n_sites);
  m.final = parse_couplings(s, "final", m.type, m.n_sites);
  if (m.type == "custom-bonds") {
    const auto &bi = m.initial.at("bonds");
    const auto &bf = m.final.at("bonds");
    bool same = bi.size() == bf.size();
    for (std::size_t k = 0; same && k < bi.size(); ++k) {
      same = bi[k][0] == bf[k][0] && bi[k][1] == bf[k][1];
    }
    if (!same) {
      s.fail("final", "bonds must list the same (i, j) pairs as initial bonds");
    }
  }
  s.finish();
  return m;
}

RbmConfig parse_rbm(Section &root, int n_sites) {
  RbmConfig r;
  if (!root.has("rbm")) return r;
  Section s = root.child("rbm");
  r.alpha = s.number("alpha");
  if (auto h = s.integer("hidden")) r.hidden = static_cast<int>(*h);
  if (r.alpha && r.hidden) s.fail("hidden", "cannot be combined with alpha");
  if (r.alpha) require_positive(s, "alpha", *r.alpha);
  if (r.hidden && *r.hidden < 1) s.fail("hidden", "must be >= 1");
  r.visible_biases = s.boolean("visible_biases").value_or(true);
  r.init_scale = s.number("init_scale", 0.01);
  require_positive(s, "init_scale", r.init_scale);
  r.seed = s.seed("seed").value_or(1);
  if (r.n_hidden(n_sites) < 1) s.fail("alpha", "gives fewer than one hidden unit");
  s.finish();
  return r;
}

PrepSection parse_prep(Section &root, const RbmConfig &rbm) {
  PrepSection p;
  p.config.seed = rbm.seed;
  p.config.init_scale = rbm.init_scale;
  if (!root.has("prep")) return p;
  Section s = root.child("prep");
  p.enabled = s.boolean("enabled").value_or(true);
  auto &c = p.config;
  if (auto v = s.integer("max_iters")) {
    if (*v < 0) s.fail("max_iters", "must be >= 0");
    c.max_iters = static_cast<int>(*v);
  }
  c.learning_rate = s.number("learning_rate", c.learning_rate);
  require_positive(s, "learning_rate", c.learning_rate);
  c.target_infidelity = s.number("target_infidelity", c.target_infidelity);
  if (!(c.target_infidelity > 0.0 && c.target_infidelity < 1.0)) {
    s.fail("target_infidelity", "must lie in (0, 1)");
  }
  if (auto o = s.string("optimizer")) {
    auto opt = parse_optimizer(*o);
    if (!opt) s.fail("optimizer", "must be adam or plain_gradient");
    c.optimizer = *opt;
  }
  c.seed = s.seed("seed").value_or(c.seed);
  s.finish();
  return p;
}

SolverStrategy parse_solver(Section &parent) {
  if (!parent.has("solver")) return Diagonalization{};
  Section s = parent.child("solver");
  const std::string type = s.string("type").value_or("diagonalization");
  SolverStrategy out;
  if (type == "regularization") {
    Regularization r;
    r.epsilon = s.number("epsilon", kDefaultEpsilon);
    require_positive(s, "epsilon", r.epsilon);
    out = r;
  } else if (type == "diagonalization") {
    Diagonalization d;
    d.zeta = s.number("zeta", kDefaultZeta);
    require_nonnegative(s, "zeta", d.zeta);
    out = d;
  } else if (type == "geometric") {
    Geometric g;
    g.rcond = s.number("rcond");
    if (g.rcond) require_nonnegative(s, "rcond", *g.rcond);
    out = g;
  } else {
    s.fail("type", "must be regularization, diagonalization or geometric");
  }
  s.finish();
  return out;
}

EstimatorConfig parse_estimator(Section &parent, int n_sites) {
  EstimatorConfig e;
  if (!parent.has("estimator")) {
    check_capacity(n_sites, kDefaultMaxDim);
    return e;
  }
  Section s = parent.child("estimator");
  const std::string type = s.string("type").value_or("exact");
  const char *mc_keys[] = {"n_samples", "n_chains", "burn_in", "stride", "seed"};
  if (type == "exact") {
    for (const char *k : mc_keys) {
      if (s.has(k)) s.fail(k, "is only valid for the mc estimator");
    }
    if (n_sites > 14) {
      throw ConfigError("model.n_sites",
                        "model.n_sites exceeds the exact-summation cap of 14");
    }
  } else if (type == "mc") {
    e.kind = EstimatorKind::kMonteCarlo;
    const auto n = s.integer("n_samples");
    if (!n) s.fail("n_samples", "is required for the mc estimator");
    if (*n < 1) s.fail("n_samples", "must be >= 1");
    e.sampler.n_samples = static_cast<std::size_t>(*n);
    e.sampler.n_chains = static_cast<int>(s.integer("n_chains").value_or(1));
    if (e.sampler.n_chains < 1) s.fail("n_chains", "must be >= 1");
    if (e.sampler.n_samples % static_cast<std::size_t>(e.sampler.n_chains)) {
      s.fail("n_samples", "must be divisible by n_chains");
    }
    if (auto b = s.integer("burn_in")) {
      if (*b < 0) s.fail("burn_in", "must be >= 0");
      e.sampler.burn_in = static_cast<std::size_t>(*b);
    }
    if (auto st = s.integer("stride")) {
      if (*st < 1) s.fail("stride", "must be >= 1");
      e.sampler.stride = static_cast<std::size_t>(*st);
    }
    e.sampler.seed = s.seed("seed").value_or(1);
  } else {
    s.fail("type", "must be exact or mc");
  }
  s.finish();
  return e;
}

DynamicsSection parse_dynamics(Section &root, const ModelConfig &model) {
  if (!root.has("dynamics")) root.fail("dynamics", "is required");
  Section s = root.child("dynamics");
  DynamicsSection d;
  if (s.has("integrator")) {
    Section is = s.child("integrator");
    if (auto name = is.string("scheme")) {
      auto sc = parse_scheme(*name);
      if (!sc) is.fail("scheme", "must be euler, heun, tamed_euler or tamed_heun");
      d.integrator.scheme = *sc;
    }
    d.integrator.dt = is.number("dt", d.integrator.dt);
    require_positive(is, "dt", d.integrator.dt);
    d.integrator.t_max = is.number("t_max", d.integrator.t_max);
    require_nonnegative(is, "t_max", d.integrator.t_max);
    if (d.integrator.t_max > 0.0 && d.integrator.dt > d.integrator.t_max) {
      is.fail("dt", "must not exceed t_max");
    }
    d.integrator.blow_up_norm = is.number("blow_up_norm", 1e6);
    require_positive(is, "blow_up_norm", d.integrator.blow_up_norm);
    is.finish();
  }
  d.solver = parse_solver(s);
  d.estimator = parse_estimator(s, model.n_sites);
  d.ed_compare = s.boolean("ed_compare").value_or(false);
  if (d.ed_compare && model.n_sites > 14) {
    s.fail("ed_compare", "requires n_sites <= 14");
  }
  if (auto k = s.integer("snapshot_stride")) {
    if (*k < 0) s.fail("snapshot_stride", "must be >= 0");
    d.snapshot_stride = *k;
  }
  if (s.has("observables")) {
    const json &obs = s.raw("observables");
    if (!obs.is_array()) s.fail("observables", "must be a list of names");
    for (const auto &o : obs) {
      if (!o.is_string()) s.fail("observables", "must be a list of names");
      const auto name = o.get<std::string>();
      if (name != "sx" && name != "sz" && name != "szsz") {
        s.fail("observables", "has unknown observable '" + name +
                                  "' (known: sx, sz, szsz)");
      }
      d.observables.push_back(name);
    }
  }
  d.initial_snapshot = s.string("initial_snapshot");
  s.finish();
  return d;
}

SweepSection parse_sweep(Section &root, const DynamicsSection &d) {
  SweepSection sw;
  if (!root.has("sweep")) return sw;
  Section s = root.child("sweep");
  sw.dt = s.number_list("dt");
  for (double x : sw.dt) require_positive(s, "dt", x);
  sw.epsilon = s.number_list("epsilon");
  for (double x : sw.epsilon) require_positive(s, "epsilon", x);
  if (!sw.epsilon.empty() && !std::holds_alternative<Regularization>(d.solver)) {
    s.fail("epsilon", "requires dynamics.solver.type = regularization");
  }
  sw.zeta = s.number_list("zeta");
  for (double x : sw.zeta) require_nonnegative(s, "zeta", x);
  if (!sw.zeta.empty() && !std::holds_alternative<Diagonalization>(d.solver)) {
    s.fail("zeta", "requires dynamics.solver.type = diagonalization");
  }
  sw.quench_strength = s.number_list("quench_strength");
  for (double x : sw.quench_strength) require_nonnegative(s, "quench_strength", x);
  s.finish();
  return sw;
}

OutputSection parse_output(Section &root) {
  OutputSection o;
  if (!root.has("output")) return o;
  Section s = root.child("output");
  o.directory = s.string("directory");
  if (s.has("formats")) {
    const json &f = s.raw("formats");
    if (!f.is_array()) s.fail("formats", "must be a list drawn from csv, jsonl");
    o.csv = o.jsonl = false;
    for (const auto &x : f) {
      const std::string name = x.is_string() ? x.get<std::string>() : "";
      if (name == "csv") {
        o.csv = true;
      } else if (name == "jsonl") {
        o.jsonl = true;
      } else {
        s.fail("formats", "must be a list drawn from csv, jsonl");
      }
    }
  }
  s.finish();
  return o;
}

}  // namespace

QuenchPair ModelConfig::quench() const {
  return QuenchPair(build_hamiltonian(*this, initial),
                    build_hamiltonian(*this, final));
}

int RbmConfig::n_hidden(int n_sites) const {
  if (hidden) return *hidden;
  return static_cast<int>(std::lround(alpha.value_or(1.0) * n_sites));
}

ExperimentConfig parse_config(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ConfigError("", std::string("config is not valid JSON: ") + e.what());
  }
  Section root(doc, "");
  ExperimentConfig cfg;
  cfg.model = parse_model(root);
  cfg.rbm = parse_rbm(root, cfg.model.n_sites);
  cfg.prep = parse_prep(root, cfg.rbm);
  cfg.dynamics = parse_dynamics(root, cfg.model);
  cfg.sweep = parse_sweep(root, cfg.dynamics);
  cfg.output = parse_output(root);
  root.finish();
  if (cfg.prep.enabled && cfg.model.n_sites > 14) {
    throw ConfigError("prep.enabled",
                      "prep.enabled requires n_sites <= 14 (exact target)");
  }
  if (cfg.prep.enabled && cfg.dynamics.initial_snapshot) {
    throw ConfigError("dynamics.initial_snapshot",
                      "dynamics.initial_snapshot cannot be combined with "
                      "prep.enabled");
  }
  try {
    cfg.model.quench();
  } catch (const InputError &e) {
    throw ConfigError("model", std::string("model is invalid: ") + e.what());
  }
  if (!cfg.sweep.quench_strength.empty()) {
    const double s0 = cfg.model.quench().strength();
    if (!(s0 > 0.0) || !std::isfinite(s0)) {
      throw ConfigError("sweep.quench_strength",
                        "sweep.quench_strength needs a configured quench of "
                        "finite, nonzero strength");
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

json config_to_json(const ExperimentConfig &cfg) {
  json j;
  j["model"] = {
      {"type", cfg.model.type},
      {"n_sites", cfg.model.n_sites},
      {"boundary", cfg.model.boundary == Boundary::kOpen ? "open" : "periodic"},
      {"initial", cfg.model.initial},
      {"final", cfg.model.final}};

  json rbm = {{"visible_biases", cfg.rbm.visible_biases},
              {"init_scale", cfg.rbm.init_scale},
              {"seed", cfg.rbm.seed}};
  if (cfg.rbm.hidden) {
    rbm["hidden"] = *cfg.rbm.hidden;
  } else {
    rbm["alpha"] = cfg.rbm.alpha.value_or(1.0);
  }
  j["rbm"] = rbm;

  const auto &pc = cfg.prep.config;
  j["prep"] = {{"enabled", cfg.prep.enabled},
               {"max_iters", pc.max_iters},
               {"learning_rate", pc.learning_rate},
               {"target_infidelity", pc.target_infidelity},
               {"optimizer", optimizer_name(pc.optimizer)},
               {"seed", pc.seed}};

  const auto &d = cfg.dynamics;
  json solver = {{"type", strategy_name(d.solver)}};
  if (auto *r = std::get_if<Regularization>(&d.solver)) solver["epsilon"] = r->epsilon;
  if (auto *z = std::get_if<Diagonalization>(&d.solver)) solver["zeta"] = z->zeta;
  if (auto *g = std::get_if<Geometric>(&d.solver)) {
    if (g->rcond) solver["rcond"] = *g->rcond;
  }
  json estimator = {{"type", d.estimator.kind == EstimatorKind::kExact ? "exact"
                                                                       : "mc"}};
  if (d.estimator.kind == EstimatorKind::kMonteCarlo) {
    const auto &sc = d.estimator.sampler;
    estimator["n_samples"] = sc.n_samples;
    estimator["n_chains"] = sc.n_chains;
    if (sc.burn_in) estimator["burn_in"] = *sc.burn_in;
    if (sc.stride) estimator["stride"] = *sc.stride;
    estimator["seed"] = sc.seed;
  }
  json dyn = {{"integrator",
               {{"scheme", scheme_name(d.integrator.scheme)},
                {"dt", d.integrator.dt},
                {"t_max", d.integrator.t_max},
                {"blow_up_norm", d.integrator.blow_up_norm}}},
              {"solver", solver},
              {"estimator", estimator},
              {"ed_compare", d.ed_compare},
              {"snapshot_stride", d.snapshot_stride},
              {"observables", d.observables}};
  if (d.initial_snapshot) dyn["initial_snapshot"] = *d.initial_snapshot;
  j["dynamics"] = dyn;

  if (!cfg.sweep.empty()) {
    json sw = json::object();
    if (!cfg.sweep.dt.empty()) sw["dt"] = cfg.sweep.dt;
    if (!cfg.sweep.epsilon.empty()) sw["epsilon"] = cfg.sweep.epsilon;
    if (!cfg.sweep.zeta.empty()) sw["zeta"] = cfg.sweep.zeta;
    if (!cfg.sweep.quench_strength.empty()) {
      sw["quench_strength"] = cfg.sweep.quench_strength;
    }
    j["sweep"] = sw;
  }
  json formats = json::array();
  if (cfg.output.csv) formats.push_back("csv");
  if (cfg.output.jsonl) formats.push_back("jsonl");
  json out = {{"formats", formats}};
  if (cfg.output.directory) out["directory"] = *cfg.output.directory;
  j["output"] = out;
  return j;
}

Observable make_observable(const std::string &name, const ModelConfig &model) {
  const int n = model.n_sites;
  const double inv_n = 1.0 / n;
  if (name == "sx" || name == "sz") {
    std::vector<SiteField> fields(n);
    for (auto &f : fields) (name == "sx" ? f.hx : f.hz) = inv_n;
    return {name, SpinHamiltonian(n, {}, std::move(fields))};
  }
  if (name == "szsz") {
    const QuenchPair quench = model.quench();
    const auto &bonds = quench.final().bonds();
    std::vector<Bond> zz;
    for (const auto &b : bonds) zz.push_back({b.i, b.j, 0.0, 0.0, 1.0});
    if (!zz.empty()) {
      for (auto &b : zz) b.jz /= static_cast<double>(zz.size());
    }
    return {name, SpinHamiltonian(n, std::move(zz), {})};
  }
  throw InputError("unknown observable '" + name + "'");
}

void override_seeds(ExperimentConfig &cfg, std::uint64_t seed) {
  cfg.rbm.seed = seed;
  cfg.prep.config.seed = seed;
  cfg.dynamics.estimator.sampler.seed = seed;
}

}  // namespace nqs
