#include "majsim/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace majsim::cli {

using nlohmann::json;

namespace {

std::string join_errors(const std::vector<std::string>& errors) {
  std::string msg = "configuration has " + std::to_string(errors.size()) + " error(s):";
  for (const auto& e : errors) msg += "\n  " + e;
  return msg;
}

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

// Steps needed to reach t with step dt, or nullopt when t is not on the step lattice.
std::optional<std::size_t> whole_steps(double t, double dt) {
  if (!(dt > 0.0) || !(t >= 0.0) || !std::isfinite(t)) return std::nullopt;
  const double n = std::round(t / dt);
  if (std::abs(n * dt - t) > 1e-9 * std::max(1.0, t)) return std::nullopt;
  return static_cast<std::size_t>(n);
}

std::string first_token(const std::string& s) { return s.substr(0, s.find(' ')); }

bool related_paths(const std::string& a, const std::string& b) {
  auto prefix = [](const std::string& p, const std::string& q) {
    return q.compare(0, p.size(), p) == 0 && (q.size() == p.size() || q[p.size()] == '.' || q[p.size()] == '[');
  };
  return prefix(a, b) || prefix(b, a);
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : ValidationError(join_errors(errors)), errors_(std::move(errors)) {}

FieldReader::FieldReader(const json& obj, std::string path, std::vector<std::string>& errors)
    : obj_(&obj), path_(std::move(path)), errors_(errors) {
  if (!obj.is_object()) {
    errors_.push_back((path_.empty() ? std::string("document") : path_) + " must be a JSON object");
    obj_ = nullptr;
  }
}

std::string FieldReader::path_of(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

bool FieldReader::has(const std::string& key) const { return obj_ != nullptr && obj_->contains(key); }

const json* FieldReader::child(const std::string& key, bool required) {
  if (obj_ == nullptr) return nullptr;
  seen_.push_back(key);
  const auto it = obj_->find(key);
  if (it == obj_->end()) {
    if (required) errors_.push_back(path_of(key) + " is required");
    return nullptr;
  }
  return &*it;
}

void FieldReader::error(const std::string& key, const std::string& message) {
  errors_.push_back(path_of(key) + " " + message);
}

void FieldReader::number(const std::string& key, double& out, bool required) {
  const json* v = child(key, required);
  if (v == nullptr) return;
  if (!v->is_number()) return error(key, "must be a number");
  out = v->get<double>();
}

void FieldReader::integer(const std::string& key, long long& out, bool required) {
  const json* v = child(key, required);
  if (v == nullptr) return;
  if (!v->is_number_integer()) return error(key, "must be an integer");
  out = v->get<long long>();
}

void FieldReader::count(const std::string& key, std::size_t& out, bool required) {
  long long v = static_cast<long long>(out);
  const std::size_t before = errors_.size();
  integer(key, v, required);
  if (errors_.size() != before || !has(key)) return;
  if (v < 0) return error(key, "must be non-negative");
  out = static_cast<std::size_t>(v);
}

void FieldReader::string(const std::string& key, std::string& out, bool required) {
  const json* v = child(key, required);
  if (v == nullptr) return;
  if (!v->is_string()) return error(key, "must be a string");
  out = v->get<std::string>();
}

void FieldReader::complex_pair(const std::string& key, std::complex<double>& out, bool required) {
  const json* v = child(key, required);
  if (v == nullptr) return;
  out = complex_from_json(*v, path_of(key), errors_);
}

void FieldReader::finish() {
  if (obj_ == nullptr) return;
  for (const auto& [key, value] : obj_->items()) {
    if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) {
      errors_.push_back(path_of(key) + " is not a recognized key");
    }
  }
}

std::complex<double> complex_from_json(const json& v, const std::string& path, std::vector<std::string>& errors) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  errors.push_back(path + " must be a number or a [re, im] pair");
  return {};
}

json complex_to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({path.string() + ": cannot open file"});
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  // An empty document is an empty object, so it reports the missing keys.
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return json::object();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({path.string() + ": malformed JSON: " + e.what()});
  }
}

Grid1D ScenarioConfig::grid() const { return Grid1D(n_points, x_min, x_max); }

std::size_t ScenarioConfig::n_steps() const {
  const auto n = whole_steps(t_final, dt);
  if (!n) throw ValidationError("plan.t_final must be a whole number of plan.dt steps");
  return *n;
}

EvolutionPlan ScenarioConfig::plan() const {
  EvolutionPlan p;
  p.dt = dt;
  p.n_steps = n_steps();
  p.snapshot_stride = snapshot_stride;
  p.observable_stride = observable_stride;
  for (const auto& e : events) {
    const auto s = whole_steps(e.t, dt);
    if (!s) throw ValidationError("event time is not a whole number of plan.dt steps");
    p.events.push_back({*s, e.op});
  }
  return p;
}

std::vector<std::string> validate(const ScenarioConfig& c) {
  std::vector<std::string> errs;
  const bool name_ok = !c.name.empty() && std::all_of(c.name.begin(), c.name.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.';
  });
  if (!name_ok) errs.emplace_back("name must be non-empty and use only letters, digits, '.', '_' and '-'");

  for (const auto& e : c.hamiltonian.validate()) errs.push_back("hamiltonian." + e);
  const bool mixed = c.hamiltonian.model == Model::mixed_mass4;
  if (mixed && c.hamiltonian.m != 0.0) errs.emplace_back("hamiltonian.m must be 0 for mixed-mass4 (set m_D and m_M)");
  if (!mixed && c.hamiltonian.m_D != 0.0) errs.emplace_back("hamiltonian.m_D is only used by mixed-mass4");
  if (!mixed && c.hamiltonian.m_M != 0.0) errs.emplace_back("hamiltonian.m_M is only used by mixed-mass4");
  if (c.hamiltonian.potential.kind == Potential::Kind::tabulated &&
      c.hamiltonian.potential.values.size() != c.n_points) {
    errs.push_back("hamiltonian.potential.values has " + std::to_string(c.hamiltonian.potential.values.size()) +
                   " entries but grid.n_points is " + std::to_string(c.n_points));
  }

  const bool grid_ok = std::isfinite(c.x_min) && std::isfinite(c.x_max) && c.x_max > c.x_min;
  if (!is_power_of_two(c.n_points) || c.n_points < 64) errs.emplace_back("grid.n_points must be a power of two >= 64");
  if (!grid_ok) errs.emplace_back("grid.x_max must be greater than grid.x_min");

  const PacketSpec& p = c.packet;
  if (!(p.sigma > 0.0)) errs.emplace_back("packet.sigma must be positive");
  if (p.polarization.squaredNorm() == 0.0) errs.emplace_back("packet.polarization must be nonzero");
  if (grid_ok && p.sigma > 0.0 && (p.x0 - 5.0 * p.sigma < c.x_min || p.x0 + 5.0 * p.sigma > c.x_max)) {
    errs.emplace_back("packet.x0 must lie at least 5 packet.sigma inside the grid");
  }

  const bool dt_ok = c.dt > 0.0 && std::isfinite(c.dt);
  if (!dt_ok) errs.emplace_back("plan.dt must be positive");
  if (!(c.t_final >= 0.0) || !std::isfinite(c.t_final)) {
    errs.emplace_back("plan.t_final must be non-negative");
  } else if (dt_ok && !whole_steps(c.t_final, c.dt)) {
    errs.emplace_back("plan.t_final must be a whole number of plan.dt steps");
  }
  for (std::size_t i = 0; i < c.events.size(); ++i) {
    const std::string path = "plan.events[" + std::to_string(i) + "].t";
    const double t = c.events[i].t;
    if (!(t >= 0.0)) {
      errs.push_back(path + " must be non-negative");
    } else if (t > c.t_final) {
      errs.push_back(path + " = " + std::to_string(t) + " exceeds plan.t_final = " + std::to_string(c.t_final));
    } else if (dt_ok && !whole_steps(t, c.dt)) {
      errs.push_back(path + " must be a whole number of plan.dt steps");
    }
  }

  if (grid_ok && !(c.x_c >= c.x_min && c.x_c < c.x_max)) errs.emplace_back("outputs.x_c must lie inside the grid");
  if (c.directory && c.directory->empty()) errs.emplace_back("outputs.directory must be non-empty when given");
  return errs;
}

ScenarioConfig parse_config(const json& doc) {
  std::vector<std::string> errs;
  ScenarioConfig c;
  FieldReader top(doc, "", errs);
  if (!top.ok()) throw ConfigError(errs);

  top.string("name", c.name, true);

  if (const json* h = top.child("hamiltonian", true)) {
    FieldReader r(*h, "hamiltonian", errs);
    std::string model;
    r.string("model", model, true);
    if (r.has("model") && h->at("model").is_string()) {
      try {
        c.hamiltonian.model = model_from_string(model);
      } catch (const ValidationError&) {
        r.error("model", "'" + model + "' is not one of dirac2, dirac-lifted4, majorana4, mixed-mass4");
      }
    }
    r.number("m", c.hamiltonian.m, false);
    r.number("m_D", c.hamiltonian.m_D, false);
    r.number("m_M", c.hamiltonian.m_M, false);
    r.number("c", c.hamiltonian.c, false);
    long long charge = c.hamiltonian.charge;
    r.integer("charge", charge, false);
    c.hamiltonian.charge = static_cast<int>(std::clamp(charge, -2LL, 2LL));
    if (const json* pot = r.child("potential", false)) {
      FieldReader pr(*pot, "hamiltonian.potential", errs);
      std::string kind;
      pr.string("kind", kind, true);
      Potential& v = c.hamiltonian.potential;
      if (kind == "none") {
        v = Potential::none();
      } else if (kind == "linear") {
        v = Potential::linear(0.0);
        pr.number("alpha", v.alpha, true);
      } else if (kind == "tabulated") {
        v = Potential::tabulated({});
        if (const json* vals = pr.child("values", true)) {
          if (!vals->is_array()) {
            pr.error("values", "must be an array of numbers");
          } else {
            for (std::size_t i = 0; i < vals->size(); ++i) {
              if (!(*vals)[i].is_number()) {
                pr.error("values[" + std::to_string(i) + "]", "must be a number");
                break;
              }
              v.values.push_back((*vals)[i].get<double>());
            }
          }
        }
      } else if (pr.has("kind")) {
        pr.error("kind", "'" + kind + "' is not one of none, linear, tabulated");
      }
      for (const char* key : {"alpha", "values"}) {
        const bool used = (kind == "linear" && std::string(key) == "alpha") ||
                          (kind == "tabulated" && std::string(key) == "values");
        if (!used && pr.has(key)) {
          pr.child(key, false);
          pr.error(key, "is not used by potential kind '" + kind + "'");
        }
      }
      pr.finish();
    }
    r.finish();
  }

  if (const json* g = top.child("grid", true)) {
    FieldReader r(*g, "grid", errs);
    r.count("n_points", c.n_points, true);
    r.number("x_min", c.x_min, true);
    r.number("x_max", c.x_max, true);
    r.finish();
  }

  if (const json* p = top.child("packet", true)) {
    FieldReader r(*p, "packet", errs);
    r.number("x0", c.packet.x0, true);
    r.number("sigma", c.packet.sigma, true);
    r.number("p0", c.packet.p0, true);
    if (const json* pol = r.child("polarization", false)) {
      if (!pol->is_array() || pol->size() != 2) {
        r.error("polarization", "must be a two-entry array");
      } else {
        for (int i = 0; i < 2; ++i) {
          c.packet.polarization(i) =
              complex_from_json((*pol)[static_cast<std::size_t>(i)],
                                r.path_of("polarization") + "[" + std::to_string(i) + "]", errs);
        }
      }
    }
    r.finish();
  }

  if (const json* pl = top.child("plan", true)) {
    FieldReader r(*pl, "plan", errs);
    r.number("dt", c.dt, true);
    r.number("t_final", c.t_final, true);
    r.count("observable_stride", c.observable_stride, false);
    if (const json* ev = r.child("events", false)) {
      if (!ev->is_array()) {
        r.error("events", "must be an array");
      } else {
        for (std::size_t i = 0; i < ev->size(); ++i) {
          FieldReader er((*ev)[i], "plan.events[" + std::to_string(i) + "]", errs);
          EventSpec e;
          er.number("t", e.t, true);
          std::string op;
          er.string("op", op, true);
          if (er.has("op") && (*ev)[i].at("op").is_string()) {
            try {
              e.op = symmetry_op_from_string(op);
            } catch (const ValidationError&) {
              er.error("op", "'" + op + "' is not one of K, C, T");
            }
          }
          er.finish();
          c.events.push_back(e);
        }
      }
    }
    r.finish();
  }

  if (const json* o = top.child("outputs", false)) {
    FieldReader r(*o, "outputs", errs);
    r.count("snapshot_stride", c.snapshot_stride, false);
    r.number("x_c", c.x_c, false);
    if (r.has("directory")) {
      std::string dir;
      r.string("directory", dir, false);
      c.directory = dir;
    }
    r.finish();
  }
  top.finish();

  // Physical checks on fields that parsed; a field with a structural error
  // is not re-reported through its default value.
  std::vector<std::string> structural;
  for (const auto& e : errs) structural.push_back(first_token(e));
  for (auto& e : validate(c)) {
    const std::string path = first_token(e);
    const bool shadowed = std::any_of(structural.begin(), structural.end(),
                                      [&](const std::string& s) { return related_paths(s, path); });
    if (!shadowed) errs.push_back(std::move(e));
  }
  if (!errs.empty()) throw ConfigError(std::move(errs));
  return c;
}

ScenarioConfig parse_config_file(const std::filesystem::path& path) { return parse_config(load_json_file(path)); }

json serialize(const ScenarioConfig& c) {
  json pot;
  switch (c.hamiltonian.potential.kind) {
    case Potential::Kind::none: pot = {{"kind", "none"}}; break;
    case Potential::Kind::linear: pot = {{"kind", "linear"}, {"alpha", c.hamiltonian.potential.alpha}}; break;
    case Potential::Kind::tabulated: pot = {{"kind", "tabulated"}, {"values", c.hamiltonian.potential.values}}; break;
  }
  json events = json::array();
  for (const auto& e : c.events) events.push_back({{"t", e.t}, {"op", std::string(to_string(e.op))}});
  json outputs = {{"snapshot_stride", c.snapshot_stride}, {"x_c", c.x_c}};
  if (c.directory) outputs["directory"] = *c.directory;
  return {
      {"name", c.name},
      {"hamiltonian",
       {{"model", std::string(to_string(c.hamiltonian.model))},
        {"m", c.hamiltonian.m},
        {"m_D", c.hamiltonian.m_D},
        {"m_M", c.hamiltonian.m_M},
        {"c", c.hamiltonian.c},
        {"charge", c.hamiltonian.charge},
        {"potential", pot}}},
      {"grid", {{"n_points", c.n_points}, {"x_min", c.x_min}, {"x_max", c.x_max}}},
      {"packet",
       {{"x0", c.packet.x0},
        {"sigma", c.packet.sigma},
        {"p0", c.packet.p0},
        {"polarization", json::array({complex_to_json(c.packet.polarization(0)),
                                      complex_to_json(c.packet.polarization(1))})}}},
      {"plan", {{"dt", c.dt}, {"t_final", c.t_final}, {"observable_stride", c.observable_stride}, {"events", events}}},
      {"outputs", outputs},
  };
}

}  // namespace majsim::cli
