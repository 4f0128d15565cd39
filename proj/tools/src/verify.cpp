#include "majsim/cli/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "majsim/cli/config.hpp"
#include "majsim/errors.hpp"

namespace majsim::cli {

using nlohmann::json;
namespace it = majsim::iontrap;

VerifyConfig parse_verify_config(const json& doc) {
  std::vector<std::string> errs;
  VerifyConfig v;
  FieldReader top(doc, "", errs);
  if (!top.ok()) throw ConfigError(errs);

  if (const json* t = top.child("iontrap", false)) {
    FieldReader r(*t, "iontrap", errs);
    it::IonTrapConfig& c = v.trap;
    r.number("nu", c.nu, false);
    r.number("delta", c.delta, false);
    r.number("eta", c.eta, false);
    r.number("Omega", c.Omega, false);
    r.number("Omega_tilde", c.Omega_tilde, false);
    r.number("Delta", c.Delta, false);
    r.number("omega0", c.omega0, false);
    long long n_a = c.n_a, n_b = c.n_b;
    r.integer("n_a", n_a, false);
    r.integer("n_b", n_b, false);
    c.n_a = static_cast<int>(std::clamp(n_a, 0LL, 4096LL));
    c.n_b = static_cast<int>(std::clamp(n_b, 0LL, 4096LL));
    c.nu_r = std::sqrt(3.0) * c.nu;
    c.eta_r = c.eta / std::pow(3.0, 0.25);
    r.number("nu_r", c.nu_r, false);
    r.number("eta_r", c.eta_r, false);
    r.finish();
  }
  if (const json* s = top.child("initial", false)) {
    FieldReader r(*s, "initial", errs);
    if (const json* sp = r.child("spinor", false)) {
      if (!sp->is_array() || sp->size() != 2) {
        r.error("spinor", "must be a two-entry array");
      } else {
        for (int i = 0; i < 2; ++i) {
          v.spinor(i) = complex_from_json((*sp)[static_cast<std::size_t>(i)],
                                          "initial.spinor[" + std::to_string(i) + "]", errs);
        }
      }
    }
    r.complex_pair("alpha", v.alpha, false);
    r.finish();
  }
  top.count("series_points", v.series_points, false);
  top.count("random_states", v.random_states, false);
  std::size_t seed = v.seed;
  top.count("seed", seed, false);
  v.seed = seed;
  top.finish();

  for (const auto& e : v.trap.validate()) errs.push_back("iontrap." + e);
  if (v.spinor.squaredNorm() == 0.0) errs.emplace_back("initial.spinor must be nonzero");
  if (std::abs(v.alpha) > 0.25 * std::sqrt(static_cast<double>(v.trap.n_a))) {
    errs.emplace_back("initial.alpha is too large for iontrap.n_a (|alpha| must not exceed sqrt(n_a) / 4)");
  }
  if (v.series_points == 0) errs.emplace_back("series_points must be positive");
  if (!errs.empty()) throw ConfigError(std::move(errs));
  return v;
}

VerifyConfig parse_verify_config_file(const std::filesystem::path& path) {
  return parse_verify_config(load_json_file(path));
}

json serialize(const VerifyConfig& v) {
  const it::IonTrapConfig& c = v.trap;
  return {{"iontrap",
           {{"nu", c.nu},
            {"nu_r", c.nu_r},
            {"delta", c.delta},
            {"eta", c.eta},
            {"eta_r", c.eta_r},
            {"Omega", c.Omega},
            {"Omega_tilde", c.Omega_tilde},
            {"Delta", c.Delta},
            {"omega0", c.omega0},
            {"n_a", c.n_a},
            {"n_b", c.n_b}}},
          {"initial",
           {{"spinor", json::array({complex_to_json(v.spinor(0)), complex_to_json(v.spinor(1))})},
            {"alpha", complex_to_json(v.alpha)}}},
          {"series_points", v.series_points},
          {"random_states", v.random_states},
          {"seed", v.seed}};
}

double verification_horizon(const it::IonTrapConfig& c) {
  const double period = it::mass_period(c);
  return std::isfinite(period) ? period : 20.0 * std::numbers::pi / c.delta;
}

namespace {

struct FidelityJob {
  std::string label;
  it::IonTrapConfig config;
  bool keep_series = false;
  it::FidelitySeries series;
  std::optional<std::string> error;
};

Eigen::VectorXcd initial_state(const VerifyConfig& cfg, const it::IonTrapConfig& trap) {
  return it::lifted_register_state(trap, cfg.spinor.normalized(), it::coherent_state(trap.n_a, cfg.alpha));
}

double ratio(const it::IonTrapConfig& c) {
  return c.Omega > 0.0 ? c.delta / (c.eta_r * c.Omega) : std::numeric_limits<double>::infinity();
}

void run_job(FidelityJob& job, const VerifyConfig& cfg) {
  const Eigen::VectorXcd initial = initial_state(cfg, job.config);
  const std::size_t series_points = cfg.series_points;
  const double horizon = verification_horizon(job.config);
  const double steps = std::ceil(horizon / it::default_time_step(job.config));
  const std::size_t stride =
      job.keep_series ? std::max<std::size_t>(1, static_cast<std::size_t>(steps) / series_points) : 0;
  try {
    job.series = it::dispersive_fidelity(job.config, initial, horizon, it::dispersive_mass_sign(job.config), {},
                                         stride);
  } catch (const NumericalError& e) {
    job.error = e.what();
  }
}

double rel_error(double measured, double expected, double floor) {
  return std::abs(measured - expected) / std::max(std::abs(expected), floor);
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

VerifyOutcome verify_iontrap(const VerifyConfig& cfg, unsigned threads, const VerifyThresholds& th) {
  const it::IonTrapConfig& trap = cfg.trap;
  trap.require_valid();
  const Eigen::VectorXcd initial = initial_state(cfg, trap);
  const bool has_mass = trap.Omega > 0.0;

  std::vector<FidelityJob> jobs;
  jobs.push_back({"delta", trap, true, {}, {}});
  if (has_mass) {
    for (auto [label, scale] : {std::pair{"delta/sqrt2", std::numbers::sqrt2 / 2}, std::pair{"delta/2", 0.5}}) {
      it::IonTrapConfig c = trap;
      c.delta *= scale;
      jobs.push_back({label, c, false, {}, {}});
    }
    // Ten times closer to resonance the stretch mode is displaced by ~4 g / delta,
    // which needs more Fock levels than the dispersive runs.
    it::IonTrapConfig low = trap;
    low.delta *= 0.1;
    low.n_b = std::max(low.n_b, 16);
    jobs.push_back({"delta/10", low, false, {}, {}});
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) run_job(jobs[i], cfg);
  };
  const unsigned n_workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  VerifyOutcome out;
  json checks = json::array();
  auto check = [&](const std::string& name, double value, double threshold, bool pass, const std::string& note = {}) {
    json entry = {{"name", name}, {"value", number_or_null(value)}, {"threshold", threshold}, {"pass", pass}};
    if (!note.empty()) entry["note"] = note;
    checks.push_back(std::move(entry));
  };
  // Only the primary run can abort the verification; the auxiliary runs
  // closer to resonance surface truncation failures as failed checks.
  auto failed_job = [&](const FidelityJob& job) {
    if (!job.error) return false;
    if (&job == &jobs.front()) out.aborted = true;
    checks.push_back({{"name", "integration " + job.label}, {"pass", false}, {"error", *job.error}});
    return true;
  };

  const it::EffectiveParams eff = it::effective_params(trap);
  // The lifted register is entrywise real, so <i(a^dag - a)> vanishes on it;
  // gamma refers to the encoded complex state, spinor (x) |alpha> with the
  // ancilla in |0>, whose momentum is the physical one.
  Eigen::Vector4cd encoded_spins = Eigen::Vector4cd::Zero();
  encoded_spins.head<2>() = cfg.spinor.normalized();
  const Eigen::VectorXcd encoded = it::product_state(trap, encoded_spins, it::coherent_state(trap.n_a, cfg.alpha),
                                                     it::fock_state(trap.n_b, 0));
  const json effective = {{"c_sim", eff.c_sim},
                          {"mc2_sim", eff.mc2_sim},
                          {"detuning_ratio", number_or_null(ratio(trap))},
                          {"gamma", number_or_null(it::gamma_ratio(trap, encoded))},
                          {"gamma_closed_form", number_or_null(it::gamma_ratio_closed_form(trap, encoded))},
                          {"mass_period", number_or_null(it::mass_period(trap))},
                          {"mass_sign", it::dispersive_mass_sign(trap)}};

  const FidelityJob& base = jobs.front();
  json fidelity = {{"horizon", verification_horizon(trap)}};
  if (!failed_job(base)) {
    const auto& s = base.series;
    fidelity["dt"] = s.dt;
    fidelity["min_fidelity"] = s.min_fidelity;
    fidelity["max_leakage"] = s.max_leakage;
    fidelity["max_norm_drift"] = s.max_norm_drift;
    fidelity["t"] = s.t;
    fidelity["fidelity"] = s.fidelity;
    check("min_fidelity", s.min_fidelity, th.min_fidelity, s.min_fidelity >= th.min_fidelity,
          "minimum over one mass period");
    check("max_truncation_leakage", s.max_leakage, th.max_leakage, s.max_leakage <= th.max_leakage);
    check("max_norm_drift", s.max_norm_drift, th.max_norm_drift, s.max_norm_drift <= th.max_norm_drift);
  }

  json scaling = json::array();
  if (has_mass) {
    std::vector<double> normalized;
    bool complete = true;
    for (std::size_t i = 0; i < 3; ++i) {
      const FidelityJob& job = jobs[i];
      if (job.error) {
        complete = false;
        if (i > 0) failed_job(job);
        continue;
      }
      const double r = ratio(job.config);
      const double deficit = 1.0 - job.series.min_fidelity;
      normalized.push_back(deficit * r * r);
      scaling.push_back({{"label", job.label},
                         {"delta", job.config.delta},
                         {"detuning_ratio", r},
                         {"min_fidelity", job.series.min_fidelity},
                         {"deficit", deficit},
                         {"deficit_times_ratio_sq", deficit * r * r}});
    }
    if (complete) {
      const auto [lo, hi] = std::minmax_element(normalized.begin(), normalized.end());
      const double spread = *lo > 0.0 ? *hi / *lo : std::numeric_limits<double>::infinity();
      check("deficit_scaling", spread, th.scaling_factor, spread <= th.scaling_factor,
            "max/min of (1 - F_min) (delta / eta_r Omega)^2 over delta, delta/sqrt2, delta/2");
    }
    const FidelityJob& low = jobs[3];
    if (!failed_job(low) && !base.error) {
      check("degradation", low.series.min_fidelity, base.series.min_fidelity,
            low.series.min_fidelity < base.series.min_fidelity, "F_min at delta/10 must lie below F_min at delta");
    }
  } else {
    check("deficit_scaling", 0.0, th.scaling_factor, true, "no mass term (Omega = 0): nothing to scale");
  }

  // Slope table.
  struct Named {
    std::string label;
    Eigen::VectorXcd state;
  };
  std::vector<Named> states = {
      {"initial", initial},
      {"initial, alpha -> -alpha",
       it::lifted_register_state(trap, cfg.spinor.normalized(), it::coherent_state(trap.n_a, -cfg.alpha))},
      {"encoded complex state", encoded}};
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (std::size_t i = 0; i < cfg.random_states; ++i) {
    Eigen::Vector4cd spins;
    for (int k = 0; k < 4; ++k) spins(k) = {gauss(rng), gauss(rng)};
    const std::complex<double> a{uni(rng), uni(rng)};
    states.push_back({"random " + std::to_string(i),
                      it::product_state(trap, spins.normalized(), it::coherent_state(trap.n_a, a),
                                        it::fock_state(trap.n_b, 0))});
  }
  const double floor = 1e-3 / trap.Delta;
  json slopes = json::array();
  double worst_ak = 0.0, worst_u1 = 0.0, worst_protocol = 0.0;
  for (const auto& s : states) {
    const double ak = it::slope_Ak(trap, s.state), kin = it::kinetic_correlator(trap, s.state);
    const double u1 = it::slope_U1(trap, s.state), cross = it::cross_correlator(trap, s.state);
    const double proto = it::pseudo_helicity_protocol(trap, s.state), direct = it::pseudo_helicity_direct(trap, s.state);
    const double e_ak = rel_error(ak, kin, floor), e_u1 = rel_error(u1, cross, floor);
    const double e_p = rel_error(proto, direct, floor);
    worst_ak = std::max(worst_ak, e_ak);
    worst_u1 = std::max(worst_u1, e_u1);
    worst_protocol = std::max(worst_protocol, e_p);
    slopes.push_back({{"state", s.label},
                      {"slope_Ak", ak},
                      {"direct_kinetic", kin},
                      {"slope_U1", u1},
                      {"direct_cross", cross},
                      {"protocol", proto},
                      {"direct_pseudo_helicity", direct},
                      {"rel_error_Ak", e_ak},
                      {"rel_error_U1", e_u1},
                      {"rel_error_protocol", e_p}});
  }
  check("slope_Ak", worst_ak, th.slope_rel, worst_ak <= th.slope_rel, "worst relative error over the slope table");
  check("slope_U1", worst_u1, th.slope_rel, worst_u1 <= th.slope_rel, "worst relative error over the slope table");
  check("protocol", worst_protocol, th.protocol_rel, worst_protocol <= th.protocol_rel,
        "worst relative error over the slope table");

  out.pass = std::all_of(checks.begin(), checks.end(), [](const json& c) { return c.at("pass").get<bool>(); });
  out.report = {{"config", serialize(cfg)},
                {"effective", effective},
                {"fidelity", fidelity},
                {"scaling", scaling},
                {"slopes", slopes},
                {"checks", checks},
                {"pass", out.pass}};
  if (has_mass && !jobs[3].error) {
    out.report["degradation"] = {{"delta", jobs[3].config.delta},
                                 {"detuning_ratio", ratio(jobs[3].config)},
                                 {"min_fidelity", jobs[3].series.min_fidelity}};
  }
  return out;
}

}  // namespace majsim::cli
