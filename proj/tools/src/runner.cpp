#include "majsim/cli/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "majsim/cli/format.hpp"

namespace majsim::cli {

using nlohmann::json;

namespace {

json record_json(const ObservableRecord& r) {
  return {{"t", r.t},
          {"norm", r.norm},
          {"x_mean", r.x_mean},
          {"p_mean", r.p_mean},
          {"sigma_ph", r.sigma_ph},
          {"transmission", r.transmission},
          {"reality_residual", r.reality_residual}};
}

}  // namespace

std::string observables_csv(const ScenarioResult& result) {
  std::string out = "t,norm,x_mean,p_mean,sigma_ph,transmission,reality_residual\n";
  for (const auto& r : result.series) {
    for (double v : {r.t, r.norm, r.x_mean, r.p_mean, r.sigma_ph, r.transmission}) {
      out += format_double(v);
      out += ',';
    }
    out += format_double(r.reality_residual);
    out += '\n';
  }
  return out;
}

std::string snapshots_csv(const ScenarioResult& result, const Grid1D& grid) {
  if (result.snapshots.empty()) return {};
  const auto n_comp = result.snapshots.front().amplitudes.cols();
  std::string out = "t,x,rho";
  for (Eigen::Index c = 1; c <= n_comp; ++c) {
    out += ",re" + std::to_string(c) + ",im" + std::to_string(c);
  }
  out += '\n';
  const ObservableProbe probe(grid, grid.x_min());
  SpinorField field(grid, static_cast<int>(n_comp));
  for (const auto& snap : result.snapshots) {
    const std::string t = format_double(snap.t);
    field.amplitudes = snap.amplitudes;
    const std::vector<double> rho = probe.density(field);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const auto row = static_cast<Eigen::Index>(j);
      out += t;
      out += ',';
      out += format_double(grid.x(j));
      out += ',';
      out += format_double(rho[j]);
      for (Eigen::Index c = 0; c < n_comp; ++c) {
        out += ',';
        out += format_double(snap.amplitudes(row, c).real());
        out += ',';
        out += format_double(snap.amplitudes(row, c).imag());
      }
      out += '\n';
    }
  }
  return out;
}

json summarize(const ScenarioConfig& config, const ScenarioResult& result) {
  double max_drift = 0.0, max_residual = 0.0;
  for (const auto& r : result.series) {
    max_drift = std::max(max_drift, std::abs(r.norm - result.initial.norm));
    max_residual = std::max(max_residual, r.reality_residual);
  }
  const double dx = config.grid().dx();
  json events = json::array();
  for (const auto& e : config.events) events.push_back({{"t", e.t}, {"op", std::string(to_string(e.op))}});
  return {
      {"name", config.name},
      {"model", std::string(to_string(config.hamiltonian.model))},
      {"steps", config.n_steps()},
      {"dt", config.dt},
      {"t_final", config.t_final},
      {"x_c", config.x_c},
      {"events", events},
      {"initial", record_json(result.initial)},
      {"final", record_json(result.final)},
      {"transmission", result.final.transmission},
      {"reflection", result.final.norm - result.final.transmission},
      {"max_norm_drift", max_drift},
      {"max_reality_residual", max_residual},
      {"density_l1_final_vs_initial", density_l1_distance(result.final.density, result.initial.density, dx)},
      {"warnings", result.warnings},
  };
}

RunOutcome run_config(const ScenarioConfig& config, const std::filesystem::path& dir) {
  if (auto errs = validate(config); !errs.empty()) throw ConfigError(std::move(errs));
  const std::string started = utc_timestamp();
  const auto t0 = std::chrono::steady_clock::now();

  const Grid1D grid = config.grid();
  const ScenarioResult result = run_scenario(config.hamiltonian, config.plan(), grid, config.packet, config.x_c);

  const json canonical = serialize(config);
  const std::string config_text = canonical.dump(2) + "\n";
  OutputDir out(dir);
  out.write("config.json", config_text);
  out.write("observables.csv", observables_csv(result));
  if (config.snapshot_stride > 0) out.write("snapshots.csv", snapshots_csv(result, grid));
  const json summary = summarize(config, result);
  out.write("summary.json", summary.dump(2) + "\n");

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json manifest = {{"tool", "simulate"},
                   {"version", MAJSIM_VERSION},
                   {"scenario", config.name},
                   {"config_crc32", crc32_hex(canonical.dump())},
                   {"started", started},
                   {"finished", utc_timestamp()},
                   {"wall_seconds", seconds}};
  manifest = out.write_manifest(std::move(manifest));
  return {config.name, dir, summary, manifest};
}

std::vector<RunOutcome> run_all(const std::vector<ScenarioConfig>& configs, const std::filesystem::path& out,
                                unsigned threads) {
  std::set<std::string> names;
  for (const auto& c : configs) {
    if (!names.insert(c.name).second) throw ValidationError("scenario name '" + c.name + "' appears twice in the run set");
  }
  std::vector<RunOutcome> outcomes(configs.size());
  std::vector<std::exception_ptr> failures(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        const auto dir = configs.size() == 1 ? out : out / configs[i].name;
        outcomes[i] = run_config(configs[i], dir);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const unsigned n_workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(configs.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return outcomes;
}

}  // namespace majsim::cli
