// spinbench: command-line front end for the spin simulation library.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "spinbench/avgham.hpp"
#include "spinbench/compile.hpp"
#include "spinbench/composite.hpp"
#include "spinbench/evolve.hpp"
#include "spinbench/experiments.hpp"
#include "spinbench/io.hpp"
#include "spinbench/metrics.hpp"
#include "spinbench/optimize.hpp"
#include "spinbench/shapes.hpp"
#include "spinbench/tomo.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spinbench;

namespace {

constexpr double kPi = std::numbers::pi;

struct Common {
  std::string out_dir = ".";
  std::string config_path;
  unsigned long long seed = 1;
  int threads = 0;  // accepted; evaluation is single-threaded per run
  json config;      // loaded file contents, flags take precedence
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out_dir, "output directory");
  cmd->add_option("--config", c.config_path, "JSON config file (flags override)");
  cmd->add_option("--seed", c.seed, "random seed (SPINBENCH_SEED env fallback)");
  cmd->add_option("--threads", c.threads, "parallelism cap");
}

void load_common(Common& c, const CLI::App* cmd) {
  if (!c.config_path.empty()) c.config = io::read_json_file(c.config_path);
  if (cmd->count("--seed") == 0) {
    if (c.config.contains("seed"))
      c.seed = c.config["seed"].get<unsigned long long>();
    else if (const char* env = std::getenv("SPINBENCH_SEED"))
      c.seed = std::stoull(env);
  }
  fs::create_directories(c.out_dir);
}

// Flags beat config file; config beats the built-in default.
template <typename T>
T resolve(const CLI::App* cmd, const std::string& flag, const Common& c, const std::string& key,
          T flag_value) {
  if (cmd->count(flag) > 0) return flag_value;
  if (c.config.contains(key)) return c.config[key].get<T>();
  return flag_value;
}

std::string out_path(const Common& c, const std::string& name) {
  return (fs::path(c.out_dir) / name).string();
}

void write_resolved_config(const Common& c, const std::string& cmd, json resolved) {
  resolved["command"] = cmd;
  resolved["seed"] = c.seed;
  io::write_json_file(out_path(c, cmd + "_config.json"), resolved);
}

SpinSystem load_system(const Common& c, const std::string& path) {
  if (!path.empty()) return io::spin_system_from_json(io::read_json_file(path));
  if (c.config.contains("system")) return io::spin_system_from_json(c.config["system"]);
  throw std::invalid_argument("no spin system given (--system or config \"system\")");
}

// "1ms", "25us", "0.002s", or bare seconds.
double parse_duration(const std::string& s) {
  size_t pos = 0;
  double v = std::stod(s, &pos);
  std::string unit = s.substr(pos);
  if (unit.empty() || unit == "s") return v;
  if (unit == "ms") return v * 1e-3;
  if (unit == "us") return v * 1e-6;
  throw std::invalid_argument("bad duration: " + s);
}

// "lo:hi:step" inclusive linear grid.
std::vector<double> parse_range(const std::string& s) {
  double lo, hi, step;
  if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0)
    throw std::invalid_argument("bad range (want lo:hi:step): " + s);
  std::vector<double> g;
  for (double v = lo; v <= hi + 0.5 * step; v += step) g.push_back(v);
  return g;
}

void write_matrix_csv(const Common& c, const std::string& name, const Mat& m) {
  std::vector<std::vector<double>> rows;
  for (int a = 0; a < m.rows(); ++a)
    for (int b = 0; b < m.cols(); ++b)
      rows.push_back({(double)a, (double)b, m(a, b).real(), m(a, b).imag()});
  io::write_csv(out_path(c, name), {"row", "col", "re", "im"}, rows);
}

int cmd_simulate(const Common& c, const CLI::App* cmd, const std::string& system_path,
                 const std::string& sequence_path, bool relax, double sample_dt) {
  SpinSystem sys = load_system(c, system_path);
  Sequence seq;
  if (!sequence_path.empty())
    seq = io::sequence_from_json(io::read_json_file(sequence_path));
  else if (c.config.contains("sequence"))
    seq = io::sequence_from_json(c.config["sequence"]);

  EvolveOptions opts;
  opts.relaxation = resolve(cmd, "--relax", c, "relaxation", relax);
  opts.sample_dt_s = resolve(cmd, "--sample-dt", c, "sample_dt_s", sample_dt);

  EvolveResult res = evolve_sequence(sys, seq, thermal_state(sys), opts);
  write_matrix_csv(c, "rho_final.csv", res.rho);
  if (!opts.relaxation) write_matrix_csv(c, "unitary.csv", sequence_unitary(sys, seq));
  if (!res.trajectory.empty())
    io::write_trajectory_csv(out_path(c, "trajectory.csv"), res.trajectory);

  json resolved;
  resolved["system"] = io::to_json(sys);
  resolved["sequence"] = io::to_json(seq);
  resolved["relaxation"] = opts.relaxation;
  resolved["sample_dt_s"] = opts.sample_dt_s;
  write_resolved_config(c, "simulate", resolved);
  return 0;
}

int cmd_respond(const Common& c, const std::string& shape, const std::string& tpw,
                double angle_deg, const std::string& detune, int n_slices) {
  ShapeSpec spec;
  spec.family = shape_family_from_string(shape);
  spec.n_slices = n_slices;
  if (c.config.contains("shape")) spec = io::shape_spec_from_json(c.config["shape"]);
  double t_pw = parse_duration(tpw);
  std::vector<double> grid = parse_range(detune);

  auto resp = frequency_response(spec, t_pw, angle_deg * kPi / 180.0, grid);
  std::vector<std::vector<double>> rows;
  for (const auto& p : resp) rows.push_back({p.detuning_hz, p.mz, p.mxy()});
  io::write_csv(out_path(c, "response.csv"), {"detuning_hz", "mz", "mxy"}, rows);

  json resolved;
  resolved["shape"] = io::to_json(spec);
  resolved["tpw_s"] = t_pw;
  resolved["angle_deg"] = angle_deg;
  resolved["detune"] = detune;
  write_resolved_config(c, "respond", resolved);
  return 0;
}

int cmd_composite(const Common& c, const std::string& name, double theta_deg,
                  const std::string& error, const std::string& eps) {
  double theta = theta_deg * kPi / 180.0;
  auto seq = composite_library(name, theta);
  ErrorKind kind;
  if (error == "amplitude_linear") kind = ErrorKind::amplitude_linear;
  else if (error == "phase_offset") kind = ErrorKind::phase_offset;
  else if (error == "resonance_offset") kind = ErrorKind::resonance_offset;
  else throw std::invalid_argument("unknown error kind: " + error);

  // Net rotations: bb1 -> x(theta); sym_180 -> y(180); length_comp_180 ->
  // x(180); offres_y -> y(90).
  RotationSpec target_rot;
  target_rot.angle = name == "bb1" ? theta : (name == "offres_y" ? kPi / 2 : kPi);
  if (name == "sym_180" || name == "offres_y") target_rot.axis_phase = kPi / 2;
  Mat target = ideal_rotation(target_rot);

  auto sweep = fidelity_sweep(seq, target, kind, parse_range(eps));
  std::vector<std::vector<double>> rows;
  for (const auto& p : sweep) rows.push_back({p.epsilon, p.avg_gate_fidelity});
  io::write_csv(out_path(c, "sweep.csv"), {"epsilon", "avg_gate_fidelity"}, rows);

  json resolved;
  resolved["name"] = name;
  resolved["theta_deg"] = theta_deg;
  resolved["error"] = error;
  resolved["eps"] = eps;
  write_resolved_config(c, "composite", resolved);
  return 0;
}

int cmd_refocus(const Common& c, const std::string& system_path, int n, const std::string& keep,
                const std::string& scheme_kind, double interval) {
  SpinSystem sys;
  if (!system_path.empty() || c.config.contains("system")) {
    sys = load_system(c, system_path);
    n = sys.n;
  } else {
    sys.n = n;
    sys.offsets_hz.assign(n, 0.0);
    sys.j_hz = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) sys.j_hz(a, b) = sys.j_hz(b, a) = 10.0 * (a + 1) + (b + 1);
  }

  std::optional<std::pair<int, int>> keep_pair;
  if (!keep.empty()) {
    int a, b;
    if (std::sscanf(keep.c_str(), "%d,%d", &a, &b) != 2)
      throw std::invalid_argument("bad --keep (want i,j): " + keep);
    keep_pair = {a, b};
  }

  RefocusScheme scheme = scheme_kind == "doubling" ? doubling_scheme(n, interval)
                                                   : hadamard_scheme(n, keep_pair, interval);
  io::write_scheme_csv(out_path(c, "scheme.csv"), scheme);

  SchemeReport rep = verify_scheme(scheme, sys);
  json jr;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      json e;
      e["i"] = a;
      e["j"] = b;
      e["j_eff_hz"] = rep.j_eff_hz(a, b);
      e["j_target_hz"] = rep.j_target_hz(a, b);
      jr["couplings"].push_back(e);
    }
  jr["max_dev_hz"] = rep.max_dev_hz;
  io::write_json_file(out_path(c, "verify.json"), jr);

  json resolved;
  resolved["n"] = n;
  resolved["keep"] = keep;
  resolved["scheme"] = scheme_kind;
  resolved["interval_s"] = interval;
  resolved["system"] = io::to_json(sys);
  write_resolved_config(c, "refocus", resolved);
  return 0;
}

int cmd_avgham(const Common& c, const std::string& system_path, const std::string& cycle,
               double tau) {
  SpinSystem sys = load_system(c, system_path);
  DecouplingCycle cy;
  if (cycle == "wahuha4") cy = DecouplingCycle::wahuha4;
  else if (cycle == "echo3") cy = DecouplingCycle::echo3;
  else throw std::invalid_argument("unknown cycle: " + cycle);

  DecouplingReport rep = decoupling_report(sys, cy, tau);
  json jr;
  jr["cycle_time_s"] = rep.magnus.cycle_time_s;
  jr["h0_norm"] = rep.magnus.h0.norm();
  jr["h1_norm"] = rep.magnus.h1.norm();
  jr["dipolar_residual"] = rep.dipolar_residual;
  for (size_t i = 0; i < rep.zeeman_scale.size(); ++i) {
    json e;
    e["spin"] = (int)i;
    e["scale"] = rep.zeeman_scale[i];
    e["axis"] = {rep.zeeman_axis[i](0), rep.zeeman_axis[i](1), rep.zeeman_axis[i](2)};
    jr["zeeman"].push_back(e);
  }
  io::write_json_file(out_path(c, "avgham.json"), jr);

  json resolved;
  resolved["system"] = io::to_json(sys);
  resolved["cycle"] = cycle;
  resolved["tau_s"] = tau;
  write_resolved_config(c, "avgham", resolved);
  return 0;
}

int cmd_tomo(const Common& c, const std::string& records_path, int n, bool project_psd) {
  auto recs = io::read_measurements_csv(records_path);
  auto settings = default_settings(n);
  std::vector<std::pair<ReadoutSetting, std::vector<double>>> readouts;
  for (size_t s = 0; s < settings.size(); ++s) readouts.push_back({settings[s], {}});
  for (const auto& r : recs) {
    if (r.setting_id < 0 || r.setting_id >= (int)settings.size())
      throw std::invalid_argument("setting_id out of range");
    auto& vals = readouts[r.setting_id].second;
    if ((int)vals.size() != r.observable_id)
      throw std::invalid_argument("observable ids must be dense and ordered per setting");
    vals.push_back(r.value);
  }
  StateTomoOptions opts;
  opts.project_psd = project_psd;
  Mat rho = state_tomography(readouts, n, opts);
  write_matrix_csv(c, "rho_reconstructed.csv", rho);

  json resolved;
  resolved["records"] = records_path;
  resolved["n"] = n;
  resolved["project_psd"] = project_psd;
  write_resolved_config(c, "tomo", resolved);
  return 0;
}

int cmd_optimize(const Common& c, const std::string& system_path, int spin, double angle_deg,
                 double phase_deg, double goal, int max_segments, int restarts) {
  SpinSystem sys = load_system(c, system_path);
  PulseSearchSpec spec;
  spec.fidelity_goal = goal;
  spec.max_segments = max_segments;
  spec.restarts = restarts;
  spec.target = rotation(sys.n, spin, phase_deg * kPi / 180.0, angle_deg * kPi / 180.0);

  PulseSearchResult res = find_pulse(sys, spec, c.seed);

  json items = json::array();
  for (const auto& seg : res.segments) {
    json e;
    e["type"] = "pulse";
    e["duration_s"] = seg.duration_s;
    e["amp_hz"] = seg.amp_hz;
    e["phase_rad"] = seg.phase_rad;
    e["transmitter_hz"] = seg.transmitter_hz;
    e["targets"] = seg.targets;
    items.push_back(e);
  }
  json jr;
  jr["segments"] = items;
  jr["fidelity"] = res.fidelity;
  jr["reached_goal"] = res.reached_goal;
  io::write_json_file(out_path(c, "pulse.json"), jr);

  std::vector<std::vector<double>> rows;
  for (size_t k = 0; k < res.trace.size(); ++k) rows.push_back({(double)k, res.trace[k]});
  io::write_csv(out_path(c, "trace.csv"), {"iteration", "best_value"}, rows);

  json resolved;
  resolved["system"] = io::to_json(sys);
  resolved["spin"] = spin;
  resolved["angle_deg"] = angle_deg;
  resolved["phase_deg"] = phase_deg;
  resolved["fidelity_goal"] = goal;
  resolved["max_segments"] = max_segments;
  resolved["restarts"] = restarts;
  write_resolved_config(c, "optimize", resolved);
  return res.reached_goal ? 0 : 2;
}

int cmd_experiment(const Common& c, const std::string& system_path, const std::string& kind_s,
                   const std::string& grid_s, double amp, int n_pulses, const std::string& noise_s,
                   double width, double sigma, double corr_time, int realizations) {
  SpinSystem sys = load_system(c, system_path);
  ExperimentKind kind = experiment_kind_from_string(kind_s);
  ExperimentParams params;
  params.grid = parse_range(grid_s);
  params.amp_hz = amp;
  params.n_pulses = n_pulses;
  NoiseSpec noise;
  if (noise_s == "none") noise.kind = NoiseKind::none;
  else if (noise_s == "lorentzian") noise.kind = NoiseKind::static_lorentzian_inhomogeneity;
  else if (noise_s == "ou") noise.kind = NoiseKind::ou_process;
  else throw std::invalid_argument("unknown noise kind: " + noise_s);
  noise.width_hz = width;
  noise.sigma_hz = sigma;
  noise.corr_time_s = corr_time;
  noise.realizations = realizations;
  noise.seed = c.seed;

  ExperimentResult res = run_experiment(sys, kind, params, noise);
  std::vector<std::string> header{"abscissa"};
  for (const auto& [name, _] : res.series) header.push_back(name);
  std::vector<std::vector<double>> rows;
  for (size_t k = 0; k < res.abscissa.size(); ++k) {
    std::vector<double> row{res.abscissa[k]};
    for (const auto& [_, v] : res.series) row.push_back(v[k]);
    rows.push_back(row);
  }
  io::write_csv(out_path(c, "experiment.csv"), header, rows);

  json jf;
  for (const auto& [name, fit] : res.fits) {
    json e;
    e["tau_s"] = fit.tau_s;
    e["amp"] = fit.amp;
    e["offset"] = fit.offset;
    e["residual"] = fit.residual;
    jf[name] = e;
  }
  io::write_json_file(out_path(c, "fits.json"), jf);

  json resolved;
  resolved["system"] = io::to_json(sys);
  resolved["kind"] = kind_s;
  resolved["grid"] = grid_s;
  resolved["amp_hz"] = amp;
  resolved["n_pulses"] = n_pulses;
  resolved["noise"] = noise_s;
  resolved["width_hz"] = width;
  resolved["sigma_hz"] = sigma;
  resolved["corr_time_s"] = corr_time;
  resolved["realizations"] = realizations;
  write_resolved_config(c, "experiment", resolved);
  return 0;
}

int cmd_spectrum(const Common& c, const std::string& system_path, double dwell, int points,
                 double lb) {
  SpinSystem sys = load_system(c, system_path);
  // Collective 90 about x on the thermal state excites every spin.
  Mat r90 = Mat::Identity(sys.dim(), sys.dim());
  for (int i = 0; i < sys.n; ++i) r90 = rotation(sys.n, i, 0.0, kPi / 2) * r90;
  Mat rho0 = r90 * thermal_state(sys) * r90.adjoint();

  SpectrumResult res = spectrum(sys, rho0, dwell, points, lb);
  std::vector<std::vector<double>> rows;
  for (size_t k = 0; k < res.freq_hz.size(); ++k)
    rows.push_back({res.freq_hz[k], res.spectrum[k].real(), res.spectrum[k].imag(),
                    std::abs(res.spectrum[k])});
  io::write_csv(out_path(c, "spectrum.csv"), {"freq_hz", "re", "im", "abs"}, rows);
  rows.clear();
  for (size_t k = 0; k < res.t_s.size(); ++k)
    rows.push_back({res.t_s[k], res.fid[k].real(), res.fid[k].imag()});
  io::write_csv(out_path(c, "fid.csv"), {"t_s", "re", "im"}, rows);

  json resolved;
  resolved["system"] = io::to_json(sys);
  resolved["dwell_s"] = dwell;
  resolved["points"] = points;
  resolved["line_broadening_hz"] = lb;
  write_resolved_config(c, "spectrum", resolved);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinbench: coupled spin-1/2 simulation and pulse engineering"};
  app.require_subcommand(1);

  Common c;

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run a sequence on a system");
  std::string sim_system, sim_sequence;
  bool sim_relax = false;
  double sim_sample_dt = 0.0;
  simulate->add_option("--system", sim_system, "system JSON");
  simulate->add_option("--sequence", sim_sequence, "sequence JSON");
  simulate->add_flag("--relax", sim_relax, "interleave T1/T2 relaxation");
  simulate->add_option("--sample-dt", sim_sample_dt, "trajectory sampling step (s)");
  add_common(simulate, c);

  // respond
  auto* respond = app.add_subcommand("respond", "shape frequency response");
  std::string rsp_shape = "rectangular", rsp_tpw = "1ms", rsp_detune = "-2000:2000:10";
  double rsp_angle = 180.0;
  int rsp_slices = 256;
  respond->add_option("--shape", rsp_shape, "shape family");
  respond->add_option("--tpw", rsp_tpw, "pulse width (e.g. 1ms)");
  respond->add_option("--angle", rsp_angle, "nominal flip angle (deg)");
  respond->add_option("--detune", rsp_detune, "detuning grid lo:hi:step (Hz)");
  respond->add_option("--slices", rsp_slices, "shape slices");
  add_common(respond, c);

  // composite
  auto* composite = app.add_subcommand("composite", "composite pulse fidelity sweep");
  std::string cp_name = "bb1", cp_error = "amplitude_linear", cp_eps = "-0.3:0.3:0.02";
  double cp_theta = 90.0;
  composite->add_option("--name", cp_name, "library sequence name");
  composite->add_option("--theta", cp_theta, "target angle (deg, bb1 only)");
  composite->add_option("--error", cp_error, "error kind");
  composite->add_option("--eps", cp_eps, "epsilon grid lo:hi:step");
  add_common(composite, c);

  // refocus
  auto* refocus = app.add_subcommand("refocus", "refocusing scheme + verification");
  std::string rf_system, rf_keep, rf_scheme = "hadamard";
  int rf_n = 4;
  double rf_interval = 1e-3;
  refocus->add_option("--system", rf_system, "system JSON");
  refocus->add_option("--n", rf_n, "number of spins");
  refocus->add_option("--keep", rf_keep, "coupling to keep, i,j");
  refocus->add_option("--scheme", rf_scheme, "hadamard|doubling");
  refocus->add_option("--interval", rf_interval, "base interval (s)");
  add_common(refocus, c);

  // avgham
  auto* avgham = app.add_subcommand("avgham", "average Hamiltonian report");
  std::string ah_system, ah_cycle = "wahuha4";
  double ah_tau = 1e-5;
  avgham->add_option("--system", ah_system, "system JSON");
  avgham->add_option("--cycle", ah_cycle, "wahuha4|echo3");
  avgham->add_option("--tau", ah_tau, "base interval (s)");
  add_common(avgham, c);

  // tomo
  auto* tomo = app.add_subcommand("tomo", "state tomography from measurement records");
  std::string tm_records;
  int tm_n = 2;
  bool tm_psd = false;
  tomo->add_option("--records", tm_records, "measurement CSV")->required();
  tomo->add_option("--n", tm_n, "number of qubits");
  tomo->add_flag("--project-psd", tm_psd, "project the estimate onto PSD matrices");
  add_common(tomo, c);

  // optimize
  auto* optimize = app.add_subcommand("optimize", "pulse search for a target rotation");
  std::string op_system;
  int op_spin = 0, op_segments = 6, op_restarts = 8;
  double op_angle = 90.0, op_phase = 0.0, op_goal = 0.99;
  optimize->add_option("--system", op_system, "system JSON");
  optimize->add_option("--spin", op_spin, "target spin");
  optimize->add_option("--angle", op_angle, "target angle (deg)");
  optimize->add_option("--phase", op_phase, "target axis azimuth (deg)");
  optimize->add_option("--goal", op_goal, "fidelity goal");
  optimize->add_option("--max-segments", op_segments, "segment cap");
  optimize->add_option("--restarts", op_restarts, "restarts per depth");
  add_common(optimize, c);

  // experiment
  auto* experiment = app.add_subcommand("experiment", "standard single-spin experiments");
  std::string ex_system, ex_kind = "rabi", ex_grid = "0:0.01:0.0005", ex_noise = "none";
  double ex_amp = 100.0, ex_width = 0.0, ex_sigma = 0.0, ex_corr = 1e-3;
  int ex_npulses = 1, ex_real = 1;
  experiment->add_option("--system", ex_system, "system JSON");
  experiment->add_option("--kind", ex_kind, "experiment kind");
  experiment->add_option("--grid", ex_grid, "abscissa grid lo:hi:step");
  experiment->add_option("--amp", ex_amp, "drive amplitude (Hz)");
  experiment->add_option("--n-pulses", ex_npulses, "CP/CPMG refocusing pulses");
  experiment->add_option("--noise", ex_noise, "none|lorentzian|ou");
  experiment->add_option("--width", ex_width, "Lorentzian FWHM (Hz)");
  experiment->add_option("--sigma", ex_sigma, "OU sigma (Hz)");
  experiment->add_option("--corr-time", ex_corr, "OU correlation time (s)");
  experiment->add_option("--realizations", ex_real, "noise realizations");
  add_common(experiment, c);

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "simulated spectrum after a 90");
  std::string sp_system;
  double sp_dwell = 1e-4, sp_lb = 0.0;
  int sp_points = 1024;
  spectrum->add_option("--system", sp_system, "system JSON");
  spectrum->add_option("--dwell", sp_dwell, "dwell time (s)");
  spectrum->add_option("--points", sp_points, "acquisition points");
  spectrum->add_option("--lb", sp_lb, "line broadening (Hz)");
  add_common(spectrum, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    CLI::App* sub = app.get_subcommands().at(0);
    load_common(c, sub);
    if (sub == simulate)
      return cmd_simulate(c, sub, sim_system, sim_sequence, sim_relax, sim_sample_dt);
    if (sub == respond) return cmd_respond(c, rsp_shape, rsp_tpw, rsp_angle, rsp_detune, rsp_slices);
    if (sub == composite) return cmd_composite(c, cp_name, cp_theta, cp_error, cp_eps);
    if (sub == refocus) return cmd_refocus(c, rf_system, rf_n, rf_keep, rf_scheme, rf_interval);
    if (sub == avgham) return cmd_avgham(c, ah_system, ah_cycle, ah_tau);
    if (sub == tomo) return cmd_tomo(c, tm_records, tm_n, tm_psd);
    if (sub == optimize)
      return cmd_optimize(c, op_system, op_spin, op_angle, op_phase, op_goal, op_segments,
                          op_restarts);
    if (sub == experiment)
      return cmd_experiment(c, ex_system, ex_kind, ex_grid, ex_amp, ex_npulses, ex_noise, ex_width,
                            ex_sigma, ex_corr, ex_real);
    if (sub == spectrum) return cmd_spectrum(c, sp_system, sp_dwell, sp_points, sp_lb);
    std::cerr << "unknown subcommand\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}
