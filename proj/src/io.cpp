#include "spinbench/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spinbench::io {

namespace {
std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return f;
}
}  // namespace

json to_json(const SpinSystem& sys) {
  json j;
  j["n"] = sys.n;
  j["offsets_hz"] = sys.offsets_hz;
  std::vector<std::vector<double>> rows(sys.n, std::vector<double>(sys.n, 0.0));
  for (int a = 0; a < sys.n; ++a)
    for (int b = 0; b < sys.n; ++b)
      if (sys.j_hz.rows() == sys.n) rows[a][b] = sys.j_hz(a, b);
  j["j_hz"] = rows;
  j["model"] = to_string(sys.model);
  if (sys.model == CouplingModel::dipolar_secular && sys.geometry.b_hz.rows() == sys.n) {
    std::vector<std::vector<double>> bb(sys.n, std::vector<double>(sys.n, 0.0));
    for (int a = 0; a < sys.n; ++a)
      for (int b = 0; b < sys.n; ++b) bb[a][b] = sys.geometry.b_hz(a, b);
    j["b_hz"] = bb;
  }
  j["t1_s"] = sys.t1_s;
  j["t2_s"] = sys.t2_s;
  return j;
}

SpinSystem spin_system_from_json(const json& j) {
  SpinSystem sys;
  sys.n = j.at("n").get<int>();
  sys.offsets_hz = j.at("offsets_hz").get<std::vector<double>>();
  sys.j_hz = Eigen::MatrixXd::Zero(sys.n, sys.n);
  if (j.contains("j_hz")) {
    auto rows = j.at("j_hz").get<std::vector<std::vector<double>>>();
    if ((int)rows.size() != sys.n) throw std::invalid_argument("j_hz row count != n");
    for (int a = 0; a < sys.n; ++a) {
      if ((int)rows[a].size() != sys.n) throw std::invalid_argument("j_hz is not square");
      for (int b = 0; b < sys.n; ++b) sys.j_hz(a, b) = rows[a][b];
    }
  }
  sys.model = j.contains("model") ? coupling_model_from_string(j.at("model").get<std::string>())
                                  : CouplingModel::weak_zz;
  if (j.contains("b_hz")) {
    auto rows = j.at("b_hz").get<std::vector<std::vector<double>>>();
    sys.geometry.b_hz = Eigen::MatrixXd::Zero(sys.n, sys.n);
    for (int a = 0; a < sys.n && a < (int)rows.size(); ++a)
      for (int b = 0; b < sys.n && b < (int)rows[a].size(); ++b)
        sys.geometry.b_hz(a, b) = rows[a][b];
  }
  if (j.contains("t1_s")) sys.t1_s = j.at("t1_s").get<std::vector<double>>();
  if (j.contains("t2_s")) sys.t2_s = j.at("t2_s").get<std::vector<double>>();
  sys.validate();
  return sys;
}

json to_json(const Sequence& seq) {
  json items = json::array();
  for (const auto& it : seq.items) {
    json ji;
    if (const auto* p = std::get_if<PulseSegment>(&it)) {
      ji["type"] = "pulse";
      ji["duration_s"] = p->duration_s;
      ji["amp_hz"] = p->amp_hz;
      ji["phase_rad"] = p->phase_rad;
      ji["transmitter_hz"] = p->transmitter_hz;
      ji["targets"] = p->targets;
    } else if (const auto* r = std::get_if<IdealRotation>(&it)) {
      ji["type"] = "rotation";
      ji["spin"] = r->spin;
      ji["axis_phi"] = r->axis_phi;
      ji["angle"] = r->angle;
    } else if (const auto* z = std::get_if<FrameZ>(&it)) {
      ji["type"] = "framez";
      ji["spin"] = z->spin;
      ji["angle"] = z->angle;
    } else if (const auto* d = std::get_if<Delay>(&it)) {
      ji["type"] = "delay";
      ji["t_s"] = d->t_s;
    }
    items.push_back(std::move(ji));
  }
  json j;
  j["items"] = std::move(items);
  j["global_phase_re"] = seq.global_phase.real();
  j["global_phase_im"] = seq.global_phase.imag();
  return j;
}

Sequence sequence_from_json(const json& j) {
  Sequence seq;
  const json& items = j.is_array() ? j : j.at("items");
  for (const auto& ji : items) {
    const std::string type = ji.at("type").get<std::string>();
    if (type == "pulse") {
      PulseSegment p;
      p.duration_s = ji.at("duration_s").get<double>();
      p.amp_hz = ji.at("amp_hz").get<double>();
      p.phase_rad = ji.at("phase_rad").get<double>();
      p.transmitter_hz = ji.value("transmitter_hz", 0.0);
      p.targets = ji.value("targets", std::vector<int>{});
      seq.push(p);
    } else if (type == "rotation") {
      seq.push(IdealRotation{ji.at("spin").get<int>(), ji.at("axis_phi").get<double>(),
                             ji.at("angle").get<double>()});
    } else if (type == "framez") {
      seq.push(FrameZ{ji.at("spin").get<int>(), ji.at("angle").get<double>()});
    } else if (type == "delay") {
      seq.push(Delay{ji.at("t_s").get<double>()});
    } else {
      throw std::invalid_argument("unknown sequence item type: " + type);
    }
  }
  if (!j.is_array() && j.contains("global_phase_re"))
    seq.global_phase = {j.at("global_phase_re").get<double>(),
                        j.value("global_phase_im", 0.0)};
  return seq;
}

json to_json(const ShapeSpec& spec) {
  json j;
  j["family"] = to_string(spec.family);
  j["params"] = spec.params;
  j["n_slices"] = spec.n_slices;
  return j;
}

ShapeSpec shape_spec_from_json(const json& j) {
  ShapeSpec spec;
  spec.family = shape_family_from_string(j.at("family").get<std::string>());
  if (j.contains("params")) spec.params = j.at("params").get<std::map<std::string, double>>();
  spec.n_slices = j.value("n_slices", 256);
  return spec;
}

std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  auto f = open_out(path);
  for (size_t k = 0; k < header.size(); ++k) f << (k ? "," : "") << header[k];
  f << "\n";
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw std::invalid_argument("csv row/header size mismatch");
    for (size_t k = 0; k < row.size(); ++k) f << (k ? "," : "") << format_double(row[k]);
    f << "\n";
  }
}

void write_trajectory_csv(const std::string& path, const std::vector<TrajectorySample>& traj) {
  auto f = open_out(path);
  f << "t_s,observable_name,value\n";
  for (const auto& s : traj)
    f << format_double(s.t_s) << "," << s.observable << "," << format_double(s.value) << "\n";
}

void write_scheme_csv(const std::string& path, const RefocusScheme& scheme) {
  auto f = open_out(path);
  f << "intervals_s";
  for (double v : scheme.intervals_s) f << "," << format_double(v);
  f << "\n";
  for (int i = 0; i < scheme.signs.rows(); ++i) {
    f << "spin" << i;
    for (int k = 0; k < scheme.signs.cols(); ++k) f << "," << scheme.signs(i, k);
    f << "\n";
  }
}

void write_measurements_csv(const std::string& path, const std::vector<MeasurementRecord>& recs) {
  auto f = open_out(path);
  f << "setting_id,observable_id,value\n";
  for (const auto& r : recs)
    f << r.setting_id << "," << r.observable_id << "," << format_double(r.value) << "\n";
}

std::vector<MeasurementRecord> read_measurements_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::vector<MeasurementRecord> recs;
  std::string line;
  bool first = true;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    if (first) {  // header
      first = false;
      continue;
    }
    std::istringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c))
      throw std::runtime_error("bad measurement record: " + line);
    recs.push_back({std::stoi(a), std::stoi(b), std::stod(c)});
  }
  return recs;
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  return json::parse(f);
}

void write_json_file(const std::string& path, const json& j) {
  auto f = open_out(path);
  f << j.dump(2) << "\n";
}

}  // namespace spinbench::io
