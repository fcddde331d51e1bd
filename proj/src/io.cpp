#include "smallcap/io.hpp"

#include <fstream>
#include <sstream>

namespace smallcap {

Json to_json(const OrientedBox& b) {
  Json j;
  j["center"] = std::vector<double>(b.center.v.begin(), b.center.v.begin() + b.dim);
  std::vector<std::vector<double>> axes;
  for (int i = 0; i < b.dim; ++i)
    axes.emplace_back(b.axes[i].v.begin(), b.axes[i].v.begin() + b.dim);
  j["axes"] = axes;
  j["half_lengths"] = std::vector<double>(b.half.begin(), b.half.begin() + b.dim);
  return j;
}

OrientedBox box_from_json(const Json& j) {
  auto center = j.at("center").get<std::vector<double>>();
  auto axes = j.at("axes").get<std::vector<std::vector<double>>>();
  auto half = j.at("half_lengths").get<std::vector<double>>();
  OrientedBox b;
  b.dim = static_cast<int>(center.size());
  for (int i = 0; i < b.dim; ++i) {
    b.center.v[i] = center[static_cast<size_t>(i)];
    b.half[i] = half[static_cast<size_t>(i)];
    b.axes[i].dim = b.dim;
    for (int k = 0; k < b.dim; ++k) b.axes[i].v[k] = axes[static_cast<size_t>(i)][static_cast<size_t>(k)];
  }
  b.center.dim = b.dim;
  validate_box(b);
  return b;
}

Json to_json(const CapFamily& fam) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["curve"] = curve_name(fam.curve);
  j["R"] = fam.R;
  j["exponent"] = fam.exponent;
  j["is_sector"] = fam.is_sector;
  Json caps = Json::array();
  for (const auto& c : fam.caps) caps.push_back(to_json(c));
  j["caps"] = std::move(caps);
  j["anchors"] = fam.anchors;
  return j;
}

Json to_json(const SweepResult& res) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  Json cfg;
  cfg["curve"] = curve_name(res.config.curve);
  cfg["exponent"] = res.config.exponent;
  cfg["p"] = res.config.p;
  cfg["R_list"] = res.config.R_list;
  cfg["backend"] = backend_name(res.config.backend);
  cfg["example"] = example_name(res.config.example);
  cfg["jobs"] = res.config.jobs;
  cfg["seed"] = res.config.seed;
  j["config"] = std::move(cfg);
  Json pts = Json::array();
  for (const auto& p : res.points) {
    Json e;
    e["R"] = p.R;
    e["lhs"] = p.lhs;
    e["rhs"] = p.rhs;
    e["ratio"] = p.ratio;
    e["wall_time"] = p.wall_time;
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  j["fitted_slope"] = res.fitted_slope;
  j["slope_stderr"] = res.slope_stderr;
  j["predicted_slope"] = res.predicted_slope;
  j["tolerance"] = res.tolerance;
  j["fit_excluded_smallest"] = res.fit_excluded_smallest;
  j["verdict"] = res.pass ? "pass" : "fail";
  return j;
}

SweepResult sweep_result_from_json(const Json& j) {
  SweepResult res;
  const Json& cfg = j.at("config");
  res.config.curve = cfg.at("curve").get<std::string>() == "parabola" ? Curve::parabola : Curve::cone;
  res.config.exponent = cfg.at("exponent").get<double>();
  res.config.p = cfg.at("p").get<double>();
  res.config.R_list = cfg.at("R_list").get<std::vector<double>>();
  res.config.backend = cfg.at("backend").get<std::string>() == "fft" ? Backend::fft : Backend::indicator;
  std::string ex = cfg.at("example").get<std::string>();
  res.config.example = ex == "concentrated"  ? ExampleKind::concentrated
                       : ex == "flat"        ? ExampleKind::flat
                                             : ExampleKind::cone_bump_example;
  res.config.jobs = cfg.at("jobs").get<int>();
  res.config.seed = cfg.at("seed").get<uint64_t>();
  for (const Json& e : j.at("points")) {
    SweepPoint p;
    p.R = e.at("R").get<double>();
    p.lhs = e.at("lhs").get<double>();
    p.rhs = e.at("rhs").get<double>();
    p.ratio = e.at("ratio").get<double>();
    p.wall_time = e.at("wall_time").get<double>();
    res.points.push_back(p);
  }
  res.fitted_slope = j.at("fitted_slope").get<double>();
  res.slope_stderr = j.at("slope_stderr").get<double>();
  res.predicted_slope = j.at("predicted_slope").get<double>();
  res.tolerance = j.at("tolerance").get<double>();
  res.fit_excluded_smallest = j.at("fit_excluded_smallest").get<bool>();
  res.pass = j.at("verdict").get<std::string>() == "pass";
  return res;
}

std::string render_report(const SweepResult& res, const std::string& format) {
  if (res.points.empty()) throw std::invalid_argument("render_report: empty sweep result");
  if (format == "json") return to_json(res).dump(2) + "\n";
  if (format == "csv") {
    std::ostringstream os;
    os << "R,lhs,rhs,ratio,time\n";
    os.precision(17);
    for (const auto& p : res.points)
      os << p.R << "," << p.lhs << "," << p.rhs << "," << p.ratio << "," << p.wall_time << "\n";
    return os.str();
  }
  if (format == "markdown") {
    std::ostringstream os;
    os.precision(12);
    os << "# Sweep report\n\n";
    os << "curve: " << curve_name(res.config.curve) << ", exponent: " << res.config.exponent
       << ", p: " << res.config.p << ", backend: " << backend_name(res.config.backend)
       << ", example: " << example_name(res.config.example) << "\n\n";
    os << "| R | lhs | rhs | ratio | time (s) |\n|---|---|---|---|---|\n";
    for (const auto& p : res.points)
      os << "| " << p.R << " | " << p.lhs << " | " << p.rhs << " | " << p.ratio << " | " << p.wall_time
         << " |\n";
    os << "\n| fitted slope | predicted slope | stderr | tolerance | verdict |\n|---|---|---|---|---|\n";
    os << "| " << res.fitted_slope << " | " << res.predicted_slope << " | " << res.slope_stderr << " | "
       << res.tolerance << " | " << (res.pass ? "pass" : "fail") << " |\n";
    return os.str();
  }
  throw std::invalid_argument("render_report: unknown format " + format);
}

void write_grid(const GridFunction& f, const std::string& path) {
  std::ofstream bin(path + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("write_grid: cannot open " + path + ".bin");
  for (const auto& z : f.samples) {
    float re = static_cast<float>(z.real()), im = static_cast<float>(z.imag());
    bin.write(reinterpret_cast<const char*>(&re), sizeof(float));
    bin.write(reinterpret_cast<const char*>(&im), sizeof(float));
  }
  Json side;
  side["schema_version"] = kSchemaVersion;
  side["dim"] = f.dim;
  side["N"] = f.n;
  side["spacing"] = f.dx;
  std::ofstream js(path + ".json");
  js << side.dump(2) << "\n";
}

GridFunction read_grid(const std::string& path) {
  std::ifstream js(path + ".json");
  if (!js) throw std::runtime_error("read_grid: cannot open " + path + ".json");
  Json side = Json::parse(js);
  GridFunction f = make_grid(side.at("dim").get<int>(), side.at("N").get<int>(), side.at("spacing").get<double>());
  std::ifstream bin(path + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("read_grid: cannot open " + path + ".bin");
  for (auto& z : f.samples) {
    float re = 0.0f, im = 0.0f;
    bin.read(reinterpret_cast<char*>(&re), sizeof(float));
    bin.read(reinterpret_cast<char*>(&im), sizeof(float));
    z = {static_cast<double>(re), static_cast<double>(im)};
  }
  if (!bin) throw std::runtime_error("read_grid: truncated sample file");
  return f;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) throw std::runtime_error("config line without '=': " + t);
    out[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return out;
}

}  // namespace smallcap
