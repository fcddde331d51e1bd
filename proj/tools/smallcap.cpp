// smallcap: cap constructions, indicator-model oracles, slice incidence
// counts, wave-envelope sums and exponent sweeps from one binary.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>

#include "smallcap/io.hpp"

using namespace smallcap;

namespace {

void emit(const Json& j, const std::string& output) {
  std::string text = j.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot open output file " + output);
    out << text;
  }
}

struct SweepCli {
  std::string curve = "parabola";
  double alpha = 0.75, beta = 0.75, p = 8.0;
  double R = 0.0, R_min = 0.0, R_max = 0.0;
  std::string backend = "indicator";
  std::string example;
  std::string output, format = "json", config;
  int jobs = 1;
  uint64_t seed = 0;
  double tolerance = -1.0;
};

SweepConfig build_sweep_config(SweepCli cli) {
  if (!cli.config.empty()) {
    auto kv = parse_config_file(cli.config);
    // file values fill in anything the command line left at its default
    auto get = [&kv](const std::string& key) -> std::optional<std::string> {
      auto it = kv.find(key);
      return it == kv.end() ? std::nullopt : std::optional<std::string>(it->second);
    };
    if (auto v = get("curve")) cli.curve = *v;
    if (auto v = get("alpha")) cli.alpha = std::stod(*v);
    if (auto v = get("beta")) cli.beta = std::stod(*v);
    if (auto v = get("p")) cli.p = std::stod(*v);
    if (auto v = get("R-min"); v && cli.R_min == 0.0) cli.R_min = std::stod(*v);
    if (auto v = get("R-max"); v && cli.R_max == 0.0) cli.R_max = std::stod(*v);
    if (auto v = get("backend")) cli.backend = *v;
    if (auto v = get("example")) cli.example = *v;
    if (auto v = get("jobs")) cli.jobs = std::stoi(*v);
    if (auto v = get("seed")) cli.seed = std::stoull(*v);
    if (auto v = get("tolerance")) cli.tolerance = std::stod(*v);
  }
  SweepConfig cfg;
  cfg.curve = cli.curve == "cone" ? Curve::cone : Curve::parabola;
  cfg.exponent = cfg.curve == Curve::parabola ? cli.alpha : cli.beta;
  cfg.p = cli.p;
  if (cli.R_min > 0.0 && cli.R_max >= cli.R_min)
    for (double R = cli.R_min; R <= cli.R_max; R *= 2.0) cfg.R_list.push_back(R);
  else if (cli.R > 0.0)
    cfg.R_list = {cli.R / 2.0, cli.R, cli.R * 2.0};
  cfg.backend = cli.backend == "fft" ? Backend::fft : Backend::indicator;
  if (cli.example.empty()) cli.example = cfg.curve == Curve::cone ? "cone_bump" : "concentrated";
  cfg.example = cli.example == "flat"        ? ExampleKind::flat
                : cli.example == "cone_bump" ? ExampleKind::cone_bump_example
                                             : ExampleKind::concentrated;
  cfg.jobs = cli.jobs;
  cfg.seed = cli.seed;
  if (cli.tolerance > 0.0) cfg.tolerance = cli.tolerance;
  cfg.output = cli.output;
  cfg.format = cli.format;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"small cap square function toolkit"};
  app.require_subcommand(1);

  // caps
  std::string curve = "parabola", output, input, format = "json", method = "both", example = "concentrated";
  double alpha = 0.75, beta = 0.75, s_width = 0.0, R = 256.0, p = 4.0, r_slice = 0.0, lambda = -1.0;
  double scale_s = 0.0;
  int cap_index = -1, theta_index = -1;
  bool square = false;
  uint64_t seed = 0;

  auto* caps_cmd = app.add_subcommand("caps", "emit a cap family as JSON");
  caps_cmd->add_option("--curve", curve, "parabola|cone");
  caps_cmd->add_option("--R", R, "dyadic scale");
  caps_cmd->add_option("--alpha", alpha, "parabola width exponent");
  caps_cmd->add_option("--beta", beta, "cone width exponent");
  caps_cmd->add_option("--s", s_width, "sector plank width (cone sector family)");
  caps_cmd->add_option("--output", output, "output file (stdout when omitted)");

  auto* example_cmd = app.add_subcommand("example", "materialize a sharp example to a grid file");
  example_cmd->add_option("--example", example, "concentrated|flat|cone_bump");
  example_cmd->add_option("--R", R, "dyadic scale");
  example_cmd->add_option("--alpha", alpha, "parabola width exponent (concentrated)");
  example_cmd->add_option("--theta-index", theta_index, "canonical cap index (flat)");
  example_cmd->add_option("--output", output, "output basename (.bin/.json)")->required();

  auto* project_cmd = app.add_subcommand("project", "cap projection / square function of a grid file");
  project_cmd->add_option("--input", input, "input basename")->required();
  project_cmd->add_option("--curve", curve, "parabola|cone");
  project_cmd->add_option("--R", R, "dyadic scale");
  project_cmd->add_option("--alpha", alpha, "parabola width exponent");
  project_cmd->add_option("--beta", beta, "cone width exponent");
  project_cmd->add_option("--cap-index", cap_index, "cap to project onto");
  project_cmd->add_flag("--square", square, "emit the square function instead");
  project_cmd->add_option("--output", output, "output basename")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "indicator-model lattice sums");
  oracle_cmd->add_option("--curve", curve, "parabola|cone");
  oracle_cmd->add_option("--R", R, "dyadic scale");
  oracle_cmd->add_option("--alpha", alpha, "parabola width exponent");
  oracle_cmd->add_option("--beta", beta, "cone width exponent");
  oracle_cmd->add_option("--p", p, "Lebesgue exponent");
  oracle_cmd->add_option("--example", example, "concentrated|flat (parabola only)");
  oracle_cmd->add_option("--output", output, "output file");

  auto* slice_cmd = app.add_subcommand("slice", "slice incidence integrals, brute vs analytic");
  slice_cmd->add_option("--R", R, "dyadic scale");
  slice_cmd->add_option("--beta", beta, "cone width exponent");
  slice_cmd->add_option("--r", r_slice, "slice height");
  slice_cmd->add_option("--p", p, "Lebesgue exponent");
  slice_cmd->add_option("--method", method, "brute|analytic|both");
  slice_cmd->add_option("--seed", seed, "sample seed for the regime reports");
  slice_cmd->add_option("--output", output, "output file");

  auto* env_cmd = app.add_subcommand("envelope", "wave envelope sums of the cone bump (or a grid file)");
  env_cmd->add_option("--R", R, "dyadic scale");
  env_cmd->add_option("--scale-s", scale_s, "restrict the per-scale report to one s");
  env_cmd->add_option("--lambda", lambda, "amplitude threshold for the significant cells");
  env_cmd->add_option("--input", input, "grid file basename (default: cone_bump(R))");
  env_cmd->add_option("--output", output, "output file");

  SweepCli sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "R-sweep with exponent regression");
  sweep_cmd->add_option("--curve", sw.curve, "parabola|cone");
  sweep_cmd->add_option("--alpha", sw.alpha, "parabola width exponent");
  sweep_cmd->add_option("--beta", sw.beta, "cone width exponent");
  sweep_cmd->add_option("--p", sw.p, "Lebesgue exponent");
  sweep_cmd->add_option("--R", sw.R, "center scale (expands to three octaves)");
  sweep_cmd->add_option("--R-min", sw.R_min, "smallest scale");
  sweep_cmd->add_option("--R-max", sw.R_max, "largest scale");
  sweep_cmd->add_option("--backend", sw.backend, "indicator|fft");
  sweep_cmd->add_option("--example", sw.example, "concentrated|flat|cone_bump");
  sweep_cmd->add_option("--jobs", sw.jobs, "parallel evaluations");
  sweep_cmd->add_option("--seed", sw.seed, "seed for randomized modes");
  sweep_cmd->add_option("--tolerance", sw.tolerance, "slope tolerance override");
  sweep_cmd->add_option("--config", sw.config, "key = value config file");
  sweep_cmd->add_option("--output", sw.output, "report file (stdout when omitted)");
  sweep_cmd->add_option("--format", sw.format, "json|csv|markdown");

  auto* report_cmd = app.add_subcommand("report", "re-render a sweep report");
  report_cmd->add_option("--input", input, "sweep JSON file")->required();
  report_cmd->add_option("--format", format, "json|csv|markdown");
  report_cmd->add_option("--output", output, "output file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (caps_cmd->parsed()) {
      Curve c = curve == "cone" ? Curve::cone : Curve::parabola;
      CapFamily fam = s_width > 0.0           ? sector_planks(R, s_width)
                      : c == Curve::parabola ? parabola_caps(R, alpha)
                                             : cone_caps(R, beta);
      emit(to_json(fam), output);
    } else if (example_cmd->parsed()) {
      GridFunction f = example == "flat"
                           ? flat_parabola(R, theta_index >= 0 ? static_cast<size_t>(theta_index)
                                                               : parabola_caps(R, 0.5).size() / 2)
                       : example == "cone_bump" ? cone_bump(R)
                                                : concentrated_parabola(R, alpha);
      write_grid(f, output);
    } else if (project_cmd->parsed()) {
      Curve c = curve == "cone" ? Curve::cone : Curve::parabola;
      GridFunction f = read_grid(input);
      CapFamily fam = c == Curve::parabola ? parabola_caps(R, alpha) : cone_caps(R, beta);
      Partition part = smooth_partition(fam, f.n, f.dx);
      if (square) {
        write_grid(square_function(f, part), output);
      } else {
        if (cap_index < 0) throw std::runtime_error("project: --cap-index or --square required");
        write_grid(cap_projection(f, part, static_cast<size_t>(cap_index)), output);
      }
    } else if (oracle_cmd->parsed()) {
      Json j;
      j["schema_version"] = kSchemaVersion;
      j["R"] = R;
      j["p"] = p;
      if (curve == "cone") {
        j["beta"] = beta;
        Json shells = Json::array();
        double total = 0.0;
        for (double r = 1.0; r <= R; r *= 2.0) {
          double v = r * slice_integral(r, p, R, beta, SliceMethod::brute);
          shells.push_back(v);
          total += v;
        }
        j["shell_sums"] = std::move(shells);
        j["total"] = 2.0 * total;
      } else {
        j["alpha"] = alpha;
        IndicatorSums sums = example == "flat" ? flat_indicator_sums(R, alpha, p)
                                               : concentrated_indicator_sums(R, alpha, p);
        j["shell_sums"] = sums.shell_sums;
        j["total"] = sums.total;
        j["lhs_value"] = sums.lhs_value;
      }
      emit(j, output);
    } else if (slice_cmd->parsed()) {
      Json j;
      j["schema_version"] = kSchemaVersion;
      j["params"] = {{"R", R}, {"beta", beta}, {"r", r_slice}, {"p", p}};
      double analytic = slice_integral(r_slice, p, R, beta, SliceMethod::analytic);
      j["analytic"] = analytic;
      if (method != "analytic") {
        double brute = slice_integral(r_slice, p, R, beta, SliceMethod::brute);
        j["brute"] = brute;
        j["ratio"] = brute / analytic;
      }
      Json reports = Json::array();
      auto planks = slice_family(R, beta, r_slice);
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
      for (double d : {0.0, 5.0, 0.25 * r_slice, 0.5 * std::pow(R, beta) / 4.0}) {
        auto pred = predicted_overlap(d, r_slice, R, beta);
        double psi = u(rng);
        Vec pt((r_slice + d) * std::cos(psi), (r_slice + d) * std::sin(psi));
        Json rep;
        rep["d"] = d;
        rep["regime"] = pred.regime == Regime::bush    ? "bush"
                        : pred.regime == Regime::core  ? "core"
                        : pred.regime == Regime::inner ? "inner"
                        : pred.regime == Regime::outer ? "outer"
                                                       : "out_of_range";
        rep["predicted"] = pred.value;
        rep["measured"] = brute_overlap(pt, planks);
        reports.push_back(std::move(rep));
      }
      j["regime_reports"] = std::move(reports);
      emit(j, output);
    } else if (env_cmd->parsed()) {
      GridFunction f = input.empty() ? cone_bump(R, 2) : read_grid(input);
      Partition part = smooth_partition(cone_caps(R, 0.5), f.n, f.dx);
      EnvelopeAnalysis an(f, R, part);
      Json j;
      j["schema_version"] = kSchemaVersion;
      j["R"] = R;
      Json per_scale = Json::array();
      for (size_t sc = 0; sc < an.scales().size(); ++sc) {
        double s = an.scales()[sc];
        if (scale_s > 0.0 && std::fabs(s - scale_s) > 1e-12 * s) continue;
        Json e;
        e["s"] = s;
        e["n_tau"] = an.n_tau(sc);
        e["n_cells"] = an.significant_cells(lambda > 0.0 ? lambda : 1e-280, sc).size();
        e["sum"] = an.scale_mass(sc);
        per_scale.push_back(std::move(e));
      }
      j["per_scale"] = std::move(per_scale);
      j["gwz_lhs"] = an.l4_4();
      j["gwz_rhs"] = an.gwz_rhs();
      j["ratio"] = an.l4_4() / an.gwz_rhs();
      if (lambda > 0.0) {
        auto [lhs, rhs] = an.amplitude_check(lambda);
        j["amplitude_lhs"] = lhs;
        j["amplitude_rhs"] = rhs;
      }
      emit(j, output);
    } else if (sweep_cmd->parsed()) {
      SweepConfig cfg = build_sweep_config(sw);
      SweepResult res = run_sweep(cfg);
      std::string text = render_report(res, cfg.format);
      if (cfg.output.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(cfg.output);
        out << text;
      }
      // also persist the JSON next to a non-JSON report so `report` can re-render
      if (cfg.format != "json" && !cfg.output.empty()) {
        std::ofstream out(cfg.output + ".json");
        out << render_report(res, "json");
      }
      return res.pass ? 0 : 2;
    } else if (report_cmd->parsed()) {
      std::ifstream in(input);
      if (!in) throw std::runtime_error("cannot open " + input);
      SweepResult res = sweep_result_from_json(Json::parse(in));
      std::string text = render_report(res, format);
      if (output.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(output);
        out << text;
      }
      return res.pass ? 0 : 2;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
