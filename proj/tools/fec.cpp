// Command-line experiment runner: approximation sweeps, PDE examples,
// node-set dumps and singular-spectrum dumps, emitting CSV/JSON for
// external plotting.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fec/fec.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericalFailure = 3;

std::vector<int> parse_sweep(const std::string& s, int max_n) {
  std::vector<int> out;
  const auto c1 = s.find(':');
  if (c1 == std::string::npos) {
    out.push_back(std::stoi(s));
  } else {
    const auto c2 = s.find(':', c1 + 1);
    if (c2 == std::string::npos)
      throw CLI::ValidationError("--N", "expected START:STEP:STOP or a single value");
    const int start = std::stoi(s.substr(0, c1));
    const int step = std::stoi(s.substr(c1 + 1, c2 - c1 - 1));
    const int stop = std::stoi(s.substr(c2 + 1));
    if (step <= 0 || stop < start)
      throw CLI::ValidationError("--N", "sweep must be ascending with positive step");
    for (int n = start; n <= stop; n += step) out.push_back(n);
  }
  for (int n : out) {
    if (n < 1) throw CLI::ValidationError("--N", "sizes must be >= 1");
    if (n > max_n)
      throw CLI::ValidationError(
          "--N", "N=" + std::to_string(n) + " exceeds --max-N=" + std::to_string(max_n));
  }
  return out;
}

fec::BoundaryPolicy parse_policy(const std::string& s) {
  const auto colon = s.find(':');
  const std::string kind = s.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
  if (kind == "linear") return fec::BoundaryPolicy::linear(std::stod(arg));
  if (kind == "log") return fec::BoundaryPolicy::log_nodes(std::stod(arg), false);
  if (kind == "log10") return fec::BoundaryPolicy::log_nodes(std::stod(arg), true);
  if (kind == "square") return fec::BoundaryPolicy::square();
  if (kind == "count")
    return fec::BoundaryPolicy::explicit_n(static_cast<std::size_t>(std::stoul(arg)));
  throw CLI::ValidationError("--boundary",
                             "expected linear:K, log:C, log10:C, square or count:M");
}

struct CommonOpts {
  double T = 2.0;
  double eps = 1e-14;
  double gamma = 4.0;
  bool gamma_set = false;
  std::string n_spec = "20";
  std::string out_dir = ".";
  std::uint64_t seed = 12345;
  int max_n = 60;
  int density = 2;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--T", o.T, "Embedding half-width")->capture_default_str();
  cmd->add_option("--eps", o.eps, "tSVD truncation tolerance")->capture_default_str();
  cmd->add_option("--gamma", o.gamma, "Oversampling factor M = gamma*N")
      ->capture_default_str();
  cmd->add_option("--N", o.n_spec, "Per-axis size: START:STEP:STOP or a single value")
      ->capture_default_str();
  cmd->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  cmd->add_option("--max-N", o.max_n, "Runtime budget cap on N")->capture_default_str();
  cmd->add_option("--density", o.density, "Error-grid refinement factor")
      ->capture_default_str();
}

json config_echo(const CommonOpts& o) {
  return json{{"T", o.T},        {"eps", o.eps},   {"gamma", o.gamma},
              {"N", o.n_spec},   {"out", o.out_dir}, {"seed", o.seed},
              {"max_N", o.max_n}, {"density", o.density}};
}

void write_metadata(const fs::path& path, json meta) {
  meta["format_version"] = fec::io::kFormatVersion;
  fec::io::write_atomic(path, meta.dump(2) + "\n");
}

long run_ms(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

int cmd_nodes(const CommonOpts& o, const std::string& domain_name,
              const std::string& boundary_spec, std::size_t random_count,
              std::size_t corner_extra, double corner_radius) {
  const auto domain = fec::catalog(domain_name);
  const auto ns = parse_sweep(o.n_spec, o.max_n);
  fs::create_directories(o.out_dir);
  json meta{{"command", "nodes"},
            {"domain", domain_name},
            {"config", config_echo(o)},
            {"generator", fec::kRandomGeneratorName},
            {"results", json::array()}};
  for (int n : ns) {
    const auto spec = fec::FrameSpec::from_axis_size(n, o.T, o.eps);
    std::vector<fec::Point2> interior;
    std::optional<fec::GridSpec> grid;
    if (random_count > 0) {
      interior = fec::random_interior(domain, random_count, o.seed);
    } else {
      grid = fec::GridSpec::from_frame(n, o.gamma, o.T);
      interior = fec::restrict_interior(fec::tensor_grid(*grid), domain);
    }
    std::vector<fec::Point2> boundary;
    if (!boundary_spec.empty()) {
      const auto policy = parse_policy(boundary_spec);
      boundary = fec::boundary_nodes(domain, policy.count(n, spec.num_modes()));
      if (corner_extra > 0)
        boundary = fec::corner_refine(boundary, domain, corner_extra, corner_radius);
    }
    const fs::path csv =
        fs::path(o.out_dir) / ("nodes_" + domain_name + "_N" + std::to_string(n) + ".csv");
    fec::io::write_atomic(csv, fec::io::nodes_csv(interior, boundary));
    json rec{{"N", n},
             {"N_I", interior.size()},
             {"N_B", boundary.size()},
             {"N_Lambda", spec.num_modes()},
             {"file", csv.filename().string()}};
    if (grid) rec["grid"] = {{"M_x", grid->mx}, {"M_y", grid->my}, {"gamma", o.gamma},
                             {"T", o.T}};
    else rec["random"] = {{"seed", o.seed}, {"count", random_count}};
    meta["results"].push_back(rec);
  }
  write_metadata(fs::path(o.out_dir) / ("nodes_" + domain_name + "_meta.json"), meta);
  return 0;
}

int cmd_approx(const CommonOpts& o, const std::string& domain_name,
               const std::string& function_name, std::size_t corner_extra,
               double corner_radius) {
  const auto domain = fec::catalog(domain_name);
  const auto& fp = fec::function_preset(function_name);
  const auto f = fec::real_field(fp.f);
  const auto ns = parse_sweep(o.n_spec, o.max_n);
  fs::create_directories(o.out_dir);

  std::vector<std::pair<int, double>> curve;
  json meta{{"command", "approx"},
            {"domain", domain_name},
            {"function", function_name},
            {"config", config_echo(o)},
            {"results", json::array()}};
  int current_n = 0;
  try {
    for (int n : ns) {
      current_n = n;
      const auto t0 = std::chrono::steady_clock::now();
      const auto spec = fec::FrameSpec::from_axis_size(n, o.T, o.eps);
      const auto grid = fec::GridSpec::from_frame(n, o.gamma, o.T);
      auto nodes = fec::restrict_interior(fec::tensor_grid(grid), domain);
      if (corner_extra > 0)
        nodes = fec::corner_refine(nodes, domain, corner_extra, corner_radius);
      const double n_r = static_cast<double>(grid.mx) * grid.my;
      auto ap = fec::fit_at_nodes(f, nodes, spec, 1.0 / std::sqrt(n_r), grid);
      const double err = fec::max_error(ap, f, domain, o.density);
      curve.emplace_back(n, err);
      meta["results"].push_back({{"domain", domain_name},
                                 {"N", n},
                                 {"N_Lambda", spec.num_modes()},
                                 {"N_Omega", ap.n_interior},
                                 {"gamma", o.gamma},
                                 {"T", o.T},
                                 {"eps", o.eps},
                                 {"max_error", err},
                                 {"rank_eps", ap.report.rank_eps},
                                 {"cond", ap.report.cond},
                                 {"runtime_ms", run_ms(t0)}});
    }
  } catch (const std::exception& e) {
    std::cerr << "numerical failure at N=" << current_n << ": " << e.what() << "\n";
    return kExitNumericalFailure;
  }
  const std::string stem = "approx_" + domain_name + "_" + function_name;
  fec::io::write_atomic(fs::path(o.out_dir) / (stem + ".csv"),
                        fec::io::error_curve_csv(curve));
  write_metadata(fs::path(o.out_dir) / (stem + "_meta.json"), meta);
  return 0;
}

int cmd_solve(const CommonOpts& o, const std::string& preset_id,
              const std::string& boundary_spec, bool dump_spectrum, bool dump_coeffs,
              std::size_t corner_extra, double corner_radius) {
  const auto& preset = fec::pde_preset(preset_id);
  const auto problem = preset.problem();
  const auto policy =
      boundary_spec.empty() ? preset.default_policy : parse_policy(boundary_spec);
  const double gamma = o.gamma_set ? o.gamma : preset.default_gamma;
  const auto ns = parse_sweep(o.n_spec, o.max_n);
  fs::create_directories(o.out_dir);

  std::vector<std::pair<int, double>> curve;
  json meta{{"command", "solve"},
            {"example_id", preset_id},
            {"domain", preset.domain_name},
            {"N_B_policy", policy.describe()},
            {"config", config_echo(o)},
            {"generator", fec::kRandomGeneratorName},
            {"results", json::array()}};
  int current_n = 0;
  try {
    for (int n : ns) {
      current_n = n;
      const auto t0 = std::chrono::steady_clock::now();
      const auto spec = fec::FrameSpec::from_axis_size(n, o.T, o.eps);
      fec::SolveOptions opt;
      opt.eval_density = o.density;
      opt.corner_extra = corner_extra;
      opt.corner_radius = corner_radius;
      fec::PdeSolution sol = [&] {
        if (preset.random_nodes) {
          const auto n_i = static_cast<std::size_t>(preset.random_interior_factor *
                                                    spec.num_modes());
          const auto eval_grid =
              fec::GridSpec::from_frame(n, gamma, o.T).refined(o.density);
          return fec::solve_random(problem, spec, policy, n_i, o.seed, eval_grid, opt);
        }
        const auto grid =
            fec::GridSpec::from_frame(n, gamma, o.T, preset.grid_x_factor);
        return fec::solve(problem, spec, policy, grid, opt);
      }();
      const double err = sol.max_err.value_or(0.0);
      curve.emplace_back(n, err);

      json rec{{"example_id", preset_id},
               {"N", n},
               {"N_B_policy", policy.describe()},
               {"counts",
                {{"N_I", sol.nodes.n_interior()},
                 {"N_B", sol.nodes.n_boundary()},
                 {"N_Lambda", spec.num_modes()}}},
               {"max_error", err},
               {"cond", sol.report.cond},
               {"rank_eps", sol.report.rank_eps},
               {"runtime_ms", run_ms(t0)}};
      if (dump_spectrum) {
        const fs::path sfile = fs::path(o.out_dir) / ("spectrum_" + preset_id + "_N" +
                                                      std::to_string(n) + ".csv");
        fec::io::write_atomic(sfile, fec::io::spectrum_csv(sol.report.singular_values));
        rec["singular_values_file"] = sfile.filename().string();
      }
      if (dump_coeffs) {
        const fs::path cfile = fs::path(o.out_dir) / ("coeffs_" + preset_id + "_N" +
                                                      std::to_string(n) + ".csv");
        fec::io::write_atomic(cfile,
                              fec::io::coeffs_csv(spec, sol.approximant.scaled_coeffs()));
        rec["coefficients_file"] = cfile.filename().string();
      }
      meta["results"].push_back(std::move(rec));
    }
  } catch (const std::exception& e) {
    std::cerr << "numerical failure at N=" << current_n << ": " << e.what() << "\n";
    return kExitNumericalFailure;
  }
  const std::string stem = "solve_" + preset_id;
  fec::io::write_atomic(fs::path(o.out_dir) / (stem + ".csv"),
                        fec::io::error_curve_csv(curve));
  write_metadata(fs::path(o.out_dir) / (stem + "_meta.json"), meta);
  return 0;
}

int cmd_spectrum(const CommonOpts& o, const std::string& preset_id,
                 const std::string& domain_name, const std::string& boundary_spec) {
  const auto ns = parse_sweep(o.n_spec, o.max_n);
  fs::create_directories(o.out_dir);
  json meta{{"command", "spectrum"}, {"config", config_echo(o)},
            {"results", json::array()}};
  int current_n = 0;
  try {
    for (int n : ns) {
      current_n = n;
      const auto spec = fec::FrameSpec::from_axis_size(n, o.T, o.eps);
      Eigen::MatrixXcd mat;
      std::string stem;
      if (!preset_id.empty()) {
        const auto& preset = fec::pde_preset(preset_id);
        const auto problem = preset.problem();
        const auto policy =
            boundary_spec.empty() ? preset.default_policy : parse_policy(boundary_spec);
        const double gamma = o.gamma_set ? o.gamma : preset.default_gamma;
        const auto grid = fec::GridSpec::from_frame(n, gamma, o.T, preset.grid_x_factor);
        auto interior = fec::restrict_interior(fec::tensor_grid(grid), problem.domain);
        auto bnodes = fec::boundary_nodes(problem.domain,
                                          policy.count(n, spec.num_modes()));
        const auto nodes = fec::make_node_set(std::move(interior), std::move(bnodes),
                                              spec, grid);
        mat = fec::assemble(problem, nodes, spec).first;
        stem = "spectrum_" + preset_id;
      } else {
        const auto domain = fec::catalog(domain_name);
        const auto grid = fec::GridSpec::from_frame(n, o.gamma, o.T);
        const auto interior = fec::restrict_interior(fec::tensor_grid(grid), domain);
        const double n_r = static_cast<double>(grid.mx) * grid.my;
        mat = fec::eval_matrix(spec, interior, fec::DerivOrder::value,
                               1.0 / std::sqrt(n_r));
        stem = "spectrum_" + domain_name;
      }
      const Eigen::VectorXcd zero_rhs = Eigen::VectorXcd::Zero(mat.rows());
      auto [x, report] = fec::tsvd_solve(mat, zero_rhs, o.eps);
      const fs::path sfile =
          fs::path(o.out_dir) / (stem + "_N" + std::to_string(n) + ".csv");
      fec::io::write_atomic(sfile, fec::io::spectrum_csv(report.singular_values));
      meta["results"].push_back({{"N", n},
                                 {"rows", mat.rows()},
                                 {"cols", mat.cols()},
                                 {"cond", report.cond},
                                 {"rank_eps", report.rank_eps},
                                 {"plunge_size", fec::plunge_region_size(report, o.eps)},
                                 {"file", sfile.filename().string()}});
      if (!meta.contains("stem")) meta["stem"] = stem;
    }
    write_metadata(fs::path(o.out_dir) / (meta["stem"].get<std::string>() + "_meta.json"),
                   meta);
  } catch (const std::exception& e) {
    std::cerr << "numerical failure at N=" << current_n << ": " << e.what() << "\n";
    return kExitNumericalFailure;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier-extension oversampling collocation experiments"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Key-value config file overriding flags");

  CommonOpts nodes_o, approx_o, solve_o, spectrum_o;

  auto* nodes_cmd = app.add_subcommand("nodes", "Dump collocation node sets");
  std::string nodes_domain = "diamond", nodes_boundary;
  std::size_t nodes_random = 0, nodes_corner_extra = 0;
  double nodes_corner_radius = 0.1;
  add_common(nodes_cmd, nodes_o);
  nodes_cmd->add_option("--domain", nodes_domain, "Domain identifier")->required();
  nodes_cmd->add_option("--boundary", nodes_boundary,
                        "Boundary policy (linear:K, log:C, log10:C, square, count:M)");
  nodes_cmd->add_option("--random", nodes_random,
                        "Use this many seeded uniform-random interior nodes");
  nodes_cmd->add_option("--corner-extra", nodes_corner_extra,
                        "Extra boundary nodes per corner arc");
  nodes_cmd->add_option("--corner-radius", nodes_corner_radius,
                        "Corner clustering radius (arc length)");

  auto* approx_cmd =
      app.add_subcommand("approx", "Function-approximation error sweep");
  std::string approx_domain = "pentagon", approx_function = "f4";
  std::size_t approx_corner_extra = 0;
  double approx_corner_radius = 0.1;
  add_common(approx_cmd, approx_o);
  approx_cmd->add_option("--domain", approx_domain, "Domain identifier")->required();
  approx_cmd->add_option("--function", approx_function, "Function preset f1..f4")
      ->required();
  approx_cmd->add_option("--corner-extra", approx_corner_extra,
                         "Extra nodes per corner arc");
  approx_cmd->add_option("--corner-radius", approx_corner_radius,
                         "Corner clustering radius");

  auto* solve_cmd = app.add_subcommand("solve", "PDE example error sweep");
  std::string solve_preset, solve_boundary;
  bool solve_spectrum = false, solve_coeffs = false;
  std::size_t solve_corner_extra = 0;
  double solve_corner_radius = 0.1;
  add_common(solve_cmd, solve_o);
  solve_cmd->add_option("--preset", solve_preset, "PDE preset example1..example7")
      ->required();
  solve_cmd->add_option("--boundary", solve_boundary, "Boundary policy override");
  solve_cmd->add_flag("--dump-spectrum", solve_spectrum,
                      "Write singular-value CSV per N");
  solve_cmd->add_flag("--dump-coeffs", solve_coeffs,
                      "Write coefficient-vector CSV per N");
  solve_cmd->add_option("--corner-extra", solve_corner_extra,
                        "Extra boundary nodes per corner arc");
  solve_cmd->add_option("--corner-radius", solve_corner_radius,
                        "Corner clustering radius");

  auto* spectrum_cmd =
      app.add_subcommand("spectrum", "Singular-value profile of the collocation matrix");
  std::string spectrum_preset, spectrum_domain, spectrum_boundary;
  add_common(spectrum_cmd, spectrum_o);
  spectrum_cmd->add_option("--preset", spectrum_preset, "PDE preset (matrix P)");
  spectrum_cmd->add_option("--domain", spectrum_domain, "Domain (approximation matrix A)");
  spectrum_cmd->add_option("--boundary", spectrum_boundary, "Boundary policy override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfigError;
  }

  try {
    if (nodes_cmd->parsed()) {
      nodes_o.gamma_set = nodes_cmd->count("--gamma") > 0;
      return cmd_nodes(nodes_o, nodes_domain, nodes_boundary, nodes_random,
                       nodes_corner_extra, nodes_corner_radius);
    }
    if (approx_cmd->parsed()) {
      approx_o.gamma_set = approx_cmd->count("--gamma") > 0;
      return cmd_approx(approx_o, approx_domain, approx_function, approx_corner_extra,
                        approx_corner_radius);
    }
    if (solve_cmd->parsed()) {
      solve_o.gamma_set = solve_cmd->count("--gamma") > 0;
      return cmd_solve(solve_o, solve_preset, solve_boundary, solve_spectrum,
                       solve_coeffs, solve_corner_extra, solve_corner_radius);
    }
    if (spectrum_cmd->parsed()) {
      spectrum_o.gamma_set = spectrum_cmd->count("--gamma") > 0;
      if (spectrum_preset.empty() && spectrum_domain.empty()) {
        std::cerr << "spectrum: need --preset or --domain\n";
        return kExitConfigError;
      }
      return cmd_spectrum(spectrum_o, spectrum_preset, spectrum_domain,
                          spectrum_boundary);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
  return 0;
}
