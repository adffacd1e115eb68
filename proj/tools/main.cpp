// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: Hamiltonian inspection, exact diagonalization,
// ansatz gate counting, single VQE runs, suites of runs, and table
// reproduction.

#include <complex>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lvqe/harness.hpp"

namespace {

using namespace lvqe;

struct ModelCli {
  int n_sites = 2;
  int n_electrons = 2;
  double t = 1.0;
  double J = 0.2;
  double u_c = 10.0;
  std::vector<double> b;  // flat list, 3 per site; default collinear ẑ
  std::string convention = "literal";

  ModelParams params() const {
    ModelParams p;
    p.n_sites = n_sites;
    p.n_electrons = n_electrons;
    p.t = t;
    p.J = J;
    p.u_c = u_c;
    if (b.empty()) {
      p.B.assign(size_t(n_sites), {0.0, 0.0, 1.0});
    } else {
      if (int(b.size()) != 3 * n_sites)
        throw CLI::ValidationError("--b needs 3 values per site");
      for (int s = 0; s < n_sites; ++s)
        p.B.push_back({b[size_t(3 * s)], b[size_t(3 * s + 1)],
                       b[size_t(3 * s + 2)]});
    }
    p.validate();
    return p;
  }

  CoulombConvention coulomb() const {
    if (convention == "literal") return CoulombConvention::literal;
    if (convention == "hubbard") return CoulombConvention::hubbard;
    throw CLI::ValidationError("--coulomb must be literal or hubbard");
  }

  void attach(CLI::App* app) {
    app->add_option("--n-sites", n_sites, "Lattice sites (2-4)");
    app->add_option("--n-electrons", n_electrons, "Electron count");
    app->add_option("--t", t, "Hopping energy");
    app->add_option("--j", J, "sd-exchange coupling");
    app->add_option("--u-c", u_c, "On-site Coulomb constant");
    app->add_option("--b", b, "Local moments, 3 values per site");
    app->add_option("--coulomb", convention, "literal | hubbard");
  }
};

std::string spin_pattern(uint64_t x, int n_sites) {
  // Per-site occupation glyph: '_' empty, '↑' up, '↓' down,
  // '↕' doubly occupied.
  std::string s;
  for (int site = 0; site < n_sites; ++site) {
    const bool up = (x >> site) & 1;
    const bool dn = (x >> (n_sites + site)) & 1;
    s += up && dn ? "↕" : up ? "↑" : dn ? "↓" : "_";
  }
  return s;
}

int cmd_build_hamiltonian(const ModelCli& m, double e_f) {
  const ModelParams p = m.params();
  std::cout << "# fermionic terms\n"
            << build_fermionic_hamiltonian(p, m.coulomb()).str() << '\n';
  std::optional<PenaltyParams> pen;
  if (e_f > 0.0) pen = PenaltyParams{e_f, p.n_electrons};
  std::cout << "# qubit (Jordan-Wigner) terms"
            << (pen ? " with number penalty" : "") << '\n'
            << build_qubit_hamiltonian(p, m.coulomb(), pen).str();
  return 0;
}

int cmd_exact_diag(const ModelCli& m, int sector, int n_levels) {
  const ModelParams p = m.params();
  std::optional<int> sec;
  if (sector >= 0) sec = sector;
  const SpectrumResult s = diagonalize(p, m.coulomb(), sec);

  std::cout << std::setprecision(12);
  std::cout << "# low spectrum (units of t)\n";
  for (int k = 0; k < std::min<int>(n_levels, int(s.eigenvalues.size())); ++k)
    std::cout << "E[" << k << "] = " << s.eigenvalues[size_t(k)] / p.t << '\n';
  std::cout << "ground degeneracy: " << s.degeneracy << '\n';

  std::cout << "# ground occupation amplitudes (|amp| >= 0.01)\n";
  for (size_t g = 0; g < s.ground_vectors.size(); ++g) {
    std::cout << "ground vector " << g << ":\n";
    const auto& v = s.ground_vectors[g];
    for (Eigen::Index x = 0; x < v.size(); ++x)
      if (std::abs(v[x]) >= 0.01)
        std::cout << "  " << spin_pattern(uint64_t(x), p.n_sites) << "  "
                  << v[x].real() << (v[x].imag() >= 0 ? " + " : " - ")
                  << std::abs(v[x].imag()) << "i\n";
  }
  return 0;
}

int cmd_count_gates(int reps) {
  std::cout << "family,n_sites,N_p,N_CX\n";
  for (const auto family :
       {AnsatzFamily::Generic, AnsatzFamily::ClusterSD, AnsatzFamily::YAB_SD,
        AnsatzFamily::YAB_S, AnsatzFamily::SimplifiedYAB_SD,
        AnsatzFamily::SimplifiedYAB_S, AnsatzFamily::SimplifiedYAB_3S})
    for (int ns = 2; ns <= 4; ++ns) {
      const Circuit c = build_ansatz({family, ns, reps});
      std::cout << to_string(family) << ',' << ns << ',' << c.n_params()
                << ',' << c.count_cx() << '\n';
    }
  return 0;
}

void emit_run(const ExperimentConfig& cfg, const RunResult& r,
              const std::string& out_dir, bool header) {
  if (header) std::cout << run_result_csv_header() << '\n';
  std::cout << run_result_csv_row(r) << '\n';
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream(out_dir + "/" + cfg.id + ".json")
        << run_result_json(cfg, r) << '\n';
  }
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
  const ExperimentConfig cfg = config_from_file(config_path);
  emit_run(cfg, run_vqe(cfg), out_dir, true);
  return 0;
}

int cmd_suite(const std::vector<std::string>& config_paths,
              const std::string& out_dir, int parallelism) {
  SuiteGroup group;
  group.name = "suite";
  for (const auto& path : config_paths)
    group.configs.push_back(config_from_file(path));
  const SuiteResult res = run_suite({group}, parallelism);
  std::cout << run_result_csv_header() << '\n';
  for (size_t i = 0; i < res.runs.size(); ++i)
    emit_run(group.configs[i], res.runs[i], out_dir, false);
  const auto& a = res.averages.front();
  std::cerr << "# mean over " << a.n_runs << " runs: dE% = " << a.de_percent
            << ", F = " << a.fidelity << ", N_it = " << a.n_it << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice-model VQE toolkit"};
  app.require_subcommand(1);

  ModelCli model_h, model_d;
  double e_f = 0.0;
  auto* build = app.add_subcommand("build-hamiltonian",
                                   "Print the fermionic and qubit Hamiltonian");
  model_h.attach(build);
  build->add_option("--e-f", e_f, "Number-penalty energy (0 disables)");

  int sector = -1, n_levels = 8;
  auto* ed = app.add_subcommand("exact-diag",
                                "Low spectrum and ground-state amplitudes");
  model_d.attach(ed);
  ed->add_option("--sector", sector, "Particle-number sector (-1 = full)");
  ed->add_option("--levels", n_levels, "Eigenvalues to print");

  int reps = 3;
  auto* count = app.add_subcommand("count-gates",
                                   "Parameter and CX counts per family/size");
  count->add_option("--reps", reps, "Generic layers / 3S passes");

  std::string run_config, out_dir;
  auto* run = app.add_subcommand("run", "Single VQE run from a config file");
  run->add_option("config", run_config, "INI config file")->required();
  run->add_option("--out", out_dir, "Directory for the JSON sidecar");

  std::vector<std::string> suite_configs;
  std::string suite_out;
  int parallelism = 1;
  auto* suite = app.add_subcommand("suite", "Run a collection of configs");
  suite->add_option("configs", suite_configs, "INI config files")->required();
  suite->add_option("--out", suite_out, "Directory for JSON sidecars");
  suite->add_option("--parallelism", parallelism, "Concurrent runs");

  std::string table, repro_out = "results";
  int repro_par = 1;
  auto* repro =
      app.add_subcommand("reproduce", "Emit one of the study tables");
  repro
      ->add_option("table", table,
                   "gate_counts | noiseless_2site | noiseless_34site | "
                   "theta0_noise | noisy_2site")
      ->required();
  repro->add_option("--out", repro_out, "Output directory");
  repro->add_option("--parallelism", repro_par, "Concurrent runs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return cmd_build_hamiltonian(model_h, e_f);
    if (ed->parsed()) return cmd_exact_diag(model_d, sector, n_levels);
    if (count->parsed()) return cmd_count_gates(reps);
    if (run->parsed()) return cmd_run(run_config, out_dir);
    if (suite->parsed()) return cmd_suite(suite_configs, suite_out, parallelism);
    if (repro->parsed()) {
      reproduce(table, repro_out, repro_par);
      std::cout << "wrote " << repro_out << "/" << table << ".csv\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
