// SPDX-License-Identifier: Apache-2.0
//
// Study-level acceptance checks.  Each numbered criterion prints exactly
// one PASS/FAIL line; the process exits nonzero if any criterion fails.
// Oracles are independent of the code under test: Fock-space matrices
// built here from occupation bitsets, Eigen's matrix exponential, closed
// forms, and published table values.

#include <bit>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "lvqe/ansatz.hpp"
#include "lvqe/ed.hpp"
#include "lvqe/harness.hpp"
#include "lvqe/optim.hpp"
#include "lvqe/statevector.hpp"

using namespace lvqe;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool ok,
            const std::string& detail = "") {
  std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion,
              what.c_str(), detail.empty() ? "" : " — ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------------
// Independent Fock-space oracle (occupation bitsets, modes created in
// increasing index order).

Eigen::MatrixXcd fock_op(int n_modes, int mode, bool dagger) {
  const int dim = 1 << n_modes;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int ket = 0; ket < dim; ++ket) {
    const int bit = 1 << mode;
    if (dagger == bool(ket & bit)) continue;
    const double sign =
        (std::popcount(unsigned(ket & (bit - 1))) & 1) ? -1.0 : 1.0;
    m(ket ^ bit, ket) = sign;
  }
  return m;
}

Eigen::MatrixXcd fock_matrix(const FermionSum& f) {
  const int dim = 1 << f.n_modes();
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& term : f.terms()) {
    Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& op : term.ops)
      prod *= fock_op(f.n_modes(), int(op.mode), op.dagger);
    total += term.coeff * prod;
  }
  return total;
}

Eigen::MatrixXcd circuit_unitary(const Circuit& c, double theta) {
  const auto gates = c.bind(std::vector<double>(size_t(c.n_params()), theta));
  const uint64_t d = uint64_t(1) << c.width();
  Eigen::MatrixXcd u{Eigen::Index(d), Eigen::Index(d)};
  for (uint64_t col = 0; col < d; ++col)
    u.col(Eigen::Index(col)) =
        run_statevector(gates, Statevector::basis(c.width(), col)).to_eigen();
  return u;
}

// ---------------------------------------------------------------------
// Benchmark-suite helpers.

const std::vector<InitialStateKind> kInits = {
    InitialStateKind::DoubleAFM, InitialStateKind::AFM, InitialStateKind::FM};

SuiteGroup nine_config_group(const std::string& name, int n_sites,
                             AnsatzFamily family, OptMethod method,
                             BackendKind backend, double p_cx) {
  SuiteGroup g;
  g.name = name;
  for (int set = 1; set <= 3; ++set)
    for (const auto init : kInits)
      g.configs.push_back(
          benchmark_config(set, init, n_sites, family, method, backend, p_cx));
  return g;
}

const GroupAverage& average_of(const SuiteResult& res,
                               const std::string& name) {
  for (const auto& a : res.averages)
    if (a.name == name) return a;
  throw std::logic_error("missing group " + name);
}

double classical_energy_per_t(const ExperimentConfig& cfg) {
  const PauliSum h = build_qubit_hamiltonian(cfg.model, cfg.convention);
  const Circuit prep =
      prepare_initial(cfg.init, cfg.model.n_sites, cfg.model.n_electrons);
  const Statevector psi =
      run_statevector(prep.bind({}), Statevector(2 * cfg.model.n_sites));
  return expectation(h, psi) / cfg.model.t;
}

// ---------------------------------------------------------------------
// Criteria.

void criterion_1() {
  struct Row {
    int m, singles, doubles;
  };
  bool ok = true;
  for (const Row r : {Row{4, 6, 3}, Row{6, 15, 45}, Row{8, 28, 210}}) {
    const auto s = generate_transitions(r.m, false);
    const auto all = generate_transitions(r.m, true);
    ok = ok && int(s.size()) == r.singles &&
         int(all.size()) == r.singles + r.doubles;
  }
  report(1, "transition counts (6,3)/(15,45)/(28,210) for M=4/6/8", ok);
}

void criterion_2() {
  double worst = 0.0;
  for (int m = 2; m <= 6; ++m) {
    std::vector<FermionSum> cases;
    for (int i = 0; i < m; ++i) {
      FermionSum c(m), cd(m), n(m);
      c.add_term(1.0, {{uint32_t(i), false}});
      cd.add_term(1.0, {{uint32_t(i), true}});
      n.add_term(1.0, {{uint32_t(i), true}, {uint32_t(i), false}});
      cases.push_back(c);
      cases.push_back(cd);
      cases.push_back(n);
      for (int j = i + 1; j < m; ++j) {
        FermionSum hop(m);
        hop.add_term(1.0, {{uint32_t(i), true}, {uint32_t(j), false}});
        hop.add_term(1.0, {{uint32_t(j), true}, {uint32_t(i), false}});
        cases.push_back(hop);
      }
    }
    if (m >= 4)
      for (const auto& t : generate_transitions(m, true))
        if (t.is_double) cases.push_back(t.generator(m));
    for (const auto& f : cases)
      worst = std::max(worst, (jw_transform(f).to_matrix() - fock_matrix(f))
                                  .cwiseAbs()
                                  .maxCoeff());
  }
  report(2, "JW matrices match the Fock oracle for M <= 6", worst <= 1e-12,
         "max deviation " + fmt(worst));
}

void criterion_3() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(-2.5, 2.5);
  double worst_exact = 0.0, worst_mag = 0.0, worst_block = 0.0;
  for (int m = 2; m <= 6; ++m) {
    for (const auto& t : generate_transitions(m, m >= 4)) {
      for (int rep = 0; rep < 5; ++rep) {
        const double theta = angle(rng);
        const Eigen::MatrixXcd expect =
            (theta * jw_transform(t.generator(m)).to_matrix()).exp();
        for (const auto style :
             {ExcitationStyle::staircase, ExcitationStyle::yab}) {
          const Circuit c =
              excitation_circuit(m, t, style, LadderMode::exact_ladder);
          worst_exact = std::max(
              worst_exact,
              (circuit_unitary(c, theta) - expect).cwiseAbs().maxCoeff());
        }
        if (rep < 2 && m <= 5) {
          const Circuit c = excitation_circuit(m, t, ExcitationStyle::yab,
                                               LadderMode::no_ladder);
          const Eigen::MatrixXcd u = circuit_unitary(c, theta);
          worst_mag = std::max(
              worst_mag,
              (u.cwiseAbs() - expect.cwiseAbs()).cwiseAbs().maxCoeff());
          const uint64_t d = uint64_t(1) << m;
          for (uint64_t r = 0; r < d; ++r)
            for (uint64_t cl = 0; cl < d; ++cl)
              if (std::popcount(r) != std::popcount(cl))
                worst_block = std::max(
                    worst_block,
                    std::abs(u(Eigen::Index(r), Eigen::Index(cl))));
        }
      }
    }
  }
  report(3,
         "exact_ladder == expm (1e-10, M <= 6, 5 angles); no_ladder keeps "
         "magnitudes and particle number",
         worst_exact < 1e-10 && worst_mag < 1e-10 && worst_block < 1e-12,
         "exact " + fmt(worst_exact) + ", magnitude " + fmt(worst_mag) +
             ", sector leakage " + fmt(worst_block));
}

void criterion_4() {
  bool ok = true;
  std::string detail;
  for (double ratio : {0.2, 5.0, 20.0}) {
    ModelParams p;
    p.n_sites = 2;
    p.n_electrons = 2;
    p.t = 1.0;
    p.J = 0.0;
    p.u_c = ratio;
    p.B = {{0, 0, 0}, {0, 0, 0}};
    const double e =
        diagonalize(p, CoulombConvention::hubbard, 2).ground_energy;
    const double analytic = (ratio - std::sqrt(ratio * ratio + 16.0)) / 2.0;
    // Independent brute-force block oracle in the S_z = 0 subspace.
    Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
    h(2, 2) = h(3, 3) = ratio;
    h(0, 2) = h(2, 0) = h(0, 3) = h(3, 0) = -1.0;
    h(1, 2) = h(2, 1) = h(1, 3) = h(3, 1) = 1.0;
    const double brute =
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(h).eigenvalues()(0);
    ok = ok && std::abs(e - analytic) < 1e-10 && std::abs(e - brute) < 1e-10;
    detail += fmt(e) + " ";
  }
  report(4, "2-site J=0 ground energies match (U - sqrt(U^2+16t^2))/2", ok,
         "E_g = " + detail + "for U/t = 0.2, 5, 20");
}

void criterion_5() {
  std::vector<SuiteGroup> suite;
  for (const auto family :
       {AnsatzFamily::ClusterSD, AnsatzFamily::YAB_SD,
        AnsatzFamily::SimplifiedYAB_SD, AnsatzFamily::SimplifiedYAB_3S})
    for (const auto method : {OptMethod::slsqp_style, OptMethod::bfgs})
      suite.push_back(nine_config_group(
          std::string(to_string(family)) + "+" + to_string(method), 2,
          family, method, BackendKind::exact_expectation, 0.0));
  const SuiteResult res = run_suite(suite, 8);
  bool ok = true;
  std::string detail;
  for (const auto& a : res.averages) {
    ok = ok && a.de_percent <= 0.1 && a.fidelity >= 0.99;
    detail += a.name + " dE=" + fmt(a.de_percent) + "% F=" +
              fmt(a.fidelity) + "; ";
  }
  report(5, "2-site suite: 4 families x {slsqp_style,bfgs} mean dE <= 0.1%, "
            "mean F >= 0.99",
         ok, detail);

  // Witness clause: SimplifiedYAB_S + slsqp_style lands at F in
  // [0.9, 0.99) on at least one of the nine configs.  Evaluated under the
  // zeros default and the benchmark protocol; see the repository notes —
  // the 2-site landscape is bimodal for this family, so the clause is
  // expected to fail (the expressivity gap shows at 3 sites, criterion 6).
  std::vector<SuiteGroup> wit;
  SuiteGroup zeros = nine_config_group(
      "SimpS+slsqp zeros", 2, AnsatzFamily::SimplifiedYAB_S,
      OptMethod::slsqp_style, BackendKind::exact_expectation, 0.0);
  for (auto& c : zeros.configs) {
    c.theta_init = ThetaInit::zeros;
    c.n_restarts = 1;
  }
  wit.push_back(zeros);
  wit.push_back(nine_config_group(
      "SimpS+slsqp benchmark", 2, AnsatzFamily::SimplifiedYAB_S,
      OptMethod::slsqp_style, BackendKind::exact_expectation, 0.0));
  const SuiteResult wres = run_suite(wit, 8);
  bool hit = false;
  double nearest = -1.0;
  for (const auto& r : wres.runs) {
    if (r.fidelity >= 0.9 && r.fidelity < 0.99) hit = true;
    if (r.fidelity < 0.99 &&
        std::abs(r.fidelity - 0.945) < std::abs(nearest - 0.945))
      nearest = r.fidelity;
  }
  report(5, "witness: SimplifiedYAB_S+slsqp_style has >= 1 config with F in "
            "[0.9, 0.99)",
         hit, hit ? "" : "no attractor in the window; nearest F below 0.99 "
                         "is " + fmt(nearest) +
                         " (landscape is bimodal at 2 sites)");
}

void criterion_6() {
  std::vector<SuiteGroup> suite;
  suite.push_back(nine_config_group("Simp3S", 3,
                                    AnsatzFamily::SimplifiedYAB_3S,
                                    OptMethod::slsqp_style,
                                    BackendKind::exact_expectation, 0.0));
  suite.push_back(nine_config_group("SimpS", 3,
                                    AnsatzFamily::SimplifiedYAB_S,
                                    OptMethod::slsqp_style,
                                    BackendKind::exact_expectation, 0.0));
  const SuiteResult res = run_suite(suite, 8);
  const GroupAverage& a3 = average_of(res, "Simp3S");
  bool simp_s_gap = false;
  double worst_s = 0.0;
  for (const auto& r : res.runs)
    if (r.family == AnsatzFamily::SimplifiedYAB_S) {
      worst_s = std::max(worst_s, r.de_percent);
      if (r.de_percent >= 0.5) simp_s_gap = true;
    }
  const bool ok = a3.de_percent <= 0.01 && a3.fidelity >= 0.999 && simp_s_gap;
  report(6, "3-site: Simplified 3S reaches dE <= 0.01% and F >= 0.999; "
            "single-pass S leaves dE >= 0.5% somewhere",
         ok, "3S dE=" + fmt(a3.de_percent) + "% F=" + fmt(a3.fidelity) +
                 "; S worst dE=" + fmt(worst_s) + "%");
}

void criterion_7() {
  struct Row {
    AnsatzFamily family;
    int table[3];  // published N_CX at N_s = 2, 3, 4
  };
  const Row rows[] = {
      {AnsatzFamily::ClusterSD, {184, 2876, 15792}},
      {AnsatzFamily::YAB_SD, {86, 983, 4776}},
      {AnsatzFamily::YAB_S, {34, 107, 210}},
      {AnsatzFamily::SimplifiedYAB_SD, {76, 812, 3572}},
      {AnsatzFamily::SimplifiedYAB_S, {20, 57, 114}},
      {AnsatzFamily::SimplifiedYAB_3S, {60, 171, 342}},
  };
  auto cx = [](AnsatzFamily f, int ns) {
    return build_ansatz({f, ns, 3}).count_cx();
  };
  bool bands = true;
  std::string detail;
  for (const auto& row : rows)
    for (int k = 0; k < 3; ++k) {
      const int got = cx(row.family, 2 + k);
      const double rel = double(got) / row.table[k];
      if (rel < 0.85 || rel > 1.15) {
        bands = false;
        detail += std::string(to_string(row.family)) + "@" +
                  std::to_string(2 + k) + "=" + std::to_string(got) + " vs " +
                  std::to_string(row.table[k]) + "; ";
      }
    }
  bool order = true;
  for (int ns : {2, 3, 4}) {
    order = order &&
            cx(AnsatzFamily::SimplifiedYAB_S, ns) <
                cx(AnsatzFamily::YAB_S, ns) &&
            cx(AnsatzFamily::SimplifiedYAB_SD, ns) <
                cx(AnsatzFamily::YAB_SD, ns) &&
            cx(AnsatzFamily::YAB_SD, ns) < cx(AnsatzFamily::ClusterSD, ns) &&
            cx(AnsatzFamily::YAB_S, ns) < cx(AnsatzFamily::YAB_SD, ns) &&
            cx(AnsatzFamily::SimplifiedYAB_3S, ns) ==
                3 * cx(AnsatzFamily::SimplifiedYAB_S, ns);
  }
  report(7, "CX counts within +-15% of the published table; orderings exact",
         bands && order, detail.empty() ? "all bands hold" : detail);
}

void criterion_8() {
  // (a) + (b): the noisy 2-site suite at p_cx = 0.01.
  std::vector<SuiteGroup> suite;
  for (const auto family :
       {AnsatzFamily::SimplifiedYAB_S, AnsatzFamily::ClusterSD,
        AnsatzFamily::YAB_SD, AnsatzFamily::SimplifiedYAB_SD})
    suite.push_back(nine_config_group(to_string(family), 2, family,
                                      OptMethod::slsqp_style,
                                      BackendKind::density, 0.01));
  const SuiteResult res = run_suite(suite, 8);
  const GroupAverage& simp_s = average_of(res, "SimplifiedYAB_S");
  const GroupAverage& cluster = average_of(res, "ClusterSD");
  report(8, "(a) noisy mean dE: SimplifiedYAB_S < ClusterSD",
         simp_s.de_percent < cluster.de_percent,
         fmt(simp_s.de_percent) + "% vs " + fmt(cluster.de_percent) + "%");

  // (b) over the YAB-style SD families (the published F = 0.9996–0.9999 at
  // dE ~ 40% rows): restated fidelity stays high while energy is far off.
  bool b_ok = true;
  std::string b_detail;
  for (const char* name : {"YAB_SD", "SimplifiedYAB_SD"}) {
    const GroupAverage& a = average_of(res, name);
    b_ok = b_ok && a.fidelity >= 0.98 && a.de_percent >= 10.0;
    b_detail += std::string(name) + " F=" + fmt(a.fidelity) + " dE=" +
                fmt(a.de_percent) + "%; ";
  }
  report(8, "(b) SD-family fidelities >= 0.98 while dE >= 10% under noise",
         b_ok, b_detail);

  // (c) θ = 0, p = 0 energies equal the classical initial energies.
  double worst_c = 0.0;
  for (int set = 1; set <= 3; ++set)
    for (const auto init : {InitialStateKind::AFM, InitialStateKind::FM,
                            InitialStateKind::DoubleAFM}) {
      ExperimentConfig cfg = benchmark_config(
          set, init, 2, AnsatzFamily::SimplifiedYAB_SD,
          OptMethod::cobyla_style, BackendKind::density, 0.0);
      cfg.theta_init = ThetaInit::zeros;
      cfg.n_restarts = 1;
      cfg.budget.max_evals = 1;
      const RunResult r = run_vqe(cfg);
      worst_c = std::max(worst_c,
                         std::abs(r.energy - classical_energy_per_t(cfg)));
    }
  report(8, "(c) theta=0, p=0 energies equal classical initial energies",
         worst_c < 1e-10, "max deviation " + fmt(worst_c));

  // (d) θ = 0 energy deviation non-decreasing in p_cx.
  bool d_ok = true;
  std::string d_detail;
  for (int set = 1; set <= 3; ++set) {
    double prev = -1.0, base = 0.0;
    for (double p : {0.0, 0.005, 0.01, 0.02}) {
      ExperimentConfig cfg = benchmark_config(
          set, InitialStateKind::AFM, 2, AnsatzFamily::SimplifiedYAB_SD,
          OptMethod::cobyla_style, BackendKind::density, p);
      cfg.theta_init = ThetaInit::zeros;
      cfg.n_restarts = 1;
      cfg.budget.max_evals = 1;
      const RunResult r = run_vqe(cfg);
      if (p == 0.0) base = r.energy;
      const double dev = std::abs(r.energy - base);
      if (dev < prev - 1e-12) d_ok = false;
      prev = dev;
    }
    d_detail += "set" + std::to_string(set) + " max=" + fmt(prev) + "; ";
  }
  report(8, "(d) theta=0 deviation non-decreasing in p_cx", d_ok, d_detail);
}

void criterion_9() {
  bool ok = true;
  std::string detail;
  const std::vector<double> target{0.3, -1.1, 0.7, 2.0};
  for (const auto method :
       {OptMethod::cobyla_style, OptMethod::powell, OptMethod::bfgs,
        OptMethod::slsqp_style}) {
    const Objective obj(4, [&](const std::vector<double>& x) {
      double f = 0.0;
      for (size_t i = 0; i < 4; ++i) {
        const double d = x[i] - target[i];
        f += double(i + 1) * d * d;
      }
      return f;
    });
    const auto res =
        minimize(method, obj, {0, 0, 0, 0}, {100000, 1e-12, 1e-12});
    bool m_ok = res.f < 1e-8;
    for (size_t i = 0; i < 4; ++i)
      m_ok = m_ok && std::abs(res.theta[i] - target[i]) < 1e-5;
    for (size_t k = 1; k < res.trace.size(); ++k)
      m_ok = m_ok && res.trace[k].second <= res.trace[k - 1].second + 1e-15;
    if (!m_ok) detail += std::string(to_string(method)) + " failed; ";
    ok = ok && m_ok;
  }
  {
    const Objective rosen(2, [](const std::vector<double>& x) {
      const double a = 1.0 - x[0], b = x[1] - x[0] * x[0];
      return a * a + 100.0 * b * b;
    });
    const auto res = minimize(OptMethod::bfgs, rosen, {-1.2, 1.0},
                              {200000, 1e-14, 1e-12, 1e-7});
    const bool r_ok = std::abs(res.theta[0] - 1.0) < 1e-4 &&
                      std::abs(res.theta[1] - 1.0) < 1e-4;
    if (!r_ok) detail += "rosenbrock failed; ";
    ok = ok && r_ok;
  }
  {
    const Objective obj(2, [](const std::vector<double>& x) {
      return std::sin(x[0]) + x[0] * x[1] * x[1];
    });
    const std::vector<double> x{0.7, -0.4};
    const auto g = finite_diff_gradient(obj, x, 1e-4);
    const bool g_ok =
        std::abs(g[0] - (std::cos(x[0]) + x[1] * x[1])) < 1e-6 &&
        std::abs(g[1] - 2.0 * x[0] * x[1]) < 1e-6;
    if (!g_ok) detail += "gradient check failed; ";
    ok = ok && g_ok;
  }
  report(9, "optimizer suite: quadratic/Rosenbrock convergence, monotone "
            "traces, gradients to 1e-6",
         ok, detail.empty() ? "all methods converged" : detail);
}

void criterion_10() {
  ExperimentConfig cfg = benchmark_config(
      1, InitialStateKind::AFM, 2, AnsatzFamily::Generic,
      OptMethod::slsqp_style, BackendKind::exact_expectation);
  cfg.penalty = PenaltyParams{10.0 * cfg.model.u_c, cfg.model.n_electrons};
  const RunResult pen = run_vqe(cfg);
  const double dev_pen =
      std::abs(pen.number_expectation - cfg.model.n_electrons);

  ExperimentConfig zero = cfg;
  zero.penalty = PenaltyParams{0.0, cfg.model.n_electrons};
  const RunResult wit = run_vqe(zero);
  const double dev_wit =
      std::abs(wit.number_expectation - cfg.model.n_electrons);

  report(10, "Generic penalty E_f = 10 U_c keeps |<N>-n_e| <= 0.05; zero "
             "penalty violates by > 0.5",
         dev_pen <= 0.05 && dev_wit > 0.5,
         "penalized " + fmt(dev_pen) + ", witness " + fmt(dev_wit));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (g_failures) std::printf("%d criterion check(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
