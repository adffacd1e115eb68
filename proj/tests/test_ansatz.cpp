// SPDX-License-Identifier: Apache-2.0
//
// Ansatz tests: transition enumeration, excitation circuits against the
// fermionic matrix exponential (Eigen's expm as the oracle), the simplified
// (ladder-free) variants' guarantees, gate/parameter counts, particle-number
// conservation, and initial-state preparation.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "lvqe/ansatz.hpp"
#include "lvqe/model.hpp"
#include "lvqe/statevector.hpp"

using namespace lvqe;

namespace {

// Full unitary of a one-parameter excitation circuit at angle θ, column by
// column through the statevector engine.
Eigen::MatrixXcd circuit_unitary(const Circuit& c, double theta) {
  const auto gates = c.bind(std::vector<double>(size_t(c.n_params()), theta));
  const uint64_t d = uint64_t(1) << c.width();
  Eigen::MatrixXcd u{Eigen::Index(d), Eigen::Index(d)};
  for (uint64_t col = 0; col < d; ++col)
    u.col(Eigen::Index(col)) =
        run_statevector(gates, Statevector::basis(c.width(), col)).to_eigen();
  return u;
}

// Oracle: exp(θ(A − A†)) from the JW matrix of the generator.
Eigen::MatrixXcd expm_oracle(int n_modes, const Transition& t, double theta) {
  const Eigen::MatrixXcd g = jw_transform(t.generator(n_modes)).to_matrix();
  return (theta * g).exp();
}

int binom2(int n) { return n * (n - 1) / 2; }

}  // namespace

TEST_CASE("generate_transitions: counts and ordering") {
  struct Row {
    int m, singles, doubles;
  };
  for (const Row r : {Row{4, 6, 3}, Row{6, 15, 45}, Row{8, 28, 210}}) {
    const auto singles_only = generate_transitions(r.m, false);
    CHECK(int(singles_only.size()) == r.singles);
    const auto all = generate_transitions(r.m, true);
    CHECK(int(all.size()) == r.singles + r.doubles);
    // Combinatorial oracle: C(M,2) singles; doubles = unordered pairs of
    // disjoint index pairs = [C(M,2)·C(M-2,2)/2].
    CHECK(r.singles == binom2(r.m));
    CHECK(r.doubles == binom2(r.m) * binom2(r.m - 2) / 2);

    std::set<std::string> seen;
    for (int k = 0; k < int(all.size()); ++k) {
      const auto& t = all[k];
      CHECK(t.is_double == (k >= r.singles));
      CHECK(seen.insert(t.str()).second);  // all distinct
      CHECK(t.i < t.j);
      if (t.is_double) {
        CHECK(t.k < t.l);
        CHECK(std::make_pair(t.i, t.j) < std::make_pair(t.k, t.l));
        const std::set<int> idx{t.i, t.j, t.k, t.l};
        CHECK(idx.size() == 4);
      }
    }
  }
}

TEST_CASE("exact_ladder equals the fermionic matrix exponential, M<=6") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(-2.5, 2.5);
  for (int m = 2; m <= 6; ++m) {
    for (const auto& t : generate_transitions(m, m >= 4)) {
      for (int rep = 0; rep < 5; ++rep) {
        const double theta = angle(rng);
        const Eigen::MatrixXcd expect = expm_oracle(m, t, theta);
        for (const auto style :
             {ExcitationStyle::staircase, ExcitationStyle::yab}) {
          const Circuit c =
              excitation_circuit(m, t, style, LadderMode::exact_ladder);
          REQUIRE(c.n_params() == 1);
          const double err =
              (circuit_unitary(c, theta) - expect).cwiseAbs().maxCoeff();
          if (err >= 1e-10)
            MESSAGE("M=", m, " t=", t.str(), " style=", int(style),
                    " theta=", theta, " err=", err);
          REQUIRE(err < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("no_ladder preserves amplitude magnitudes and particle number") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> angle(-2.5, 2.5);
  for (int m = 2; m <= 5; ++m) {
    for (const auto& t : generate_transitions(m, m >= 4)) {
      for (int rep = 0; rep < 3; ++rep) {
        const double theta = angle(rng);
        const Eigen::MatrixXcd exact = expm_oracle(m, t, theta);
        const Circuit c = excitation_circuit(
            m, t, ExcitationStyle::yab, LadderMode::no_ladder);
        const Eigen::MatrixXcd u = circuit_unitary(c, theta);
        CHECK((u.cwiseAbs() - exact.cwiseAbs()).cwiseAbs().maxCoeff() <
              1e-10);
        // Particle-number block structure: no matrix element between basis
        // states of different occupation count.
        const uint64_t d = uint64_t(1) << m;
        for (uint64_t r = 0; r < d; ++r)
          for (uint64_t cl = 0; cl < d; ++cl)
            if (std::popcount(r) != std::popcount(cl))
              CHECK(std::abs(u(Eigen::Index(r), Eigen::Index(cl))) < 1e-12);
      }
    }
  }
}

TEST_CASE("no_ladder never uses more CX, equal only for adjacent singles") {
  for (int m : {4, 6}) {
    for (const auto& t : generate_transitions(m, true)) {
      const int with = excitation_circuit(m, t, ExcitationStyle::yab,
                                          LadderMode::exact_ladder)
                           .count_cx();
      const int without = excitation_circuit(m, t, ExcitationStyle::yab,
                                             LadderMode::no_ladder)
                              .count_cx();
      CHECK(without <= with);
      if (!t.is_double) {
        if (t.j == t.i + 1)
          CHECK(without == with);
        else
          CHECK(without < with);
      }
    }
  }
}

TEST_CASE("build_ansatz: parameter counts follow the transition census") {
  for (int ns : {2, 3, 4}) {
    const int m = 2 * ns;
    const int singles = binom2(m);
    const int doubles = binom2(m) * binom2(m - 2) / 2;
    for (const auto family :
         {AnsatzFamily::ClusterSD, AnsatzFamily::YAB_SD,
          AnsatzFamily::SimplifiedYAB_SD})
      CHECK(build_ansatz({family, ns, 3}).n_params() == singles + doubles);
    for (const auto family :
         {AnsatzFamily::YAB_S, AnsatzFamily::SimplifiedYAB_S})
      CHECK(build_ansatz({family, ns, 3}).n_params() == singles);
    CHECK(build_ansatz({AnsatzFamily::SimplifiedYAB_3S, ns, 3}).n_params() ==
          3 * singles);
    // Generic: reps entangling layers plus a final rotation layer, three
    // rotations per qubit each → 3·nq·(reps+1) parameters.
    CHECK(build_ansatz({AnsatzFamily::Generic, ns, 3}).n_params() ==
          12 * m);
  }
}

TEST_CASE("build_ansatz: CX counts, regression values and orderings") {
  auto cx = [](AnsatzFamily f, int ns) {
    return build_ansatz({f, ns, 3}).count_cx();
  };
  // Regression-pinned counts for the shipped decompositions.
  CHECK(cx(AnsatzFamily::SimplifiedYAB_S, 2) == 20);
  CHECK(cx(AnsatzFamily::SimplifiedYAB_S, 3) == 52);
  CHECK(cx(AnsatzFamily::SimplifiedYAB_S, 4) == 100);
  CHECK(cx(AnsatzFamily::SimplifiedYAB_SD, 2) == 68);
  CHECK(cx(AnsatzFamily::YAB_SD, 2) == 80);
  CHECK(cx(AnsatzFamily::ClusterSD, 2) == 184);

  for (int ns : {2, 3, 4}) {
    // The simplified 3S family is three passes of the simplified singles.
    CHECK(cx(AnsatzFamily::SimplifiedYAB_3S, ns) ==
          3 * cx(AnsatzFamily::SimplifiedYAB_S, ns));
    // Cheap-to-expensive orderings hold at every size.
    CHECK(cx(AnsatzFamily::SimplifiedYAB_S, ns) <
          cx(AnsatzFamily::YAB_S, ns));
    CHECK(cx(AnsatzFamily::SimplifiedYAB_SD, ns) <
          cx(AnsatzFamily::YAB_SD, ns));
    CHECK(cx(AnsatzFamily::YAB_SD, ns) < cx(AnsatzFamily::ClusterSD, ns));
    CHECK(cx(AnsatzFamily::YAB_S, ns) < cx(AnsatzFamily::YAB_SD, ns));
  }
}

TEST_CASE("cluster families conserve particle number, Generic does not") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-1.5, 1.5);
  const int ns = 2, ne = 2;
  const PauliSum n_op = total_number_operator(2 * ns);
  for (const auto family :
       {AnsatzFamily::ClusterSD, AnsatzFamily::YAB_SD, AnsatzFamily::YAB_S,
        AnsatzFamily::SimplifiedYAB_SD, AnsatzFamily::SimplifiedYAB_S,
        AnsatzFamily::SimplifiedYAB_3S}) {
    Circuit c = prepare_initial({InitialStateKind::AFM}, ns, ne);
    c.append(build_ansatz({family, ns, 3}));
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<double> theta(size_t(c.n_params()));
      for (auto& x : theta) x = angle(rng);
      const Statevector psi = run_statevector(c.bind(theta), Statevector(4));
      CHECK(std::abs(expectation(n_op, psi) - ne) < 1e-10);
    }
  }
  // Unitary-level check on one family at 6 qubits: U N U† = N.
  {
    const Circuit c = build_ansatz({AnsatzFamily::SimplifiedYAB_SD, 3, 3});
    std::vector<double> theta(size_t(c.n_params()));
    for (auto& x : theta) x = angle(rng);
    const auto gates = c.bind(theta);
    Eigen::MatrixXcd u(64, 64);
    for (uint64_t col = 0; col < 64; ++col)
      u.col(Eigen::Index(col)) =
          run_statevector(gates, Statevector::basis(6, col)).to_eigen();
    const Eigen::MatrixXcd n_mat = total_number_operator(6).to_matrix();
    CHECK((u * n_mat - n_mat * u).cwiseAbs().maxCoeff() < 1e-10);
  }
  // Generic witness: some parameter vector leaves the particle sector.
  {
    Circuit c = prepare_initial({InitialStateKind::AFM}, ns, ne);
    c.append(build_ansatz({AnsatzFamily::Generic, ns, 3}));
    double max_dev = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> theta(size_t(c.n_params()));
      for (auto& x : theta) x = angle(rng);
      const Statevector psi = run_statevector(c.bind(theta), Statevector(4));
      max_dev = std::max(max_dev, std::abs(expectation(n_op, psi) - ne));
    }
    CHECK(max_dev > 0.1);
  }
}

TEST_CASE("prepare_initial: classical fillings") {
  // FM: modes 0..N_e−1 (all spin-up).
  CHECK(classical_occupation(InitialStateKind::FM, 3, 2) ==
        std::vector<int>{0, 1});
  // AFM alternates spin along the chain: sites 0,1,2 → modes 0, N_s+1, 2.
  CHECK(classical_occupation(InitialStateKind::AFM, 3, 3) ==
        std::vector<int>{0, 4, 2});

  const Circuit c = prepare_initial({InitialStateKind::AFM}, 3, 3);
  const Statevector psi = run_statevector(c.bind({}), Statevector(6));
  const uint64_t idx = (1u << 0) | (1u << 4) | (1u << 2);
  CHECK(std::abs(psi.amps()[idx] - 1.0) < 1e-14);

  CHECK_THROWS(classical_occupation(InitialStateKind::FM, 2, 3));
}

TEST_CASE("prepare_initial: DoubleAFM is the symmetric AFM superposition") {
  const int ns = 3, ne = 3;
  const Circuit c = prepare_initial({InitialStateKind::DoubleAFM}, ns, ne);
  const Statevector psi = run_statevector(c.bind({}), Statevector(2 * ns));
  uint64_t a = 0, b = 0;
  for (int site = 0; site < ne; ++site) {
    a |= uint64_t(1) << (site % 2 == 0 ? site : ns + site);
    b |= uint64_t(1) << (site % 2 == 0 ? ns + site : site);
  }
  Statevector target(2 * ns);
  for (auto& x : target.amps()) x = 0.0;
  target.amps()[a] = 1.0 / std::sqrt(2.0);
  target.amps()[b] = 1.0 / std::sqrt(2.0);
  CHECK(fidelity(psi, target) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("prepare_initial: explicit occupation and validation") {
  const Circuit c =
      prepare_initial({InitialStateKind::Explicit, {1, 2}}, 2, 2);
  const Statevector psi = run_statevector(c.bind({}), Statevector(4));
  CHECK(std::abs(psi.amps()[0b0110] - 1.0) < 1e-14);

  CHECK_THROWS(prepare_initial({InitialStateKind::Explicit, {0}}, 2, 2));
  CHECK_THROWS(prepare_initial({InitialStateKind::Explicit, {0, 9}}, 2, 2));
}

TEST_CASE("family and initial-state names round-trip") {
  for (const auto f :
       {AnsatzFamily::Generic, AnsatzFamily::ClusterSD, AnsatzFamily::YAB_SD,
        AnsatzFamily::YAB_S, AnsatzFamily::SimplifiedYAB_SD,
        AnsatzFamily::SimplifiedYAB_S, AnsatzFamily::SimplifiedYAB_3S})
    CHECK(ansatz_family_from_string(to_string(f)) == f);
  CHECK_THROWS(ansatz_family_from_string("NoSuchFamily"));
  for (const auto k : {InitialStateKind::FM, InitialStateKind::AFM,
                       InitialStateKind::DoubleAFM})
    CHECK(initial_state_from_string(to_string(k)) == k);
}
