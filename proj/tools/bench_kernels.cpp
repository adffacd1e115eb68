// SPDX-License-Identifier: Apache-2.0
//
// Compares the serial reference gate kernels against the OpenMP-parallel
// ones on random circuits, checking agreement and reporting throughput.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "lvqe/statevector.hpp"

#ifdef LVQE_HAVE_OPENMP
#include <omp.h>
#endif

namespace {

using namespace lvqe;

std::vector<BoundGate> random_circuit(int n_qubits, int n_gates,
                                      std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick_kind(0, 5);
  std::uniform_int_distribution<int> pick_q(0, n_qubits - 1);
  std::uniform_real_distribution<double> angle(-3.14, 3.14);
  std::vector<BoundGate> gates;
  gates.reserve(size_t(n_gates));
  while (int(gates.size()) < n_gates) {
    BoundGate g;
    switch (pick_kind(rng)) {
      case 0: g = {GateKind::H, pick_q(rng)}; break;
      case 1: g = {GateKind::Rx, pick_q(rng), -1, angle(rng)}; break;
      case 2: g = {GateKind::Ry, pick_q(rng), -1, angle(rng)}; break;
      case 3: g = {GateKind::Rz, pick_q(rng), -1, angle(rng)}; break;
      default: {
        const int c = pick_q(rng);
        const int t = pick_q(rng);
        if (c == t) continue;
        g = {pick_kind(rng) % 2 ? GateKind::CX : GateKind::CZ, c, t};
      }
    }
    gates.push_back(g);
  }
  return gates;
}

double run_timed(const std::vector<BoundGate>& gates, int n_qubits,
                 ExecPolicy policy, Statevector& out) {
  const auto t0 = std::chrono::steady_clock::now();
  out = run_statevector(gates, Statevector(n_qubits), policy);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

double max_amp_diff(const Statevector& a, const Statevector& b) {
  double m = 0.0;
  for (uint64_t i = 0; i < a.dim(); ++i)
    m = std::max(m, std::abs(a.amps()[i] - b.amps()[i]));
  return m;
}

}  // namespace

int main() {
#ifdef LVQE_HAVE_OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; parallel policy == serial\n");
#endif
  std::printf("%-8s %-8s %-12s %-12s %-8s %-10s\n", "qubits", "gates",
              "serial_s", "parallel_s", "speedup", "max_diff");

  std::mt19937_64 rng(7);
  const int n_gates = 2000;
  for (int nq = 10; nq <= 14; ++nq) {
    const auto gates = random_circuit(nq, n_gates, rng);
    Statevector ref(nq), par(nq);
    // Warm-up then best-of-3 per flavor.
    double ts = 1e30, tp = 1e30;
    run_timed(gates, nq, ExecPolicy::serial, ref);
    run_timed(gates, nq, ExecPolicy::parallel, par);
    for (int rep = 0; rep < 3; ++rep) {
      ts = std::min(ts, run_timed(gates, nq, ExecPolicy::serial, ref));
      tp = std::min(tp, run_timed(gates, nq, ExecPolicy::parallel, par));
    }
    std::printf("%-8d %-8d %-12.4f %-12.4f %-8.2f %-10.2e\n", nq, n_gates, ts,
                tp, ts / tp, max_amp_diff(ref, par));
  }
  return 0;
}
