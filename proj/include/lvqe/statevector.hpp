// SPDX-License-Identifier: Apache-2.0
//
// Dense statevector backend.  Gate kernels come in two flavors: a plain
// serial reference implementation and an OpenMP-parallel one.  The parallel
// kernels fall back to the serial path below a size threshold where thread
// fan-out costs more than the loop; tests compare both flavors bit for bit
// against each other and against dense matrix multiplication.

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "lvqe/circuit.hpp"
#include "lvqe/pauli.hpp"

namespace lvqe {

enum class ExecPolicy {
  serial,     ///< reference kernels, single thread
  parallel,   ///< OpenMP kernels regardless of size
  automatic,  ///< parallel above a width threshold, serial otherwise
};

class Statevector {
 public:
  explicit Statevector(int n_qubits);  ///< |0...0⟩
  static Statevector basis(int n_qubits, uint64_t index);

  int n_qubits() const { return n_; }
  uint64_t dim() const { return uint64_t(1) << n_; }
  const std::vector<cplx>& amps() const { return a_; }
  std::vector<cplx>& amps() { return a_; }

  double norm() const;
  Eigen::VectorXcd to_eigen() const;

 private:
  int n_ = 0;
  std::vector<cplx> a_;
};

namespace kernels {

/// Serial reference kernels (kept as the correctness baseline).
namespace ref {
void apply_gate(Statevector& s, const BoundGate& g);
}

/// OpenMP-parallel kernels.
namespace par {
void apply_gate(Statevector& s, const BoundGate& g);
}

/// Policy dispatch used by the execution entry points.
void apply_gate(Statevector& s, const BoundGate& g, ExecPolicy policy);

}  // namespace kernels

/// Run a bound circuit on an initial state (norm preserved to 1e-10).
Statevector run_statevector(const std::vector<BoundGate>& gates,
                            Statevector init,
                            ExecPolicy policy = ExecPolicy::automatic);

/// Exact ⟨ψ|obs|ψ⟩ for a hermitian observable.
double expectation(const PauliSum& obs, const Statevector& s);

/// ⟨a|b⟩.
cplx overlap(const Statevector& a, const Statevector& b);

/// |⟨a|b⟩|².
double fidelity(const Statevector& a, const Statevector& b);

}  // namespace lvqe
