// SPDX-License-Identifier: Apache-2.0
//
// Dense density-matrix backend with a two-qubit depolarizing channel
// attached to every CX gate, plus a Monte-Carlo trajectory sampler over
// statevectors implementing the same channel (used for cross-validation,
// not for acceptance).

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "lvqe/circuit.hpp"
#include "lvqe/statevector.hpp"

namespace lvqe {

struct NoiseModel {
  double p_cx = 0.0;  ///< total probability of a non-identity two-qubit
                      ///< Pauli (uniform p/15 each) after every CX
  uint64_t seed = 0;  ///< trajectory-mode RNG seed
};

/// Column-major dense density matrix.  Width is capped at 10 qubits.
class DensityMatrix {
 public:
  explicit DensityMatrix(int n_qubits);  ///< |0...0⟩⟨0...0|
  static DensityMatrix from_statevector(const Statevector& psi);

  int n_qubits() const { return n_; }
  uint64_t dim() const { return uint64_t(1) << n_; }
  cplx& at(uint64_t row, uint64_t col) { return m_[col * dim() + row]; }
  const cplx& at(uint64_t row, uint64_t col) const {
    return m_[col * dim() + row];
  }
  const std::vector<cplx>& data() const { return m_; }

  double trace_real() const;
  double purity() const;  ///< Tr(ρ²)
  Eigen::MatrixXcd to_eigen() const;

 private:
  int n_ = 0;
  std::vector<cplx> m_;
};

/// Run a bound circuit as ρ → UρU† with the depolarizing channel applied
/// after each CX.  Trace preserved to 1e-10.
DensityMatrix run_density(const std::vector<BoundGate>& gates,
                          const Statevector& init, const NoiseModel& noise);

/// One noise trajectory: statevector execution with a random non-identity
/// two-qubit Pauli inserted after each CX with probability p_cx.
Statevector run_trajectory(const std::vector<BoundGate>& gates,
                           Statevector init, const NoiseModel& noise,
                           std::mt19937_64& rng);

/// Tr(ρ · obs).
double expectation(const PauliSum& obs, const DensityMatrix& rho);

/// ⟨ψ|ρ|ψ⟩ against a pure target.
double fidelity(const DensityMatrix& rho, const Statevector& pure);

/// Apply the depolarizing channel on a qubit pair (exposed for tests).
void apply_depolarizing(DensityMatrix& rho, int q0, int q1, double p);

}  // namespace lvqe
