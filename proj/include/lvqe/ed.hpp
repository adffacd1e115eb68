// SPDX-License-Identifier: Apache-2.0
//
// Exact diagonalization of the model Hamiltonian — the ground truth for
// VQE energies and fidelities.

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lvqe/density.hpp"
#include "lvqe/model.hpp"
#include "lvqe/statevector.hpp"

namespace lvqe {

struct SpectrumResult {
  std::vector<double> eigenvalues;  ///< ascending
  double ground_energy = 0.0;
  /// Ground eigenvector(s), embedded in the full 2^width space even when a
  /// particle-number sector was diagonalized.
  std::vector<Eigen::VectorXcd> ground_vectors;
  int degeneracy = 1;  ///< at relative tolerance 1e-8
  int width = 0;
};

/// Dense diagonalization (2·n_sites ≤ 12).  When `sector` is given, the
/// spectrum is restricted to the fixed-particle-number block.
SpectrumResult diagonalize(const ModelParams& p, CoulombConvention conv,
                           std::optional<int> sector = {});

/// Overlap-squared with the ground state; projection weight onto the
/// ground subspace when degenerate.
double reference_fidelity(const Statevector& candidate,
                          const SpectrumResult& spectrum);
double reference_fidelity(const DensityMatrix& candidate,
                          const SpectrumResult& spectrum);

}  // namespace lvqe
