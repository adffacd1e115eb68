// SPDX-License-Identifier: Apache-2.0

#include "lvqe/ed.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace lvqe {

SpectrumResult diagonalize(const ModelParams& p, CoulombConvention conv,
                           std::optional<int> sector) {
  const int width = 2 * p.n_sites;
  if (width > 12) throw std::invalid_argument("dimension too large for ED");
  const PauliSum h = build_qubit_hamiltonian(p, conv);
  const Eigen::MatrixXcd hm = h.to_matrix();
  const uint64_t dim = uint64_t(1) << width;

  // Basis indices participating in the diagonalization.
  std::vector<uint64_t> basis;
  if (sector) {
    if (*sector < 0 || *sector > width)
      throw std::invalid_argument("invalid particle-number sector");
    for (uint64_t x = 0; x < dim; ++x)
      if (std::popcount(x) == *sector) basis.push_back(x);
  } else {
    basis.resize(dim);
    for (uint64_t x = 0; x < dim; ++x) basis[x] = x;
  }

  Eigen::MatrixXcd block(basis.size(), basis.size());
  for (size_t c = 0; c < basis.size(); ++c)
    for (size_t r = 0; r < basis.size(); ++r)
      block(Eigen::Index(r), Eigen::Index(c)) =
          hm(Eigen::Index(basis[r]), Eigen::Index(basis[c]));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed");

  SpectrumResult out;
  out.width = width;
  const auto& evals = solver.eigenvalues();
  out.eigenvalues.assign(evals.data(), evals.data() + evals.size());
  out.ground_energy = out.eigenvalues.front();

  const double gap_tol = 1e-8 * std::max(1.0, std::abs(out.ground_energy));
  out.degeneracy = 0;
  for (double e : out.eigenvalues)
    if (e - out.ground_energy < gap_tol) ++out.degeneracy;

  for (int k = 0; k < out.degeneracy; ++k) {
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(Eigen::Index(dim));
    for (size_t r = 0; r < basis.size(); ++r)
      full[Eigen::Index(basis[r])] = solver.eigenvectors()(Eigen::Index(r), k);
    out.ground_vectors.push_back(std::move(full));
  }
  return out;
}

double reference_fidelity(const Statevector& candidate,
                          const SpectrumResult& spectrum) {
  if (candidate.n_qubits() != spectrum.width)
    throw std::invalid_argument("state width mismatch");
  const Eigen::VectorXcd psi = candidate.to_eigen();
  double weight = 0.0;
  for (const auto& g : spectrum.ground_vectors)
    weight += std::norm(g.dot(psi));
  return weight;
}

double reference_fidelity(const DensityMatrix& candidate,
                          const SpectrumResult& spectrum) {
  if (candidate.n_qubits() != spectrum.width)
    throw std::invalid_argument("state width mismatch");
  const Eigen::MatrixXcd rho = candidate.to_eigen();
  double weight = 0.0;
  for (const auto& g : spectrum.ground_vectors)
    weight += (g.adjoint() * rho * g)(0, 0).real();
  return weight;
}

}  // namespace lvqe
