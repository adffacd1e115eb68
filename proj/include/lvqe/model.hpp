// SPDX-License-Identifier: Apache-2.0
//
// Tight-binding chain with on-site sd-exchange and on-site Coulomb
// repulsion:
//
//   H = H_kin + H_sd + H_Coul
//   H_kin  = -t Σ_{<i,i'>,s} c†_{i,s} c_{i',s}            (open chain)
//   H_sd   = -J Σ_i B⃗_i · (c†_{i,s'} σ⃗_{s's} c_{i,s})
//   H_Coul =  U_c Σ_i Σ_{s≠s'} n_{i,s} n_{i,s'}           (literal)
//
// plus an optional particle-number penalty H_pc = E_f (N̂_tot - n_e)².

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "lvqe/fermion.hpp"
#include "lvqe/pauli.hpp"

namespace lvqe {

struct ModelParams {
  int n_sites = 2;
  int n_electrons = 2;
  double t = 1.0;    ///< hopping energy; also the reporting energy unit
  double J = 0.2;    ///< sd-exchange coupling
  double u_c = 10.0; ///< on-site Coulomb constant
  std::vector<std::array<double, 3>> B;  ///< per-site localized moments

  void validate() const;  ///< throws std::invalid_argument on bad fields
};

/// literal: U_c Σ_{s≠s'} n_s n_{s'} = 2 U_c n↑n↓ per site, exactly as
/// written in the model; hubbard: the conventional U_c n↑n↓ reading.
enum class CoulombConvention { literal, hubbard };

const char* to_string(CoulombConvention c);

struct PenaltyParams {
  double e_f = 0.0;  ///< penalty energy, ≥ 0
  int n_e = 0;       ///< target electron number
};

/// Hermitian fermionic Hamiltonian over 2·n_sites modes.
FermionSum build_fermionic_hamiltonian(const ModelParams& p,
                                       CoulombConvention conv);

/// JW image of the fermionic Hamiltonian, optionally plus the expanded
/// penalty term E_f (N̂_tot - n_e)².
PauliSum build_qubit_hamiltonian(const ModelParams& p, CoulombConvention conv,
                                 std::optional<PenaltyParams> penalty = {});

/// N̂_tot = Σ_q (I - Z_q)/2 as a Pauli sum.
PauliSum total_number_operator(int n_qubits);

}  // namespace lvqe
