// SPDX-License-Identifier: Apache-2.0
//
// Second-quantized operator expressions over fermionic modes and the
// Jordan-Wigner transformation into Pauli sums.
//
// Mode convention: spin-up states of sites 0..N_s-1 occupy modes
// 0..N_s-1, spin-down states occupy modes N_s..2N_s-1.  Fock basis states
// are indexed with mode q as bit q of the basis index, and modes are
// created in increasing index order (JW Z-strings on k < j match this).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lvqe/pauli.hpp"

namespace lvqe {

/// One creation (dagger) or annihilation operator acting on a mode.
struct FermionOp {
  uint32_t mode;
  bool dagger;
  bool operator==(const FermionOp&) const = default;
};

/// coeff · op_0 · op_1 · ... (operators multiply left to right as written).
struct FermionTerm {
  cplx coeff;
  std::vector<FermionOp> ops;
};

/// Site/spin → mode index mapping.
struct ModeConvention {
  int n_sites;
  int n_modes() const { return 2 * n_sites; }
  int mode(int site, bool spin_up) const {
    return spin_up ? site : n_sites + site;
  }
};

/// Sum of fermionic terms over a fixed number of modes.
class FermionSum {
 public:
  FermionSum() = default;
  explicit FermionSum(int n_modes) : n_modes_(n_modes) {}

  int n_modes() const { return n_modes_; }
  const std::vector<FermionTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add_term(cplx coeff, std::vector<FermionOp> ops);

  FermionSum& operator+=(const FermionSum& o);
  FermionSum& operator*=(cplx c);

  /// Hermitian conjugate.
  FermionSum dagger() const;

  /// Canonical normal order: creation operators first (ascending mode),
  /// then annihilation operators (descending mode), with anticommutator
  /// delta terms expanded.  Idempotent.
  FermionSum normal_ordered(double tol = 1e-12) const;

  /// One `coeff * c†_2 c_0`-style line per term.
  std::string str() const;

 private:
  int n_modes_ = 0;
  std::vector<FermionTerm> terms_;
};

/// Jordan-Wigner transformation: c_j ↦ (∏_{k<j} Z_k) (X_j + iY_j)/2.
/// Result is canonical; hermitian input yields a hermitian sum.
PauliSum jw_transform(const FermionSum& f);
PauliSum jw_transform(const FermionSum& f, const ModeConvention& conv);

/// Sign of ⟨bra| term-product |ket⟩ on explicit occupation bitsets;
/// returns 0 when the operator string annihilates the ket or does not
/// connect the two states.  Used to pin fermionic sign conventions when
/// compiling excitation circuits.
double fock_matrix_element(const FermionTerm& term, uint64_t bra,
                           uint64_t ket);

}  // namespace lvqe
