// SPDX-License-Identifier: Apache-2.0

#include "lvqe/model.hpp"

#include <stdexcept>

namespace lvqe {

void ModelParams::validate() const {
  if (n_sites < 1) throw std::invalid_argument("n_sites must be >= 1");
  if (n_electrons < 0 || n_electrons > 2 * n_sites)
    throw std::invalid_argument("n_electrons out of range");
  if (int(B.size()) != n_sites)
    throw std::invalid_argument("B must have one 3-vector per site");
}

const char* to_string(CoulombConvention c) {
  return c == CoulombConvention::literal ? "literal" : "hubbard";
}

FermionSum build_fermionic_hamiltonian(const ModelParams& p,
                                       CoulombConvention conv) {
  p.validate();
  const ModeConvention mc{p.n_sites};
  FermionSum h(mc.n_modes());

  auto up = [&](int site) { return uint32_t(mc.mode(site, true)); };
  auto dn = [&](int site) { return uint32_t(mc.mode(site, false)); };

  // Kinetic term: -t over nearest-neighbor bonds of the open chain,
  // both hopping directions, both spins.
  for (int i = 0; i + 1 < p.n_sites; ++i) {
    for (bool spin_up : {true, false}) {
      const auto a = uint32_t(mc.mode(i, spin_up));
      const auto b = uint32_t(mc.mode(i + 1, spin_up));
      h.add_term(-p.t, {{a, true}, {b, false}});
      h.add_term(-p.t, {{b, true}, {a, false}});
    }
  }

  // sd exchange, -J Σ_i B⃗_i · (c† σ⃗ c)_i expanded over spin components:
  //   B_z (n↑ - n↓) + B_x (c†↑c↓ + c†↓c↑) + i B_y (c†↓c↑ - c†↑c↓).
  for (int i = 0; i < p.n_sites; ++i) {
    const auto [bx, by, bz] = p.B[size_t(i)];
    if (bz != 0.0) {
      h.add_term(-p.J * bz, {{up(i), true}, {up(i), false}});
      h.add_term(p.J * bz, {{dn(i), true}, {dn(i), false}});
    }
    if (bx != 0.0) {
      h.add_term(-p.J * bx, {{up(i), true}, {dn(i), false}});
      h.add_term(-p.J * bx, {{dn(i), true}, {up(i), false}});
    }
    if (by != 0.0) {
      h.add_term(cplx(0, -1) * p.J * by, {{dn(i), true}, {up(i), false}});
      h.add_term(cplx(0, 1) * p.J * by, {{up(i), true}, {dn(i), false}});
    }
  }

  // On-site Coulomb repulsion.  The literal Σ_{s≠s'} n_s n_s' double-counts
  // the pair, giving 2·U_c n↑n↓; the hubbard convention keeps U_c n↑n↓.
  const double u_factor =
      conv == CoulombConvention::literal ? 2.0 * p.u_c : p.u_c;
  for (int i = 0; i < p.n_sites; ++i) {
    if (u_factor == 0.0) continue;
    h.add_term(u_factor,
               {{up(i), true}, {up(i), false}, {dn(i), true}, {dn(i), false}});
  }
  return h;
}

PauliSum total_number_operator(int n_qubits) {
  PauliSum n = PauliSum::identity(n_qubits, 0.5 * n_qubits);
  for (int q = 0; q < n_qubits; ++q) {
    PauliString z(n_qubits);
    z.set_letter(q, 'Z');
    n.add_term(-0.5, z);
  }
  n.canonicalize();
  return n;
}

PauliSum build_qubit_hamiltonian(const ModelParams& p, CoulombConvention conv,
                                 std::optional<PenaltyParams> penalty) {
  PauliSum h = jw_transform(build_fermionic_hamiltonian(p, conv));
  if (penalty) {
    if (penalty->e_f < 0) throw std::invalid_argument("E_f must be >= 0");
    PauliSum shifted = total_number_operator(2 * p.n_sites);
    shifted += PauliSum::identity(2 * p.n_sites, -double(penalty->n_e));
    PauliSum squared = shifted * shifted;
    squared *= penalty->e_f;
    h += squared;
  }
  h.canonicalize();
  return h;
}

}  // namespace lvqe
