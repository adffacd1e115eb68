// SPDX-License-Identifier: Apache-2.0
//
// Ansatz construction: transition enumeration, single/double excitation
// circuits in staircase (Trotterized Pauli rotations) and compact
// controlled-rotation form, the ladder-free simplified variants, the six
// cluster-style ansatz families plus the generic hardware-efficient one,
// and the initial-state preparation circuits.

#pragma once

#include <string>
#include <vector>

#include "lvqe/circuit.hpp"
#include "lvqe/fermion.hpp"

namespace lvqe {

/// single(i,j): generator A = c†_j c_i (i < j).
/// double(i,j,k,l): generator A = c†_k c†_l c_j c_i with i<j, k<l,
/// (i,j) < (k,l) lexicographically and all four indices distinct.
struct Transition {
  bool is_double = false;
  int i = 0, j = 0, k = 0, l = 0;

  /// θ(A − A†) as a fermionic sum at θ = 1.
  FermionSum generator(int n_modes) const;
  std::string str() const;
};

/// All singles (pairs i<j, lexicographic), then — when requested — all
/// doubles (unordered pairs of disjoint pairs) in lexicographic (i,j,k,l)
/// order.
std::vector<Transition> generate_transitions(int n_modes,
                                             bool include_doubles);

enum class ExcitationStyle { staircase, yab };
enum class LadderMode { exact_ladder, no_ladder };

/// One-parameter circuit fragment for exp(θ(A − A†)).
/// exact_ladder reproduces the fermionic matrix exponential exactly;
/// no_ladder drops the JW parity machinery (amplitude magnitudes are
/// preserved, per-basis-state phases may differ) and never uses more CX
/// gates, with equality only when there is no parity string to remove.
Circuit excitation_circuit(int n_qubits, const Transition& t,
                           ExcitationStyle style, LadderMode ladder);

enum class AnsatzFamily {
  Generic,
  ClusterSD,
  YAB_SD,
  YAB_S,
  SimplifiedYAB_SD,
  SimplifiedYAB_S,
  SimplifiedYAB_3S,
};

const char* to_string(AnsatzFamily f);
AnsatzFamily ansatz_family_from_string(const std::string& name);

struct AnsatzSpec {
  AnsatzFamily family = AnsatzFamily::ClusterSD;
  int n_sites = 2;
  int reps = 3;  ///< layer count for Generic / pass count for 3S
};

/// Build the ansatz circuit; N_p = circuit.n_params(), N_CX =
/// circuit.count_cx().
Circuit build_ansatz(const AnsatzSpec& spec);

enum class InitialStateKind { FM, AFM, DoubleAFM, Explicit };

const char* to_string(InitialStateKind k);
InitialStateKind initial_state_from_string(const std::string& name);

struct InitialState {
  InitialStateKind kind = InitialStateKind::AFM;
  std::vector<int> occupied;  ///< modes for Explicit
};

/// Parameter-free preparation circuit on 2·n_sites qubits.
Circuit prepare_initial(const InitialState& init, int n_sites,
                        int n_electrons);

/// Occupied-mode set of the FM / AFM classical fillings (helper shared
/// with DoubleAFM and the harness).
std::vector<int> classical_occupation(InitialStateKind kind, int n_sites,
                                      int n_electrons);

}  // namespace lvqe
