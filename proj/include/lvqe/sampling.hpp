// SPDX-License-Identifier: Apache-2.0
//
// Shot-based energy estimation: observable terms are partitioned into
// qubit-wise commuting groups, each group is measured in one basis-rotated
// sampling pass, and shots are split evenly across groups.

#pragma once

#include <cstdint>
#include <vector>

#include "lvqe/circuit.hpp"
#include "lvqe/pauli.hpp"
#include "lvqe/statevector.hpp"

namespace lvqe {

struct ShotEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

/// Greedy qubit-wise-commuting grouping; identity terms are excluded
/// (they are added exactly, with zero variance).  Exposed for tests.
std::vector<std::vector<PauliTerm>> group_commuting(const PauliSum& obs);

/// Estimate ⟨obs⟩ on the state produced by running `gates` from |0...0⟩.
/// Deterministic for a fixed seed.
ShotEstimate estimate_energy(const PauliSum& obs,
                             const std::vector<BoundGate>& gates, long shots,
                             uint64_t seed);

}  // namespace lvqe
