// SPDX-License-Identifier: Apache-2.0

#include "lvqe/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace lvqe {

namespace {

// Qubit-wise compatibility: at every qubit the letters agree or one is I.
bool qwc(const PauliString& a, const PauliString& b) {
  for (int q = 0; q < a.width(); ++q) {
    const char la = a.letter(q), lb = b.letter(q);
    if (la != 'I' && lb != 'I' && la != lb) return false;
  }
  return true;
}

}  // namespace

std::vector<std::vector<PauliTerm>> group_commuting(const PauliSum& obs) {
  std::vector<std::vector<PauliTerm>> groups;
  for (const auto& t : obs.terms()) {
    if (t.op.is_identity()) continue;
    bool placed = false;
    for (auto& g : groups) {
      if (std::all_of(g.begin(), g.end(), [&](const PauliTerm& m) {
            return qwc(m.op, t.op);
          })) {
        g.push_back(t);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({t});
  }
  return groups;
}

ShotEstimate estimate_energy(const PauliSum& obs,
                             const std::vector<BoundGate>& gates, long shots,
                             uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (!obs.is_hermitian())
    throw std::invalid_argument("observable must be hermitian");

  double mean = 0.0;
  for (const auto& t : obs.terms())
    if (t.op.is_identity()) mean += t.coeff.real();

  const auto groups = group_commuting(obs);
  if (groups.empty()) return {mean, 0.0};

  const int width = obs.width();
  const Statevector final_state =
      run_statevector(gates, Statevector(width));
  const long shots_per_group =
      std::max<long>(1, shots / long(groups.size()));

  std::mt19937_64 rng(seed);
  double variance_of_mean = 0.0;

  for (const auto& group : groups) {
    // Rotate every measured qubit into the Z basis: X → H, Y → S† then H.
    std::vector<BoundGate> rot;
    for (int q = 0; q < width; ++q) {
      char basis = 'I';
      for (const auto& t : group) {
        const char l = t.op.letter(q);
        if (l != 'I') basis = l;
      }
      if (basis == 'X') {
        rot.push_back({GateKind::H, q, -1, 0.0});
      } else if (basis == 'Y') {
        rot.push_back({GateKind::Rz, q, -1, -M_PI / 2});
        rot.push_back({GateKind::H, q, -1, 0.0});
      }
    }
    const Statevector rotated =
        run_statevector(rot, final_state, ExecPolicy::serial);

    // Cumulative distribution over basis outcomes.
    std::vector<double> cdf(rotated.dim());
    double acc = 0.0;
    for (uint64_t i = 0; i < rotated.dim(); ++i) {
      acc += std::norm(rotated.amps()[i]);
      cdf[i] = acc;
    }

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double sum = 0.0, sum_sq = 0.0;
    for (long s = 0; s < shots_per_group; ++s) {
      const double u = unit(rng) * acc;
      const uint64_t outcome = uint64_t(
          std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      double value = 0.0;
      for (const auto& t : group) {
        const uint64_t support = t.op.x_mask() | t.op.z_mask();
        const double sign =
            (std::popcount(outcome & support) & 1) ? -1.0 : 1.0;
        value += t.coeff.real() * sign;
      }
      sum += value;
      sum_sq += value * value;
    }
    const double g_mean = sum / double(shots_per_group);
    mean += g_mean;
    if (shots_per_group > 1) {
      const double var =
          (sum_sq - sum * sum / double(shots_per_group)) /
          double(shots_per_group - 1);
      variance_of_mean += std::max(0.0, var) / double(shots_per_group);
    }
  }
  return {mean, std::sqrt(variance_of_mean)};
}

}  // namespace lvqe
