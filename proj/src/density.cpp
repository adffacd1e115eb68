// SPDX-License-Identifier: Apache-2.0

#include "lvqe/density.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace lvqe {

namespace {

constexpr int kMaxDensityQubits = 10;

// ρ → (U ⊗ I) ρ: apply the gate to the row (ket) index of every column.
// Columns are contiguous in the column-major layout, so the statevector
// kernels can be reused span by span.
void left_apply(DensityMatrix& rho, const BoundGate& g) {
  const uint64_t d = rho.dim();
  auto* base = const_cast<cplx*>(rho.data().data());
#ifdef LVQE_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (rho.n_qubits() >= 8)
#endif
  for (int64_t c = 0; c < int64_t(d); ++c) {
    Statevector col(rho.n_qubits());
    auto& amps = col.amps();
    cplx* span = base + uint64_t(c) * d;
    std::copy(span, span + d, amps.begin());
    kernels::ref::apply_gate(col, g);
    std::copy(amps.begin(), amps.end(), span);
  }
}

// ρ → ρ (U† ⊗ I): column-wise AXPY with conj(U) acting on the column
// (bra) index.
void right_apply_dagger(DensityMatrix& rho, const BoundGate& g) {
  const uint64_t d = rho.dim();
  const int n = rho.n_qubits();
  auto* base = const_cast<cplx*>(rho.data().data());

  auto mix_columns = [&](uint64_t c0, uint64_t c1, const Eigen::Matrix2cd& u) {
    cplx* a = base + c0 * d;
    cplx* b = base + c1 * d;
    const cplx u00 = std::conj(u(0, 0)), u01 = std::conj(u(0, 1));
    const cplx u10 = std::conj(u(1, 0)), u11 = std::conj(u(1, 1));
    for (uint64_t r = 0; r < d; ++r) {
      const cplx x = a[r], y = b[r];
      a[r] = u00 * x + u01 * y;
      b[r] = u10 * x + u11 * y;
    }
  };

  switch (g.kind) {
    case GateKind::CZ: {
      const uint64_t mask = (uint64_t(1) << g.q0) | (uint64_t(1) << g.q1);
      for (uint64_t c = 0; c < d; ++c)
        if ((c & mask) == mask) {
          cplx* a = base + c * d;
          for (uint64_t r = 0; r < d; ++r) a[r] = -a[r];
        }
      break;
    }
    case GateKind::CX:
    case GateKind::CRy: {
      const Eigen::Matrix2cd u =
          g.kind == GateKind::CX ? gate_block_matrix(GateKind::X, 0.0)
                                 : gate_block_matrix(GateKind::Ry, g.angle);
      const uint64_t bit = uint64_t(1) << g.q1;
      const uint64_t cbit = uint64_t(1) << g.q0;
      for (uint64_t c = 0; c < d; ++c)
        if ((c & cbit) && !(c & bit)) mix_columns(c, c | bit, u);
      break;
    }
    default: {
      const Eigen::Matrix2cd u = gate_block_matrix(g.kind, g.angle);
      const uint64_t bit = uint64_t(1) << g.q0;
      for (uint64_t c = 0; c < d; ++c)
        if (!(c & bit)) mix_columns(c, c | bit, u);
      break;
    }
  }
}

}  // namespace

DensityMatrix::DensityMatrix(int n_qubits) : n_(n_qubits) {
  if (n_qubits > kMaxDensityQubits)
    throw std::invalid_argument("density matrix width capped at 10 qubits");
  m_.assign(dim() * dim(), cplx(0));
  m_[0] = 1.0;
}

DensityMatrix DensityMatrix::from_statevector(const Statevector& psi) {
  DensityMatrix rho(psi.n_qubits());
  const uint64_t d = rho.dim();
  for (uint64_t c = 0; c < d; ++c)
    for (uint64_t r = 0; r < d; ++r)
      rho.m_[c * d + r] = psi.amps()[r] * std::conj(psi.amps()[c]);
  return rho;
}

double DensityMatrix::trace_real() const {
  double t = 0;
  for (uint64_t i = 0; i < dim(); ++i) t += m_[i * dim() + i].real();
  return t;
}

double DensityMatrix::purity() const {
  // Tr(ρ²) = Σ_{rc} ρ_rc ρ_cr = Σ |ρ_rc|² for hermitian ρ.
  double p = 0;
  for (const auto& v : m_) p += std::norm(v);
  return p;
}

Eigen::MatrixXcd DensityMatrix::to_eigen() const {
  const auto d = Eigen::Index(dim());
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r)
      m(r, c) = m_[uint64_t(c) * dim() + uint64_t(r)];
  return m;
}

void apply_depolarizing(DensityMatrix& rho, int q0, int q1, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("invalid p_cx");
  if (p == 0.0) return;
  // (1-p)ρ + (p/15) Σ_{P≠II} PρP = (1-16p/15)ρ + (16p/15)(I/4 ⊗ Tr_pair ρ).
  const double lambda = 16.0 * p / 15.0;
  const uint64_t d = rho.dim();
  const uint64_t b0 = uint64_t(1) << q0, b1 = uint64_t(1) << q1;
  const uint64_t pair_mask = b0 | b1;
  auto pair_index = [&](uint64_t rest, int m) {
    return rest | ((m & 1) ? b0 : 0) | ((m & 2) ? b1 : 0);
  };
  for (uint64_t crest = 0; crest < d; ++crest) {
    if (crest & pair_mask) continue;
    for (uint64_t rrest = 0; rrest < d; ++rrest) {
      if (rrest & pair_mask) continue;
      cplx block_tr = 0.0;
      for (int m = 0; m < 4; ++m)
        block_tr += rho.at(pair_index(rrest, m), pair_index(crest, m));
      for (int mr = 0; mr < 4; ++mr)
        for (int mc = 0; mc < 4; ++mc) {
          cplx& v = rho.at(pair_index(rrest, mr), pair_index(crest, mc));
          v *= (1.0 - lambda);
          if (mr == mc) v += lambda * 0.25 * block_tr;
        }
    }
  }
}

DensityMatrix run_density(const std::vector<BoundGate>& gates,
                          const Statevector& init, const NoiseModel& noise) {
  if (noise.p_cx < 0.0 || noise.p_cx > 1.0)
    throw std::invalid_argument("invalid p_cx");
  DensityMatrix rho = DensityMatrix::from_statevector(init);
  for (const auto& g : gates) {
    left_apply(rho, g);
    right_apply_dagger(rho, g);
    if (g.kind == GateKind::CX)
      apply_depolarizing(rho, g.q0, g.q1, noise.p_cx);
  }
  return rho;
}

Statevector run_trajectory(const std::vector<BoundGate>& gates,
                           Statevector init, const NoiseModel& noise,
                           std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> pauli(1, 15);
  for (const auto& g : gates) {
    kernels::apply_gate(init, g, ExecPolicy::automatic);
    if (g.kind != GateKind::CX || coin(rng) >= noise.p_cx) continue;
    const int pp = pauli(rng);  // two-letter index, 1..15 (II excluded)
    const int p0 = pp & 3, p1 = (pp >> 2) & 3;
    PauliString err(init.n_qubits());
    const char letters[4] = {'I', 'X', 'Y', 'Z'};
    err.set_letter(g.q0, letters[p0]);
    err.set_letter(g.q1, letters[p1]);
    // Apply the Pauli directly: |x⟩ → i^{nY} (−1)^{x·z} |x ⊕ xm⟩.
    const uint64_t xm = err.x_mask(), zm = err.z_mask();
    const int ny = std::popcount(xm & zm);
    const cplx iy = (ny & 1) ? cplx(0, (ny & 2) ? -1 : 1)
                             : cplx((ny & 2) ? -1 : 1, 0);
    std::vector<cplx> out(init.dim());
    for (uint64_t x = 0; x < init.dim(); ++x) {
      const double sign = (std::popcount(x & zm) & 1) ? -1.0 : 1.0;
      out[x ^ xm] = iy * sign * init.amps()[x];
    }
    init.amps() = std::move(out);
  }
  return init;
}

double expectation(const PauliSum& obs, const DensityMatrix& rho) {
  if (obs.width() != rho.n_qubits())
    throw std::invalid_argument("observable width mismatch");
  // Tr(ρP) = Σ_x ρ(x, x ⊕ xm)·phase(x), with phase(x) from P|x⟩.
  cplx acc = 0.0;
  for (const auto& t : obs.terms()) {
    const uint64_t xm = t.op.x_mask(), zm = t.op.z_mask();
    const int ny = std::popcount(xm & zm);
    const cplx iy = (ny & 1) ? cplx(0, (ny & 2) ? -1 : 1)
                             : cplx((ny & 2) ? -1 : 1, 0);
    cplx term = 0.0;
    for (uint64_t x = 0; x < rho.dim(); ++x) {
      const double sign = (std::popcount(x & zm) & 1) ? -1.0 : 1.0;
      term += sign * rho.at(x, x ^ xm);
    }
    acc += t.coeff * iy * term;
  }
  if (std::abs(acc.imag()) > 1e-8)
    throw std::runtime_error("expectation has a large imaginary residual");
  return acc.real();
}

double fidelity(const DensityMatrix& rho, const Statevector& pure) {
  if (rho.n_qubits() != pure.n_qubits())
    throw std::invalid_argument("state width mismatch");
  const uint64_t d = rho.dim();
  cplx f = 0.0;
  for (uint64_t c = 0; c < d; ++c)
    for (uint64_t r = 0; r < d; ++r)
      f += std::conj(pure.amps()[r]) * rho.at(r, c) * pure.amps()[c];
  return f.real();
}

}  // namespace lvqe
