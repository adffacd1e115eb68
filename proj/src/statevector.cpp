// SPDX-License-Identifier: Apache-2.0

#include "lvqe/statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace lvqe {

namespace {

constexpr int kParallelThresholdQubits = 12;

// Index with bit q cleared, enumerated by pair rank k ∈ [0, dim/2).
inline uint64_t pair_base(uint64_t k, uint64_t low_mask) {
  return ((k & ~low_mask) << 1) | (k & low_mask);
}

}  // namespace

Statevector::Statevector(int n_qubits) : n_(n_qubits) {
  a_.assign(dim(), cplx(0));
  a_[0] = 1.0;
}

Statevector Statevector::basis(int n_qubits, uint64_t index) {
  Statevector s(n_qubits);
  if (index >= s.dim()) throw std::out_of_range("basis index");
  s.a_[0] = 0.0;
  s.a_[index] = 1.0;
  return s;
}

double Statevector::norm() const {
  double n2 = 0;
  for (const auto& a : a_) n2 += std::norm(a);
  return std::sqrt(n2);
}

Eigen::VectorXcd Statevector::to_eigen() const {
  Eigen::VectorXcd v{Eigen::Index(dim())};
  for (uint64_t i = 0; i < dim(); ++i) v[Eigen::Index(i)] = a_[i];
  return v;
}

namespace kernels {

namespace detail {

template <bool Parallel>
void apply_single(std::vector<cplx>& a, int n, int q,
                  const Eigen::Matrix2cd& u) {
  const uint64_t half = uint64_t(1) << (n - 1);
  const uint64_t bit = uint64_t(1) << q;
  const uint64_t low = bit - 1;
  const cplx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
#pragma omp parallel for schedule(static) if (Parallel)
  for (int64_t k = 0; k < int64_t(half); ++k) {
    const uint64_t i0 = pair_base(uint64_t(k), low);
    const uint64_t i1 = i0 | bit;
    const cplx x = a[i0], y = a[i1];
    a[i0] = u00 * x + u01 * y;
    a[i1] = u10 * x + u11 * y;
  }
}

template <bool Parallel>
void apply_controlled(std::vector<cplx>& a, int n, int control, int target,
                      const Eigen::Matrix2cd& u) {
  const uint64_t half = uint64_t(1) << (n - 1);
  const uint64_t bit = uint64_t(1) << target;
  const uint64_t low = bit - 1;
  const uint64_t cbit = uint64_t(1) << control;
  const cplx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
#pragma omp parallel for schedule(static) if (Parallel)
  for (int64_t k = 0; k < int64_t(half); ++k) {
    const uint64_t i0 = pair_base(uint64_t(k), low);
    if (!(i0 & cbit)) continue;
    const uint64_t i1 = i0 | bit;
    const cplx x = a[i0], y = a[i1];
    a[i0] = u00 * x + u01 * y;
    a[i1] = u10 * x + u11 * y;
  }
}

template <bool Parallel>
void apply_cz(std::vector<cplx>& a, uint64_t dim, uint64_t mask) {
#pragma omp parallel for schedule(static) if (Parallel)
  for (int64_t i = 0; i < int64_t(dim); ++i)
    if ((uint64_t(i) & mask) == mask) a[uint64_t(i)] = -a[uint64_t(i)];
}

template <bool Parallel>
void apply_gate_impl(Statevector& s, const BoundGate& g) {
  auto& a = s.amps();
  switch (g.kind) {
    case GateKind::CX:
      apply_controlled<Parallel>(a, s.n_qubits(), g.q0, g.q1,
                                 gate_block_matrix(GateKind::X, 0.0));
      break;
    case GateKind::CZ:
      apply_cz<Parallel>(a, s.dim(),
                         (uint64_t(1) << g.q0) | (uint64_t(1) << g.q1));
      break;
    case GateKind::CRy:
      apply_controlled<Parallel>(a, s.n_qubits(), g.q0, g.q1,
                                 gate_block_matrix(GateKind::Ry, g.angle));
      break;
    default:
      apply_single<Parallel>(a, s.n_qubits(), g.q0,
                             gate_block_matrix(g.kind, g.angle));
      break;
  }
}

}  // namespace detail

namespace ref {
void apply_gate(Statevector& s, const BoundGate& g) {
  detail::apply_gate_impl<false>(s, g);
}
}  // namespace ref

namespace par {
void apply_gate(Statevector& s, const BoundGate& g) {
#ifdef LVQE_HAVE_OPENMP
  detail::apply_gate_impl<true>(s, g);
#else
  detail::apply_gate_impl<false>(s, g);
#endif
}
}  // namespace par

void apply_gate(Statevector& s, const BoundGate& g, ExecPolicy policy) {
  const bool parallel =
      policy == ExecPolicy::parallel ||
      (policy == ExecPolicy::automatic &&
       s.n_qubits() >= kParallelThresholdQubits);
  if (parallel)
    par::apply_gate(s, g);
  else
    ref::apply_gate(s, g);
}

}  // namespace kernels

Statevector run_statevector(const std::vector<BoundGate>& gates,
                            Statevector init, ExecPolicy policy) {
  for (const auto& g : gates) kernels::apply_gate(init, g, policy);
  return init;
}

double expectation(const PauliSum& obs, const Statevector& s) {
  if (obs.width() != s.n_qubits())
    throw std::invalid_argument("observable width mismatch");
  const auto& a = s.amps();
  cplx acc = 0.0;
  for (const auto& t : obs.terms()) {
    const uint64_t xm = t.op.x_mask(), zm = t.op.z_mask();
    const int ny = std::popcount(xm & zm);
    const cplx iy = (ny & 1) ? cplx(0, (ny & 2) ? -1 : 1)
                             : cplx((ny & 2) ? -1 : 1, 0);
    cplx term = 0.0;
    for (uint64_t x = 0; x < s.dim(); ++x) {
      if (a[x] == cplx(0)) continue;
      const double sign = (std::popcount(x & zm) & 1) ? -1.0 : 1.0;
      term += std::conj(a[x ^ xm]) * (sign * a[x]);
    }
    acc += t.coeff * iy * term;
  }
  if (std::abs(acc.imag()) > 1e-8)
    throw std::runtime_error("expectation has a large imaginary residual");
  return acc.real();
}

cplx overlap(const Statevector& a, const Statevector& b) {
  if (a.n_qubits() != b.n_qubits())
    throw std::invalid_argument("state width mismatch");
  cplx s = 0.0;
  for (uint64_t i = 0; i < a.dim(); ++i)
    s += std::conj(a.amps()[i]) * b.amps()[i];
  return s;
}

double fidelity(const Statevector& a, const Statevector& b) {
  return std::norm(overlap(a, b));
}

}  // namespace lvqe
