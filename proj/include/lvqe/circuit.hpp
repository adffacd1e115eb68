// SPDX-License-Identifier: Apache-2.0
//
// Parametrized quantum-circuit representation.  Gates either carry a fixed
// angle or reference a parameter slot; bind() resolves a parameter vector
// into a flat list of executable gates.

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lvqe/pauli.hpp"

namespace lvqe {

enum class GateKind { H, X, Rx, Ry, Rz, CX, CZ, CRy };

const char* to_string(GateKind k);
bool is_rotation(GateKind k);
bool is_two_qubit(GateKind k);

/// For rotation kinds the resolved angle is scale·θ[slot] + offset when
/// slot ≥ 0, otherwise just offset (a fixed-angle gate).
struct Gate {
  GateKind kind;
  int q0 = 0;
  int q1 = -1;  ///< target for CX/CZ/CRy (q0 is the control)
  int slot = -1;
  double scale = 1.0;
  double offset = 0.0;
};

/// A gate with its angle resolved, ready for a backend.
struct BoundGate {
  GateKind kind;
  int q0 = 0;
  int q1 = -1;
  double angle = 0.0;
};

/// 2×2 matrix of a single-qubit kind (for CRy: the controlled block).
Eigen::Matrix2cd gate_block_matrix(GateKind kind, double angle);

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int width) : width_(width) {}

  int width() const { return width_; }
  int n_params() const { return n_params_; }
  const std::vector<Gate>& gates() const { return gates_; }

  /// Allocate a fresh parameter slot and return its index.
  int new_param() { return n_params_++; }

  void add(Gate g);  ///< validates qubit indices and slot reference

  // Convenience builders.
  void h(int q) { add({GateKind::H, q}); }
  void x(int q) { add({GateKind::X, q}); }
  void cx(int control, int target) { add({GateKind::CX, control, target}); }
  void cz(int control, int target) { add({GateKind::CZ, control, target}); }
  void rx(int q, int slot, double scale = 1.0, double offset = 0.0) {
    add({GateKind::Rx, q, -1, slot, scale, offset});
  }
  void ry(int q, int slot, double scale = 1.0, double offset = 0.0) {
    add({GateKind::Ry, q, -1, slot, scale, offset});
  }
  void rz(int q, int slot, double scale = 1.0, double offset = 0.0) {
    add({GateKind::Rz, q, -1, slot, scale, offset});
  }
  void rx_fixed(int q, double angle) { rx(q, -1, 0.0, angle); }
  void ry_fixed(int q, double angle) { ry(q, -1, 0.0, angle); }
  void rz_fixed(int q, double angle) { rz(q, -1, 0.0, angle); }

  /// Append another circuit of equal width; its parameter slots are
  /// shifted to follow this circuit's slots.
  void append(const Circuit& o);

  int count_cx() const;

  /// Resolve parameters into executable gates.  θ size must equal
  /// n_params().
  std::vector<BoundGate> bind(const std::vector<double>& theta) const;

  /// Line-per-gate debug dump: `KIND q0 [q1] [slot=k scale=v] [offset=v]`.
  std::string dump() const;

 private:
  int width_ = 0;
  int n_params_ = 0;
  std::vector<Gate> gates_;
};

}  // namespace lvqe
