// SPDX-License-Identifier: Apache-2.0

#include "lvqe/circuit.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lvqe {

const char* to_string(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Rx: return "RX";
    case GateKind::Ry: return "RY";
    case GateKind::Rz: return "RZ";
    case GateKind::CX: return "CX";
    case GateKind::CZ: return "CZ";
    case GateKind::CRy: return "CRY";
  }
  return "?";
}

bool is_rotation(GateKind k) {
  return k == GateKind::Rx || k == GateKind::Ry || k == GateKind::Rz ||
         k == GateKind::CRy;
}

bool is_two_qubit(GateKind k) {
  return k == GateKind::CX || k == GateKind::CZ || k == GateKind::CRy;
}

Eigen::Matrix2cd gate_block_matrix(GateKind kind, double angle) {
  Eigen::Matrix2cd m;
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  switch (kind) {
    case GateKind::H:
      m << 1, 1, 1, -1;
      m /= std::sqrt(2.0);
      break;
    case GateKind::X:
      m << 0, 1, 1, 0;
      break;
    case GateKind::Rx:
      m << c, cplx(0, -s), cplx(0, -s), c;
      break;
    case GateKind::Ry:
    case GateKind::CRy:
      m << c, -s, s, c;
      break;
    case GateKind::Rz:
      m << std::exp(cplx(0, -angle / 2)), 0, 0, std::exp(cplx(0, angle / 2));
      break;
    default:
      throw std::invalid_argument("no 2x2 block for this gate kind");
  }
  return m;
}

void Circuit::add(Gate g) {
  if (g.q0 < 0 || g.q0 >= width_)
    throw std::out_of_range("gate qubit out of range");
  if (is_two_qubit(g.kind)) {
    if (g.q1 < 0 || g.q1 >= width_ || g.q1 == g.q0)
      throw std::out_of_range("gate target out of range or not distinct");
  } else if (g.q1 != -1) {
    throw std::invalid_argument("single-qubit gate with a second index");
  }
  if (is_rotation(g.kind)) {
    if (g.slot >= n_params_)
      throw std::out_of_range("parameter slot not allocated");
  } else if (g.slot != -1) {
    throw std::invalid_argument("non-rotation gate with a parameter slot");
  }
  gates_.push_back(g);
}

void Circuit::append(const Circuit& o) {
  if (o.width_ != width_) throw std::invalid_argument("width mismatch");
  const int base = n_params_;
  n_params_ += o.n_params_;
  for (Gate g : o.gates_) {
    if (g.slot >= 0) g.slot += base;
    gates_.push_back(g);
  }
}

int Circuit::count_cx() const {
  int n = 0;
  for (const auto& g : gates_) n += (g.kind == GateKind::CX);
  return n;
}

std::vector<BoundGate> Circuit::bind(const std::vector<double>& theta) const {
  if (int(theta.size()) != n_params_)
    throw std::invalid_argument("parameter vector length mismatch");
  std::vector<BoundGate> out;
  out.reserve(gates_.size());
  for (const auto& g : gates_) {
    double angle = g.offset;
    if (g.slot >= 0) angle += g.scale * theta[size_t(g.slot)];
    out.push_back({g.kind, g.q0, g.q1, angle});
  }
  return out;
}

std::string Circuit::dump() const {
  std::ostringstream os;
  os.precision(12);
  for (const auto& g : gates_) {
    os << to_string(g.kind) << ' ' << g.q0;
    if (g.q1 >= 0) os << ' ' << g.q1;
    if (g.slot >= 0) os << " slot=" << g.slot << " scale=" << g.scale;
    if (g.offset != 0.0 || (is_rotation(g.kind) && g.slot < 0))
      os << " offset=" << g.offset;
    os << '\n';
  }
  return os.str();
}

}  // namespace lvqe
