// SPDX-License-Identifier: Apache-2.0

#include "lvqe/fermion.hpp"

#include <algorithm>
#include <sstream>
#include <bit>
#include <map>
#include <stdexcept>

namespace lvqe {

namespace {

void check_modes(const FermionTerm& t, int n_modes) {
  for (const auto& op : t.ops)
    if (int(op.mode) >= n_modes)
      throw std::out_of_range("fermion mode index out of range");
}

// Ordering key for normal order: daggers first (ascending mode), then
// annihilators (descending mode).
bool in_order(const FermionOp& a, const FermionOp& b) {
  if (a.dagger != b.dagger) return a.dagger;
  if (a.dagger) return a.mode <= b.mode;
  return a.mode >= b.mode;
}

}  // namespace

void FermionSum::add_term(cplx coeff, std::vector<FermionOp> ops) {
  FermionTerm t{coeff, std::move(ops)};
  check_modes(t, n_modes_);
  terms_.push_back(std::move(t));
}

FermionSum& FermionSum::operator+=(const FermionSum& o) {
  if (o.n_modes_ != n_modes_)
    throw std::invalid_argument("mode count mismatch");
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

FermionSum& FermionSum::operator*=(cplx c) {
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

FermionSum FermionSum::dagger() const {
  FermionSum r(n_modes_);
  for (const auto& t : terms_) {
    std::vector<FermionOp> ops(t.ops.rbegin(), t.ops.rend());
    for (auto& op : ops) op.dagger = !op.dagger;
    r.add_term(std::conj(t.coeff), std::move(ops));
  }
  return r;
}

FermionSum FermionSum::normal_ordered(double tol) const {
  std::vector<FermionTerm> work = terms_;
  std::map<std::vector<std::pair<uint32_t, bool>>, cplx> done;

  while (!work.empty()) {
    FermionTerm t = std::move(work.back());
    work.pop_back();
    bool rewritten = false;
    for (size_t k = 0; k + 1 < t.ops.size(); ++k) {
      FermionOp a = t.ops[k], b = t.ops[k + 1];
      if (in_order(a, b)) {
        // Repeated identical operators square to zero.
        if (a.mode == b.mode && a.dagger == b.dagger) {
          rewritten = true;
          t.coeff = 0.0;
        }
        if (rewritten) break;
        continue;
      }
      rewritten = true;
      // Swap with anticommutation; c_p c†_q = δ_pq − c†_q c_p and all
      // other out-of-order pairs simply anticommute.
      FermionTerm swapped = t;
      std::swap(swapped.ops[k], swapped.ops[k + 1]);
      swapped.coeff = -t.coeff;
      if (!a.dagger && b.dagger && a.mode == b.mode) {
        FermionTerm contracted = t;
        contracted.ops.erase(contracted.ops.begin() + long(k),
                             contracted.ops.begin() + long(k) + 2);
        work.push_back(std::move(contracted));
      }
      work.push_back(std::move(swapped));
      break;
    }
    if (rewritten) continue;
    std::vector<std::pair<uint32_t, bool>> key;
    key.reserve(t.ops.size());
    for (const auto& op : t.ops) key.emplace_back(op.mode, op.dagger);
    done[key] += t.coeff;
  }

  FermionSum r(n_modes_);
  for (const auto& [key, coeff] : done) {
    if (std::abs(coeff) < tol) continue;
    std::vector<FermionOp> ops;
    ops.reserve(key.size());
    for (const auto& [mode, dag] : key) ops.push_back({mode, dag});
    r.add_term(coeff, std::move(ops));
  }
  return r;
}

std::string FermionSum::str() const {
  std::ostringstream os;
  os.precision(12);
  for (const auto& t : terms_) {
    os << '(' << t.coeff.real() << (t.coeff.imag() >= 0 ? "+" : "-")
       << std::abs(t.coeff.imag()) << "i) *";
    if (t.ops.empty()) os << " 1";
    for (const auto& op : t.ops)
      os << " c" << (op.dagger ? "†" : "") << '_' << op.mode;
    os << '\n';
  }
  return os.str();
}

PauliSum jw_transform(const FermionSum& f) {
  const int width = f.n_modes();
  PauliSum result(width);
  for (const auto& t : f.terms()) {
    check_modes(t, width);
    PauliSum acc = PauliSum::identity(width, t.coeff);
    for (const auto& op : t.ops) {
      // c_j = Z_{<j} (X_j + iY_j)/2, c†_j = Z_{<j} (X_j − iY_j)/2.
      PauliSum factor(width);
      PauliString px(width), py(width);
      for (uint32_t k = 0; k < op.mode; ++k) {
        px.set_letter(int(k), 'Z');
        py.set_letter(int(k), 'Z');
      }
      px.set_letter(int(op.mode), 'X');
      py.set_letter(int(op.mode), 'Y');
      factor.add_term(0.5, px);
      factor.add_term(op.dagger ? cplx(0, -0.5) : cplx(0, 0.5), py);
      acc = acc * factor;
    }
    result += acc;
  }
  result.canonicalize();
  return result;
}

PauliSum jw_transform(const FermionSum& f, const ModeConvention& conv) {
  if (f.n_modes() != conv.n_modes())
    throw std::invalid_argument("mode convention mismatch");
  return jw_transform(f);
}

double fock_matrix_element(const FermionTerm& term, uint64_t bra,
                           uint64_t ket) {
  uint64_t state = ket;
  double sign = 1.0;
  // Operators act right to left on the ket.
  for (auto it = term.ops.rbegin(); it != term.ops.rend(); ++it) {
    const uint64_t bit = uint64_t(1) << it->mode;
    const bool occupied = state & bit;
    if (it->dagger == occupied) return 0.0;
    const uint64_t below = state & (bit - 1);
    if (std::popcount(below) & 1) sign = -sign;
    state ^= bit;
  }
  if (state != bra) return 0.0;
  return sign;
}

}  // namespace lvqe
