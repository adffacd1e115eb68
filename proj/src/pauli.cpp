// SPDX-License-Identifier: Apache-2.0

#include "lvqe/pauli.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace lvqe {

namespace {

constexpr int kMaxDenseWidth = 12;
constexpr int kMaxWidth = 32;

int letter_index(char c) {
  switch (c) {
    case 'I': return 0;
    case 'X': return 1;
    case 'Y': return 2;
    case 'Z': return 3;
    default: throw std::invalid_argument("unknown Pauli letter");
  }
}

constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};

// Single-letter products: mul_letter[a][b] = result letter index,
// mul_phase[a][b] = exponent k of the i^k phase (I=0,X=1,Y=2,Z=3).
constexpr int kMulLetter[4][4] = {
    {0, 1, 2, 3},
    {1, 0, 3, 2},
    {2, 3, 0, 1},
    {3, 2, 1, 0},
};
constexpr int kMulPhase[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 1, 3},   // X·Y = iZ, X·Z = -iY
    {0, 3, 0, 1},   // Y·X = -iZ, Y·Z = iX
    {0, 1, 3, 0},   // Z·X = iY, Z·Y = -iX
};

cplx phase_from_exponent(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

const Eigen::Matrix2cd& letter_matrix(int idx) {
  static const Eigen::Matrix2cd mats[4] = {
      (Eigen::Matrix2cd() << 1, 0, 0, 1).finished(),
      (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
      (Eigen::Matrix2cd() << 0, cplx(0, -1), cplx(0, 1), 0).finished(),
      (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(),
  };
  return mats[idx];
}

}  // namespace

PauliString PauliString::from_letters(const std::string& letters) {
  PauliString p(int(letters.size()));
  for (size_t q = 0; q < letters.size(); ++q) p.set_letter(int(q), letters[q]);
  return p;
}

char PauliString::letter(int q) const {
  if (q < 0 || q >= width_) throw std::out_of_range("qubit index");
  const bool x = (x_ >> q) & 1, z = (z_ >> q) & 1;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

void PauliString::set_letter(int q, char letter) {
  if (q < 0 || q >= width_ || width_ > kMaxWidth)
    throw std::out_of_range("qubit index");
  const uint64_t bit = uint64_t(1) << q;
  x_ &= ~bit;
  z_ &= ~bit;
  switch (letter_index(letter)) {
    case 1: x_ |= bit; break;
    case 2: x_ |= bit; z_ |= bit; break;
    case 3: z_ |= bit; break;
    default: break;
  }
}

int PauliString::weight() const { return std::popcount(x_ | z_); }

std::string PauliString::str() const {
  std::string s(size_t(width_), 'I');
  for (int q = 0; q < width_; ++q) s[size_t(q)] = letter(q);
  return s;
}

Eigen::MatrixXcd PauliString::to_matrix() const {
  if (width_ > kMaxDenseWidth)
    throw std::invalid_argument("width too large for dense matrix");
  const uint64_t d = uint64_t(1) << width_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Ones(1, 1);
  // Qubit 0 is the LSB: m = P_{w-1} ⊗ ... ⊗ P_0.
  for (int q = 0; q < width_; ++q) {
    const int x = int((x_ >> q) & 1), z = int((z_ >> q) & 1);
    const int idx = x ? (z ? 2 : 1) : (z ? 3 : 0);
    m = Eigen::kroneckerProduct(letter_matrix(idx), m).eval();
  }
  if (uint64_t(m.rows()) != d) throw std::logic_error("kron size");
  return m;
}

std::pair<cplx, PauliString> pauli_mul(const PauliString& a,
                                       const PauliString& b) {
  if (a.width() != b.width())
    throw std::invalid_argument("pauli_mul width mismatch");
  PauliString r(a.width());
  int phase_exp = 0;
  for (int q = 0; q < a.width(); ++q) {
    const int ia = letter_index(a.letter(q));
    const int ib = letter_index(b.letter(q));
    phase_exp += kMulPhase[ia][ib];
    r.set_letter(q, kLetters[kMulLetter[ia][ib]]);
  }
  return {phase_from_exponent(phase_exp), r};
}

PauliSum PauliSum::identity(int width, cplx c) {
  PauliSum s(width);
  s.add_term(c, PauliString(width));
  return s;
}

void PauliSum::add_term(cplx coeff, PauliString op) {
  if (op.width() != width_)
    throw std::invalid_argument("term width mismatch");
  terms_.push_back({coeff, std::move(op)});
}

PauliSum& PauliSum::operator+=(const PauliSum& o) {
  if (o.width() != width_) throw std::invalid_argument("width mismatch");
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  canonicalize();
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& o) {
  PauliSum neg = o;
  neg *= -1.0;
  return (*this += neg);
}

PauliSum& PauliSum::operator*=(cplx c) {
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

PauliSum PauliSum::operator*(const PauliSum& o) const {
  if (o.width() != width_) throw std::invalid_argument("width mismatch");
  PauliSum r(width_);
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      auto [phase, p] = pauli_mul(a.op, b.op);
      r.add_term(a.coeff * b.coeff * phase, std::move(p));
    }
  r.canonicalize();
  return r;
}

void PauliSum::canonicalize(double tol) {
  std::sort(terms_.begin(), terms_.end(),
            [](const PauliTerm& a, const PauliTerm& b) { return a.op < b.op; });
  std::vector<PauliTerm> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().op == t.op)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged,
                [tol](const PauliTerm& t) { return std::abs(t.coeff) < tol; });
  terms_ = std::move(merged);
}

bool PauliSum::is_hermitian(double tol) const {
  PauliSum c = *this;
  c.canonicalize();
  for (const auto& t : c.terms_)
    if (std::abs(t.coeff.imag()) > tol) return false;
  return true;
}

Eigen::MatrixXcd PauliSum::to_matrix() const {
  if (width_ > kMaxDenseWidth)
    throw std::invalid_argument("width too large for dense matrix");
  const auto d = Eigen::Index(uint64_t(1) << width_);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& t : terms_) m += t.coeff * t.op.to_matrix();
  return m;
}

std::string PauliSum::str() const {
  std::ostringstream os;
  os.precision(12);
  for (const auto& t : terms_) {
    if (std::abs(t.coeff.imag()) < 1e-14)
      os << t.coeff.real();
    else
      os << '(' << t.coeff.real() << (t.coeff.imag() < 0 ? '-' : '+')
         << std::abs(t.coeff.imag()) << "i)";
    os << " * " << t.op.str() << '\n';
  }
  return os.str();
}

}  // namespace lvqe
