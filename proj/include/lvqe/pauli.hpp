// SPDX-License-Identifier: Apache-2.0
//
// Pauli-string algebra: tensor products of {I, X, Y, Z} with complex-weighted
// sums, dense-matrix rendering for small widths, and textual output.
//
// Convention (binding for the whole library): qubit 0 is the least
// significant bit of a computational-basis index.

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace lvqe {

using cplx = std::complex<double>;

/// A single Pauli string P_0 ⊗ P_1 ⊗ ... ⊗ P_{w-1} without a coefficient.
/// Internally stored as X/Z bit masks: letter(q) is determined by
/// (x bit, z bit) = I:(0,0)  X:(1,0)  Y:(1,1)  Z:(0,1).
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int width) : width_(width) {}

  /// Parse from letters ordered qubit 0 first, e.g. "XXI" = X0 X1 I2.
  static PauliString from_letters(const std::string& letters);

  int width() const { return width_; }
  uint64_t x_mask() const { return x_; }
  uint64_t z_mask() const { return z_; }

  char letter(int q) const;
  void set_letter(int q, char letter);

  bool is_identity() const { return x_ == 0 && z_ == 0; }
  int weight() const;  ///< number of non-identity letters

  bool operator==(const PauliString& o) const {
    return width_ == o.width_ && x_ == o.x_ && z_ == o.z_;
  }
  bool operator<(const PauliString& o) const {
    return std::pair(z_, x_) < std::pair(o.z_, o.x_);
  }

  /// Letters ordered qubit 0 first, e.g. "XXI".
  std::string str() const;

  /// Dense 2^width × 2^width matrix (width ≤ 12).
  Eigen::MatrixXcd to_matrix() const;

 private:
  int width_ = 0;
  uint64_t x_ = 0;
  uint64_t z_ = 0;
};

/// Product of two equal-width strings: a·b = phase · result with
/// phase ∈ {±1, ±i}.
std::pair<cplx, PauliString> pauli_mul(const PauliString& a,
                                       const PauliString& b);

struct PauliTerm {
  cplx coeff;
  PauliString op;
};

/// Weighted sum of Pauli strings. canonicalize() sorts terms, merges
/// duplicates and drops coefficients below the tolerance; most operations
/// leave the sum canonical.
class PauliSum {
 public:
  static constexpr double kDropTol = 1e-12;

  PauliSum() = default;
  explicit PauliSum(int width) : width_(width) {}

  /// c · identity on `width` qubits.
  static PauliSum identity(int width, cplx c = 1.0);

  int width() const { return width_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add_term(cplx coeff, PauliString op);

  PauliSum& operator+=(const PauliSum& o);
  PauliSum& operator-=(const PauliSum& o);
  PauliSum& operator*=(cplx c);
  PauliSum operator*(const PauliSum& o) const;  ///< operator product

  /// Sort, merge duplicate strings and drop |coeff| < tol terms.
  void canonicalize(double tol = kDropTol);

  /// A canonical Pauli sum is hermitian iff every coefficient is real.
  bool is_hermitian(double tol = 1e-10) const;

  /// Dense 2^width × 2^width matrix (width ≤ 12).
  Eigen::MatrixXcd to_matrix() const;

  /// One term per line as `coeff * letters`, e.g. `0.5 * XXI`.
  std::string str() const;

 private:
  int width_ = 0;
  std::vector<PauliTerm> terms_;
};

}  // namespace lvqe
