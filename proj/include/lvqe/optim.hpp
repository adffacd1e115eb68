// SPDX-License-Identifier: Apache-2.0
//
// Classical minimizers for the variational loop: two derivative-free
// methods (linear-approximation trust region in the COBYLA mold, Powell's
// direction-set search) and two finite-difference quasi-Newton methods
// (BFGS, and an SQP-style method that reduces to damped quasi-Newton line
// search in this unconstrained setting).

#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace lvqe {

enum class OptMethod { cobyla_style, powell, bfgs, slsqp_style };

const char* to_string(OptMethod m);
OptMethod opt_method_from_string(const std::string& name);

/// Counts every evaluation — the operational definition of the reported
/// iteration number N_it.
class Objective {
 public:
  using Fn = std::function<double(const std::vector<double>&)>;
  Objective(int dim, Fn fn) : dim_(dim), fn_(std::move(fn)) {}

  int dim() const { return dim_; }
  long evaluations() const { return count_; }
  double operator()(const std::vector<double>& x) const;

 private:
  int dim_;
  Fn fn_;
  mutable long count_ = 0;
};

struct Budget {
  long max_evals = 100000;
  double ftol = 1e-9;
  double xtol = 1e-9;
  double fd_step = 1e-6;  ///< finite-difference step for gradient methods
};

struct OptResult {
  std::vector<double> theta;
  double f = 0.0;
  long n_evals = 0;
  std::vector<std::pair<long, double>> trace;  ///< (evaluations, best f)
  std::string termination;
};

/// Central differences, 2·dim evaluations.
std::vector<double> finite_diff_gradient(const Objective& obj,
                                         const std::vector<double>& x,
                                         double h);

OptResult minimize(OptMethod method, const Objective& obj,
                   std::vector<double> theta0, const Budget& budget);

}  // namespace lvqe
