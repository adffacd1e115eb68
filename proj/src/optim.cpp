// SPDX-License-Identifier: Apache-2.0
//
// Minimizer implementations.  All four methods run through a shared
// budget-aware evaluation tracker so that N_it (total objective
// evaluations), the monotone best-so-far trace and the termination reason
// are handled uniformly.

#include "lvqe/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace lvqe {

const char* to_string(OptMethod m) {
  switch (m) {
    case OptMethod::cobyla_style: return "cobyla_style";
    case OptMethod::powell: return "powell";
    case OptMethod::bfgs: return "bfgs";
    case OptMethod::slsqp_style: return "slsqp_style";
  }
  return "?";
}

OptMethod opt_method_from_string(const std::string& name) {
  for (OptMethod m : {OptMethod::cobyla_style, OptMethod::powell,
                      OptMethod::bfgs, OptMethod::slsqp_style})
    if (name == to_string(m)) return m;
  throw std::invalid_argument("unknown optimizer: " + name);
}

double Objective::operator()(const std::vector<double>& x) const {
  if (int(x.size()) != dim_)
    throw std::invalid_argument("objective dimension mismatch");
  ++count_;
  return fn_(x);
}

std::vector<double> finite_diff_gradient(const Objective& obj,
                                         const std::vector<double>& x,
                                         double h) {
  if (h <= 0) throw std::invalid_argument("finite-difference step must be > 0");
  std::vector<double> g(x.size()), probe = x;
  for (size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double fp = obj(probe);
    probe[i] = x[i] - h;
    const double fm = obj(probe);
    probe[i] = x[i];
    if (!std::isfinite(fp) || !std::isfinite(fm))
      throw std::runtime_error("non-finite objective in gradient");
    g[i] = (fp - fm) / (2 * h);
  }
  return g;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> to_std(const VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

/// Budget-aware evaluator keeping the best point and the monotone trace.
class Tracker {
 public:
  Tracker(const Objective& obj, const Budget& budget)
      : obj_(obj), budget_(budget) {}

  bool exhausted() const { return obj_.evaluations() >= budget_.max_evals; }

  double eval(const VectorXd& x) {
    if (exhausted()) return kInf;  // callers check exhausted() to stop
    const double f = obj_(to_std(x));
    if (!std::isfinite(f))
      throw std::runtime_error("objective returned a non-finite value");
    if (f < best_f_) {
      best_f_ = f;
      best_x_ = x;
      trace_.emplace_back(obj_.evaluations(), f);
    }
    return f;
  }

  /// Central-difference gradient; false when the budget ran out mid-way.
  bool gradient(const VectorXd& x, double h, VectorXd& g) {
    g.resize(x.size());
    VectorXd probe = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (obj_.evaluations() + 2 > budget_.max_evals) return false;
      probe[i] = x[i] + h;
      const double fp = eval(probe);
      probe[i] = x[i] - h;
      const double fm = eval(probe);
      probe[i] = x[i];
      g[i] = (fp - fm) / (2 * h);
    }
    return true;
  }

  OptResult result(std::string reason) const {
    OptResult r;
    r.theta = to_std(best_x_);
    r.f = best_f_;
    r.n_evals = obj_.evaluations();
    r.trace = trace_;
    r.termination = std::move(reason);
    return r;
  }

  double best_f() const { return best_f_; }
  const VectorXd& best_x() const { return best_x_; }

 private:
  const Objective& obj_;
  const Budget& budget_;
  VectorXd best_x_;
  double best_f_ = kInf;
  std::vector<std::pair<long, double>> trace_;
};

// ---------------------------------------------------------------------------
// Quasi-Newton core shared by bfgs and slsqp_style.  bfgs keeps the inverse
// Hessian with a plain BFGS update and an Armijo backtracking search;
// slsqp_style keeps the Hessian itself, solves the Newton system (the
// degenerate QP of SQP without constraints) and uses Powell-damped updates
// with a quadratic-interpolation backtracking search.
// ---------------------------------------------------------------------------

OptResult quasi_newton(const Objective& obj, VectorXd x, const Budget& budget,
                       bool damped_sqp) {
  const auto n = x.size();
  Tracker tr(obj, budget);
  double fx = tr.eval(x);

  VectorXd g(n);
  if (!tr.gradient(x, budget.fd_step, g)) return tr.result("max_evals");

  MatrixXd h_inv = MatrixXd::Identity(n, n);  // bfgs path
  MatrixXd b = MatrixXd::Identity(n, n);      // slsqp path (Hessian)
  const double grad_tol = 1e-8;

  for (int iter = 0; iter < 10000; ++iter) {
    if (tr.exhausted()) return tr.result("max_evals");
    if (g.lpNorm<Eigen::Infinity>() < grad_tol) return tr.result("gtol");

    VectorXd d = damped_sqp ? VectorXd(-b.ldlt().solve(g))
                            : VectorXd(-h_inv * g);
    double slope = g.dot(d);
    if (!(slope < 0)) {  // reset on a non-descent direction
      h_inv.setIdentity();
      b.setIdentity();
      d = -g;
      slope = g.dot(d);
      if (!(slope < 0)) return tr.result("gtol");
    }

    // Backtracking line search with Armijo condition.
    const double c1 = 1e-4;
    double alpha = 1.0;
    double f_new = kInf;
    VectorXd x_new;
    bool accepted = false;
    for (int ls = 0; ls < 50 && !tr.exhausted(); ++ls) {
      x_new = x + alpha * d;
      f_new = tr.eval(x_new);
      if (f_new <= fx + c1 * alpha * slope) {
        accepted = true;
        break;
      }
      if (damped_sqp) {
        // Quadratic interpolation on φ(α) = f(x + αd).
        const double denom = 2.0 * (f_new - fx - alpha * slope);
        double alpha_q = denom > 0 ? -slope * alpha * alpha / denom : alpha / 2;
        alpha = std::clamp(alpha_q, 0.1 * alpha, 0.5 * alpha);
      } else {
        alpha *= 0.5;
      }
    }
    if (!accepted)
      return tr.result(tr.exhausted() ? "max_evals" : "line_search_failed");

    VectorXd g_new(n);
    if (!tr.gradient(x_new, budget.fd_step, g_new))
      return tr.result("max_evals");

    const VectorXd s = x_new - x;
    const VectorXd y = g_new - g;
    const double f_old = fx;
    x = x_new;
    fx = f_new;
    g = g_new;

    if (damped_sqp) {
      const VectorXd bs = b * s;
      const double sbs = s.dot(bs);
      const double sy = s.dot(y);
      if (sbs > 1e-16) {
        // Powell damping keeps B positive definite.
        const double theta =
            sy >= 0.2 * sbs ? 1.0 : (0.8 * sbs) / (sbs - sy);
        const VectorXd yb = theta * y + (1.0 - theta) * bs;
        const double syb = s.dot(yb);
        if (syb > 1e-16)
          b += -(bs * bs.transpose()) / sbs + (yb * yb.transpose()) / syb;
      }
    } else {
      const double sy = s.dot(y);
      if (sy > 1e-12 * s.norm() * y.norm()) {
        const double rho = 1.0 / sy;
        const MatrixXd left =
            MatrixXd::Identity(n, n) - rho * s * y.transpose();
        h_inv = left * h_inv * left.transpose() +
                rho * s * s.transpose();
      }
    }

    if (std::abs(f_old - fx) <= budget.ftol * (1.0 + std::abs(fx)) &&
        s.lpNorm<Eigen::Infinity>() <=
            budget.xtol * (1.0 + x.lpNorm<Eigen::Infinity>()))
      return tr.result("ftol");
  }
  return tr.result("max_iters");
}

// ---------------------------------------------------------------------------
// Powell's direction-set method with Brent line minimization.
// ---------------------------------------------------------------------------

struct LinMin {
  Tracker& tr;
  const VectorXd& origin;
  const VectorXd& dir;
  double operator()(double a) { return tr.eval(origin + a * dir); }
};

/// Bracket + Brent minimization along a direction; returns (alpha, f).
std::pair<double, double> line_minimize(Tracker& tr, const VectorXd& origin,
                                        const VectorXd& dir, double f0,
                                        double xtol) {
  LinMin fn{tr, origin, dir};
  const double golden = 1.618033988749895;

  // Bracket the minimum starting from step 0.25 (angle scale).
  double a = 0.0, fa = f0;
  double b = 0.25, fb = fn(b);
  if (fb > fa) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  double c = b + golden * (b - a), fc = fn(c);
  int guard = 0;
  while (fc < fb && ++guard < 40 && !tr.exhausted()) {
    a = b;
    fa = fb;
    b = c;
    fb = fc;
    c = b + golden * (b - a);
    fc = fn(c);
  }
  if (a > c) std::swap(a, c);

  // Brent's method on [a, c].
  double x = b, w = b, v = b, fx = fb, fw = fb, fv = fb;
  double e = 0.0, d = 0.0;
  for (int it = 0; it < 60 && !tr.exhausted(); ++it) {
    const double xm = 0.5 * (a + c);
    const double tol1 = xtol * std::abs(x) + 1e-11;
    const double tol2 = 2 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (c - a)) break;
    bool parabolic = false;
    if (std::abs(e) > tol1) {
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2 * (q - r);
      if (q > 0) p = -p;
      q = std::abs(q);
      const double e_old = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_old) && p > q * (a - x) &&
          p < q * (c - x)) {
        d = p / q;
        parabolic = true;
      }
    }
    if (!parabolic) {
      e = (x >= xm) ? a - x : c - x;
      d = 0.381966 * e;
    }
    const double u =
        std::abs(d) >= tol1 ? x + d : x + (d > 0 ? tol1 : -tol1);
    const double fu = fn(u);
    if (fu <= fx) {
      if (u >= x)
        a = x;
      else
        c = x;
      v = w; fv = fw; w = x; fw = fx; x = u; fx = fu;
    } else {
      if (u < x)
        a = u;
      else
        c = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw; w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return {x, fx};
}

OptResult powell_method(const Objective& obj, VectorXd x,
                        const Budget& budget) {
  const auto n = x.size();
  Tracker tr(obj, budget);
  double fx = tr.eval(x);
  std::vector<VectorXd> dirs;
  for (Eigen::Index i = 0; i < n; ++i)
    dirs.push_back(VectorXd::Unit(n, i));

  for (int iter = 0; iter < 5000; ++iter) {
    if (tr.exhausted()) return tr.result("max_evals");
    const VectorXd x0 = x;
    const double f0 = fx;
    double biggest_drop = 0.0;
    size_t biggest_idx = 0;

    for (size_t i = 0; i < dirs.size(); ++i) {
      const double f_before = fx;
      auto [alpha, f_min] = line_minimize(tr, x, dirs[i], fx, budget.xtol);
      if (f_min < fx) {
        x += alpha * dirs[i];
        fx = f_min;
      }
      if (f_before - fx > biggest_drop) {
        biggest_drop = f_before - fx;
        biggest_idx = i;
      }
      if (tr.exhausted()) return tr.result("max_evals");
    }

    if (2.0 * (f0 - fx) <= budget.ftol * (std::abs(f0) + std::abs(fx)) + 1e-20)
      return tr.result("ftol");

    // Powell's direction-replacement test via the extrapolated point.
    const VectorXd x_e = 2.0 * x - x0;
    const double f_e = tr.eval(x_e);
    if (f_e < f0) {
      const double t = 2.0 * (f0 - 2.0 * fx + f_e) *
                           (f0 - fx - biggest_drop) * (f0 - fx - biggest_drop) -
                       biggest_drop * (f0 - f_e) * (f0 - f_e);
      if (t < 0.0) {
        VectorXd new_dir = x - x0;
        if (new_dir.norm() > 1e-14) {
          new_dir.normalize();
          auto [alpha, f_min] =
              line_minimize(tr, x, new_dir, fx, budget.xtol);
          if (f_min < fx) {
            x += alpha * new_dir;
            fx = f_min;
          }
          dirs[biggest_idx] = new_dir;
        }
      }
    }
  }
  return tr.result("max_iters");
}

// ---------------------------------------------------------------------------
// COBYLA-style derivative-free trust region: a linear model from
// coordinate samples at the trust radius, steepest-descent steps of
// length ρ, radius shrinking 0.5 → 1e-6 on failure.
// ---------------------------------------------------------------------------

OptResult cobyla_style_method(const Objective& obj, VectorXd x,
                              const Budget& budget) {
  const auto n = x.size();
  Tracker tr(obj, budget);
  double fx = tr.eval(x);
  double rho = 0.5;
  const double rho_end = 1e-6;

  while (rho > rho_end) {
    if (tr.exhausted()) return tr.result("max_evals");

    // Linear model of the objective at the trust-radius scale.
    VectorXd g(n);
    bool model_ok = true;
    VectorXd probe = x;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (tr.exhausted()) {
        model_ok = false;
        break;
      }
      probe[i] = x[i] + rho;
      const double fp = tr.eval(probe);
      probe[i] = x[i];
      g[i] = (fp - fx) / rho;
      if (fp < fx) {  // the sample itself may already improve
        x[i] += rho;
        fx = fp;
        probe = x;
      }
    }
    if (!model_ok) return tr.result("max_evals");

    const double gn = g.norm();
    if (gn < 1e-14) {
      rho *= 0.5;
      continue;
    }

    bool improved = false;
    for (int step = 0; step < 50 && !tr.exhausted(); ++step) {
      const VectorXd cand = x - rho * g / gn;
      const double fc = tr.eval(cand);
      if (fc < fx - 1e-15) {
        x = cand;
        fx = fc;
        improved = true;
        // Refresh the model direction cheaply every few steps.
        if (step % 5 == 4) break;
      } else {
        break;
      }
    }
    if (!improved) rho *= 0.5;
  }
  return tr.result("rho_end");
}

}  // namespace

OptResult minimize(OptMethod method, const Objective& obj,
                   std::vector<double> theta0, const Budget& budget) {
  if (int(theta0.size()) != obj.dim())
    throw std::invalid_argument("theta0 dimension mismatch");
  if (budget.max_evals <= 0 || budget.ftol <= 0 || budget.xtol <= 0 ||
      budget.fd_step <= 0)
    throw std::invalid_argument("budget fields must be positive");
  VectorXd x = Eigen::Map<VectorXd>(theta0.data(), Eigen::Index(theta0.size()));
  switch (method) {
    case OptMethod::bfgs: return quasi_newton(obj, x, budget, false);
    case OptMethod::slsqp_style: return quasi_newton(obj, x, budget, true);
    case OptMethod::powell: return powell_method(obj, x, budget);
    case OptMethod::cobyla_style: return cobyla_style_method(obj, x, budget);
  }
  throw std::logic_error("unreachable");
}

}  // namespace lvqe
