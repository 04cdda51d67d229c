#pragma once

#include <Eigen/Dense>
#include <functional>

namespace cobit::capacity {

struct NelderMeadOptions {
  int max_iterations = 3000;
  double initial_step = 0.25;
  double f_tol = 1e-10;  // simplex value spread at convergence
  double x_tol = 1e-9;   // simplex diameter at convergence
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Downhill simplex minimization of an unconstrained objective.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0,
                             const NelderMeadOptions& options = {});

}  // namespace cobit::capacity
