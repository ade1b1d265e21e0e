#pragma once

#include <Eigen/Core>
#include <functional>

namespace cornerlab {

struct GmresResult {
  Eigen::VectorXcd x;
  int iterations = 0;
  double residual = 0.0;  // relative to |b|
  bool converged = false;
};

using LinearOperator = std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>;

// Restarted GMRES(m) with modified Gram-Schmidt and Givens rotations.
GmresResult gmres(const LinearOperator& A, const Eigen::VectorXcd& b, double tol, int restart,
                  int max_iter, const Eigen::VectorXcd* x0 = nullptr);

}  // namespace cornerlab
