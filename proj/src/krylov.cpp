#include "cornerlab/krylov.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <vector>

namespace cornerlab {

GmresResult gmres(const LinearOperator& A, const Eigen::VectorXcd& b, double tol, int restart,
                  int max_iter, const Eigen::VectorXcd* x0) {
  using Vec = Eigen::VectorXcd;
  using cplx = std::complex<double>;
  GmresResult out;
  out.x = x0 ? *x0 : Vec::Zero(b.size());
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    out.x.setZero();
    out.converged = true;
    return out;
  }

  while (out.iterations < max_iter) {
    Vec r = b - A(out.x);
    double beta = r.norm();
    out.residual = beta / bnorm;
    if (out.residual <= tol) {
      out.converged = true;
      return out;
    }
    const int m = restart;
    std::vector<Vec> V;
    V.reserve(m + 1);
    V.push_back(r / beta);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 1, m);
    std::vector<cplx> cs(m), sn(m);
    Vec g = Vec::Zero(m + 1);
    g(0) = beta;
    int used = 0;
    for (int j = 0; j < m && out.iterations < max_iter; ++j) {
      Vec w = A(V[j]);
      ++out.iterations;
      for (int i = 0; i <= j; ++i) {
        H(i, j) = V[i].dot(w);  // conjugates V[i]
        w -= H(i, j) * V[i];
      }
      const double hnext = w.norm();
      H(j + 1, j) = hnext;
      for (int i = 0; i < j; ++i) {
        const cplx t = std::conj(cs[i]) * H(i, j) + std::conj(sn[i]) * H(i + 1, j);
        H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
        H(i, j) = t;
      }
      const double denom = std::hypot(std::abs(H(j, j)), std::abs(H(j + 1, j)));
      cs[j] = denom == 0.0 ? cplx(1.0) : H(j, j) / denom;
      sn[j] = denom == 0.0 ? cplx(0.0) : H(j + 1, j) / denom;
      H(j, j) = denom;
      H(j + 1, j) = 0.0;
      g(j + 1) = -sn[j] * g(j);
      g(j) = std::conj(cs[j]) * g(j);
      used = j + 1;
      out.residual = std::abs(g(j + 1)) / bnorm;
      if (out.residual <= tol || hnext == 0.0) break;
      if (j + 1 < m) V.push_back(w / hnext);
    }
    // Back substitution on the upper-triangular part.
    Vec y = H.topLeftCorner(used, used).triangularView<Eigen::Upper>().solve(g.head(used));
    for (int i = 0; i < used; ++i) out.x += y(i) * V[i];
  }
  const Vec r = b - A(out.x);
  out.residual = r.norm() / bnorm;
  out.converged = out.residual <= tol;
  return out;
}

}  // namespace cornerlab
