#include "netopt/lyapunov.hpp"

#include <Eigen/Eigenvalues>

#include <string>

#include "netopt/model.hpp"

namespace netopt {

SteinSolver::SteinSolver(const Eigen::MatrixXd& a) : n_(static_cast<int>(a.rows())) {
    if (a.rows() != a.cols() || n_ == 0) {
        throw ValidationError("Stein solver needs a square nonempty matrix");
    }
    const double rho = spectral_radius(a);
    if (rho >= 1.0 - kStabilityMargin) {
        throw InstabilityError("spectral radius " + std::to_string(rho) +
                               " too close to 1; steady state does not exist");
    }
    const long nn = static_cast<long>(n_) * n_;
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(nn, nn);
    // kron(A, A): block (i,j) is a(i,j) * A. vec() convention is
    // column-major, matching Eigen's storage.
    for (int j = 0; j < n_; ++j) {
        for (int i = 0; i < n_; ++i) {
            if (a(i, j) != 0.0) {
                system.block(static_cast<long>(i) * n_, static_cast<long>(j) * n_, n_, n_)
                    .noalias() -= a(i, j) * a;
            }
        }
    }
    lu_.compute(system);
}

Eigen::MatrixXd SteinSolver::solve(const Eigen::MatrixXd& q) const {
    if (q.rows() != n_ || q.cols() != n_) {
        throw ValidationError("right-hand side dimension mismatch in Stein solve");
    }
    const Eigen::VectorXd vec_q = Eigen::Map<const Eigen::VectorXd>(q.data(), q.size());
    const Eigen::VectorXd vec_x = lu_.solve(vec_q);
    return Eigen::Map<const Eigen::MatrixXd>(vec_x.data(), n_, n_);
}

Eigen::MatrixXd solve_discrete_lyapunov(const Eigen::MatrixXd& a,
                                        const Eigen::MatrixXd& q) {
    return SteinSolver(a).solve(q);
}

} // namespace netopt
