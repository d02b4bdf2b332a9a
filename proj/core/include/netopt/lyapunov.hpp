#ifndef NETOPT_LYAPUNOV_HPP
#define NETOPT_LYAPUNOV_HPP

#include <Eigen/Dense>

#include "netopt/errors.hpp"

namespace netopt {

// Solves X = A X A^T + Q for a fixed stable A and many right-hand sides Q.
// The (I - A (x) A) system matrix is factored once in the constructor, so a
// solve is a single back-substitution of size n^2. Direct factorization is
// intended for state dimensions up to a few hundred; the memory cost grows
// as n^4.
class SteinSolver {
public:
    explicit SteinSolver(const Eigen::MatrixXd& a);

    // Returns the unique X with X = A X A^T + Q.
    Eigen::MatrixXd solve(const Eigen::MatrixXd& q) const;

    int dim() const { return n_; }

private:
    int n_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

// One-shot convenience wrapper around SteinSolver.
Eigen::MatrixXd solve_discrete_lyapunov(const Eigen::MatrixXd& a,
                                        const Eigen::MatrixXd& q);

} // namespace netopt

#endif // NETOPT_LYAPUNOV_HPP
