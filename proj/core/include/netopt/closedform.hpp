#ifndef NETOPT_CLOSEDFORM_HPP
#define NETOPT_CLOSEDFORM_HPP

#include <Eigen/Dense>

#include <array>

#include "netopt/errors.hpp"

namespace netopt {

// Stationary second-moment coefficients of the 2-node ring. With the loop
// gain z = a12 * a21 (|z| < 1),
//   gamma0 = (1 + z^2) / (1 - z^2)^3,
//   gamma2 = 2 z / (1 - z^2)^3.
// gamma0 scales E[x(t)^2] terms and gamma2 the lag-2 cross terms of the
// regressor covariance.
struct GammaCoeffs {
    double gamma0 = 0.0;
    double gamma2 = 0.0;
};

GammaCoeffs gamma_coeffs(double z);

struct TwoNodeCycleParams {
    double a12 = 0.0;  // gain of the module 2 -> 1
    double a21 = 0.0;  // gain of the module 1 -> 2
    double sigma2_1 = 1.0;
    double sigma2_2 = 1.0;
    double lambda_1 = 1.0;
    double lambda_2 = 1.0;
};

// Asymptotic covariance of [a12_hat, a21_hat] for the four minimal patterns
// of the 2-node ring:
//   family 1: ({1,2},{1})   family 2: ({1,2},{2})
//   family 3: ({1},{1,2})   family 4: ({2},{1,2})
// Throws DegenerateParameterError when the loop gain is not contractive or
// a needed gain is zero.
Eigen::Matrix2d twonode_covariance(const TwoNodeCycleParams& p, int family);

// Diagonal of twonode_covariance, order [var(a12), var(a21)].
std::array<double, 2> twonode_variances(const TwoNodeCycleParams& p, int family);

struct ThreeNodeBranchParams {
    double a21 = 0.0;  // gain of 1 -> 2
    double a32 = 0.0;  // gain of 2 -> 3
    double sigma2_1 = 1.0;
    double sigma2_2 = 1.0;
    double lambda_2 = 1.0;
    double lambda_3 = 1.0;
};

// Variances [var(a21), var(a32)] for the two minimal patterns of the chain
// 1 -> 2 -> 3: family 1 = ({1,2},{3}), family 2 = ({1},{2,3}).
std::array<double, 2> threenode_branch_variances(const ThreeNodeBranchParams& p,
                                                 int family);

// Excitation variance at node 2 at which the two patterns above have equal
// covariance trace: exciting node 2 beats measuring it exactly when
// sigma2_2 exceeds this value. Throws DegenerateParameterError when no
// positive crossover exists.
double sigma2_crossover(const ThreeNodeBranchParams& p);

struct FourNodeBranchParams {
    double a21 = 0.0;
    double a32 = 0.0;
    double a43 = 0.0;
    double sigma2_1 = 1.0;
    double sigma2_2 = 1.0;
    double sigma2_3 = 1.0;
    double lambda_2 = 1.0;
    double lambda_3 = 1.0;
    double lambda_4 = 1.0;
};

// Variances [var(a21), var(a32), var(a43)] for the four minimal patterns of
// the chain 1 -> 2 -> 3 -> 4, numbered as enumerate_branch_emps(4):
//   family 1: ({1,3},{2,4})   family 2: ({1,2},{3,4})
//   family 3: ({1,2,3},{4})   family 4: ({1},{2,3,4})
std::array<double, 3> fournode_branch_variances(const FourNodeBranchParams& p,
                                                int family);

} // namespace netopt

#endif // NETOPT_CLOSEDFORM_HPP
