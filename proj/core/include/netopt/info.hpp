#ifndef NETOPT_INFO_HPP
#define NETOPT_INFO_HPP

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

#include "netopt/emp.hpp"
#include "netopt/model.hpp"

namespace netopt {

// Condition number at or above which the information matrix is reported as
// singular and the pattern as non-identifying.
inline constexpr double kSingularConditionThreshold = 1e12;

// Upper bound on the augmented state dimension accepted by the direct
// steady-state route. Beyond this the factorization cost ((p+1)n)^6 is
// prohibitive; the blockwise route in information_matrix has no such limit.
inline constexpr int kMaxAugmentedStateDim = 120;

// Joint state-and-sensitivity system
//   z(t) = a_tilde z(t-1) + b_tilde r(t),  z = [w; s_1; ...; s_p]
// where s_k is the sensitivity of w to parameter k. Block row k carries the
// parameter indicator in its first block column and the network matrix on
// the diagonal.
struct SensitivitySystem {
    Eigen::MatrixXd a_tilde;
    Eigen::MatrixXd b_tilde;
    std::vector<Edge> params;   // canonical parameter order
    std::vector<int> excited;   // input order matching b_tilde columns
    int n = 0;                  // node count (block size)
};

SensitivitySystem build_sensitivity(const NetworkModel& model, const Emp& emp);

// Steady-state covariance of the augmented state under white excitation with
// the configured per-node variances. Throws ValidationError when the
// augmented dimension exceeds kMaxAugmentedStateDim.
Eigen::MatrixXd steady_state_covariance(const SensitivitySystem& sys,
                                        const SignalConfig& signals);

struct InfoResult {
    Emp emp;
    std::vector<Edge> params;
    Eigen::MatrixXd info;        // p x p information matrix
    Eigen::MatrixXd covariance;  // inverse of info; empty when singular
    double trace = 0.0;          // +infinity when singular
    double condition_number = 0.0;
    bool singular = false;
    std::map<std::string, double> variances;  // edge id -> asymptotic variance
};

// Asymptotic per-sample information matrix of the gain estimates under the
// given pattern, and its inverse. Solves one n^2 Stein factorization per
// call and reuses it for all parameter pairs.
InfoResult information_matrix(const NetworkModel& model, const Emp& emp,
                              const SignalConfig& signals);

// Same quantity computed through the explicit augmented system. Slower;
// kept as an independent route for cross-checking.
InfoResult information_matrix_augmented(const NetworkModel& model, const Emp& emp,
                                        const SignalConfig& signals);

struct RankedEmp {
    InfoResult result;
    int enumeration_index = 0;  // position in the input list
};

// Ranks patterns by ascending covariance trace. Singular patterns sort
// last; ties keep input order.
std::vector<RankedEmp> rank_emps(const NetworkModel& model,
                                 const std::vector<Emp>& emps,
                                 const SignalConfig& signals);

} // namespace netopt

#endif // NETOPT_INFO_HPP
