#ifndef NETOPT_SIM_HPP
#define NETOPT_SIM_HPP

#include <Eigen/Dense>

#include <cstdint>

#include "netopt/emp.hpp"
#include "netopt/model.hpp"

namespace netopt {

// Number of segments used for batch-means standard errors.
inline constexpr int kSimBatches = 32;

// Minimum accepted sample count.
inline constexpr long kSimMinSamples = 1000;

// State norm beyond which the recursion is declared divergent.
inline constexpr double kSimDivergenceNorm = 1e12;

struct SimTrace {
    long samples = 0;            // retained samples (after burn-in)
    std::uint64_t seed = 0;
    Eigen::MatrixXd empirical_info;   // p x p time average of psi L^-1 psi'
    Eigen::MatrixXd standard_error;   // batch-means SE per entry
    Eigen::MatrixXd state_covariance; // n x n time average of w w'
};

// Runs the node recursion and the per-parameter sensitivity recursions for
// T samples after a burn-in of max(1000, 50 n), accumulating the empirical
// information matrix. Fully determined by the seed.
SimTrace simulate_information(const NetworkModel& model, const Emp& emp,
                              const SignalConfig& signals, long T,
                              std::uint64_t seed);

} // namespace netopt

#endif // NETOPT_SIM_HPP
