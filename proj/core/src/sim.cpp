#include "netopt/sim.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "netopt/rng.hpp"

namespace netopt {

SimTrace simulate_information(const NetworkModel& model, const Emp& emp,
                              const SignalConfig& signals, long T,
                              std::uint64_t seed) {
    if (T < kSimMinSamples) {
        throw ValidationError("sample count must be at least " +
                              std::to_string(kSimMinSamples));
    }
    signals.validate_for(emp.excited, emp.measured);

    const int n = model.node_count();
    const auto& params = model.edges();
    const int p = static_cast<int>(params.size());
    const Eigen::MatrixXd a = model.gain_matrix();

    std::vector<double> noise_sd;
    noise_sd.reserve(emp.excited.size());
    for (int i : emp.excited) noise_sd.push_back(std::sqrt(signals.sigma2.at(i)));

    Rng rng(seed);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, p);  // column k: sensitivity to param k
    Eigen::VectorXd w_next(n);
    Eigen::MatrixXd s_next(n, p);

    const long burn = std::max<long>(1000, 50L * n);
    const long total = burn + T;

    Eigen::MatrixXd info_sum = Eigen::MatrixXd::Zero(p, p);
    Eigen::MatrixXd state_sum = Eigen::MatrixXd::Zero(n, n);
    std::vector<Eigen::MatrixXd> batch_sum(
        kSimBatches, Eigen::MatrixXd::Zero(p, p));
    Eigen::MatrixXd psi_outer(p, p);

    for (long t = 0; t < total; ++t) {
        // Sensitivity update uses the pre-update state.
        s_next.noalias() = a * s;
        for (int k = 0; k < p; ++k) {
            const Edge& e = params[static_cast<size_t>(k)];
            s_next(e.to - 1, k) += w(e.from - 1);
        }
        w_next.noalias() = a * w;
        for (size_t col = 0; col < emp.excited.size(); ++col) {
            w_next(emp.excited[col] - 1) += noise_sd[col] * rng.normal();
        }
        w.swap(w_next);
        s.swap(s_next);

        if (w.norm() > kSimDivergenceNorm) {
            throw InstabilityError("state norm exceeded " +
                                   std::to_string(kSimDivergenceNorm) +
                                   " during simulation");
        }
        if (t < burn) continue;

        psi_outer.setZero();
        for (int j : emp.measured) {
            psi_outer.noalias() +=
                (s.row(j - 1).transpose() * s.row(j - 1)) / signals.lambda.at(j);
        }
        info_sum += psi_outer;
        state_sum.noalias() += w * w.transpose();
        const long idx = (t - burn) * kSimBatches / T;
        batch_sum[static_cast<size_t>(std::min<long>(idx, kSimBatches - 1))] += psi_outer;
    }

    SimTrace trace;
    trace.samples = T;
    trace.seed = seed;
    trace.empirical_info = info_sum / static_cast<double>(T);
    trace.state_covariance = state_sum / static_cast<double>(T);

    // Batch-means standard error: spread of per-batch averages around the
    // overall average, scaled for the mean of kSimBatches batches.
    trace.standard_error = Eigen::MatrixXd::Zero(p, p);
    const double batch_len = static_cast<double>(T) / kSimBatches;
    Eigen::MatrixXd var = Eigen::MatrixXd::Zero(p, p);
    for (int b = 0; b < kSimBatches; ++b) {
        const Eigen::MatrixXd dev =
            batch_sum[static_cast<size_t>(b)] / batch_len - trace.empirical_info;
        var += dev.cwiseProduct(dev);
    }
    var /= static_cast<double>(kSimBatches - 1);
    trace.standard_error = (var / static_cast<double>(kSimBatches)).cwiseSqrt();
    return trace;
}

} // namespace netopt
