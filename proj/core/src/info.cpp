#include "netopt/info.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>

#include "netopt/lyapunov.hpp"

namespace netopt {
namespace {

// Finishes an InfoResult from an assembled information matrix: eigenvalue
// based condition estimate, singularity decision, and inverse.
void finalize(InfoResult& res) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(res.info);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double emax = ev.maxCoeff();
    const double emin = ev.minCoeff();
    if (emin <= 0.0 || emax <= 0.0) {
        res.condition_number = std::numeric_limits<double>::infinity();
    } else {
        res.condition_number = emax / emin;
    }
    if (!(res.condition_number < kSingularConditionThreshold)) {
        res.singular = true;
        res.trace = std::numeric_limits<double>::infinity();
        return;
    }
    res.covariance =
        es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
    res.trace = res.covariance.trace();
    for (size_t k = 0; k < res.params.size(); ++k) {
        res.variances[res.params[k].id()] =
            res.covariance(static_cast<long>(k), static_cast<long>(k));
    }
}

Eigen::MatrixXd excitation_covariance(const Emp& emp, const SignalConfig& signals, int n) {
    Eigen::MatrixXd qw = Eigen::MatrixXd::Zero(n, n);
    for (int i : emp.excited) {
        qw(i - 1, i - 1) = signals.sigma2.at(i);
    }
    return qw;
}

} // namespace

SensitivitySystem build_sensitivity(const NetworkModel& model, const Emp& emp) {
    const int n = model.node_count();
    const auto& params = model.edges();
    const int p = static_cast<int>(params.size());
    const long dim = static_cast<long>(p + 1) * n;

    SensitivitySystem sys;
    sys.n = n;
    sys.params = params;
    sys.excited = emp.excited;
    sys.a_tilde = Eigen::MatrixXd::Zero(dim, dim);
    const Eigen::MatrixXd a = model.gain_matrix();
    for (int k = 0; k <= p; ++k) {
        sys.a_tilde.block(static_cast<long>(k) * n, static_cast<long>(k) * n, n, n) = a;
    }
    for (int k = 0; k < p; ++k) {
        const Edge& e = params[static_cast<size_t>(k)];
        sys.a_tilde(static_cast<long>(k + 1) * n + (e.to - 1), e.from - 1) = 1.0;
    }
    sys.b_tilde = Eigen::MatrixXd::Zero(dim, static_cast<long>(emp.excited.size()));
    for (size_t col = 0; col < emp.excited.size(); ++col) {
        sys.b_tilde(emp.excited[col] - 1, static_cast<long>(col)) = 1.0;
    }
    return sys;
}

Eigen::MatrixXd steady_state_covariance(const SensitivitySystem& sys,
                                        const SignalConfig& signals) {
    const long dim = sys.a_tilde.rows();
    if (dim > kMaxAugmentedStateDim) {
        throw ValidationError("augmented state dimension " + std::to_string(dim) +
                              " exceeds the direct-route limit of " +
                              std::to_string(kMaxAugmentedStateDim));
    }
    Eigen::MatrixXd sigma =
        Eigen::MatrixXd::Zero(static_cast<long>(sys.excited.size()),
                              static_cast<long>(sys.excited.size()));
    for (size_t col = 0; col < sys.excited.size(); ++col) {
        sigma(static_cast<long>(col), static_cast<long>(col)) =
            signals.sigma2.at(sys.excited[col]);
    }
    const Eigen::MatrixXd q = sys.b_tilde * sigma * sys.b_tilde.transpose();
    return solve_discrete_lyapunov(sys.a_tilde, q);
}

InfoResult information_matrix(const NetworkModel& model, const Emp& emp,
                              const SignalConfig& signals) {
    signals.validate_for(emp.excited, emp.measured);
    const int n = model.node_count();
    const auto& params = model.edges();
    const int p = static_cast<int>(params.size());

    InfoResult res;
    res.emp = emp;
    res.params = params;
    res.info = Eigen::MatrixXd::Zero(p, p);

    const Eigen::MatrixXd a = model.gain_matrix();
    SteinSolver solver(a);
    const Eigen::MatrixXd w = solver.solve(excitation_covariance(emp, signals, n));
    const Eigen::MatrixXd wat = w * a.transpose();

    // Cross-covariance of each sensitivity state with the node state. With
    // the rank-one indicator of parameter k's edge (i -> j),
    //   s_k(t) = A s_k(t-1) + e_j e_i' w(t-1)
    // gives Y_k = A Y_k A' + e_j (row i of W A').
    std::vector<Eigen::MatrixXd> y(static_cast<size_t>(p));
    for (int k = 0; k < p; ++k) {
        const Edge& e = params[static_cast<size_t>(k)];
        Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, n);
        rhs.row(e.to - 1) = wat.row(e.from - 1);
        y[static_cast<size_t>(k)] = solver.solve(rhs);
    }

    // Pairwise sensitivity covariances
    //   X_kl = A X_kl A' + A Y_k E_l' + E_k Y_l' A' + E_k W E_l'
    // assembled from rank-one pieces; only the measured diagonal entries of
    // each X_kl feed the information matrix.
    for (int k = 0; k < p; ++k) {
        const Edge& ek = params[static_cast<size_t>(k)];
        const long jk = ek.to - 1;
        const long ik = ek.from - 1;
        for (int l = k; l < p; ++l) {
            const Edge& el = params[static_cast<size_t>(l)];
            const long jl = el.to - 1;
            const long il = el.from - 1;
            Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, n);
            rhs.col(jl) += a * y[static_cast<size_t>(k)].col(il);
            rhs.row(jk) += (a * y[static_cast<size_t>(l)].col(ik)).transpose();
            rhs(jk, jl) += w(ik, il);
            const Eigen::MatrixXd x = solver.solve(rhs);
            double m = 0.0;
            for (int j : emp.measured) {
                m += x(j - 1, j - 1) / signals.lambda.at(j);
            }
            res.info(k, l) = m;
            res.info(l, k) = m;
        }
    }

    finalize(res);
    return res;
}

InfoResult information_matrix_augmented(const NetworkModel& model, const Emp& emp,
                                        const SignalConfig& signals) {
    signals.validate_for(emp.excited, emp.measured);
    const SensitivitySystem sys = build_sensitivity(model, emp);
    const Eigen::MatrixXd z = steady_state_covariance(sys, signals);
    const int n = sys.n;
    const int p = static_cast<int>(sys.params.size());

    InfoResult res;
    res.emp = emp;
    res.params = sys.params;
    res.info = Eigen::MatrixXd::Zero(p, p);
    for (int k = 0; k < p; ++k) {
        for (int l = k; l < p; ++l) {
            double m = 0.0;
            for (int j : emp.measured) {
                m += z(static_cast<long>(k + 1) * n + (j - 1),
                       static_cast<long>(l + 1) * n + (j - 1)) /
                     signals.lambda.at(j);
            }
            res.info(k, l) = m;
            res.info(l, k) = m;
        }
    }
    finalize(res);
    return res;
}

std::vector<RankedEmp> rank_emps(const NetworkModel& model,
                                 const std::vector<Emp>& emps,
                                 const SignalConfig& signals) {
    std::vector<RankedEmp> out;
    out.reserve(emps.size());
    for (size_t i = 0; i < emps.size(); ++i) {
        RankedEmp entry;
        entry.result = information_matrix(model, emps[i], signals);
        entry.enumeration_index = static_cast<int>(i);
        out.push_back(std::move(entry));
    }
    std::stable_sort(out.begin(), out.end(), [](const RankedEmp& a, const RankedEmp& b) {
        return a.result.trace < b.result.trace;
    });
    return out;
}

} // namespace netopt
