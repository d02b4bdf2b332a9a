#include "netopt/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Eigenvalues>

namespace netopt {

std::string Edge::id() const {
    return std::to_string(from) + "->" + std::to_string(to);
}

double spectral_radius(const Eigen::MatrixXd& a) {
    if (a.rows() == 0) return 0.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(a, /*computeEigenvectors=*/false);
    double r = 0.0;
    for (int i = 0; i < a.rows(); ++i) {
        r = std::max(r, std::abs(es.eigenvalues()[i]));
    }
    return r;
}

NetworkModel::NetworkModel(int n, std::vector<Edge> edges, Topology topology)
    : n_(n), edges_(std::move(edges)), topology_(topology) {
    if (n_ < 2) {
        throw ValidationError("network needs at least 2 nodes, got " + std::to_string(n_));
    }
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : edges_) {
        if (e.from < 1 || e.from > n_ || e.to < 1 || e.to > n_) {
            throw ValidationError("edge " + e.id() + " is out of range for n=" + std::to_string(n_));
        }
        if (e.from == e.to) {
            throw ValidationError("self-loop " + e.id() + " is not allowed");
        }
        if (!std::isfinite(e.gain)) {
            throw ValidationError("edge " + e.id() + " has a non-finite gain");
        }
        if (!seen.insert({e.from, e.to}).second) {
            throw ValidationError("duplicate edge " + e.id());
        }
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return std::pair{a.to, a.from} < std::pair{b.to, b.from};
    });
    gain_ = Eigen::MatrixXd::Zero(n_, n_);
    for (const Edge& e : edges_) {
        gain_(e.to - 1, e.from - 1) = e.gain;
    }
    spectral_radius_ = netopt::spectral_radius(gain_);
    if (spectral_radius_ >= 1.0 - kStabilityMargin) {
        throw InstabilityError("gain matrix spectral radius " + std::to_string(spectral_radius_) +
                               " violates the stability margin");
    }
}

NetworkModel build_branch(int n, const std::vector<double>& gains) {
    if (n < 2) {
        throw ValidationError("branch needs at least 2 nodes, got " + std::to_string(n));
    }
    if (static_cast<int>(gains.size()) != n - 1) {
        throw ValidationError("branch with " + std::to_string(n) + " nodes needs " +
                              std::to_string(n - 1) + " gains, got " + std::to_string(gains.size()));
    }
    std::vector<Edge> edges;
    edges.reserve(gains.size());
    for (int i = 0; i < n - 1; ++i) {
        edges.push_back({i + 1, i + 2, gains[i]});
    }
    return NetworkModel(n, std::move(edges), Topology::Branch);
}

NetworkModel build_cycle(int n, const std::vector<double>& gains) {
    if (n < 2) {
        throw ValidationError("cycle needs at least 2 nodes, got " + std::to_string(n));
    }
    if (static_cast<int>(gains.size()) != n) {
        throw ValidationError("cycle with " + std::to_string(n) + " nodes needs " +
                              std::to_string(n) + " gains, got " + std::to_string(gains.size()));
    }
    std::vector<Edge> edges;
    edges.reserve(gains.size());
    for (int i = 0; i < n - 1; ++i) {
        edges.push_back({i + 1, i + 2, gains[i]});
    }
    edges.push_back({n, 1, gains[n - 1]});
    return NetworkModel(n, std::move(edges), Topology::Cycle);
}

NetworkModel build_general(int n, const std::vector<Edge>& edges) {
    return NetworkModel(n, edges, Topology::General);
}

SignalConfig SignalConfig::uniform(int n, double sigma2_value, double lambda_value) {
    SignalConfig c;
    for (int i = 1; i <= n; ++i) {
        c.sigma2[i] = sigma2_value;
        c.lambda[i] = lambda_value;
    }
    return c;
}

void SignalConfig::validate_for(const std::vector<int>& excited,
                                const std::vector<int>& measured) const {
    for (int i : excited) {
        auto it = sigma2.find(i);
        if (it == sigma2.end()) {
            throw ValidationError("no input variance given for excited node " + std::to_string(i));
        }
        if (!(it->second > 0.0)) {
            throw ValidationError("input variance for node " + std::to_string(i) +
                                  " must be strictly positive");
        }
    }
    for (int j : measured) {
        auto it = lambda.find(j);
        if (it == lambda.end()) {
            throw ValidationError("no noise variance given for measured node " + std::to_string(j));
        }
        if (!(it->second > 0.0)) {
            throw ValidationError("noise variance for node " + std::to_string(j) +
                                  " must be strictly positive");
        }
    }
}

} // namespace netopt
