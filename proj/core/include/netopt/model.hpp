#ifndef NETOPT_MODEL_HPP
#define NETOPT_MODEL_HPP

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netopt/errors.hpp"

namespace netopt {

/// A directed edge from node `from` to node `to` carrying a real gain.
/// Node indices are 1-based everywhere in the public API.
struct Edge {
    int from = 0;
    int to = 0;
    double gain = 0.0;

    /// Stable identifier of the form "2->3" used to key per-parameter results.
    std::string id() const;
};

enum class Topology { Branch, Cycle, General };

/// Margin below 1 that the spectral radius must respect; Lyapunov solves
/// become ill-conditioned as the radius approaches 1.
inline constexpr double kStabilityMargin = 1e-9;

/// A stable single-delay network: node signals are linear combinations of
/// their in-neighbours one step earlier, plus optional external excitation.
/// Immutable after construction.
class NetworkModel {
public:
    NetworkModel(int n, std::vector<Edge> edges, Topology topology);

    int node_count() const { return n_; }
    Topology topology() const { return topology_; }

    /// Edges in canonical parameter order: sorted by (to, from) ascending.
    /// This order defines the meaning of every information/covariance matrix
    /// row and column produced for the model.
    const std::vector<Edge>& edges() const { return edges_; }
    int parameter_count() const { return static_cast<int>(edges_.size()); }

    /// Dense n-by-n gain matrix with entry (to-1, from-1) = gain.
    const Eigen::MatrixXd& gain_matrix() const { return gain_; }

    double spectral_radius() const { return spectral_radius_; }

private:
    int n_;
    std::vector<Edge> edges_;
    Topology topology_;
    Eigen::MatrixXd gain_;
    double spectral_radius_;
};

/// Chain 1 -> 2 -> ... -> n. Always stable (the gain matrix is nilpotent),
/// so the gains are unconstrained. gains[i] is the gain of edge i+1 -> i+2.
NetworkModel build_branch(int n, const std::vector<double>& gains);

/// Ring 1 -> 2 -> ... -> n -> 1. gains[i] is the gain of edge i+1 -> i+2,
/// and gains[n-1] closes the ring with edge n -> 1. Stability requires the
/// magnitude of the gain product to be below 1.
NetworkModel build_cycle(int n, const std::vector<double>& gains);

/// Arbitrary topology; rejects self-loops, duplicate edges, out-of-range
/// nodes and unstable gain matrices.
NetworkModel build_general(int n, const std::vector<Edge>& edges);

/// Largest eigenvalue magnitude of an arbitrary square gain matrix.
double spectral_radius(const Eigen::MatrixXd& a);

/// Per-node second moments of the external signals: sigma2 holds input
/// variances keyed by excited node, lambda holds measurement-noise variances
/// keyed by measured node. Keys are 1-based node indices.
struct SignalConfig {
    std::map<int, double> sigma2;
    std::map<int, double> lambda;

    /// Same variance on every node of {1..n} for both families.
    static SignalConfig uniform(int n, double sigma2_value, double lambda_value);

    /// Throws ValidationError unless sigma2 covers every node of `excited`
    /// and lambda covers every node of `measured`, all strictly positive.
    void validate_for(const std::vector<int>& excited,
                      const std::vector<int>& measured) const;
};

} // namespace netopt

#endif
