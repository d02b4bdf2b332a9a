#ifndef NETOPT_EMP_HPP
#define NETOPT_EMP_HPP

#include <string>
#include <vector>

#include "netopt/model.hpp"

namespace netopt {

/// An excitation and measurement pattern: which nodes receive a known
/// external input (excited) and which node signals are observed through
/// noisy sensors (measured). A node may appear in both sets.
struct Emp {
    std::vector<int> excited;   // sorted ascending, 1-based
    std::vector<int> measured;  // sorted ascending, 1-based
    std::string label;          // display label ("I", "VII", "9", ...)

    Emp() = default;
    Emp(std::vector<int> b, std::vector<int> c, std::string lab = "");

    int cardinality() const { return static_cast<int>(excited.size() + measured.size()); }
    bool excites(int node) const;
    bool measures(int node) const;

    /// "({1,2},{3,4})" - canonical display of the set pair.
    std::string to_string() const;
};

bool operator==(const Emp& a, const Emp& b);

/// Necessary condition for identifiability: every node is excited or
/// measured (or both).
bool validate_necessary(const Emp& emp, int n);

/// All minimal patterns for a chain of n nodes: node 1 excited, node n
/// measured, every interior node assigned exactly one role. 2^(n-2)
/// patterns, ordered and labelled to match the published listings.
std::vector<Emp> enumerate_branch_emps(int n);

/// All minimal patterns for a ring of n nodes. For even n > 3 exactly the
/// two alternating patterns exist; for n = 2 and odd n there are n*2^(n-1)
/// patterns, each with one node in both roles and every other node in
/// exactly one role.
std::vector<Emp> enumerate_cycle_emps(int n);

/// Per-node role requirement used to describe pattern families on
/// topologies that mix chain and ring parts.
enum class Role {
    MustExcite,
    MustMeasure,
    Either,         // excited or measured, never both
    Both,           // always excited and measured
    OneOfGroupBoth, // exactly one node of the group takes both roles
};

struct RoleConstraint {
    int node = 0;
    Role role = Role::Either;
    int group = -1; // group id, only meaningful for OneOfGroupBoth
};

/// Cartesian expansion of role constraints into concrete patterns:
/// fixed roles stay fixed, Either nodes take each single role, and within
/// every OneOfGroupBoth group each member in turn takes both roles while
/// the remaining members take each single role. Deduplicated,
/// deterministic order.
std::vector<Emp> enumerate_constrained(const std::vector<RoleConstraint>& constraints, int n);

/// Constraint set for the bundled 6-node example that chains a ring
/// {3,4,5} between chain segments 1->2->3 and 5->6.
std::vector<RoleConstraint> hybrid6_constraints();

// The 24 patterns of the bundled 6-node hybrid example in published label
// order. Set-identical to enumerate_constrained(hybrid6_constraints(), 6).
std::vector<Emp> enumerate_hybrid6();

/// True if the model has exactly the bundled 6-node hybrid topology
/// (edges 1->2, 2->3, 5->3, 3->4, 4->5, 5->6), whatever the gains.
bool is_hybrid6_topology(const NetworkModel& model);

/// Enumerates minimal patterns for any model this library has rules for:
/// branch and cycle topologies, plus the bundled 6-node hybrid. Throws
/// ValidationError for other general topologies.
std::vector<Emp> enumerate_for(const NetworkModel& model);

/// Edges i->j with i excited and j measured. These are the parameters an
/// experiment probes most directly, and they drive pattern quality.
std::vector<Edge> direct_modules(const Emp& emp, const NetworkModel& model);

/// True if the largest-magnitude edge of the model is a direct module of
/// the pattern (ties broken toward true if any maximal edge is direct).
bool largest_module_is_direct(const Emp& emp, const NetworkModel& model);

} // namespace netopt

#endif
