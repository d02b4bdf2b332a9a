#include "netopt/emp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace netopt {
namespace {

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::string set_to_string(const std::vector<int>& v) {
    std::ostringstream os;
    os << '{';
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    os << '}';
    return os.str();
}

std::string roman(int k) {
    static const char* ones[] = {"", "I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX"};
    static const char* tens[] = {"", "X", "XX", "XXX"};
    if (k < 1 || k > 39) return std::to_string(k);
    return std::string(tens[k / 10]) + ones[k % 10];
}

std::string pair_key(const Emp& e) {
    return set_to_string(e.excited) + set_to_string(e.measured);
}

// Published label order for the 4-node chain patterns.
const std::vector<Emp>& branch4_table() {
    static const std::vector<Emp> t = {
        Emp({1, 3}, {2, 4}, "I"),
        Emp({1, 2}, {3, 4}, "II"),
        Emp({1, 2, 3}, {4}, "III"),
        Emp({1}, {2, 3, 4}, "IV"),
    };
    return t;
}

// Published label order for the 3-node ring patterns.
const std::vector<Emp>& cycle3_table() {
    static const std::vector<Emp> t = {
        Emp({1, 2, 3}, {1}, "I"),
        Emp({1, 2, 3}, {2}, "II"),
        Emp({1, 2, 3}, {3}, "III"),
        Emp({1}, {1, 2, 3}, "IV"),
        Emp({2}, {1, 2, 3}, "V"),
        Emp({3}, {1, 2, 3}, "VI"),
        Emp({1, 2}, {1, 3}, "VII"),
        Emp({1, 3}, {1, 2}, "VIII"),
        Emp({2, 3}, {1, 2}, "IX"),
        Emp({1, 2}, {2, 3}, "X"),
        Emp({1, 3}, {2, 3}, "XI"),
        Emp({2, 3}, {1, 3}, "XII"),
    };
    return t;
}

const std::vector<Emp>& cycle2_table() {
    static const std::vector<Emp> t = {
        Emp({1, 2}, {1}, "I"),
        Emp({1, 2}, {2}, "II"),
        Emp({1}, {1, 2}, "III"),
        Emp({2}, {1, 2}, "IV"),
    };
    return t;
}

// Published label order for the bundled 6-node hybrid example.
const std::vector<Emp>& hybrid6_table() {
    static const std::vector<Emp> t = {
        Emp({1, 2, 3, 4, 5}, {3, 6}, "1"),
        Emp({1, 2, 3, 4, 5}, {4, 6}, "2"),
        Emp({1, 2, 3, 4, 5}, {5, 6}, "3"),
        Emp({1, 2, 3}, {3, 4, 5, 6}, "4"),
        Emp({1, 2, 4}, {3, 4, 5, 6}, "5"),
        Emp({1, 2, 5}, {3, 4, 5, 6}, "6"),
        Emp({1, 2, 3, 4}, {3, 5, 6}, "7"),
        Emp({1, 2, 3, 5}, {3, 4, 6}, "8"),
        Emp({1, 2, 4, 5}, {3, 4, 6}, "9"),
        Emp({1, 2, 3, 4}, {4, 5, 6}, "10"),
        Emp({1, 2, 3, 5}, {4, 5, 6}, "11"),
        Emp({1, 2, 4, 5}, {3, 5, 6}, "12"),
        Emp({1, 3, 4, 5}, {2, 3, 6}, "13"),
        Emp({1, 3, 4, 5}, {2, 4, 6}, "14"),
        Emp({1, 3, 4, 5}, {2, 5, 6}, "15"),
        Emp({1, 3}, {2, 3, 4, 5, 6}, "16"),
        Emp({1, 4}, {2, 3, 4, 5, 6}, "17"),
        Emp({1, 5}, {2, 3, 4, 5, 6}, "18"),
        Emp({1, 3, 4}, {2, 3, 5, 6}, "19"),
        Emp({1, 3, 5}, {2, 3, 4, 6}, "20"),
        Emp({1, 4, 5}, {2, 3, 4, 6}, "21"),
        Emp({1, 3, 4}, {2, 4, 5, 6}, "22"),
        Emp({1, 3, 5}, {2, 4, 5, 6}, "23"),
        Emp({1, 4, 5}, {2, 3, 5, 6}, "24"),
    };
    return t;
}

} // namespace

Emp::Emp(std::vector<int> b, std::vector<int> c, std::string lab)
    : excited(sorted(std::move(b))), measured(sorted(std::move(c))), label(std::move(lab)) {}

bool Emp::excites(int node) const {
    return std::binary_search(excited.begin(), excited.end(), node);
}

bool Emp::measures(int node) const {
    return std::binary_search(measured.begin(), measured.end(), node);
}

std::string Emp::to_string() const {
    return "(" + set_to_string(excited) + "," + set_to_string(measured) + ")";
}

bool operator==(const Emp& a, const Emp& b) {
    return a.excited == b.excited && a.measured == b.measured;
}

bool validate_necessary(const Emp& emp, int n) {
    std::vector<bool> covered(static_cast<size_t>(n) + 1, false);
    for (int i : emp.excited) {
        if (i < 1 || i > n) return false;
        covered[static_cast<size_t>(i)] = true;
    }
    for (int j : emp.measured) {
        if (j < 1 || j > n) return false;
        covered[static_cast<size_t>(j)] = true;
    }
    for (int k = 1; k <= n; ++k) {
        if (!covered[static_cast<size_t>(k)]) return false;
    }
    return true;
}

std::vector<Emp> enumerate_branch_emps(int n) {
    if (n < 2) {
        throw ValidationError("branch enumeration needs n >= 2, got " + std::to_string(n));
    }
    if (n == 4) return branch4_table();
    // Countdown order: label k = 1..2^(n-2); interior node m is excited iff
    // bit (n-1-m) of (2^(n-2) - k) is set. Node 2 toggles slowest, and the
    // all-excited pattern comes first.
    const int m = n - 2;
    const long total = 1L << m;
    std::vector<Emp> out;
    out.reserve(static_cast<size_t>(total));
    for (long k = 1; k <= total; ++k) {
        const long bits = total - k;
        std::vector<int> b = {1};
        std::vector<int> c = {n};
        for (int node = 2; node <= n - 1; ++node) {
            if ((bits >> (n - 1 - node)) & 1) {
                b.push_back(node);
            } else {
                c.push_back(node);
            }
        }
        std::string label = (n == 2 || n == 3) ? roman(static_cast<int>(k)) : std::to_string(k);
        out.emplace_back(std::move(b), std::move(c), std::move(label));
    }
    return out;
}

std::vector<Emp> enumerate_cycle_emps(int n) {
    if (n < 2) {
        throw ValidationError("cycle enumeration needs n >= 2, got " + std::to_string(n));
    }
    if (n == 2) return cycle2_table();
    if (n == 3) return cycle3_table();
    if (n % 2 == 0) {
        std::vector<int> odd, even;
        for (int i = 1; i <= n; ++i) {
            (i % 2 == 1 ? odd : even).push_back(i);
        }
        return {Emp(odd, even, "I"), Emp(even, odd, "II")};
    }
    // Odd ring: one doubled node d, every other node in exactly one role.
    // Order: d ascending; within a d, a binary count over the other nodes in
    // ascending index order, lowest index most significant, excite before
    // measure.
    std::vector<Emp> out;
    out.reserve(static_cast<size_t>(n) << (n - 1));
    int label = 1;
    for (int d = 1; d <= n; ++d) {
        std::vector<int> others;
        for (int i = 1; i <= n; ++i) {
            if (i != d) others.push_back(i);
        }
        const long combos = 1L << others.size();
        for (long v = 0; v < combos; ++v) {
            std::vector<int> b = {d};
            std::vector<int> c = {d};
            for (size_t p = 0; p < others.size(); ++p) {
                const bool measure = (v >> (others.size() - 1 - p)) & 1;
                (measure ? c : b).push_back(others[p]);
            }
            out.emplace_back(std::move(b), std::move(c), std::to_string(label++));
        }
    }
    return out;
}

std::vector<Emp> enumerate_constrained(const std::vector<RoleConstraint>& constraints, int n) {
    std::vector<bool> seen_node(static_cast<size_t>(n) + 1, false);
    std::vector<int> excited_base, measured_base, either_nodes;
    std::map<int, std::vector<int>> groups;
    for (const RoleConstraint& rc : constraints) {
        if (rc.node < 1 || rc.node > n) {
            throw ValidationError("constraint node " + std::to_string(rc.node) + " out of range");
        }
        if (seen_node[static_cast<size_t>(rc.node)]) {
            throw ValidationError("node " + std::to_string(rc.node) + " has two role constraints");
        }
        seen_node[static_cast<size_t>(rc.node)] = true;
        switch (rc.role) {
            case Role::MustExcite: excited_base.push_back(rc.node); break;
            case Role::MustMeasure: measured_base.push_back(rc.node); break;
            case Role::Both:
                excited_base.push_back(rc.node);
                measured_base.push_back(rc.node);
                break;
            case Role::Either: either_nodes.push_back(rc.node); break;
            case Role::OneOfGroupBoth: groups[rc.group].push_back(rc.node); break;
        }
    }
    for (int i = 1; i <= n; ++i) {
        if (!seen_node[static_cast<size_t>(i)]) {
            throw ValidationError("no role constraint for node " + std::to_string(i));
        }
    }
    std::sort(either_nodes.begin(), either_nodes.end());
    for (auto& [id, members] : groups) std::sort(members.begin(), members.end());

    std::vector<Emp> out;
    std::set<std::string> dedup;
    // Choice slots, explored depth-first: for each group (ascending id) the
    // doubled member then the single roles of the remaining members; then
    // the Either nodes. Excite is explored before measure everywhere.
    std::vector<std::pair<int, std::vector<int>>> group_list(groups.begin(), groups.end());

    auto emit = [&](std::vector<int> b, std::vector<int> c) {
        Emp e(std::move(b), std::move(c));
        if (dedup.insert(pair_key(e)).second) {
            e.label = std::to_string(out.size() + 1);
            out.push_back(std::move(e));
        }
    };

    std::function<void(size_t, std::vector<int>, std::vector<int>)> expand_either =
        [&](size_t idx, std::vector<int> b, std::vector<int> c) {
            if (idx == either_nodes.size()) {
                emit(std::move(b), std::move(c));
                return;
            }
            const int node = either_nodes[idx];
            {
                auto b2 = b;
                b2.push_back(node);
                expand_either(idx + 1, std::move(b2), c);
            }
            {
                auto c2 = c;
                c2.push_back(node);
                expand_either(idx + 1, std::move(b), std::move(c2));
            }
        };

    std::function<void(size_t, std::vector<int>, std::vector<int>)> expand_groups =
        [&](size_t gi, std::vector<int> b, std::vector<int> c) {
            if (gi == group_list.size()) {
                expand_either(0, std::move(b), std::move(c));
                return;
            }
            const auto& members = group_list[gi].second;
            for (int doubled : members) {
                std::vector<int> rest;
                for (int m : members) {
                    if (m != doubled) rest.push_back(m);
                }
                const long combos = 1L << rest.size();
                for (long v = 0; v < combos; ++v) {
                    auto b2 = b;
                    auto c2 = c;
                    b2.push_back(doubled);
                    c2.push_back(doubled);
                    for (size_t p = 0; p < rest.size(); ++p) {
                        const bool measure = (v >> (rest.size() - 1 - p)) & 1;
                        (measure ? c2 : b2).push_back(rest[p]);
                    }
                    expand_groups(gi + 1, std::move(b2), std::move(c2));
                }
            }
        };

    expand_groups(0, excited_base, measured_base);
    return out;
}

std::vector<Emp> enumerate_hybrid6() { return hybrid6_table(); }

std::vector<RoleConstraint> hybrid6_constraints() {
    return {
        {1, Role::MustExcite, -1},
        {2, Role::Either, -1},
        {3, Role::OneOfGroupBoth, 0},
        {4, Role::OneOfGroupBoth, 0},
        {5, Role::OneOfGroupBoth, 0},
        {6, Role::MustMeasure, -1},
    };
}

bool is_hybrid6_topology(const NetworkModel& model) {
    if (model.node_count() != 6 || model.parameter_count() != 6) return false;
    static const std::set<std::pair<int, int>> expected = {
        {1, 2}, {2, 3}, {5, 3}, {3, 4}, {4, 5}, {5, 6}};
    std::set<std::pair<int, int>> got;
    for (const Edge& e : model.edges()) got.insert({e.from, e.to});
    return got == expected;
}

std::vector<Emp> enumerate_for(const NetworkModel& model) {
    switch (model.topology()) {
        case Topology::Branch:
            return enumerate_branch_emps(model.node_count());
        case Topology::Cycle:
            return enumerate_cycle_emps(model.node_count());
        case Topology::General:
            break;
    }
    if (is_hybrid6_topology(model)) {
        return enumerate_hybrid6();
    }
    throw ValidationError("no enumeration rule for this general topology; "
                          "supply an explicit pattern list");
}

std::vector<Edge> direct_modules(const Emp& emp, const NetworkModel& model) {
    std::vector<Edge> out;
    for (const Edge& e : model.edges()) {
        if (emp.excites(e.from) && emp.measures(e.to)) out.push_back(e);
    }
    return out;
}

bool largest_module_is_direct(const Emp& emp, const NetworkModel& model) {
    double best = -1.0;
    for (const Edge& e : model.edges()) best = std::max(best, std::abs(e.gain));
    for (const Edge& e : model.edges()) {
        if (std::abs(e.gain) == best && emp.excites(e.from) && emp.measures(e.to)) {
            return true;
        }
    }
    return false;
}

} // namespace netopt
