#ifndef NETOPT_TABLES_HPP
#define NETOPT_TABLES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace netopt {

struct TableCheck {
    std::string label;
    std::string expected;
    std::string actual;
    bool pass = false;
};

struct TableReport {
    std::string id;
    std::string title;
    long num_networks = -1;  // -1 for deterministic tables
    std::uint64_t seed = 0;
    std::vector<TableCheck> checks;

    bool passed() const;
};

// Identifiers accepted by reproduce_table.
std::vector<std::string> supported_table_ids();

// Recomputes one bundled reference table and compares it cell by cell (for
// the deterministic tables) or by distribution-level criteria (for the
// random-study tables). num_networks <= 0 selects the default of 2000;
// deterministic tables ignore both num_networks and seed.
TableReport reproduce_table(const std::string& id, long num_networks = -1,
                            std::uint64_t seed = 17);

} // namespace netopt

#endif // NETOPT_TABLES_HPP
