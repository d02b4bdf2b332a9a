#ifndef NETOPT_IO_HPP
#define NETOPT_IO_HPP

#include <string>
#include <vector>

#include "netopt/emp.hpp"
#include "netopt/info.hpp"
#include "netopt/model.hpp"
#include "netopt/study.hpp"
#include "netopt/tables.hpp"

namespace netopt {

// Network description, either explicit or generated:
//   {"n": 3, "edges": [[1, 2, 0.5], [2, 3, 0.5], [3, 1, 0.5]]}
//   {"kind": "cycle", "n": 3, "gains": [0.5, 0.5, 0.5]}
// Edge entries are [from, to, gain]. Generated kinds are "cycle" and
// "branch" with gains in path order 1->2, 2->3, ...
NetworkModel parse_network_json(const std::string& text);
NetworkModel read_network_file(const std::string& path);

// Signal configuration:
//   {"sigma2": {"uniform": 1.0}, "lambda": {"1": 0.01, "2": 0.02, ...}}
// Node keys are 1-based. "uniform" assigns one value to nodes 1..n.
SignalConfig parse_signal_config_json(const std::string& text, int node_count);
SignalConfig read_signal_config_file(const std::string& path, int node_count);

// Study specification mirroring StudySpec:
//   {"topology": "branch", "n": 4, "num_networks": 2000,
//    "gains": {"uniform": [0, 50]}, "sigma2": {"fixed": 1},
//    "lambda": {"fixed": 0.01}, "master_seed": 17}
StudySpec parse_study_spec_json(const std::string& text);
StudySpec read_study_spec_file(const std::string& path);

// Report writers. The model parameter adds per-pattern direct-module
// annotations.
std::string emps_to_csv(const std::vector<Emp>& emps, const NetworkModel* model);
std::string emps_to_json(const std::vector<Emp>& emps, const NetworkModel* model);
std::string emps_to_pretty(const std::vector<Emp>& emps, const NetworkModel* model);

std::string info_to_json(const InfoResult& result);

std::string ranking_to_csv(const std::vector<RankedEmp>& ranking,
                           const NetworkModel& model);
std::string ranking_to_json(const std::vector<RankedEmp>& ranking,
                            const NetworkModel& model);
std::string ranking_to_pretty(const std::vector<RankedEmp>& ranking,
                              const NetworkModel& model);

std::string study_to_csv(const StudyReport& report);
std::string study_to_json(const StudyReport& report);
std::string study_to_pretty(const StudyReport& report);

std::string table_to_csv(const TableReport& report);
std::string table_to_json(const TableReport& report);
std::string table_to_pretty(const TableReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace netopt

#endif // NETOPT_IO_HPP
