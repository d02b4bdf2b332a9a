// netopt: enumerate excitation/measurement patterns, rank them by the
// trace of the asymptotic parameter covariance, rerun the bundled
// reference tables and random studies, and cross-check the analytic
// engine against a long simulation.

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "netopt/emp.hpp"
#include "netopt/errors.hpp"
#include "netopt/info.hpp"
#include "netopt/io.hpp"
#include "netopt/model.hpp"
#include "netopt/rng.hpp"
#include "netopt/sim.hpp"
#include "netopt/study.hpp"
#include "netopt/tables.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitAcceptance = 4;

struct CliConfig {
    std::string network_path;
    std::string config_path;
    std::string spec_path;
    std::string out_path;
    std::string format = "pretty";
    std::string table_id;
    std::string emp_label;
    int cycle_n = 0;
    int branch_n = 0;
    bool hybrid6 = false;
    long n_override = -1;
    std::uint64_t seed = 17;
    bool seed_given = false;
    double tol = 4.0;
};

void emit(const CliConfig& cli, const std::string& text) {
    if (cli.out_path.empty()) {
        std::cout << text;
    } else {
        netopt::write_text_file(cli.out_path, text);
    }
}

netopt::NetworkModel placeholder_model(const CliConfig& cli) {
    if (cli.branch_n > 0) {
        return netopt::build_branch(cli.branch_n,
                                    std::vector<double>(cli.branch_n - 1, 0.5));
    }
    return netopt::build_cycle(cli.cycle_n, std::vector<double>(cli.cycle_n, 0.5));
}

int cmd_enumerate(const CliConfig& cli) {
    netopt::NetworkModel model =
        cli.network_path.empty() ? placeholder_model(cli)
                                 : netopt::read_network_file(cli.network_path);
    const std::vector<netopt::Emp> emps = netopt::enumerate_for(model);
    if (cli.format == "csv") {
        emit(cli, netopt::emps_to_csv(emps, &model));
    } else if (cli.format == "json") {
        emit(cli, netopt::emps_to_json(emps, &model));
    } else {
        emit(cli, netopt::emps_to_pretty(emps, &model));
    }
    return 0;
}

int cmd_rank(const CliConfig& cli) {
    const netopt::NetworkModel model = netopt::read_network_file(cli.network_path);
    const netopt::SignalConfig config =
        cli.config_path.empty()
            ? netopt::SignalConfig::uniform(model.node_count(), 1.0, 0.01)
            : netopt::read_signal_config_file(cli.config_path, model.node_count());
    const std::vector<netopt::Emp> emps = netopt::enumerate_for(model);
    const std::vector<netopt::RankedEmp> ranking =
        netopt::rank_emps(model, emps, config);
    if (cli.format == "csv") {
        emit(cli, netopt::ranking_to_csv(ranking, model));
    } else if (cli.format == "json") {
        emit(cli, netopt::ranking_to_json(ranking, model));
    } else {
        emit(cli, netopt::ranking_to_pretty(ranking, model));
    }
    return 0;
}

int cmd_reproduce(const CliConfig& cli) {
    const netopt::TableReport report =
        netopt::reproduce_table(cli.table_id, cli.n_override, cli.seed);
    if (cli.format == "csv") {
        emit(cli, netopt::table_to_csv(report));
    } else if (cli.format == "json") {
        emit(cli, netopt::table_to_json(report));
    } else {
        emit(cli, netopt::table_to_pretty(report));
    }
    return report.passed() ? 0 : kExitAcceptance;
}

int cmd_study(const CliConfig& cli) {
    netopt::StudySpec spec;
    if (!cli.spec_path.empty()) {
        spec = netopt::read_study_spec_file(cli.spec_path);
    } else if (cli.branch_n > 0) {
        spec.topology = netopt::StudyTopology::Branch;
        spec.n = cli.branch_n;
        spec.gains = netopt::Distribution::uniform(0.0, 50.0);
        spec.sigma2 = netopt::Distribution::uniform(0.0, 50.0);
        spec.lambda = netopt::Distribution::uniform(0.0, 50.0);
    } else if (cli.hybrid6) {
        spec.topology = netopt::StudyTopology::Hybrid6;
        spec.n = 6;
    } else {
        spec.topology = netopt::StudyTopology::Cycle;
        spec.n = cli.cycle_n;
    }
    if (cli.n_override > 0) spec.num_networks = static_cast<int>(cli.n_override);
    if (cli.seed_given) spec.master_seed = cli.seed;
    const netopt::StudyReport report = netopt::run_study(spec);
    if (cli.format == "csv") {
        emit(cli, netopt::study_to_csv(report));
    } else if (cli.format == "json") {
        emit(cli, netopt::study_to_json(report));
    } else {
        emit(cli, netopt::study_to_pretty(report));
    }
    return 0;
}

struct VerifyRow {
    std::string label;
    std::string pattern;
    double max_z = 0.0;
    long samples = 0;
};

int cmd_verify(const CliConfig& cli) {
    const netopt::NetworkModel model = netopt::read_network_file(cli.network_path);
    const netopt::SignalConfig config =
        cli.config_path.empty()
            ? netopt::SignalConfig::uniform(model.node_count(), 1.0, 0.01)
            : netopt::read_signal_config_file(cli.config_path, model.node_count());
    std::vector<netopt::Emp> emps = netopt::enumerate_for(model);
    if (!cli.emp_label.empty()) {
        std::vector<netopt::Emp> picked;
        for (const netopt::Emp& e : emps) {
            if (e.label == cli.emp_label) picked.push_back(e);
        }
        if (picked.empty()) {
            throw netopt::ValidationError("no pattern labelled '" + cli.emp_label + "'");
        }
        emps = picked;
    }
    const long samples = cli.n_override > 0 ? cli.n_override : 1000000L;

    std::vector<VerifyRow> rows;
    double worst = 0.0;
    for (size_t i = 0; i < emps.size(); ++i) {
        const netopt::InfoResult analytic =
            netopt::information_matrix(model, emps[i], config);
        const netopt::SimTrace trace = netopt::simulate_information(
            model, emps[i], config, samples,
            netopt::derive_seed(cli.seed, static_cast<std::uint64_t>(i)));
        double max_z = 0.0;
        for (int r = 0; r < analytic.info.rows(); ++r) {
            for (int c = 0; c < analytic.info.cols(); ++c) {
                const double diff = trace.empirical_info(r, c) - analytic.info(r, c);
                const double se = trace.standard_error(r, c);
                double z = 0.0;
                if (se > 0.0) {
                    z = std::abs(diff) / se;
                } else if (diff != 0.0) {
                    z = std::numeric_limits<double>::infinity();
                }
                max_z = std::max(max_z, z);
            }
        }
        worst = std::max(worst, max_z);
        rows.push_back({emps[i].label, emps[i].to_string(), max_z, trace.samples});
    }
    const bool passed = worst < cli.tol;

    std::ostringstream os;
    if (cli.format == "csv") {
        os << "label,pattern,max_abs_z,samples,pass\n";
        for (const VerifyRow& row : rows) {
            os << row.label << ",\"" << row.pattern << "\"," << std::setprecision(4)
               << row.max_z << "," << row.samples << ","
               << (row.max_z < cli.tol ? "true" : "false") << "\n";
        }
    } else if (cli.format == "json") {
        os << "{\n  \"threshold\": " << cli.tol << ",\n  \"passed\": "
           << (passed ? "true" : "false") << ",\n  \"patterns\": [\n";
        for (size_t i = 0; i < rows.size(); ++i) {
            os << "    {\"label\": \"" << rows[i].label << "\", \"max_abs_z\": "
               << std::setprecision(4) << rows[i].max_z << ", \"samples\": "
               << rows[i].samples << "}" << (i + 1 < rows.size() ? "," : "") << "\n";
        }
        os << "  ]\n}\n";
    } else {
        os << "simulation cross-check, " << samples << " samples per pattern, seed "
           << cli.seed << "\n";
        for (const VerifyRow& row : rows) {
            os << std::left << std::setw(7) << row.label << std::setw(26) << row.pattern
               << "max |z| = " << std::setprecision(4) << row.max_z
               << (row.max_z < cli.tol ? "" : "  EXCEEDS") << "\n";
        }
        os << (passed ? "PASS" : "FAIL") << " (threshold " << cli.tol << ")\n";
    }
    emit(cli, os.str());
    return passed ? 0 : kExitAcceptance;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal excitation/measurement allocation for dynamic networks"};
    app.require_subcommand(1);
    CliConfig cli;

    app.add_option("--out", cli.out_path, "Write the report to a file instead of stdout");
    app.add_option("--format", cli.format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "pretty"}))
        ->capture_default_str();

    CLI::App* enumerate = app.add_subcommand(
        "enumerate", "List the minimal excitation/measurement patterns of a topology");
    enumerate->fallthrough();
    auto* en_cycle = enumerate->add_option("--cycle", cli.cycle_n, "Ring with n nodes")
                         ->check(CLI::PositiveNumber);
    auto* en_branch = enumerate->add_option("--branch", cli.branch_n, "Chain with n nodes")
                          ->check(CLI::PositiveNumber);
    auto* en_net = enumerate->add_option("--network", cli.network_path,
                                         "Network JSON file")
                       ->check(CLI::ExistingFile);
    en_cycle->excludes(en_branch)->excludes(en_net);
    en_branch->excludes(en_net);

    CLI::App* rank = app.add_subcommand(
        "rank", "Rank all patterns of a network by ascending covariance trace");
    rank->fallthrough();
    rank->add_option("--network", cli.network_path, "Network JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    rank->add_option("--config", cli.config_path,
                     "Signal config JSON (default: sigma2 = 1, lambda = 0.01)")
        ->check(CLI::ExistingFile);

    CLI::App* reproduce = app.add_subcommand(
        "reproduce", "Recompute a bundled reference table and compare cell by cell");
    reproduce->fallthrough();
    reproduce->add_option("table", cli.table_id, "Table id, e.g. table1 or conjecture")
        ->required();
    reproduce->add_option("--n", cli.n_override, "Networks to sample (statistical tables)")
        ->check(CLI::PositiveNumber);
    reproduce->add_option("--seed", cli.seed, "Master seed")->capture_default_str();

    CLI::App* study = app.add_subcommand(
        "study", "Sample random networks and tally the winning pattern");
    study->fallthrough();
    auto* st_cycle = study->add_option("--cycle", cli.cycle_n, "Ring with n nodes")
                         ->check(CLI::PositiveNumber);
    auto* st_branch = study->add_option("--branch", cli.branch_n, "Chain with n nodes")
                          ->check(CLI::PositiveNumber);
    auto* st_hybrid = study->add_flag("--hybrid6", cli.hybrid6,
                                      "Bundled 6-node hybrid topology");
    auto* st_spec = study->add_option("--config", cli.spec_path, "Study spec JSON file")
                        ->check(CLI::ExistingFile);
    st_cycle->excludes(st_branch)->excludes(st_hybrid)->excludes(st_spec);
    st_branch->excludes(st_hybrid)->excludes(st_spec);
    st_hybrid->excludes(st_spec);
    study->add_option("--n", cli.n_override, "Number of networks")
        ->check(CLI::PositiveNumber);
    study->add_option("--seed", cli.seed, "Master seed")->capture_default_str();

    CLI::App* verify = app.add_subcommand(
        "verify", "Cross-check the analytic information matrix against a simulation");
    verify->fallthrough();
    verify->add_option("--network", cli.network_path, "Network JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    verify->add_option("--config", cli.config_path,
                       "Signal config JSON (default: sigma2 = 1, lambda = 0.01)")
        ->check(CLI::ExistingFile);
    verify->add_option("--emp", cli.emp_label, "Check a single pattern by label");
    verify->add_option("--n", cli.n_override, "Simulation samples (default 1e6)")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", cli.seed, "Master seed")->capture_default_str();
    verify->add_option("--tol", cli.tol, "Max allowed |z| score")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    try {
        app.parse(argc, argv);
        cli.seed_given = reproduce->count("--seed") > 0 || study->count("--seed") > 0 ||
                         verify->count("--seed") > 0;
        if (enumerate->parsed()) {
            if (cli.cycle_n == 0 && cli.branch_n == 0 && cli.network_path.empty()) {
                throw netopt::ValidationError(
                    "enumerate needs one of --cycle, --branch, --network");
            }
            return cmd_enumerate(cli);
        }
        if (rank->parsed()) return cmd_rank(cli);
        if (reproduce->parsed()) return cmd_reproduce(cli);
        if (study->parsed()) {
            if (cli.spec_path.empty() && cli.cycle_n == 0 && cli.branch_n == 0 &&
                !cli.hybrid6) {
                throw netopt::ValidationError(
                    "study needs one of --cycle, --branch, --hybrid6, --config");
            }
            return cmd_study(cli);
        }
        if (verify->parsed()) return cmd_verify(cli);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const netopt::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const netopt::InstabilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const netopt::DegenerateParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
