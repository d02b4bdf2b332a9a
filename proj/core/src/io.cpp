#include "netopt/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace netopt {
namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("invalid JSON: ") + e.what());
    }
}

std::string join(const std::vector<int>& v, char sep) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

std::string join_edges(const std::vector<Edge>& edges, char sep) {
    std::string out;
    for (size_t i = 0; i < edges.size(); ++i) {
        if (i) out += sep;
        out += edges[i].id();
    }
    return out;
}

double get_number(const json& j, const std::string& what) {
    if (!j.is_number()) throw ValidationError(what + " must be a number");
    return j.get<double>();
}

int get_int(const json& j, const std::string& what) {
    if (!j.is_number_integer()) throw ValidationError(what + " must be an integer");
    return j.get<int>();
}

std::map<int, double> parse_node_map(const json& j, int node_count,
                                     const std::string& what) {
    if (!j.is_object()) {
        throw ValidationError(what + " must be an object of node values or {\"uniform\": v}");
    }
    std::map<int, double> out;
    if (j.contains("uniform")) {
        if (j.size() != 1) {
            throw ValidationError(what + ": \"uniform\" cannot be mixed with node keys");
        }
        const double v = get_number(j.at("uniform"), what + ".uniform");
        for (int node = 1; node <= node_count; ++node) out[node] = v;
        return out;
    }
    for (const auto& [key, value] : j.items()) {
        int node = 0;
        try {
            size_t pos = 0;
            node = std::stoi(key, &pos);
            if (pos != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw ValidationError(what + ": node key '" + key + "' is not an integer");
        }
        if (node < 1 || node > node_count) {
            throw ValidationError(what + ": node " + key + " out of range 1.." +
                                  std::to_string(node_count));
        }
        out[node] = get_number(value, what + "." + key);
    }
    return out;
}

Distribution parse_distribution(const json& j, const std::string& what) {
    if (!j.is_object()) {
        throw ValidationError(what + " must be {\"fixed\": v} or {\"uniform\": [lo, hi]}");
    }
    if (j.contains("fixed")) {
        return Distribution::fixed(get_number(j.at("fixed"), what + ".fixed"));
    }
    if (j.contains("uniform")) {
        const json& u = j.at("uniform");
        if (!u.is_array() || u.size() != 2) {
            throw ValidationError(what + ".uniform must be [lo, hi]");
        }
        return Distribution::uniform(get_number(u[0], what + ".uniform[0]"),
                                     get_number(u[1], what + ".uniform[1]"));
    }
    throw ValidationError(what + " must contain \"fixed\" or \"uniform\"");
}

json number_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

json emp_json(const Emp& e) {
    return {{"label", e.label}, {"excited", e.excited}, {"measured", e.measured},
            {"nu", e.cardinality()}};
}

json info_json(const InfoResult& r) {
    json vars = json::object();
    for (const auto& [id, v] : r.variances) vars[id] = v;
    return {{"emp", emp_json(r.emp)},
            {"trace", number_or_null(r.trace)},
            {"variances", vars},
            {"singular", r.singular},
            {"condition_number", number_or_null(r.condition_number)}};
}

} // namespace

NetworkModel parse_network_json(const std::string& text) {
    const json j = parse_or_throw(text);
    if (!j.is_object()) throw ValidationError("network file must hold a JSON object");
    if (j.contains("kind")) {
        if (!j.at("kind").is_string()) throw ValidationError("\"kind\" must be a string");
        const std::string kind = j.at("kind").get<std::string>();
        if (!j.contains("n")) throw ValidationError("generated network needs \"n\"");
        const int n = get_int(j.at("n"), "n");
        if (!j.contains("gains") || !j.at("gains").is_array()) {
            throw ValidationError("generated network needs a \"gains\" array");
        }
        std::vector<double> gains;
        for (const auto& g : j.at("gains")) gains.push_back(get_number(g, "gains[]"));
        if (kind == "cycle") return build_cycle(n, gains);
        if (kind == "branch") return build_branch(n, gains);
        throw ValidationError("unknown network kind '" + kind + "'");
    }
    if (!j.contains("n") || !j.contains("edges")) {
        throw ValidationError("network object needs \"n\" and \"edges\" (or \"kind\")");
    }
    const int n = get_int(j.at("n"), "n");
    if (!j.at("edges").is_array()) throw ValidationError("\"edges\" must be an array");
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3) {
            throw ValidationError("each edge must be [from, to, gain]");
        }
        edges.push_back({get_int(e[0], "edge from"), get_int(e[1], "edge to"),
                         get_number(e[2], "edge gain")});
    }
    return build_general(n, edges);
}

NetworkModel read_network_file(const std::string& path) {
    return parse_network_json(read_text_file(path));
}

SignalConfig parse_signal_config_json(const std::string& text, int node_count) {
    const json j = parse_or_throw(text);
    if (!j.is_object() || !j.contains("sigma2") || !j.contains("lambda")) {
        throw ValidationError("signal config needs \"sigma2\" and \"lambda\" objects");
    }
    SignalConfig cfg;
    cfg.sigma2 = parse_node_map(j.at("sigma2"), node_count, "sigma2");
    cfg.lambda = parse_node_map(j.at("lambda"), node_count, "lambda");
    return cfg;
}

SignalConfig read_signal_config_file(const std::string& path, int node_count) {
    return parse_signal_config_json(read_text_file(path), node_count);
}

StudySpec parse_study_spec_json(const std::string& text) {
    const json j = parse_or_throw(text);
    if (!j.is_object()) throw ValidationError("study spec must hold a JSON object");
    StudySpec spec;
    if (j.contains("topology")) {
        const std::string t = j.at("topology").get<std::string>();
        if (t == "branch") {
            spec.topology = StudyTopology::Branch;
        } else if (t == "cycle") {
            spec.topology = StudyTopology::Cycle;
        } else if (t == "hybrid6") {
            spec.topology = StudyTopology::Hybrid6;
            spec.n = 6;
        } else {
            throw ValidationError("unknown topology '" + t + "'");
        }
    }
    if (j.contains("n")) spec.n = get_int(j.at("n"), "n");
    if (j.contains("num_networks")) {
        spec.num_networks = get_int(j.at("num_networks"), "num_networks");
    }
    if (j.contains("gains")) spec.gains = parse_distribution(j.at("gains"), "gains");
    if (j.contains("sigma2")) spec.sigma2 = parse_distribution(j.at("sigma2"), "sigma2");
    if (j.contains("lambda")) spec.lambda = parse_distribution(j.at("lambda"), "lambda");
    if (j.contains("master_seed")) {
        spec.master_seed = j.at("master_seed").get<std::uint64_t>();
    }
    return spec;
}

StudySpec read_study_spec_file(const std::string& path) {
    return parse_study_spec_json(read_text_file(path));
}

std::string emps_to_csv(const std::vector<Emp>& emps, const NetworkModel* model) {
    std::ostringstream os;
    os << "label,excited,measured,nu";
    if (model) os << ",direct_modules,largest_direct";
    os << "\n";
    for (const Emp& e : emps) {
        os << e.label << "," << join(e.excited, ';') << "," << join(e.measured, ';')
           << "," << e.cardinality();
        if (model) {
            os << "," << join_edges(direct_modules(e, *model), ';') << ","
               << (largest_module_is_direct(e, *model) ? "true" : "false");
        }
        os << "\n";
    }
    return os.str();
}

std::string emps_to_json(const std::vector<Emp>& emps, const NetworkModel* model) {
    json arr = json::array();
    for (const Emp& e : emps) {
        json item = emp_json(e);
        if (model) {
            json direct = json::array();
            for (const Edge& d : direct_modules(e, *model)) direct.push_back(d.id());
            item["direct_modules"] = direct;
            item["largest_direct"] = largest_module_is_direct(e, *model);
        }
        arr.push_back(std::move(item));
    }
    return arr.dump(2) + "\n";
}

std::string emps_to_pretty(const std::vector<Emp>& emps, const NetworkModel* model) {
    std::ostringstream os;
    os << std::left << std::setw(6) << "label" << std::setw(26) << "pattern"
       << std::setw(5) << "nu";
    if (model) os << "direct modules";
    os << "\n";
    for (const Emp& e : emps) {
        os << std::left << std::setw(6) << e.label << std::setw(26) << e.to_string()
           << std::setw(5) << e.cardinality();
        if (model) {
            os << join_edges(direct_modules(e, *model), ' ');
            if (largest_module_is_direct(e, *model)) os << "  [largest direct]";
        }
        os << "\n";
    }
    return os.str();
}

std::string info_to_json(const InfoResult& result) {
    return info_json(result).dump(2) + "\n";
}

std::string ranking_to_csv(const std::vector<RankedEmp>& ranking,
                           const NetworkModel& model) {
    std::ostringstream os;
    os << "rank,label,excited,measured,nu,trace,singular,condition_number,"
          "direct_modules,largest_direct\n";
    os << std::setprecision(12);
    for (size_t r = 0; r < ranking.size(); ++r) {
        const InfoResult& res = ranking[r].result;
        os << (r + 1) << "," << res.emp.label << "," << join(res.emp.excited, ';')
           << "," << join(res.emp.measured, ';') << "," << res.emp.cardinality() << ",";
        if (res.singular) {
            os << "inf";
        } else {
            os << res.trace;
        }
        os << "," << (res.singular ? "true" : "false") << "," << res.condition_number
           << "," << join_edges(direct_modules(res.emp, model), ';') << ","
           << (largest_module_is_direct(res.emp, model) ? "true" : "false") << "\n";
    }
    return os.str();
}

std::string ranking_to_json(const std::vector<RankedEmp>& ranking,
                            const NetworkModel& model) {
    json arr = json::array();
    for (size_t r = 0; r < ranking.size(); ++r) {
        json item = info_json(ranking[r].result);
        item["rank"] = r + 1;
        item["enumeration_index"] = ranking[r].enumeration_index;
        json direct = json::array();
        for (const Edge& d : direct_modules(ranking[r].result.emp, model)) {
            direct.push_back(d.id());
        }
        item["direct_modules"] = direct;
        item["largest_direct"] = largest_module_is_direct(ranking[r].result.emp, model);
        arr.push_back(std::move(item));
    }
    return arr.dump(2) + "\n";
}

std::string ranking_to_pretty(const std::vector<RankedEmp>& ranking,
                              const NetworkModel& model) {
    std::ostringstream os;
    os << std::left << std::setw(6) << "rank" << std::setw(7) << "label"
       << std::setw(26) << "pattern" << std::setw(14) << "trace" << std::setw(22)
       << "direct modules"
       << "notes\n";
    for (size_t r = 0; r < ranking.size(); ++r) {
        const InfoResult& res = ranking[r].result;
        std::ostringstream trace;
        if (res.singular) {
            trace << "singular";
        } else {
            trace << std::setprecision(6) << res.trace;
        }
        os << std::left << std::setw(6) << (r + 1) << std::setw(7) << res.emp.label
           << std::setw(26) << res.emp.to_string() << std::setw(14) << trace.str()
           << std::setw(22) << join_edges(direct_modules(res.emp, model), ' ');
        if (largest_module_is_direct(res.emp, model)) os << "largest module direct";
        os << "\n";
    }
    return os.str();
}

std::string study_to_csv(const StudyReport& report) {
    std::ostringstream os;
    os << "emp_label,wins,percent\n";
    for (size_t i = 0; i < report.emps.size(); ++i) {
        os << report.emps[i].label << "," << report.wins[i] << ","
           << std::setprecision(6) << report.percent[i] << "\n";
    }
    return os.str();
}

std::string study_to_json(const StudyReport& report) {
    json results = json::array();
    for (size_t i = 0; i < report.emps.size(); ++i) {
        results.push_back({{"emp", emp_json(report.emps[i])},
                           {"wins", report.wins[i]},
                           {"percent", report.percent[i]}});
    }
    const json j = {{"num_networks", report.num_networks},
                    {"degenerate", report.degenerate},
                    {"master_seed", report.master_seed},
                    {"largest_direct_wins", report.largest_direct_wins},
                    {"largest_direct_percent", report.largest_direct_percent},
                    {"results", results}};
    return j.dump(2) + "\n";
}

std::string study_to_pretty(const StudyReport& report) {
    std::ostringstream os;
    os << "networks: " << report.num_networks << "  degenerate: " << report.degenerate
       << "  seed: " << report.master_seed << "\n";
    os << "largest module direct in winner: " << std::setprecision(4)
       << report.largest_direct_percent << "%\n\n";
    os << std::left << std::setw(7) << "label" << std::setw(26) << "pattern"
       << std::setw(8) << "wins"
       << "percent\n";
    for (size_t i = 0; i < report.emps.size(); ++i) {
        if (report.wins[i] == 0) continue;
        os << std::left << std::setw(7) << report.emps[i].label << std::setw(26)
           << report.emps[i].to_string() << std::setw(8) << report.wins[i]
           << std::setprecision(4) << report.percent[i] << "%\n";
    }
    return os.str();
}

std::string table_to_csv(const TableReport& report) {
    std::ostringstream os;
    os << "check,expected,actual,pass\n";
    for (const TableCheck& c : report.checks) {
        os << c.label << "," << c.expected << "," << c.actual << ","
           << (c.pass ? "true" : "false") << "\n";
    }
    return os.str();
}

std::string table_to_json(const TableReport& report) {
    json checks = json::array();
    for (const TableCheck& c : report.checks) {
        checks.push_back({{"check", c.label},
                          {"expected", c.expected},
                          {"actual", c.actual},
                          {"pass", c.pass}});
    }
    const json j = {{"id", report.id},
                    {"title", report.title},
                    {"num_networks", report.num_networks},
                    {"seed", report.seed},
                    {"passed", report.passed()},
                    {"checks", checks}};
    return j.dump(2) + "\n";
}

std::string table_to_pretty(const TableReport& report) {
    std::ostringstream os;
    os << report.id << ": " << report.title << "\n";
    if (report.num_networks > 0) {
        os << "networks: " << report.num_networks << "  seed: " << report.seed << "\n";
    }
    size_t label_w = 10, exp_w = 10;
    for (const TableCheck& c : report.checks) {
        label_w = std::max(label_w, c.label.size() + 2);
        exp_w = std::max(exp_w, c.expected.size() + 2);
    }
    for (const TableCheck& c : report.checks) {
        os << std::left << std::setw(static_cast<int>(label_w)) << c.label
           << std::setw(static_cast<int>(exp_w)) << c.expected << std::setw(28)
           << c.actual << (c.pass ? "ok" : "MISMATCH") << "\n";
    }
    os << (report.passed() ? "PASS" : "FAIL") << " (" << report.checks.size()
       << " checks)\n";
    return os.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << content;
}

} // namespace netopt
