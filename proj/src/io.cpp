#include "ccpg/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ccpg::io {

using nlohmann::json;

namespace {

std::vector<int> set_to_sorted(const VertexSet& s) { return s.members(); }

VertexSet set_from_json(const json& arr, int n) {
    VertexSet s(n);
    for (const auto& v : arr) s.insert(v.get<int>());
    return s;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::vector<std::string> default_labels(int n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) labels.push_back("x" + std::to_string(v));
    return labels;
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string dag_to_json(const Dag& dag, const std::vector<std::string>& labels) {
    json j;
    j["n"] = dag.n();
    j["edges"] = json::array();
    for (const auto& [u, v] : dag.edges()) j["edges"].push_back({u, v});
    if (!labels.empty()) {
        if (labels.size() != static_cast<size_t>(dag.n())) {
            throw std::invalid_argument("dag_to_json: label count mismatch");
        }
        j["labels"] = labels;
    }
    return j.dump(2) + "\n";
}

LabeledDag dag_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (!j.contains("n") || !j.contains("edges")) {
        throw std::invalid_argument("DAG JSON requires \"n\" and \"edges\"");
    }
    const int n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw std::invalid_argument("DAG JSON: bad edge entry");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    LabeledDag out{Dag(n, std::move(edges)), {}};
    if (j.contains("labels")) {
        out.labels = j.at("labels").get<std::vector<std::string>>();
        if (out.labels.size() != static_cast<size_t>(n)) {
            throw std::invalid_argument("DAG JSON: label count mismatch");
        }
    } else {
        out.labels = default_labels(n);
    }
    return out;
}

LabeledDag read_dag_file(const std::string& path) { return dag_from_json(read_text_file(path)); }

void write_dag_file(const std::string& path, const Dag& dag,
                    const std::vector<std::string>& labels) {
    write_text_file(path, dag_to_json(dag, labels));
}

std::string ccpg_to_json(const CcpgOutput& output) {
    json j;
    j["components"] = json::array();
    for (const auto& comp : output.components) j["components"].push_back(set_to_sorted(comp));
    j["edges"] = json::array();
    for (const auto& [a, b] : output.component_dag) j["edges"].push_back({a, b});
    j["layers"] = output.layer_of;
    j["ci_total"] = output.ci_stats.total;
    j["ci_unique"] = output.ci_stats.unique;
    return j.dump(2) + "\n";
}

CcpgOutput ccpg_from_json(const std::string& text, int n) {
    const json j = json::parse(text);
    CcpgOutput out;
    for (const auto& comp : j.at("components")) out.components.push_back(set_from_json(comp, n));
    for (const auto& e : j.at("edges")) out.component_dag.emplace_back(e[0].get<int>(), e[1].get<int>());
    out.layer_of = j.at("layers").get<std::vector<int>>();
    out.ci_stats.total = j.value("ci_total", uint64_t{0});
    out.ci_stats.unique = j.value("ci_unique", uint64_t{0});
    return out;
}

void write_ccpg_file(const std::string& path, const CcpgOutput& output) {
    write_text_file(path, ccpg_to_json(output));
}

CcpgOutput read_ccpg_file(const std::string& path, int n) {
    return ccpg_from_json(read_text_file(path), n);
}

std::string sem_to_json(const SemModel& model) {
    json j;
    j["n"] = model.g.n();
    j["edges"] = json::array();
    for (const auto& [u, v] : model.g.edges()) j["edges"].push_back({u, v});
    j["weights"] = model.weights;
    j["noise_std"] = model.noise_std;
    return j.dump(2) + "\n";
}

SemModel sem_from_json(const std::string& text) {
    const json j = json::parse(text);
    const int n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    SemModel model;
    model.g = Dag(n, std::move(edges));
    model.weights = j.at("weights").get<std::vector<double>>();
    model.noise_std = j.at("noise_std").get<std::vector<double>>();
    model.validate();
    return model;
}

void write_sem_file(const std::string& path, const SemModel& model) {
    write_text_file(path, sem_to_json(model));
}

SemModel read_sem_file(const std::string& path) { return sem_from_json(read_text_file(path)); }

void write_dataset_csv(const std::string& path, const Dataset& data,
                       const std::vector<std::string>& labels) {
    data.validate();
    std::vector<std::string> header = labels.empty() ? default_labels(data.n) : labels;
    if (header.size() != static_cast<size_t>(data.n)) {
        throw std::invalid_argument("write_dataset_csv: label count mismatch");
    }
    std::ostringstream out;
    for (int c = 0; c < data.n; ++c) {
        if (c) out << ',';
        out << header[static_cast<size_t>(c)];
    }
    out << '\n';
    for (long r = 0; r < data.m; ++r) {
        for (int c = 0; c < data.n; ++c) {
            if (c) out << ',';
            out << format_double(data.at(r, c));
        }
        out << '\n';
    }
    write_text_file(path, out.str());
}

Dataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV " + path);

    int n = 1;
    for (char ch : line) {
        if (ch == ',') ++n;
    }
    Dataset data;
    data.n = n;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        int c = 0;
        while (std::getline(row, cell, ',')) {
            data.values.push_back(std::stod(cell));
            ++c;
        }
        if (c != n) throw std::runtime_error("ragged CSV row in " + path);
        ++data.m;
    }
    data.validate();
    return data;
}

RegimeManifest read_manifest_file(const std::string& path, int n_hint) {
    const json j = json::parse(read_text_file(path));
    const auto base = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        if (p.empty()) return p;
        const std::filesystem::path fp(p);
        return fp.is_absolute() ? fp.string() : (base / fp).string();
    };

    RegimeManifest manifest;
    if (j.contains("observational")) {
        manifest.observational_path = resolve(j.at("observational").get<std::string>());
    }
    if (j.contains("interventions")) {
        int n = n_hint;
        if (n < 0) {
            // Infer the universe from the largest target when no hint given.
            for (const auto& item : j.at("interventions")) {
                for (const auto& t : item.at("targets")) n = std::max(n, t.get<int>() + 1);
            }
            n = std::max(n, 0);
        }
        RegimeId id = 0;
        for (const auto& item : j.at("interventions")) {
            manifest.interventions.push_back({id++, set_from_json(item.at("targets"), n)});
            manifest.intervention_paths.push_back(
                item.contains("path") ? resolve(item.at("path").get<std::string>()) : "");
        }
    }
    return manifest;
}

void write_manifest_file(const std::string& path, const RegimeManifest& manifest) {
    const auto base = std::filesystem::path(path).parent_path();
    auto relativize = [&](const std::string& p) {
        if (p.empty()) return p;
        return std::filesystem::relative(p, base).string();
    };
    json j;
    if (!manifest.observational_path.empty()) {
        j["observational"] = relativize(manifest.observational_path);
    }
    j["interventions"] = json::array();
    for (size_t i = 0; i < manifest.interventions.size(); ++i) {
        json item;
        item["targets"] = set_to_sorted(manifest.interventions[i].targets);
        if (i < manifest.intervention_paths.size() && !manifest.intervention_paths[i].empty()) {
            item["path"] = relativize(manifest.intervention_paths[i]);
        }
        j["interventions"].push_back(item);
    }
    write_text_file(path, j.dump(2) + "\n");
}

std::string traces_to_json(const std::vector<PrefixStepTrace>& steps) {
    json arr = json::array();
    for (const auto& step : steps) {
        json s;
        s["input"] = set_to_sorted(step.input_prefix);
        s["d"] = set_to_sorted(step.d_set);
        s["e"] = set_to_sorted(step.e_set);
        s["f"] = set_to_sorted(step.f_set);
        json jsets = json::object();
        for (const auto& [id, jset] : step.j_sets) jsets[std::to_string(id)] = set_to_sorted(jset);
        s["j"] = jsets;
        s["output"] = set_to_sorted(step.output_prefix);
        s["ci_total"] = step.queries_used.total;
        s["ci_unique"] = step.queries_used.unique;
        json wit = json::object();
        for (const auto& [w, tuple] : step.d_witness) wit["d" + std::to_string(w)] = tuple;
        for (const auto& [w, tuple] : step.e_witness) wit["e" + std::to_string(w)] = tuple;
        for (const auto& [w, tuple] : step.f_witness) wit["f" + std::to_string(w)] = tuple;
        s["witnesses"] = wit;
        arr.push_back(s);
    }
    json j;
    j["steps"] = arr;
    return j.dump(2) + "\n";
}

std::string report_to_json(const ValidationReport& report) {
    json j;
    j["single_source"] = report.single_source;
    j["covered_edge"] = report.covered_edge;
    j["absent_edges_consistent"] = report.absent_edges_consistent;
    j["present_edges_witnessed"] = report.present_edges_witnessed;
    j["topologically_ordered"] = report.topologically_ordered;
    j["prefix_chain"] = report.prefix_chain;
    j["pass"] = report.pass();
    j["failures"] = report.failures;
    return j.dump(2) + "\n";
}

}  // namespace ccpg::io
