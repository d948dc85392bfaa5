#ifndef CCPG_IO_HPP
#define CCPG_IO_HPP

#include <string>
#include <vector>

#include "ccpg/builder.hpp"
#include "ccpg/dag.hpp"
#include "ccpg/dataset.hpp"
#include "ccpg/prefix.hpp"
#include "ccpg/synth.hpp"
#include "ccpg/validator.hpp"

namespace ccpg::io {

// DAG JSON: {"n": <int>, "edges": [[u,v], ...]} with optional "labels" of
// length n. Readers reject duplicate edges, self-loops, and cycles.
struct LabeledDag {
    Dag dag{0};
    std::vector<std::string> labels;  // x0..x{n-1} when absent from the file
};

std::string dag_to_json(const Dag& dag, const std::vector<std::string>& labels = {});
LabeledDag dag_from_json(const std::string& text);
LabeledDag read_dag_file(const std::string& path);
void write_dag_file(const std::string& path, const Dag& dag,
                    const std::vector<std::string>& labels = {});

// CCPG JSON: {"components": [[...],...], "edges": [[i,j],...], "layers": [...],
// "ci_total": N, "ci_unique": M}.
std::string ccpg_to_json(const CcpgOutput& output);
CcpgOutput ccpg_from_json(const std::string& text, int n);
void write_ccpg_file(const std::string& path, const CcpgOutput& output);
CcpgOutput read_ccpg_file(const std::string& path, int n);

// SEM JSON: {"n":..., "edges":[[u,v],...], "weights":[...], "noise_std":[...]}.
std::string sem_to_json(const SemModel& model);
SemModel sem_from_json(const std::string& text);
void write_sem_file(const std::string& path, const SemModel& model);
SemModel read_sem_file(const std::string& path);

// Dataset CSV: header row of vertex labels, one sample per row.
void write_dataset_csv(const std::string& path, const Dataset& data,
                       const std::vector<std::string>& labels = {});
Dataset read_dataset_csv(const std::string& path);

// Regime manifest JSON: {"observational": "<path>", "interventions":
// [{"targets": [..], "path": "<path>"}]}. Paths are resolved relative to the
// manifest's directory; "path" entries may be omitted when only the target
// sets are needed.
struct RegimeManifest {
    std::string observational_path;
    std::vector<Intervention> interventions;  // ids 0..k-1
    std::vector<std::string> intervention_paths;
};

RegimeManifest read_manifest_file(const std::string& path, int n_hint = -1);
void write_manifest_file(const std::string& path, const RegimeManifest& manifest);

// Step traces for the learn subcommand's --trace flag.
std::string traces_to_json(const std::vector<PrefixStepTrace>& steps);

std::string report_to_json(const ValidationReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ccpg::io

#endif  // CCPG_IO_HPP
