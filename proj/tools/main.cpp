#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "ccpg/builder.hpp"
#include "ccpg/gaussian.hpp"
#include "ccpg/io.hpp"
#include "ccpg/synth.hpp"
#include "ccpg/validator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitStall = 2;
constexpr int kExitInputError = 3;

namespace fs = std::filesystem;
using namespace ccpg;

Dag make_graph(const std::string& kind, int n, double p, uint64_t seed) {
    if (kind == "er") return random_dag(n, p, seed);
    if (kind == "instar") return in_star(n);
    if (kind == "chain") return chain(n);
    throw std::invalid_argument("unknown graph kind: " + kind);
}

std::vector<Intervention> make_interventions(const std::string& scheme, const Dag& g) {
    if (scheme == "none") return {};
    if (scheme == "covered") return covered_edge_verifying_set(g);
    if (scheme == "log2") return log2_intervention_set(g.n());
    throw std::invalid_argument("unknown intervention scheme: " + scheme);
}

int worker_count(size_t jobs) {
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CCPG_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) workers = std::min<unsigned>(workers, static_cast<unsigned>(cap));
    }
    return static_cast<int>(std::min<size_t>(workers, jobs));
}

int run_synth(const std::string& kind, int n, double p, uint64_t seed, long samples,
              const std::string& interventions, const std::string& out_dir) {
    const Dag g = make_graph(kind, n, p, seed);
    const SemModel model = random_sem(g, seed + 1);
    const std::vector<Intervention> regimes = make_interventions(interventions, g);

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    io::write_dag_file((dir / "dag.json").string(), g);
    io::write_sem_file((dir / "sem.json").string(), model);

    io::RegimeManifest manifest;
    if (samples > 0) {
        const Dataset obs = sample(model, samples, seed + 2);
        manifest.observational_path = (dir / "obs.csv").string();
        io::write_dataset_csv(manifest.observational_path, obs);
    }
    for (const auto& intervention : regimes) {
        manifest.interventions.push_back(intervention);
        std::string path;
        if (samples > 0) {
            const Dataset data = sample_intervened(model, intervention, samples,
                                                   seed + 3 + static_cast<uint64_t>(intervention.id));
            path = (dir / ("int_" + std::to_string(intervention.id) + ".csv")).string();
            io::write_dataset_csv(path, data);
        }
        manifest.intervention_paths.push_back(path);
    }
    if (samples > 0 || !regimes.empty()) {
        io::write_manifest_file((dir / "manifest.json").string(), manifest);
    }
    return kExitOk;
}

int run_learn(const std::string& dag_path, const std::string& data_path,
              const std::string& interventions_path, double alpha, long min_samples, bool trace,
              const std::string& out_path) {
    std::unique_ptr<CiOracle> oracle;
    std::vector<Intervention> interventions;

    if (!dag_path.empty()) {
        const io::LabeledDag truth = io::read_dag_file(dag_path);
        if (!interventions_path.empty()) {
            interventions = io::read_manifest_file(interventions_path, truth.dag.n()).interventions;
        }
        oracle = std::make_unique<ExactOracle>(truth.dag, interventions);
    } else {
        const io::RegimeManifest manifest = io::read_manifest_file(data_path);
        if (manifest.observational_path.empty()) {
            throw std::invalid_argument("data manifest has no observational path");
        }
        std::vector<Dataset> regimes;
        Dataset obs = io::read_dataset_csv(manifest.observational_path);
        obs.regime = kObservational;
        const int n = obs.n;
        regimes.push_back(std::move(obs));
        for (size_t i = 0; i < manifest.interventions.size(); ++i) {
            if (manifest.intervention_paths[i].empty()) {
                throw std::invalid_argument("data manifest is missing an intervention path");
            }
            Dataset data = io::read_dataset_csv(manifest.intervention_paths[i]);
            data.regime = manifest.interventions[i].id;
            if (data.n != n) throw std::invalid_argument("regime column count mismatch");
            regimes.push_back(std::move(data));
            Intervention intervention = manifest.interventions[i];
            if (intervention.targets.universe() != n) {
                VertexSet resized(n);
                intervention.targets.for_each([&](int v) { resized.insert(v); });
                intervention.targets = resized;
            }
            interventions.push_back(intervention);
        }
        GaussianTesterConfig cfg;
        cfg.alpha = alpha;
        cfg.min_samples = min_samples;
        oracle = std::make_unique<GaussianOracle>(std::move(regimes), cfg);
    }

    const BuildResult result = build_traced(*oracle, interventions);
    io::write_ccpg_file(out_path, result.output);
    if (trace) {
        io::write_text_file(out_path + ".trace.json", io::traces_to_json(result.steps));
    }
    return kExitOk;
}

int run_validate(const std::string& dag_path, const std::string& ccpg_path,
                 const std::string& interventions_path) {
    const io::LabeledDag truth = io::read_dag_file(dag_path);
    const CcpgOutput output = io::read_ccpg_file(ccpg_path, truth.dag.n());
    std::vector<Intervention> interventions;
    if (!interventions_path.empty()) {
        interventions = io::read_manifest_file(interventions_path, truth.dag.n()).interventions;
    }
    const ValidationReport report = check_ccpg(truth.dag, output, interventions);
    std::cout << io::report_to_json(report);
    return report.pass() ? kExitOk : kExitValidationFailure;
}

struct BenchRow {
    int n = 0;
    uint64_t seed = 0;
    uint64_t ci_unique = 0;
    uint64_t ci_total = 0;
    int recovered = 0;
    long wall_ms = 0;
};

int run_bench(const std::string& suite, std::vector<int> sizes, std::vector<uint64_t> seeds,
              double p, long samples, double alpha, const std::string& interventions,
              const std::string& kind, const std::string& out_path) {
    struct Job {
        int n;
        uint64_t seed;
    };
    std::vector<Job> jobs;
    for (int n : sizes) {
        for (uint64_t seed : seeds) jobs.push_back({n, seed});
    }
    std::vector<BenchRow> rows(jobs.size());
    std::atomic<size_t> next{0};

    auto run_job = [&](const Job& job, BenchRow& row) {
        row.n = job.n;
        row.seed = job.seed;
        const auto start = std::chrono::steady_clock::now();

        if (suite == "counts") {
            const Dag g = make_graph(kind.empty() ? "er" : kind, job.n, p, job.seed);
            ExactOracle oracle(g);
            const CcpgOutput output = build(oracle);
            row.ci_unique = output.ci_stats.unique;
            row.ci_total = output.ci_stats.total;
            row.recovered = check_ccpg(g, output).pass() ? 1 : 0;
        } else if (suite == "recovery") {
            const Dag g = make_graph(kind.empty() ? "er" : kind, job.n, p, job.seed);
            const auto regimes = make_interventions(interventions.empty() ? "covered" : interventions, g);
            ExactOracle oracle(g, regimes);
            const CcpgOutput output = build_int(oracle, regimes);
            row.ci_unique = output.ci_stats.unique;
            row.ci_total = output.ci_stats.total;
            row.recovered = recovers_exactly(output, g) ? 1 : 0;
        } else if (suite == "samples") {
            const Dag g = make_graph(kind.empty() ? "instar" : kind, job.n, p, job.seed);
            const SemModel model = random_sem(g, job.seed + 1);
            std::vector<Dataset> regimes;
            regimes.push_back(sample(model, samples, job.seed + 2));
            GaussianTesterConfig cfg;
            cfg.alpha = alpha;
            GaussianOracle oracle(std::move(regimes), cfg);
            CcpgOutput output;
            try {
                output = build(oracle);
                row.recovered = recovers_exactly(output, g) ? 1 : 0;
            } catch (const StallError&) {
                row.recovered = 0;
            }
            row.ci_unique = oracle.counter().unique;
            row.ci_total = oracle.counter().total;
        } else {
            throw std::invalid_argument("unknown bench suite: " + suite);
        }
        row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    };

    const int workers = worker_count(jobs.size());
    std::vector<std::thread> pool;
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= jobs.size() || failed.load()) break;
                try {
                    run_job(jobs[i], rows[i]);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    failed.store(true);
                    error_message = e.what();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failed.load()) throw std::runtime_error("bench job failed: " + error_message);

    std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
        return std::tie(a.n, a.seed) < std::tie(b.n, b.seed);
    });
    std::ostringstream csv;
    csv << "n,seed,ci_unique,ci_total,recovered,wall_ms\n";
    for (const auto& row : rows) {
        csv << row.n << ',' << row.seed << ',' << row.ci_unique << ',' << row.ci_total << ','
            << row.recovered << ',' << row.wall_ms << '\n';
    }
    io::write_text_file(out_path, csv.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Partition-graph causal discovery with polynomially many CI tests"};
    app.require_subcommand(1);

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "Generate a ground-truth DAG, SEM, and samples");
    std::string kind = "er";
    int n = 0;
    double p = 0.3;
    uint64_t seed = 1;
    long samples = 0;
    std::string interventions = "none";
    std::string out_dir;
    synth_cmd->add_option("--kind", kind, "er | instar | chain")->default_val("er");
    synth_cmd->add_option("--n", n, "vertex count")->required();
    synth_cmd->add_option("--p", p, "ER edge probability");
    synth_cmd->add_option("--seed", seed, "generator seed");
    synth_cmd->add_option("--samples", samples, "samples per regime (0 = none)");
    synth_cmd->add_option("--interventions", interventions, "covered | log2 | none");
    synth_cmd->add_option("--out", out_dir, "output directory")->required();

    // learn
    auto* learn_cmd = app.add_subcommand("learn", "Learn a partition-graph representation");
    std::string dag_path;
    std::string data_path;
    std::string interventions_path;
    double alpha = 0.01;
    long min_samples = 30;
    bool trace = false;
    std::string out_path;
    learn_cmd->add_option("--dag", dag_path, "ground-truth DAG JSON (exact oracle)");
    learn_cmd->add_option("--data", data_path, "regime manifest JSON (sample oracle)");
    learn_cmd->add_option("--interventions", interventions_path,
                          "intervention manifest (exact mode)");
    learn_cmd->add_option("--alpha", alpha, "Fisher-z significance level");
    learn_cmd->add_option("--min-samples", min_samples, "minimum samples per regime");
    learn_cmd->add_flag("--trace", trace, "also write <out>.trace.json");
    learn_cmd->add_option("--out", out_path, "output CCPG JSON")->required();

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "Check a CCPG against a ground-truth DAG");
    std::string v_dag_path;
    std::string v_ccpg_path;
    std::string v_interventions_path;
    validate_cmd->add_option("--dag", v_dag_path, "ground-truth DAG JSON")->required();
    validate_cmd->add_option("--ccpg", v_ccpg_path, "CCPG JSON")->required();
    validate_cmd->add_option("--interventions", v_interventions_path, "intervention manifest");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark suite and write CSV rows");
    std::string suite;
    std::vector<int> sizes;
    std::vector<uint64_t> seeds;
    double bench_p = 0.3;
    long bench_samples = 100000;
    double bench_alpha = 0.01;
    std::string bench_interventions;
    std::string bench_kind;
    std::string bench_out;
    bench_cmd->add_option("--suite", suite, "counts | recovery | samples")->required();
    bench_cmd->add_option("--sizes", sizes, "vertex counts")->required()->delimiter(',');
    bench_cmd->add_option("--seeds", seeds, "seeds")->required()->delimiter(',');
    bench_cmd->add_option("--p", bench_p, "ER edge probability");
    bench_cmd->add_option("--samples", bench_samples, "samples for the samples suite");
    bench_cmd->add_option("--alpha", bench_alpha, "Fisher-z significance level");
    bench_cmd->add_option("--interventions", bench_interventions, "covered | log2 (recovery suite)");
    bench_cmd->add_option("--kind", bench_kind, "graph kind override");
    bench_cmd->add_option("--out", bench_out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (synth_cmd->parsed()) {
            return run_synth(kind, n, p, seed, samples, interventions, out_dir);
        }
        if (learn_cmd->parsed()) {
            if (dag_path.empty() == data_path.empty()) {
                throw std::invalid_argument("learn: give exactly one of --dag or --data");
            }
            return run_learn(dag_path, data_path, interventions_path, alpha, min_samples, trace,
                             out_path);
        }
        if (validate_cmd->parsed()) {
            return run_validate(v_dag_path, v_ccpg_path, v_interventions_path);
        }
        if (bench_cmd->parsed()) {
            return run_bench(suite, sizes, seeds, bench_p, bench_samples, bench_alpha,
                             bench_interventions, bench_kind, bench_out);
        }
    } catch (const StallError& e) {
        std::cerr << "stall: " << e.what() << "\n";
        return kExitStall;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
