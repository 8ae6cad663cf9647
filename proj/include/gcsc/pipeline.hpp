#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcsc/cluster.hpp"
#include "gcsc/graph.hpp"
#include "gcsc/ingest.hpp"
#include "gcsc/metrics.hpp"
#include "gcsc/solver.hpp"
#include "gcsc/synthetic.hpp"

namespace gcsc {

struct InputConfig {
    enum class Kind { Cube, Matrix, Synthetic } kind = Kind::Cube;
    std::filesystem::path path;                 // cube or matrix file
    CubeFormat format = CubeFormat::RawBin;
    std::filesystem::path labels_path;          // matrix truth labels
    std::optional<std::pair<int, int>> crop_rows, crop_cols;
    bool crop_one_based = false;                // ranges use 1-based indexing
    SyntheticSpec synthetic;
};

struct PreprocessConfig {
    bool enabled = true;   // PCA + patches (cube inputs only)
    int pcs = 4;
    std::optional<double> variance;  // overrides pcs when set
    int window = 9;
    bool scale = true;
};

struct GraphConfig {
    bool identity = false;  // use the identity in place of the kNN graph
    int k = 30;
    KnnSymmetrize symmetrize = KnnSymmetrize::Or;
};

struct SolverConfig {
    Model model = Model::Egcsc;
    double lambda = 100.0;
    KernelDescriptor kernel = KernelDescriptor::gaussian(1.0);
};

struct ClusterConfig {
    int clusters = 0;  // 0 = infer from truth labels
    AffinityMode affinity = AffinityMode::EdscEnhanced;
    AffinityOptions affinity_opts;
    uint64_t seed = 42;
    int restarts = 50;
};

struct ExperimentConfig {
    InputConfig input;
    PreprocessConfig preprocess;
    GraphConfig graph;
    SolverConfig solver;
    ClusterConfig cluster;
    std::filesystem::path output_dir;  // empty: no artifacts written
    std::string name = "experiment";

    static ExperimentConfig from_json_file(const std::filesystem::path& path);
    static ExperimentConfig from_json(const std::string& text);
};

struct PipelineResult {
    ClusterReport report;
    ClusterAssignment assignment;
    std::vector<int> matched_labels;  // predictions mapped onto truth ids
    std::vector<int> truth;
    std::vector<std::pair<int, int>> coords;
    int map_rows = 0, map_cols = 0;
    double solver_residual = 0.0;
    std::map<std::string, double> stage_seconds;
    double total_seconds = 0.0;
};

/// Prepared samples after ingest + preprocessing, reusable across runs
/// that only change graph/solver/cluster parameters.
struct PreparedSamples {
    LabeledSamples samples;
    int map_rows = 0, map_cols = 0;
    double ingest_seconds = 0.0;
    double preprocess_seconds = 0.0;
};

PreparedSamples prepare_samples(const ExperimentConfig& cfg);

PipelineResult run_pipeline(const ExperimentConfig& cfg);

/// Runs graph -> solve -> cluster -> metrics on already-prepared samples.
PipelineResult run_pipeline(const ExperimentConfig& cfg,
                            const PreparedSamples& prepared);

enum class SweepParam { Lambda, K, Gamma, Pcs };

SweepParam parse_sweep_param(const std::string& s);

struct SweepRow {
    double value = 0.0;
    bool ok = false;
    double oa = 0.0, nmi = 0.0, kappa = 0.0;
    std::string error;
};

/// One pipeline run per value; preprocessing is shared when the swept
/// parameter permits. Per-value failures are recorded and the sweep
/// continues.
std::vector<SweepRow> sweep(const ExperimentConfig& cfg, SweepParam param,
                            const std::vector<double>& values);

void save_sweep_csv(const std::vector<SweepRow>& rows, SweepParam param,
                    const std::filesystem::path& path);

}  // namespace gcsc
