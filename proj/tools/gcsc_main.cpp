#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>

#include "gcsc/io.hpp"
#include "gcsc/pipeline.hpp"
#include "gcsc/preprocess.hpp"

namespace fs = std::filesystem;
using namespace gcsc;

namespace {

std::pair<std::pair<int, int>, std::pair<int, int>> parse_crop(
    const std::string& s) {
    // "r0:r1,c0:c1"
    auto comma = s.find(',');
    auto c1 = s.substr(0, comma), c2 = s.substr(comma + 1);
    auto parse_pair = [](const std::string& t) {
        auto colon = t.find(':');
        if (colon == std::string::npos)
            throw ArgumentError("crop range must look like lo:hi");
        return std::make_pair(std::stoi(t.substr(0, colon)),
                              std::stoi(t.substr(colon + 1)));
    };
    if (comma == std::string::npos)
        throw ArgumentError("crop must look like r0:r1,c0:c1");
    return {parse_pair(c1), parse_pair(c2)};
}

std::vector<double> parse_values(const std::string& s) {
    // "lo:hi:logN", "lo:hi:linN", or comma-separated numbers
    auto n_colons = std::count(s.begin(), s.end(), ':');
    if (n_colons == 2) {
        auto p1 = s.find(':'), p2 = s.find(':', p1 + 1);
        double lo = std::stod(s.substr(0, p1));
        double hi = std::stod(s.substr(p1 + 1, p2 - p1 - 1));
        std::string tail = s.substr(p2 + 1);
        bool log_spaced = tail.rfind("log", 0) == 0;
        int n = std::stoi(tail.substr(log_spaced ? 3 : 3));
        if (n < 1) throw ArgumentError("value count must be >= 1");
        std::vector<double> out;
        for (int i = 0; i < n; ++i) {
            double t = n == 1 ? 0.0 : double(i) / (n - 1);
            out.push_back(log_spaced
                              ? std::pow(10.0, std::log10(lo) +
                                                   t * (std::log10(hi) -
                                                        std::log10(lo)))
                              : lo + t * (hi - lo));
        }
        return out;
    }
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

void print_report(const ClusterReport& r) {
    std::cout << "oa=" << r.oa << " nmi=" << r.nmi << " kappa=" << r.kappa
              << " runtime=" << r.runtime_seconds << "s\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph convolutional subspace clustering toolkit"};
    app.require_subcommand(1);

    // ---- ingest ----
    auto* ingest = app.add_subcommand("ingest", "Load a cube, crop, save canonical format");
    std::string in_path, format = "raw-bin", crop, out_dir = ".";
    ingest->add_option("--input", in_path, "input file")->required();
    ingest->add_option("--format", format, "raw-bin|csv-stack|mat-v5");
    ingest->add_option("--crop", crop, "1-based inclusive crop r0:r1,c0:c1");
    ingest->add_option("--out", out_dir, "output directory");
    ingest->callback([&] {
        HsiCube cube = load_cube(in_path, parse_cube_format(format));
        if (!crop.empty()) {
            auto [rr, cc] = parse_crop(crop);
            cube = crop_subscene(cube, {rr.first - 1, rr.second - 1},
                                 {cc.first - 1, cc.second - 1});
        }
        io::save_cube_bin(cube, fs::path(out_dir) / "cube.gcsc");
        std::cout << "cube " << cube.rows << "x" << cube.cols << "x"
                  << cube.bands << (cube.has_labels() ? " (labeled)" : "")
                  << " -> " << out_dir << "/cube.gcsc\n";
    });

    // ---- preprocess ----
    auto* prep = app.add_subcommand("preprocess", "PCA, patches, [0,1] scaling");
    std::string work = ".";
    int pcs = 4, window = 9;
    double variance = 0.0;
    bool no_scale = false;
    prep->add_option("--dir", work, "working directory with cube.gcsc");
    prep->add_option("--pcs", pcs, "number of principal components");
    prep->add_option("--variance", variance, "variance threshold (overrides --pcs)");
    prep->add_option("--window", window, "patch window (odd)");
    prep->add_flag("--no-scale", no_scale, "skip [0,1] scaling");
    prep->callback([&] {
        HsiCube cube = io::load_cube_bin(fs::path(work) / "cube.gcsc");
        LabeledSamples spectra = to_labeled_samples(cube);
        PcaTarget target = variance > 0.0
                               ? PcaTarget::variance_threshold(variance)
                               : PcaTarget::n_components(pcs);
        PcaModel pca = fit_pca(spectra.features, target);
        HsiCube reduced = transform_pca(pca, cube);
        LabeledSamples samples = extract_patches(reduced, window);
        if (!no_scale) samples.features = minmax_scale(samples.features);
        io::save_matrix(samples.features, fs::path(work) / "samples.gcsm");
        io::save_labels_csv(samples.labels, fs::path(work) / "labels_truth.csv");
        io::save_coords_csv(samples.coords, fs::path(work) / "coords.csv");
        std::cout << "samples " << samples.features.rows() << "x"
                  << samples.features.cols() << " (d="
                  << pca.n_components() << ")\n";
    });

    // ---- graph ----
    auto* graph_cmd = app.add_subcommand("graph", "Build kNN graph and normalized adjacency");
    int k = 30;
    std::string sym = "or";
    graph_cmd->add_option("--dir", work, "working directory with samples.gcsm");
    graph_cmd->add_option("--k", k, "neighbor count");
    graph_cmd->add_option("--sym", sym, "or|and|none");
    graph_cmd->callback([&] {
        Matrix x = io::load_matrix(fs::path(work) / "samples.gcsm");
        KnnGraph g = build_knn(x, k, parse_knn_symmetrize(sym));
        io::save_matrix(g.normalized, fs::path(work) / "abar.gcsm");
        io::save_edge_list(g.adjacency, fs::path(work) / "graph_edges.csv");
        std::cout << "graph N=" << x.rows() << " k=" << k << " sym=" << sym
                  << "\n";
    });

    // ---- solve ----
    auto* solve_cmd = app.add_subcommand("solve", "Closed-form self-representation");
    std::string model = "egcsc", kernel = "gaussian";
    double lambda = 100.0, gamma = 1.0, coef0 = 1.0;
    int degree = 2;
    solve_cmd->add_option("--dir", work, "working directory");
    solve_cmd->add_option("--model", model, "egcsc|ekgcsc");
    solve_cmd->add_option("--lambda", lambda, "regularization")->required();
    solve_cmd->add_option("--kernel", kernel, "gaussian|linear|polynomial");
    solve_cmd->add_option("--gamma", gamma, "gaussian kernel width");
    solve_cmd->add_option("--degree", degree, "polynomial degree");
    solve_cmd->add_option("--coef0", coef0, "polynomial offset");
    solve_cmd->callback([&] {
        Matrix x = io::load_matrix(fs::path(work) / "samples.gcsm");
        Matrix abar = io::load_matrix(fs::path(work) / "abar.gcsm");
        auto t0 = std::chrono::steady_clock::now();
        CoefficientMatrix z;
        if (parse_model(model) == Model::Egcsc) {
            z = egcsc_solve(x, abar, lambda);
        } else {
            KernelDescriptor desc =
                kernel == "linear"
                    ? KernelDescriptor::linear()
                    : kernel == "polynomial"
                          ? KernelDescriptor::polynomial(degree, coef0)
                          : KernelDescriptor::gaussian(gamma);
            z = ekgcsc_solve(compute_kernel(x, desc), abar, lambda);
        }
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        io::save_matrix(z.Z, fs::path(work) / "z.gcsm");
        nlohmann::json sidecar{{"model", model},
                               {"lambda", lambda},
                               {"kernel", kernel},
                               {"gamma", gamma},
                               {"residual", z.residual},
                               {"seconds", secs}};
        io::atomic_write(fs::path(work) / "solve.json", sidecar.dump(2));
        std::cout << "solved N=" << z.Z.rows() << " residual=" << z.residual
                  << " (" << secs << "s)\n";
    });

    // ---- cluster ----
    auto* cluster_cmd = app.add_subcommand("cluster", "Affinity + spectral clustering");
    int clusters = 0, svd_d = 10, restarts = 50;
    double power = 8.0;
    std::string affinity = "edsc", map_path;
    uint64_t seed = 42;
    cluster_cmd->add_option("--dir", work, "working directory");
    cluster_cmd->add_option("--clusters", clusters, "number of clusters")->required();
    cluster_cmd->add_option("--affinity", affinity, "edsc|symmetrize");
    cluster_cmd->add_option("--svd-d", svd_d, "SVD components per cluster");
    cluster_cmd->add_option("--power", power, "affinity exponent");
    cluster_cmd->add_option("--seed", seed, "RNG seed");
    cluster_cmd->add_option("--restarts", restarts, "k-means restarts");
    cluster_cmd->add_option("--map", map_path, "write cluster map PNG here");
    cluster_cmd->callback([&] {
        Matrix z = io::load_matrix(fs::path(work) / "z.gcsm");
        AffinityOptions opts{svd_d, power};
        Matrix c =
            build_affinity(z, clusters, parse_affinity_mode(affinity), opts);
        ClusterAssignment a = spectral_cluster(c, clusters, seed, restarts);
        io::save_labels_csv(a.labels, fs::path(work) / "labels_pred.csv");
        auto truth_path = fs::path(work) / "labels_truth.csv";
        if (fs::exists(truth_path)) {
            auto truth = io::load_labels_csv(truth_path);
            ClusterReport r = evaluate(a.labels, truth);
            io::atomic_write(fs::path(work) / "report.json", r.to_json());
            print_report(r);
            if (!map_path.empty()) {
                auto coords = io::load_coords_csv(fs::path(work) / "coords.csv");
                int rows = 0, cols = 0;
                for (auto& [rr, cc] : coords) {
                    rows = std::max(rows, rr + 1);
                    cols = std::max(cols, cc + 1);
                }
                render_cluster_map(apply_matching(a.labels, r.matching),
                                   coords, rows, cols, map_path);
            }
        } else if (!map_path.empty()) {
            auto coords = io::load_coords_csv(fs::path(work) / "coords.csv");
            int rows = 0, cols = 0;
            for (auto& [rr, cc] : coords) {
                rows = std::max(rows, rr + 1);
                cols = std::max(cols, cc + 1);
            }
            render_cluster_map(a.labels, coords, rows, cols, map_path);
        }
    });

    // ---- eval ----
    auto* eval_cmd = app.add_subcommand("eval", "Score predictions against ground truth");
    std::string pred_path, truth_path, report_path;
    eval_cmd->add_option("--pred", pred_path, "predicted labels CSV")->required();
    eval_cmd->add_option("--truth", truth_path, "true labels CSV")->required();
    eval_cmd->add_option("--report", report_path, "report JSON output");
    eval_cmd->callback([&] {
        auto pred = io::load_labels_csv(pred_path);
        auto truth = io::load_labels_csv(truth_path);
        ClusterReport r = evaluate(pred, truth);
        if (!report_path.empty()) io::atomic_write(report_path, r.to_json());
        print_report(r);
    });

    // ---- run ----
    auto* run_cmd = app.add_subcommand("run", "Full pipeline from a config file");
    std::string config_path, output_override;
    double lambda_ov = -1.0, gamma_ov = -1.0;
    int k_ov = -1;
    int64_t seed_ov = -1;
    run_cmd->add_option("--config", config_path, "JSON config")->required();
    run_cmd->add_option("--lambda", lambda_ov, "override lambda");
    run_cmd->add_option("--k", k_ov, "override neighbor count");
    run_cmd->add_option("--gamma", gamma_ov, "override gaussian gamma");
    run_cmd->add_option("--seed", seed_ov, "override clustering seed");
    run_cmd->add_option("--output", output_override, "override output dir");
    run_cmd->callback([&] {
        ExperimentConfig cfg = ExperimentConfig::from_json_file(config_path);
        if (lambda_ov > 0) cfg.solver.lambda = lambda_ov;
        if (k_ov > 0) cfg.graph.k = k_ov;
        if (gamma_ov > 0) cfg.solver.kernel = KernelDescriptor::gaussian(gamma_ov);
        if (seed_ov >= 0) cfg.cluster.seed = uint64_t(seed_ov);
        if (!output_override.empty()) cfg.output_dir = output_override;
        PipelineResult res = run_pipeline(cfg);
        print_report(res.report);
        for (const auto& [stage, s] : res.stage_seconds)
            std::cout << "  " << stage << ": " << s << "s\n";
    });

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep over the pipeline");
    std::string param = "lambda", values = "1e-3:1e3:log7", sweep_out = "sweep.csv";
    sweep_cmd->add_option("--config", config_path, "JSON config")->required();
    sweep_cmd->add_option("--param", param, "lambda|k|gamma|pcs");
    sweep_cmd->add_option("--values", values, "lo:hi:logN, lo:hi:linN, or comma list");
    sweep_cmd->add_option("--out", sweep_out, "CSV output path");
    sweep_cmd->callback([&] {
        ExperimentConfig cfg = ExperimentConfig::from_json_file(config_path);
        SweepParam p = parse_sweep_param(param);
        auto rows = sweep(cfg, p, parse_values(values));
        save_sweep_csv(rows, p, sweep_out);
        for (const auto& r : rows) {
            std::cout << param << "=" << r.value << " ";
            if (r.ok)
                std::cout << "oa=" << r.oa << " nmi=" << r.nmi
                          << " kappa=" << r.kappa << "\n";
            else
                std::cout << "error: " << r.error << "\n";
        }
    });

    // ---- synth ----
    auto* synth_cmd = app.add_subcommand("synth", "Generate union-of-subspaces data");
    SyntheticSpec spec;
    synth_cmd->add_option("--subspaces", spec.n_subspaces, "number of subspaces");
    synth_cmd->add_option("--ambient", spec.ambient_dim, "ambient dimension");
    synth_cmd->add_option("--dim", spec.subspace_dim, "subspace dimension");
    synth_cmd->add_option("--points", spec.points_per_subspace, "points per subspace");
    synth_cmd->add_option("--sigma", spec.noise_sigma, "noise standard deviation");
    synth_cmd->add_option("--seed", spec.seed, "RNG seed");
    synth_cmd->add_option("--out", out_dir, "output directory");
    synth_cmd->callback([&] {
        LabeledSamples s = gen_synthetic(spec);
        io::save_matrix(s.features, fs::path(out_dir) / "samples.gcsm");
        io::save_labels_csv(s.labels, fs::path(out_dir) / "labels_truth.csv");
        std::cout << "synthetic " << s.features.rows() << "x"
                  << s.features.cols() << " -> " << out_dir << "\n";
    });

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
