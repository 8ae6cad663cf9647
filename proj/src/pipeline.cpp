#include "gcsc/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gcsc/io.hpp"
#include "gcsc/preprocess.hpp"

namespace gcsc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::pair<int, int> parse_range(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2)
        throw ArgumentError("crop range must be a 2-element array");
    return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_file(
    const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw FormatError("cannot open config: " + path.string());
    std::stringstream ss;
    ss << is.rdbuf();
    return from_json(ss.str());
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ExperimentConfig cfg;
    if (j.contains("name")) cfg.name = j["name"].get<std::string>();
    if (j.contains("output_dir"))
        cfg.output_dir = j["output_dir"].get<std::string>();

    const auto& in = j.at("input");
    std::string kind = in.value("kind", "cube");
    if (kind == "cube") {
        cfg.input.kind = InputConfig::Kind::Cube;
        cfg.input.path = in.at("path").get<std::string>();
        cfg.input.format = parse_cube_format(in.value("format", "raw-bin"));
        if (in.contains("crop")) {
            const auto& cr = in["crop"];
            cfg.input.crop_rows = parse_range(cr.at("rows"));
            cfg.input.crop_cols = parse_range(cr.at("cols"));
            cfg.input.crop_one_based = cr.value("one_based", false);
        }
    } else if (kind == "matrix") {
        cfg.input.kind = InputConfig::Kind::Matrix;
        cfg.input.path = in.at("path").get<std::string>();
        cfg.input.labels_path = in.at("labels").get<std::string>();
    } else if (kind == "synthetic") {
        cfg.input.kind = InputConfig::Kind::Synthetic;
        const auto& sy = in.at("synthetic");
        cfg.input.synthetic.n_subspaces = sy.value("n_subspaces", 3);
        cfg.input.synthetic.ambient_dim = sy.value("ambient_dim", 30);
        cfg.input.synthetic.subspace_dim = sy.value("subspace_dim", 4);
        cfg.input.synthetic.points_per_subspace =
            sy.value("points_per_subspace", 100);
        cfg.input.synthetic.noise_sigma = sy.value("noise_sigma", 0.01);
        cfg.input.synthetic.seed = sy.value("seed", uint64_t{0});
    } else {
        throw ArgumentError("unknown input kind: " + kind);
    }

    if (j.contains("preprocess")) {
        const auto& p = j["preprocess"];
        cfg.preprocess.enabled = p.value("enabled", true);
        cfg.preprocess.pcs = p.value("pcs", 4);
        if (p.contains("variance"))
            cfg.preprocess.variance = p["variance"].get<double>();
        cfg.preprocess.window = p.value("window", 9);
        cfg.preprocess.scale = p.value("scale", true);
    }

    if (j.contains("graph")) {
        const auto& g = j["graph"];
        cfg.graph.identity = g.value("identity", false);
        cfg.graph.k = g.value("k", 30);
        cfg.graph.symmetrize = parse_knn_symmetrize(g.value("sym", "or"));
    }

    if (j.contains("solver")) {
        const auto& s = j["solver"];
        cfg.solver.model = parse_model(s.value("model", "egcsc"));
        cfg.solver.lambda = s.value("lambda", 100.0);
        if (s.contains("kernel")) {
            const auto& k = s["kernel"];
            std::string kk = k.value("kind", "gaussian");
            if (kk == "gaussian") {
                cfg.solver.kernel =
                    KernelDescriptor::gaussian(k.value("gamma", 1.0));
            } else if (kk == "linear") {
                cfg.solver.kernel = KernelDescriptor::linear();
            } else if (kk == "polynomial") {
                cfg.solver.kernel = KernelDescriptor::polynomial(
                    k.value("degree", 2), k.value("coef0", 1.0));
            } else {
                throw ArgumentError("unknown kernel kind: " + kk);
            }
        }
    }

    if (j.contains("cluster")) {
        const auto& c = j["cluster"];
        cfg.cluster.clusters = c.value("clusters", 0);
        cfg.cluster.affinity = parse_affinity_mode(c.value("affinity", "edsc"));
        cfg.cluster.affinity_opts.d_per_cluster = c.value("d_per_cluster", 10);
        cfg.cluster.affinity_opts.power = c.value("power", 8.0);
        cfg.cluster.seed = c.value("seed", uint64_t{42});
        cfg.cluster.restarts = c.value("restarts", 50);
    }
    return cfg;
}

PreparedSamples prepare_samples(const ExperimentConfig& cfg) {
    PreparedSamples out;
    auto t0 = Clock::now();

    if (cfg.input.kind == InputConfig::Kind::Synthetic) {
        out.samples = gen_synthetic(cfg.input.synthetic);
        out.ingest_seconds = seconds_since(t0);
        if (cfg.preprocess.scale && cfg.preprocess.enabled) {
            auto t1 = Clock::now();
            out.samples.features = minmax_scale(out.samples.features);
            out.preprocess_seconds = seconds_since(t1);
        }
        return out;
    }

    if (cfg.input.kind == InputConfig::Kind::Matrix) {
        out.samples.features = io::load_matrix(cfg.input.path);
        out.samples.labels = io::load_labels_csv(cfg.input.labels_path);
        if (out.samples.labels.size() !=
            static_cast<size_t>(out.samples.features.rows()))
            throw DataError("matrix rows and label count differ");
        out.ingest_seconds = seconds_since(t0);
        if (cfg.preprocess.scale && cfg.preprocess.enabled) {
            auto t1 = Clock::now();
            out.samples.features = minmax_scale(out.samples.features);
            out.preprocess_seconds = seconds_since(t1);
        }
        return out;
    }

    HsiCube cube = load_cube(cfg.input.path, cfg.input.format);
    if (cfg.input.crop_rows) {
        auto rows = *cfg.input.crop_rows;
        auto cols = *cfg.input.crop_cols;
        if (cfg.input.crop_one_based) {
            rows = {rows.first - 1, rows.second - 1};
            cols = {cols.first - 1, cols.second - 1};
        }
        cube = crop_subscene(cube, rows, cols);
    }
    out.ingest_seconds = seconds_since(t0);

    auto t1 = Clock::now();
    if (cfg.preprocess.enabled) {
        LabeledSamples spectra = to_labeled_samples(cube);
        PcaTarget target =
            cfg.preprocess.variance
                ? PcaTarget::variance_threshold(*cfg.preprocess.variance)
                : PcaTarget::n_components(cfg.preprocess.pcs);
        PcaModel pca = fit_pca(spectra.features, target);
        HsiCube reduced = transform_pca(pca, cube);
        out.samples = extract_patches(reduced, cfg.preprocess.window);
        if (cfg.preprocess.scale)
            out.samples.features = minmax_scale(out.samples.features);
    } else {
        out.samples = to_labeled_samples(cube);
    }
    out.preprocess_seconds = seconds_since(t1);
    out.map_rows = cube.rows;
    out.map_cols = cube.cols;
    return out;
}

PipelineResult run_pipeline(const ExperimentConfig& cfg) {
    return run_pipeline(cfg, prepare_samples(cfg));
}

PipelineResult run_pipeline(const ExperimentConfig& cfg,
                            const PreparedSamples& prepared) {
    PipelineResult res;
    res.stage_seconds["ingest"] = prepared.ingest_seconds;
    res.stage_seconds["preprocess"] = prepared.preprocess_seconds;
    res.truth = prepared.samples.labels;
    res.coords = prepared.samples.coords;
    res.map_rows = prepared.map_rows;
    res.map_cols = prepared.map_cols;
    const Matrix& x = prepared.samples.features;

    auto t0 = Clock::now();
    Matrix abar;
    Matrix adjacency;
    if (cfg.graph.identity) {
        abar = Matrix::Identity(x.rows(), x.rows());
    } else {
        KnnGraph g = build_knn(x, cfg.graph.k, cfg.graph.symmetrize);
        abar = std::move(g.normalized);
        adjacency = std::move(g.adjacency);
    }
    res.stage_seconds["graph"] = seconds_since(t0);

    t0 = Clock::now();
    CoefficientMatrix z;
    if (cfg.solver.model == Model::Egcsc) {
        z = egcsc_solve(x, abar, cfg.solver.lambda);
    } else {
        Matrix kmat = compute_kernel(x, cfg.solver.kernel);
        z = ekgcsc_solve(kmat, abar, cfg.solver.lambda);
    }
    res.solver_residual = z.residual;
    res.stage_seconds["solve"] = seconds_since(t0);

    int n_clusters = cfg.cluster.clusters;
    if (n_clusters == 0) n_clusters = prepared.samples.n_classes();

    t0 = Clock::now();
    Matrix affinity = build_affinity(z.Z, n_clusters, cfg.cluster.affinity,
                                     cfg.cluster.affinity_opts);
    res.assignment = spectral_cluster(affinity, n_clusters, cfg.cluster.seed,
                                      cfg.cluster.restarts);
    res.stage_seconds["cluster"] = seconds_since(t0);

    t0 = Clock::now();
    double total = 0.0;
    for (const auto& [stage, s] : res.stage_seconds) total += s;
    res.report = evaluate(res.assignment.labels, res.truth, total);
    res.matched_labels =
        apply_matching(res.assignment.labels, res.report.matching);
    res.stage_seconds["metrics"] = seconds_since(t0);
    res.total_seconds = total + res.stage_seconds["metrics"];
    res.report.runtime_seconds = res.total_seconds;

    if (!cfg.output_dir.empty()) {
        std::filesystem::create_directories(cfg.output_dir);
        io::save_matrix(z.Z, cfg.output_dir / "z.gcsm");
        io::save_matrix(affinity, cfg.output_dir / "affinity.gcsm");
        if (adjacency.size() > 0)
            io::save_edge_list(adjacency, cfg.output_dir / "graph_edges.csv");
        io::save_labels_csv(res.assignment.labels,
                            cfg.output_dir / "labels_pred.csv");
        io::save_labels_csv(res.truth, cfg.output_dir / "labels_truth.csv");
        nlohmann::json sidecar;
        sidecar["lambda"] = cfg.solver.lambda;
        sidecar["model"] =
            cfg.solver.model == Model::Egcsc ? "egcsc" : "ekgcsc";
        sidecar["residual"] = z.residual;
        sidecar["stage_seconds"] = res.stage_seconds;
        io::atomic_write(cfg.output_dir / "solve.json", sidecar.dump(2));
        io::atomic_write(cfg.output_dir / "report.json",
                         res.report.to_json());
        if (!res.coords.empty() && res.map_rows > 0) {
            io::save_coords_csv(res.coords, cfg.output_dir / "coords.csv");
            render_cluster_map(res.matched_labels, res.coords, res.map_rows,
                               res.map_cols, cfg.output_dir / "map_pred.png");
            render_cluster_map(res.truth, res.coords, res.map_rows,
                               res.map_cols, cfg.output_dir / "map_truth.png");
        }
    }
    return res;
}

SweepParam parse_sweep_param(const std::string& s) {
    if (s == "lambda") return SweepParam::Lambda;
    if (s == "k") return SweepParam::K;
    if (s == "gamma") return SweepParam::Gamma;
    if (s == "pcs") return SweepParam::Pcs;
    throw ArgumentError("unknown sweep parameter: " + s);
}

std::vector<SweepRow> sweep(const ExperimentConfig& cfg, SweepParam param,
                            const std::vector<double>& values) {
    if (values.empty()) throw ArgumentError("sweep: empty value list");
    std::vector<SweepRow> rows;
    // preprocessing is invariant for everything except the PC count
    std::optional<PreparedSamples> shared;
    if (param != SweepParam::Pcs) shared = prepare_samples(cfg);

    for (double v : values) {
        ExperimentConfig run_cfg = cfg;
        run_cfg.output_dir.clear();
        switch (param) {
            case SweepParam::Lambda: run_cfg.solver.lambda = v; break;
            case SweepParam::K: run_cfg.graph.k = static_cast<int>(v); break;
            case SweepParam::Gamma:
                run_cfg.solver.kernel = KernelDescriptor::gaussian(v);
                break;
            case SweepParam::Pcs:
                run_cfg.preprocess.pcs = static_cast<int>(v);
                run_cfg.preprocess.variance.reset();
                break;
        }
        SweepRow row;
        row.value = v;
        try {
            PipelineResult res = shared ? run_pipeline(run_cfg, *shared)
                                        : run_pipeline(run_cfg);
            row.ok = true;
            row.oa = res.report.oa;
            row.nmi = res.report.nmi;
            row.kappa = res.report.kappa;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void save_sweep_csv(const std::vector<SweepRow>& rows, SweepParam param,
                    const std::filesystem::path& path) {
    const char* name = "value";
    switch (param) {
        case SweepParam::Lambda: name = "lambda"; break;
        case SweepParam::K: name = "k"; break;
        case SweepParam::Gamma: name = "gamma"; break;
        case SweepParam::Pcs: name = "pcs"; break;
    }
    std::ostringstream os;
    os << name << ",oa,nmi,kappa,error\n";
    for (const auto& r : rows) {
        os << r.value << ',';
        if (r.ok) {
            os << r.oa << ',' << r.nmi << ',' << r.kappa << ',';
        } else {
            os << ",,," << r.error;
        }
        os << '\n';
    }
    io::atomic_write(path, os.str());
}

}  // namespace gcsc
