// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. The dataset reproduction criterion skips cleanly when the
// benchmark scenes are not on disk.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "gcsc/pipeline.hpp"

using namespace gcsc;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) std::cout << " — " << detail;
    std::cout << "\n";
    if (!ok) ++g_failures;
}

void report_skip(const std::string& name, const std::string& reason) {
    std::cout << "[SKIP] " << name << " — " << reason << "\n";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

Matrix random_samples(int n, int m, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix x(n, m);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < m; ++j) x(i, j) = dist(rng);
    // scale so the Gram spectrum is O(1); conditioning only, the instance
    // stays random
    return x / std::sqrt(double(n));
}

Matrix gradient_descent_oracle(const Matrix& gram, const Matrix& abar,
                               double lambda) {
    Matrix m = abar.transpose() * gram * abar;
    Matrix r = abar.transpose() * gram;
    Matrix z = Matrix::Zero(gram.rows(), gram.cols());
    double scale = std::max(1.0, r.norm());
    for (int it = 0; it < 500000; ++it) {
        Matrix g = m * z - r + lambda * z;
        if (g.norm() <= 1e-10 * scale) break;
        Matrix mg = m * g + lambda * g;
        double alpha = g.squaredNorm() / g.cwiseProduct(mg).sum();
        z -= alpha * g;
    }
    return z;
}

// ---- criterion 1: closed-form correctness ------------------------------

void criterion_closed_form() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    int count = 0;
    uint64_t seed = 1;
    for (int n : {20, 40, 80})
        for (int m : {5, 15})
            for (int k : {3, 8})
                for (double lambda : {0.1, 1.0, 100.0}) {
                    if (count >= 20) break;
                    ++count;
                    Matrix x = random_samples(n, m, seed++);
                    KnnGraph g = build_knn(x, k);
                    CoefficientMatrix z = egcsc_solve(x, g.normalized, lambda);
                    Matrix gram = x * x.transpose();
                    double rel =
                        gradient_residual(Model::Egcsc, x, g.normalized, z.Z,
                                          lambda) /
                        std::max(1.0, (g.normalized.transpose() * gram).norm());
                    Matrix oracle =
                        gradient_descent_oracle(gram, g.normalized, lambda);
                    double dist = (z.Z - oracle).norm();
                    if (rel > 1e-8 || dist > 1e-5) {
                        ok = false;
                        std::ostringstream os;
                        os << "instance N=" << n << " m=" << m << " k=" << k
                           << " lambda=" << lambda << ": residual " << rel
                           << ", oracle distance " << dist;
                        detail = os.str();
                    }
                }
    double secs = seconds_since(t0);
    if (ok && secs >= 10.0) {
        ok = false;
        detail = "runtime " + std::to_string(secs) + " s exceeds 10 s";
    }
    report("closed-form correctness (20 random instances, oracle + residual)",
           ok, detail);
}

// ---- criterion 2: kernel reduction identity ----------------------------

void criterion_kernel_reduction() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10; ++i) {
        int n = 20 + 10 * (i % 4);
        int m = 4 + (i % 3);
        Matrix x = random_samples(n, m, 100 + i);
        KnnGraph g = build_knn(x, 3 + (i % 4));
        double lambda = std::pow(10.0, double(i % 5) - 2.0);
        CoefficientMatrix a = egcsc_solve(x, g.normalized, lambda);
        CoefficientMatrix b =
            ekgcsc_solve(compute_kernel(x, KernelDescriptor::linear()),
                         g.normalized, lambda);
        double diff = (a.Z - b.Z).cwiseAbs().maxCoeff();
        if (diff > 1e-8) {
            ok = false;
            detail = "entrywise gap " + std::to_string(diff);
        }
    }
    double secs = seconds_since(t0);
    if (ok && secs >= 2.0) {
        ok = false;
        detail = "runtime " + std::to_string(secs) + " s exceeds 2 s";
    }
    report("kernel reduction identity (linear kernel = sample-space solve)",
           ok, detail);
}

// ---- criterion 3: Euclidean reduction ----------------------------------

void criterion_euclidean_reduction() {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg;
    cfg.input.kind = InputConfig::Kind::Synthetic;
    cfg.input.synthetic = {3, 30, 4, 100, 0.01, 11};
    cfg.preprocess.enabled = false;
    cfg.solver.model = Model::Egcsc;
    cfg.solver.lambda = 10.0;
    cfg.graph.k = 10;
    cfg.cluster.affinity_opts.d_per_cluster = 4;
    cfg.cluster.restarts = 20;

    bool ok = true;
    std::string detail;
    try {
        cfg.graph.identity = true;
        PipelineResult frob = run_pipeline(cfg);
        cfg.graph.identity = false;
        PipelineResult knn = run_pipeline(cfg);
        std::ostringstream os;
        os << "OA identity=" << frob.report.oa << ", kNN=" << knn.report.oa
           << ", residual=" << knn.solver_residual;
        detail = os.str();
        ok = frob.report.oa >= 0.99 && knn.report.oa >= 0.99 &&
             knn.solver_residual <= kResidualTolerance;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    double secs = seconds_since(t0);
    if (ok && secs >= 30.0) {
        ok = false;
        detail = "runtime " + std::to_string(secs) + " s exceeds 30 s";
    }
    report("Euclidean reduction (identity and kNN graphs, OA >= 0.99)", ok,
           detail);
}

// ---- criterion 4: metrics oracles --------------------------------------

double brute_force_oa(const std::vector<int>& pred,
                      const std::vector<int>& truth) {
    std::set<int> ps(pred.begin(), pred.end()), ts(truth.begin(), truth.end());
    std::vector<int> pids(ps.begin(), ps.end()), tids(ts.begin(), ts.end());
    size_t k = std::max(pids.size(), tids.size());
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    long best = 0;
    do {
        long agree = 0;
        for (size_t i = 0; i < pred.size(); ++i) {
            size_t pi =
                std::find(pids.begin(), pids.end(), pred[i]) - pids.begin();
            size_t mapped = perm[pi];
            if (mapped < tids.size() && tids[mapped] == truth[i]) ++agree;
        }
        best = std::max(best, agree);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return double(best) / double(pred.size());
}

void criterion_metrics() {
    bool ok = true;
    std::string detail;
    std::mt19937_64 rng(21);

    for (int trial = 0; trial < 50 && ok; ++trial) {
        std::uniform_int_distribution<int> kdist(2, 6);
        int kt = kdist(rng), kp = kdist(rng);
        std::vector<int> truth(40), pred(40);
        std::uniform_int_distribution<int> td(1, kt), pd(0, kp - 1);
        for (int i = 0; i < 40; ++i) {
            truth[i] = td(rng);
            pred[i] = pd(rng);
        }
        double got = overall_accuracy(pred, truth).oa;
        double want = brute_force_oa(pred, truth);
        if (std::abs(got - want) > 1e-12) {
            ok = false;
            detail = "OA " + std::to_string(got) + " vs brute force " +
                     std::to_string(want);
        }
    }

    // hand-computed contingency [[2,1],[1,2]]
    if (ok) {
        std::vector<int> truth = {1, 1, 1, 2, 2, 2};
        std::vector<int> pred = {0, 0, 1, 0, 1, 1};
        double mi = 0.0;
        double cells[2][2] = {{2, 1}, {1, 2}};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                mi += (cells[i][j] / 6.0) *
                      std::log(cells[i][j] * 6.0 / 9.0);
        double h = -2.0 * 0.5 * std::log(0.5);
        if (std::abs(nmi(pred, truth) - mi / h) > 1e-12) {
            ok = false;
            detail = "NMI hand value mismatch";
        }
        // matched confusion [[2,1],[1,2]]: po = 2/3, pe = 1/2, kappa = 1/3
        MatchResult m = overall_accuracy(pred, truth);
        if (ok &&
            std::abs(kappa(pred, truth, m.matching) - 1.0 / 3.0) > 1e-12) {
            ok = false;
            detail = "kappa hand value mismatch";
        }
    }

    // permutation invariance of all three metrics
    if (ok) {
        std::vector<int> truth(60), pred(60);
        std::uniform_int_distribution<int> td(1, 5), pd(0, 4);
        for (int i = 0; i < 60; ++i) {
            truth[i] = td(rng);
            pred[i] = pd(rng);
        }
        int map[5] = {31, 7, 12, 90, 2};
        std::vector<int> relabeled(60);
        for (int i = 0; i < 60; ++i) relabeled[i] = map[pred[i]];
        ClusterReport a = evaluate(pred, truth);
        ClusterReport b = evaluate(relabeled, truth);
        if (std::abs(a.oa - b.oa) > 1e-12 ||
            std::abs(a.nmi - b.nmi) > 1e-12 ||
            std::abs(a.kappa - b.kappa) > 1e-12) {
            ok = false;
            detail = "metrics changed under label permutation";
        }
    }
    report("metrics oracles (brute-force OA, hand NMI/kappa, invariance)", ok,
           detail);
}

// ---- criterion 5: spectral exactness -----------------------------------

void criterion_spectral() {
    bool ok = true;
    std::string detail;
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> weight(0.5, 1.0);
    for (int k : {2, 3, 5}) {
        // uneven block sizes, N <= 60
        std::vector<int> sizes;
        int n = 0;
        for (int b = 0; b < k; ++b) {
            int s = 6 + (b * 3) % 8;
            sizes.push_back(s);
            n += s;
        }
        Matrix c = Matrix::Zero(n, n);
        std::vector<int> truth;
        int off = 0;
        for (int b = 0; b < k; ++b) {
            for (int i = 0; i < sizes[b]; ++i)
                for (int j = 0; j < sizes[b]; ++j) {
                    double w = weight(rng);
                    c(off + i, off + j) = std::max(c(off + i, off + j), w);
                    c(off + j, off + i) = c(off + i, off + j);
                }
            for (int i = 0; i < sizes[b]; ++i) truth.push_back(b + 1);
            off += sizes[b];
        }
        for (uint64_t seed = 0; seed <= 9 && ok; ++seed) {
            ClusterAssignment a = spectral_cluster(c, k, seed);
            if (overall_accuracy(a.labels, truth).oa != 1.0) {
                ok = false;
                detail = "K=" + std::to_string(k) + " seed " +
                         std::to_string(seed) + " not exact";
            }
        }
    }
    report("spectral clustering exactness (block-diagonal, seeds 0-9)", ok,
           detail);
}

// ---- criterion 6: published-accuracy reproduction (dataset-gated) ------

fs::path data_dir(const fs::path& config_dir) {
    if (const char* env = std::getenv("GCSC_DATA_DIR")) return env;
    if (fs::exists("data")) return "data";
    return config_dir.parent_path() / "data";
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

struct ReproCase {
    std::string config;   // file under configs/
    std::string file;     // dataset file that must exist
    double lo, hi;        // accepted median-OA interval
};

void criterion_reproduction(const fs::path& config_dir) {
    const std::string name =
        "reproduction of published accuracies (benchmark scenes)";
    fs::path dir = data_dir(config_dir);
    std::vector<ReproCase> cases = {
        {"salinasA_ekgcsc.json", "SalinasA_corrected.mat", 1.0, 1.0},
        {"salinasA_egcsc.json", "SalinasA_corrected.mat", 0.99, 1.0},
        {"indian_pines_ekgcsc.json", "Indian_pines_corrected.mat",
         0.8761 - 0.03, 0.8761 + 0.03},
        {"paviaU_ekgcsc.json", "PaviaU.mat", 0.9736 - 0.02, 0.9736 + 0.02},
        {"paviaU_egcsc.json", "PaviaU.mat", 0.8442 - 0.03, 0.8442 + 0.03},
    };

    bool any_present = false;
    for (const auto& c : cases)
        if (fs::exists(dir / c.file)) any_present = true;
    if (!any_present) {
        report_skip(name, "no benchmark scenes under " + dir.string() +
                              " (set GCSC_DATA_DIR or run "
                              "scripts/fetch_datasets.sh)");
        return;
    }

    bool ok = true;
    std::ostringstream detail;
    for (const auto& c : cases) {
        if (!fs::exists(dir / c.file)) {
            detail << c.config << ": skipped (missing " << c.file << "); ";
            continue;
        }
        try {
            ExperimentConfig cfg =
                ExperimentConfig::from_json_file(config_dir / c.config);
            cfg.input.path = dir / fs::path(cfg.input.path).filename();
            PreparedSamples prep = prepare_samples(cfg);
            std::vector<double> oas;
            for (uint64_t seed : {0, 1, 2, 3, 4}) {
                cfg.cluster.seed = seed;
                oas.push_back(run_pipeline(cfg, prep).report.oa);
            }
            double med = median(oas);
            detail << c.config << ": median OA " << med << "; ";
            if (med < c.lo || med > c.hi) ok = false;
        } catch (const std::exception& e) {
            ok = false;
            detail << c.config << ": error " << e.what() << "; ";
        }
    }
    report(name, ok, detail.str());
}

// ---- criterion 7: sensitivity ------------------------------------------

void criterion_sensitivity() {
    // benchmark where the oracle pipeline first confirms both trends:
    // overlapping subspaces with visible noise make lambda matter, while
    // the kNN graph stays benign across k
    ExperimentConfig cfg;
    cfg.input.kind = InputConfig::Kind::Synthetic;
    cfg.input.synthetic = {3, 30, 4, 100, 0.05, 17};
    cfg.preprocess.enabled = false;
    cfg.solver.model = Model::Egcsc;
    cfg.solver.lambda = 10.0;
    cfg.graph.k = 10;
    cfg.cluster.affinity_opts.d_per_cluster = 4;
    cfg.cluster.restarts = 20;

    bool ok = true;
    std::string detail;
    try {
        std::vector<double> ks;
        for (int k = 5; k <= 40; k += 5) ks.push_back(k);
        auto krows = sweep(cfg, SweepParam::K, ks);
        double kmin = 1.0, kmax = 0.0;
        for (const auto& r : krows) {
            if (!r.ok) throw StateError("k sweep failed at " +
                                        std::to_string(r.value));
            kmin = std::min(kmin, r.oa);
            kmax = std::max(kmax, r.oa);
        }

        std::vector<double> lambdas;
        for (int e = -3; e <= 3; ++e) lambdas.push_back(std::pow(10.0, e));
        auto lrows = sweep(cfg, SweepParam::Lambda, lambdas);
        double lmin = 1.0, lmax = 0.0;
        for (const auto& r : lrows) {
            if (!r.ok) throw StateError("lambda sweep failed at " +
                                        std::to_string(r.value));
            lmin = std::min(lmin, r.oa);
            lmax = std::max(lmax, r.oa);
        }

        std::ostringstream os;
        os << "k-range " << (kmax - kmin) << " (<= 0.05), lambda-range "
           << (lmax - lmin) << " (>= 0.10)";
        detail = os.str();
        ok = (kmax - kmin) <= 0.05 && (lmax - lmin) >= 0.10;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report("sensitivity (k insensitive, lambda significant)", ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
    fs::path config_dir = argc > 1 ? argv[1] : "configs";
    criterion_closed_form();
    criterion_kernel_reduction();
    criterion_euclidean_reduction();
    criterion_metrics();
    criterion_spectral();
    criterion_reproduction(config_dir);
    criterion_sensitivity();
    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed (or cleanly skipped)\n";
    return 0;
}
