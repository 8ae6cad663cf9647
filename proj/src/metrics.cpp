#include "gcsc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <json.hpp>

namespace gcsc {

std::vector<int> hungarian(const Matrix& cost) {
    const int n = static_cast<int>(cost.rows());
    if (cost.cols() != n) throw ArgumentError("hungarian: cost must be square");
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, false);
        do {
            used[j0] = true;
            int i0 = p[j0], j1 = 0;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> match(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] > 0) match[p[j] - 1] = j - 1;
    return match;
}

namespace {

struct Contingency {
    std::vector<int> pred_ids, true_ids;
    Eigen::MatrixXi counts;  // pred x true
    int n = 0;
};

Contingency build_contingency(const std::vector<int>& pred,
                              const std::vector<int>& truth) {
    if (pred.size() != truth.size())
        throw ArgumentError("label vectors differ in length");
    if (pred.empty()) throw ArgumentError("empty label vectors");
    Contingency c;
    c.n = static_cast<int>(pred.size());
    std::set<int> ps(pred.begin(), pred.end());
    std::set<int> ts(truth.begin(), truth.end());
    c.pred_ids.assign(ps.begin(), ps.end());
    c.true_ids.assign(ts.begin(), ts.end());
    std::map<int, int> pidx, tidx;
    for (size_t i = 0; i < c.pred_ids.size(); ++i) pidx[c.pred_ids[i]] = int(i);
    for (size_t i = 0; i < c.true_ids.size(); ++i) tidx[c.true_ids[i]] = int(i);
    c.counts = Eigen::MatrixXi::Zero(int(c.pred_ids.size()),
                                     int(c.true_ids.size()));
    for (size_t i = 0; i < pred.size(); ++i)
        ++c.counts(pidx[pred[i]], tidx[truth[i]]);
    return c;
}

}  // namespace

MatchResult overall_accuracy(const std::vector<int>& pred,
                             const std::vector<int>& truth) {
    Contingency c = build_contingency(pred, truth);
    const int kp = int(c.pred_ids.size());
    const int kt = int(c.true_ids.size());
    const int k = std::max(kp, kt);

    // pad to square, maximize agreement via negated counts
    Matrix cost = Matrix::Zero(k, k);
    for (int i = 0; i < kp; ++i)
        for (int j = 0; j < kt; ++j) cost(i, j) = -double(c.counts(i, j));
    std::vector<int> assign = hungarian(cost);

    MatchResult out;
    long agree = 0;
    for (int i = 0; i < kp; ++i) {
        int j = assign[i];
        if (j < kt) {
            out.matching[c.pred_ids[i]] = c.true_ids[j];
            agree += c.counts(i, j);
        }
    }
    out.oa = double(agree) / double(c.n);
    out.confusion = c.counts.transpose();  // K_true x K_pred
    out.true_ids = c.true_ids;
    out.pred_ids = c.pred_ids;
    return out;
}

double nmi(const std::vector<int>& pred, const std::vector<int>& truth) {
    Contingency c = build_contingency(pred, truth);
    const double n = double(c.n);
    Eigen::VectorXi prow = c.counts.rowwise().sum();
    Eigen::VectorXi pcol = c.counts.colwise().sum();
    double mi = 0.0;
    for (int i = 0; i < c.counts.rows(); ++i)
        for (int j = 0; j < c.counts.cols(); ++j) {
            int nij = c.counts(i, j);
            if (nij == 0) continue;
            mi += (nij / n) *
                  std::log(nij * n / (double(prow[i]) * double(pcol[j])));
        }
    auto entropy = [&](const Eigen::VectorXi& marg) {
        double h = 0.0;
        for (int i = 0; i < marg.size(); ++i) {
            if (marg[i] == 0) continue;
            double p = marg[i] / n;
            h -= p * std::log(p);
        }
        return h;
    };
    double hp = entropy(prow), ht = entropy(pcol);
    double denom = std::sqrt(hp * ht);
    if (denom == 0.0) return 0.0;
    return mi / denom;
}

double kappa(const std::vector<int>& pred, const std::vector<int>& truth,
             const std::map<int, int>& matching) {
    std::vector<int> matched = apply_matching(pred, matching);
    Contingency c = build_contingency(matched, truth);
    const double n = double(c.n);
    // square confusion over the union of matched-pred and truth ids
    std::set<int> ids(c.pred_ids.begin(), c.pred_ids.end());
    ids.insert(c.true_ids.begin(), c.true_ids.end());
    std::map<int, int> idx;
    int k = 0;
    for (int id : ids) idx[id] = k++;
    Matrix conf = Matrix::Zero(k, k);
    for (size_t i = 0; i < matched.size(); ++i)
        conf(idx[truth[i]], idx[matched[i]]) += 1.0;
    double po = conf.trace() / n;
    double pe = 0.0;
    for (int i = 0; i < k; ++i)
        pe += conf.row(i).sum() * conf.col(i).sum() / (n * n);
    if (pe >= 1.0) return 0.0;
    return (po - pe) / (1.0 - pe);
}

std::vector<int> apply_matching(const std::vector<int>& pred,
                                const std::map<int, int>& matching) {
    int fresh = 0;
    for (const auto& [p, t] : matching) fresh = std::max(fresh, t);
    std::map<int, int> extra;
    std::vector<int> out(pred.size());
    for (size_t i = 0; i < pred.size(); ++i) {
        auto it = matching.find(pred[i]);
        if (it != matching.end()) {
            out[i] = it->second;
        } else {
            auto [eit, inserted] = extra.try_emplace(pred[i], fresh + 1);
            if (inserted) ++fresh;
            out[i] = eit->second;
        }
    }
    return out;
}

ClusterReport evaluate(const std::vector<int>& pred,
                       const std::vector<int>& truth,
                       double runtime_seconds) {
    MatchResult m = overall_accuracy(pred, truth);
    ClusterReport r;
    r.oa = m.oa;
    r.nmi = nmi(pred, truth);
    r.kappa = gcsc::kappa(pred, truth, m.matching);
    r.confusion = m.confusion;
    r.true_ids = m.true_ids;
    r.pred_ids = m.pred_ids;
    r.matching = m.matching;
    r.runtime_seconds = runtime_seconds;
    return r;
}

std::string ClusterReport::to_json() const {
    nlohmann::json j;
    j["oa"] = oa;
    j["nmi"] = nmi;
    j["kappa"] = kappa;
    j["runtime_seconds"] = runtime_seconds;
    std::vector<std::vector<int>> conf;
    for (Eigen::Index r = 0; r < confusion.rows(); ++r) {
        std::vector<int> row;
        for (Eigen::Index c = 0; c < confusion.cols(); ++c)
            row.push_back(confusion(r, c));
        conf.push_back(std::move(row));
    }
    j["confusion"] = conf;
    j["confusion_row_labels"] = true_ids;
    j["confusion_col_labels"] = pred_ids;
    nlohmann::json m = nlohmann::json::object();
    for (const auto& [p, t] : matching) m[std::to_string(p)] = t;
    j["matching"] = m;
    return j.dump(2);
}

}  // namespace gcsc
