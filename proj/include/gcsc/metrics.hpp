#pragma once

#include <map>
#include <string>
#include <vector>

#include "gcsc/types.hpp"

namespace gcsc {

/// Optimal assignment on a square cost matrix (minimization); returns
/// the column matched to each row.
std::vector<int> hungarian(const Matrix& cost);

struct MatchResult {
    double oa = 0.0;
    std::map<int, int> matching;       // predicted id -> true label
    Eigen::MatrixXi confusion;         // K_true x K_pred, raw labels
    std::vector<int> true_ids;         // row order of confusion
    std::vector<int> pred_ids;         // column order of confusion
};

/// Overall accuracy under the agreement-maximizing one-to-one matching
/// of predicted ids onto true labels.
MatchResult overall_accuracy(const std::vector<int>& pred,
                             const std::vector<int>& truth);

/// Normalized mutual information, sqrt-of-entropies normalization,
/// natural log, 0/0 -> 0.
double nmi(const std::vector<int>& pred, const std::vector<int>& truth);

/// Cohen's kappa on the matched confusion matrix.
double kappa(const std::vector<int>& pred, const std::vector<int>& truth,
             const std::map<int, int>& matching);

struct ClusterReport {
    double oa = 0.0;
    double nmi = 0.0;
    double kappa = 0.0;
    Eigen::MatrixXi confusion;
    std::vector<int> true_ids;
    std::vector<int> pred_ids;
    std::map<int, int> matching;
    double runtime_seconds = 0.0;

    std::string to_json() const;
};

ClusterReport evaluate(const std::vector<int>& pred,
                       const std::vector<int>& truth,
                       double runtime_seconds = 0.0);

/// Relabels predictions through the matching (unmatched ids keep a
/// fresh id past the true label range), for map rendering.
std::vector<int> apply_matching(const std::vector<int>& pred,
                                const std::map<int, int>& matching);

}  // namespace gcsc
