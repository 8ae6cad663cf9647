#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "gcsc/metrics.hpp"

using namespace gcsc;

namespace {

// factorial enumeration oracle for the best label matching
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
            auto pi = std::find(pids.begin(), pids.end(), pred[i]) - pids.begin();
            size_t mapped = perm[pi];
            if (mapped < tids.size() && tids[mapped] == truth[i]) ++agree;
        }
        best = std::max(best, agree);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return double(best) / double(pred.size());
}

}  // namespace

TEST_CASE("permuted predictions are perfectly accurate") {
    std::vector<int> truth = {1, 1, 2, 2, 3, 3};
    std::vector<int> pred = {7, 7, 0, 0, 4, 4};  // a pure relabeling
    MatchResult m = overall_accuracy(pred, truth);
    CHECK(m.oa == 1.0);
    CHECK(m.matching.at(7) == 1);
    CHECK(m.matching.at(0) == 2);
    CHECK(m.matching.at(4) == 3);
}

TEST_CASE("constant predictor on balanced two classes scores 0.5") {
    std::vector<int> truth = {1, 1, 2, 2};
    std::vector<int> pred = {0, 0, 0, 0};
    CHECK(overall_accuracy(pred, truth).oa == 0.5);
}

TEST_CASE("Hungarian matching equals factorial brute force") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<int> kdist(2, 6);
        int kt = kdist(rng), kp = kdist(rng);
        std::vector<int> truth(30), pred(30);
        std::uniform_int_distribution<int> td(1, kt), pd(0, kp - 1);
        for (int i = 0; i < 30; ++i) {
            truth[i] = td(rng);
            pred[i] = pd(rng);
        }
        CHECK(overall_accuracy(pred, truth).oa ==
              doctest::Approx(brute_force_oa(pred, truth)).epsilon(1e-12));
    }
}

TEST_CASE("length mismatch and empty input raise") {
    CHECK_THROWS_AS(overall_accuracy({1, 2}, {1}), ArgumentError);
    CHECK_THROWS_AS(overall_accuracy({}, {}), ArgumentError);
}

TEST_CASE("NMI of identical labelings is 1") {
    std::vector<int> truth = {1, 2, 3, 1, 2, 3};
    CHECK(nmi(truth, truth) == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<int> permuted = {5, 9, 2, 5, 9, 2};
    CHECK(nmi(permuted, truth) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("NMI of an exactly independent split is 0") {
    // contingency is the exact product of the marginals
    std::vector<int> truth = {1, 1, 2, 2, 1, 1, 2, 2};
    std::vector<int> pred = {0, 1, 0, 1, 0, 1, 0, 1};
    CHECK(std::abs(nmi(pred, truth)) <= 1e-12);
}

TEST_CASE("NMI matches hand-computed contingency [[2,1],[1,2]]") {
    std::vector<int> truth = {1, 1, 1, 2, 2, 2};
    std::vector<int> pred = {0, 0, 1, 0, 1, 1};
    // hand arithmetic from the 2x2 contingency, natural log
    const double n = 6.0;
    double mi = 0.0;
    double cells[2][2] = {{2, 1}, {1, 2}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            mi += (cells[i][j] / n) * std::log(cells[i][j] * n / (3.0 * 3.0));
    double h = -2.0 * (0.5 * std::log(0.5));
    double expect = mi / std::sqrt(h * h);
    CHECK(nmi(pred, truth) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("NMI is symmetric") {
    std::vector<int> a = {1, 1, 2, 3, 3, 2, 1};
    std::vector<int> b = {0, 1, 1, 2, 2, 0, 0};
    CHECK(nmi(a, b) == doctest::Approx(nmi(b, a)).epsilon(1e-14));
}

TEST_CASE("kappa is 1 for perfect matched agreement") {
    std::vector<int> truth = {1, 2, 3, 1, 2, 3};
    std::vector<int> pred = {4, 5, 6, 4, 5, 6};
    MatchResult m = overall_accuracy(pred, truth);
    CHECK(kappa(pred, truth, m.matching) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kappa is 0 at chance agreement") {
    // matched confusion [[25,25],[25,25]]
    std::vector<int> truth, pred;
    for (int i = 0; i < 25; ++i) { truth.push_back(1); pred.push_back(0); }
    for (int i = 0; i < 25; ++i) { truth.push_back(1); pred.push_back(1); }
    for (int i = 0; i < 25; ++i) { truth.push_back(2); pred.push_back(0); }
    for (int i = 0; i < 25; ++i) { truth.push_back(2); pred.push_back(1); }
    MatchResult m = overall_accuracy(pred, truth);
    CHECK(std::abs(kappa(pred, truth, m.matching)) <= 1e-12);
}

TEST_CASE("metrics are invariant to predicted-id permutation") {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> td(1, 4), pd(0, 3);
    std::vector<int> truth(40), pred(40);
    for (int i = 0; i < 40; ++i) {
        truth[i] = td(rng);
        pred[i] = pd(rng);
    }
    std::vector<int> relabeled(40);
    int map[4] = {17, 3, 99, 5};
    for (int i = 0; i < 40; ++i) relabeled[i] = map[pred[i]];
    ClusterReport a = evaluate(pred, truth);
    ClusterReport b = evaluate(relabeled, truth);
    CHECK(a.oa == doctest::Approx(b.oa).epsilon(1e-14));
    CHECK(a.nmi == doctest::Approx(b.nmi).epsilon(1e-14));
    CHECK(a.kappa == doctest::Approx(b.kappa).epsilon(1e-14));
}

TEST_CASE("report invariants: confusion totals and matched trace") {
    std::vector<int> truth = {1, 1, 2, 2, 3, 3, 3};
    std::vector<int> pred = {0, 1, 1, 1, 2, 2, 0};
    ClusterReport r = evaluate(pred, truth);
    CHECK(r.confusion.sum() == 7);
    // oa equals matched agreement / N by construction of the matching
    long agree = 0;
    std::vector<int> matched = apply_matching(pred, r.matching);
    for (size_t i = 0; i < truth.size(); ++i)
        if (matched[i] == truth[i]) ++agree;
    CHECK(r.oa == doctest::Approx(double(agree) / 7.0).epsilon(1e-14));
}

TEST_CASE("report serializes to JSON with the expected keys") {
    ClusterReport r = evaluate({0, 1, 0, 1}, {1, 2, 1, 2}, 1.5);
    std::string j = r.to_json();
    for (const char* key : {"\"oa\"", "\"nmi\"", "\"kappa\"", "\"confusion\"",
                            "\"matching\"", "\"runtime_seconds\""})
        CHECK(j.find(key) != std::string::npos);
}
