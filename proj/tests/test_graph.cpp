#include <doctest.h>

#include "gcsc/graph.hpp"
#include "test_support.hpp"

using namespace gcsc;
using testing::random_matrix;

TEST_CASE("three collinear points, k=1") {
    Matrix x(3, 1);
    x << 0, 1, 10;
    KnnGraph g = build_knn(x, 1, KnnSymmetrize::None);
    Matrix expect(3, 3);
    expect << 0, 1, 0, 1, 0, 0, 0, 1, 0;
    CHECK(g.adjacency == expect);
}

TEST_CASE("k=N-1 gives the complete graph minus the diagonal") {
    Matrix x = random_matrix(8, 3, 1);
    KnnGraph g = build_knn(x, 7);
    Matrix expect = Matrix::Ones(8, 8) - Matrix::Identity(8, 8);
    CHECK(g.adjacency == expect);
}

TEST_CASE("raw adjacency rows all have exactly k ones") {
    Matrix x = random_matrix(20, 5, 2);
    KnnGraph g = build_knn(x, 4);
    for (Eigen::Index i = 0; i < 20; ++i) {
        CHECK(g.adjacency.row(i).sum() == 4.0);
        CHECK(g.adjacency(i, i) == 0.0);
    }
}

TEST_CASE("normalized matrix matches brute-force recomputation") {
    Matrix x = random_matrix(20, 5, 3);
    KnnGraph g = build_knn(x, 4, KnnSymmetrize::Or);
    // oracle: recompute from the definitions
    Matrix a_sym = g.adjacency.cwiseMax(g.adjacency.transpose());
    Matrix tilde = a_sym + Matrix::Identity(20, 20);
    Matrix expect(20, 20);
    Vector deg = tilde.rowwise().sum();
    for (Eigen::Index i = 0; i < 20; ++i)
        for (Eigen::Index j = 0; j < 20; ++j)
            expect(i, j) = tilde(i, j) / std::sqrt(deg[i] * deg[j]);
    CHECK((g.normalized - expect).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("invalid k raises") {
    Matrix x = random_matrix(5, 2, 4);
    CHECK_THROWS_AS(build_knn(x, 0), ArgumentError);
    CHECK_THROWS_AS(build_knn(x, 5), ArgumentError);
}

TEST_CASE("duplicate samples are legal neighbors") {
    Matrix x(4, 2);
    x << 0, 0, 0, 0, 5, 5, 6, 6;
    KnnGraph g = build_knn(x, 1, KnnSymmetrize::None);
    CHECK(g.adjacency(0, 1) == 1.0);  // distance-0 neighbor
    CHECK(g.adjacency(1, 0) == 1.0);
}

TEST_CASE("empty graph normalizes to the identity") {
    Matrix a = Matrix::Zero(5, 5);
    CHECK(normalize_adjacency(a) == Matrix::Identity(5, 5));
}

TEST_CASE("two connected nodes normalize to all-half") {
    Matrix a(2, 2);
    a << 0, 1, 1, 0;
    Matrix abar = normalize_adjacency(a);
    CHECK((abar - Matrix::Constant(2, 2, 0.5)).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("normalize_adjacency validates its input") {
    Matrix bad = Matrix::Identity(3, 3);
    CHECK_THROWS_AS(normalize_adjacency(bad), ArgumentError);
    Matrix vals = Matrix::Zero(3, 3);
    vals(0, 1) = 0.5;
    CHECK_THROWS_AS(normalize_adjacency(vals), ArgumentError);
}

TEST_CASE("largest eigenvalue of the symmetrized normalization is 1") {
    // random symmetric adjacency, N=15
    Matrix x = random_matrix(15, 4, 5);
    KnnGraph g = build_knn(x, 3, KnnSymmetrize::Or);
    Eigen::SelfAdjointEigenSolver<Matrix> es(g.normalized);
    CHECK(es.eigenvalues().maxCoeff() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(es.eigenvalues().cwiseAbs().maxCoeff() <= 1.0 + 1e-8);
    CHECK((g.normalized - g.normalized.transpose()).cwiseAbs().maxCoeff() <=
          1e-12);
    CHECK(g.normalized.minCoeff() >= 0.0);
}

TEST_CASE("kNN relation is invariant to positive scaling plus shift") {
    Matrix x = random_matrix(25, 6, 6);
    KnnGraph a = build_knn(x, 5);
    Matrix y = (x.array() * 3.7 + 11.0).matrix();
    KnnGraph b = build_knn(y, 5);
    CHECK(a.adjacency == b.adjacency);
}

TEST_CASE("graph_embed with the identity returns the samples") {
    Matrix x = random_matrix(10, 4, 7);
    CHECK(graph_embed(x, Matrix::Identity(10, 10)) == x);
}

TEST_CASE("two identical connected samples embed to themselves") {
    Matrix x(2, 3);
    x << 1, 2, 3, 1, 2, 3;
    Matrix a(2, 2);
    a << 0, 1, 1, 0;
    Matrix y = graph_embed(x, normalize_adjacency(a));
    CHECK((y - x).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("graph_embed equals an explicit product") {
    Matrix x = random_matrix(12, 5, 8);
    KnnGraph g = build_knn(x, 3);
    Matrix y = graph_embed(x, g.normalized);
    Matrix oracle(12, 5);
    for (Eigen::Index i = 0; i < 12; ++i)
        for (Eigen::Index j = 0; j < 5; ++j) {
            double s = 0.0;
            for (Eigen::Index t = 0; t < 12; ++t)
                s += g.normalized(i, t) * x(t, j);
            oracle(i, j) = s;
        }
    CHECK((y - oracle).cwiseAbs().maxCoeff() <= 1e-12);
}
