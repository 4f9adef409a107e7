#include "tvgap/boundsnd.hpp"
#include "tvgap/errors.hpp"
#include "tvgap/oracles.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace tvgap;

namespace {

const SpdMatrix& eye(std::size_t d) {
    static std::vector<SpdMatrix> cache;
    while (cache.size() < d) cache.emplace_back(Matrix::identity(cache.size() + 1));
    return cache[d - 1];
}

DirectionData dd_of(Vector v1, Vector v2, Vector v3) {
    DirectionData dd;
    dd.v1 = std::move(v1);
    dd.v2 = std::move(v2);
    dd.v3 = std::move(v3);
    const std::vector<Vector> vs{dd.v1, dd.v2, dd.v3};
    dd.basis = linalg::orthonormal_basis(vs);
    return dd;
}

}  // namespace

TEST(Project, AxisExamples) {
    const MixtureND f({1, 2}, {3, 4}, eye(2)), g({-1, 0}, {5, 5}, eye(2));
    const ProjectionWitness w = project(f, g, Vector{1, 0});
    EXPECT_EQ(w.f, Mixture1D(1, 3, 1));
    EXPECT_EQ(w.g, Mixture1D(-1, 5, 1));

    const SpdMatrix s(Matrix::diagonal(Vector{4.0, 1.0}));
    const ProjectionWitness w2 = project(MixtureND({1, 2}, {3, 4}, s), MixtureND({0, 0}, {1, 1}, s), Vector{1, 0});
    EXPECT_EQ(w2.f.sigma, 2.0);
}

TEST(Project, Errors) {
    const MixtureND f({1, 2}, {3, 4}, eye(2));
    EXPECT_THROW(project(f, f, Vector{0, 0}), DomainError);
    EXPECT_THROW(project(f, f, Vector{1, 0, 0}), DimensionMismatch);
}

TEST(Project, InvariantsRandom) {
    RandomStream s(3);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t d = 2 + rep % 4;
        const SpdMatrix sigma(testutil::random_spd(s, d));
        const MixtureND f(testutil::random_vector(s, d), testutil::random_vector(s, d), sigma);
        const MixtureND g(testutil::random_vector(s, d), testutil::random_vector(s, d), sigma);
        const Vector t = testutil::random_vector(s, d);
        const ProjectionWitness w = project(f, g, t);
        EXPECT_DOUBLE_EQ(w.f.sigma * w.f.sigma, linalg::quadratic_form(sigma.matrix(), t));
        EXPECT_DOUBLE_EQ(w.f.mu0, linalg::dot(f.mu0, t));
        EXPECT_DOUBLE_EQ(w.g.mu1, linalg::dot(g.mu1, t));
        EXPECT_EQ(w.direction, t);
    }
}

TEST(Project, MatchesSampledProjection) {
    // Kolmogorov-Smirnov distance between samples of <t, x>, x ~ f, and the
    // projected mixture CDF.
    RandomStream s(4);
    const SpdMatrix sigma(testutil::random_spd(s, 3, 1.0));
    const MixtureND f({1, -1, 0.5}, {-2, 0, 1}, sigma);
    const Vector t{0.3, -0.7, 0.2};
    const Mixture1D p = project(f, f, t).f;
    const Matrix& l = sigma.cholesky_factor();
    const int n = 20000;
    std::vector<double> xs;
    xs.reserve(n);
    for (int i = 0; i < n; ++i) {
        const Vector& mu = s.coin() ? f.mu1 : f.mu0;
        const Vector x = linalg::multiply(l, testutil::random_vector(s, 3));
        double v = 0;
        for (int k = 0; k < 3; ++k) v += t[k] * (mu[k] + x[k]);
        xs.push_back(v);
    }
    std::sort(xs.begin(), xs.end());
    double ks = 0;
    for (int i = 0; i < n; ++i) {
        const double cdf = 0.5 * (normal_cdf((xs[i] - p.mu0) / p.sigma) + normal_cdf((xs[i] - p.mu1) / p.sigma));
        ks = std::max({ks, std::abs(cdf - double(i) / n), std::abs(cdf - double(i + 1) / n)});
    }
    EXPECT_LT(ks, 1.63 / std::sqrt(double(n)));  // 1% critical value
}

TEST(SampleDirectionZ, CollinearInputs) {
    const DirectionData dd = dd_of({1, 0, 0}, {1, 0, 0}, {1, 0, 0});
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Vector z = sample_direction_z(dd, seed);
        EXPECT_GE(std::abs(z[0]), 1.0 / 6);
        EXPECT_LE(linalg::norm2(z), 10.0);
        EXPECT_EQ(z[1], 0.0);
        EXPECT_EQ(z[2], 0.0);
    }
}

TEST(SampleDirectionZ, Deterministic) {
    const DirectionData dd = dd_of({1, 2, 0}, {0, 1, 1}, {3, 0, 1});
    EXPECT_EQ(sample_direction_z(dd, 99), sample_direction_z(dd, 99));
    EXPECT_NE(sample_direction_z(dd, 99), sample_direction_z(dd, 100));
}

TEST(SampleDirectionZ, OrthogonalFloors) {
    const DirectionData dd = dd_of({1, 0, 0}, {0, 2, 0}, {0, 0, 3});
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Vector z = sample_direction_z(dd, seed);
        EXPECT_LE(linalg::norm2(z), 10.0);
        EXPECT_GE(std::abs(z[0]), 1.0 / 6);
        EXPECT_GE(std::abs(2 * z[1]), 2.0 / 6);
        EXPECT_GE(std::abs(3 * z[2]), 3.0 / 6);
    }
}

TEST(SampleDirectionZ, LiesInSpan) {
    RandomStream s(6);
    for (int rep = 0; rep < 100; ++rep) {
        const DirectionData dd = dd_of(testutil::random_vector(s, 5), testutil::random_vector(s, 5),
                                       testutil::random_vector(s, 5));
        const Vector z = sample_direction_z(dd, rep);
        Vector rec(5, 0.0);
        for (const Vector& b : dd.basis) {
            const double c = linalg::dot(b, z);
            for (int i = 0; i < 5; ++i) rec[i] += c * b[i];
        }
        EXPECT_LT(linalg::norm2(linalg::subtract(rec, z)), 1e-10 * linalg::norm2(z));
    }
}

TEST(SampleDirectionZ, Errors) {
    DirectionData empty;
    EXPECT_THROW(sample_direction_z(empty, 0), DomainError);
    // A basis orthogonal to v makes the floor unreachable.
    DirectionData bad = dd_of({1, 0}, {1, 0}, {1, 0});
    bad.basis = {Vector{0, 1}};
    EXPECT_THROW(sample_direction_z(bad, 0), RetryLimitExceeded);
}

TEST(Case2Direction, Examples) {
    EXPECT_EQ(case2_direction(dd_of({1, 0}, {1, 0}, {0, 1})), (Vector{1, 1}));
    EXPECT_EQ(case2_direction(dd_of({1, 0}, {1, 0}, {-1, 0})), (Vector{2, 0}));

    const double r = 1 / std::sqrt(2.0);
    const Vector v = case2_direction(dd_of({1, 0}, {1, 0}, {r, r}));
    EXPECT_DOUBLE_EQ(v[0], 1 + r);
    EXPECT_DOUBLE_EQ(v[1], r);
    EXPECT_GE(std::abs(linalg::dot(v, Vector{1, 0})), 1.0);

    EXPECT_THROW(case2_direction(dd_of({1, 0}, {0, 0}, {1, 0})), DomainError);
}

TEST(Case2Direction, InnerProductFloors) {
    RandomStream s(7);
    for (int rep = 0; rep < 500; ++rep) {
        const DirectionData dd = dd_of(testutil::random_vector(s, 4), testutil::random_vector(s, 4),
                                       testutil::random_vector(s, 4));
        const Vector v = case2_direction(dd);
        EXPECT_GE(std::abs(linalg::dot(v, dd.v2)), linalg::norm2(dd.v2) * (1 - 1e-14));
        EXPECT_GE(std::abs(linalg::dot(v, dd.v3)), linalg::norm2(dd.v3) * (1 - 1e-14));
    }
}

TEST(Whiten, Examples) {
    const MixtureND f({1, 2}, {3, 4}, eye(2)), g({0, 0}, {1, 1}, eye(2));
    const auto [wf, wg] = whiten(f, g);
    EXPECT_EQ(wf.mu0, f.mu0);
    EXPECT_EQ(wg.mu1, g.mu1);

    const SpdMatrix s(Matrix::diagonal(Vector{4.0, 1.0}));
    const auto [df, dg] = whiten(MixtureND({2, 3}, {0, 0}, s), MixtureND({0, 0}, {0, 0}, s));
    EXPECT_NEAR(df.mu0[0], 1.0, 1e-15);
    EXPECT_NEAR(df.mu0[1], 3.0, 1e-15);
    EXPECT_LT(linalg::max_abs(linalg::subtract(df.sigma.matrix(), Matrix::identity(2))), 1e-8);
}

TEST(Whiten, RandomCovarianceIsIdentity) {
    RandomStream s(8);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t d = 2 + rep % 5;
        const SpdMatrix sigma(testutil::random_spd(s, d));
        const MixtureND f(testutil::random_vector(s, d), testutil::random_vector(s, d), sigma);
        const auto [wf, wg] = whiten(f, f);
        EXPECT_LT(linalg::max_abs(linalg::subtract(wf.sigma.matrix(), Matrix::identity(d))), 1e-8);
        require_shared_sigma(wf, wg);
    }
}

TEST(TvLowerND, SymmetricInstanceScalesQuadratically) {
    std::vector<double> vals;
    for (double s : {0.1, 0.2, 0.4}) {
        const MixtureND f({s, 0, 0}, {-s, 0, 0}, eye(3)), g({2 * s, 0, 0}, {-2 * s, 0, 0}, eye(3));
        const LowerBoundND d = tv_lower_nd_detail(f, g, 0, GridSpec::closed_form_only());
        ASSERT_TRUE(d.winner);
        const ProjectionCandidate& w = d.candidates[*d.winner];
        EXPECT_EQ(w.witness.construction, DirectionConstruction::deterministic_v);
        EXPECT_EQ(w.bound.best.source, BoundSource::case1_contained);
        EXPECT_EQ(d.best.source, BoundSource::projection_nd);
        ASSERT_TRUE(d.best.witness_direction);
        vals.push_back(d.best.value);
    }
    EXPECT_EQ(vals[1] / vals[0], 4.0);
    EXPECT_EQ(vals[2] / vals[1], 4.0);
}

TEST(TvLowerND, IdenticalIsZero) {
    const MixtureND f({1, 2}, {3, 4}, eye(2));
    EXPECT_EQ(tv_lower_nd(f, f, 0).value, 0.0);
    EXPECT_EQ(tv_lower_nd(f, MixtureND({3, 4}, {1, 2}, eye(2)), 0).source, BoundSource::trivial_zero);
}

TEST(TvLowerND, OneDimensionalEmbedding) {
    const Mixture1D f(-0.1, 0.1, 1), g(-0.2, 0.2, 1);
    const BoundResult r1 = tv_lower_1d(f, g);
    const BoundResult rn = tv_lower_nd(embed(f), embed(g), 5);
    EXPECT_NEAR(rn.value, r1.value, 1e-12 * r1.value);

    RandomStream s(9);
    for (int rep = 0; rep < 100; ++rep) {
        const auto [a, b] = testutil::random_pair_1d(s);
        const double x = tv_lower_1d(a, b).value;
        EXPECT_NEAR(tv_lower_nd(embed(a), embed(b), rep).value, x, 1e-9 * x + 1e-15);
    }
}

TEST(TvLowerND, SingleGaussiansUseDeterministicOnly) {
    const MixtureND f({1, 1}, {1, 1}, eye(2)), g({0, 0}, {0, 0}, eye(2));
    const LowerBoundND d = tv_lower_nd_detail(f, g, 0);
    ASSERT_EQ(d.candidates.size(), 1u);
    EXPECT_EQ(d.candidates[0].witness.construction, DirectionConstruction::deterministic_v);
    EXPECT_GT(d.best.value, 0.0);
}

TEST(TvLowerND, Errors) {
    const MixtureND f({1, 2}, {3, 4}, eye(2));
    EXPECT_THROW(tv_lower_nd(f, MixtureND({1, 2, 3}, {3, 4, 5}, eye(3)), 0), DimensionMismatch);
    const SpdMatrix other(Matrix::diagonal(Vector{2.0, 1.0}));
    EXPECT_THROW(tv_lower_nd(f, MixtureND({1, 2}, {3, 4}, other), 0), SigmaMismatch);
}

TEST(TvLowerND, Diagnostics) {
    const MixtureND f({0.1, 0, 0}, {-0.1, 0, 0}, eye(3)), g({0.2, 0, 0}, {-0.2, 0, 0}, eye(3));
    const NdDiagnostics dg = tv_lower_nd_detail(f, g, 0).diagnostics;
    EXPECT_DOUBLE_EQ(dg.v1_norm, 0.4);
    EXPECT_DOUBLE_EQ(dg.v2_norm, 0.1);
    EXPECT_DOUBLE_EQ(dg.v3_norm, 0.3);
    EXPECT_DOUBLE_EQ(dg.lambda, 1.0);
    EXPECT_TRUE(dg.first_regime);
    EXPECT_DOUBLE_EQ(dg.first_expression, 0.4 * 0.1);
}

TEST(CoordinateFallback, PicksLargestScaledShift) {
    const SpdMatrix s(Matrix::diagonal(Vector{100.0, 1.0}));
    const MixtureND f({0, 0}, {0, 0}, s), g({5, 1}, {5, 1}, s);
    EXPECT_EQ(coordinate_fallback_direction(f, g), (Vector{0, 1}));
}
