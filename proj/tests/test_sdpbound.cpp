#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "bookcross/exact.hpp"
#include "bookcross/sdpbound.hpp"
#include "reference_values.hpp"

using namespace bookcross;

TEST(FjDense, CompleteGraphOnThreeVertices) {
    const auto r = solve_fj(fj_dense_model(3, {{0, 1}, {1, 2}, {0, 2}}, 3));
    ASSERT_EQ(r.solution.status, SdpStatus::Optimal);
    EXPECT_NEAR(r.solution.objective_value, 3.0, 1e-6);
}

TEST(FjDense, GoemansWilliamsonOnFiveCycle) {
    const auto r = solve_fj(fj_dense_model(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}, 2));
    ASSERT_EQ(r.solution.status, SdpStatus::Optimal);
    EXPECT_NEAR(r.solution.objective_value, 2.5 * (1 + std::cos(std::numbers::pi / 5)), 1e-6);
}

TEST(FjDense, SevenThreeAtLeastThirtyThree) {
    const auto r = fj_dense(ChordGraph(7), 3);
    ASSERT_EQ(r.solution.status, SdpStatus::Optimal);
    EXPECT_GE(r.solution.objective_value, 33.0);
}

TEST(FjDense, VertexGuard) {
    EXPECT_THROW(fj_dense_model(ChordGraph(27), 3), InputError);
    EXPECT_THROW(fj_dense_model(ChordGraph(7), 1), InputError);
}

TEST(FjReduced, AgreesWithDense) {
    for (int n : {7, 9, 11, 13})
        for (int k : {2, 3, 4}) {
            const auto dense = fj_dense(ChordGraph(n), k);
            const auto red = fj_reduced(n, k);
            ASSERT_EQ(dense.solution.status, SdpStatus::Optimal);
            ASSERT_EQ(red.solution.status, SdpStatus::Optimal);
            const double v = dense.solution.objective_value;
            EXPECT_LE(std::abs(v - red.solution.objective_value), 1e-5 * (1 + std::abs(v))) << n << " " << k;
        }
}

TEST(FjReduced, ProblemShape) {
    const auto p = assemble_reduced(39, 3);
    int psd = 0;
    int lp = 0;
    for (const auto& b : p.blocks) {
        if (b.kind == ConeKind::Psd) {
            ++psd;
            EXPECT_EQ(b.dim, 18);
        } else {
            ++lp;
            EXPECT_EQ(b.dim, 20 * 171);
        }
    }
    EXPECT_EQ(psd, 20);
    EXPECT_EQ(lp, 1);
    EXPECT_EQ(p.num_vars(), 18 + 20 * 171);
    EXPECT_THROW(assemble_reduced(10, 3), UnsupportedError);
    EXPECT_THROW(assemble_reduced(5, 3), InputError);
}

TEST(FjReduced, AdjacencyEigenvaluesAreExactCosineSums) {
    // lambda_ij(m) must equal the m-th eigenvalue of the block taken from
    // the actual adjacency matrix.
    for (int n : {7, 11, 15}) {
        const int d = n / 2;
        const auto a = assemble_block_circulant(n);
        for (int i = 2; i <= d; ++i)
            for (int j = i; j <= d; ++j)
                for (int m = 0; m <= d; ++m) {
                    Eigen::VectorXd v(n);
                    for (int s = 0; s < n; ++s) v(s) = std::cos(2.0 * std::numbers::pi * m * s / n);
                    const Eigen::MatrixXd blk = a.block((i - 2) * n, (j - 2) * n, n, n).cast<double>();
                    const Eigen::VectorXd av = blk * v;
                    EXPECT_NEAR((av - adjacency_eigenvalue(i, j, m, n) * v).norm(), 0.0, 1e-9);
                }
    }
}

TEST(FjReduced, ViewIsConsistent) {
    const int n = 11;
    const int k = 3;
    const auto r = fj_reduced(n, k);
    const auto pt = repair_feasibility(r.model, r.solution.y);
    const auto view = reduced_view(n, k, pt.y);
    ASSERT_EQ(view.x_blocks.size(), 6u);
    ASSERT_EQ(view.lambda_blocks.size(), 6u);
    const double c = (k - 1.0) / (2.0 * k);
    for (int m = 0; m <= view.d; ++m) {
        const auto& lam = view.lambda_blocks[m];
        EXPECT_NEAR((lam - lam.transpose()).norm(), 0.0, 1e-12);
        Eigen::MatrixXd lmi = lam;
        for (int i = 0; i < view.d - 1; ++i) lmi(i, i) += view.y[i] - c * view.val[i];
        EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(lmi).eigenvalues()(0), 0.0);
    }
    for (const auto& x : view.x_blocks) {
        EXPECT_GE(x.minCoeff(), 0.0);
        EXPECT_NEAR((x - x.transpose()).norm(), 0.0, 0.0);
    }
    EXPECT_EQ(view.val[0], orbit_valency(2, n));
}

TEST(Certify, SandwichAndDominance) {
    for (int n = 7; n <= 11; ++n)
        for (int k = n <= 9 ? 2 : 3; k <= 5; ++k) {
            const auto r = fj_auto(n, k);
            const auto cb = certify_bound(r);
            const auto ex = nu_exact(n, k);
            ASSERT_TRUE(ex.proved_optimal);
            EXPECT_LE(cb.nu_lower, ex.nu) << n << " " << k;
            EXPECT_LE(ex.nu, z_k(n, k));
            EXPECT_GE(cb.fj_value, static_cast<double>(ex.cut_size) - 1e-9);
            EXPECT_LE(cb.fj_value, static_cast<double>(choose(n, 4)) + 1e-6);
            EXPECT_GE(cb.nu_lower, 0);
            EXPECT_EQ(cb.method, n % 2 ? "reduced" : "dense");
            if (k >= 3) {
                EXPECT_GE(alpha_upper_bound(n, k, cb.fj_value), static_cast<double>(ex.nu)) << n << " " << k;
            }
        }
}

TEST(Certify, RepairedPointIsFeasible) {
    for (auto r : {fj_dense(ChordGraph(8), 3), fj_reduced(13, 4)}) {
        const auto pt = repair_feasibility(r.model, r.solution.y);
        const auto s = evaluate_slack(r.model.problem, pt.y);
        EXPECT_GE(min_cone_eigenvalue(r.model.problem, s), 0.0);
    }
}

TEST(Certify, MarginMonotonicity) {
    const auto r = fj_reduced(13, 3);
    double prev = -1.0;
    std::int64_t prev_nu = std::numeric_limits<std::int64_t>::max();
    for (double margin : {0.0, 1e-9, 1e-6, 1e-3, 1e-1}) {
        const auto cb = certify_bound(r, margin);
        EXPECT_GE(cb.fj_value, prev);
        EXPECT_LE(cb.nu_lower, prev_nu);
        prev = cb.fj_value;
        prev_nu = cb.nu_lower;
    }
}

TEST(Certify, RefusesFailedSolutions) {
    auto r = fj_reduced(7, 3);
    r.solution.status = SdpStatus::Failed;
    EXPECT_THROW(certify_bound(r), InvariantError);
    auto far = fj_reduced(7, 3);
    for (double& v : far.solution.y) v = 0.0;
    EXPECT_THROW(certify_bound(far), InvariantError);
}

TEST(Lifting, Examples) {
    EXPECT_EQ(std::ceil(lift_bound(7, 2.0 / 35.0, 8) - 1e-12), 4.0);
    EXPECT_EQ(lift_bound(7, rat(2, 35), 8), rat(4));
    EXPECT_THROW(lift_bound(7, 0.1, 7), InputError);
    EXPECT_THROW(lift_bound(3, 0.1, 7), InputError);
    EXPECT_NEAR(lift_bound(69, 9.2313e-3, 70) / choose(70, 4), 9.2313e-3, 1e-15);
}

TEST(Lifting, PublishedExactRatiosAreMonotone) {
    for (const auto& [k, row] : refvals::kExactNu)
        for (std::size_t i = 1; i < row.size(); ++i) {
            const int m = 7 + static_cast<int>(i) - 1;
            const double lifted = lift_bound(m, static_cast<double>(row[i - 1]) / choose(m, 4), m + 1);
            EXPECT_LE(std::ceil(lifted - 1e-9), row[i]) << k << " " << m;
        }
}

TEST(Alpha, TableValues) {
    for (int k = 3; k <= 10; ++k) EXPECT_EQ(alpha_k(k), refvals::kAlpha[k - 3]);
    EXPECT_THROW(alpha_k(2), UnsupportedError);
    EXPECT_THROW(alpha_k(11), UnsupportedError);
}

TEST(LimitTable, RowsAndGaps) {
    const auto r = fj_reduced(13, 3);
    const auto cb = certify_bound(r);
    const auto rows = limit_table(3, 20, 13, {{3, cb.fj_value}});
    ASSERT_EQ(rows.size(), 18u);
    EXPECT_TRUE(refvals::five_digit_match(rows[0].prior_lower, 2.0000e-2));
    EXPECT_TRUE(refvals::five_digit_match(rows[0].dds_upper, 1.8518e-1));
    EXPECT_TRUE(refvals::five_digit_match(rows[17].prior_lower, 5.9453e-4));
    EXPECT_TRUE(refvals::five_digit_match(rows[17].dds_upper, 4.8750e-3));
    ASSERT_TRUE(rows[0].fj_lower.has_value());
    EXPECT_NEAR(*rows[0].fj_lower, fj_ratio(13, cb.fj_value), 0.0);
    EXPECT_NEAR(*rows[0].quotient, *rows[0].fj_lower / rows[0].dds_upper, 1e-15);
    EXPECT_FALSE(rows[1].fj_lower.has_value());
    EXPECT_FALSE(rows[1].quotient.has_value());
    EXPECT_THROW(limit_table(3, 5, 12, {}), InputError);
}

TEST(LimitTable, PublishedQuotientsAreRatiosOfColumns) {
    EXPECT_NEAR(1.5452e-1 / to_double(dds_limit_ratio(3)), 0.8344, 1e-4);
    EXPECT_NEAR(8.5127e-2 / to_double(dds_limit_ratio(4)), 0.7783, 1e-4);
}
