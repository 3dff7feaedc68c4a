#include <random>

#include <gtest/gtest.h>

#include "bookcross/exact.hpp"
#include "reference_values.hpp"

using namespace bookcross;

TEST(Exact, BranchAndBoundMatchesBruteForce) {
    for (int n = 5; n <= 7; ++n)
        for (int k = 1; k <= 4; ++k) {
            const ChordGraph g(n);
            const auto r = max_k_cut_bnb(g, k);
            EXPECT_TRUE(r.proved_optimal);
            EXPECT_EQ(r.nu, brute_force_nu(n, k)) << n << " " << k;
            EXPECT_EQ(r.nu + r.cut_size, g.num_edges());
        }
}

TEST(Exact, SmallTableValues) {
    for (int k = 3; k <= 5; ++k)
        for (int n = 7; n <= 11; ++n) {
            const auto r = nu_exact(n, k);
            EXPECT_TRUE(r.proved_optimal);
            EXPECT_EQ(r.nu, refvals::exact_nu(k, n)) << n << " " << k;
            EXPECT_LE(r.nu, z_k(n, k));
            const ChordGraph g(n);
            EXPECT_EQ(cut_value(g, r.assignment), r.cut_size);
            EXPECT_EQ(count_crossings(drawing_from_cut(g, r.assignment)), r.nu);
        }
}

TEST(Exact, CutPlusCrossingsIsConstant) {
    std::mt19937 rng(20241019);
    for (int n = 5; n <= 12; ++n) {
        const ChordGraph g(n);
        for (int k = 1; k <= 5; ++k)
            for (int trial = 0; trial < 20; ++trial) {
                CutAssignment a{n, k, std::vector<int>(g.num_vertices())};
                std::uniform_int_distribution<int> pick(0, k - 1);
                for (auto& c : a.color_of) c = pick(rng);
                EXPECT_EQ(cut_value(g, a) + count_crossings(drawing_from_cut(g, a)), choose(n, 4));
            }
    }
}

TEST(Exact, DrawingColouringRoundTrip) {
    for (int n : {7, 10})
        for (int k : {2, 3}) {
            const ChordGraph g(n);
            const auto dr = dds_drawing(n, k);
            const auto a = cut_from_drawing(g, dr);
            EXPECT_EQ(choose(n, 4) - cut_value(g, a), count_crossings(dr));
        }
}

TEST(Exact, BudgetExhaustionReturnsIncumbent) {
    SearchBudget b;
    b.max_nodes = 10;
    const auto r = nu_exact(12, 3, b);
    EXPECT_FALSE(r.proved_optimal);
    EXPECT_LE(r.nu, z_k(12, 3));
    EXPECT_GE(r.nu, 51);
}

TEST(Exact, ManyPagesShortCircuit) {
    const auto r = nu_exact(9, 5);
    EXPECT_TRUE(r.proved_optimal);
    EXPECT_EQ(r.nu, 0);
    EXPECT_EQ(r.nodes_explored, 0);
}

TEST(Exact, InputValidation) {
    EXPECT_THROW(nu_exact(4, 2), InputError);
    EXPECT_THROW(nu_exact(7, 0), InputError);
    EXPECT_THROW(brute_force_nu(12, 3), InputError);
    const ChordGraph g(7);
    CutAssignment bad{7, 2, std::vector<int>(g.num_vertices(), 2)};
    EXPECT_THROW(cut_value(g, bad), InputError);
    CutAssignment other_n{8, 2, std::vector<int>(g.num_vertices(), 0)};
    EXPECT_THROW(cut_value(g, other_n), InputError);
}
