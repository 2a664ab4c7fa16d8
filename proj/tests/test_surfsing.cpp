#include <gtest/gtest.h>

#include <chrono>

#include "fujita/surfsing/enumerate.hpp"

using namespace fujita;
using namespace fujita::surf;

namespace {

DualGraph chain(std::vector<int> w) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < static_cast<int>(w.size()); ++i) e.emplace_back(i, i + 1);
    return DualGraph(std::move(w), std::move(e));
}

DualGraph d4() { return DualGraph({2, 2, 2, 2}, {{0, 1}, {0, 2}, {0, 3}}); }

// p_a(D) straight from the intersection matrix, independent of DualGraph::dot.
long genus_from_matrix(const DualGraph& g, const Cycle& d) {
    Matrix m = g.intersection_matrix();
    long dd = 0, kd = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d.size(); ++j) dd += d[i] * m[i][j] * d[j];
        kd += d[i] * (-m[i][i] - 2);
    }
    return 1 + (dd + kd) / 2;
}

} // namespace

TEST(DualGraph, Validation) {
    EXPECT_NO_THROW(DualGraph({2}, {}));
    EXPECT_THROW(DualGraph({1}, {}), DomainError);
    EXPECT_THROW(DualGraph({2, 2}, {}), DomainError);                 // disconnected
    EXPECT_THROW(DualGraph({2, 2}, {{0, 1}, {1, 0}}), DomainError);   // repeated edge
    EXPECT_THROW(DualGraph({2}, {{0, 0}}), DomainError);              // loop
    EXPECT_THROW(DualGraph({}, {}), DomainError);
    // a triangle of (-2)-curves is only semi-definite: (1,1,1) is isotropic
    DualGraph tri = DualGraph::unchecked({2, 2, 2}, {{0, 1}, {1, 2}, {0, 2}});
    EXPECT_FALSE(tri.is_tree());
    ASSERT_TRUE(tri.defect());
    EXPECT_NE(tri.defect()->find("negative definite"), std::string::npos);
    EXPECT_EQ(tri.dot({1, 1, 1}, {1, 1, 1}), 0);
    EXPECT_THROW(DualGraph({2, 2, 2}, {{0, 1}, {1, 2}, {0, 2}}), DomainError);
}

TEST(DualGraph, LeadingMinorsOfAChain) {
    // A_n: det(-M) = n + 1
    for (int n = 1; n <= 8; ++n) {
        auto minors = leading_minors(chain(std::vector<int>(static_cast<std::size_t>(n), 2)).intersection_matrix());
        for (int k = 1; k <= n; ++k) EXPECT_EQ(minors[static_cast<std::size_t>(k - 1)], (k % 2 ? -1 : 1) * (k + 1));
    }
}

TEST(FundamentalCycle, SmallExamples) {
    DualGraph a(std::vector<int>{2}, {});
    EXPECT_EQ(fundamental_cycle(a), Cycle{1});
    EXPECT_EQ(a.dot({1}, {1}), -2);
    DualGraph b(std::vector<int>{3}, {});
    EXPECT_EQ(fundamental_cycle(b), Cycle{1});
    EXPECT_EQ(b.dot({1}, {1}), -3);
    DualGraph a3 = chain({2, 2, 2});
    EXPECT_EQ(fundamental_cycle(a3), (Cycle{1, 1, 1}));
    EXPECT_EQ(a3.dot({1, 1, 1}, {1, 1, 1}), -2);
    EXPECT_EQ(brute_force_fundamental_cycle(a3, 3), (Cycle{1, 1, 1}));
    // D4: Z = 2 E_center + sum of the arms
    EXPECT_EQ(fundamental_cycle(d4()), (Cycle{2, 1, 1, 1}));
}

TEST(Rationality, AdeAndSingleCurves) {
    for (int n = 1; n <= 4; ++n) {
        DualGraph g = chain(std::vector<int>(static_cast<std::size_t>(n), 2));
        EXPECT_EQ(genus_from_matrix(g, fundamental_cycle(g)), 0);
        EXPECT_TRUE(is_rational(g));
        EXPECT_EQ(multiplicity(g), 2);
    }
    EXPECT_EQ(genus_from_matrix(d4(), fundamental_cycle(d4())), 0);
    EXPECT_TRUE(is_rational(d4()));
    for (int b = 2; b <= 12; ++b) {
        DualGraph g(std::vector<int>{b}, {});
        EXPECT_TRUE(is_rational(g));
        EXPECT_EQ(multiplicity(g), b);
        EXPECT_EQ(embedding_dimension(g), b + 1);
    }
}

TEST(Rationality, MinimallyEllipticStarIsNotRational) {
    // Three (-2) arms of length two on a (-2) center: only semi-definite.
    DualGraph e6 = DualGraph::unchecked({2, 2, 2, 2, 2, 2, 2}, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}});
    EXPECT_TRUE(e6.defect());
    // A 4-cycle of (-3)-curves is definite but not a tree; Z = (1,1,1,1) has genus 1.
    DualGraph cyc({3, 3, 3, 3}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    EXPECT_FALSE(cyc.is_tree());
    EXPECT_EQ(fundamental_cycle(cyc), (Cycle{1, 1, 1, 1}));
    EXPECT_FALSE(is_rational(cyc));
    EXPECT_THROW(multiplicity(cyc), DomainError);
}

TEST(Discrepancies, Examples) {
    EXPECT_EQ(discrepancies(DualGraph(std::vector<int>{2}, {})), std::vector<Rational>{Rational(0)});
    EXPECT_EQ(discrepancies(DualGraph(std::vector<int>{3}, {})), std::vector<Rational>{Rational(-1, 3)});
    EXPECT_EQ(discrepancies(chain({2, 2})), (std::vector<Rational>{Rational(0), Rational(0)}));
    // (-3)-(-2): -3a + b = 1, a - 2b = 0  =>  (a, b) = (-2/5, -1/5) by Cramer
    DualGraph g = chain({3, 2});
    Rational det(5);
    std::vector<Rational> cramer{Rational(1 * -2 - 1 * 0) / det, Rational(-3 * 0 - 1 * 1) / det};
    EXPECT_EQ(discrepancies(g), cramer);
    EXPECT_EQ(mld(g), Rational(3, 5));
    EXPECT_EQ(multiplicity(g), 3);
    for (const auto& r : adjunction_residual(g, discrepancies(g))) EXPECT_EQ(r, Rational(0));
}

TEST(Mld, SingleCurves) {
    EXPECT_EQ(mld(DualGraph(std::vector<int>{2}, {})), Rational(1));
    EXPECT_EQ(mld(DualGraph(std::vector<int>{3}, {})), Rational(2, 3));
    EXPECT_EQ(mld(DualGraph(std::vector<int>{4}, {})), Rational(1, 2));
    for (int b = 2; b <= 9; ++b) {
        // -b x = b - 2  =>  x = -(b-2)/b, mld = 2/b
        DualGraph g(std::vector<int>{b}, {});
        EXPECT_EQ(mld(g), Rational(2, b));
    }
}

TEST(Enumeration, TreeShapeCounts) {
    // unlabeled trees: 1, 1, 1, 2, 3, 6, 11
    std::vector<std::size_t> expected{1, 1, 1, 2, 3, 6, 11};
    for (int n = 1; n <= 7; ++n) EXPECT_EQ(tree_shapes(n).size(), expected[static_cast<std::size_t>(n - 1)]) << n;
}

TEST(Enumeration, SmallCases) {
    auto g13 = enumerate_graphs(1, 3);
    ASSERT_EQ(g13.size(), 2u);
    EXPECT_EQ(g13[0].weights(), std::vector<int>{2});
    EXPECT_EQ(g13[1].weights(), std::vector<int>{3});
    auto g22 = enumerate_graphs(2, 2);
    ASSERT_EQ(g22.size(), 2u); // A1 and A2
    EXPECT_EQ(g22[1].weights(), (std::vector<int>{2, 2}));
    auto g32 = enumerate_graphs(3, 2);
    ASSERT_EQ(g32.size(), 3u);
    EXPECT_EQ(g32[2].size(), 3u); // A3 is the only tree on three vertices
}

TEST(Enumeration, CanonicalFormIgnoresLabels) {
    DualGraph a({3, 2, 4, 2}, {{0, 1}, {0, 2}, {0, 3}});
    DualGraph b({2, 4, 2, 3}, {{3, 0}, {1, 3}, {2, 3}});
    EXPECT_EQ(canonical_form(a), canonical_form(b));
    DualGraph c({2, 3, 4, 2}, {{0, 1}, {1, 2}, {2, 3}});
    EXPECT_NE(canonical_form(a), canonical_form(c));
    // no duplicates in an enumeration
    std::set<std::string> keys;
    for (const auto& g : enumerate_graphs(5, 4)) EXPECT_TRUE(keys.insert(canonical_form(g)).second);
}

TEST(Enumeration, EveryEmittedGraphIsAValidRationalTree) {
    for (const auto& g : enumerate_graphs(5, 5)) {
        EXPECT_TRUE(g.is_tree());
        EXPECT_FALSE(g.defect());
        EXPECT_TRUE(is_rational(g));
    }
}

TEST(LauferBruteForce, AgreesOnSmallGraphs) {
    long checked = 0;
    for (const auto& g : negative_definite_trees(4, 6)) {
        Cycle z = fundamental_cycle(g);
        EXPECT_TRUE(is_anti_nef(g, z));
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (z[i] <= 1) continue;
            Cycle w = z;
            --w[i];
            EXPECT_FALSE(is_anti_nef(g, w)) << g.str();
        }
        auto bf = brute_force_fundamental_cycle(g, 6);
        ASSERT_TRUE(bf) << g.str();
        EXPECT_EQ(*bf, z) << g.str();
        ++checked;
    }
    EXPECT_GT(checked, 100);
}

TEST(NegativeDefiniteness, MinorsAgreeWithBruteForce) {
    // all trees on <= 4 vertices with weights 1..3, validated or not
    for (int n = 1; n <= 4; ++n) {
        for (const auto& shape : tree_shapes(n)) {
            std::vector<int> w(static_cast<std::size_t>(n), 1);
            while (true) {
                DualGraph g = DualGraph::unchecked(w, shape);
                EXPECT_EQ(is_negative_definite(g.intersection_matrix()), brute_force_negative_on_box(g, 3)) << g.str();
                std::size_t i = 0;
                while (i < w.size() && w[i] == 3) w[i++] = 1;
                if (i == w.size()) break;
                ++w[i];
            }
        }
    }
}

TEST(Rationality, ArtinCriterionOnBoxAgrees) {
    for (const auto& g : negative_definite_trees(4, 6)) {
        Cycle z = fundamental_cycle(g);
        long bound = std::max(3L, *std::max_element(z.begin(), z.end()));
        EXPECT_EQ(is_rational(g), artin_on_box(g, bound)) << g.str();
    }
}

TEST(MldTheorem, SingleVerticesAndAde) {
    MldReport r1 = verify_mld_theorem(1, 6);
    EXPECT_EQ(r1.graphs, 5);
    EXPECT_TRUE(r1.passed());
    for (long b = 2; b <= 6; ++b) {
        EXPECT_EQ(r1.by_multiplicity.at(b).min_mld, Rational(2, b));
        EXPECT_EQ(r1.by_multiplicity.at(b).max_mld, Rational(2, b));
    }
    MldReport r2 = verify_mld_theorem(4, 2); // A1..A4 and D4
    EXPECT_EQ(r2.graphs, 5);
    ASSERT_EQ(r2.by_multiplicity.size(), 1u);
    EXPECT_EQ(r2.by_multiplicity.at(2).min_mld, Rational(1));
    EXPECT_TRUE(r2.passed());
}

TEST(MldTheorem, NoViolationsUpToFiveVertices) {
    MldReport r = verify_mld_theorem(5, 6);
    EXPECT_TRUE(r.passed());
    EXPECT_TRUE(r.violations.empty());
    EXPECT_GT(r.graphs, 100);
    nlohmann::json j = to_json(r);
    EXPECT_EQ(j["passed"], true);
}

TEST(M3Minus2, FilterAndBound) {
    M3Report none = verify_m3_minus2_claim(1, 6);
    EXPECT_EQ(none.instances, 0);
    EXPECT_EQ(none.note(), "no instances");
    M3Report two = verify_m3_minus2_claim(2, 3);
    EXPECT_EQ(two.instances, 1); // the (-3)-(-2) chain
    EXPECT_EQ(*two.min_mld, Rational(3, 5));
    M3Report r = verify_m3_minus2_claim(5, 6);
    EXPECT_TRUE(r.passed());
    EXPECT_LE(*r.max_mld, Rational(2, 3));
}

TEST(GraphJson, RoundTrip) {
    DualGraph g({3, 2, 2}, {{0, 1}, {1, 2}});
    nlohmann::json j = to_json(g);
    EXPECT_EQ(j.dump(), R"({"edges":[[1,2],[2,3]],"weights":[3,2,2]})");
    DualGraph h = graph_from_json(j);
    EXPECT_EQ(h.weights(), g.weights());
    EXPECT_EQ(h.edges(), g.edges());
    EXPECT_THROW(graph_from_json(nlohmann::json::parse(R"({"weights":[2,2],"edges":[[1,1]]})")), DomainError);
}
