#include "support.hpp"

#include "pathwise/errors.hpp"
#include "pathwise/oracle.hpp"
#include "pathwise/path.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace pathwise;

TEST(Oracle, T4) {
    const auto result = enumerate(pathwise::testing::t4());
    ASSERT_TRUE(result.optimal_cost.has_value());
    EXPECT_DOUBLE_EQ(*result.optimal_cost, 3.0);
    EXPECT_EQ(*result.optimal_tour, (std::vector<NodeId>{0, 1, 2, 3}));
    // 0-3, 0-1-3, 0-2-3, 0-1-2-3.
    EXPECT_EQ(result.paths_enumerated, 4U);
}

TEST(Oracle, T3Neg) {
    const auto result = enumerate(pathwise::testing::t3neg());
    EXPECT_DOUBLE_EQ(*result.optimal_cost, -10.0);
    EXPECT_EQ(*result.optimal_tour, (std::vector<NodeId>{0, 1, 2}));
}

TEST(Oracle, DisconnectedHasNoPath) {
    const std::vector<Arc> arcs{{0, 1}, {2, 3}};
    const auto graph = Graph::build(4, arcs, 0, 3);
    std::vector<ResourcePtr> resources{make_resource(ResourceKind::NodeLimit, {0.0, 4.0, {}, {}, {}}, graph)};
    const Problem p("split", graph, {1.0, 1.0}, resources, 0);
    const auto result = enumerate(p);
    EXPECT_FALSE(result.optimal_cost.has_value());
    EXPECT_FALSE(result.optimal_tour.has_value());
    EXPECT_EQ(result.paths_enumerated, 0U);
}

TEST(Oracle, NodeCap) {
    const auto p = pathwise::testing::random_cyclic(1, 13);
    EXPECT_THROW((void)enumerate(p), TooLarge);
    EXPECT_NO_THROW((void)enumerate(p, 13));
}

TEST(Oracle, ToursAreFeasibleAndElementary) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto p      = pathwise::testing::random_cyclic(seed, 8);
        const auto result = enumerate(p);
        if (!result.optimal_tour)
            continue;
        EXPECT_TRUE(is_elementary(*result.optimal_tour));
        const auto path = evaluate_path(p, *result.optimal_tour, *result.optimal_cost);
        EXPECT_NEAR(path.cost, *result.optimal_cost, 1e-9);
    }
}

TEST(Path, EvaluateRejectsBadTours) {
    const auto p = pathwise::testing::t4();
    EXPECT_THROW((void)evaluate_path(p, {0, 2, 1, 3}, 0.0), DecodeMismatch);
    EXPECT_THROW((void)evaluate_path(p, {0, 1, 2, 3}, 4.0), DecodeMismatch);
    EXPECT_THROW((void)evaluate_path(pathwise::testing::t4(1), {0, 1, 2, 3}, 3.0), DecodeMismatch);
    EXPECT_THROW((void)evaluate_path(p, {1, 2, 3}, 2.0), DecodeMismatch);
    const auto ok = evaluate_path(p, {0, 1, 3}, 6.0);
    EXPECT_TRUE(ok.elementary);
    EXPECT_EQ(ok.consumptions, (std::vector<double>{1.0}));
}

TEST(Path, Elementarity) {
    EXPECT_TRUE(is_elementary(std::vector<NodeId>{0, 1, 2}));
    EXPECT_FALSE(is_elementary(std::vector<NodeId>{0, 1, 2, 1, 3}));
}
