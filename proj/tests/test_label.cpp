#include "support.hpp"

#include "pathwise/errors.hpp"
#include "pathwise/instgen.hpp"
#include "pathwise/label.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace pathwise;

namespace {

    NodeSet set_of(std::size_t width, std::initializer_list<std::size_t> members) {
        NodeSet s(width);
        for (auto m : members)
            s.set(m);
        return s;
    }

    Label make(NodeId node, double cost, std::vector<double> resources, NodeSet visited) {
        Label l;
        l.node      = node;
        l.cost      = cost;
        l.resources = std::move(resources);
        l.visited   = std::move(visited);
        return l;
    }

    /// T4 with both pools seeded and one extension on each side: forward 0 -> 1, backward 3 <- 2.
    struct T4Fixture {
        Problem problem        = pathwise::testing::t4();
        NeighborhoodMasks masks = NeighborhoodMasks::full(RelaxationScheme::DSSR, 4);
        LabelManager manager{problem, masks};
        LabelId fw1 = kNoLabel;
        LabelId bw2 = kNoLabel;

        T4Fixture() {
            manager.reset(true);
            const auto& g = problem.graph();
            auto f        = manager.extend_label(manager.pool(Direction::Forward).label(0), 1, *g.arc_id(0, 1));
            f->predecessor = 0;
            (void)manager.pool(Direction::Forward).insert(*f);
            fw1    = static_cast<LabelId>(manager.pool(Direction::Forward).stored() - 1);
            auto b = manager.extend_label(manager.pool(Direction::Backward).label(0), 2, *g.arc_id(2, 3));
            b->predecessor = 0;
            (void)manager.pool(Direction::Backward).insert(*b);
            bw2 = static_cast<LabelId>(manager.pool(Direction::Backward).stored() - 1);
        }
    };

} // namespace

TEST(Dominance, ComponentwiseRule) {
    const auto a = make(1, 3, {2}, set_of(3, {0, 1}));
    const auto b = make(1, 5, {2}, set_of(3, {0, 1, 2}));
    EXPECT_TRUE(dominates(a, b));
    EXPECT_FALSE(dominates(b, a));
    const auto c = make(1, 3, {2}, set_of(3, {0, 2}));
    const auto d = make(1, 5, {2}, set_of(3, {0, 1}));
    EXPECT_FALSE(dominates(c, d));
    EXPECT_TRUE(dominates(a, a));
}

TEST(Dominance, UnreachableCountsWithVisited) {
    auto a        = make(1, 3, {2}, set_of(3, {0, 1}));
    a.unreachable = set_of(3, {2});
    const auto b  = make(1, 5, {2}, set_of(3, {0, 1}));
    EXPECT_FALSE(dominates(a, b));
    auto c        = b;
    c.unreachable = set_of(3, {2});
    EXPECT_TRUE(dominates(a, c));
}

TEST(Dominance, ExactResourcesMustMatch) {
    const auto a = make(1, 3, {1}, set_of(3, {1}));
    const auto b = make(1, 5, {2}, set_of(3, {1}));
    EXPECT_TRUE(dominates(a, b));
    EXPECT_FALSE(dominates(a, b, {true}));
}

TEST(Pool, InsertOutcomes) {
    LabelPool pool(3, Direction::Forward);
    EXPECT_EQ(pool.insert(make(1, 4, {1}, set_of(3, {0, 1}))), InsertOutcome::Kept);
    EXPECT_EQ(pool.insert(make(1, 4, {1}, set_of(3, {0, 1}))), InsertOutcome::DominatedOnArrival);
    EXPECT_EQ(pool.bucket_size(1), 1U);
    EXPECT_EQ(pool.insert(make(1, 2, {1}, set_of(3, {0, 1}))), InsertOutcome::Kept);
    // Labels dominated on arrival are never stored, so the cheaper one gets id 1.
    EXPECT_EQ(pool.bucket(1), (std::vector<LabelId>{1}));
    EXPECT_FALSE(pool.alive(0));
    EXPECT_EQ(pool.kept(), 2U);
    EXPECT_EQ(pool.dominated_on_arrival(), 1U);
    EXPECT_EQ(pool.removed_by_dominance(), 1U);
}

TEST(Pool, RemovedLabelsLeaveTheFrontier) {
    LabelPool pool(3, Direction::Forward);
    (void)pool.insert(make(1, 4, {1}, set_of(3, {1})));
    (void)pool.insert(make(1, 2, {0}, set_of(3, {1})));
    EXPECT_EQ(pool.get_candidate(SelectionStrategy::NodeSelection), LabelId{1});
    EXPECT_FALSE(pool.get_candidate(SelectionStrategy::NodeSelection).has_value());
    EXPECT_TRUE(pool.frontier_empty());
}

TEST(Pool, NonDominationAfterRandomInserts) {
    constexpr std::size_t n = 6;
    LabelPool pool(n, Direction::Forward);
    UniformSource rng(42);
    for (int k = 0; k < 10000; ++k) {
        const auto node = static_cast<NodeId>(rng.integer(0, n - 1));
        NodeSet visited(n);
        visited.set(node);
        for (std::size_t v = 0; v < n; ++v)
            if (rng.unit() < 0.3)
                visited.set(v);
        (void)pool.insert(make(node, static_cast<double>(rng.integer(0, 30)),
            {static_cast<double>(rng.integer(0, 10)), static_cast<double>(rng.integer(0, 10))}, visited));
    }
    for (NodeId node = 0; node < n; ++node) {
        const auto ids = pool.bucket(node);
        ASSERT_FALSE(ids.empty());
        for (LabelId a : ids) {
            EXPECT_TRUE(pool.alive(a));
            for (LabelId b : ids)
                if (a != b)
                    EXPECT_FALSE(dominates(pool.label(a), pool.label(b))) << a << " over " << b;
        }
    }
}

TEST(Pool, NodeSelectionPicksCheapestNode) {
    LabelPool pool(3, Direction::Forward);
    (void)pool.insert(make(1, 5, {0}, set_of(3, {1})));
    (void)pool.insert(make(2, 3, {0}, set_of(3, {2})));
    EXPECT_EQ(pool.get_candidate(SelectionStrategy::NodeSelection), LabelId{1});
}

TEST(Pool, RoundRobinFollowsNodeOrder) {
    LabelPool pool(3, Direction::Forward);
    (void)pool.insert(make(1, 5, {0}, set_of(3, {1})));
    (void)pool.insert(make(2, 3, {0}, set_of(3, {2})));
    EXPECT_EQ(pool.get_candidate(SelectionStrategy::RoundRobin), LabelId{0});
    EXPECT_EQ(pool.get_candidate(SelectionStrategy::RoundRobin), LabelId{1});
    EXPECT_FALSE(pool.get_candidate(SelectionStrategy::RoundRobin).has_value());
}

TEST(Pool, NodeSelectionDrainsBeforeSwitching) {
    LabelPool pool(3, Direction::Forward);
    (void)pool.insert(make(1, 1, {5}, set_of(3, {1})));
    (void)pool.insert(make(1, 9, {0}, set_of(3, {1})));
    (void)pool.insert(make(2, 3, {0}, set_of(3, {2})));
    EXPECT_EQ(pool.get_candidate(SelectionStrategy::NodeSelection), LabelId{0});
    EXPECT_EQ(pool.get_candidate(SelectionStrategy::NodeSelection), LabelId{1});
    EXPECT_EQ(pool.get_candidate(SelectionStrategy::NodeSelection), LabelId{2});
}

TEST(Manager, ExtensionAppliesMaskRule) {
    const auto p = pathwise::testing::t4(10);
    auto masks   = NeighborhoodMasks::self_only(RelaxationScheme::DSSRC, 4);
    masks.add(3, 1);
    LabelManager manager(p, masks);
    auto label    = make(2, 0, {0}, set_of(4, {1, 2}));
    const auto to = manager.extend_label(label, 3, *p.graph().arc_id(2, 3));
    ASSERT_TRUE(to.has_value());
    EXPECT_EQ(to->visited.members(), (std::vector<std::size_t>{1, 3}));

    const auto full = NeighborhoodMasks::full(RelaxationScheme::DSSR, 4);
    LabelManager exact(p, full);
    EXPECT_EQ(exact.extend_label(label, 3, *p.graph().arc_id(2, 3))->visited.members(),
        (std::vector<std::size_t>{1, 2, 3}));
    label.visited.set(3);
    EXPECT_FALSE(exact.extend_label(label, 3, *p.graph().arc_id(2, 3)).has_value());
}

TEST(Manager, ExtensionChecksResources) {
    T4Fixture t;
    const auto& f = t.manager.pool(Direction::Forward).label(t.fw1);
    const auto to2 = t.manager.extend_label(f, 2, *t.problem.graph().arc_id(1, 2));
    ASSERT_TRUE(to2.has_value());
    EXPECT_DOUBLE_EQ(to2->resources[0], 2.0);

    const auto tight = pathwise::testing::t4(1);
    const auto masks = NeighborhoodMasks::full(RelaxationScheme::DSSR, 4);
    LabelManager manager(tight, masks);
    EXPECT_FALSE(manager.extend_label(f, 2, *tight.graph().arc_id(1, 2)).has_value());
}

TEST(Manager, HalfWayThresholdGatesExtension) {
    const auto p     = pathwise::testing::t4(10);
    const auto masks = NeighborhoodMasks::full(RelaxationScheme::DSSR, 4);
    LabelManager manager(p, masks);
    EXPECT_DOUBLE_EQ(manager.threshold(Direction::Forward, 5), 5.0);
    EXPECT_DOUBLE_EQ(manager.threshold(Direction::Backward, 5), 5.0);

    const auto heavy = make(1, 0, {6}, set_of(4, {0, 1}));
    EXPECT_FALSE(manager.is_extension_feasible(heavy, 2, 5));
    auto light      = make(2, 0, {4}, set_of(4, {2, 3}));
    light.direction = Direction::Backward;
    EXPECT_TRUE(manager.is_extension_feasible(light, 1, 5));
    EXPECT_FALSE(manager.is_extension_feasible(light, 3, 5));
}

TEST(Manager, JoinPairBuildsT4Optimum) {
    T4Fixture t;
    const auto path = t.manager.join_pair(t.fw1, t.bw2);
    ASSERT_TRUE(path.has_value());
    EXPECT_EQ(path->tour, (std::vector<NodeId>{0, 1, 2, 3}));
    EXPECT_DOUBLE_EQ(path->cost, 3.0);
    EXPECT_EQ(path->consumptions, (std::vector<double>{2.0}));
    EXPECT_TRUE(path->elementary);

    EXPECT_FALSE(t.manager.join_pair(t.fw1, t.bw2, 2.0, JoinMode::Bounded).has_value());
    EXPECT_TRUE(t.manager.join_pair(t.fw1, t.bw2, 4.0, JoinMode::Bounded).has_value());
}

TEST(Manager, JoinPairRejectsSharedNodes) {
    T4Fixture t;
    auto bw        = make(2, 0, {1}, set_of(4, {1, 2, 3}));
    bw.direction   = Direction::Backward;
    bw.predecessor = 0;
    (void)t.manager.pool(Direction::Backward).insert(bw);
    const auto id = static_cast<LabelId>(t.manager.pool(Direction::Backward).stored() - 1);
    EXPECT_FALSE(t.manager.join_pair(t.fw1, id).has_value());
}

TEST(Manager, CorruptedLabelIsCaughtOnDecode) {
    T4Fixture t;
    t.manager.pool(Direction::Forward).mutable_label(t.fw1).cost = 0.5;
    EXPECT_THROW((void)t.manager.extract_path(t.fw1, t.bw2), DecodeMismatch);

    T4Fixture u;
    u.manager.pool(Direction::Forward).mutable_label(u.fw1).predecessor = u.fw1;
    EXPECT_THROW((void)u.manager.extract_path(u.fw1, u.bw2), DecodeMismatch);
}

TEST(Manager, MonodirectionalDecode) {
    T4Fixture t;
    auto& pool = t.manager.pool(Direction::Forward);
    auto to3   = t.manager.extend_label(pool.label(t.fw1), 3, *t.problem.graph().arc_id(1, 3));
    to3->predecessor = t.fw1;
    (void)pool.insert(*to3);
    const auto path = t.manager.extract_path(static_cast<LabelId>(pool.stored() - 1), std::nullopt);
    EXPECT_EQ(path.tour, (std::vector<NodeId>{0, 1, 3}));
    EXPECT_DOUBLE_EQ(path.cost, 6.0);
}

TEST(Manager, NaiveAndBoundedJoinAgree) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto p     = pathwise::testing::random_cyclic(seed, 7);
        const auto masks = NeighborhoodMasks::full(RelaxationScheme::DSSR, 7);
        LabelManager manager(p, masks);
        manager.reset(true);
        const double hwp = p.critical().critical_budget() / 2;
        for (auto dir : {Direction::Forward, Direction::Backward})
            while (auto id = manager.next_candidate(dir, SelectionStrategy::NodeSelection))
                (void)manager.expand(dir, *id, hwp);
        const auto naive   = manager.join(JoinMode::Naive);
        const auto bounded = manager.join(JoinMode::Bounded, kInfinity, hwp);
        ASSERT_EQ(naive.best_elementary.has_value(), bounded.best_elementary.has_value()) << seed;
        if (naive.best_elementary) {
            EXPECT_NEAR(naive.best_elementary->cost, bounded.best_elementary->cost, 1e-6) << seed;
        }
        EXPECT_LE(bounded.attempts, naive.attempts);
    }
}

TEST(Manager, ReplayFollowsTour) {
    const auto p     = pathwise::testing::t4();
    const auto masks = NeighborhoodMasks::full(RelaxationScheme::DSSR, 4);
    LabelManager manager(p, masks);
    const std::vector<NodeId> tour{0, 1, 2, 3};
    const auto labels = manager.replay(tour);
    ASSERT_EQ(labels.size(), 4U);
    EXPECT_DOUBLE_EQ(labels.back().cost, 3.0);
    EXPECT_DOUBLE_EQ(labels.back().resources[0], 2.0);

    const auto tight = pathwise::testing::t4(1);
    LabelManager blocked(tight, masks);
    EXPECT_EQ(blocked.replay(tour).size(), 2U);
}

TEST(Manager, UnreachableNodesAreMarked) {
    const auto p     = pathwise::testing::t4(1);
    const auto masks = NeighborhoodMasks::full(RelaxationScheme::DSSR, 4);
    LabelManager manager(p, masks, {true, true});
    manager.reset(false);
    const auto& root = manager.pool(Direction::Forward).label(0);
    const auto at1   = manager.extend_label(root, 1, *p.graph().arc_id(0, 1));
    ASSERT_TRUE(at1.has_value());
    EXPECT_TRUE(at1->unreachable.test(2));
    EXPECT_FALSE(root.unreachable.test(2));
}
