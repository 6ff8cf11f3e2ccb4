#include <gtest/gtest.h>

#include "ltla/cluster.hpp"
#include "oracles.hpp"

using namespace ltla;

namespace {

Cluster square(Model m = Model::animal)
{
    const Point o{0, 0}, a{1, 0}, b{1, 1}, c{0, 1};
    return Cluster(m, 2, {Bond(o, a), Bond(a, b), Bond(b, c), Bond(c, o)});
}

Cluster path3()
{
    return Cluster(Model::tree, 2,
                   {Bond(Point{0, 0}, Point{1, 0}), Bond(Point{1, 0}, Point{2, 0}), Bond(Point{2, 0}, Point{3, 0})});
}

} // namespace

TEST(Cluster, RejectsDisconnectedAndCyclicTrees)
{
    EXPECT_THROW(Cluster(Model::tree, 2, {Bond(Point{0, 0}, Point{1, 0}), Bond(Point{3, 0}, Point{4, 0})}),
                 std::invalid_argument);
    EXPECT_THROW(square(Model::tree), std::invalid_argument);
    EXPECT_NO_THROW(square(Model::animal));
}

TEST(Cluster, MinPathLength)
{
    const Cluster bond(Model::tree, 2, {Bond(Point{0, 0}, Point{1, 0})});
    EXPECT_EQ(min_path_length(bond, Point{0, 0}, Point{1, 0}), 1);
    EXPECT_EQ(min_path_length(bond, Point{0, 0}, Point{0, 0}), 0);
    EXPECT_EQ(min_path_length(square(), Point{0, 0}, Point{1, 1}), 2);
    EXPECT_THROW(min_path_length(bond, Point{0, 0}, Point{5, 0}), NotAVertex);
}

TEST(Cluster, LongestPathLength)
{
    EXPECT_EQ(longest_path_length(square(), Point{0, 0}, Point{1, 0}), 3);
    EXPECT_EQ(longest_path_length(square(), Point{0, 0}, Point{0, 0}), 0);
    EXPECT_EQ(longest_path_length(path3(), Point{0, 0}, Point{3, 0}), 3);
}

TEST(Cluster, DoubleConnections)
{
    const Cluster sq = square();
    for (const auto& x : sq.vertices()) {
        for (const auto& y : sq.vertices()) {
            EXPECT_TRUE(doubly_connected(sq, x, y));
        }
    }
    const Cluster bond(Model::tree, 2, {Bond(Point{0, 0}, Point{1, 0})});
    EXPECT_FALSE(doubly_connected(bond, Point{0, 0}, Point{1, 0}));
    EXPECT_TRUE(doubly_connected(bond, Point{1, 0}, Point{1, 0}));
    EXPECT_THROW(doubly_connected(bond, Point{0, 0}, Point{2, 0}), NotAVertex);
}

TEST(Cluster, OriginInCycle)
{
    EXPECT_TRUE(origin_in_cycle(square()));
    EXPECT_FALSE(origin_in_cycle(path3()));
    const Cluster path_through_origin(Model::tree, 2,
                                      {Bond(Point{-2, 0}, Point{-1, 0}), Bond(Point{-1, 0}, Point{0, 0}),
                                       Bond(Point{0, 0}, Point{1, 0}), Bond(Point{1, 0}, Point{2, 0})});
    EXPECT_FALSE(origin_in_cycle(path_through_origin));
    const Cluster away(Model::tree, 2, {Bond(Point{1, 0}, Point{2, 0})}, Point{1, 0});
    EXPECT_THROW(origin_in_cycle(away), NotAVertex);
}

TEST(Cluster, PivotalBondsOfAPathAreAllBondsInOrder)
{
    const auto piv = pivotal_bonds(path3(), Point{0, 0}, Point{3, 0});
    ASSERT_EQ(piv.size(), 3u);
    for (int i = 0; i < 3; ++i) {
        EXPECT_EQ(piv[static_cast<std::size_t>(i)].from, (Point{i, 0}));
        EXPECT_EQ(piv[static_cast<std::size_t>(i)].to, (Point{i + 1, 0}));
    }
    const auto back = pivotal_bonds(path3(), Point{3, 0}, Point{0, 0});
    ASSERT_EQ(back.size(), 3u);
    EXPECT_EQ(back.front().from, (Point{3, 0}));
}

TEST(Cluster, PivotalBondsOfSquareAreEmpty)
{
    EXPECT_TRUE(pivotal_bonds(square(), Point{0, 0}, Point{1, 0}).empty());
}

TEST(Cluster, SquarePlusPendantHasExactlyThePendantPivotal)
{
    const Point o{0, 0}, a{1, 0}, b{1, 1}, c{0, 1}, tip{-1, 0};
    const Cluster c5(Model::animal, 2, {Bond(o, a), Bond(a, b), Bond(b, c), Bond(c, o), Bond(tip, o)});
    const auto piv = pivotal_bonds(c5, tip, b);
    // Oracle: bonds whose removal separates tip from b.
    std::vector<Bond> expected;
    for (const auto& bond : c5.bonds()) {
        if (oracle::separates(c5, bond, tip, b)) {
            expected.push_back(bond);
        }
    }
    ASSERT_EQ(expected.size(), 1u);
    ASSERT_EQ(piv.size(), 1u);
    EXPECT_EQ(Bond(piv[0].from, piv[0].to), expected[0]);
    EXPECT_EQ(piv[0].from, tip);
    EXPECT_EQ(piv[0].to, o);
}

TEST(Cluster, PivotalEmptyIffDoublyConnectedOnRandomAnimals)
{
    const auto levels = oracle::clusters_by_size(Model::animal, 2, 5);
    for (const auto& c : levels[5]) {
        const Cluster cl = oracle::to_cluster(Model::animal, 2, c);
        for (const auto& x : cl.vertices()) {
            for (const auto& y : cl.vertices()) {
                const auto piv = pivotal_bonds(cl, x, y);
                EXPECT_EQ(piv.empty(), doubly_connected(cl, x, y));
                std::size_t brute = 0;
                for (const auto& bond : cl.bonds()) {
                    brute += oracle::separates(cl, bond, x, y);
                }
                EXPECT_EQ(piv.size(), brute);
                EXPECT_GE(min_path_length(cl, x, y), l1_distance(x, y));
            }
        }
    }
}
