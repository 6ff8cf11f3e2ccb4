#include <gtest/gtest.h>

#include "ltla/generating.hpp"
#include "oracles.hpp"

using namespace ltla;

TEST(Generating, OnePointLowOrders)
{
    for (int d = 1; d <= 4; ++d) {
        for (Model m : {Model::tree, Model::animal}) {
            const RSeries g = one_point(m, d, 2);
            EXPECT_EQ(g[0], 1);
            EXPECT_EQ(g[1], 2 * d);
        }
    }
}

TEST(Generating, UnitSquaresSeparateAnimalsFromTrees)
{
    const RSeries diff = one_point(Model::animal, 2, 4) - one_point(Model::tree, 2, 4);
    EXPECT_EQ(diff, RSeries(4, {Rational(0), Rational(0), Rational(0), Rational(0), Rational(4)}));
    for (int d = 2; d <= 3; ++d) {
        EXPECT_EQ(g_circ(Model::animal, d, 4)[4], Rational((2 * d) * (2 * d - 2), 2));
        EXPECT_TRUE(g_circ(Model::tree, d, 4).is_zero());
    }
}

TEST(Generating, PlantedLowOrders)
{
    const RSeries r = planted(Model::tree, 2, 3, Point{0, 1});
    EXPECT_EQ(r[0], 0);
    EXPECT_EQ(r[1], 1);
    const RSeries r1 = planted(Model::animal, 1, 4, Point{1});
    for (int n = 1; n <= 4; ++n) {
        EXPECT_EQ(r1[n], 1);
    }
    EXPECT_THROW(planted(Model::tree, 2, 3, Point{1, 1}), std::invalid_argument);
}

TEST(Generating, PlantedMatchesOracleAndIsDirectionFree)
{
    const auto levels = oracle::clusters_by_size(Model::animal, 2, 5);
    for (const auto& s : unit_vectors(2)) {
        const RSeries r = planted(Model::animal, 2, 5, s);
        for (int n = 0; n <= 5; ++n) {
            EXPECT_EQ(r[n], oracle::planted_via(levels[static_cast<std::size_t>(n)], s).size());
        }
    }
}

TEST(Generating, PlantedRelatesToOneAndTwoPoint)
{
    for (Model m : {Model::tree, Model::animal}) {
        for (int d = 2; d <= 3; ++d) {
            const int N = 5;
            const Point s = Point::unit(d, 0);
            const RSeries g = one_point(m, d, N);
            const SiteSeries G = two_point(m, d, N);
            EXPECT_EQ(planted(m, d, N, s), (g - G.at(s)).times_z().truncated(N));
        }
    }
}

TEST(Generating, TwoPointBasics)
{
    for (Model m : {Model::tree, Model::animal}) {
        const TwoPoint tp = two_point_bundle(m, 2, 5);
        const RSeries g = one_point(m, 2, 5);
        EXPECT_EQ(tp.G.at(Point{0, 0}), g);
        EXPECT_EQ(tp.G.at(Point{1, 0})[1], 1);
        EXPECT_TRUE(tp.G_min[1].at(Point{0, 0}).is_zero());
        SiteSeries rebuilt = tp.G_min[1];
        rebuilt.add(Point{0, 0}, g);
        EXPECT_EQ(rebuilt, tp.G);
        for (const auto& [x, s] : tp.G.entries()) {
            for (int n = 0; n < x.l1_norm() && n <= 5; ++n) {
                EXPECT_EQ(s[n], 0) << x;
            }
            for (int n = 0; n <= 5; ++n) {
                EXPECT_GE(s[n], 0);
                EXPECT_TRUE(is_integer(s[n]));
            }
        }
    }
}

TEST(Generating, PathClassesMatchOracle)
{
    const int N = 4;
    for (Model m : {Model::tree, Model::animal}) {
        const auto levels = oracle::clusters_by_size(m, 2, N);
        const TwoPoint tp = two_point_bundle(m, 2, N);
        std::map<std::pair<Point, int>, RSeries> expect;
        for (int n = 0; n <= N; ++n) {
            for (const auto& b : levels[static_cast<std::size_t>(n)]) {
                const Cluster c = oracle::to_cluster(m, 2, b);
                for (const auto& x : c.vertices()) {
                    const int L = longest_path_length(c, Point{0, 0}, x);
                    for (int i = 0; i <= L; ++i) {
                        auto it = expect.try_emplace({x, i}, N).first;
                        it->second[n] += 1;
                    }
                }
            }
        }
        for (int i = 0; i <= N; ++i) {
            for (const auto& [x, s] : tp.G_min[static_cast<std::size_t>(i)].entries()) {
                auto it = expect.find({x, i});
                ASSERT_NE(it, expect.end());
                EXPECT_EQ(s, it->second);
            }
            std::size_t n_expect = 0;
            for (const auto& [k, v] : expect) {
                n_expect += k.second == i;
            }
            EXPECT_EQ(tp.G_min[static_cast<std::size_t>(i)].support_size(), n_expect);
        }
    }
}

TEST(Generating, Susceptibility)
{
    for (int d = 2; d <= 3; ++d) {
        const RSeries gt = one_point(Model::tree, d, 5);
        EXPECT_EQ(susceptibility(Model::tree, d, 5), gt.times_z().derivative());
        const RSeries ga = one_point(Model::animal, d, 5);
        const RSeries chi_a = susceptibility(Model::animal, d, 5);
        EXPECT_TRUE(coefficientwise_le(chi_a, ga.times_z().derivative()));
        EXPECT_EQ(chi_a[0], 1);
    }
}

TEST(Generating, SmnSpecialCases)
{
    const TwoPoint tp = two_point_bundle(Model::tree, 2, 4);
    for (int m = 0; m <= 4; ++m) {
        EXPECT_EQ(S_mn(tp.G_min, m, 1), tp.G_min[static_cast<std::size_t>(m)]);
    }
    EXPECT_EQ(S_mn(tp.G_min, 0, 2), convolve(tp.G, tp.G));
    EXPECT_TRUE(S_mn(tp.G_min, 9, 2).entries().empty());
    EXPECT_THROW(S_mn(tp.G_min, 1, 0), std::invalid_argument);
}

TEST(Generating, GkBoundForTrees)
{
    const TwoPoint tp = two_point_bundle(Model::tree, 2, 5);
    const RSeries g = one_point(Model::tree, 2, 5);
    for (int i = 0; i <= 3; ++i) {
        EXPECT_TRUE(gk_bound_check(g, tp, i).holds) << i;
    }
}

namespace {

// Literal Q(x) from pairs of clusters containing 0 and x respectively.
std::map<Point, RSeries> q_oracle(Model m, int N)
{
    const auto levels = oracle::clusters_by_size(m, 2, N);
    std::map<Point, RSeries> q;
    for (int a = 0; a <= N; ++a) {
        for (int b = 0; a + b <= N; ++b) {
            for (const auto& c0 : levels[static_cast<std::size_t>(a)]) {
                const auto v0 = oracle::vertices_of(c0, 2);
                for (int x1 = -N; x1 <= N; ++x1) {
                    for (int x2 = -N; x2 <= N; ++x2) {
                        const Point x{x1, x2};
                        for (const auto& c1 : levels[static_cast<std::size_t>(b)]) {
                            std::set<Point> v1;
                            for (const auto& p : oracle::vertices_of(c1, 2)) {
                                v1.insert(p + x);
                            }
                            if (oracle::share_vertex(v0, v1)) {
                                q.try_emplace(x, N).first->second[a + b] += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    return q;
}

} // namespace

TEST(Generating, QMatchesOracle)
{
    for (Model m : {Model::tree, Model::animal}) {
        const int N = 3;
        const auto expect = q_oracle(m, N);
        const SiteSeries q = Q(m, 2, N);
        EXPECT_EQ(q.support_size(), expect.size());
        for (const auto& [x, s] : expect) {
            EXPECT_EQ(q.at(x), s) << x;
        }
        EXPECT_EQ(q.at(Point{1, 0})[1], 2);
    }
}

TEST(Generating, QDecompositionAndSymmetry)
{
    const QData q = Q_decomposition(Model::animal, 2, 5);
    SiteSeries sum(2, 5);
    for (const auto& part : q.by_length) {
        sum += part;
    }
    EXPECT_EQ(sum, q.Q);
    for (const auto& [x, s] : q.Q.entries()) {
        for (const auto& y : symmetry_orbit(x)) {
            EXPECT_EQ(q.Q.at(y), s);
        }
    }
    EXPECT_EQ(Q_n(Model::animal, 2, 5, Point{1, 0}, 1), q.by_length[1].at(Point{1, 0}));
}

TEST(Generating, QStarMatchesTripleSum)
{
    const int N = 4;
    const Point s{1, 0};
    for (Model m : {Model::tree, Model::animal}) {
        const auto levels = oracle::clusters_by_size(m, 2, N);
        RSeries expect(N);
        for (int b = 0; b <= N; ++b) {
            for (const auto& c1 : levels[static_cast<std::size_t>(b)]) {
                std::set<Point> v1;
                for (const auto& p : oracle::vertices_of(c1, 2)) {
                    v1.insert(p + s);
                }
                for (int a = 0; a + b <= N; ++a) {
                    for (const auto& c0 : levels[static_cast<std::size_t>(a)]) {
                        if (!oracle::share_vertex(oracle::vertices_of(c0, 2), v1)) {
                            continue;
                        }
                        for (int c = 0; a + b + c <= N; ++c) {
                            for (const auto& c2 : levels[static_cast<std::size_t>(c)]) {
                                if (oracle::share_vertex(oracle::vertices_of(c2, 2), v1)) {
                                    expect[a + b + c] += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        EXPECT_EQ(Q_star(m, 2, N, s), expect);
    }
}
