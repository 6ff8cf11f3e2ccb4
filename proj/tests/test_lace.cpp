#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>

#include "ltla/lace.hpp"
#include "oracles.hpp"

using namespace ltla;

namespace {

using Edge = std::pair<int, int>;

// Lace assigned to a connected graph on [0, n]: t1 is the farthest reach
// from 0, then repeatedly the farthest reach of an edge starting at or
// before the previous end, taking the smallest start among edges achieving it.
std::set<Edge> lace_of(const std::set<Edge>& g, int n)
{
    std::set<Edge> L;
    int s = 0;
    int t = -1;
    for (const auto& e : g) {
        if (e.first == 0) {
            t = std::max(t, e.second);
        }
    }
    L.insert({0, t});
    while (t < n) {
        int reach = -1;
        for (const auto& e : g) {
            if (e.first <= t && e.second > t) {
                reach = std::max(reach, e.second);
            }
        }
        if (reach < 0) {
            return {};
        }
        int start = n;
        for (const auto& e : g) {
            if (e.second == reach) {
                start = std::min(start, e.first);
            }
        }
        L.insert({start, reach});
        s = start;
        t = reach;
    }
    (void)s;
    return L;
}

std::set<Edge> prescription_compatible(const std::set<Edge>& L, int n)
{
    std::set<Edge> out;
    for (int k = 0; k <= n; ++k) {
        for (int l = k + 1; l <= n; ++l) {
            if (L.contains({k, l})) {
                continue;
            }
            auto g = L;
            g.insert({k, l});
            if (lace_of(g, n) == L) {
                out.insert({k, l});
            }
        }
    }
    return out;
}

bool covers(const std::set<Edge>& g, int n)
{
    for (int x = 0; x < n; ++x) {
        bool hit = false;
        for (const auto& e : g) {
            hit = hit || (e.first <= x && x + 1 <= e.second);
        }
        if (!hit) {
            return false;
        }
    }
    return true;
}

struct Rib {
    std::set<Point> verts;
    Point exit;
    int size;
};

std::vector<Rib> oracle_ribs(Model model, int dim, int n)
{
    std::vector<Rib> out;
    auto levels = oracle::clusters_by_size(model, dim, n);
    for (int s = 0; s <= n; ++s) {
        for (const auto& c : levels[static_cast<std::size_t>(s)]) {
            const auto vs = oracle::vertices_of(c, dim);
            const Point o = Point::origin(dim);
            if (model == Model::tree) {
                out.push_back({vs, o, s});
                continue;
            }
            const Cluster cl = oracle::to_cluster(model, dim, c);
            for (const auto& y : vs) {
                bool doubly = true;
                for (const auto& b : c) {
                    doubly = doubly && !oracle::separates(cl, b, o, y);
                }
                if (doubly) {
                    out.push_back({vs, y, s});
                }
            }
        }
    }
    return out;
}

struct Literal {
    std::map<Point, std::vector<long long>> G, pi0, pi1, pi2;
};

// Every configuration rib_0, step, ..., rib_k up to total order n, weighted by
// the products of U factors as written.
Literal literal_terms(Model model, int dim, int n)
{
    const auto ribs = oracle_ribs(model, dim, n);
    Literal lit;
    auto bump = [&](std::map<Point, std::vector<long long>>& m, const Point& x, int ord, long long w) {
        auto& row = m[x];
        row.resize(static_cast<std::size_t>(n) + 1, 0);
        row[static_cast<std::size_t>(ord)] += w;
    };
    std::vector<std::set<Point>> placed;
    std::function<void(const Point&, int)> rec = [&](const Point& at, int used) {
        for (const auto& r : ribs) {
            if (used + r.size > n) {
                continue;
            }
            std::set<Point> vs;
            for (const auto& v : r.verts) {
                vs.insert(v + at);
            }
            placed.push_back(vs);
            const Point x = r.exit + at;
            const int k = static_cast<int>(placed.size()) - 1;
            const int ord = used + r.size;
            auto U = [&](int i, int j) { return oracle::share_vertex(placed[static_cast<std::size_t>(i)], placed[static_cast<std::size_t>(j)]) ? -1 : 0; };
            long long avoid = 1;
            for (int i = 0; i <= k; ++i) {
                for (int j = i + 1; j <= k; ++j) {
                    avoid *= 1 + U(i, j);
                }
            }
            bump(lit.G, x, ord, avoid);
            if (k == 0 && !x.is_origin()) {
                bump(lit.pi0, x, ord, 1);
            }
            if (k >= 1) {
                long long w = -U(0, k);
                for (int i = 0; i <= k; ++i) {
                    for (int j = i + 1; j <= k; ++j) {
                        if (!(i == 0 && j == k)) {
                            w *= 1 + U(i, j);
                        }
                    }
                }
                bump(lit.pi1, x, ord, w);
            }
            if (k >= 2) {
                long long total = 0;
                for (int j = 1; j < k; ++j) {
                    for (int i = 1; i <= j; ++i) {
                        std::set<Edge> L{{0, j}, {i, k}};
                        long long w = U(0, j) * U(i, k);
                        for (const auto& e : prescription_compatible(L, k)) {
                            w *= 1 + U(e.first, e.second);
                        }
                        total += w;
                    }
                }
                bump(lit.pi2, x, ord, total);
            }
            if (ord + 1 <= n) {
                for (const auto& q : neighbors(x, dim)) {
                    rec(q, ord + 1);
                }
            }
            placed.pop_back();
        }
    };
    rec(Point::origin(dim), 0);
    return lit;
}

SiteSeries to_site(const std::map<Point, std::vector<long long>>& m, int dim, int n)
{
    SiteSeries s(dim, n);
    for (const auto& [x, row] : m) {
        RSeries r(n);
        for (int i = 0; i <= n; ++i) {
            r[i] = Rational(row[static_cast<std::size_t>(i)]);
        }
        s.add(x, r);
    }
    return s;
}

} // namespace

TEST(Laces, TwoEdgeLacesAreTheMinimalCoveringPairs)
{
    for (int n = 2; n <= 6; ++n) {
        std::set<std::set<Edge>> expect;
        std::vector<Edge> all;
        for (int a = 0; a <= n; ++a) {
            for (int b = a + 1; b <= n; ++b) {
                all.push_back({a, b});
            }
        }
        for (std::size_t p = 0; p < all.size(); ++p) {
            for (std::size_t q = p + 1; q < all.size(); ++q) {
                std::set<Edge> g{all[p], all[q]};
                if (covers(g, n) && !covers({all[p]}, n) && !covers({all[q]}, n)) {
                    expect.insert(g);
                }
            }
        }
        std::set<std::set<Edge>> got;
        for (const auto& L : laces2(n)) {
            got.insert({L.first, L.second});
            EXPECT_TRUE(is_lace(n, rib_pair_mask({L.first, L.second})));
        }
        EXPECT_EQ(got, expect) << n;
    }
    EXPECT_THROW(laces2(1), std::invalid_argument);
}

TEST(Laces, CompatibleSetsMatchThePrescription)
{
    EXPECT_TRUE(compatible({{0, 1}, {1, 2}}, 2).empty());
    const auto c = compatible({{0, 1}, {1, 3}}, 3);
    EXPECT_EQ(std::set<RibPair>(c.begin(), c.end()), (std::set<RibPair>{{1, 2}, {2, 3}}));
    for (int n = 2; n <= 7; ++n) {
        for (const auto& L : laces2(n)) {
            const auto got = compatible(L, n);
            EXPECT_EQ(std::set<RibPair>(got.begin(), got.end()), prescription_compatible({L.first, L.second}, n));
            EXPECT_EQ(lace_of({L.first, L.second}, n), (std::set<Edge>{L.first, L.second}));
        }
    }
}

TEST(Laces, LaceSizesByBruteForce)
{
    EXPECT_EQ(lace_sizes_within(1, rib_pair_mask({{0, 1}})), (std::set<int>{1}));
    EXPECT_EQ(lace_sizes_within(3, rib_pair_mask({{0, 1}, {1, 2}, {2, 3}})), (std::set<int>{3}));
    EXPECT_EQ(lace_sizes_within(3, rib_pair_mask({{0, 3}, {0, 2}, {1, 3}})), (std::set<int>{1, 2}));
    EXPECT_TRUE(lace_sizes_within(3, rib_pair_mask({{0, 1}, {2, 3}})).empty());
}

TEST(Decompose, RibsAndBackboneRebuildTheCluster)
{
    for (Model model : {Model::tree, Model::animal}) {
        const auto levels = oracle::clusters_by_size(model, 2, 5);
        for (const auto& level : levels) {
            for (const auto& bonds : level) {
                const Cluster c = oracle::to_cluster(model, 2, bonds);
                for (const Point& x : c.vertices()) {
                    const Decomposition d = decompose(c, x);
                    ASSERT_EQ(d.ribs.size(), d.backbone.size() + 1);
                    std::set<Bond> rebuilt;
                    std::size_t verts = 0;
                    for (std::size_t k = 0; k < d.ribs.size(); ++k) {
                        const Cluster& r = d.ribs[k];
                        EXPECT_TRUE(r.contains(d.entry(k)));
                        EXPECT_TRUE(r.contains(d.exit(k)));
                        EXPECT_TRUE(doubly_connected(r, d.entry(k), d.exit(k)));
                        rebuilt.insert(r.bonds().begin(), r.bonds().end());
                        verts += r.vertices().size();
                        for (std::size_t l = k + 1; l < d.ribs.size(); ++l) {
                            EXPECT_EQ(U(r, d.ribs[l]), 0);
                        }
                    }
                    EXPECT_EQ(verts, c.vertices().size());
                    for (const auto& b : d.backbone) {
                        EXPECT_TRUE(oracle::separates(c, Bond(b.from, b.to), Point::origin(2), x));
                        rebuilt.insert(Bond(b.from, b.to));
                    }
                    EXPECT_EQ(rebuilt, bonds);
                    if (model == Model::tree) {
                        ASSERT_EQ(d.path.size(), d.backbone.size() + 1);
                        EXPECT_EQ(d.path.back(), x);
                        EXPECT_EQ(static_cast<int>(d.backbone.size()), min_path_length(c, Point::origin(2), x));
                    }
                }
            }
        }
    }
}

TEST(Decompose, RejectsMissingVertex)
{
    const Cluster c(Model::tree, 2, {Bond({0, 0}, {1, 0})}, Point::origin(2));
    EXPECT_THROW(decompose(c, Point{0, 1}), NotAVertex);
}

TEST(LaceTerms, MatchLiteralProducts)
{
    struct Case {
        Model model;
        int dim;
        int order;
    };
    for (const Case& cs : {Case{Model::tree, 1, 5}, Case{Model::tree, 2, 4}, Case{Model::animal, 1, 4},
                           Case{Model::animal, 2, 4}, Case{Model::tree, 3, 3}}) {
        const LaceTerms t = lace_terms(cs.model, cs.dim, cs.order);
        const Literal lit = literal_terms(cs.model, cs.dim, cs.order);
        EXPECT_EQ(t.G_rebuilt, to_site(lit.G, cs.dim, cs.order));
        EXPECT_EQ(t.pi0, to_site(lit.pi0, cs.dim, cs.order));
        EXPECT_EQ(t.pi1, to_site(lit.pi1, cs.dim, cs.order));
        EXPECT_EQ(t.pi2, to_site(lit.pi2, cs.dim, cs.order));
    }
}

TEST(LaceTerms, AvoidingConfigurationsRebuildTheTwoPointFunction)
{
    for (Model model : {Model::tree, Model::animal}) {
        for (int d = 1; d <= 3; ++d) {
            const int n = d == 3 ? 4 : 5;
            EXPECT_EQ(lace_terms(model, d, n).G_rebuilt, two_point(model, d, n)) << to_string(model) << d;
        }
    }
}

TEST(LaceTerms, LowOrderCoefficients)
{
    for (int d = 1; d <= 4; ++d) {
        const auto tree = lace_terms(Model::tree, d, 2);
        EXPECT_EQ(tree.pi1.total()[2], Rational(6 * d));
        EXPECT_EQ(tree.pi2.total()[2], Rational(0));
        EXPECT_TRUE(tree.pi0.total().is_zero());
        const auto a = pi0(d, 4).total();
        EXPECT_EQ(a[4], Rational(3 * (2 * d) * (2 * d - 2), 2));
        EXPECT_EQ(a[4], g_circ(Model::animal, d, 4)[4] * Rational(3));
    }
}

TEST(PiSolve, MatchesLaceTermsWhereHigherLacesAreAbsent)
{
    for (Model model : {Model::tree, Model::animal}) {
        for (int d = 2; d <= 3; ++d) {
            const int n = 4;
            const auto bundle = series_bundle(model, d, n);
            const SiteSeries G = two_point(model, d, n);
            const PiSolution sol = pi_solve(bundle.g, G);
            EXPECT_EQ(sol.residual.support_size(), 0u);
            const OrderScan scan = order_scan(model, d, 4);
            int certified = -1;
            for (int o = 0; o <= 4; ++o) {
                if (scan.certifies_absent(3, o)) {
                    certified = o;
                }
            }
            EXPECT_GE(certified, 3);
            EXPECT_TRUE(scan.certifies_absent(2, 2));
            EXPECT_FALSE(scan.certifies_absent(2, 3));
            const LaceTerms t = lace_terms(model, d, certified);
            const SiteSeries expected = t.pi0 - t.pi1 + t.pi2;
            EXPECT_EQ(sol.Pi.truncated(certified), expected) << to_string(model) << d;
            EXPECT_TRUE(susceptibility_identity(bundle.chi, bundle.g, sol.Pi_hat, d).holds);
            for (const auto& s : all_symmetries(d)) {
                for (const auto& [x, v] : sol.Pi.entries()) {
                    EXPECT_EQ(sol.Pi.at(s.apply(x)), v);
                }
            }
        }
    }
}

TEST(PiSolve, TreeLowOrders)
{
    for (int d = 2; d <= 4; ++d) {
        const auto bundle = series_bundle(Model::tree, d, 3);
        const PiSolution sol = pi_solve(bundle.g, two_point(Model::tree, d, 3));
        EXPECT_EQ(sol.Pi_hat[0], Rational(0));
        EXPECT_EQ(sol.Pi_hat[1], Rational(0));
        EXPECT_EQ(sol.Pi_hat[2], Rational(-6 * d));
    }
}

TEST(OrderScan, RefusesLargeOrders)
{
    EXPECT_THROW(order_scan(Model::tree, 2, kMaxScanOrder + 1), ResourceCeilingExceeded);
}
