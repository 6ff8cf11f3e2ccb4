#pragma once

// Backbone/rib decompositions, 2-edge laces, the lace-expansion terms
// Pi^(0), Pi^(1), Pi^(2), and Pi solved from the convolution identity.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ltla/check.hpp"
#include "ltla/cluster.hpp"
#include "ltla/enumerate.hpp"
#include "ltla/generating.hpp"
#include "ltla/series.hpp"
#include "ltla/site_series.hpp"

namespace ltla {

// ---------------------------------------------------------------------------
// Decomposition

/// Backbone and ribs of a cluster for the connection 0 -> x. For trees the
/// backbone is the 0-x path and `path` lists its vertices; for animals it is
/// the ordered set of oriented pivotal bonds. ribs[k] contains v_k (the
/// head of backbone bond k, with v_0 = 0).
struct Decomposition {
    Model model = Model::tree;
    Point x;
    std::vector<DirectedBond> backbone;
    std::vector<Cluster> ribs;
    std::vector<Point> path;

    Point entry(std::size_t k) const { return k == 0 ? Point::origin(x.dim()) : backbone[k - 1].to; }
    Point exit(std::size_t k) const { return k == backbone.size() ? x : backbone[k].from; }
};

inline Decomposition decompose(const Cluster& c, const Point& x)
{
    const Point o = Point::origin(c.dim());
    if (!c.contains(o) || !c.contains(x)) {
        throw NotAVertex("decompose: 0 and x must be vertices of the cluster");
    }
    Decomposition d;
    d.model = c.model();
    d.x = x;
    d.backbone = pivotal_bonds(c, o, x);
    std::set<Bond> cut;
    for (const auto& b : d.backbone) {
        cut.insert(Bond(b.from, b.to));
    }
    // Components of the cluster after removing backbone bonds.
    const auto& vs = c.vertices();
    std::vector<int> parent(vs.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
        }
        return v;
    };
    auto index = [&](const Point& p) {
        return static_cast<int>(std::lower_bound(vs.begin(), vs.end(), p) - vs.begin());
    };
    for (const auto& b : c.bonds()) {
        if (!cut.contains(b)) {
            parent[static_cast<std::size_t>(find(index(b.first())))] = find(index(b.second()));
        }
    }
    for (std::size_t k = 0; k <= d.backbone.size(); ++k) {
        const Point v = d.entry(k);
        const int root = find(index(v));
        std::vector<Bond> bonds;
        for (const auto& b : c.bonds()) {
            if (!cut.contains(b) && find(index(b.first())) == root) {
                bonds.push_back(b);
            }
        }
        d.ribs.emplace_back(c.model(), c.dim(), std::move(bonds), v);
    }
    if (c.model() == Model::tree) {
        d.path.push_back(o);
        for (const auto& b : d.backbone) {
            d.path.push_back(b.to);
        }
    }
    return d;
}

/// -1 if the ribs share a vertex, else 0.
inline int U(const Cluster& a, const Cluster& b)
{
    for (const Point& p : a.vertices()) {
        if (b.contains(p)) {
            return -1;
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Laces

/// Interaction edge ij between rib indices i < j.
using RibPair = std::pair<int, int>;

struct Lace2 {
    RibPair first;
    RibPair second;
    friend bool operator==(const Lace2&, const Lace2&) = default;
    friend auto operator<=>(const Lace2&, const Lace2&) = default;
};

inline std::vector<Lace2> laces2(int n)
{
    if (n < 2) {
        throw std::invalid_argument("laces2 needs n >= 2");
    }
    std::vector<Lace2> out;
    for (int j = 1; j < n; ++j) {
        out.push_back({{0, j}, {j, n}});
    }
    for (int j = 2; j < n; ++j) {
        for (int i = 1; i < j; ++i) {
            out.push_back({{0, j}, {i, n}});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Pairs whose (1 + U) factors multiply the lace weight; the lace's own
/// edges are not included.
inline std::vector<RibPair> compatible(const Lace2& L, int n)
{
    int j = 0; // 0l excluded for l > j
    int i = 0; // kn excluded for k < i
    if (L.first.first != 0 || L.second.second != n) {
        throw std::invalid_argument("compatible: not a lace on [0, n]");
    }
    if (L.first.second == L.second.first) {
        j = i = L.first.second;
    } else {
        j = L.first.second;
        i = L.second.first;
    }
    std::vector<RibPair> out;
    for (int k = 0; k <= n; ++k) {
        for (int l = k + 1; l <= n; ++l) {
            const RibPair p{k, l};
            if ((k == 0 && l > j) || (l == n && k < i) || p == L.first || p == L.second) {
                continue;
            }
            out.push_back(p);
        }
    }
    return out;
}

inline int rib_pair_bit(int i, int j) { return j * (j - 1) / 2 + i; }

inline std::uint64_t rib_pair_mask(std::initializer_list<RibPair> ps)
{
    std::uint64_t m = 0;
    for (const auto& p : ps) {
        m |= std::uint64_t{1} << rib_pair_bit(p.first, p.second);
    }
    return m;
}

/// Whether the edges in `mask` (over ribs 0..k) join into the whole of [0, k]
/// when read as closed intervals.
inline bool spans_interval(int k, std::uint64_t mask)
{
    int reach = 0;
    // Sorting by left end: iterate i ascending.
    for (int i = 0; i <= k; ++i) {
        if (i > reach) {
            return false;
        }
        for (int j = i + 1; j <= k; ++j) {
            if ((mask >> rib_pair_bit(i, j)) & 1U) {
                reach = std::max(reach, j);
            }
        }
    }
    return k > 0 && reach >= k;
}

/// A lace: an edge set spanning [0, k] that stops spanning when any edge is
/// removed.
inline bool is_lace(int k, std::uint64_t edges)
{
    if (!spans_interval(k, edges)) {
        return false;
    }
    for (std::uint64_t rest = edges; rest; rest &= rest - 1) {
        const std::uint64_t bit = rest & (~rest + 1);
        if (spans_interval(k, edges & ~bit)) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Rib configurations

/// A rib shape: vertices relative to its entry point, and the offset of the
/// point where the next backbone step leaves it (zero for trees).
struct RibShape {
    int size = 0;
    std::vector<SiteKey> vertices; // sorted, entry at the origin
    SiteKey exit;
};

inline std::vector<RibShape> rib_shapes(Model model, int dim, int order)
{
    std::vector<RibShape> out;
    enumerate(EnumerationSpec{model, dim, order, {}}, [&](const ClusterView& v) {
        RibShape r;
        r.size = v.size();
        r.vertices = v.vertex_keys();
        const SiteKey origin = v.key(v.box().origin());
        if (model == Model::tree) {
            r.exit = origin;
            out.push_back(std::move(r));
            return;
        }
        const ClusterGraph g = v.graph();
        for (int y : g.doubly_connected_to(g.index_of(origin))) {
            RibShape s = r;
            s.exit = g.key(y);
            out.push_back(std::move(s));
        }
    });
    std::stable_sort(out.begin(), out.end(), [](const RibShape& a, const RibShape& b) { return a.size < b.size; });
    return out;
}

/// Largest total order for which rib-pair masks fit in 64 bits.
inline constexpr int kMaxLaceOrder = 10;

/// Configurations rib_0, step, rib_1, ..., step, rib_k with total bond count
/// (steps plus rib bonds) at most `order`, by (endpoint x, k, mask of
/// intersecting rib pairs) and total order. Ribs may overlap freely here;
/// the lace weights decide what each configuration contributes.
struct RibHistogram {
    int dim = 0;
    int order = 0;
    std::map<std::tuple<SiteKey, int, std::uint64_t>, std::vector<std::uint64_t>> counts;
    std::uint64_t configurations = 0;
};

inline RibHistogram rib_histogram(Model model, int dim, int order, int max_steps = -1)
{
    if (order < 0 || order > kMaxLaceOrder) {
        throw std::invalid_argument("lace order must be in [0, " + std::to_string(kMaxLaceOrder) + "]");
    }
    if (max_steps < 0) {
        max_steps = order;
    }
    const auto shapes = rib_shapes(model, dim, order);
    const std::uint64_t bias = packed_bias(dim);
    std::vector<SiteKey> steps;
    for (const auto& e : unit_vectors(dim)) {
        steps.push_back(pack(e));
    }
    RibHistogram h;
    h.dim = dim;
    h.order = order;
    std::vector<std::vector<SiteKey>> placed;

    auto rec = [&](auto&& self, int k, SiteKey pos, int used, std::uint64_t mask) -> void {
        for (const auto& r : shapes) {
            if (used + r.size > order) {
                break;
            }
            std::vector<SiteKey> verts;
            verts.reserve(r.vertices.size());
            for (auto v : r.vertices) {
                verts.push_back(key_add(v, pos, bias));
            }
            std::uint64_t next = mask;
            for (int i = 0; i < k; ++i) {
                if (keys_intersect(placed[static_cast<std::size_t>(i)], verts)) {
                    next |= std::uint64_t{1} << rib_pair_bit(i, k);
                }
            }
            const SiteKey exit = key_add(r.exit, pos, bias);
            const int total = used + r.size;
            auto& row = h.counts[{exit, k, next}];
            if (row.empty()) {
                row.assign(static_cast<std::size_t>(order) + 1, 0);
            }
            ++row[static_cast<std::size_t>(total)];
            ++h.configurations;
            if (k < max_steps && total + 1 <= order) {
                placed.push_back(std::move(verts));
                for (auto e : steps) {
                    self(self, k + 1, key_add(exit, e, bias), total + 1, next);
                }
                placed.pop_back();
            }
        }
    };
    rec(rec, 0, pack(Point::origin(dim)), 0, 0);
    return h;
}

/// Lace weights of a configuration with k steps and intersection mask.
inline long long weight_avoiding(int, std::uint64_t mask) { return mask == 0 ? 1 : 0; }

inline long long weight_pi1(int k, std::uint64_t mask)
{
    return k >= 1 && mask == rib_pair_mask({{0, k}}) ? 1 : 0;
}

inline long long weight_pi2(int k, std::uint64_t mask)
{
    if (k < 2) {
        return 0;
    }
    long long w = 0;
    for (const auto& L : laces2(k)) {
        const std::uint64_t lm = rib_pair_mask({L.first, L.second});
        if ((mask & lm) != lm) {
            continue;
        }
        bool clear = true;
        for (const auto& p : compatible(L, k)) {
            clear = clear && !((mask >> rib_pair_bit(p.first, p.second)) & 1U);
        }
        w += clear ? 1 : 0;
    }
    return w;
}

struct LaceTerms {
    Model model = Model::tree;
    int dim = 0;
    int order = 0;
    std::uint64_t configurations = 0;
    SiteSeries G_rebuilt; // mutually avoiding ribs
    SiteSeries pi0;
    SiteSeries pi1;
    SiteSeries pi2;
};

inline LaceTerms lace_terms(Model model, int dim, int order, int max_steps = -1)
{
    const RibHistogram h = rib_histogram(model, dim, order, max_steps);
    LaceTerms t{model, dim, order, h.configurations, SiteSeries(dim, order), SiteSeries(dim, order),
                SiteSeries(dim, order), SiteSeries(dim, order)};
    std::map<std::pair<int, std::uint64_t>, long long> w1_memo;
    std::map<std::pair<int, std::uint64_t>, long long> w2_memo;
    for (const auto& [key, row] : h.counts) {
        const auto& [xk, k, mask] = key;
        const Point x = unpack(xk, dim);
        const RSeries s = series_from_counts(row, order);
        if (weight_avoiding(k, mask)) {
            t.G_rebuilt.add(x, s);
        }
        if (k == 0 && !x.is_origin()) {
            t.pi0.add(x, s);
        }
        auto w1 = w1_memo.try_emplace({k, mask}, 0);
        if (w1.second) {
            w1.first->second = weight_pi1(k, mask);
        }
        if (w1.first->second) {
            t.pi1.add(x, s * Rational(w1.first->second));
        }
        auto w2 = w2_memo.try_emplace({k, mask}, 0);
        if (w2.second) {
            w2.first->second = weight_pi2(k, mask);
        }
        if (w2.first->second) {
            t.pi2.add(x, s * Rational(w2.first->second));
        }
    }
    return t;
}

/// Pi^(0)(x): animals only (zero for trees).
inline SiteSeries pi0(int dim, int order) { return lace_terms(Model::animal, dim, order, 0).pi0; }
inline SiteSeries pi1(Model model, int dim, int order) { return lace_terms(model, dim, order).pi1; }
inline SiteSeries pi2(Model model, int dim, int order) { return lace_terms(model, dim, order).pi2; }

// ---------------------------------------------------------------------------
// Order scan

/// For each lace size N, the lowest z-order at which some configuration has
/// an N-edge lace inside its intersection mask (a necessary condition for a
/// nonzero Pi^(N) term). Sizes absent from the map have no such
/// configuration up to `max_order`.
struct OrderScan {
    int max_order = 0;
    std::map<int, int> min_order;

    /// No lace with N or more edges occurs at orders <= order.
    bool certifies_absent(int N, int order) const
    {
        if (order > max_order) {
            return false;
        }
        for (const auto& [n, o] : min_order) {
            if (n >= N && o <= order) {
                return false;
            }
        }
        return true;
    }
};

/// Lace sizes realizable inside `mask`.
inline std::set<int> lace_sizes_within(int k, std::uint64_t mask)
{
    std::vector<std::uint64_t> bits;
    for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
        bits.push_back(rest & (~rest + 1));
    }
    std::set<int> sizes;
    for (std::uint64_t sub = 1; sub < (std::uint64_t{1} << bits.size()); ++sub) {
        std::uint64_t edges = 0;
        for (std::size_t b = 0; b < bits.size(); ++b) {
            if ((sub >> b) & 1U) {
                edges |= bits[b];
            }
        }
        if (is_lace(k, edges)) {
            sizes.insert(__builtin_popcountll(edges));
        }
    }
    return sizes;
}

inline constexpr int kMaxScanOrder = 5;

inline OrderScan order_scan(Model model, int dim, int max_order)
{
    if (max_order > kMaxScanOrder) {
        throw ResourceCeilingExceeded("order scan supports orders <= " + std::to_string(kMaxScanOrder));
    }
    const RibHistogram h = rib_histogram(model, dim, max_order);
    OrderScan scan;
    scan.max_order = max_order;
    std::map<std::pair<int, std::uint64_t>, std::set<int>> memo;
    for (const auto& [key, row] : h.counts) {
        const auto& [xk, k, mask] = key;
        (void)xk;
        int lowest = -1;
        for (std::size_t n = 0; n < row.size(); ++n) {
            if (row[n]) {
                lowest = static_cast<int>(n);
                break;
            }
        }
        if (lowest < 0 || mask == 0) {
            continue;
        }
        auto it = memo.find({k, mask});
        if (it == memo.end()) {
            it = memo.emplace(std::pair{k, mask}, lace_sizes_within(k, mask)).first;
        }
        for (int N : it->second) {
            auto [m, fresh] = scan.min_order.emplace(N, lowest);
            if (!fresh) {
                m->second = std::min(m->second, lowest);
            }
        }
    }
    return scan;
}

// ---------------------------------------------------------------------------
// Pi from the convolution identity

/// 2dz (D * G) = z sum_e G(x - e).
inline SiteSeries step_convolution(const SiteSeries& G)
{
    SiteSeries zD(G.dim(), G.order());
    for (const auto& e : unit_vectors(G.dim())) {
        zD.add(e, RSeries::monomial(G.order(), 1));
    }
    return convolve(zD, G);
}

struct PiSolution {
    SiteSeries Pi;
    RSeries Pi_hat;
    SiteSeries residual;
};

/// Solves G = delta g + Pi + g (2dzD*G) + Pi * (2dzD*G) for Pi. The last
/// term raises the z-order, so fixed-point iteration settles one order per
/// pass.
inline PiSolution pi_solve(const RSeries& g, const SiteSeries& G)
{
    const int dim = G.dim();
    const int order = std::min(G.order(), g.order());
    const SiteSeries Gt = G.truncated(order);
    const SiteSeries K = step_convolution(Gt);
    const SiteSeries F = Gt - delta(dim, order).times(g) - K.times(g);
    SiteSeries Pi = F;
    for (int pass = 0; pass <= order; ++pass) {
        Pi = F - convolve(Pi, K);
    }
    const SiteSeries residual = Gt - delta(dim, order).times(g) - Pi - K.times(g) - convolve(Pi, K);
    return PiSolution{Pi, Pi.total(), residual};
}

/// chi (1 - 2dz (g + Pi_hat)) = g + Pi_hat.
inline IdentityCheck susceptibility_identity(const RSeries& chi, const RSeries& g, const RSeries& pi_hat, int dim)
{
    const RSeries gp = g + pi_hat;
    const int order = gp.order();
    const RSeries lhs = chi * (RSeries::constant(order, 1) - (gp * Rational(2 * dim)).times_z().truncated(order));
    IdentityCheck c;
    c.name = "chi = (g + Pi_hat) / (1 - 2dz (g + Pi_hat))";
    c.first_bad_order = first_mismatch(lhs, gp);
    c.holds = c.first_bad_order < 0;
    return c;
}

} // namespace ltla
