#pragma once

// Generating functions built from enumeration: g, g_circ, r, G, G^(i), chi,
// S^(m,n), and the cluster-pair quantities Q, Q^n, Q*.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ltla/cluster.hpp"
#include "ltla/enumerate.hpp"
#include "ltla/lattice.hpp"
#include "ltla/series.hpp"
#include "ltla/site_series.hpp"

namespace ltla {

inline RSeries one_point(Model model, int dim, int order, unsigned workers = 1)
{
    return series_from_counts(count(model, dim, order, {}, workers).counts, order);
}

/// Animals with the origin on a cycle; identically zero for trees.
inline RSeries g_circ(Model model, int dim, int order, unsigned workers = 1)
{
    if (model == Model::tree) {
        check_dimension(dim);
        return RSeries(order);
    }
    return series_from_counts(count(model, dim, order, {OriginInCycle{}}, workers).counts, order);
}

inline void require_unit(const Point& s, int dim)
{
    if (s.dim() != dim || s.l1_norm() != 1) {
        throw std::invalid_argument("expected a unit vector, got " + s.str());
    }
}

/// Clusters planted via the bond {0, s}.
inline RSeries planted(Model model, int dim, int order, const Point& s, unsigned workers = 1)
{
    require_unit(s, dim);
    return series_from_counts(count(model, dim, order, {PlantedVia{s}}, workers).counts, order);
}

// ---------------------------------------------------------------------------
// Two-point functions

/// G(x) and G^(i)(x), i = 0..order. G^(i) counts clusters containing 0 and
/// x joined by a self-avoiding path of length at least i inside the cluster.
struct TwoPoint {
    SiteSeries G;
    std::vector<SiteSeries> G_min;
};

namespace detail {

// counts[x][L * (order + 1) + n]: n-bond clusters containing 0 and x whose
// longest self-avoiding 0-x path has length L.
struct TwoPointAccumulator {
    int order = 0;
    std::map<SiteKey, std::vector<std::uint64_t>> counts;

    void operator()(const ClusterView& v)
    {
        const ClusterGraph g = v.graph();
        const int o = g.index_of(v.key(v.box().origin()));
        const std::vector<int> longest = g.longest_paths_from(o);
        const auto stride = static_cast<std::size_t>(order) + 1;
        for (int i = 0; i < g.vertex_count(); ++i) {
            auto& row = counts[g.key(i)];
            if (row.empty()) {
                row.assign(stride * stride, 0);
            }
            ++row[static_cast<std::size_t>(longest[static_cast<std::size_t>(i)]) * stride
                  + static_cast<std::size_t>(v.size())];
        }
    }
};

} // namespace detail

inline TwoPoint two_point_bundle(Model model, int dim, int order, unsigned workers = 1)
{
    const EnumerationSpec spec{model, dim, order, {}};
    auto acc = enumerate_reduce(
        spec, workers, [order] { return detail::TwoPointAccumulator{order, {}}; },
        [](detail::TwoPointAccumulator& into, detail::TwoPointAccumulator&& from) {
            for (auto& [k, row] : from.counts) {
                auto& dst = into.counts[k];
                if (dst.empty()) {
                    dst = std::move(row);
                    continue;
                }
                for (std::size_t i = 0; i < row.size(); ++i) {
                    dst[i] += row[i];
                }
            }
        });
    TwoPoint tp{SiteSeries(dim, order), {}};
    for (int i = 0; i <= order; ++i) {
        tp.G_min.emplace_back(dim, order);
    }
    const auto stride = static_cast<std::size_t>(order) + 1;
    for (const auto& [key, row] : acc.counts) {
        const Point x = unpack(key, dim);
        // Suffix sums over L give G^(i).
        std::vector<std::uint64_t> tail(stride, 0);
        for (int L = order; L >= 0; --L) {
            for (std::size_t n = 0; n < stride; ++n) {
                tail[n] += row[static_cast<std::size_t>(L) * stride + n];
            }
            RSeries s(order);
            for (std::size_t n = 0; n < stride; ++n) {
                s[static_cast<int>(n)] = Rational(tail[n]);
            }
            tp.G_min[static_cast<std::size_t>(L)].add(x, s);
        }
    }
    tp.G = tp.G_min[0];
    return tp;
}

inline SiteSeries two_point(Model model, int dim, int order, unsigned workers = 1)
{
    return two_point_bundle(model, dim, order, workers).G;
}

inline SiteSeries two_point_min(Model model, int dim, int order, int i, unsigned workers = 1)
{
    if (i < 0) {
        throw std::invalid_argument("path length must be >= 0");
    }
    if (i > order) {
        check_dimension(dim);
        return SiteSeries(dim, order);
    }
    return two_point_bundle(model, dim, order, workers).G_min[static_cast<std::size_t>(i)];
}

/// chi = sum_x G(x).
inline RSeries susceptibility(const SiteSeries& G) { return G.total(); }

inline RSeries susceptibility(Model model, int dim, int order, unsigned workers = 1)
{
    return susceptibility(two_point(model, dim, order, workers));
}

struct ModelSeriesBundle {
    Model model = Model::tree;
    int dim = 0;
    int order = 0;
    RSeries g;
    RSeries g_circ;
    RSeries r;
    RSeries chi;
    SiteSeries G;
    std::vector<SiteSeries> G_min;
};

inline ModelSeriesBundle series_bundle(Model model, int dim, int order, unsigned workers = 1)
{
    TwoPoint tp = two_point_bundle(model, dim, order, workers);
    ModelSeriesBundle b{model,
                        dim,
                        order,
                        one_point(model, dim, order, workers),
                        g_circ(model, dim, order, workers),
                        planted(model, dim, order, Point::unit(dim, 0), workers),
                        susceptibility(tp.G),
                        std::move(tp.G),
                        std::move(tp.G_min)};
    return b;
}

// ---------------------------------------------------------------------------
// S^(m,n)

/// S^(m,n)(x) = sum over i_1 + ... + i_n = m of (G^(i_1) * ... * G^(i_n))(x).
/// G_min[i] for i beyond its size is zero at this truncation order.
inline SiteSeries S_mn(const std::vector<SiteSeries>& G_min, int m, int n)
{
    if (G_min.empty()) {
        throw std::invalid_argument("S_mn: empty G^(i) table");
    }
    if (m < 0 || n < 1) {
        throw std::invalid_argument("S_mn needs m >= 0 and n >= 1");
    }
    const int dim = G_min.front().dim();
    const int order = G_min.front().order();
    SiteSeries total(dim, order);
    std::vector<int> parts;
    auto rec = [&](auto&& self, int left, int slots) -> void {
        if (slots == 0) {
            if (left != 0) {
                return;
            }
            SiteSeries acc = G_min[static_cast<std::size_t>(parts[0])];
            for (std::size_t k = 1; k < parts.size(); ++k) {
                acc = convolve(acc, G_min[static_cast<std::size_t>(parts[k])]);
            }
            total += acc;
            return;
        }
        for (int i = 0; i <= left; ++i) {
            if (static_cast<std::size_t>(i) >= G_min.size()) {
                break;
            }
            parts.push_back(i);
            self(self, left - i, slots - 1);
            parts.pop_back();
        }
    };
    rec(rec, m, n);
    return total;
}

/// The finite sup of S^(m,n)(x) over the support, per coefficient.
inline RSeries S_mn_sup(const SiteSeries& s)
{
    RSeries sup(s.order());
    for (const auto& [x, v] : s.entries()) {
        (void)x;
        for (int i = 0; i <= s.order(); ++i) {
            sup[i] = std::max(sup[i], v[i]);
        }
    }
    return sup;
}

// ---------------------------------------------------------------------------
// Bound G^(i)(x) <= (2dzg)^i (D^{*i} * G)(x)

struct BoundComparison {
    int i = 0;
    bool holds = true;
    std::optional<SiteExceedance> first_violation;
};

inline SiteSeries gk_bound_rhs(const RSeries& g, const SiteSeries& G, int i)
{
    const int dim = G.dim();
    const int order = G.order();
    const RSeries two_d_z_g = (g * Rational(2 * dim)).times_z().truncated(order);
    return convolve(convolution_power(step_kernel(dim, order), i), G).times(two_d_z_g.pow(static_cast<unsigned>(i)));
}

inline BoundComparison gk_bound_check(const RSeries& g, const TwoPoint& tp, int i)
{
    const SiteSeries lhs = tp.G_min.at(static_cast<std::size_t>(i));
    const auto v = first_exceedance(lhs, gk_bound_rhs(g, tp.G, i));
    return BoundComparison{i, !v.has_value(), v};
}

// ---------------------------------------------------------------------------
// Cluster pairs

/// A cluster containing the origin, reduced to what the pair sums need.
struct OriginCluster {
    int size = 0;
    std::vector<SiteKey> vertices; // sorted
    std::vector<int> dist;         // graph distance from the origin, per vertex
};

inline std::vector<std::vector<OriginCluster>> origin_clusters_by_size(Model model, int dim, int order)
{
    if (dim > kMaxPackedDim) {
        throw InvalidDimension("pair sums support d <= 8");
    }
    std::vector<std::vector<OriginCluster>> out(static_cast<std::size_t>(order) + 1);
    enumerate(EnumerationSpec{model, dim, order, {}}, [&](const ClusterView& v) {
        const ClusterGraph g = v.graph();
        const std::vector<int> d = g.distances_from(g.index_of(v.key(v.box().origin())));
        OriginCluster c;
        c.size = v.size();
        for (int i = 0; i < g.vertex_count(); ++i) {
            c.vertices.push_back(g.key(i));
            c.dist.push_back(d[static_cast<std::size_t>(i)]);
        }
        out[static_cast<std::size_t>(c.size)].push_back(std::move(c));
    });
    return out;
}

inline bool keys_intersect(const std::vector<SiteKey>& a, const std::vector<SiteKey>& b)
{
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            return true;
        }
    }
    return false;
}

/// Q(x) and its split Q^n(x) by the length n of the shortest 0-x path
/// through a shared vertex.
struct QData {
    SiteSeries Q;
    std::vector<SiteSeries> by_length; // n = 0..order
};

inline QData Q_decomposition(Model model, int dim, int order)
{
    const auto clusters = origin_clusters_by_size(model, dim, order);
    const std::uint64_t bias = packed_bias(dim);
    // (x, n) -> coefficients, keyed by packed x.
    std::map<std::pair<SiteKey, int>, std::vector<std::uint64_t>> acc;
    std::unordered_map<SiteKey, int> best;
    for (int a = 0; a <= order; ++a) {
        for (int b = 0; a + b <= order; ++b) {
            for (const auto& c0 : clusters[static_cast<std::size_t>(a)]) {
                for (const auto& c1 : clusters[static_cast<std::size_t>(b)]) {
                    best.clear();
                    for (std::size_t i = 0; i < c0.vertices.size(); ++i) {
                        for (std::size_t j = 0; j < c1.vertices.size(); ++j) {
                            const SiteKey x = key_sub(c0.vertices[i], c1.vertices[j], bias);
                            const int len = c0.dist[i] + c1.dist[j];
                            auto [it, fresh] = best.emplace(x, len);
                            if (!fresh) {
                                it->second = std::min(it->second, len);
                            }
                        }
                    }
                    for (const auto& [x, len] : best) {
                        auto& row = acc[{x, len}];
                        if (row.empty()) {
                            row.assign(static_cast<std::size_t>(order) + 1, 0);
                        }
                        ++row[static_cast<std::size_t>(a + b)];
                    }
                }
            }
        }
    }
    QData q{SiteSeries(dim, order), {}};
    for (int n = 0; n <= order; ++n) {
        q.by_length.emplace_back(dim, order);
    }
    for (const auto& [key, row] : acc) {
        const Point x = unpack(key.first, dim);
        const RSeries s = series_from_counts(row, order);
        q.Q.add(x, s);
        q.by_length.at(static_cast<std::size_t>(key.second)).add(x, s);
    }
    return q;
}

inline SiteSeries Q(Model model, int dim, int order) { return Q_decomposition(model, dim, order).Q; }

/// Q^n(s) for a unit vector s.
inline RSeries Q_n(Model model, int dim, int order, const Point& s, int n)
{
    require_unit(s, dim);
    const QData q = Q_decomposition(model, dim, order);
    if (n < 0 || n > order) {
        return RSeries(order);
    }
    return q.by_length[static_cast<std::size_t>(n)].at(s);
}

/// Q*(s) = sum over C_0, C_2 containing 0 and C_1 containing s of
/// z^{|C_0|+|C_1|+|C_2|} U_01 U_12, i.e. both C_0 and C_2 meet C_1.
inline RSeries Q_star(Model model, int dim, int order, const Point& s)
{
    require_unit(s, dim);
    const auto clusters = origin_clusters_by_size(model, dim, order);
    const std::uint64_t bias = packed_bias(dim);
    const SiteKey sk = pack(s);
    RSeries total(order);
    for (int b = 0; b <= order; ++b) {
        for (const auto& c1 : clusters[static_cast<std::size_t>(b)]) {
            std::vector<SiteKey> shifted;
            shifted.reserve(c1.vertices.size());
            for (auto k : c1.vertices) {
                shifted.push_back(key_add(k, sk, bias));
            }
            RSeries h(order);
            for (int a = 0; a + b <= order; ++a) {
                std::uint64_t hits = 0;
                for (const auto& c0 : clusters[static_cast<std::size_t>(a)]) {
                    hits += keys_intersect(c0.vertices, shifted);
                }
                h[a] = Rational(hits);
            }
            total += (h * h).times_z(b).truncated(order);
        }
    }
    return total;
}

} // namespace ltla
