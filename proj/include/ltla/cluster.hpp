#pragma once

// Clusters (lattice trees and bond lattice animals) and the graph predicates
// the expansions need: shortest and longest self-avoiding paths, bridges,
// double connections, pivotal bonds and cycles through the origin.

#include <algorithm>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ltla/lattice.hpp"

namespace ltla {

enum class Model { tree, animal };

inline std::string_view to_string(Model m) { return m == Model::tree ? "tree" : "animal"; }

inline Model parse_model(std::string_view s)
{
    if (s == "tree" || s == "trees" || s == "t") {
        return Model::tree;
    }
    if (s == "animal" || s == "animals" || s == "a") {
        return Model::animal;
    }
    throw std::invalid_argument("unknown model '" + std::string(s) + "' (expected tree|animal)");
}

class NotAVertex : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Directed bond, oriented from `from` to `to`.
struct DirectedBond {
    Point from;
    Point to;

    friend bool operator==(const DirectedBond&, const DirectedBond&) = default;
};

/// Undirected graph on packed lattice sites. Vertices are kept sorted by key;
/// index 0..n-1 refers to that order.
class ClusterGraph {
public:
    ClusterGraph() = default;

    /// Builds from an edge list; `extra` vertices (e.g. an isolated origin)
    /// are added even if no edge touches them.
    ClusterGraph(const std::vector<std::pair<SiteKey, SiteKey>>& edges, const std::vector<SiteKey>& extra)
    {
        for (const auto& [a, b] : edges) {
            verts_.push_back(a);
            verts_.push_back(b);
        }
        verts_.insert(verts_.end(), extra.begin(), extra.end());
        std::sort(verts_.begin(), verts_.end());
        verts_.erase(std::unique(verts_.begin(), verts_.end()), verts_.end());
        adj_.assign(verts_.size(), {});
        edges_.reserve(edges.size());
        for (const auto& [a, b] : edges) {
            const int u = index_of(a);
            const int v = index_of(b);
            const int id = static_cast<int>(edges_.size());
            edges_.emplace_back(u, v);
            adj_[static_cast<std::size_t>(u)].emplace_back(v, id);
            adj_[static_cast<std::size_t>(v)].emplace_back(u, id);
        }
    }

    int vertex_count() const { return static_cast<int>(verts_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<SiteKey>& vertices() const { return verts_; }
    SiteKey key(int v) const { return verts_[static_cast<std::size_t>(v)]; }
    std::pair<int, int> edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
    const std::vector<std::pair<int, int>>& incident(int v) const { return adj_[static_cast<std::size_t>(v)]; }

    /// -1 when absent.
    int index_of(SiteKey k) const
    {
        auto it = std::lower_bound(verts_.begin(), verts_.end(), k);
        if (it == verts_.end() || *it != k) {
            return -1;
        }
        return static_cast<int>(it - verts_.begin());
    }

    /// BFS distances; -1 for unreachable vertices.
    std::vector<int> distances_from(int source) const
    {
        std::vector<int> dist(verts_.size(), -1);
        std::vector<int> queue{source};
        dist[static_cast<std::size_t>(source)] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int u = queue[head];
            for (const auto& [w, e] : adj_[static_cast<std::size_t>(u)]) {
                (void)e;
                if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                    queue.push_back(w);
                }
            }
        }
        return dist;
    }

    /// Length of the longest self-avoiding path from `source` to every
    /// vertex (-1 if unreachable). Exhaustive search; clusters here are small.
    std::vector<int> longest_paths_from(int source) const
    {
        std::vector<int> best(verts_.size(), -1);
        std::vector<char> on_path(verts_.size(), 0);
        auto dfs = [&](auto&& self, int u, int len) -> void {
            best[static_cast<std::size_t>(u)] = std::max(best[static_cast<std::size_t>(u)], len);
            on_path[static_cast<std::size_t>(u)] = 1;
            for (const auto& [w, e] : adj_[static_cast<std::size_t>(u)]) {
                (void)e;
                if (!on_path[static_cast<std::size_t>(w)]) {
                    self(self, w, len + 1);
                }
            }
            on_path[static_cast<std::size_t>(u)] = 0;
        };
        dfs(dfs, source, 0);
        return best;
    }

    /// is_bridge[e] for every edge (Tarjan low-link).
    std::vector<char> bridges() const
    {
        const std::size_t n = verts_.size();
        std::vector<char> is_bridge(edges_.size(), 0);
        std::vector<int> disc(n, -1);
        std::vector<int> low(n, 0);
        int timer = 0;
        auto dfs = [&](auto&& self, int u, int parent_edge) -> void {
            disc[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = timer++;
            for (const auto& [w, e] : adj_[static_cast<std::size_t>(u)]) {
                if (e == parent_edge) {
                    continue;
                }
                if (disc[static_cast<std::size_t>(w)] < 0) {
                    self(self, w, e);
                    low[static_cast<std::size_t>(u)]
                        = std::min(low[static_cast<std::size_t>(u)], low[static_cast<std::size_t>(w)]);
                    if (low[static_cast<std::size_t>(w)] > disc[static_cast<std::size_t>(u)]) {
                        is_bridge[static_cast<std::size_t>(e)] = 1;
                    }
                } else {
                    low[static_cast<std::size_t>(u)]
                        = std::min(low[static_cast<std::size_t>(u)], disc[static_cast<std::size_t>(w)]);
                }
            }
        };
        for (std::size_t v = 0; v < n; ++v) {
            if (disc[v] < 0) {
                dfs(dfs, static_cast<int>(v), -1);
            }
        }
        return is_bridge;
    }

    /// Edge ids of a shortest u-v path, in order from u.
    std::vector<int> shortest_path_edges(int u, int v) const
    {
        std::vector<int> parent_edge(verts_.size(), -1);
        std::vector<char> seen(verts_.size(), 0);
        std::vector<int> queue{u};
        seen[static_cast<std::size_t>(u)] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int a = queue[head];
            for (const auto& [w, e] : adj_[static_cast<std::size_t>(a)]) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    parent_edge[static_cast<std::size_t>(w)] = e;
                    queue.push_back(w);
                }
            }
        }
        if (!seen[static_cast<std::size_t>(v)]) {
            throw std::logic_error("shortest_path_edges: vertices not connected");
        }
        std::vector<int> path;
        for (int w = v; w != u;) {
            const int e = parent_edge[static_cast<std::size_t>(w)];
            path.push_back(e);
            const auto [a, b] = edges_[static_cast<std::size_t>(e)];
            w = a == w ? b : a;
        }
        std::reverse(path.begin(), path.end());
        return path;
    }

    /// Bridges separating u from v, ordered from u to v, each as
    /// (tail vertex, head vertex) with the head on v's side.
    std::vector<std::pair<int, int>> pivotal_edges(int u, int v) const
    {
        std::vector<std::pair<int, int>> out;
        if (u == v) {
            return out;
        }
        const auto is_bridge = bridges();
        int at = u;
        for (int e : shortest_path_edges(u, v)) {
            const auto [a, b] = edges_[static_cast<std::size_t>(e)];
            const int next = a == at ? b : a;
            if (is_bridge[static_cast<std::size_t>(e)]) {
                out.emplace_back(at, next);
            }
            at = next;
        }
        return out;
    }

    bool doubly_connected(int u, int v) const { return u == v || pivotal_edges(u, v).empty(); }

    /// Vertices w with a double connection between `source` and w.
    std::vector<int> doubly_connected_to(int source) const
    {
        // Two vertices are doubly connected iff they lie in the same
        // component after deleting all bridges.
        const auto is_bridge = bridges();
        std::vector<int> out;
        std::vector<char> seen(verts_.size(), 0);
        std::vector<int> stack{source};
        seen[static_cast<std::size_t>(source)] = 1;
        while (!stack.empty()) {
            const int a = stack.back();
            stack.pop_back();
            out.push_back(a);
            for (const auto& [w, e] : adj_[static_cast<std::size_t>(a)]) {
                if (!is_bridge[static_cast<std::size_t>(e)] && !seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// True iff some cycle passes through v, i.e. an incident edge is not a bridge.
    bool on_cycle(int v) const
    {
        const auto is_bridge = bridges();
        return std::any_of(adj_[static_cast<std::size_t>(v)].begin(), adj_[static_cast<std::size_t>(v)].end(),
                           [&](const auto& we) { return !is_bridge[static_cast<std::size_t>(we.second)]; });
    }

    bool connected() const
    {
        if (verts_.empty()) {
            return true;
        }
        const auto d = distances_from(0);
        return std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; });
    }

private:
    std::vector<SiteKey> verts_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
};

/// A finite connected set of lattice bonds together with its vertex set.
/// The bondless cluster {p} is represented by an empty bond set plus its
/// single vertex.
class Cluster {
public:
    Cluster(Model model, int dim, std::vector<Bond> bonds, std::optional<Point> lone_vertex = std::nullopt)
        : model_(model), dim_(dim), bonds_(std::move(bonds))
    {
        check_dimension(dim);
        std::sort(bonds_.begin(), bonds_.end());
        bonds_.erase(std::unique(bonds_.begin(), bonds_.end()), bonds_.end());
        std::set<Point> vs;
        for (const Bond& b : bonds_) {
            if (b.first().dim() != dim) {
                throw InvalidDimension("cluster bond dimension mismatch");
            }
            vs.insert(b.first());
            vs.insert(b.second());
        }
        if (bonds_.empty()) {
            vs.insert(lone_vertex.value_or(Point::origin(dim)));
        } else if (lone_vertex && !vs.contains(*lone_vertex)) {
            throw std::invalid_argument("cluster: lone vertex given for a nonempty bond set");
        }
        vertices_.assign(vs.begin(), vs.end());
        const ClusterGraph g = graph();
        if (!g.connected()) {
            throw std::invalid_argument("cluster: bond set is not connected");
        }
        if (model_ == Model::tree && vertices_.size() != bonds_.size() + 1) {
            throw std::invalid_argument("cluster: tree model requires an acyclic bond set");
        }
    }

    /// The single-vertex cluster {p}.
    static Cluster vertex(Model model, const Point& p) { return Cluster(model, p.dim(), {}, p); }

    Model model() const { return model_; }
    int dim() const { return dim_; }
    int size() const { return static_cast<int>(bonds_.size()); }
    const std::vector<Bond>& bonds() const { return bonds_; }
    const std::vector<Point>& vertices() const { return vertices_; }

    bool contains(const Point& p) const { return std::binary_search(vertices_.begin(), vertices_.end(), p); }
    bool contains(const Bond& b) const { return std::binary_search(bonds_.begin(), bonds_.end(), b); }

    Cluster translated(const Point& t) const
    {
        std::vector<Bond> moved;
        moved.reserve(bonds_.size());
        for (const Bond& b : bonds_) {
            moved.emplace_back(b.first() + t, b.second() + t);
        }
        return Cluster(model_, dim_, std::move(moved), vertices_.front() + t);
    }

    ClusterGraph graph() const
    {
        std::vector<std::pair<SiteKey, SiteKey>> edges;
        edges.reserve(bonds_.size());
        for (const Bond& b : bonds_) {
            edges.emplace_back(pack(b.first()), pack(b.second()));
        }
        std::vector<SiteKey> extra;
        for (const Point& p : vertices_) {
            extra.push_back(pack(p));
        }
        return ClusterGraph(edges, extra);
    }

    friend bool operator==(const Cluster& a, const Cluster& b)
    {
        return a.dim_ == b.dim_ && a.bonds_ == b.bonds_ && a.vertices_ == b.vertices_;
    }

private:
    Model model_;
    int dim_;
    std::vector<Bond> bonds_;
    std::vector<Point> vertices_;
};

namespace detail {

inline int require_vertex(const ClusterGraph& g, const Point& p)
{
    const int i = g.index_of(pack(p));
    if (i < 0) {
        throw NotAVertex("point " + p.str() + " is not a vertex of the cluster");
    }
    return i;
}

} // namespace detail

/// Length of the shortest path between x and y inside C.
inline int min_path_length(const Cluster& c, const Point& x, const Point& y)
{
    const ClusterGraph g = c.graph();
    const int u = detail::require_vertex(g, x);
    const int v = detail::require_vertex(g, y);
    return g.distances_from(u)[static_cast<std::size_t>(v)];
}

/// Length of the longest self-avoiding path between x and y inside C.
inline int longest_path_length(const Cluster& c, const Point& x, const Point& y)
{
    const ClusterGraph g = c.graph();
    const int u = detail::require_vertex(g, x);
    const int v = detail::require_vertex(g, y);
    return g.longest_paths_from(u)[static_cast<std::size_t>(v)];
}

inline bool doubly_connected(const Cluster& c, const Point& x, const Point& y)
{
    const ClusterGraph g = c.graph();
    return g.doubly_connected(detail::require_vertex(g, x), detail::require_vertex(g, y));
}

inline bool origin_in_cycle(const Cluster& c)
{
    const ClusterGraph g = c.graph();
    const int o = g.index_of(pack(Point::origin(c.dim())));
    if (o < 0) {
        throw NotAVertex("origin_in_cycle: the origin is not a vertex of the cluster");
    }
    return g.on_cycle(o);
}

/// Bridges separating x from y, ordered from x to y and oriented toward y.
inline std::vector<DirectedBond> pivotal_bonds(const Cluster& c, const Point& x, const Point& y)
{
    const ClusterGraph g = c.graph();
    const int u = detail::require_vertex(g, x);
    const int v = detail::require_vertex(g, y);
    std::vector<DirectedBond> out;
    for (const auto& [a, b] : g.pivotal_edges(u, v)) {
        out.push_back({unpack(g.key(a), c.dim()), unpack(g.key(b), c.dim())});
    }
    return out;
}

} // namespace ltla
