#pragma once

// Independent brute-force oracles used by the test suites. Nothing here
// calls into the enumeration kernel.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "ltla/cluster.hpp"
#include "ltla/lattice.hpp"

namespace ltla::oracle {

using BondSet = std::set<Bond>;

inline std::set<Point> vertices_of(const BondSet& bonds, int dim)
{
    std::set<Point> vs;
    for (const auto& b : bonds) {
        vs.insert(b.first());
        vs.insert(b.second());
    }
    if (bonds.empty()) {
        vs.insert(Point::origin(dim));
    }
    return vs;
}

inline bool acyclic(const BondSet& bonds, int dim)
{
    return vertices_of(bonds, dim).size() == bonds.size() + 1;
}

/// All clusters containing the origin with at most n bonds, grown level by
/// level and deduplicated through std::set (generate-and-canonicalize).
inline std::vector<std::set<BondSet>> clusters_by_size(Model model, int dim, int n)
{
    std::vector<std::set<BondSet>> levels(static_cast<std::size_t>(n) + 1);
    levels[0].insert(BondSet{});
    for (int k = 0; k < n; ++k) {
        for (const auto& c : levels[static_cast<std::size_t>(k)]) {
            for (const auto& v : vertices_of(c, dim)) {
                for (const auto& w : neighbors(v, dim)) {
                    Bond b(v, w);
                    if (c.contains(b)) {
                        continue;
                    }
                    BondSet bigger = c;
                    bigger.insert(b);
                    if (model == Model::tree && !acyclic(bigger, dim)) {
                        continue;
                    }
                    levels[static_cast<std::size_t>(k) + 1].insert(std::move(bigger));
                }
            }
        }
    }
    return levels;
}

inline Cluster to_cluster(Model model, int dim, const BondSet& bonds)
{
    return Cluster(model, dim, std::vector<Bond>(bonds.begin(), bonds.end()), Point::origin(dim));
}

/// Number of closed walks of the given length from the origin, by recursion.
inline std::uint64_t closed_walks(int dim, int length)
{
    std::function<std::uint64_t(const Point&, int)> rec = [&](const Point& p, int left) -> std::uint64_t {
        if (left == 0) {
            return p.is_origin() ? 1 : 0;
        }
        if (p.l1_norm() > left) {
            return 0;
        }
        std::uint64_t total = 0;
        for (const auto& q : neighbors(p, dim)) {
            total += rec(q, left - 1);
        }
        return total;
    };
    return rec(Point::origin(dim), length);
}

/// Bridges by brute force: remove each bond and test connectivity.
inline bool separates(const Cluster& c, const Bond& removed, const Point& x, const Point& y)
{
    std::map<Point, std::vector<Point>> adj;
    for (const auto& b : c.bonds()) {
        if (b == removed) {
            continue;
        }
        adj[b.first()].push_back(b.second());
        adj[b.second()].push_back(b.first());
    }
    std::set<Point> seen{x};
    std::vector<Point> stack{x};
    while (!stack.empty()) {
        Point p = stack.back();
        stack.pop_back();
        for (const auto& q : adj[p]) {
            if (seen.insert(q).second) {
                stack.push_back(q);
            }
        }
    }
    return !seen.contains(y);
}

/// Clusters planted via {0, s}: the origin has degree one.
inline std::vector<BondSet> planted_via(const std::set<BondSet>& level, const Point& s)
{
    std::vector<BondSet> out;
    const Point o = Point::origin(s.dim());
    for (const auto& c : level) {
        int deg = 0;
        for (const auto& b : c) {
            deg += b.has_endpoint(o);
        }
        if (deg == 1 && c.contains(Bond(o, s))) {
            out.push_back(c);
        }
    }
    return out;
}

inline BondSet translate(const BondSet& c, const Point& t)
{
    BondSet out;
    for (const auto& b : c) {
        out.insert(Bond(b.first() + t, b.second() + t));
    }
    return out;
}

inline bool share_vertex(const std::set<Point>& a, const std::set<Point>& b)
{
    for (const auto& p : a) {
        if (b.contains(p)) {
            return true;
        }
    }
    return false;
}

} // namespace ltla::oracle
