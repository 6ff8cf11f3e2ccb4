#pragma once

// Exhaustive, duplicate-free enumeration of lattice trees and bond animals
// that contain the origin.
//
// The enumerator is Redelmeier's method transplanted to bonds: a cluster is
// grown one bond at a time from an "untried" set of candidate bonds adjacent
// to it, and every bond that has ever been offered as a candidate on the
// current branch is never offered again. Each connected bond set touching
// the origin is therefore produced exactly once, with no canonical-form
// hashing. Tree enumeration prunes bonds that would close a cycle.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "ltla/cluster.hpp"
#include "ltla/lattice.hpp"
#include "ltla/rational.hpp"

namespace ltla {

// ---------------------------------------------------------------------------
// Constraints

struct ContainsVertex {
    Point x;
};
/// Origin has degree 1 and the bond {0, s} is present.
struct PlantedVia {
    Point s;
};
struct OriginInCycle {};
struct DoublyConnectedPair {
    Point x;
    Point y;
};
/// Some self-avoiding path in C of length at least `length` joins x and y.
struct PathLengthAtLeast {
    Point x;
    Point y;
    int length = 0;
};
struct ExcludesBond {
    Bond bond;
};

using Constraint
    = std::variant<ContainsVertex, PlantedVia, OriginInCycle, DoublyConnectedPair, PathLengthAtLeast, ExcludesBond>;

inline std::string describe(const Constraint& c)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ContainsVertex>) {
                return "contains" + v.x.str();
            } else if constexpr (std::is_same_v<T, PlantedVia>) {
                return "planted" + v.s.str();
            } else if constexpr (std::is_same_v<T, OriginInCycle>) {
                return "origin-in-cycle";
            } else if constexpr (std::is_same_v<T, DoublyConnectedPair>) {
                return "doubly-connected" + v.x.str() + v.y.str();
            } else if constexpr (std::is_same_v<T, PathLengthAtLeast>) {
                return "path>=" + std::to_string(v.length) + v.x.str() + v.y.str();
            } else {
                return "excludes" + v.bond.str();
            }
        },
        c);
}

inline std::string describe(const std::vector<Constraint>& cs)
{
    std::string s;
    for (const auto& c : cs) {
        if (!s.empty()) {
            s += ";";
        }
        s += describe(c);
    }
    return s.empty() ? "none" : s;
}

// ---------------------------------------------------------------------------
// Resource ceiling

class ResourceCeilingExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Crude upper estimate for the number of clusters with at most n bonds
/// containing the origin: (n+1) * mu^n with mu = 2de (mu = 1 in d = 1,
/// where the count is exactly n+1).
inline double predicted_cluster_count(int dim, int max_bonds)
{
    const double mu = dim == 1 ? 1.0 : 2.0 * dim * std::exp(1.0);
    return (max_bonds + 1.0) * std::pow(mu, max_bonds);
}

/// Default ceiling. Admits trees to n = 7 in d <= 3, n = 6 in d = 4 and
/// animals to n = 6 in d <= 3 (and proper counts to n = 5 in d = 5).
inline constexpr double kDefaultClusterCeiling = 4.0e9;

// ---------------------------------------------------------------------------

struct EnumerationSpec {
    Model model = Model::tree;
    int dim = 2;
    int max_bonds = 0;
    std::vector<Constraint> constraints;
    double ceiling = kDefaultClusterCeiling;
};

/// Maximum coordinate magnitude representable by the enumeration kernels.
inline constexpr int kMaxOrder = 31;

/// Integer box [-R, R]^d holding every vertex the enumeration can touch.
class Box {
public:
    Box(int dim, int radius) : dim_(dim), radius_(radius), side_(2 * radius + 1)
    {
        check_dimension(dim);
        if (dim > kMaxPackedDim) {
            throw InvalidDimension("enumeration supports d <= 8");
        }
        std::size_t n = 1;
        for (int i = 0; i < dim; ++i) {
            stride_[static_cast<std::size_t>(i)] = n;
            n *= static_cast<std::size_t>(side_);
        }
        if (n > (std::size_t{1} << 31)) {
            throw ResourceCeilingExceeded("enumeration box too large");
        }
        size_ = n;
        keys_.resize(n);
        std::vector<int> c(static_cast<std::size_t>(dim), -radius);
        for (std::size_t idx = 0; idx < n; ++idx) {
            Point p(dim);
            for (int i = 0; i < dim; ++i) {
                p.set(i, c[static_cast<std::size_t>(i)]);
            }
            keys_[idx] = pack(p);
            for (int i = 0; i < dim; ++i) {
                if (++c[static_cast<std::size_t>(i)] <= radius) {
                    break;
                }
                c[static_cast<std::size_t>(i)] = -radius;
            }
        }
    }

    int dim() const { return dim_; }
    int radius() const { return radius_; }
    std::size_t size() const { return size_; }
    std::size_t stride(int axis) const { return stride_[static_cast<std::size_t>(axis)]; }
    SiteKey key(std::uint32_t v) const { return keys_[v]; }

    std::uint32_t index(const Point& p) const
    {
        std::size_t idx = 0;
        for (int i = 0; i < dim_; ++i) {
            const int c = p[i];
            if (c < -radius_ || c > radius_) {
                throw std::out_of_range("point outside enumeration box");
            }
            idx += static_cast<std::size_t>(c + radius_) * stride_[static_cast<std::size_t>(i)];
        }
        return static_cast<std::uint32_t>(idx);
    }

    std::uint32_t origin() const { return index(Point::origin(dim_)); }

    /// Bond ids: vertex * d + axis names the bond {v, v + e_axis}.
    std::uint32_t bond_id(std::uint32_t v, int axis) const
    {
        return v * static_cast<std::uint32_t>(dim_) + static_cast<std::uint32_t>(axis);
    }
    std::uint32_t bond_tail(std::uint32_t id) const { return id / static_cast<std::uint32_t>(dim_); }
    std::uint32_t bond_head(std::uint32_t id) const
    {
        const int axis = static_cast<int>(id % static_cast<std::uint32_t>(dim_));
        return bond_tail(id) + static_cast<std::uint32_t>(stride(axis));
    }

    std::uint32_t bond_of(const Bond& b) const
    {
        const std::uint32_t lo = index(b.first());
        const std::uint32_t hi = index(b.second());
        for (int axis = 0; axis < dim_; ++axis) {
            if (lo + stride(axis) == hi) {
                return bond_id(lo, axis);
            }
        }
        throw std::logic_error("bond_of: not a lattice bond");
    }

private:
    int dim_;
    int radius_;
    int side_;
    std::array<std::size_t, kMaxDim> stride_{};
    std::size_t size_ = 0;
    std::vector<SiteKey> keys_;
};

struct BoxEdge {
    std::uint32_t a;
    std::uint32_t b;
};

/// The cluster currently held by the enumerator. Valid only during the
/// visitor call.
class ClusterView {
public:
    ClusterView(const Box& box, std::span<const BoxEdge> edges, std::span<const std::uint32_t> vertices)
        : box_(&box), edges_(edges), vertices_(vertices)
    {
    }

    int size() const { return static_cast<int>(edges_.size()); }
    int dim() const { return box_->dim(); }
    std::span<const BoxEdge> edges() const { return edges_; }
    /// Box indices of the vertices, origin first.
    std::span<const std::uint32_t> vertices() const { return vertices_; }
    SiteKey key(std::uint32_t v) const { return box_->key(v); }
    const Box& box() const { return *box_; }

    std::vector<SiteKey> vertex_keys() const
    {
        std::vector<SiteKey> out;
        out.reserve(vertices_.size());
        for (auto v : vertices_) {
            out.push_back(box_->key(v));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    ClusterGraph graph() const
    {
        std::vector<std::pair<SiteKey, SiteKey>> es;
        es.reserve(edges_.size());
        for (const auto& e : edges_) {
            es.emplace_back(box_->key(e.a), box_->key(e.b));
        }
        return ClusterGraph(es, {box_->key(box_->origin())});
    }

    Cluster to_cluster(Model model) const
    {
        std::vector<Bond> bonds;
        bonds.reserve(edges_.size());
        for (const auto& e : edges_) {
            bonds.emplace_back(unpack(box_->key(e.a), dim()), unpack(box_->key(e.b), dim()));
        }
        return Cluster(model, dim(), std::move(bonds), Point::origin(dim()));
    }

private:
    const Box* box_;
    std::span<const BoxEdge> edges_;
    std::span<const std::uint32_t> vertices_;
};

namespace detail {

inline void validate(const EnumerationSpec& spec)
{
    check_dimension(spec.dim);
    if (spec.max_bonds < 0) {
        throw std::invalid_argument("max_bonds must be >= 0");
    }
    if (spec.max_bonds > kMaxOrder) {
        throw std::invalid_argument("max_bonds must be <= " + std::to_string(kMaxOrder));
    }
    const double predicted = predicted_cluster_count(spec.dim, spec.max_bonds);
    if (predicted > spec.ceiling) {
        throw ResourceCeilingExceeded("refusing to enumerate " + std::string(to_string(spec.model)) + "s in d="
                                      + std::to_string(spec.dim) + " up to n=" + std::to_string(spec.max_bonds)
                                      + ": predicted count bound " + format_significant(Rational(predicted), 3)
                                      + " exceeds the ceiling " + format_significant(Rational(spec.ceiling), 3));
    }
    for (const auto& c : spec.constraints) {
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, PlantedVia>) {
                    if (v.s.dim() != spec.dim || v.s.l1_norm() != 1) {
                        throw std::invalid_argument("planted constraint needs a unit vector");
                    }
                } else if constexpr (std::is_same_v<T, ContainsVertex>) {
                    if (v.x.dim() != spec.dim) {
                        throw InvalidDimension("constraint point dimension mismatch");
                    }
                } else if constexpr (std::is_same_v<T, DoublyConnectedPair> || std::is_same_v<T, PathLengthAtLeast>) {
                    if (v.x.dim() != spec.dim || v.y.dim() != spec.dim) {
                        throw InvalidDimension("constraint point dimension mismatch");
                    }
                } else if constexpr (std::is_same_v<T, ExcludesBond>) {
                    if (v.bond.first().dim() != spec.dim) {
                        throw InvalidDimension("constraint bond dimension mismatch");
                    }
                }
            },
            c);
    }
}

/// Post-filter for the constraints that cannot be enforced while growing.
class ConstraintFilter {
public:
    explicit ConstraintFilter(const EnumerationSpec& spec)
    {
        for (const auto& c : spec.constraints) {
            if (std::holds_alternative<PlantedVia>(c) || std::holds_alternative<ExcludesBond>(c)) {
                continue;
            }
            checks_.push_back(c);
        }
        dim_ = spec.dim;
    }

    bool trivial() const { return checks_.empty(); }

    bool accepts(const ClusterView& view) const
    {
        if (checks_.empty()) {
            return true;
        }
        const ClusterGraph g = view.graph();
        const int origin = g.index_of(pack(Point::origin(dim_)));
        for (const auto& c : checks_) {
            const bool ok = std::visit(
                [&](const auto& v) -> bool {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, ContainsVertex>) {
                        return g.index_of(pack(v.x)) >= 0;
                    } else if constexpr (std::is_same_v<T, OriginInCycle>) {
                        return g.on_cycle(origin);
                    } else if constexpr (std::is_same_v<T, DoublyConnectedPair>) {
                        const int a = g.index_of(pack(v.x));
                        const int b = g.index_of(pack(v.y));
                        return a >= 0 && b >= 0 && g.doubly_connected(a, b);
                    } else if constexpr (std::is_same_v<T, PathLengthAtLeast>) {
                        const int a = g.index_of(pack(v.x));
                        const int b = g.index_of(pack(v.y));
                        return a >= 0 && b >= 0 && g.longest_paths_from(a)[static_cast<std::size_t>(b)] >= v.length;
                    } else {
                        return true;
                    }
                },
                c);
            if (!ok) {
                return false;
            }
        }
        return true;
    }

private:
    std::vector<Constraint> checks_;
    int dim_ = 0;
};

/// One enumeration worker. With `workers` > 1, the subtrees rooted at
/// clusters of `split_size` bonds are dealt round-robin; smaller clusters
/// are visited by worker 0 only. All workers walk the same shallow prefix,
/// so the deal is identical in every worker.
template <class Visit>
class Grower {
public:
    Grower(const EnumerationSpec& spec, const Box& box, Visit& visit, unsigned worker, unsigned workers)
        : spec_(spec), box_(box), visit_(visit), filter_(spec), worker_(worker), workers_(workers)
    {
        seen_.assign(box.size() * static_cast<std::size_t>(box.dim()), 0);
        degree_.assign(box.size(), 0);
        split_size_ = std::min(spec.max_bonds, 3);
    }

    void run()
    {
        const std::uint32_t origin = box_.origin();
        std::vector<std::uint32_t> untried;

        const PlantedVia* planted = nullptr;
        for (const auto& c : spec_.constraints) {
            if (const auto* p = std::get_if<PlantedVia>(&c)) {
                if (planted && planted->s != p->s) {
                    return; // two different planting bonds: empty
                }
                planted = p;
            }
            if (const auto* e = std::get_if<ExcludesBond>(&c)) {
                if (l1_outside(e->bond)) {
                    continue; // unreachable anyway
                }
                seen_[box_.bond_of(e->bond)] = 1;
            }
        }

        vertices_.push_back(origin);
        degree_[origin] = 1; // sentinel so the origin is always a vertex

        // Origin bonds in the order e_1..e_d, -e_1..-e_d.
        std::vector<std::uint32_t> origin_bonds;
        for (int axis = 0; axis < box_.dim(); ++axis) {
            origin_bonds.push_back(box_.bond_id(origin, axis));
        }
        for (int axis = 0; axis < box_.dim(); ++axis) {
            origin_bonds.push_back(box_.bond_id(origin - static_cast<std::uint32_t>(box_.stride(axis)), axis));
        }

        if (planted) {
            const std::uint32_t keep = box_.bond_of(Bond(Point::origin(spec_.dim), planted->s));
            for (auto b : origin_bonds) {
                if (b != keep) {
                    seen_[b] = 1;
                }
            }
            if (!seen_[keep]) {
                seen_[keep] = 1;
                untried.push_back(keep);
            }
        } else {
            if (worker_ == 0) {
                emit();
            }
            // Reverse so that popping from the back yields e_1 first.
            for (auto it = origin_bonds.rbegin(); it != origin_bonds.rend(); ++it) {
                if (!seen_[*it]) {
                    seen_[*it] = 1;
                    untried.push_back(*it);
                }
            }
        }
        if (spec_.max_bonds > 0) {
            grow(std::move(untried));
        }
    }

private:
    bool l1_outside(const Bond& b) const
    {
        return b.first().l1_norm() > box_.radius() || b.second().l1_norm() > box_.radius();
    }

    void emit()
    {
        ClusterView view(box_, edges_, vertices_);
        if (filter_.accepts(view)) {
            visit_(view);
        }
    }

    void add_vertex(std::uint32_t v)
    {
        if (degree_[v]++ == 0) {
            vertices_.push_back(v);
        }
    }

    void remove_vertex(std::uint32_t v)
    {
        if (--degree_[v] == 0) {
            vertices_.pop_back();
        }
    }

    void grow(std::vector<std::uint32_t> untried)
    {
        while (!untried.empty()) {
            const std::uint32_t b = untried.back();
            untried.pop_back();
            const std::uint32_t u = box_.bond_tail(b);
            const std::uint32_t v = box_.bond_head(b);
            if (spec_.model == Model::tree && degree_[u] > 0 && degree_[v] > 0) {
                continue; // closes a cycle; excluded from this branch on
            }
            edges_.push_back({u, v});
            add_vertex(u);
            add_vertex(v);

            const int n = static_cast<int>(edges_.size());
            bool owned = true;
            if (workers_ > 1 && n == split_size_) {
                owned = (task_counter_++ % workers_) == worker_;
            }
            if (owned) {
                if (n >= split_size_ || worker_ == 0 || workers_ == 1) {
                    emit();
                }
                if (n < spec_.max_bonds) {
                    std::vector<std::uint32_t> next = untried;
                    const std::size_t mark = fresh_.size();
                    offer_neighbours(u, next);
                    offer_neighbours(v, next);
                    grow(std::move(next));
                    for (std::size_t i = mark; i < fresh_.size(); ++i) {
                        seen_[fresh_[i]] = 0;
                    }
                    fresh_.resize(mark);
                }
            }

            remove_vertex(v);
            remove_vertex(u);
            edges_.pop_back();
        }
    }

    void offer(std::uint32_t id, std::vector<std::uint32_t>& next)
    {
        if (!seen_[id]) {
            seen_[id] = 1;
            fresh_.push_back(id);
            next.push_back(id);
        }
    }

    void offer_neighbours(std::uint32_t w, std::vector<std::uint32_t>& next)
    {
        // Pushed in reverse of the pop order e_1.., -e_1.. for readability of traces.
        for (int axis = box_.dim() - 1; axis >= 0; --axis) {
            offer(box_.bond_id(w - static_cast<std::uint32_t>(box_.stride(axis)), axis), next);
        }
        for (int axis = box_.dim() - 1; axis >= 0; --axis) {
            offer(box_.bond_id(w, axis), next);
        }
    }

    const EnumerationSpec& spec_;
    const Box& box_;
    Visit& visit_;
    ConstraintFilter filter_;
    unsigned worker_;
    unsigned workers_;
    int split_size_ = 0;
    std::uint64_t task_counter_ = 0;

    std::vector<char> seen_;
    std::vector<int> degree_;
    std::vector<BoxEdge> edges_;
    std::vector<std::uint32_t> vertices_;
    std::vector<std::uint32_t> fresh_;
};

} // namespace detail

/// Invokes `visit(const ClusterView&)` once per distinct cluster with at most
/// spec.max_bonds bonds containing the origin and satisfying the
/// constraints, in a deterministic order.
template <class Visit>
void enumerate(const EnumerationSpec& spec, Visit&& visit)
{
    detail::validate(spec);
    const Box box(spec.dim, spec.max_bonds + 1);
    detail::Grower<std::remove_reference_t<Visit>> grower(spec, box, visit, 0, 1);
    grower.run();
}

/// Parallel reduction over the enumeration. `make()` builds one accumulator
/// per worker; the accumulator is called on each cluster and the per-worker
/// results are folded in worker order with `merge(into, from)`. Results are
/// independent of the worker count whenever `merge` is commutative and
/// associative.
template <class Make, class Merge>
auto enumerate_reduce(const EnumerationSpec& spec, unsigned workers, Make make, Merge merge)
{
    detail::validate(spec);
    workers = std::max(1u, workers);
    const Box box(spec.dim, spec.max_bonds + 1);
    using Acc = decltype(make());
    std::vector<Acc> accs;
    accs.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        accs.push_back(make());
    }
    if (workers == 1) {
        detail::Grower<Acc> grower(spec, box, accs[0], 0, 1);
        grower.run();
    } else {
        std::vector<std::jthread> threads;
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                detail::Grower<Acc> grower(spec, box, accs[w], w, workers);
                grower.run();
            });
        }
    }
    for (unsigned w = 1; w < workers; ++w) {
        merge(accs[0], std::move(accs[w]));
    }
    return std::move(accs[0]);
}

// ---------------------------------------------------------------------------
// Counting

struct CountTable {
    Model model = Model::tree;
    int dim = 0;
    int max_bonds = 0;
    std::string constraints = "none";
    std::vector<BigInt> counts; // counts[n], n = 0..max_bonds

    const BigInt& operator[](int n) const { return counts.at(static_cast<std::size_t>(n)); }
};

namespace detail {

struct CountAccumulator {
    std::vector<std::uint64_t> per_size;
    void operator()(const ClusterView& v) { ++per_size[static_cast<std::size_t>(v.size())]; }
};

} // namespace detail

/// Exact per-size counts. Per-worker tallies are machine words (a run
/// cannot visit 2^64 clusters); the table itself holds big integers.
inline CountTable count(const EnumerationSpec& spec, unsigned workers = 1)
{
    const auto n = static_cast<std::size_t>(spec.max_bonds) + 1;
    auto acc = enumerate_reduce(
        spec, workers, [n] { return detail::CountAccumulator{std::vector<std::uint64_t>(n, 0)}; },
        [](detail::CountAccumulator& into, detail::CountAccumulator&& from) {
            for (std::size_t i = 0; i < into.per_size.size(); ++i) {
                into.per_size[i] += from.per_size[i];
            }
        });
    CountTable t;
    t.model = spec.model;
    t.dim = spec.dim;
    t.max_bonds = spec.max_bonds;
    t.constraints = describe(spec.constraints);
    for (auto c : acc.per_size) {
        t.counts.emplace_back(c);
    }
    return t;
}

inline CountTable count(Model model, int dim, int max_bonds, std::vector<Constraint> constraints = {},
                        unsigned workers = 1)
{
    return count(EnumerationSpec{model, dim, max_bonds, std::move(constraints)}, workers);
}

} // namespace ltla
