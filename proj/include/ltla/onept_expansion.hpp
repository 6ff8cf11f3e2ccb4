#pragma once

// Inclusion-exclusion expansion of the one-point function over tuples of
// planted clusters: the interaction V_ij, the terms Gamma^(i) and their
// splits by label-set size, the Z quantities, and the exact identities
// relating them.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ltla/check.hpp"
#include "ltla/cluster.hpp"
#include "ltla/enumerate.hpp"
#include "ltla/generating.hpp"
#include "ltla/series.hpp"

namespace ltla {

/// -1 if the two clusters share a vertex other than the origin, else 0.
inline int V(const Cluster& a, const Cluster& b)
{
    const Point o = Point::origin(a.dim());
    for (const Point& p : a.vertices()) {
        if (p != o && b.contains(p)) {
            return -1;
        }
    }
    return 0;
}

/// Index pairs (i, j), 1 <= i < j <= m.
using LabelPair = std::pair<int, int>;

/// A_ij(m): pairs lexicographically larger than (i, j).
inline std::vector<LabelPair> lex_successors(int i, int j, int m)
{
    std::vector<LabelPair> out;
    for (int l = j + 1; l <= m; ++l) {
        out.emplace_back(i, l);
    }
    for (int k = i + 1; k <= m; ++k) {
        for (int l = k + 1; l <= m; ++l) {
            out.emplace_back(k, l);
        }
    }
    return out;
}

inline std::vector<LabelPair> all_label_pairs(int m)
{
    std::vector<LabelPair> out;
    for (int i = 1; i <= m; ++i) {
        for (int j = i + 1; j <= m; ++j) {
            out.emplace_back(i, j);
        }
    }
    return out;
}

/// Bit for the pair (i, j) (1-based labels) in an intersection mask. The
/// encoding is colexicographic so that it does not depend on m.
inline int pair_bit(int i, int j) { return (j - 1) * (j - 2) / 2 + (i - 1); }

/// Values of the J terms for one tuple of clusters, given which pairs
/// intersect. Indexed by label-set cardinality where the split is needed.
struct JValues {
    long long product = 0; // prod (1 + V_ij)
    long long j1 = 0;
    std::array<long long, 9> j2{}; // by |{i,j,k,l}|
    std::array<long long, 9> j3{}; // by |{i,j,k,l,p,q}|
    long long j4 = 0;              // tilde J^(4), including I_rs

    long long j2_total() const
    {
        long long s = 0;
        for (auto v : j2) {
            s += v;
        }
        return s;
    }
    long long j3_total() const
    {
        long long s = 0;
        for (auto v : j3) {
            s += v;
        }
        return s;
    }
};

/// Literal evaluation of J_m^(0..3) and tilde J_m^(4) from the definitions,
/// with V_ij = -1 exactly on the pairs set in `mask`.
inline JValues evaluate_J(int m, std::uint64_t mask)
{
    auto Vf = [mask](const LabelPair& p) -> long long {
        return (mask >> pair_bit(p.first, p.second)) & 1U ? -1 : 0;
    };
    auto labels = [](std::initializer_list<LabelPair> ps) {
        std::set<int> s;
        for (const auto& p : ps) {
            s.insert(p.first);
            s.insert(p.second);
        }
        return static_cast<std::size_t>(s.size());
    };
    JValues J;
    J.product = 1;
    for (const auto& p : all_label_pairs(m)) {
        J.product *= 1 + Vf(p);
    }
    for (const auto& a : all_label_pairs(m)) {
        const long long va = Vf(a);
        J.j1 += -va;
        if (va == 0) {
            continue;
        }
        for (const auto& b : lex_successors(a.first, a.second, m)) {
            const long long vb = Vf(b);
            if (vb == 0) {
                continue;
            }
            J.j2[labels({a, b})] += va * vb;
            for (const auto& c : lex_successors(b.first, b.second, m)) {
                const long long vc = Vf(c);
                if (vc == 0) {
                    continue;
                }
                J.j3[labels({a, b, c})] += -va * vb * vc;
                for (const auto& e : lex_successors(c.first, c.second, m)) {
                    const long long ve = Vf(e);
                    if (ve == 0) {
                        continue;
                    }
                    long long I = 1;
                    for (const auto& u : lex_successors(e.first, e.second, m)) {
                        I *= 1 + Vf(u);
                    }
                    J.j4 += va * vb * vc * ve * I;
                }
            }
        }
    }
    return J;
}

/// Checks prod_{a<=n}(1 + x_a) = 1 + sum x_a + sum x_a x_b + sum x_a x_b x_c
/// + sum x_a x_b x_c x_d prod_{e>d}(1 + x_e) at every x in {-1,0}^n. Both
/// sides are multilinear, so agreement on this grid is a polynomial identity.
inline bool verify_prodxi3(int n)
{
    for (std::uint32_t bits = 0; bits < (1U << n); ++bits) {
        std::vector<long long> x(static_cast<std::size_t>(n) + 1, 0);
        for (int a = 1; a <= n; ++a) {
            x[static_cast<std::size_t>(a)] = (bits >> (a - 1)) & 1U ? -1 : 0;
        }
        long long lhs = 1;
        for (int a = 1; a <= n; ++a) {
            lhs *= 1 + x[static_cast<std::size_t>(a)];
        }
        long long rhs = 1;
        for (int a = 1; a <= n; ++a) {
            rhs += x[static_cast<std::size_t>(a)];
            for (int b = a + 1; b <= n; ++b) {
                rhs += x[static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(b)];
                for (int c = b + 1; c <= n; ++c) {
                    rhs += x[static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(b)]
                           * x[static_cast<std::size_t>(c)];
                    for (int d = c + 1; d <= n; ++d) {
                        long long tail = 1;
                        for (int e = d + 1; e <= n; ++e) {
                            tail *= 1 + x[static_cast<std::size_t>(e)];
                        }
                        rhs += x[static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(b)]
                               * x[static_cast<std::size_t>(c)] * x[static_cast<std::size_t>(d)] * tail;
                    }
                }
            }
        }
        if (lhs != rhs) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Tuple histogram

/// A planted cluster: its bond count, the neighbour s it is planted via,
/// and its vertices other than the origin (sorted).
struct PlantedCluster {
    int size = 0;
    int s_index = 0;
    std::vector<SiteKey> vertices;
};

inline std::vector<PlantedCluster> planted_clusters(Model model, int dim, int order)
{
    std::vector<PlantedCluster> out;
    const auto E = unit_vectors(dim);
    const SiteKey origin = pack(Point::origin(dim));
    for (std::size_t si = 0; si < E.size(); ++si) {
        enumerate(EnumerationSpec{model, dim, order, {PlantedVia{E[si]}}}, [&](const ClusterView& v) {
            PlantedCluster p;
            p.size = v.size();
            p.s_index = static_cast<int>(si);
            for (auto k : v.vertex_keys()) {
                if (k != origin) {
                    p.vertices.push_back(k);
                }
            }
            out.push_back(std::move(p));
        });
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const PlantedCluster& a, const PlantedCluster& b) { return a.size < b.size; });
    return out;
}

/// Number of ordered tuples (S_1, ..., S_m) of planted clusters by
/// (m, intersection mask, total bonds).
struct TupleHistogram {
    int order = 0;
    std::map<std::pair<int, std::uint64_t>, std::vector<std::uint64_t>> counts;
    std::uint64_t tuples = 0;
};

namespace detail {

class TupleWalker {
public:
    TupleWalker(const std::vector<PlantedCluster>& planted, int order, unsigned worker, unsigned workers)
        : planted_(planted), order_(order), worker_(worker), workers_(workers)
    {
        stack_.reserve(static_cast<std::size_t>(order));
    }

    void run()
    {
        if (worker_ == 0) {
            record(0, 0, 0);
        }
        for (std::size_t p = 0; p < planted_.size(); ++p) {
            if (planted_[p].size > order_) {
                break;
            }
            if (p % workers_ != worker_) {
                continue;
            }
            stack_.push_back(&planted_[p]);
            extend(1, 0, planted_[p].size);
            stack_.pop_back();
        }
    }

    std::map<std::pair<int, std::uint64_t>, std::vector<std::uint64_t>>& counts() { return counts_; }
    std::uint64_t tuples() const { return tuples_; }

private:
    void record(int m, std::uint64_t mask, int total)
    {
        auto& row = counts_[{m, mask}];
        if (row.empty()) {
            row.assign(static_cast<std::size_t>(order_) + 1, 0);
        }
        ++row[static_cast<std::size_t>(total)];
        ++tuples_;
    }

    void extend(int m, std::uint64_t mask, int total)
    {
        record(m, mask, total);
        const int budget = order_ - total;
        for (const auto& p : planted_) {
            if (p.size > budget) {
                break;
            }
            std::uint64_t next = mask;
            for (int i = 0; i < m; ++i) {
                if (keys_intersect(stack_[static_cast<std::size_t>(i)]->vertices, p.vertices)) {
                    next |= std::uint64_t{1} << pair_bit(i + 1, m + 1);
                }
            }
            stack_.push_back(&p);
            extend(m + 1, next, total + p.size);
            stack_.pop_back();
        }
    }

    const std::vector<PlantedCluster>& planted_;
    int order_;
    unsigned worker_;
    unsigned workers_;
    std::vector<const PlantedCluster*> stack_;
    std::map<std::pair<int, std::uint64_t>, std::vector<std::uint64_t>> counts_;
    std::uint64_t tuples_ = 0;
};

} // namespace detail

/// Largest order for which the pair masks fit in 64 bits.
inline constexpr int kMaxTupleOrder = 11;

inline TupleHistogram tuple_histogram(const std::vector<PlantedCluster>& planted, int order, unsigned workers = 1)
{
    if (order < 0 || order > kMaxTupleOrder) {
        throw std::invalid_argument("tuple order must be in [0, " + std::to_string(kMaxTupleOrder) + "]");
    }
    workers = std::max(1u, workers);
    std::vector<detail::TupleWalker> walkers;
    for (unsigned w = 0; w < workers; ++w) {
        walkers.emplace_back(planted, order, w, workers);
    }
    if (workers == 1) {
        walkers[0].run();
    } else {
        std::vector<std::jthread> threads;
        for (auto& w : walkers) {
            threads.emplace_back([&w] { w.run(); });
        }
    }
    TupleHistogram h;
    h.order = order;
    for (auto& w : walkers) {
        h.tuples += w.tuples();
        for (auto& [key, row] : w.counts()) {
            auto& dst = h.counts[key];
            if (dst.empty()) {
                dst = row;
                continue;
            }
            for (std::size_t i = 0; i < row.size(); ++i) {
                dst[i] += row[i];
            }
        }
    }
    return h;
}

// ---------------------------------------------------------------------------
// Gamma and Z

struct OneptExpansion {
    Model model = Model::tree;
    int dim = 0;
    int order = 0;
    std::uint64_t tuples = 0;

    RSeries g;
    RSeries g_circ;
    RSeries r;
    RSeries gamma0;     // from the tuple sum with weight 1
    RSeries gamma0_exp; // exp(2d r)
    RSeries gamma1;
    RSeries gamma2;
    RSeries gamma3;
    RSeries gamma4_tilde;
    std::map<std::pair<int, int>, RSeries> split; // (2,3),(2,4),(3,3)..(3,6)
    RSeries Z1, Z2, Z3, Zp, Zpp;
    RSeries product_sum; // tuple sum of prod(1 + V_ij), i.e. g - g_circ
    bool vanishes_beyond_2d = true;
    bool J_decomposition_exact = true;
};

inline OneptExpansion onept_expansion(Model model, int dim, int order, unsigned workers = 1)
{
    OneptExpansion X;
    X.model = model;
    X.dim = dim;
    X.order = order;
    const auto planted = planted_clusters(model, dim, order);
    const TupleHistogram h = tuple_histogram(planted, order, workers);
    X.tuples = h.tuples;

    const RSeries zero(order);
    X.gamma0 = X.gamma1 = X.gamma2 = X.gamma3 = X.gamma4_tilde = zero;
    X.Z1 = X.Z2 = X.Z3 = X.Zp = X.Zpp = X.product_sum = zero;
    for (auto key : {std::pair{2, 3}, std::pair{2, 4}, std::pair{3, 3}, std::pair{3, 4}, std::pair{3, 5},
                     std::pair{3, 6}}) {
        X.split[key] = zero;
    }

    auto has = [](std::uint64_t mask, int i, int j) { return ((mask >> pair_bit(i, j)) & 1U) != 0; };
    for (const auto& [key, row] : h.counts) {
        const auto [m, mask] = key;
        const RSeries tuples = series_from_counts(row, order);
        const Rational inv_fact = Rational(1) / factorial(static_cast<unsigned>(m));
        const JValues J = evaluate_J(m, mask);
        if (J.product != 1 - J.j1 + J.j2_total() - J.j3_total() + J.j4) {
            X.J_decomposition_exact = false;
        }
        const RSeries w = tuples * inv_fact;
        X.gamma0 += w;
        X.product_sum += w * Rational(J.product);
        X.gamma1 += w * Rational(J.j1);
        X.gamma2 += w * Rational(J.j2_total());
        X.gamma3 += w * Rational(J.j3_total());
        X.gamma4_tilde += w * Rational(J.j4);
        for (int n = 3; n <= 4; ++n) {
            X.split[{2, n}] += w * Rational(J.j2[static_cast<std::size_t>(n)]);
        }
        for (int n = 3; n <= 6; ++n) {
            X.split[{3, n}] += w * Rational(J.j3[static_cast<std::size_t>(n)]);
        }
        if (m > 2 * dim && mask == 0 && !tuples.is_zero()) {
            X.vanishes_beyond_2d = false;
        }
        if (m == 2 && has(mask, 1, 2)) {
            X.Z1 += tuples;
        }
        if (m == 3 && has(mask, 1, 2) && has(mask, 1, 3)) {
            X.Z2 += tuples;
            if (has(mask, 2, 3)) {
                X.Z3 += tuples;
            }
        }
        if (m == 4 && has(mask, 1, 2) && has(mask, 1, 3)) {
            if (has(mask, 1, 4)) {
                X.Zp += tuples;
            }
            if (has(mask, 2, 4)) {
                X.Zpp += tuples;
            }
        }
    }

    X.r = RSeries(order);
    for (const auto& p : planted) {
        if (p.s_index == 0) {
            X.r[p.size] += 1;
        }
    }
    X.gamma0_exp = (X.r * Rational(2 * dim)).exp();
    X.g = one_point(model, dim, order, workers);
    X.g_circ = g_circ(model, dim, order, workers);
    return X;
}

inline IdentityCheck series_identity(std::string name, const RSeries& lhs, const RSeries& rhs)
{
    IdentityCheck c;
    c.name = std::move(name);
    c.first_bad_order = first_mismatch(lhs, rhs);
    c.holds = c.first_bad_order < 0;
    if (!c.holds) {
        const int n = c.first_bad_order;
        c.detail = "[z^" + std::to_string(n) + "] lhs=" + to_short_string(lhs[n]) + " rhs=" + to_short_string(rhs[n]);
    }
    return c;
}

inline IdentityCheck series_inequality(std::string name, const RSeries& lhs, const RSeries& rhs)
{
    IdentityCheck c;
    c.name = std::move(name);
    c.first_bad_order = first_exceedance(lhs, rhs);
    c.holds = c.first_bad_order < 0;
    if (!c.holds) {
        const int n = c.first_bad_order;
        c.detail = "[z^" + std::to_string(n) + "] lhs=" + to_short_string(lhs[n]) + " > rhs=" + to_short_string(rhs[n]);
    }
    return c;
}

inline IdentityCheck flag_check(std::string name, bool holds, std::string detail = {})
{
    return IdentityCheck{std::move(name), holds, -1, holds ? std::string{} : std::move(detail)};
}

/// g = Gamma0 - Gamma1 + Gamma2 - Gamma3 + tildeGamma4 + g_circ.
inline IdentityCheck gexp_check(const OneptExpansion& X)
{
    return series_identity("g = Gamma0 - Gamma1 + Gamma2 - Gamma3 + tildeGamma4 + g_circ", X.g,
                           X.gamma0 - X.gamma1 + X.gamma2 - X.gamma3 + X.gamma4_tilde + X.g_circ);
}

/// The four identities expressing Gamma^(1), Gamma^(2,3), Gamma^(2,4) and
/// Gamma^(3,3) through Gamma^(0) and the Z quantities.
inline std::vector<IdentityCheck> z_identity_checks(const OneptExpansion& X)
{
    const RSeries& G0 = X.gamma0;
    return {
        series_identity("Gamma1 = (1/2!) Gamma0 Z1", X.gamma1, G0 * X.Z1 * Rational(1, 2)),
        series_identity("Gamma(2,3) = (3/3!) Gamma0 Z2", X.split.at({2, 3}), G0 * X.Z2 * Rational(3, 6)),
        series_identity("Gamma(2,4) = (3/4!) Gamma0 Z1^2", X.split.at({2, 4}), G0 * X.Z1 * X.Z1 * Rational(3, 24)),
        series_identity("Gamma(3,3) = (1/3!) Gamma0 Z3", X.split.at({3, 3}), G0 * X.Z3 * Rational(1, 6)),
    };
}

inline std::vector<IdentityCheck> onept_checks(const OneptExpansion& X)
{
    std::vector<IdentityCheck> out;
    out.push_back(series_identity("Gamma0 = exp(2d r)", X.gamma0, X.gamma0_exp));
    out.push_back(gexp_check(X));
    for (auto& c : z_identity_checks(X)) {
        out.push_back(std::move(c));
    }
    out.push_back(series_identity("Gamma2 = Gamma(2,3) + Gamma(2,4)", X.gamma2,
                                  X.split.at({2, 3}) + X.split.at({2, 4})));
    out.push_back(series_identity("Gamma3 = sum_n Gamma(3,n)", X.gamma3,
                                  X.split.at({3, 3}) + X.split.at({3, 4}) + X.split.at({3, 5}) + X.split.at({3, 6})));
    out.push_back(series_identity("Gamma(3,4) = Gamma0 (4/4! Z' + 12/4! Z'')", X.split.at({3, 4}),
                                  X.gamma0 * (X.Zp * Rational(4, 24) + X.Zpp * Rational(12, 24))));
    out.push_back(series_inequality("Z3 <= Z2", X.Z3, X.Z2));
    out.push_back(series_identity("tuple sum of prod(1+V) = g - g_circ", X.product_sum, X.g - X.g_circ));
    out.push_back(flag_check("tuple terms vanish for m > 2d", X.vanishes_beyond_2d));
    out.push_back(flag_check("prod(1+V) = J0 - J1 + J2 - J3 + tildeJ4 on every tuple", X.J_decomposition_exact));
    bool prodxi = true;
    for (int n = 0; n <= 6; ++n) {
        prodxi = prodxi && verify_prodxi3(n);
    }
    out.push_back(flag_check("product expansion to third order, n <= 6", prodxi));
    return out;
}

} // namespace ltla
