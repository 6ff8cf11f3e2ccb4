#pragma once

// Finitely supported functions Z^d -> Series, and their convolution.

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include "ltla/lattice.hpp"
#include "ltla/series.hpp"

namespace ltla {

/// Point -> truncated series. Only nonzero entries are stored; lookups
/// outside the support return the zero series.
class SiteSeries {
public:
    using Map = std::map<Point, RSeries>;

    SiteSeries(int dim, int order) : dim_(dim), order_(order) { check_dimension(dim); }

    int dim() const { return dim_; }
    int order() const { return order_; }
    const Map& entries() const { return entries_; }
    std::size_t support_size() const { return entries_.size(); }

    RSeries at(const Point& x) const
    {
        auto it = entries_.find(x);
        return it == entries_.end() ? RSeries(order_) : it->second;
    }

    /// Adds s to the entry at x. s must be known at least to this order.
    void add(const Point& x, const RSeries& s)
    {
        check_point(x);
        if (s.order() < order_) {
            throw std::invalid_argument("site series: entry truncated below the site series order");
        }
        auto it = entries_.find(x);
        if (it == entries_.end()) {
            RSeries t = s.truncated(order_);
            if (!t.is_zero()) {
                entries_.emplace(x, std::move(t));
            }
            return;
        }
        for (int i = 0; i <= order_; ++i) {
            it->second[i] += s[i];
        }
        if (it->second.is_zero()) {
            entries_.erase(it);
        }
    }

    void add_coeff(const Point& x, int n, const Rational& c)
    {
        if (n > order_ || c == 0) {
            return;
        }
        add(x, RSeries::monomial(order_, n, c));
    }

    /// Sum over the support (the "hat" at zero momentum).
    RSeries total() const
    {
        RSeries s(order_);
        for (const auto& [x, v] : entries_) {
            (void)x;
            s += v;
        }
        return s;
    }

    SiteSeries& operator+=(const SiteSeries& o)
    {
        check_compatible(o);
        for (const auto& [x, v] : o.entries_) {
            add(x, v);
        }
        return *this;
    }

    SiteSeries& operator-=(const SiteSeries& o)
    {
        check_compatible(o);
        for (const auto& [x, v] : o.entries_) {
            add(x, -v);
        }
        return *this;
    }

    friend SiteSeries operator+(SiteSeries a, const SiteSeries& b) { return a += b; }
    friend SiteSeries operator-(SiteSeries a, const SiteSeries& b) { return a -= b; }

    /// Entrywise multiplication by a series in z.
    SiteSeries times(const RSeries& f) const
    {
        SiteSeries r(dim_, std::min(order_, f.order()));
        for (const auto& [x, v] : entries_) {
            r.add(x, v * f);
        }
        return r;
    }

    SiteSeries times_z(int k = 1) const
    {
        SiteSeries r(dim_, order_);
        for (const auto& [x, v] : entries_) {
            r.add(x, v.times_z(k).truncated(order_));
        }
        return r;
    }

    SiteSeries truncated(int order) const
    {
        SiteSeries r(dim_, std::min(order, order_));
        for (const auto& [x, v] : entries_) {
            r.add(x, v.truncated(r.order_));
        }
        return r;
    }

    /// Largest L1 norm in the support (-1 if empty).
    int radius() const
    {
        int r = -1;
        for (const auto& [x, v] : entries_) {
            (void)v;
            r = std::max(r, x.l1_norm());
        }
        return r;
    }

    friend bool operator==(const SiteSeries& a, const SiteSeries& b)
    {
        return a.dim_ == b.dim_ && a.order_ == b.order_ && a.entries_ == b.entries_;
    }

private:
    void check_point(const Point& x) const
    {
        if (x.dim() != dim_) {
            throw InvalidDimension("site series: point dimension mismatch");
        }
    }

    void check_compatible(const SiteSeries& o) const
    {
        if (o.dim_ != dim_) {
            throw InvalidDimension("site series: dimension mismatch");
        }
    }

    int dim_;
    int order_;
    Map entries_;
};

/// (F*G)(x) = sum_y F(y) G(x-y), truncated at the smaller order.
inline SiteSeries convolve(const SiteSeries& f, const SiteSeries& g)
{
    if (f.dim() != g.dim()) {
        throw InvalidDimension("convolve: dimension mismatch");
    }
    const int order = std::min(f.order(), g.order());
    std::map<Point, RSeries> acc;
    for (const auto& [y, fy] : f.entries()) {
        const int vf = fy.valuation();
        if (vf > order) {
            continue;
        }
        for (const auto& [w, gw] : g.entries()) {
            if (vf + gw.valuation() > order) {
                continue;
            }
            const Point x = y + w;
            auto it = acc.find(x);
            if (it == acc.end()) {
                it = acc.emplace(x, RSeries(order)).first;
            }
            for (int i = vf; i <= order; ++i) {
                if (fy[i] == 0) {
                    continue;
                }
                for (int j = 0; i + j <= order; ++j) {
                    if (gw[j] != 0) {
                        it->second[i + j] += fy[i] * gw[j];
                    }
                }
            }
        }
    }
    SiteSeries out(f.dim(), order);
    for (auto& [x, s] : acc) {
        out.add(x, s);
    }
    return out;
}

/// The point mass delta_0 (series 1 at the origin).
inline SiteSeries delta(int dim, int order)
{
    SiteSeries s(dim, order);
    s.add(Point::origin(dim), RSeries::constant(order, 1));
    return s;
}

/// One-step transition kernel of simple random walk: 1/(2d) on unit vectors.
inline SiteSeries step_kernel(int dim, int order)
{
    SiteSeries s(dim, order);
    for (const Point& e : unit_vectors(dim)) {
        s.add(e, RSeries::constant(order, Rational(1, 2 * dim)));
    }
    return s;
}

/// F^{*k}; F^{*0} = delta_0.
inline SiteSeries convolution_power(const SiteSeries& f, int k)
{
    SiteSeries r = delta(f.dim(), f.order());
    for (int i = 0; i < k; ++i) {
        r = convolve(r, f);
    }
    return r;
}

/// First (point, coefficient) where a > b, if any.
struct SiteExceedance {
    Point x;
    int n = -1;
};

inline std::optional<SiteExceedance> first_exceedance(const SiteSeries& a, const SiteSeries& b)
{
    std::map<Point, int> keys;
    for (const auto& [x, v] : a.entries()) {
        (void)v;
        keys[x];
    }
    for (const auto& [x, v] : b.entries()) {
        (void)v;
        keys[x];
    }
    for (const auto& [x, unused] : keys) {
        (void)unused;
        const int n = first_exceedance(a.at(x), b.at(x));
        if (n >= 0) {
            return SiteExceedance{x, n};
        }
    }
    return std::nullopt;
}

inline std::optional<SiteExceedance> first_mismatch(const SiteSeries& a, const SiteSeries& b)
{
    std::map<Point, int> keys;
    for (const auto& [x, v] : a.entries()) {
        (void)v;
        keys[x];
    }
    for (const auto& [x, v] : b.entries()) {
        (void)v;
        keys[x];
    }
    for (const auto& [x, unused] : keys) {
        (void)unused;
        const int n = first_mismatch(a.at(x), b.at(x));
        if (n >= 0) {
            return SiteExceedance{x, n};
        }
    }
    return std::nullopt;
}

} // namespace ltla
