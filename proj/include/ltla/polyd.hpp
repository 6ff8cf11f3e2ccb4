#pragma once

// Cluster counts as exact polynomials in the dimension d, built from
// proper counts (clusters using every coordinate direction).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltla/enumerate.hpp"
#include "ltla/rational.hpp"

namespace ltla {

/// Polynomial in d with rational coefficients; coeffs[i] multiplies d^i.
class DPoly {
public:
    DPoly() = default;
    explicit DPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static DPoly constant(const Rational& a) { return DPoly({a}); }
    static DPoly d() { return DPoly({Rational(0), Rational(1)}); }

    /// binom(d, k) = d (d-1) ... (d-k+1) / k!
    static DPoly binomial(int k)
    {
        DPoly p = constant(1);
        for (int i = 0; i < k; ++i) {
            p = p * DPoly({Rational(-i), Rational(1)});
        }
        return p * (Rational(1) / factorial(static_cast<unsigned>(k)));
    }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Rational coeff(int i) const
    {
        return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : Rational(0);
    }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    Rational operator()(const Rational& x) const
    {
        Rational r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            r = r * x + *it;
        }
        return r;
    }

    friend DPoly operator+(const DPoly& a, const DPoly& b)
    {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        }
        return DPoly(std::move(r));
    }
    friend DPoly operator-(const DPoly& a, const DPoly& b) { return a + b * Rational(-1); }
    friend DPoly operator*(const DPoly& a, const Rational& s)
    {
        std::vector<Rational> r = a.c_;
        for (auto& x : r) {
            x *= s;
        }
        return DPoly(std::move(r));
    }
    friend DPoly operator*(const DPoly& a, const DPoly& b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                r[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return DPoly(std::move(r));
    }
    friend bool operator==(const DPoly& a, const DPoly& b) { return a.c_ == b.c_; }

    /// e.g. "2/3 d^3 - d + 4"
    std::string to_string() const
    {
        if (c_.empty()) {
            return "0";
        }
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            const Rational& a = c_[static_cast<std::size_t>(i)];
            if (a == 0) {
                continue;
            }
            const bool neg = a < 0;
            const Rational mag = neg ? Rational(-a) : a;
            if (out.empty()) {
                out += neg ? "-" : "";
            } else {
                out += neg ? " - " : " + ";
            }
            const bool unit = mag == 1 && i > 0;
            if (!unit) {
                out += to_short_string(mag);
            }
            if (i > 0) {
                out += unit ? "d" : " d";
                if (i > 1) {
                    out += "^" + std::to_string(i);
                }
            }
        }
        return out;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0) {
            c_.pop_back();
        }
    }

    std::vector<Rational> c_;
};

/// P[n][k]: n-bond clusters containing the origin in Z^k whose bonds use
/// all k coordinate directions.
struct ProperTable {
    Model model = Model::tree;
    int max_bonds = 0;
    std::vector<std::vector<BigInt>> P;

    const BigInt& at(int n, int k) const { return P.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(k)); }
};

inline constexpr int kDefaultProperBonds = 5;

namespace detail {

struct ProperAccumulator {
    int dim;
    std::vector<std::size_t> strides;
    std::vector<std::uint64_t> per_size;

    void operator()(const ClusterView& v)
    {
        unsigned used = 0;
        for (const auto& e : v.edges()) {
            const std::size_t diff = e.a > e.b ? e.a - e.b : e.b - e.a;
            for (int axis = 0; axis < dim; ++axis) {
                if (strides[static_cast<std::size_t>(axis)] == diff) {
                    used |= 1U << axis;
                }
            }
        }
        if (used == (1U << dim) - 1) {
            ++per_size[static_cast<std::size_t>(v.size())];
        }
    }
};

} // namespace detail

inline ProperTable proper_counts(Model model, int max_bonds, unsigned workers = 1)
{
    if (max_bonds < 0) {
        throw std::invalid_argument("proper_counts: negative bond count");
    }
    if (max_bonds > kMaxPackedDim) {
        throw ResourceCeilingExceeded("proper_counts: n_max above " + std::to_string(kMaxPackedDim));
    }
    ProperTable t;
    t.model = model;
    t.max_bonds = max_bonds;
    t.P.assign(static_cast<std::size_t>(max_bonds) + 1,
               std::vector<BigInt>(static_cast<std::size_t>(max_bonds) + 1, BigInt(0)));
    t.P[0][0] = 1;
    for (int k = 1; k <= max_bonds; ++k) {
        const EnumerationSpec spec{model, k, max_bonds, {}};
        const Box box(k, max_bonds + 1);
        std::vector<std::size_t> strides;
        for (int axis = 0; axis < k; ++axis) {
            strides.push_back(box.stride(axis));
        }
        const auto n = static_cast<std::size_t>(max_bonds) + 1;
        auto acc = enumerate_reduce(
            spec, workers, [&] { return detail::ProperAccumulator{k, strides, std::vector<std::uint64_t>(n, 0)}; },
            [](detail::ProperAccumulator& into, detail::ProperAccumulator&& from) {
                for (std::size_t i = 0; i < into.per_size.size(); ++i) {
                    into.per_size[i] += from.per_size[i];
                }
            });
        for (std::size_t i = 0; i < n; ++i) {
            t.P[i][static_cast<std::size_t>(k)] = BigInt(acc.per_size[i]);
        }
    }
    return t;
}

/// count_n(d) = sum_k binom(d, k) P[n][k].
inline DPoly poly_from_proper(const ProperTable& t, int n)
{
    if (n < 0 || n > t.max_bonds) {
        throw std::out_of_range("poly_from_proper: table does not cover n = " + std::to_string(n));
    }
    DPoly p;
    for (int k = 0; k <= n; ++k) {
        const BigInt& c = t.at(n, k);
        if (c != 0) {
            p = p + DPoly::binomial(k) * Rational(c);
        }
    }
    return p;
}

/// Lagrange interpolation through (x_i, y_i).
inline DPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys)
{
    if (xs.size() != ys.size()) {
        throw std::invalid_argument("interpolate: size mismatch");
    }
    DPoly p;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        DPoly basis = DPoly::constant(1);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j != i) {
                basis = basis * DPoly({-xs[j], Rational(1)}) * (Rational(1) / (xs[i] - xs[j]));
            }
        }
        p = p + basis * ys[i];
    }
    return p;
}

} // namespace ltla
