#pragma once

// 1/d expansion tables for z_c and g_c in Q[e^-1], and the ratio report
// comparing count ratios with the three-term prediction.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltla/check.hpp"
#include "ltla/enumerate.hpp"
#include "ltla/rational.hpp"

namespace ltla {

/// a0 + a1 e^-1 + a2 e^-2. Products reaching e^-3 are refused.
struct EulerRational {
    Rational a0 = 0;
    Rational a1 = 0;
    Rational a2 = 0;

    EulerRational() = default;
    EulerRational(Rational c0, Rational c1 = 0, Rational c2 = 0) : a0(std::move(c0)), a1(std::move(c1)), a2(std::move(c2)) {}

    static EulerRational inv_e() { return {0, 1, 0}; }

    int degree() const { return a2 != 0 ? 2 : a1 != 0 ? 1 : 0; }

    friend EulerRational operator+(const EulerRational& x, const EulerRational& y)
    {
        return {x.a0 + y.a0, x.a1 + y.a1, x.a2 + y.a2};
    }
    friend EulerRational operator-(const EulerRational& x, const EulerRational& y)
    {
        return {x.a0 - y.a0, x.a1 - y.a1, x.a2 - y.a2};
    }
    friend EulerRational operator*(const EulerRational& x, const Rational& s) { return {x.a0 * s, x.a1 * s, x.a2 * s}; }
    friend EulerRational operator*(const EulerRational& x, const EulerRational& y)
    {
        if ((x.a2 != 0 && (y.a1 != 0 || y.a2 != 0)) || (y.a2 != 0 && x.a1 != 0)) {
            throw std::domain_error("EulerRational product exceeds e^-2");
        }
        return {x.a0 * y.a0, x.a0 * y.a1 + x.a1 * y.a0, x.a0 * y.a2 + x.a1 * y.a1 + x.a2 * y.a0};
    }
    friend bool operator==(const EulerRational&, const EulerRational&) = default;

    double to_double() const
    {
        const double ie = std::exp(-1.0);
        return a0.convert_to<double>() + a1.convert_to<double>() * ie + a2.convert_to<double>() * ie * ie;
    }

    /// "115/24 - 1/2 e^-1"
    std::string to_string() const
    {
        std::string out;
        auto term = [&](const Rational& c, const char* unit) {
            if (c == 0) {
                return;
            }
            const bool neg = c < 0;
            const Rational mag = neg ? Rational(-c) : c;
            if (out.empty()) {
                out += neg ? "-" : "";
            } else {
                out += neg ? " - " : " + ";
            }
            if (*unit == '\0') {
                out += to_short_string(mag);
            } else {
                out += (mag == 1 ? std::string() : to_short_string(mag) + " ") + unit;
            }
        };
        term(a0, "");
        term(a1, "e^-1");
        term(a2, "e^-2");
        return out.empty() ? "0" : out;
    }
};

inline std::string format_double(double x, int digits = 15) { return format_significant(Rational(x), digits); }

/// e^p * sum_k c[k] (2d)^-(k + shift).
struct EExpansion {
    int e_power = 0;
    int shift = 0;
    std::vector<EulerRational> c;

    /// Coefficient of (2d)^-k inside the bracket.
    EulerRational at(int k) const
    {
        const int i = k - shift;
        return i >= 0 && i < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(i)] : EulerRational{};
    }

    double value(int dim, int terms) const
    {
        double s = 0;
        const double eps = 1.0 / (2.0 * dim);
        for (int i = 0; i < terms && i < static_cast<int>(c.size()); ++i) {
            s += c[static_cast<std::size_t>(i)].to_double() * std::pow(eps, i + shift);
        }
        return s * std::exp(static_cast<double>(e_power));
    }
};

inline constexpr int kMaxExpansionOrder = 6;
inline constexpr int kRigorousOrder = 3;

/// z_c = e^-1 [ (2d)^-1 + 3/2 (2d)^-2 + ... ] to (2d)^-6; orders above 3 are
/// the physics-literature predictions without rigorous error estimate.
inline EExpansion zc_expansion(Model model)
{
    const Rational a = model == Model::animal ? 1 : 0;
    return EExpansion{-1, 1,
                      {EulerRational(1), EulerRational(Rational(3, 2)),
                       EulerRational(Rational(115, 24), -a / 2), EulerRational(Rational(309, 16), -2 * a),
                       EulerRational(Rational(619103, 5760), -a * Rational(113, 12)),
                       EulerRational(Rational(543967, 768), -a * Rational(395, 12), -a * Rational(55, 24))}};
}

/// g_c = e [ 1 + 3/2 (2d)^-1 + (263/24 - 1_a e^-1) (2d)^-2 ].
inline EExpansion gc_expansion(Model model)
{
    const Rational a = model == Model::animal ? 1 : 0;
    return EExpansion{1, 0, {EulerRational(1), EulerRational(Rational(3, 2)), EulerRational(Rational(263, 24), -a)}};
}

/// Pi_hat at z_c = e [ -3 (2d)^-1 - (27/2 - 1_a 3/2 e^-1) (2d)^-2 ].
inline EExpansion pihat_expansion(Model model)
{
    const Rational a = model == Model::animal ? 1 : 0;
    return EExpansion{1, 1, {EulerRational(-3), EulerRational(Rational(-27, 2), a * Rational(3, 2))}};
}

/// z_c = 1 / (2d (g_c + Pi_hat)): inverts the bracket of g_c + Pi_hat as a
/// power series in 1/(2d) and returns z_c to (2d)^-(terms).
inline EExpansion zc_from_gc_and_pihat(Model model, int terms = kRigorousOrder)
{
    const EExpansion g = gc_expansion(model);
    const EExpansion p = pihat_expansion(model);
    std::vector<EulerRational> b(static_cast<std::size_t>(terms));
    for (int k = 0; k < terms; ++k) {
        b[static_cast<std::size_t>(k)] = g.at(k) + p.at(k);
    }
    if (b[0] != EulerRational(1)) {
        throw std::logic_error("zc_from_gc_and_pihat: bracket does not start at 1");
    }
    // inv[0] = 1, inv[k] = -sum_{j=1..k} b[j] inv[k-j]
    std::vector<EulerRational> inv(static_cast<std::size_t>(terms));
    inv[0] = EulerRational(1);
    for (int k = 1; k < terms; ++k) {
        EulerRational s;
        for (int j = 1; j <= k; ++j) {
            s = s + b[static_cast<std::size_t>(j)] * inv[static_cast<std::size_t>(k - j)];
        }
        inv[static_cast<std::size_t>(k)] = s * Rational(-1);
    }
    return EExpansion{-1, 1, inv};
}

inline std::vector<IdentityCheck> expansion_checks()
{
    std::vector<IdentityCheck> out;
    for (Model model : {Model::tree, Model::animal}) {
        const EExpansion table = zc_expansion(model);
        const EExpansion derived = zc_from_gc_and_pihat(model);
        IdentityCheck c;
        c.name = "z_c = 1/(2d (g_c + Pi_hat)) [" + std::string(to_string(model)) + "]";
        for (int k = 1; k <= kRigorousOrder; ++k) {
            if (table.at(k) != derived.at(k)) {
                c.holds = false;
                c.first_bad_order = k;
                c.detail = "table " + table.at(k).to_string() + " vs derived " + derived.at(k).to_string();
                break;
            }
        }
        out.push_back(c);
    }
    return out;
}

struct ExpansionRow {
    std::string quantity; // "z_c" or "g_c"
    int power = 0;        // coefficient of (2d)^-power inside the bracket
    EulerRational coeff;
    bool rigorous = true;
};

struct ExpansionTable {
    Model model = Model::tree;
    int order = 0;
    std::vector<int> dims;
    std::vector<ExpansionRow> rows;
    std::vector<double> zc_partial; // per d, all requested z_c terms
    std::vector<double> gc_partial; // per d, all g_c terms
};

inline ExpansionTable expansion_table(Model model, int order, std::vector<int> dims)
{
    if (order < 1 || order > kMaxExpansionOrder) {
        throw std::invalid_argument("expansion order must be in [1, " + std::to_string(kMaxExpansionOrder) + "]");
    }
    ExpansionTable t{model, order, std::move(dims), {}, {}, {}};
    const EExpansion z = zc_expansion(model);
    const EExpansion g = gc_expansion(model);
    for (int k = 1; k <= order; ++k) {
        t.rows.push_back({"z_c", k, z.at(k), k <= kRigorousOrder});
    }
    for (int k = 0; k < static_cast<int>(g.c.size()); ++k) {
        t.rows.push_back({"g_c", k, g.at(k), true});
    }
    for (int d : t.dims) {
        if (d < 1) {
            throw InvalidDimension("expansion table: d must be >= 1");
        }
        t.zc_partial.push_back(z.value(d, order));
        t.gc_partial.push_back(g.value(d, static_cast<int>(g.c.size())));
    }
    return t;
}

/// 1 / z_c with the three rigorous terms.
inline double lambda_pred(Model model, int dim) { return 1.0 / zc_expansion(model).value(dim, kRigorousOrder); }

struct RatioReport {
    Model model = Model::tree;
    int dim = 0;
    int order = 0;
    std::vector<BigInt> counts;
    std::vector<Rational> ratios; // ratios[n] = count[n+1] / count[n]
    double lambda_pred = 0;
    double final_ratio = 0;
    bool within_factor_two = false;
};

inline RatioReport ratio_report(const CountTable& t)
{
    RatioReport r;
    r.model = t.model;
    r.dim = t.dim;
    r.order = t.max_bonds;
    r.counts = t.counts;
    for (std::size_t n = 0; n + 1 < t.counts.size(); ++n) {
        r.ratios.push_back(Rational(t.counts[n + 1]) / Rational(t.counts[n]));
    }
    r.lambda_pred = lambda_pred(t.model, t.dim);
    if (!r.ratios.empty()) {
        r.final_ratio = r.ratios.back().convert_to<double>();
        r.within_factor_two = r.final_ratio <= 2 * r.lambda_pred && 2 * r.final_ratio >= r.lambda_pred;
    }
    return r;
}

inline RatioReport ratio_report(Model model, int dim, int order, unsigned workers = 1)
{
    return ratio_report(count(model, dim, order, {}, workers));
}

} // namespace ltla
