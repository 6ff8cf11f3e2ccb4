#pragma once

// Named verification suites. Each returns the list of exact checks it ran;
// a suite passes when every check holds.

#include <algorithm>
#include <functional>
#include <sstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltla/check.hpp"
#include "ltla/expansion.hpp"
#include "ltla/generating.hpp"
#include "ltla/lace.hpp"
#include "ltla/onept_expansion.hpp"
#include "ltla/polyd.hpp"

namespace ltla {

struct SuiteParams {
    Model model = Model::tree;
    int dim = 2;
    int order = 6;
    unsigned workers = 1;
};

struct SuiteReport {
    std::string suite;
    SuiteParams params;
    std::vector<IdentityCheck> checks;

    bool passed() const { return all_hold(checks); }
};

class UnknownSuite : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string at_point(const Point& x, int n)
{
    std::ostringstream os;
    os << "x=" << x << " [z^" << n << "]";
    return os.str();
}

inline IdentityCheck site_identity(std::string name, const SiteSeries& a, const SiteSeries& b)
{
    IdentityCheck c;
    c.name = std::move(name);
    if (auto m = first_mismatch(a, b)) {
        c.holds = false;
        c.first_bad_order = m->n;
        c.detail = at_point(m->x, m->n) + " lhs=" + to_short_string(a.at(m->x)[m->n]) + " rhs="
                   + to_short_string(b.at(m->x)[m->n]);
    }
    return c;
}

inline IdentityCheck site_inequality(std::string name, const SiteSeries& a, const SiteSeries& b)
{
    IdentityCheck c;
    c.name = std::move(name);
    if (auto m = first_exceedance(a, b)) {
        c.holds = false;
        c.first_bad_order = m->n;
        c.detail = at_point(m->x, m->n) + " lhs=" + to_short_string(a.at(m->x)[m->n]) + " > rhs="
                   + to_short_string(b.at(m->x)[m->n]);
    }
    return c;
}

inline IdentityCheck value_identity(std::string name, const Rational& lhs, const Rational& rhs)
{
    IdentityCheck c;
    c.name = std::move(name);
    c.holds = lhs == rhs;
    c.detail = "lhs=" + to_short_string(lhs) + " rhs=" + to_short_string(rhs);
    return c;
}

} // namespace detail

inline std::vector<IdentityCheck> verify_onept(const SuiteParams& p)
{
    return onept_checks(onept_expansion(p.model, p.dim, p.order, p.workers));
}

/// The four Z identities and the partitions of Gamma^(2), Gamma^(3).
inline std::vector<IdentityCheck> verify_gams(const SuiteParams& p)
{
    const OneptExpansion X = onept_expansion(p.model, p.dim, p.order, p.workers);
    auto out = z_identity_checks(X);
    out.push_back(series_identity("Gamma2 = Gamma(2,3) + Gamma(2,4)", X.gamma2, X.split.at({2, 3}) + X.split.at({2, 4})));
    out.push_back(series_identity("Gamma3 = sum_n Gamma(3,n)", X.gamma3,
                                  X.split.at({3, 3}) + X.split.at({3, 4}) + X.split.at({3, 5}) + X.split.at({3, 6})));
    return out;
}

/// r = z g - z G(s) for every neighbour s of the origin.
inline std::vector<IdentityCheck> verify_rgG(const SuiteParams& p)
{
    const RSeries g = one_point(p.model, p.dim, p.order, p.workers);
    const SiteSeries G = two_point(p.model, p.dim, p.order, p.workers);
    std::vector<IdentityCheck> out;
    for (const Point& s : unit_vectors(p.dim)) {
        std::ostringstream name;
        name << "r = z g - z G(s), s=" << s;
        out.push_back(series_identity(name.str(), planted(p.model, p.dim, p.order, s, p.workers),
                                      (g - G.at(s)).times_z().truncated(p.order)));
    }
    return out;
}

/// Highest order the lace suite certifies and cross-checks term by term.
inline constexpr int kLaceCrossCheckOrder = 4;

inline std::vector<IdentityCheck> verify_lace(const SuiteParams& p)
{
    std::vector<IdentityCheck> out;
    const auto bundle = series_bundle(p.model, p.dim, p.order, p.workers);
    const PiSolution sol = pi_solve(bundle.g, bundle.G);
    out.push_back(flag_check("G = delta g + Pi + g (2dzD*G) + Pi*(2dzD*G) residual vanishes", sol.residual.support_size() == 0,
                             std::to_string(sol.residual.support_size()) + " nonzero sites"));
    out.push_back(susceptibility_identity(bundle.chi, bundle.g, sol.Pi_hat, p.dim));
    bool symmetric = true;
    for (const auto& s : all_symmetries(p.dim)) {
        for (const auto& [x, v] : sol.Pi.entries()) {
            symmetric = symmetric && sol.Pi.at(s.apply(x)) == v;
        }
    }
    out.push_back(flag_check("Pi(x) = Pi(sigma x)", symmetric));

    const int scan_order = std::min(p.order, kLaceCrossCheckOrder);
    const OrderScan scan = order_scan(p.model, p.dim, scan_order);
    const LaceTerms t = lace_terms(p.model, p.dim, scan_order);
    out.push_back(detail::site_identity("avoiding rib configurations rebuild G", t.G_rebuilt, bundle.G.truncated(scan_order)));
    // Pi = Pi0 - Pi1 + Pi2 at orders where no lace with 3 or more edges occurs,
    // and Pi = Pi0 - Pi1 where none with 2 or more occurs.
    int certified3 = -1;
    int certified2 = -1;
    for (int o = 0; o <= scan_order; ++o) {
        certified3 = scan.certifies_absent(3, o) ? o : certified3;
        certified2 = scan.certifies_absent(2, o) ? o : certified2;
    }
    const RSeries hat = sol.Pi_hat;
    const RSeries h0 = t.pi0.total();
    const RSeries h1 = t.pi1.total();
    const RSeries h2 = t.pi2.total();
    for (int n = 0; n <= certified2; ++n) {
        out.push_back(detail::value_identity("[z^" + std::to_string(n) + "] Pi_hat = Pi_hat0 - Pi_hat1", hat[n], h0[n] - h1[n]));
    }
    for (int n = certified2 + 1; n <= certified3; ++n) {
        out.push_back(detail::value_identity("[z^" + std::to_string(n) + "] Pi_hat = Pi_hat0 - Pi_hat1 + Pi_hat2", hat[n],
                                             h0[n] - h1[n] + h2[n]));
    }
    if (certified3 >= 0) {
        out.push_back(detail::site_identity("Pi(x) = Pi0(x) - Pi1(x) + Pi2(x) through z^" + std::to_string(certified3),
                                            sol.Pi.truncated(certified3), (t.pi0 - t.pi1 + t.pi2).truncated(certified3)));
    }
    out.push_back(flag_check("order scan certifies laces of 2+ edges absent at z^2", certified2 >= 2));
    out.push_back(flag_check("order scan certifies laces of 3+ edges absent at z^3", certified3 >= 3));
    if (p.model == Model::animal && p.order >= 4) {
        const Rational squares((2 * p.dim) * (2 * p.dim - 2), 2);
        out.push_back(detail::value_identity("[z^4] g_circ = (2d)(2d-2)/2", bundle.g_circ[4], squares));
        out.push_back(detail::value_identity("[z^4] Pi_hat0 = 3 (2d)(2d-2)/2", h0[4], 3 * squares));
    }
    if (p.model == Model::tree && p.order >= 2) {
        out.push_back(flag_check("Pi0 vanishes for trees", t.pi0.support_size() == 0));
    }
    return out;
}

/// Q = sum_n Q^n, Q(x) <= S^(|x|,2)(x) on the support, [z^1] Q(s) = 2.
inline std::vector<IdentityCheck> verify_qdecomp(const SuiteParams& p)
{
    std::vector<IdentityCheck> out;
    const QData q = Q_decomposition(p.model, p.dim, p.order);
    SiteSeries sum(p.dim, p.order);
    for (const auto& part : q.by_length) {
        sum += part;
    }
    out.push_back(detail::site_identity("Q = sum_n Q^n", q.Q, sum));
    const TwoPoint tp = two_point_bundle(p.model, p.dim, p.order, p.workers);
    std::map<int, SiteSeries> smn;
    SiteSeries bound(p.dim, p.order);
    for (const auto& [x, v] : q.Q.entries()) {
        (void)v;
        const int m = x.l1_norm();
        auto it = smn.find(m);
        if (it == smn.end()) {
            it = smn.emplace(m, S_mn(tp.G_min, m, 2)).first;
        }
        bound.add(x, it->second.at(x));
    }
    out.push_back(detail::site_inequality("Q(x) <= S^(|x|,2)(x)", q.Q, bound));
    if (p.order >= 1) {
        out.push_back(detail::value_identity("[z^1] Q(s) = 2", q.Q.at(Point::unit(p.dim, 0))[1], 2));
    }
    return out;
}

/// S^(m,n) special cases and G^(i)(x) <= (2dzg)^i (D^{*i}*G)(x).
/// For animals the bound is reported, not required.
inline std::vector<IdentityCheck> verify_smn(const SuiteParams& p, std::vector<BoundComparison>* animal_report = nullptr)
{
    std::vector<IdentityCheck> out;
    const TwoPoint tp = two_point_bundle(p.model, p.dim, p.order, p.workers);
    const RSeries g = one_point(p.model, p.dim, p.order, p.workers);
    out.push_back(detail::site_identity("S^(0,2) = G*G", S_mn(tp.G_min, 0, 2), convolve(tp.G, tp.G)));
    for (int m = 0; m <= std::min(p.order, 3); ++m) {
        out.push_back(detail::site_identity("S^(" + std::to_string(m) + ",1) = G^(" + std::to_string(m) + ")",
                                            S_mn(tp.G_min, m, 1), tp.G_min[static_cast<std::size_t>(m)]));
    }
    for (int i = 0; i <= 3; ++i) {
        const BoundComparison b = gk_bound_check(g, tp, i);
        if (p.model == Model::animal) {
            if (animal_report) {
                animal_report->push_back(b);
            }
            continue;
        }
        out.push_back(detail::site_inequality("G^(" + std::to_string(i) + ")(x) <= (2dzg)^" + std::to_string(i)
                                                  + " (D^{*" + std::to_string(i) + "}*G)(x)",
                                              tp.G_min[static_cast<std::size_t>(i)], gk_bound_rhs(g, tp.G, i)));
    }
    return out;
}

/// Trees: chi = d/dz (z g). Animals: chi <= d/dz (z g).
inline std::vector<IdentityCheck> verify_chi(const SuiteParams& p)
{
    const auto b = series_bundle(p.model, p.dim, p.order, p.workers);
    const RSeries rhs = b.g.times_z().derivative();
    if (p.model == Model::tree) {
        return {series_identity("chi = d/dz (z g)", b.chi, rhs)};
    }
    return {series_inequality("chi <= d/dz (z g)", b.chi, rhs)};
}

/// Proper-count polynomials against direct counts at d = 1..max_dim.
inline std::vector<IdentityCheck> verify_polyd(const SuiteParams& p, int max_bonds = kDefaultProperBonds, int max_dim = 4)
{
    std::vector<IdentityCheck> out;
    std::map<Model, std::vector<DPoly>> polys;
    for (Model model : {Model::tree, Model::animal}) {
        const ProperTable t = proper_counts(model, max_bonds, p.workers);
        for (int n = 0; n <= max_bonds; ++n) {
            polys[model].push_back(poly_from_proper(t, n));
        }
        for (int d = 1; d <= max_dim; ++d) {
            const CountTable direct = count(model, d, max_bonds, {}, p.workers);
            IdentityCheck c;
            c.name = std::string(to_string(model)) + " polynomial counts at d=" + std::to_string(d);
            for (int n = 0; n <= max_bonds; ++n) {
                const Rational v = polys[model][static_cast<std::size_t>(n)](Rational(d));
                if (v != Rational(direct[n])) {
                    c.holds = false;
                    c.first_bad_order = n;
                    c.detail = "n=" + std::to_string(n) + " poly=" + to_short_string(v) + " direct=" + direct[n].str();
                    break;
                }
            }
            out.push_back(c);
        }
    }
    for (int n = 0; n <= max_bonds; ++n) {
        const DPoly& tn = polys[Model::tree][static_cast<std::size_t>(n)];
        const DPoly diff = polys[Model::animal][static_cast<std::size_t>(n)] - tn;
        out.push_back(flag_check("deg t_" + std::to_string(n) + " = " + std::to_string(n) + ", leading > 0",
                                 tn.degree() == n && tn.leading() > 0, tn.to_string()));
        out.push_back(flag_check("deg(a_" + std::to_string(n) + " - t_" + std::to_string(n) + ") <= " + std::to_string(n - 2),
                                 diff.is_zero() || diff.degree() <= n - 2, diff.to_string()));
    }
    return out;
}

/// Closed nearest-neighbour walks of length `steps` from the origin, by a
/// dynamic program over positions.
inline BigInt closed_walk_count(int dim, int steps)
{
    std::map<Point, BigInt> cur{{Point::origin(dim), BigInt(1)}};
    for (int s = 0; s < steps; ++s) {
        std::map<Point, BigInt> next;
        for (const auto& [x, c] : cur) {
            for (const auto& y : neighbors(x, dim)) {
                if (y.l1_norm() <= steps - s - 1) {
                    next[y] += c;
                }
            }
        }
        cur = std::move(next);
    }
    auto it = cur.find(Point::origin(dim));
    return it == cur.end() ? BigInt(0) : it->second;
}

/// (2d)^m D^{*2m}(0) <= (2m-1)!! and D^{*2m}(0) = closed walks / (2d)^{2m}.
inline std::vector<IdentityCheck> verify_dkernel(const SuiteParams&, int max_dim = 6, int max_m = 3)
{
    std::vector<IdentityCheck> out;
    for (int d = 1; d <= max_dim; ++d) {
        const SiteSeries D = step_kernel(d, 0);
        SiteSeries power = delta(d, 0);
        for (int m = 1; m <= max_m; ++m) {
            power = convolve(convolve(power, D), D);
            const Rational at0 = power.at(Point::origin(d))[0];
            Rational walks = Rational(closed_walk_count(d, 2 * m));
            for (int k = 0; k < 2 * m; ++k) {
                walks /= 2 * d;
            }
            const std::string tag = " d=" + std::to_string(d) + " m=" + std::to_string(m);
            out.push_back(detail::value_identity("D^{*2m}(0) = closed walks / (2d)^{2m}" + tag, at0, walks));
            Rational scaled = at0;
            BigInt dfact = 1;
            for (int k = 0; k < m; ++k) {
                scaled *= 2 * d;
                dfact *= 2 * k + 1;
            }
            IdentityCheck c;
            c.name = "(2d)^m D^{*2m}(0) <= (2m-1)!!" + tag;
            c.holds = scaled <= Rational(dfact);
            c.detail = to_short_string(scaled) + " vs " + dfact.str();
            out.push_back(c);
        }
    }
    return out;
}

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"onept", "gams", "rgG", "lace", "qdecomp", "smn", "polyd", "chi", "dkernel"};
    return names;
}

/// Suites whose checks do not depend on the model or dimension flags.
inline bool suite_is_global(const std::string& name) { return name == "polyd" || name == "dkernel"; }

inline SuiteReport run_suite(const std::string& name, const SuiteParams& p)
{
    static const std::map<std::string, std::function<std::vector<IdentityCheck>(const SuiteParams&)>> table{
        {"onept", verify_onept},
        {"gams", verify_gams},
        {"rgG", verify_rgG},
        {"lace", verify_lace},
        {"qdecomp", verify_qdecomp},
        {"smn", [](const SuiteParams& q) { return verify_smn(q); }},
        {"polyd", [](const SuiteParams& q) { return verify_polyd(q); }},
        {"chi", verify_chi},
        {"dkernel", [](const SuiteParams& q) { return verify_dkernel(q); }},
    };
    auto it = table.find(name);
    if (it == table.end()) {
        throw UnknownSuite("unknown suite '" + name + "'");
    }
    return SuiteReport{name, p, it->second(p)};
}

} // namespace ltla
