#include <gtest/gtest.h>

#include "ltla/polyd.hpp"
#include "oracles.hpp"

using namespace ltla;

namespace {

bool uses_all_axes(const oracle::BondSet& c, int dim)
{
    std::vector<bool> seen(static_cast<std::size_t>(dim), false);
    for (const auto& b : c) {
        for (int i = 0; i < dim; ++i) {
            if (b.first()[i] != b.second()[i]) {
                seen[static_cast<std::size_t>(i)] = true;
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool s) { return s; });
}

} // namespace

TEST(DPoly, Arithmetic)
{
    const DPoly d = DPoly::d();
    EXPECT_EQ((d * d - DPoly::constant(1)).to_string(), "d^2 - 1");
    EXPECT_EQ(DPoly::binomial(2), DPoly({Rational(0), Rational(-1, 2), Rational(1, 2)}));
    EXPECT_EQ(DPoly::binomial(3)(Rational(5)), Rational(10));
    EXPECT_EQ(DPoly::binomial(3)(Rational(2)), Rational(0));
    EXPECT_EQ(DPoly().degree(), -1);
    EXPECT_EQ((d - d).degree(), -1);
    EXPECT_EQ((DPoly({Rational(1, 2), Rational(0), Rational(-3)})).to_string(), "-3 d^2 + 1/2");
}

TEST(ProperCounts, SmallValues)
{
    const ProperTable t = proper_counts(Model::tree, 4);
    EXPECT_EQ(t.at(0, 0), 1);
    EXPECT_EQ(t.at(1, 1), 2);
    for (int n = 0; n <= 4; ++n) {
        for (int k = n + 1; k <= 4; ++k) {
            EXPECT_EQ(t.at(n, k), 0) << n << "," << k;
        }
    }
    for (Model model : {Model::tree, Model::animal}) {
        const ProperTable p = proper_counts(model, 4);
        for (int k = 1; k <= 3; ++k) {
            const auto levels = oracle::clusters_by_size(model, k, 4);
            for (int n = 0; n <= 4; ++n) {
                long long expect = 0;
                for (const auto& c : levels[static_cast<std::size_t>(n)]) {
                    expect += uses_all_axes(c, k);
                }
                EXPECT_EQ(p.at(n, k), expect) << to_string(model) << " n=" << n << " k=" << k;
            }
        }
    }
}

TEST(PolyD, MatchesDirectCounts)
{
    for (Model model : {Model::tree, Model::animal}) {
        const ProperTable p = proper_counts(model, 5);
        for (int d = 1; d <= 4; ++d) {
            const CountTable direct = count(model, d, 5);
            for (int n = 0; n <= 5; ++n) {
                EXPECT_EQ(poly_from_proper(p, n)(Rational(d)), Rational(direct[n])) << to_string(model) << d << n;
            }
        }
    }
}

TEST(PolyD, DegreesAndSmallCases)
{
    const ProperTable t = proper_counts(Model::tree, 5);
    const ProperTable a = proper_counts(Model::animal, 5);
    EXPECT_EQ(poly_from_proper(t, 1), DPoly({Rational(0), Rational(2)}));
    for (int n = 0; n <= 5; ++n) {
        const DPoly tn = poly_from_proper(t, n);
        EXPECT_EQ(tn.degree(), n);
        EXPECT_GT(tn.leading(), 0);
        const DPoly cyclic = poly_from_proper(a, n) - tn;
        EXPECT_TRUE(cyclic.is_zero() || cyclic.degree() <= n - 2) << n;
    }
    for (int n = 0; n <= 3; ++n) {
        EXPECT_EQ(poly_from_proper(a, n), poly_from_proper(t, n));
    }
    EXPECT_THROW(poly_from_proper(t, 6), std::out_of_range);
}

TEST(PolyD, InterpolationOracle)
{
    for (Model model : {Model::tree, Model::animal}) {
        const ProperTable p = proper_counts(model, 4);
        std::vector<CountTable> direct;
        for (int d = 1; d <= 5; ++d) {
            direct.push_back(count(model, d, 4));
        }
        for (int n = 0; n <= 4; ++n) {
            std::vector<Rational> xs, ys;
            for (int d = 1; d <= n + 1; ++d) {
                xs.emplace_back(d);
                ys.emplace_back(direct[static_cast<std::size_t>(d - 1)][n]);
            }
            EXPECT_EQ(interpolate(xs, ys), poly_from_proper(p, n)) << to_string(model) << n;
        }
    }
}
