#pragma once

// Truncated formal power series in z with exact coefficients.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltla/rational.hpp"

namespace ltla {

class SeriesDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// c_0 + c_1 z + ... + c_N z^N (mod z^{N+1}). Binary operations on
/// operands with different truncation orders use the smaller one.
template <class Coeff = Rational>
class Series {
public:
    Series() : coeffs_(1) {}

    explicit Series(int order) : coeffs_(static_cast<std::size_t>(check_order(order)) + 1) {}

    Series(int order, std::initializer_list<Coeff> leading) : Series(order)
    {
        std::size_t i = 0;
        for (const auto& c : leading) {
            if (i < coeffs_.size()) {
                coeffs_[i] = c;
            }
            ++i;
        }
    }

    Series(int order, const std::vector<Coeff>& leading) : Series(order)
    {
        for (std::size_t i = 0; i < leading.size() && i < coeffs_.size(); ++i) {
            coeffs_[i] = leading[i];
        }
    }

    static Series constant(int order, const Coeff& c) { return Series(order, {c}); }

    /// The monomial z^k.
    static Series monomial(int order, int k, const Coeff& c = Coeff(1))
    {
        Series s(order);
        if (k >= 0 && k <= order) {
            s.coeffs_[static_cast<std::size_t>(k)] = c;
        }
        return s;
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }

    const Coeff& operator[](int n) const { return coeffs_.at(static_cast<std::size_t>(n)); }
    Coeff& operator[](int n) { return coeffs_.at(static_cast<std::size_t>(n)); }

    /// [z^n], zero beyond the truncation order.
    Coeff coeff(int n) const
    {
        return n >= 0 && n <= order() ? coeffs_[static_cast<std::size_t>(n)] : Coeff(0);
    }

    const std::vector<Coeff>& coefficients() const { return coeffs_; }

    bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Coeff& c) { return c == 0; });
    }

    /// Index of the first nonzero coefficient, or order()+1 when zero.
    int valuation() const
    {
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] != 0) {
                return static_cast<int>(i);
            }
        }
        return order() + 1;
    }

    Series truncated(int order) const
    {
        Series s(std::min(order, this->order()));
        std::copy_n(coeffs_.begin(), s.coeffs_.size(), s.coeffs_.begin());
        return s;
    }

    Series& operator+=(const Series& o)
    {
        shrink_to(o.order());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            coeffs_[i] += o.coeffs_[i];
        }
        return *this;
    }

    Series& operator-=(const Series& o)
    {
        shrink_to(o.order());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            coeffs_[i] -= o.coeffs_[i];
        }
        return *this;
    }

    Series& operator*=(const Coeff& c)
    {
        for (auto& x : coeffs_) {
            x *= c;
        }
        return *this;
    }

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator-(Series a)
    {
        for (auto& x : a.coeffs_) {
            x = -x;
        }
        return a;
    }
    friend Series operator*(Series a, const Coeff& c) { return a *= c; }
    friend Series operator*(const Coeff& c, Series a) { return a *= c; }

    friend Series operator*(const Series& a, const Series& b)
    {
        const int n = std::min(a.order(), b.order());
        Series r(n);
        const int va = a.valuation();
        const int vb = b.valuation();
        for (int i = va; i <= n; ++i) {
            if (a.coeffs_[static_cast<std::size_t>(i)] == 0) {
                continue;
            }
            for (int j = vb; i + j <= n; ++j) {
                r.coeffs_[static_cast<std::size_t>(i + j)]
                    += a.coeffs_[static_cast<std::size_t>(i)] * b.coeffs_[static_cast<std::size_t>(j)];
            }
        }
        return r;
    }

    Series& operator*=(const Series& o) { return *this = *this * o; }

    /// Multiplication by z^k; the truncation order grows by k, since the
    /// product is known one order further per factor of z.
    Series times_z(int k = 1) const
    {
        Series s(order() + k);
        for (int i = 0; i <= order(); ++i) {
            s.coeffs_[static_cast<std::size_t>(i + k)] = coeffs_[static_cast<std::size_t>(i)];
        }
        return s;
    }

    /// d/dz; known to one order less.
    Series derivative() const
    {
        if (order() == 0) {
            return Series(0);
        }
        Series s(order() - 1);
        for (int i = 1; i <= order(); ++i) {
            s.coeffs_[static_cast<std::size_t>(i - 1)] = Coeff(i) * coeffs_[static_cast<std::size_t>(i)];
        }
        return s;
    }

    /// exp of a series with zero constant term, from n f_n = sum_k k a_k f_{n-k}.
    Series exp() const
    {
        if (coeffs_[0] != 0) {
            throw SeriesDomainError("exp requires a zero constant term");
        }
        Series f(order());
        f.coeffs_[0] = 1;
        for (int n = 1; n <= order(); ++n) {
            Coeff acc(0);
            for (int k = 1; k <= n; ++k) {
                acc += Coeff(k) * coeffs_[static_cast<std::size_t>(k)] * f.coeffs_[static_cast<std::size_t>(n - k)];
            }
            f.coeffs_[static_cast<std::size_t>(n)] = acc / Coeff(n);
        }
        return f;
    }

    /// Multiplicative inverse; requires an invertible constant term.
    Series inverse() const
    {
        if (coeffs_[0] == 0) {
            throw SeriesDomainError("inverse requires a nonzero constant term");
        }
        Series r(order());
        r.coeffs_[0] = Coeff(1) / coeffs_[0];
        for (int n = 1; n <= order(); ++n) {
            Coeff acc(0);
            for (int k = 1; k <= n; ++k) {
                acc += coeffs_[static_cast<std::size_t>(k)] * r.coeffs_[static_cast<std::size_t>(n - k)];
            }
            r.coeffs_[static_cast<std::size_t>(n)] = -acc * r.coeffs_[0];
        }
        return r;
    }

    Series pow(unsigned k) const
    {
        Series r = Series::constant(order(), Coeff(1));
        for (unsigned i = 0; i < k; ++i) {
            r *= *this;
        }
        return r;
    }

    friend bool operator==(const Series& a, const Series& b)
    {
        const int n = std::min(a.order(), b.order());
        for (int i = 0; i <= n; ++i) {
            if (a.coeffs_[static_cast<std::size_t>(i)] != b.coeffs_[static_cast<std::size_t>(i)]) {
                return false;
            }
        }
        return true;
    }

    friend std::ostream& operator<<(std::ostream& os, const Series& s)
    {
        os << "[";
        for (int i = 0; i <= s.order(); ++i) {
            os << (i ? ", " : "") << s.coeffs_[static_cast<std::size_t>(i)];
        }
        return os << "] + O(z^" << s.order() + 1 << ")";
    }

private:
    static int check_order(int order)
    {
        if (order < 0) {
            throw std::invalid_argument("series order must be >= 0");
        }
        return order;
    }

    void shrink_to(int order)
    {
        if (order < this->order()) {
            coeffs_.resize(static_cast<std::size_t>(order) + 1);
        }
    }

    std::vector<Coeff> coeffs_;
};

using RSeries = Series<Rational>;

/// First index where a and b differ (up to the common order), or -1.
template <class C>
int first_mismatch(const Series<C>& a, const Series<C>& b)
{
    const int n = std::min(a.order(), b.order());
    for (int i = 0; i <= n; ++i) {
        if (a[i] != b[i]) {
            return i;
        }
    }
    return -1;
}

/// First index with a_n > b_n, or -1 if a <= b coefficientwise.
template <class C>
int first_exceedance(const Series<C>& a, const Series<C>& b)
{
    const int n = std::min(a.order(), b.order());
    for (int i = 0; i <= n; ++i) {
        if (a[i] > b[i]) {
            return i;
        }
    }
    return -1;
}

template <class C>
bool coefficientwise_le(const Series<C>& a, const Series<C>& b)
{
    return first_exceedance(a, b) < 0;
}

template <class Int>
RSeries series_from_counts(const std::vector<Int>& counts, int order)
{
    RSeries s(order);
    for (int i = 0; i <= order && static_cast<std::size_t>(i) < counts.size(); ++i) {
        s[i] = Rational(counts[static_cast<std::size_t>(i)]);
    }
    return s;
}

} // namespace ltla
