#pragma once

// Geometry of the hypercubic lattice Z^d: points, nearest-neighbour bonds,
// the hyperoctahedral symmetry group, and a packed point encoding used by the
// enumeration kernels.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltla {

inline constexpr int kMaxDim = 15;

class InvalidDimension : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline void check_dimension(int dim)
{
    if (dim < 1 || dim > kMaxDim) {
        throw InvalidDimension("dimension must be in [1, " + std::to_string(kMaxDim) + "], got "
                               + std::to_string(dim));
    }
}

/// A point of Z^d with small signed coordinates.
class Point {
public:
    Point() = default;

    explicit Point(int dim) : dim_(static_cast<std::uint8_t>(dim)) { check_dimension(dim); }

    Point(std::initializer_list<int> coords) : dim_(static_cast<std::uint8_t>(coords.size()))
    {
        check_dimension(static_cast<int>(coords.size()));
        int i = 0;
        for (int c : coords) {
            set(i++, c);
        }
    }

    static Point origin(int dim) { return Point(dim); }

    static Point unit(int dim, int axis, int sign = 1)
    {
        Point p(dim);
        p.set(axis, sign);
        return p;
    }

    int dim() const { return dim_; }
    int operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }

    void set(int i, int value)
    {
        if (value < -127 || value > 127) {
            throw std::out_of_range("lattice coordinate out of range");
        }
        c_[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(value);
    }

    bool is_origin() const
    {
        return std::all_of(c_.begin(), c_.begin() + dim_, [](std::int8_t v) { return v == 0; });
    }

    int l1_norm() const
    {
        int n = 0;
        for (int i = 0; i < dim_; ++i) {
            n += std::abs(c_[static_cast<std::size_t>(i)]);
        }
        return n;
    }

    friend Point operator+(const Point& a, const Point& b)
    {
        Point r(a.dim_);
        for (int i = 0; i < a.dim_; ++i) {
            r.set(i, a[i] + b[i]);
        }
        return r;
    }

    friend Point operator-(const Point& a, const Point& b)
    {
        Point r(a.dim_);
        for (int i = 0; i < a.dim_; ++i) {
            r.set(i, a[i] - b[i]);
        }
        return r;
    }

    Point operator-() const { return Point(dim_) - *this; }

    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;

    std::string str() const
    {
        std::string s = "(";
        for (int i = 0; i < dim_; ++i) {
            if (i) {
                s += ",";
            }
            s += std::to_string((*this)[i]);
        }
        return s + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const Point& p) { return os << p.str(); }

private:
    // dim_ first so that the defaulted ordering compares dimension first,
    // then coordinates lexicographically.
    std::uint8_t dim_ = 0;
    std::array<std::int8_t, kMaxDim> c_{};
};

inline int l1_distance(const Point& a, const Point& b) { return (a - b).l1_norm(); }

/// Unordered nearest-neighbour bond, stored with the lexicographically
/// smaller endpoint first.
class Bond {
public:
    Bond(const Point& a, const Point& b)
    {
        if (a.dim() != b.dim() || l1_distance(a, b) != 1) {
            throw std::invalid_argument("bond endpoints must be nearest neighbours: " + a.str() + " "
                                        + b.str());
        }
        if (b < a) {
            lo_ = b;
            hi_ = a;
        } else {
            lo_ = a;
            hi_ = b;
        }
    }

    const Point& first() const { return lo_; }
    const Point& second() const { return hi_; }
    bool has_endpoint(const Point& p) const { return p == lo_ || p == hi_; }

    friend bool operator==(const Bond&, const Bond&) = default;
    friend auto operator<=>(const Bond&, const Bond&) = default;

    std::string str() const { return "{" + lo_.str() + "," + hi_.str() + "}"; }

private:
    Point lo_;
    Point hi_;
};

/// The 2d nearest neighbours of p, ordered +e_1..+e_d then -e_1..-e_d.
inline std::vector<Point> neighbors(const Point& p, int dim)
{
    check_dimension(dim);
    if (p.dim() != dim) {
        throw InvalidDimension("point " + p.str() + " does not have dimension " + std::to_string(dim));
    }
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(2 * dim));
    for (int sign : {1, -1}) {
        for (int axis = 0; axis < dim; ++axis) {
            out.push_back(p + Point::unit(dim, axis, sign));
        }
    }
    return out;
}

/// The neighbour set E = {e_1, ..., e_2d} of the origin.
inline std::vector<Point> unit_vectors(int dim) { return neighbors(Point::origin(dim), dim); }

/// Element of the hyperoctahedral group: (sigma x)_i = sign_i * x_{perm_i}.
class Symmetry {
public:
    explicit Symmetry(int dim) : dim_(dim)
    {
        check_dimension(dim);
        std::iota(perm_.begin(), perm_.begin() + dim, 0);
        sign_.fill(1);
    }

    Symmetry(std::vector<int> perm, std::vector<int> signs) : dim_(static_cast<int>(perm.size()))
    {
        check_dimension(dim_);
        if (signs.size() != perm.size()) {
            throw std::invalid_argument("symmetry: permutation and sign vector differ in length");
        }
        std::vector<int> sorted = perm;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < dim_; ++i) {
            if (sorted[static_cast<std::size_t>(i)] != i) {
                throw std::invalid_argument("symmetry: not a permutation");
            }
            if (signs[static_cast<std::size_t>(i)] != 1 && signs[static_cast<std::size_t>(i)] != -1) {
                throw std::invalid_argument("symmetry: signs must be +-1");
            }
            perm_[static_cast<std::size_t>(i)] = perm[static_cast<std::size_t>(i)];
            sign_[static_cast<std::size_t>(i)] = signs[static_cast<std::size_t>(i)];
        }
    }

    int dim() const { return dim_; }

    Point apply(const Point& x) const
    {
        Point y(dim_);
        for (int i = 0; i < dim_; ++i) {
            y.set(i, sign_[static_cast<std::size_t>(i)] * x[perm_[static_cast<std::size_t>(i)]]);
        }
        return y;
    }

    Bond apply(const Bond& b) const { return Bond(apply(b.first()), apply(b.second())); }

    /// (this ∘ other)(x) = this(other(x)).
    Symmetry compose(const Symmetry& other) const
    {
        std::vector<int> perm(static_cast<std::size_t>(dim_));
        std::vector<int> signs(static_cast<std::size_t>(dim_));
        for (int i = 0; i < dim_; ++i) {
            const int j = perm_[static_cast<std::size_t>(i)];
            perm[static_cast<std::size_t>(i)] = other.perm_[static_cast<std::size_t>(j)];
            signs[static_cast<std::size_t>(i)]
                = sign_[static_cast<std::size_t>(i)] * other.sign_[static_cast<std::size_t>(j)];
        }
        return Symmetry(std::move(perm), std::move(signs));
    }

    friend bool operator==(const Symmetry& a, const Symmetry& b)
    {
        return a.dim_ == b.dim_ && a.perm_ == b.perm_ && a.sign_ == b.sign_;
    }

private:
    int dim_;
    std::array<int, kMaxDim> perm_{};
    std::array<int, kMaxDim> sign_{};
};

/// All 2^d d! symmetries. Only sensible for small d.
inline std::vector<Symmetry> all_symmetries(int dim)
{
    check_dimension(dim);
    if (dim > 6) {
        throw InvalidDimension("all_symmetries: group too large for d > 6");
    }
    std::vector<int> perm(static_cast<std::size_t>(dim));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Symmetry> out;
    do {
        for (unsigned mask = 0; mask < (1u << dim); ++mask) {
            std::vector<int> signs(static_cast<std::size_t>(dim));
            for (int i = 0; i < dim; ++i) {
                signs[static_cast<std::size_t>(i)] = (mask >> i) & 1u ? -1 : 1;
            }
            out.emplace_back(perm, std::move(signs));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Orbit of x under coordinate permutations and reflections. Computed
/// directly (sorted absolute values, all placements and signs) so it works
/// for every supported dimension.
inline std::set<Point> symmetry_orbit(const Point& x)
{
    const int dim = x.dim();
    std::vector<int> mags(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        mags[static_cast<std::size_t>(i)] = std::abs(x[i]);
    }
    std::sort(mags.begin(), mags.end());
    std::set<Point> orbit;
    do {
        int nonzero = 0;
        for (int m : mags) {
            nonzero += m != 0;
        }
        for (unsigned mask = 0; mask < (1u << nonzero); ++mask) {
            Point p(dim);
            int bit = 0;
            for (int i = 0; i < dim; ++i) {
                int v = mags[static_cast<std::size_t>(i)];
                if (v != 0) {
                    v = (mask >> bit++) & 1u ? -v : v;
                }
                p.set(i, v);
            }
            orbit.insert(p);
        }
    } while (std::next_permutation(mags.begin(), mags.end()));
    return orbit;
}

/// Canonical representative of the symmetry orbit (nonincreasing absolute values).
inline Point orbit_representative(const Point& x)
{
    std::vector<int> mags(static_cast<std::size_t>(x.dim()));
    for (int i = 0; i < x.dim(); ++i) {
        mags[static_cast<std::size_t>(i)] = std::abs(x[i]);
    }
    std::sort(mags.rbegin(), mags.rend());
    Point p(x.dim());
    for (int i = 0; i < x.dim(); ++i) {
        p.set(i, mags[static_cast<std::size_t>(i)]);
    }
    return p;
}

// ---------------------------------------------------------------------------
// Packed points. One biased byte per coordinate, so d <= 8 and every
// coordinate must stay in [-128, 127]. Translation is plain integer
// arithmetic on the packed value and preserves the ordering of keys.

inline constexpr int kMaxPackedDim = 8;

struct SiteKey {
    std::uint64_t value = 0;

    friend bool operator==(SiteKey, SiteKey) = default;
    friend auto operator<=>(SiteKey, SiteKey) = default;
};

inline std::uint64_t packed_bias(int dim)
{
    std::uint64_t b = 0;
    for (int i = 0; i < dim; ++i) {
        b |= std::uint64_t{128} << (8 * i);
    }
    return b;
}

inline SiteKey pack(const Point& p)
{
    if (p.dim() > kMaxPackedDim) {
        throw InvalidDimension("packed points support d <= 8");
    }
    std::uint64_t v = 0;
    for (int i = 0; i < p.dim(); ++i) {
        v |= static_cast<std::uint64_t>(p[i] + 128) << (8 * i);
    }
    return SiteKey{v};
}

inline Point unpack(SiteKey k, int dim)
{
    Point p(dim);
    for (int i = 0; i < dim; ++i) {
        p.set(i, static_cast<int>((k.value >> (8 * i)) & 0xffu) - 128);
    }
    return p;
}

/// Key of (a + b - origin): translation of a by the vector whose key is b.
inline SiteKey key_add(SiteKey a, SiteKey b, std::uint64_t bias) { return SiteKey{a.value + b.value - bias}; }

/// Key of (a - b).
inline SiteKey key_sub(SiteKey a, SiteKey b, std::uint64_t bias) { return SiteKey{a.value - b.value + bias}; }

} // namespace ltla

template <>
struct std::hash<ltla::SiteKey> {
    std::size_t operator()(ltla::SiteKey k) const noexcept
    {
        std::uint64_t x = k.value * 0x9E3779B97F4A7C15ull;
        return static_cast<std::size_t>(x ^ (x >> 29));
    }
};
