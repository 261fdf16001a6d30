#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dioph/arith.hpp"
#include "dioph/errors.hpp"

namespace dioph {

/// Dense row-major square matrix.
template <class T>
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n) {}
    SquareMatrix(std::size_t n, std::vector<T> entries) : n_(n), a_(std::move(entries)) {
        if (a_.size() != n * n)
            throw InvalidArgument("matrix entry count does not match dimension");
    }

    static SquareMatrix identity(std::size_t n) {
        SquareMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    std::size_t dim() const { return n_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    const std::vector<T>& entries() const { return a_; }

    friend SquareMatrix operator*(const SquareMatrix& x, const SquareMatrix& y) {
        SquareMatrix r(x.n_);
        for (std::size_t i = 0; i < x.n_; ++i)
            for (std::size_t k = 0; k < x.n_; ++k)
                for (std::size_t j = 0; j < x.n_; ++j)
                    r(i, j) += x(i, k) * y(k, j);
        return r;
    }

    friend bool operator==(const SquareMatrix& x, const SquareMatrix& y) {
        return x.n_ == y.n_ && x.a_ == y.a_;
    }

private:
    std::size_t n_ = 0;
    std::vector<T> a_;
};

using IntMatrix = SquareMatrix<Int>;
using RatMatrix = SquareMatrix<Rat>;

Rat determinant(const RatMatrix& m);
Int determinant(const IntMatrix& m);

RatMatrix to_rational(const IntMatrix& m);

/// z = u / v with det(u) = v^N and gcd(entries of u, v) = 1.
class RationalGroupPoint {
public:
    /// Throws NotUnimodular when det(raw) != 1.
    static RationalGroupPoint reduce(const RatMatrix& raw);

    /// Validates the invariants; throws InvalidArgument or NotUnimodular.
    static RationalGroupPoint from_reduced(IntMatrix u, Int v);

    static RationalGroupPoint identity(std::size_t n);

    std::size_t dim() const { return u_.dim(); }
    const IntMatrix& u() const { return u_; }
    const Int& v() const { return v_; }
    const Int& den() const { return v_; }
    Rat entry(std::size_t i, std::size_t j) const;
    RatMatrix to_rational() const;

    friend RationalGroupPoint operator*(const RationalGroupPoint& a, const RationalGroupPoint& b);

    /// Lexicographic on the flattened numerator, then on v.
    friend std::strong_ordering operator<=>(const RationalGroupPoint& a, const RationalGroupPoint& b);
    friend bool operator==(const RationalGroupPoint& a, const RationalGroupPoint& b) {
        return (a <=> b) == std::strong_ordering::equal;
    }

    std::string to_string() const;

private:
    RationalGroupPoint(IntMatrix u, Int v) : u_(std::move(u)), v_(std::move(v)) {}
    IntMatrix u_;
    Int v_;
};

/// Max-entry p-adic absolute value, returned as the integer p^k (k may be 0).
/// Entries are integral over Z_p except for the denominator, so k >= 0.
Int padic_norm(const RationalGroupPoint& z, std::uint64_t p);

/// Max-entry distance |z - x|.
Rat max_distance(const RationalGroupPoint& z, const RatMatrix& x);
Rat max_distance(const RatMatrix& a, const RatMatrix& b);

/// B_n(x, eps): real ball around a dyadic center, times the p-adic shells of n.
struct BallSpec {
    RatMatrix center;
    Rat radius;
    std::uint64_t modulus = 1;
    Factorization factors;

    static constexpr unsigned kDefaultBits = 53;

    static BallSpec make(RatMatrix center, Rat radius, std::uint64_t modulus);
    /// Snaps each entry of `center` (row-major) to the 2^-bits grid.
    static BallSpec make(std::size_t n_dim, const std::vector<double>& center, Rat radius,
                         std::uint64_t modulus, unsigned bits = kDefaultBits);

    std::size_t dim() const { return center.dim(); }
};

RatMatrix snap_center(std::size_t n_dim, const std::vector<double>& center,
                      unsigned bits = BallSpec::kDefaultBits);

bool ball_membership(const RationalGroupPoint& z, const BallSpec& b);

/// Integer polynomial in the N^2 matrix entries (row-major variable order).
class Polynomial {
public:
    struct Term {
        Int coeff;
        std::vector<unsigned> exps;
    };

    Polynomial(std::size_t n_dim, std::vector<Term> terms);

    static Polynomial entry(std::size_t n_dim, std::size_t i, std::size_t j);
    static Polynomial constant(std::size_t n_dim, const Int& c);

    std::size_t n_dim() const { return n_dim_; }
    const std::vector<Term>& terms() const { return terms_; }
    unsigned degree() const;

    Rat eval(const RatMatrix& g) const;
    Int eval(const IntMatrix& g) const;
    /// Entries already reduced into [0, q).
    std::uint64_t eval_mod(const std::uint64_t* entries, std::uint64_t q) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);

private:
    void normalize();
    std::size_t n_dim_;
    std::vector<Term> terms_;
};

struct PolynomialFamily {
    std::vector<Polynomial> polys;

    explicit PolynomialFamily(std::vector<Polynomial> polys);

    std::size_t n_dim() const { return polys.front().n_dim(); }
    std::size_t t() const { return polys.size(); }
    unsigned total_degree() const;

    /// Comma-separated list of "entryIJ" (1-based), "trace-minus-2" (trace - N),
    /// "sum-of-entries"; one factor per name.
    static PolynomialFamily preset(const std::string& name, std::size_t n_dim);
};

struct FamilyValue {
    Rat value;
    std::optional<Int> numerator_value;
};

FamilyValue eval_family(const PolynomialFamily& f, const RationalGroupPoint& z,
                        bool with_numerator = false);

/// Product of f_i mod q; entries in [0, q).
std::uint64_t eval_family_mod(const PolynomialFamily& f, const std::uint64_t* entries,
                              std::uint64_t q);

} // namespace dioph
