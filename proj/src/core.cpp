#include "dioph/core.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace dioph {

Rat determinant(const RatMatrix& m) {
    const std::size_t n = m.dim();
    RatMatrix a = m;
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && a(pivot, c) == 0)
            ++pivot;
        if (pivot == n)
            return Rat(0);
        if (pivot != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(c, j), a(pivot, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a(r, c) == 0)
                continue;
            Rat f = a(r, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j)
                a(r, j) -= f * a(c, j);
        }
    }
    return det;
}

// Bareiss fraction-free elimination.
Int determinant(const IntMatrix& m) {
    const std::size_t n = m.dim();
    if (n == 0)
        return Int(1);
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && a(r, k) == 0)
                ++r;
            if (r == n)
                return Int(0);
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(k, j), a(r, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = t;
            }
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            r(i, j) = Rat(m(i, j));
    return r;
}

RationalGroupPoint RationalGroupPoint::reduce(const RatMatrix& raw) {
    Rat det = determinant(raw);
    if (det != 1)
        throw NotUnimodular(dioph::to_string(det));
    // With v the lcm of the denominators, gcd(u, v) = 1 holds automatically.
    Int v = 1;
    for (const Rat& x : raw.entries())
        mpz_lcm(v.get_mpz_t(), v.get_mpz_t(), x.get_den_mpz_t());
    IntMatrix u(raw.dim());
    for (std::size_t i = 0; i < raw.dim(); ++i)
        for (std::size_t j = 0; j < raw.dim(); ++j) {
            Rat s = raw(i, j) * Rat(v);
            u(i, j) = s.get_num();
        }
    return RationalGroupPoint(std::move(u), std::move(v));
}

RationalGroupPoint RationalGroupPoint::from_reduced(IntMatrix u, Int v) {
    if (u.dim() == 0)
        throw InvalidArgument("empty matrix");
    if (v < 1)
        throw InvalidArgument("denominator must be positive");
    Int g = v;
    for (const Int& x : u.entries())
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g != 1)
        throw InvalidArgument("gcd(u, v) = " + to_decimal(g) + ", expected 1");
    Int det = determinant(u);
    Int vn;
    mpz_pow_ui(vn.get_mpz_t(), v.get_mpz_t(), u.dim());
    if (det != vn) {
        Rat d(det, vn);
        d.canonicalize();
        throw NotUnimodular(dioph::to_string(d));
    }
    return RationalGroupPoint(std::move(u), std::move(v));
}

RationalGroupPoint RationalGroupPoint::identity(std::size_t n) {
    return RationalGroupPoint(IntMatrix::identity(n), Int(1));
}

Rat RationalGroupPoint::entry(std::size_t i, std::size_t j) const {
    Rat r(u_(i, j), v_);
    r.canonicalize();
    return r;
}

RatMatrix RationalGroupPoint::to_rational() const {
    RatMatrix r(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            r(i, j) = entry(i, j);
    return r;
}

RationalGroupPoint operator*(const RationalGroupPoint& a, const RationalGroupPoint& b) {
    if (a.dim() != b.dim())
        throw InvalidArgument("dimension mismatch in product");
    IntMatrix u = a.u_ * b.u_;
    Int v = a.v_ * b.v_;
    Int g = v;
    for (const Int& x : u.entries())
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g != 1) {
        for (std::size_t i = 0; i < u.dim(); ++i)
            for (std::size_t j = 0; j < u.dim(); ++j)
                mpz_divexact(u(i, j).get_mpz_t(), u(i, j).get_mpz_t(), g.get_mpz_t());
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
    return RationalGroupPoint(std::move(u), std::move(v));
}

std::strong_ordering operator<=>(const RationalGroupPoint& a, const RationalGroupPoint& b) {
    if (a.dim() != b.dim())
        return a.dim() <=> b.dim();
    const auto& x = a.u_.entries();
    const auto& y = b.u_.entries();
    for (std::size_t k = 0; k < x.size(); ++k) {
        int c = cmp(x[k], y[k]);
        if (c != 0)
            return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    int c = cmp(a.v_, b.v_);
    if (c != 0)
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string RationalGroupPoint::to_string() const {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < dim(); ++i) {
        out << (i ? ",[" : "[");
        for (std::size_t j = 0; j < dim(); ++j)
            out << (j ? "," : "") << u_(i, j).get_str();
        out << ']';
    }
    out << "]/" << v_.get_str();
    return out.str();
}

Int padic_norm(const RationalGroupPoint& z, std::uint64_t p) {
    if (!is_prime(p))
        throw InvalidArgument("padic_norm needs a prime, got " + std::to_string(p));
    // |u_ij / v|_p = p^{v_p(v) - v_p(u_ij)}; the max is at the entry of least valuation.
    unsigned vv = valuation(z.v(), p);
    unsigned least = vv;
    for (const Int& x : z.u().entries()) {
        if (x == 0)
            continue;
        least = std::min(least, valuation(x, p));
        if (least == 0)
            break;
    }
    return int_pow(p, vv - std::min(least, vv));
}

Rat max_distance(const RatMatrix& a, const RatMatrix& b) {
    if (a.dim() != b.dim())
        throw InvalidArgument("dimension mismatch in distance");
    Rat best = 0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        Rat d = abs(a.entries()[k] - b.entries()[k]);
        if (d > best)
            best = d;
    }
    return best;
}

Rat max_distance(const RationalGroupPoint& z, const RatMatrix& x) {
    return max_distance(z.to_rational(), x);
}

RatMatrix snap_center(std::size_t n_dim, const std::vector<double>& center, unsigned bits) {
    if (center.size() != n_dim * n_dim)
        throw InvalidArgument("center needs " + std::to_string(n_dim * n_dim) + " entries");
    RatMatrix c(n_dim);
    for (std::size_t k = 0; k < center.size(); ++k)
        c(k / n_dim, k % n_dim) = snap_dyadic(center[k], bits);
    return c;
}

BallSpec BallSpec::make(RatMatrix center, Rat radius, std::uint64_t modulus) {
    if (center.dim() == 0)
        throw InvalidArgument("empty center");
    if (radius <= 0)
        throw InvalidArgument("radius must be positive");
    if (modulus < 1)
        throw InvalidArgument("modulus must be >= 1");
    BallSpec b;
    b.center = std::move(center);
    b.radius = std::move(radius);
    b.modulus = modulus;
    b.factors = factor_u64(modulus);
    return b;
}

BallSpec BallSpec::make(std::size_t n_dim, const std::vector<double>& center, Rat radius,
                        std::uint64_t modulus, unsigned bits) {
    return make(snap_center(n_dim, center, bits), std::move(radius), modulus);
}

bool ball_membership(const RationalGroupPoint& z, const BallSpec& b) {
    if (z.dim() != b.dim())
        return false;
    if (max_distance(z, b.center) > b.radius)
        return false;
    bool shells = true;
    for (const auto& pp : b.factors)
        if (padic_norm(z, pp.p) != int_pow(pp.p, pp.e)) {
            shells = false;
            break;
        }
    // The shells alone fix the n-part of den(z); den(z) = n also rules out foreign primes.
    if (shells && z.den() != b.modulus)
        return false;
    if (!shells && z.den() == b.modulus)
        throw std::logic_error("p-adic shells disagree with den(z) = n");
    return shells;
}

Polynomial::Polynomial(std::size_t n_dim, std::vector<Term> terms)
    : n_dim_(n_dim), terms_(std::move(terms)) {
    for (const auto& t : terms_)
        if (t.exps.size() != n_dim * n_dim)
            throw InvalidArgument("monomial needs " + std::to_string(n_dim * n_dim) + " exponents");
    normalize();
    if (terms_.empty())
        throw InvalidArgument("zero polynomial");
}

void Polynomial::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.exps < b.exps; });
    std::vector<Term> merged;
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().exps == t.exps)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const Term& t) { return t.coeff == 0; });
    terms_ = std::move(merged);
}

Polynomial Polynomial::entry(std::size_t n_dim, std::size_t i, std::size_t j) {
    if (i >= n_dim || j >= n_dim)
        throw InvalidArgument("entry index out of range");
    std::vector<unsigned> e(n_dim * n_dim, 0);
    e[i * n_dim + j] = 1;
    return Polynomial(n_dim, {Term{Int(1), e}});
}

Polynomial Polynomial::constant(std::size_t n_dim, const Int& c) {
    return Polynomial(n_dim, {Term{c, std::vector<unsigned>(n_dim * n_dim, 0)}});
}

unsigned Polynomial::degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) {
        unsigned s = 0;
        for (unsigned e : t.exps)
            s += e;
        d = std::max(d, s);
    }
    return d;
}

namespace {

template <class M, class T>
T eval_terms(const std::vector<Polynomial::Term>& terms, const M& g) {
    T sum = 0;
    const auto& x = g.entries();
    for (const auto& t : terms) {
        T m = t.coeff;
        for (std::size_t k = 0; k < t.exps.size(); ++k)
            for (unsigned e = 0; e < t.exps[k]; ++e)
                m *= x[k];
        sum += m;
    }
    return sum;
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

} // namespace

Rat Polynomial::eval(const RatMatrix& g) const {
    if (g.dim() != n_dim_)
        throw InvalidArgument("dimension mismatch in polynomial evaluation");
    Rat r = eval_terms<RatMatrix, Rat>(terms_, g);
    r.canonicalize();
    return r;
}

Int Polynomial::eval(const IntMatrix& g) const {
    if (g.dim() != n_dim_)
        throw InvalidArgument("dimension mismatch in polynomial evaluation");
    return eval_terms<IntMatrix, Int>(terms_, g);
}

std::uint64_t Polynomial::eval_mod(const std::uint64_t* x, std::uint64_t q) const {
    std::uint64_t sum = 0;
    for (const auto& t : terms_) {
        Int c = t.coeff % Int(q);
        if (c < 0)
            c += q;
        std::uint64_t m = c.get_ui();
        for (std::size_t k = 0; k < t.exps.size(); ++k)
            for (unsigned e = 0; e < t.exps[k]; ++e)
                m = mod_mul(m, x[k], q);
        sum = (sum + m) % q;
    }
    return sum;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    if (a.n_dim_ != b.n_dim_)
        throw InvalidArgument("dimension mismatch in polynomial sum");
    auto terms = a.terms_;
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return Polynomial(a.n_dim_, std::move(terms));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    auto neg = b.terms_;
    for (auto& t : neg)
        t.coeff = -t.coeff;
    return a + Polynomial(b.n_dim_, std::move(neg));
}

PolynomialFamily::PolynomialFamily(std::vector<Polynomial> p) : polys(std::move(p)) {
    if (polys.empty())
        throw InvalidArgument("polynomial family needs t >= 1");
    for (const auto& f : polys)
        if (f.n_dim() != polys.front().n_dim())
            throw InvalidArgument("family mixes dimensions");
}

unsigned PolynomialFamily::total_degree() const {
    unsigned d = 0;
    for (const auto& f : polys)
        d += f.degree();
    return d;
}

PolynomialFamily PolynomialFamily::preset(const std::string& names, std::size_t n_dim) {
    std::vector<Polynomial> out;
    std::stringstream ss(names);
    std::string name;
    while (std::getline(ss, name, ',')) {
        if (name.size() == 7 && name.starts_with("entry") && std::isdigit(name[5]) &&
            std::isdigit(name[6])) {
            std::size_t i = name[5] - '1', j = name[6] - '1';
            out.push_back(Polynomial::entry(n_dim, i, j));
        } else if (name == "trace-minus-2") {
            Polynomial p = Polynomial::entry(n_dim, 0, 0);
            for (std::size_t i = 1; i < n_dim; ++i)
                p = p + Polynomial::entry(n_dim, i, i);
            out.push_back(p - Polynomial::constant(n_dim, Int(static_cast<unsigned long>(n_dim))));
        } else if (name == "sum-of-entries") {
            Polynomial p = Polynomial::entry(n_dim, 0, 0);
            for (std::size_t k = 1; k < n_dim * n_dim; ++k)
                p = p + Polynomial::entry(n_dim, k / n_dim, k % n_dim);
            out.push_back(p);
        } else {
            throw InvalidArgument("unknown polynomial preset '" + name + "'");
        }
    }
    return PolynomialFamily(std::move(out));
}

FamilyValue eval_family(const PolynomialFamily& f, const RationalGroupPoint& z, bool with_numerator) {
    if (z.dim() != f.n_dim())
        throw InvalidArgument("dimension mismatch between family and point");
    FamilyValue out;
    RatMatrix g = z.to_rational();
    out.value = 1;
    for (const auto& p : f.polys)
        out.value *= p.eval(g);
    if (with_numerator) {
        Int w = 1;
        for (const auto& p : f.polys)
            w *= p.eval(z.u());
        out.numerator_value = w;
    }
    return out;
}

std::uint64_t eval_family_mod(const PolynomialFamily& f, const std::uint64_t* entries, std::uint64_t q) {
    std::uint64_t r = 1 % q;
    for (const auto& p : f.polys)
        r = mod_mul(r, p.eval_mod(entries, q), q);
    return r;
}

} // namespace dioph
