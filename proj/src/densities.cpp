#include "dioph/densities.hpp"

#include <array>
#include <cmath>
#include <deque>
#include <set>

namespace dioph {

Int sl_order(std::size_t n_dim, std::uint64_t q) {
    if (!is_squarefree(q))
        throw InvalidArgument("q must be square-free, got " + std::to_string(q));
    Int order = 1;
    for (const auto& pp : factor_u64(q)) {
        order *= int_pow(pp.p, static_cast<unsigned>(n_dim * (n_dim - 1) / 2));
        for (unsigned k = 2; k <= n_dim; ++k)
            order *= int_pow(pp.p, k) - 1;
    }
    return order;
}

namespace {

using u64 = std::uint64_t;

u64 mulm(u64 a, u64 b, u64 q) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % q); }

// Inverse of a mod q, or 0 when gcd(a, q) > 1 (q > 1).
u64 inverse_mod(u64 a, u64 q) {
    __int128 r0 = q, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
        __int128 k = r0 / r1;
        __int128 tmp = r0 - k * r1; r0 = r1; r1 = tmp;
        tmp = t0 - k * t1; t0 = t1; t1 = tmp;
    }
    if (r0 != 1)
        return 0;
    if (t0 < 0)
        t0 += q;
    return static_cast<u64>(t0);
}

void count_sl2(const PolynomialFamily& f, u64 q, u64& order, u64& zeros) {
    std::array<u64, 4> g{};
    auto visit = [&] {
        ++order;
        if (eval_family_mod(f, g.data(), q) == 0)
            ++zeros;
    };
    for (u64 a = 0; a < q; ++a) {
        u64 ainv = inverse_mod(a, q);
        for (u64 b = 0; b < q; ++b)
            for (u64 c = 0; c < q; ++c) {
                u64 rhs = (1 + mulm(b, c, q)) % q;
                g = {a, b, c, 0};
                if (ainv != 0) {
                    g[3] = mulm(ainv, rhs, q);
                    visit();
                } else {
                    for (u64 d = 0; d < q; ++d)
                        if (mulm(a, d, q) == rhs) {
                            g[3] = d;
                            visit();
                        }
                }
            }
    }
}

u64 det_mod(const std::vector<u64>& g, std::size_t N, u64 q) {
    if (N == 1)
        return g[0] % q;
    if (N == 3) {
        auto m = [&](std::size_t i, std::size_t j) { return g[i * 3 + j]; };
        auto minor = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
            return (mulm(a, d, q) + q - mulm(b, c, q)) % q;
        };
        u64 t = mulm(m(0, 0), minor(m(1, 1), m(1, 2), m(2, 1), m(2, 2)), q);
        t = (t + q - mulm(m(0, 1), minor(m(1, 0), m(1, 2), m(2, 0), m(2, 2)), q)) % q;
        t = (t + mulm(m(0, 2), minor(m(1, 0), m(1, 1), m(2, 0), m(2, 1)), q)) % q;
        return t;
    }
    // Laplace expansion along the first row; only used for tiny N.
    u64 total = 0;
    for (std::size_t j = 0; j < N; ++j) {
        std::vector<u64> sub;
        for (std::size_t r = 1; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c)
                if (c != j)
                    sub.push_back(g[r * N + c]);
        u64 term = mulm(g[j], det_mod(sub, N - 1, q), q);
        total = (j % 2 == 0) ? (total + term) % q : (total + q - term) % q;
    }
    return total;
}

void count_generic(const PolynomialFamily& f, u64 q, u64& order, u64& zeros) {
    const std::size_t N = f.n_dim();
    std::vector<u64> g(N * N, 0);
    while (true) {
        if (det_mod(g, N, q) == 1 % q) {
            ++order;
            if (eval_family_mod(f, g.data(), q) == 0)
                ++zeros;
        }
        std::size_t k = 0;
        while (k < g.size() && ++g[k] == q) {
            g[k] = 0;
            ++k;
        }
        if (k == g.size())
            return;
    }
}

LocalDensity direct_density(const PolynomialFamily& f, u64 q) {
    u64 order = 0, zeros = 0;
    if (q == 1) {
        order = zeros = 1;
    } else if (f.n_dim() == 2) {
        count_sl2(f, q, order, zeros);
    } else {
        count_generic(f, q, order, zeros);
    }
    LocalDensity d;
    d.q = q;
    d.order = Int(static_cast<unsigned long>(order));
    d.zero_count = Int(static_cast<unsigned long>(zeros));
    d.rho = Rat(Int(static_cast<unsigned long>(q)) * d.zero_count, d.order);
    d.rho.canonicalize();
    d.route = DensityRoute::Direct;
    return d;
}

} // namespace

LocalDensity local_density(const PolynomialFamily& f, std::uint64_t q, DensityRoute route, std::uint64_t budget) {
    if (q < 1)
        throw InvalidArgument("q must be >= 1");
    Int order = sl_order(f.n_dim(), q);
    const auto factors = factor_u64(q);
    if (route == DensityRoute::Auto)
        route = factors.size() > 1 ? DensityRoute::Product : DensityRoute::Direct;
    if (route == DensityRoute::Direct) {
        if (order > Int(std::to_string(budget)))
            throw BudgetExceeded(std::to_string(budget), order.get_str());
        // The generic odometer visits q^(N^2) cells, not just the group.
        if (f.n_dim() != 2 && int_pow(q, static_cast<unsigned>(f.n_dim() * f.n_dim())) > Int(std::to_string(budget) + "0"))
            throw BudgetExceeded(std::to_string(budget), order.get_str());
        LocalDensity d = direct_density(f, q);
        if (d.order != order)
            throw std::logic_error("enumerated |SL_N(Z/q)| disagrees with the group order formula");
        return d;
    }
    LocalDensity d;
    d.q = q;
    d.order = 1;
    d.zero_count = 1;
    d.rho = 1;
    d.route = DensityRoute::Product;
    for (const auto& pp : factors) {
        LocalDensity dp = local_density(f, pp.p, DensityRoute::Direct, budget);
        d.order *= dp.order;
        d.zero_count *= dp.zero_count;
        d.rho *= dp.rho;
    }
    return d;
}

DensityFunction::DensityFunction(PolynomialFamily family, std::uint64_t n, std::uint64_t budget)
    : family_(std::move(family)), n_(n), budget_(budget) {
    if (n < 1)
        throw InvalidArgument("n must be >= 1");
}

void DensityFunction::ensure_primes_up_to(std::uint64_t z) {
    if (z <= coverage_)
        return;
    for (std::uint64_t p : primes_up_to(z)) {
        if (n_ % p == 0 || values_.count(p))
            continue;
        values_.emplace(p, local_density(family_, p, DensityRoute::Direct, budget_));
    }
    coverage_ = z;
}

const LocalDensity& DensityFunction::at_prime(std::uint64_t p) const {
    auto it = values_.find(p);
    if (it == values_.end())
        throw MissingDensities(p);
    return it->second;
}

Rat DensityFunction::rho(std::uint64_t q) const {
    if (gcd_u64(q, n_) != 1)
        throw InvalidArgument("rho(q) needs gcd(q, n) = 1");
    Rat r = 1;
    for (const auto& pp : factor_u64(q)) {
        if (pp.e > 1)
            throw InvalidArgument("q must be square-free, got " + std::to_string(q));
        r *= at_prime(pp.p).rho;
    }
    return r;
}

std::vector<LangWeilRow> lang_weil_report(const PolynomialFamily& f, const std::vector<std::uint64_t>& primes,
                                          double threshold, std::uint64_t budget) {
    std::vector<LangWeilRow> rows;
    const Rat t(static_cast<unsigned long>(f.t()));
    for (std::uint64_t p : primes) {
        if (!is_prime(p))
            throw InvalidArgument(std::to_string(p) + " is not prime");
        LocalDensity d = local_density(f, p, DensityRoute::Direct, budget);
        double dev = std::sqrt(static_cast<double>(p)) * std::abs(Rat(d.rho - t).get_d());
        rows.push_back({p, d.rho, dev, dev > threshold});
    }
    return rows;
}

std::vector<RationalGroupPoint> gamma_n_words(std::size_t n_dim, std::uint64_t n, std::size_t count) {
    if (n < 1)
        throw InvalidArgument("n must be >= 1");
    std::vector<RationalGroupPoint> gens;
    std::vector<Rat> steps{Rat(1), Rat(-1)};
    if (n > 1) {
        steps.emplace_back(Int(1), Int(static_cast<unsigned long>(n)));
        steps.emplace_back(Int(-1), Int(static_cast<unsigned long>(n)));
    }
    for (std::size_t i = 0; i < n_dim; ++i)
        for (std::size_t j = 0; j < n_dim; ++j) {
            if (i == j)
                continue;
            for (const Rat& s : steps) {
                RatMatrix e = RatMatrix::identity(n_dim);
                e(i, j) = s;
                gens.push_back(RationalGroupPoint::reduce(e));
            }
        }
    std::vector<RationalGroupPoint> out;
    std::set<RationalGroupPoint> seen;
    std::deque<RationalGroupPoint> queue;
    auto id = RationalGroupPoint::identity(n_dim);
    seen.insert(id);
    queue.push_back(id);
    while (!queue.empty() && out.size() < count) {
        RationalGroupPoint g = queue.front();
        queue.pop_front();
        out.push_back(g);
        for (const auto& s : gens) {
            RationalGroupPoint h = g * s;
            if (seen.insert(h).second)
                queue.push_back(std::move(h));
        }
    }
    return out;
}

Int n_coprime_value(const Rat& value, const Factorization& n_factors) {
    if (value == 0)
        return Int(0);
    Int den_rest = strip_primes(value.get_den(), n_factors);
    if (den_rest != 1)
        throw InvalidArgument("value " + to_string(value) + " is not in Z[1/n]");
    return strip_primes(value.get_num(), n_factors);
}

GcdCertificate delta_n(const PolynomialFamily& f, std::uint64_t n, std::size_t budget, std::size_t window) {
    if (budget < 100)
        throw InvalidArgument("delta_n needs a budget of at least 100 samples");
    const auto nf = factor_u64(n);
    GcdCertificate cert;
    cert.window = window;
    Int g = 0;
    std::size_t stable = 0;
    for (const auto& gamma : gamma_n_words(f.n_dim(), n, budget)) {
        ++cert.sample_size;
        Int c = n_coprime_value(eval_family(f, gamma).value, nf);
        Int next;
        mpz_gcd(next.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (next != g) {
            g = next;
            stable = 0;
        } else if (g != 0) {
            ++stable;
        }
        if (g == 1 || (g != 0 && stable >= window)) {
            cert.certified = true;
            break;
        }
    }
    cert.delta = g == 0 ? Int(0) : g;
    if (g > 1) {
        cert.factors = factor_int(g);
        cert.delta_count = cert.factors.count();
    }
    return cert;
}

} // namespace dioph
