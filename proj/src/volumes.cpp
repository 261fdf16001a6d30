#include "dioph/volumes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "dioph/errors.hpp"

namespace dioph {

namespace {

struct HnfCounter {
    std::uint64_t p;
    std::size_t n;
    bool primitive_only;
    std::uint64_t budget;
    std::uint64_t visited = 0;
    Int count = 0;

    std::vector<unsigned> diag{};
    std::vector<std::uint64_t> pd{}; // p^diag

    void run(unsigned k) {
        diag.assign(n, 0);
        pd.assign(n, 1);
        compositions(0, k);
    }

    void compositions(std::size_t i, unsigned left) {
        if (i + 1 == n) {
            diag[i] = left;
            finish_diag();
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            diag[i] = e;
            compositions(i + 1, left - e);
        }
    }

    void finish_diag() {
        bool unit_diag = false;
        for (std::size_t i = 0; i < n; ++i) {
            pd[i] = checked_pow(p, diag[i]);
            unit_diag |= pd[i] == 1;
        }
        // Off-diagonal slots (i, j), i < j, each ranging over [0, p^diag[j]).
        std::vector<std::uint64_t> range;
        for (std::size_t j = 1; j < n; ++j)
            for (std::size_t i = 0; i < j; ++i)
                range.push_back(pd[j]);
        std::vector<std::uint64_t> b(range.size(), 0);
        while (true) {
            if (++visited > budget)
                throw BudgetExceeded(std::to_string(budget), "more than " + std::to_string(budget) + " forms");
            bool prim = unit_diag;
            for (std::size_t s = 0; s < b.size() && !prim; ++s)
                prim = b[s] % p != 0;
            if (prim || !primitive_only)
                ++count;
            std::size_t s = 0;
            while (s < b.size() && ++b[s] == range[s]) {
                b[s] = 0;
                ++s;
            }
            if (s == b.size())
                return;
        }
    }
};

void require_prime(std::uint64_t p) {
    if (!is_prime(p))
        throw InvalidArgument(std::to_string(p) + " is not prime");
}

void require_dim(std::size_t n_dim) {
    if (n_dim < 1)
        throw InvalidArgument("dimension must be >= 1");
}

} // namespace

Int hnf_coset_oracle(std::uint64_t p, unsigned l, std::size_t n_dim, std::uint64_t budget) {
    require_prime(p);
    require_dim(n_dim);
    HnfCounter c{p, n_dim, true, budget};
    c.run(static_cast<unsigned>(n_dim) * l);
    return c.count;
}

Int hnf_total_count(std::uint64_t p, unsigned k, std::size_t n_dim, std::uint64_t budget) {
    require_prime(p);
    require_dim(n_dim);
    HnfCounter c{p, n_dim, false, budget};
    c.run(k);
    return c.count;
}

Int sl2_ball_volume_closed_form(std::uint64_t p, unsigned l) {
    if (l == 0)
        return Int(1);
    return Int(static_cast<unsigned long>(p + 1)) * int_pow(p, 2 * l - 1);
}

// Larger SL_2 cells trust the closed form without recounting.
constexpr std::uint64_t kCrossCheckLimit = 200'000;

Int local_ball_volume(std::uint64_t p, unsigned l, std::size_t n_dim, std::uint64_t oracle_budget) {
    require_prime(p);
    static std::mutex mu;
    static std::map<std::tuple<std::uint64_t, unsigned, std::size_t>, Int> memo;
    const auto key = std::make_tuple(p, l, n_dim);
    {
        std::lock_guard lock(mu);
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
    }
    Int value;
    if (n_dim == 2) {
        value = sl2_ball_volume_closed_form(p, l);
        if (value <= Int(static_cast<unsigned long>(std::min(oracle_budget, kCrossCheckLimit)))) try {
            Int oracle = hnf_coset_oracle(p, l, 2, oracle_budget);
            if (oracle != value)
                throw std::logic_error("closed form " + value.get_str() + " disagrees with oracle " +
                                       oracle.get_str() + " at p = " + std::to_string(p));
        } catch (const BudgetExceeded&) {
        } catch (const InvalidArgument&) {
            // p^(2l) beyond 64 bits: nothing to cross-check against.
        }
    } else {
        try {
            value = hnf_coset_oracle(p, l, n_dim, oracle_budget);
        } catch (const BudgetExceeded& e) {
            throw UnsupportedDimension("N = " + std::to_string(n_dim) +
                                       " needs the oracle, which exceeds its budget: " + e.what());
        } catch (const InvalidArgument&) {
            throw UnsupportedDimension("N = " + std::to_string(n_dim) + " volume out of oracle range");
        }
    }
    std::lock_guard lock(mu);
    memo.emplace(key, value);
    return value;
}

LocalVolumeTable local_volume_table(std::uint64_t p, unsigned l_max, std::uint64_t oracle_budget) {
    require_prime(p);
    LocalVolumeTable table{p, {}};
    for (unsigned l = 0; l <= l_max; ++l) {
        LocalVolumeRow row{l, sl2_ball_volume_closed_form(p, l), std::nullopt, false};
        try {
            row.oracle = hnf_coset_oracle(p, l, 2, oracle_budget);
            row.match = *row.oracle == row.closed_form;
        } catch (const BudgetExceeded&) {
        } catch (const InvalidArgument&) {
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

Int finite_volume(std::uint64_t n, std::size_t n_dim) {
    if (n < 1)
        throw InvalidArgument("n must be >= 1");
    Int m = 1;
    for (const auto& pp : factor_u64(n))
        m *= local_ball_volume(pp.p, pp.e, n_dim);
    return m;
}

GrowthEstimate growth_exponent(std::uint64_t n_max, const std::optional<std::vector<std::uint64_t>>& primes,
                               std::size_t n_dim) {
    GrowthEstimate est;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        if (primes) {
            bool ok = true;
            for (const auto& pp : factor_u64(n))
                ok &= std::find(primes->begin(), primes->end(), pp.p) != primes->end();
            if (!ok)
                continue;
        }
        est.samples.emplace_back(n, finite_volume(n, n_dim));
    }
    if (est.samples.empty())
        return est;
    est.n_min = est.samples.front().first;
    est.n_max = est.samples.back().first;
    if (est.samples.size() < 2)
        return est;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(est.samples.size());
    for (const auto& [n, m] : est.samples) {
        double x = std::log(static_cast<double>(n));
        double y = log_int(m);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double den = k * sxx - sx * sx;
    if (den > 0)
        est.exponent = (k * sxy - sx * sy) / den;
    return est;
}

namespace {

// Solves A c = rhs over Q; false when singular.
bool solve_exact(std::vector<std::vector<Rat>> a, std::vector<Rat> rhs, std::vector<Rat>& out) {
    const std::size_t k = rhs.size();
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t piv = c;
        while (piv < k && a[piv][c] == 0)
            ++piv;
        if (piv == k)
            return false;
        std::swap(a[c], a[piv]);
        std::swap(rhs[c], rhs[piv]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == c || a[r][c] == 0)
                continue;
            Rat f = a[r][c] / a[c][c];
            for (std::size_t j = c; j < k; ++j)
                a[r][j] -= f * a[c][j];
            rhs[r] -= f * rhs[c];
        }
    }
    out.resize(k);
    for (std::size_t c = 0; c < k; ++c)
        out[c] = rhs[c] / a[c][c];
    return true;
}

} // namespace

Recurrence find_recurrence(const std::vector<Rat>& seq, unsigned max_order) {
    const std::size_t len = seq.size();
    for (unsigned k = 1; k <= max_order; ++k) {
        for (std::size_t s = 0; s + 2 * k + 1 <= len; ++s) {
            // Equations i = s .. len-k-1; at least k+1 of them.
            std::vector<std::vector<Rat>> a(k, std::vector<Rat>(k));
            std::vector<Rat> rhs(k);
            for (unsigned e = 0; e < k; ++e) {
                for (unsigned j = 0; j < k; ++j)
                    a[e][j] = seq[s + e + j];
                rhs[e] = seq[s + e + k];
            }
            std::vector<Rat> c;
            if (!solve_exact(a, rhs, c))
                continue;
            bool holds = true;
            for (std::size_t i = s; i + k < len && holds; ++i) {
                Rat acc = 0;
                for (unsigned j = 0; j < k; ++j)
                    acc += c[j] * seq[i + j];
                holds = acc == seq[i + k];
            }
            if (holds)
                return Recurrence{k, static_cast<unsigned>(s), c};
        }
    }
    throw NoRecurrenceFound(max_order);
}

RationalityReport poincare_rationality_check(std::uint64_t p, unsigned L, unsigned max_order) {
    if (L < 4)
        throw InvalidArgument("rationality check needs L >= 4");
    RationalityReport rep{p, {}, {}};
    std::vector<Rat> seq;
    for (unsigned l = 0; l <= L; ++l) {
        rep.values.push_back(local_ball_volume(p, l));
        seq.emplace_back(rep.values.back());
    }
    rep.recurrence = find_recurrence(seq, max_order);
    return rep;
}

namespace {

// Exponent e with |g k e_1|_p = p^e, where g = diag(p^l, p^-l) and the first
// column of k is (x, y) with v_p(y) = v (x a unit when v > 0).
long xi_exponent(unsigned l, unsigned v) {
    long a = -static_cast<long>(l);
    long b = static_cast<long>(l) - static_cast<long>(v);
    return std::max(a, b);
}

} // namespace

Rat harish_chandra_xi(std::uint64_t p, unsigned l, std::optional<unsigned> level) {
    require_prime(p);
    if (l == 0)
        return Rat(1);
    unsigned L = level.value_or(2 * l);
    if (L == 0)
        L = 1;
    // y = 0 mod p^L only pins v_p(y) >= L; the integrand must agree on all of them.
    auto resolves = [&](unsigned lev) { return xi_exponent(l, lev) == -static_cast<long>(l); };
    if (!resolves(L)) {
        ++L;
        if (!resolves(L))
            throw LevelInsufficient(L);
    }
    const std::uint64_t q = checked_pow(p, L);
    if (q > 100'000'000)
        throw BudgetExceeded("100000000", std::to_string(q));
    // Average over primitive first columns (x, y) mod p^L; each has p^L completions.
    const std::uint64_t all_x = q;
    const std::uint64_t unit_x = q - q / p;
    std::map<long, Int> weight;
    for (std::uint64_t y = 0; y < q; ++y) {
        unsigned v = 0;
        if (y == 0) {
            v = L;
        } else {
            for (std::uint64_t t = y; t % p == 0; t /= p)
                ++v;
        }
        weight[xi_exponent(l, v)] += Int(static_cast<unsigned long>(v == 0 ? all_x : unit_x));
    }
    Rat num = 0;
    Int total = 0;
    for (const auto& [e, w] : weight) {
        total += w;
        Rat f = e >= 0 ? Rat(Int(1), int_pow(p, static_cast<unsigned>(e))) : Rat(int_pow(p, static_cast<unsigned>(-e)));
        num += Rat(w) * f;
    }
    Rat xi = num / Rat(total);
    xi.canonicalize();
    return xi;
}

} // namespace dioph
