#include "dioph/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dioph/errors.hpp"

namespace dioph {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ZeroValue: return "ZeroValue";
    case ErrorCode::MissingDensities: return "MissingDensities";
    case ErrorCode::AlphaTooLarge: return "AlphaTooLarge";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::LevelInsufficient: return "LevelInsufficient";
    case ErrorCode::NoRecurrenceFound: return "NoRecurrenceFound";
    case ErrorCode::Aborted: return "Aborted";
    }
    return "Unknown";
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> primes;
    if (limit < 2)
        return primes;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i])
            continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i)
            composite[j] = true;
    }
    return primes;
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0)
            return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is deterministic below 3.3e24.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

Factorization factor_u64(std::uint64_t n) {
    if (n == 0)
        throw InvalidArgument("cannot factor 0");
    Factorization out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p)
            continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1)
        out.push_back({n, 1});
    return out;
}

bool is_squarefree(std::uint64_t n) {
    if (n == 0)
        return false;
    for (const auto& pp : factor_u64(n))
        if (pp.e > 1)
            return false;
    return true;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
            throw InvalidArgument("integer power overflows 64 bits");
        r *= base;
    }
    return r;
}

Int int_pow(std::uint64_t base, unsigned exp) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

unsigned valuation(const Int& w, std::uint64_t p) {
    if (w == 0)
        throw InvalidArgument("valuation of zero");
    Int q = w;
    unsigned e = 0;
    while (mpz_divisible_ui_p(q.get_mpz_t(), p)) {
        mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), p);
        ++e;
    }
    return e;
}

Int strip_primes(const Int& w, const Factorization& n_factors) {
    Int q = abs(w);
    if (q == 0)
        return q;
    for (const auto& pp : n_factors)
        while (mpz_divisible_ui_p(q.get_mpz_t(), pp.p))
            mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), pp.p);
    return q;
}

Int floor_rat(const Rat& x) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

Int ceil_rat(const Rat& x) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

double log_int(const Int& x) {
    if (x <= 0)
        throw InvalidArgument("log of non-positive integer");
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

double log_rat(const Rat& x) {
    if (x <= 0)
        throw InvalidArgument("log of non-positive rational");
    return log_int(x.get_num()) - log_int(x.get_den());
}

Rat snap_dyadic(double x, unsigned bits) {
    if (!std::isfinite(x))
        throw InvalidArgument("cannot snap a non-finite value");
    Rat exact(x);
    Rat scaled = exact * Rat(int_pow(2, bits));
    Rat half(1, 2);
    Int n = scaled >= 0 ? floor_rat(scaled + half) : ceil_rat(scaled - half);
    Rat out(n, int_pow(2, bits));
    out.canonicalize();
    return out;
}

Rat dyadic_floor(double x, unsigned bits) {
    if (!std::isfinite(x))
        throw InvalidArgument("cannot snap a non-finite value");
    Rat scaled = Rat(x) * Rat(int_pow(2, bits));
    Rat out(floor_rat(scaled), int_pow(2, bits));
    out.canonicalize();
    return out;
}

Rat parse_rational(std::string_view text) {
    std::string s(text);
    auto fail = [&]() -> Rat { throw InvalidArgument("not a rational number: '" + s + "'"); };
    if (s.empty())
        return fail();
    if (auto slash = s.find('/'); slash != std::string::npos) {
        Rat num = parse_rational(s.substr(0, slash));
        Rat den = parse_rational(s.substr(slash + 1));
        if (den == 0)
            return fail();
        Rat r = num / den;
        r.canonicalize();
        return r;
    }
    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-')
        negative = s[pos++] == '-';
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    for (; pos < s.size() && s[pos] != 'e' && s[pos] != 'E'; ++pos) {
        char c = s[pos];
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (c >= '0' && c <= '9') {
            digits.push_back(c);
            if (seen_point)
                ++frac_digits;
        } else {
            return fail();
        }
    }
    if (digits.empty())
        return fail();
    long exponent = 0;
    if (pos < s.size()) {
        try {
            std::size_t used = 0;
            exponent = std::stol(s.substr(pos + 1), &used);
            if (used != s.size() - pos - 1)
                return fail();
        } catch (const std::exception&) {
            return fail();
        }
    }
    Int mantissa(digits, 10);
    long shift = exponent - frac_digits;
    if (shift > 4096 || shift < -4096)
        return fail();
    Rat r(mantissa);
    Int scale = int_pow(10, static_cast<unsigned>(shift < 0 ? -shift : shift));
    if (shift >= 0)
        r *= scale;
    else
        r /= scale;
    r.canonicalize();
    return negative ? Rat(-r) : r;
}

std::string to_decimal(const Int& x) { return x.get_str(10); }

std::string to_string(const Rat& x) { return x.get_str(10); }

} // namespace dioph

namespace dioph {

namespace {

const std::vector<std::uint64_t>& default_trial_primes() {
    static const std::vector<std::uint64_t> table = primes_up_to(1'000'000);
    return table;
}

bool probable_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

// Brent's cycle variant of Pollard rho; 0 when the budget runs out.
Int pollard_brent(const Int& n, std::uint64_t c0, std::uint64_t max_iter) {
    if (mpz_even_p(n.get_mpz_t()))
        return Int(2);
    Int c = c0, y = 2, x, ys, q = 1, g = 1, t;
    const std::uint64_t m = 128;
    std::uint64_t r = 1, iter = 0;
    auto f = [&](Int& v) {
        v = v * v + c;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    do {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i)
            f(y);
        std::uint64_t k = 0;
        do {
            ys = y;
            for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                f(y);
                t = abs(x - y);
                q = q * t % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
            iter += m;
        } while (k < r && g == 1 && iter < max_iter);
        r *= 2;
    } while (g == 1 && iter < max_iter);
    if (g == n) {
        do {
            f(ys);
            t = abs(x - ys);
            mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    if (g == 1 || g == n)
        return Int(0);
    return g;
}

} // namespace

IntFactorization factor_int(const Int& w, const FactorBudget& budget) {
    IntFactorization out;
    Int n = abs(w);
    if (n == 0)
        throw InvalidArgument("cannot factor 0");
    std::vector<std::uint64_t> custom;
    if (budget.trial_limit > 1'000'000)
        custom = primes_up_to(budget.trial_limit);
    const auto& trial = custom.empty() ? default_trial_primes() : custom;
    for (std::uint64_t p : trial) {
        if (p > budget.trial_limit || Int(static_cast<unsigned long>(p)) * p > n)
            break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            out.primes.emplace_back(static_cast<unsigned long>(p));
        }
    }
    std::vector<Int> stack;
    if (n > 1)
        stack.push_back(n);
    while (!stack.empty()) {
        Int m = stack.back();
        stack.pop_back();
        if (probable_prime(m)) {
            out.primes.push_back(m);
            continue;
        }
        Int d = 0;
        for (std::uint64_t attempt = 0; attempt < 8 && d == 0; ++attempt)
            d = pollard_brent(m, budget.seed + attempt, budget.rho_iterations);
        if (d == 0) {
            out.composites.push_back(m);
            continue;
        }
        stack.push_back(d);
        stack.push_back(m / d);
    }
    std::sort(out.primes.begin(), out.primes.end());
    return out;
}

} // namespace dioph
