#pragma once

// Integer and rational helpers shared by every module: prime tables,
// small-integer factorization, valuations, exact rounding and parsing.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace dioph {

using Int = mpz_class;
using Rat = mpq_class;

struct PrimePower {
    std::uint64_t p;
    unsigned e;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;

/// Primes <= limit, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(std::uint64_t n);

/// Trial division; fine for the moduli used here (n well below 2^40).
Factorization factor_u64(std::uint64_t n);

bool is_squarefree(std::uint64_t n);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

/// Throws InvalidArgument on overflow.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

Int int_pow(std::uint64_t base, unsigned exp);

/// Largest e with p^e | w; w must be nonzero.
unsigned valuation(const Int& w, std::uint64_t p);

/// Removes sign and every prime of `n_factors` from w. Returns 0 for w = 0.
Int strip_primes(const Int& w, const Factorization& n_factors);

struct IntFactorization {
    std::vector<Int> primes;     // ascending, with multiplicity
    std::vector<Int> composites; // cofactors left unsplit by the budget
    bool complete() const { return composites.empty(); }
    /// Lower bound on the number of prime factors; each composite counts as 2.
    unsigned count() const { return static_cast<unsigned>(primes.size() + 2 * composites.size()); }
};

struct FactorBudget {
    std::uint64_t trial_limit = 1'000'000;
    std::uint64_t rho_iterations = 2'000'000; // per cofactor
    std::uint64_t seed = 1;
};

/// |w| >= 1. Trial division, then Pollard-Brent.
IntFactorization factor_int(const Int& w, const FactorBudget& budget = {});

Int floor_rat(const Rat& x);
Int ceil_rat(const Rat& x);

/// Natural log of a positive rational, robust for huge numerators.
double log_rat(const Rat& x);
double log_int(const Int& x);

/// Nearest multiple of 2^-bits (ties away from zero). Doubles are already
/// dyadic, so bits >= 1074 reproduces x exactly.
Rat snap_dyadic(double x, unsigned bits);

/// Largest multiple of 2^-bits that is <= x.
Rat dyadic_floor(double x, unsigned bits);

/// Parses "3", "-7/12", "0.45", "1e-3", "2.5e2" exactly.
Rat parse_rational(std::string_view text);

std::string to_decimal(const Int& x);

/// "p/q" or "p" when q = 1.
std::string to_string(const Rat& x);

} // namespace dioph
