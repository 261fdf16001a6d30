#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dioph/core.hpp"

namespace dioph {

enum class DensityRoute { Auto, Direct, Product };

struct LocalDensity {
    std::uint64_t q = 1;
    Rat rho;           // q * zero_count / order
    Int order;         // |SL_N(Z/q)|
    Int zero_count;    // elements with f_1...f_t = 0 mod q
    DensityRoute route = DensityRoute::Direct;
};

/// |SL_N(Z/q)| for square-free q.
Int sl_order(std::size_t n_dim, std::uint64_t q);

/// Exhaustive count over SL_N(Z/q), q square-free. Product route multiplies
/// the prime-level counts. Throws BudgetExceeded when |SL_N(Z/q)| > budget.
LocalDensity local_density(const PolynomialFamily& f, std::uint64_t q,
                           DensityRoute route = DensityRoute::Auto,
                           std::uint64_t budget = 100'000'000);

/// rho on primes prime to n, memoized; square-free q by multiplicativity.
class DensityFunction {
public:
    DensityFunction(PolynomialFamily family, std::uint64_t n, std::uint64_t budget = 100'000'000);

    /// Computes every missing prime p <= z with gcd(p, n) = 1.
    void ensure_primes_up_to(std::uint64_t z);

    const LocalDensity& at_prime(std::uint64_t p) const; // MissingDensities if absent
    Rat rho(std::uint64_t q) const;
    std::uint64_t coverage() const { return coverage_; }

    const PolynomialFamily& family() const { return family_; }
    std::uint64_t n() const { return n_; }
    const std::map<std::uint64_t, LocalDensity>& values() const { return values_; }

private:
    PolynomialFamily family_;
    std::uint64_t n_;
    std::uint64_t budget_;
    std::uint64_t coverage_ = 1;
    std::map<std::uint64_t, LocalDensity> values_;
};

struct LangWeilRow {
    std::uint64_t p;
    Rat rho;
    double deviation; // sqrt(p) * |rho(p) - t|
    bool flagged;
};

std::vector<LangWeilRow> lang_weil_report(const PolynomialFamily& f, const std::vector<std::uint64_t>& primes,
                                          double threshold = 5.0, std::uint64_t budget = 100'000'000);

/// Breadth-first words in the elementary generators E_ij(+-1), E_ij(+-1/n),
/// distinct elements in discovery order, starting with the identity.
std::vector<RationalGroupPoint> gamma_n_words(std::size_t n_dim, std::uint64_t n, std::size_t count);

struct GcdCertificate {
    Int delta;                // Delta_n(f), prime to n
    IntFactorization factors;
    unsigned delta_count = 0; // delta_n(f): prime factors with multiplicity
    std::size_t sample_size = 0;
    std::size_t window = 0;
    bool certified = false;   // gcd stabilized (or reached 1) within budget
};

/// n-coprime part of f(g) for f(g) in Z[1/n]; zero for f(g) = 0.
Int n_coprime_value(const Rat& value, const Factorization& n_factors);

GcdCertificate delta_n(const PolynomialFamily& f, std::uint64_t n, std::size_t budget = 2000,
                       std::size_t window = 50);

} // namespace dioph
