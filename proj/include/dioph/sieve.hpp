#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dioph/densities.hpp"
#include "dioph/enumerate.hpp"
#include "dioph/json_io.hpp"

namespace dioph {

/// w = unit of Z[1/n] times [w]_n.
struct SievedValue {
    Rat raw;
    std::uint64_t n = 1;
    Int coprime_part;
    IntFactorization factors;
    unsigned factor_count = 0; // lower bound when factors are incomplete
    bool complete = true;
};

/// Throws ZeroValue for w = 0 and InvalidArgument when w is not in Z[1/n].
SievedValue coprime_part(const Rat& w, std::uint64_t n, const FactorBudget& budget = {});

/// Empty when the factorization budget ran out before deciding.
std::optional<bool> is_r_prime(const RationalGroupPoint& z, const PolynomialFamily& f, std::uint64_t n,
                               unsigned r, const FactorBudget& budget = {});

/// a_k: number of points with [f(z)]_n = k (k = 0 for zeros of f).
std::map<Int, std::uint64_t> value_histogram(const std::vector<RationalGroupPoint>& points,
                                             const PolynomialFamily& f, std::uint64_t n);

/// Sum of a_k over k = 0 mod q.
std::uint64_t residue_class_sum(const std::map<Int, std::uint64_t>& histogram, std::uint64_t q);

struct AxiomParams {
    std::uint64_t q_max = 30;
    double w = 2;   // (A2) window [w, z)
    double z = 30;
    double l = 3;   // lower deviation allowance
    double c3 = 3;  // upper deviation allowance
};

struct AxiomReport {
    std::uint64_t T = 0;
    std::map<std::uint64_t, Rat> remainders; // square-free q <= q_max prime to Delta*n
    Rat sum_abs_remainders;
    std::optional<double> zeta; // 1 - log(sum |R_q|) / log T
    bool a0_holds = true;       // rho(1) = 1 and 0 <= rho(p) < p
    double a2_sum = 0;          // sum_{w <= p < z} rho(p) log p / p
    double a2_main = 0;         // t log(z / w)
    bool a2_holds = true;       // -l <= a2_sum - a2_main <= c3
};

/// `delta` is Delta_n(f); primes dividing delta*n are left out.
AxiomReport axiom_report(const std::vector<RationalGroupPoint>& points, const PolynomialFamily& f,
                         DensityFunction& rho, const Int& delta, const AxiomParams& params = {});

struct SieveConstants {
    double C1 = 1;
    double C2 = 1;
};

struct SieveBound {
    double z = 0;
    Rat W;                 // prod_{p <= z, p prime to Delta*n} (1 - rho(p)/p)
    double lower_bound = 0;
    bool vacuous = true;   // lower_bound <= 0
};

/// S >= T W(z) (C1 - C2 l (log log 3T)^(3t+2) / log T), z = T^(tau/s) unless given.
/// Needs s > 9t. Missing densities below z raise MissingDensities.
SieveBound beta_sieve_lower_bound(std::uint64_t T, const DensityFunction& rho, std::size_t t, double tau,
                                  double s, double l, std::optional<double> z = std::nullopt,
                                  const Int& delta = Int(1), const SieveConstants& c = {});

struct AlmostPrimeCount {
    std::uint64_t count = 0;
    std::uint64_t zeros_excluded = 0;
};

/// Points whose [f]_n has no prime factor p <= z with p prime to Delta*n.
AlmostPrimeCount almost_prime_count(const std::vector<RationalGroupPoint>& points, const PolynomialFamily& f,
                                    std::uint64_t n, double z, const Int& delta = Int(1));

struct SieveReport {
    std::uint64_t n = 1;
    std::uint64_t T = 0;
    AxiomReport axioms;
    std::size_t t = 1;
    double tau = 0;
    double s = 0;
    double l = 0;
    SieveConstants constants;
    SieveBound bound;
    AlmostPrimeCount direct;
    Int delta;
};

struct SieveReportParams {
    double tau = 0.1;
    double s = 10;
    double l = 3;
    std::optional<double> z;
    SieveConstants constants;
    AxiomParams axioms;
};

SieveReport sieve_report(const std::vector<RationalGroupPoint>& points, const PolynomialFamily& f,
                         std::uint64_t n, const SieveReportParams& params = {});

Json to_json(const SieveReport& r);

} // namespace dioph
