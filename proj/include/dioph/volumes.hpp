#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dioph/arith.hpp"

namespace dioph {

/// Primitive upper-triangular Hermite forms of determinant p^(N*l): diagonal
/// d_1..d_N with product p^(N*l), entry (i, j) for i < j reduced into [0, d_j),
/// gcd of all entries prime to p. For N = 2 this is [[a, b], [0, d]], 0 <= b < d.
/// Throws BudgetExceeded when more than `budget` forms would be visited.
Int hnf_coset_oracle(std::uint64_t p, unsigned l, std::size_t n_dim = 2,
                     std::uint64_t budget = 50'000'000);

/// Same forms without the primitivity condition.
Int hnf_total_count(std::uint64_t p, unsigned k, std::size_t n_dim, std::uint64_t budget = 50'000'000);

/// (p+1) p^(2l-1) for l >= 1, 1 for l = 0.
Int sl2_ball_volume_closed_form(std::uint64_t p, unsigned l);

/// m(B_{p^l, p}). N = 2 uses the closed form, cross-checked against the
/// oracle for volumes up to 2e5; larger N relies on the oracle alone.
Int local_ball_volume(std::uint64_t p, unsigned l, std::size_t n_dim = 2,
                      std::uint64_t oracle_budget = 10'000'000);

struct LocalVolumeRow {
    unsigned l;
    Int closed_form;
    std::optional<Int> oracle; // empty when over budget
    bool match;
};

struct LocalVolumeTable {
    std::uint64_t p;
    std::vector<LocalVolumeRow> rows;
};

LocalVolumeTable local_volume_table(std::uint64_t p, unsigned l_max,
                                    std::uint64_t oracle_budget = 50'000'000);

/// m(B_n^f) = product over p^a || n of m(B_{p^a, p}).
Int finite_volume(std::uint64_t n, std::size_t n_dim = 2);

struct GrowthEstimate {
    std::vector<std::pair<std::uint64_t, Int>> samples;
    std::optional<double> exponent; // empty for a degenerate fit
    std::uint64_t n_min = 0;
    std::uint64_t n_max = 0;
};

/// Least-squares slope of log m(B_n^f) against log n over 1 <= n <= n_max,
/// optionally only n whose prime divisors lie in `primes`.
GrowthEstimate growth_exponent(std::uint64_t n_max,
                               const std::optional<std::vector<std::uint64_t>>& primes = std::nullopt,
                               std::size_t n_dim = 2);

struct Recurrence {
    unsigned order = 0;
    unsigned offset = 0; // holds for indices >= offset
    std::vector<Rat> coefficients; // x[i+k] = sum_j c_j x[i+j]
};

/// Smallest (order, offset) linear recurrence that the whole sequence obeys
/// with at least one equation beyond those used to solve for it.
Recurrence find_recurrence(const std::vector<Rat>& seq, unsigned max_order = 4);

struct RationalityReport {
    std::uint64_t p;
    std::vector<Int> values; // v(0..L)
    Recurrence recurrence;
};

RationalityReport poincare_rationality_check(std::uint64_t p, unsigned L, unsigned max_order = 4);

/// Xi_p(diag(p^l, p^-l)) for SL_2 by exact averaging over G(Z_p) mod p^level
/// (default level 2l). Escalates the level once, then throws LevelInsufficient.
Rat harish_chandra_xi(std::uint64_t p, unsigned l, std::optional<unsigned> level = std::nullopt);

} // namespace dioph
