#include <doctest.h>

#include "support.hpp"

#include "dioph/errors.hpp"
#include "dioph/volumes.hpp"

using namespace dioph;

namespace {

// Cyclic subgroups of order p^k in (Z/p^k)^2: vectors of exact order p^k over phi(p^k).
std::uint64_t cyclic_lattices(std::uint64_t p, unsigned k) {
    std::uint64_t m = checked_pow(p, k), full = 0;
    for (std::uint64_t x = 0; x < m; ++x)
        for (std::uint64_t y = 0; y < m; ++y)
            if (x % p != 0 || y % p != 0)
                ++full;
    return full / (m - m / p);
}

// Index p^k sublattices of Z^N: sum over exponent splits of p^(sum (i-1) e_i).
Int lattice_count(std::uint64_t p, unsigned k, std::size_t N) {
    if (N == 1)
        return 1;
    Int total = 0;
    for (unsigned e = 0; e <= k; ++e)
        total += lattice_count(p, k - e, N - 1) * int_pow(p, static_cast<unsigned>((N - 1) * e));
    return total;
}

std::uint64_t powmod(std::uint64_t p, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i)
        r *= p;
    return r;
}

unsigned val(std::uint64_t x, std::uint64_t p, unsigned cap) {
    if (x == 0)
        return cap;
    unsigned v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

// Xi(diag(p^l, p^-l)) averaged over bottom rows (c, d) of SL_2(Z/p^L), uniform.
Rat xi_rows(std::uint64_t p, unsigned l, unsigned L) {
    std::uint64_t m = powmod(p, static_cast<int>(L));
    Rat sum = 0;
    std::uint64_t count = 0;
    for (std::uint64_t c = 0; c < m; ++c)
        for (std::uint64_t d = 0; d < m; ++d) {
            if (c % p == 0 && d % p == 0)
                continue;
            int e = std::min<int>(static_cast<int>(l + val(c, p, L)), static_cast<int>(val(d, p, L)) - static_cast<int>(l));
            sum += e >= 0 ? Rat(Int(powmod(p, e))) : Rat(Int(1), Int(powmod(p, -e)));
            ++count;
        }
    return sum / Rat(static_cast<unsigned long>(count));
}

// Same average over every element of SL_2(Z/p^L).
Rat xi_group(std::uint64_t p, unsigned l, unsigned L) {
    std::uint64_t m = powmod(p, static_cast<int>(L));
    Rat sum = 0;
    std::uint64_t count = 0;
    for (std::uint64_t a = 0; a < m; ++a)
        for (std::uint64_t b = 0; b < m; ++b)
            for (std::uint64_t c = 0; c < m; ++c)
                for (std::uint64_t d = 0; d < m; ++d) {
                    if ((a * d + m * m - b * c) % m != 1)
                        continue;
                    int e = std::min<int>(static_cast<int>(l + val(c, p, L)),
                                          static_cast<int>(val(d, p, L)) - static_cast<int>(l));
                    sum += e >= 0 ? Rat(Int(powmod(p, e))) : Rat(Int(1), Int(powmod(p, -e)));
                    ++count;
                }
    return sum / Rat(static_cast<unsigned long>(count));
}

} // namespace

TEST_CASE("SL2 local volumes against cyclic sublattice count") {
    for (std::uint64_t p : {2, 3, 5, 7}) {
        CHECK(local_ball_volume(p, 0) == 1);
        for (unsigned l = 1; l <= (p <= 3 ? 3u : 2u); ++l) {
            Int expected(static_cast<unsigned long>(cyclic_lattices(p, 2 * l)));
            CHECK(sl2_ball_volume_closed_form(p, l) == expected);
            CHECK(hnf_coset_oracle(p, l) == expected);
            CHECK(local_ball_volume(p, l) == expected);
        }
    }
    CHECK(local_ball_volume(2, 1) == 6);
    CHECK(local_ball_volume(3, 2) == 108);
    CHECK(local_ball_volume(5, 1) == 30);
}

TEST_CASE("HNF totals match the sublattice formula") {
    for (std::uint64_t p : {2, 3, 5})
        for (std::size_t N : {2, 3, 4})
            for (unsigned k = 0; k <= (p == 5 && N == 4 ? 3u : 4u); ++k)
                CHECK(hnf_total_count(p, k, N) == lattice_count(p, k, N));
}

TEST_CASE("primitive count is total minus scaled total") {
    for (std::uint64_t p : {2, 3})
        for (std::size_t N : {2, 3})
            for (unsigned l = 1; l <= 2; ++l)
                CHECK(hnf_coset_oracle(p, l, N) ==
                      hnf_total_count(p, static_cast<unsigned>(N) * l, N) -
                          hnf_total_count(p, static_cast<unsigned>(N) * (l - 1), N));
    CHECK(local_ball_volume(2, 1, 3) == hnf_coset_oracle(2, 1, 3));
}

TEST_CASE("oracle budget") {
    CHECK_THROWS_AS(hnf_coset_oracle(13, 3, 2, 100), BudgetExceeded);
    CHECK(local_ball_volume(2, 1, 5) == lattice_count(2, 5, 5) - 1);
    CHECK_THROWS_AS(hnf_coset_oracle(4, 1), InvalidArgument);
}

TEST_CASE("finite volumes") {
    CHECK(finite_volume(1) == 1);
    CHECK(finite_volume(6) == 72);
    CHECK(finite_volume(4) == 24);
    CHECK(finite_volume(12) == finite_volume(4) * finite_volume(3));
    for (std::uint64_t n = 1; n <= 2000; ++n)
        CHECK(finite_volume(n) >= Int(static_cast<unsigned long>(n * n)));
}

TEST_CASE("growth exponent") {
    auto g = growth_exponent(2000);
    REQUIRE(g.exponent.has_value());
    CHECK(*g.exponent > 1.95);
    CHECK(*g.exponent < 2.05);
    auto twos = growth_exponent(1 << 12, std::vector<std::uint64_t>{2});
    REQUIRE(twos.exponent.has_value());
    CHECK(*twos.exponent == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("recurrences") {
    std::vector<Rat> fib{1, 1};
    for (int i = 0; i < 10; ++i)
        fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
    auto r = find_recurrence(fib);
    CHECK(r.order == 2);
    CHECK(r.offset == 0);
    CHECK(r.coefficients == std::vector<Rat>{1, 1});

    std::vector<Rat> noise{1, 5, 2, 9, 4, 100, 3, 7, 11, 13, 17, 19};
    CHECK_THROWS_AS(find_recurrence(noise, 3), NoRecurrenceFound);

    for (std::uint64_t p : {2, 3, 5}) {
        auto rep = poincare_rationality_check(p, 6);
        CHECK(rep.recurrence.order == 1);
        CHECK(rep.recurrence.offset == 1);
        CHECK(rep.recurrence.coefficients.front() == Rat(Int(p * p)));
    }
}

TEST_CASE("Harish-Chandra function") {
    CHECK(harish_chandra_xi(2, 0) == 1);
    CHECK(harish_chandra_xi(2, 1) == Rat(5, 6));
    CHECK(harish_chandra_xi(3, 1) == Rat(2, 3));
    CHECK(xi_group(2, 1, 2) == Rat(5, 6));
    CHECK(xi_group(3, 1, 2) == Rat(2, 3));
    for (std::uint64_t p : {2, 3, 5})
        for (unsigned l = 1; l <= (p == 5 ? 2u : 3u); ++l) {
            Rat closed = Rat(Int(1), int_pow(p, l)) * (1 + frac(Int(static_cast<unsigned long>(2 * l * (p - 1))), Int(static_cast<unsigned long>(p + 1))));
            CHECK(harish_chandra_xi(p, l) == closed);
            CHECK(xi_rows(p, l, 2 * l) == closed);
            CHECK(harish_chandra_xi(p, l, 2 * l + 1) == closed);
            CHECK(harish_chandra_xi(p, l) < harish_chandra_xi(p, l - 1));
        }
    CHECK_THROWS_AS(harish_chandra_xi(2, 3, 1), LevelInsufficient);
}
