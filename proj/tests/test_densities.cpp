#include <doctest.h>

#include "support.hpp"

#include <functional>

#include "dioph/densities.hpp"

using namespace dioph;

namespace {

// Zeros of f over every 2x2 matrix mod q with determinant 1.
std::pair<std::uint64_t, std::uint64_t> brute_sl2(const std::function<std::uint64_t(std::uint64_t, std::uint64_t, std::uint64_t,
                                                                                   std::uint64_t, std::uint64_t)>& f,
                                                  std::uint64_t q) {
    std::uint64_t zeros = 0, order = 0;
    for (std::uint64_t a = 0; a < q; ++a)
        for (std::uint64_t b = 0; b < q; ++b)
            for (std::uint64_t c = 0; c < q; ++c)
                for (std::uint64_t d = 0; d < q; ++d)
                    if ((a * d + q * q - b * c) % q == 1 % q) {
                        ++order;
                        if (f(a, b, c, d, q) == 0)
                            ++zeros;
                    }
    return {zeros, order};
}

Rat brute_rho(const std::function<std::uint64_t(std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t,
                                                std::uint64_t)>& f,
              std::uint64_t q) {
    auto [zeros, order] = brute_sl2(f, q);
    return frac(Int(static_cast<unsigned long>(q * zeros)), Int(static_cast<unsigned long>(order)));
}

std::uint64_t g11(std::uint64_t a, std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t q) { return a % q; }
std::uint64_t g11g22(std::uint64_t a, std::uint64_t, std::uint64_t, std::uint64_t d, std::uint64_t q) {
    return a * d % q;
}
std::uint64_t tr2(std::uint64_t a, std::uint64_t, std::uint64_t, std::uint64_t d, std::uint64_t q) {
    return (a + d + 2 * q - 2) % q;
}

} // namespace

TEST_CASE("group orders") {
    for (std::uint64_t q : {2, 3, 5, 6, 7, 10}) {
        auto [zeros, order] = brute_sl2(g11, q);
        CHECK(sl_order(2, q) == Int(static_cast<unsigned long>(order)));
        (void)zeros;
    }
    CHECK(sl_order(3, 2) == 168);
    CHECK(sl_order(3, 3) == 5616);
}

TEST_CASE("entry11 density is p/(p+1)") {
    auto f = PolynomialFamily::preset("entry11", 2);
    for (std::uint64_t p : primes_up_to(13)) {
        Rat expected(Int(static_cast<unsigned long>(p)), Int(static_cast<unsigned long>(p + 1)));
        CHECK(local_density(f, p).rho == expected);
        CHECK(brute_rho(g11, p) == expected);
    }
    CHECK(local_density(f, 5).rho == Rat(5, 6));
    CHECK(local_density(f, 2).rho == Rat(2, 3));
    CHECK(local_density(f, 10).rho == Rat(5, 9));
}

TEST_CASE("other families against brute force") {
    auto prod = PolynomialFamily::preset("entry11,entry22", 2);
    auto tr = PolynomialFamily::preset("trace-minus-2", 2);
    for (std::uint64_t q : {2, 3, 5, 6, 7, 10, 15}) {
        CHECK(local_density(prod, q).rho == brute_rho(g11g22, q));
        CHECK(local_density(tr, q).rho == brute_rho(tr2, q));
    }
    CHECK(local_density(prod, 3).rho == Rat(5, 4));
}

TEST_CASE("routes agree and multiplicativity holds") {
    auto f = PolynomialFamily::preset("entry11,trace-minus-2", 2);
    for (std::uint64_t q : {6, 10, 15, 30}) {
        auto direct = local_density(f, q, DensityRoute::Direct);
        auto product = local_density(f, q, DensityRoute::Product);
        CHECK(direct.rho == product.rho);
        CHECK(direct.zero_count == product.zero_count);
    }
    auto g = PolynomialFamily::preset("entry11", 2);
    CHECK(local_density(g, 10).rho == local_density(g, 2).rho * local_density(g, 5).rho);
    CHECK_THROWS_AS(local_density(g, 4), InvalidArgument);
    CHECK_THROWS_AS(local_density(g, 30, DensityRoute::Direct, 10), BudgetExceeded);
}

TEST_CASE("SL3 density by direct count") {
    auto f = PolynomialFamily::preset("entry11", 3);
    // entry11 = 0 on SL_3(F_p): first row is (0, x) with x a nonzero vector.
    for (std::uint64_t p : {2, 3}) {
        Rat expected = frac(Int(static_cast<unsigned long>(p * (p * p - 1))),
                           Int(static_cast<unsigned long>(p * p * p - 1)));
        CHECK(local_density(f, p).rho == expected);
    }
}

TEST_CASE("DensityFunction") {
    DensityFunction rho(PolynomialFamily::preset("entry11", 2), 6);
    rho.ensure_primes_up_to(13);
    CHECK(rho.coverage() >= 13);
    CHECK_FALSE(rho.values().count(2));
    CHECK_FALSE(rho.values().count(3));
    CHECK(rho.rho(1) == 1);
    CHECK(rho.rho(35) == Rat(5, 6) * Rat(7, 8));
    CHECK_THROWS_AS(rho.at_prime(17), MissingDensities);
}

TEST_CASE("Lang-Weil deviations are small") {
    auto rows = lang_weil_report(PolynomialFamily::preset("entry11", 2), primes_up_to(13));
    for (const auto& r : rows) {
        CHECK(r.deviation <= 0.5);
        CHECK_FALSE(r.flagged);
    }
}

TEST_CASE("Gamma_n words") {
    auto words = gamma_n_words(2, 3, 200);
    CHECK(words.size() == 200);
    CHECK(words.front() == RationalGroupPoint::identity(2));
    for (const auto& w : words) {
        Int v = w.den();
        while (v % 3 == 0)
            v /= 3;
        CHECK(v == 1);
    }
    std::vector<RationalGroupPoint> sorted = words;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
}

TEST_CASE("n-coprime values") {
    CHECK(n_coprime_value(Rat(40), factor_u64(10)) == 1);
    CHECK(n_coprime_value(Rat(12), factor_u64(10)) == 3);
    CHECK(abs(n_coprime_value(Rat(-90), factor_u64(6))) == 5);
    CHECK(n_coprime_value(Rat(35, 4), factor_u64(2)) == 35);
    CHECK(n_coprime_value(Rat(0), factor_u64(2)) == 0);
    CHECK_THROWS_AS(n_coprime_value(Rat(1, 3), factor_u64(2)), InvalidArgument);
}

TEST_CASE("Delta_n") {
    auto one = delta_n(PolynomialFamily::preset("entry11", 2), 2);
    CHECK(one.delta == 1);
    CHECK(one.delta_count == 0);
    CHECK(one.certified);
    // Every element of SL_2(F_2) has a zero entry.
    auto all = delta_n(PolynomialFamily::preset("entry11,entry12,entry21,entry22", 2), 3);
    CHECK(all.certified);
    CHECK(all.delta % 2 == 0);
    CHECK(all.delta % 3 != 0);
}
