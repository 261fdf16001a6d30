#include <doctest.h>

#include <random>

#include "dioph/arith.hpp"
#include "dioph/errors.hpp"

using namespace dioph;

namespace {

bool naive_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

} // namespace

TEST_CASE("primality agrees with trial division") {
    for (std::uint64_t n = 0; n < 5000; ++n)
        CHECK(is_prime(n) == naive_prime(n));
    CHECK(is_prime(1'000'000'007ULL));
    CHECK_FALSE(is_prime(3215031751ULL)); // strong pseudoprime to 2, 3, 5, 7
    auto ps = primes_up_to(100);
    CHECK(ps.size() == 25);
    CHECK(ps.back() == 97);
}

TEST_CASE("factor_u64 reconstructs n") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        std::uint64_t n = rng() % 10'000'000 + 1;
        std::uint64_t prod = 1;
        for (const auto& pp : factor_u64(n)) {
            CHECK(naive_prime(pp.p));
            for (unsigned k = 0; k < pp.e; ++k)
                prod *= pp.p;
        }
        CHECK(prod == n);
    }
    CHECK(is_squarefree(30));
    CHECK_FALSE(is_squarefree(12));
}

TEST_CASE("factor_int handles large semiprimes") {
    Int p("1000000007"), q("998244353");
    auto f = factor_int(p * q * 4);
    CHECK(f.complete());
    CHECK(f.count() == 4);
    Int big = Int("4294967311") * Int("4294967357");
    auto g = factor_int(big);
    CHECK(g.complete());
    CHECK(g.count() == 2);
}

TEST_CASE("checked arithmetic") {
    CHECK(checked_pow(3, 4) == 81);
    CHECK_THROWS(checked_pow(10, 30));
    CHECK(int_pow(10, 30) == Int("1000000000000000000000000000000"));
    CHECK(valuation(Int(96), 2) == 5);
    CHECK(gcd_u64(12, 18) == 6);
    CHECK(floor_rat(Rat(-7, 2)) == -4);
    CHECK(ceil_rat(Rat(-7, 2)) == -3);
    CHECK(ceil_rat(Rat(6, 3)) == 2);
}

TEST_CASE("parse_rational") {
    CHECK(parse_rational("3/4") == Rat(3, 4));
    CHECK(parse_rational("-0.125") == Rat(-1, 8));
    CHECK(parse_rational("1e-3") == Rat(1, 1000));
    CHECK(parse_rational("2.5E2") == Rat(250));
    CHECK(parse_rational("7") == Rat(7));
    CHECK_THROWS_AS(parse_rational("abc"), InvalidArgument);
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
}

TEST_CASE("dyadic snapping") {
    CHECK(snap_dyadic(0.5, 53) == Rat(1, 2));
    Rat s = snap_dyadic(0.1, 53);
    CHECK(s.get_den() == Int(1) << 53);
    CHECK(std::abs(s.get_d() - 0.1) < 1e-16);
    for (double x : {0.3, 1.0 / 3, 0.99, 123.456}) {
        Rat f = dyadic_floor(x, 53);
        CHECK(f <= Rat(x));
        CHECK(Rat(x) - f < Rat(Int(1), Int(1) << 53));
    }
}
