#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>

#include "dioph/enumerate.hpp"

using namespace dioph;

namespace {

// Straight scan of numerators u with |u/n - x| <= eps, det u = n^2, gcd(u, n) = 1.
std::vector<RationalGroupPoint> brute_sl2(const RatMatrix& x, const Rat& eps, long n) {
    std::vector<long> lo(4), hi(4);
    for (int k = 0; k < 4; ++k) {
        lo[k] = ceil_rat((x.entries()[k] - eps) * n).get_si();
        hi[k] = floor_rat((x.entries()[k] + eps) * n).get_si();
    }
    std::vector<RationalGroupPoint> out;
    for (long a = lo[0]; a <= hi[0]; ++a)
        for (long b = lo[1]; b <= hi[1]; ++b)
            for (long c = lo[2]; c <= hi[2]; ++c)
                for (long d = lo[3]; d <= hi[3]; ++d) {
                    if (a * d - b * c != n * n)
                        continue;
                    long g = std::gcd(std::gcd(std::gcd(a, b), std::gcd(c, d)), n);
                    if (g == 1)
                        out.push_back(RationalGroupPoint::from_reduced(IntMatrix(2, {a, b, c, d}), Int(n)));
                }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("identity ball at n = 2") {
    auto r = enumerate_points(BallSpec::make(RatMatrix::identity(2), Rat(1, 2), 2));
    CHECK(r.count() == 8);
    CHECK(r.status == EnumerationStatus::Complete);
    for (const auto& z : r.points)
        CHECK(z.den() == 2);
    CHECK(enumerate_points(BallSpec::make(RatMatrix::identity(2), Rat(2, 5), 2)).count() == 0);
    CHECK(enumerate_points(BallSpec::make(RatMatrix::identity(2), Rat(1, 2), 1)).count() == 1);
}

TEST_CASE("optimized matches straight scan on random cells") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 30; ++it) {
        long n = 1 + static_cast<long>(rng() % 30);
        std::vector<double> c(4);
        for (auto& e : c)
            e = static_cast<double>(rng() % 2001) / 1000.0 - 1.0;
        c[0] += 1;
        c[3] += 1;
        Rat eps = Rat(static_cast<long>(1 + rng() % 8), 8);
        auto ball = BallSpec::make(2, c, eps, static_cast<std::uint64_t>(n));
        auto fast = enumerate_points(ball, Strategy::Optimized);
        auto slow = enumerate_points(ball, Strategy::Oracle);
        auto scan = brute_sl2(ball.center, eps, n);
        CHECK(fast.points == scan);
        CHECK(slow.points == scan);
        for (const auto& z : fast.points)
            CHECK(ball_membership(z, ball));
    }
}

TEST_CASE("SL3 optimized matches oracle") {
    for (std::uint64_t n : {1, 2, 3}) {
        auto ball = BallSpec::make(RatMatrix::identity(3), Rat(1, 2), n);
        auto fast = enumerate_points(ball, Strategy::Optimized);
        auto slow = enumerate_points(ball, Strategy::Oracle);
        CHECK(fast.points == slow.points);
        CHECK(fast.count() > 0);
    }
}

TEST_CASE("thread count does not change the result") {
    auto ball = BallSpec::make(RatMatrix::identity(2), Rat(1, 2), 24);
    EnumerationOptions one, four;
    one.threads = 1;
    four.threads = 4;
    CHECK(enumerate_points(ball, Strategy::Optimized, one).points ==
          enumerate_points(ball, Strategy::Optimized, four).points);
}

TEST_CASE("budgets and cancellation") {
    auto ball = BallSpec::make(RatMatrix::identity(2), Rat(1, 2), 1000);
    EnumerationOptions tight;
    tight.optimized_row_budget = 10;
    tight.oracle_cell_budget = 10;
    CHECK_THROWS_AS(enumerate_points(ball, Strategy::Optimized, tight), SearchSpaceTooLarge);
    CHECK_THROWS_AS(enumerate_points(ball, Strategy::Oracle, tight), SearchSpaceTooLarge);
    std::atomic<bool> stop{true};
    EnumerationOptions cancel;
    cancel.cancel = &stop;
    auto r = enumerate_points(ball, Strategy::Optimized, cancel);
    CHECK(r.status == EnumerationStatus::Aborted);
    CHECK(r.points.empty());
}

TEST_CASE("count table and epsilon rule") {
    auto rows = count_table(RatMatrix::identity(2), {2, 3, 5}, EpsilonRule::constant(Rat(1, 2)));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].count == std::optional<std::uint64_t>(8));
    auto rule = EpsilonRule::power(0.1);
    Rat e5 = rule.epsilon_for(5, 2), e7 = rule.epsilon_for(7, 2);
    CHECK(e5 > e7);
    CHECK(e5 < 1);
}
