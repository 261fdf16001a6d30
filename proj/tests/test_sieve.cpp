#include <doctest.h>

#include <cmath>

#include "dioph/sieve.hpp"

using namespace dioph;

namespace {

std::vector<RationalGroupPoint> ball_points(std::uint64_t n, Rat eps) {
    return enumerate_points(BallSpec::make(RatMatrix::identity(2), eps, n)).points;
}

} // namespace

TEST_CASE("coprime parts") {
    CHECK(coprime_part(Rat(40), 10).coprime_part == 1);
    CHECK(coprime_part(Rat(40), 10).factor_count == 0);
    CHECK(coprime_part(Rat(12), 10).coprime_part == 3);
    auto s = coprime_part(Rat(-90), 6);
    CHECK(abs(s.coprime_part) == 5);
    CHECK(s.factor_count == 1);
    auto t = coprime_part(Rat(Int(3 * 3 * 7 * 11), Int(8)), 2);
    CHECK(t.factor_count == 4);
    CHECK(t.complete);
    CHECK_THROWS_AS(coprime_part(Rat(0), 2), ZeroValue);
    CHECK_THROWS_AS(coprime_part(Rat(1, 3), 2), InvalidArgument);
}

TEST_CASE("r-primality") {
    auto f = PolynomialFamily::preset("entry11", 2);
    auto z = RationalGroupPoint::reduce(RatMatrix(2, {Rat(15, 2), Rat(13), Rat(1, 2), Rat(1)}));
    CHECK(is_r_prime(z, f, 2, 2) == std::optional<bool>(true));
    CHECK(is_r_prime(z, f, 2, 1) == std::optional<bool>(false));
}

TEST_CASE("remainders against direct counts") {
    const std::uint64_t n = 7;
    auto pts = ball_points(n, Rat(1));
    REQUIRE(pts.size() > 100);
    auto f = PolynomialFamily::preset("entry11", 2);
    DensityFunction rho(f, n);
    AxiomParams params;
    params.q_max = 30;
    auto rep = axiom_report(pts, f, rho, Int(1), params);
    CHECK(rep.T == pts.size());
    REQUIRE(rep.remainders.count(1));
    CHECK(rep.remainders.at(1) == 0);
    CHECK(rep.a0_holds);
    const Rat T(static_cast<unsigned long>(pts.size()));
    for (const auto& [q, R] : rep.remainders) {
        std::uint64_t A = 0;
        for (const auto& z : pts) {
            Rat v = eval_family(f, z).value;
            Int k = v == 0 ? Int(0) : n_coprime_value(v, factor_u64(n));
            if (k % Int(static_cast<unsigned long>(q)) == 0)
                ++A;
        }
        Rat expected = Rat(static_cast<unsigned long>(A)) - rho.rho(q) * T / Rat(static_cast<unsigned long>(q));
        CHECK(R == expected);
        CHECK(q % n != 0);
    }
    auto hist = value_histogram(pts, f, n);
    std::uint64_t total = 0;
    for (const auto& [k, c] : hist)
        total += c;
    CHECK(total == pts.size());
    CHECK(residue_class_sum(hist, 1) == pts.size());
}

TEST_CASE("beta sieve bound") {
    auto f = PolynomialFamily::preset("entry11", 2);
    DensityFunction rho(f, 5);
    rho.ensure_primes_up_to(200);
    auto b1 = beta_sieve_lower_bound(1, rho, 1, 0.1, 10, 3);
    CHECK(std::isinf(b1.lower_bound));
    CHECK(b1.lower_bound < 0);
    CHECK(b1.vacuous);
    CHECK_THROWS_AS(beta_sieve_lower_bound(100, rho, 1, 0.1, 9, 3), InvalidArgument);
    Rat prev = 2;
    for (double z : {2.0, 3.0, 10.0, 50.0, 150.0}) {
        auto b = beta_sieve_lower_bound(1000, rho, 1, 0.1, 10, 3, z);
        CHECK(b.W <= prev);
        CHECK(b.W > 0);
        prev = b.W;
        Rat w = 1;
        for (auto p : primes_up_to(static_cast<std::uint64_t>(z)))
            if (p != 5)
                w *= 1 - Rat(Int(static_cast<unsigned long>(p)), Int(static_cast<unsigned long>(p + 1))) /
                             Rat(Int(static_cast<unsigned long>(p)));
        CHECK(b.W == w);
    }
    SieveConstants generous{100, 0};
    auto big = beta_sieve_lower_bound(1000, rho, 1, 0.1, 10, 3, 10.0, Int(1), generous);
    CHECK_FALSE(big.vacuous);
    CHECK(big.lower_bound == doctest::Approx(1000 * 100 * big.W.get_d()));
}

TEST_CASE("sifted counts are non-increasing in z") {
    auto pts = ball_points(11, Rat(1, 2));
    auto f = PolynomialFamily::preset("entry11", 2);
    std::uint64_t prev = pts.size();
    for (double z : {1.0, 2.0, 3.0, 5.0, 10.0, 30.0, 100.0}) {
        auto c = almost_prime_count(pts, f, 11, z);
        CHECK(c.count <= prev);
        CHECK(c.count + c.zeros_excluded <= pts.size());
        prev = c.count;
    }
}

TEST_CASE("sieve report") {
    auto pts = ball_points(5, Rat(1, 2));
    auto f = PolynomialFamily::preset("entry11", 2);
    auto rep = sieve_report(pts, f, 5);
    CHECK(rep.T == pts.size());
    CHECK(rep.delta == 1);
    if (!rep.bound.vacuous)
        CHECK(rep.bound.lower_bound <= static_cast<double>(rep.direct.count));
    Json j = to_json(rep);
    CHECK(j.contains("lower_bound"));
    CHECK(j["T"] == pts.size());
    auto wrong = ball_points(3, Rat(1, 2));
    CHECK_THROWS_AS(sieve_report(wrong, f, 5), InvalidArgument);
}
