#include <doctest.h>

#include "support.hpp"

#include <random>

#include "dioph/core.hpp"
#include "dioph/json_io.hpp"

using namespace dioph;

namespace {

RatMatrix mat2(Rat a, Rat b, Rat c, Rat d) { return RatMatrix(2, {a, b, c, d}); }

// Elementary matrices E_ij(s) multiplied at random give unimodular points.
RatMatrix random_product(std::mt19937_64& rng, std::size_t N, std::uint64_t n, int len) {
    RatMatrix g = RatMatrix::identity(N);
    for (int k = 0; k < len; ++k) {
        std::size_t i = rng() % N, j = rng() % N;
        if (i == j)
            continue;
        RatMatrix e = RatMatrix::identity(N);
        e(i, j) = frac(Int(static_cast<long>(rng() % 5) - 2), Int(static_cast<unsigned long>(rng() % 2 ? n : 1)));
        g = g * e;
    }
    return g;
}

} // namespace

TEST_CASE("reduce gives coprime numerator with det v^N") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        std::size_t N = 2 + it % 2;
        RatMatrix g = random_product(rng, N, 6, 8);
        auto z = RationalGroupPoint::reduce(g);
        CHECK(determinant(z.u()) == Int(z.v() * z.v() * (N == 3 ? z.v() : Int(1))));
        Int gg = z.v();
        for (const auto& e : z.u().entries())
            gg = gcd(gg, e);
        CHECK(gg == 1);
        CHECK(z.to_rational() == g);
        // den divides a power of 6
        Int v = z.v();
        while (v % 2 == 0)
            v /= 2;
        while (v % 3 == 0)
            v /= 3;
        CHECK(v == 1);
    }
}

TEST_CASE("reduce rejects non-unimodular input") {
    CHECK_THROWS_AS(RationalGroupPoint::reduce(mat2(2, 0, 0, 1)), NotUnimodular);
    CHECK_THROWS_AS(RationalGroupPoint::from_reduced(IntMatrix(2, {2, 0, 0, 2}), Int(2)), InvalidArgument);
}

TEST_CASE("den of a known point") {
    auto z = RationalGroupPoint::reduce(mat2(1, 0, Rat(1, 2), 1));
    CHECK(z.den() == 2);
    CHECK(z.u() == IntMatrix(2, {2, 0, 1, 2}));
    CHECK(padic_norm(z, 2) == 2);
    CHECK(padic_norm(z, 3) == 1);
    auto w = RationalGroupPoint::reduce(mat2(Rat(1, 4), 0, 0, 4));
    CHECK(w.den() == 4);
    CHECK(padic_norm(w, 2) == 4);
}

TEST_CASE("product and ordering") {
    auto a = RationalGroupPoint::reduce(mat2(1, Rat(1, 3), 0, 1));
    auto b = RationalGroupPoint::reduce(mat2(1, Rat(-1, 3), 0, 1));
    CHECK(a * b == RationalGroupPoint::identity(2));
    CHECK(b < a);
    CHECK((a * a).den() == 3);
}

TEST_CASE("ball membership") {
    auto z = RationalGroupPoint::reduce(mat2(1, 0, Rat(1, 2), 1));
    CHECK(ball_membership(z, BallSpec::make(RatMatrix::identity(2), Rat(1, 2), 2)));
    CHECK_FALSE(ball_membership(z, BallSpec::make(RatMatrix::identity(2), Rat(2, 5), 2)));
    CHECK_FALSE(ball_membership(z, BallSpec::make(RatMatrix::identity(2), Rat(1), 4)));
    CHECK(max_distance(z, RatMatrix::identity(2)) == Rat(1, 2));
}

TEST_CASE("snap_center") {
    RatMatrix c = snap_center(2, {1, 0.1, 0, 1});
    CHECK(c(0, 0) == 1);
    CHECK(c(0, 1).get_den() == Int(1) << 53);
    CHECK_THROWS(snap_center(2, {1, 0, 1}));
}

TEST_CASE("polynomials") {
    auto f = PolynomialFamily::preset("entry11,trace-minus-2", 2);
    CHECK(f.t() == 2);
    CHECK(f.total_degree() == 2);
    auto z = RationalGroupPoint::reduce(mat2(3, 1, 2, 1));
    CHECK(eval_family(f, z).value == Rat(3 * 2));
    auto s = PolynomialFamily::preset("sum-of-entries", 2);
    CHECK(eval_family(s, z).value == 7);
    std::uint64_t e[4] = {3, 1, 2, 1};
    CHECK(eval_family_mod(f, e, 5) == 1);
    CHECK_THROWS_AS(PolynomialFamily::preset("entry31", 2), InvalidArgument);
    CHECK_THROWS_AS(Polynomial(2, {{Int(0), {1, 0, 0, 0}}}), InvalidArgument);
    Polynomial g = Polynomial::entry(2, 0, 0) + Polynomial::constant(2, Int(5)) - Polynomial::entry(2, 0, 0);
    CHECK(g.degree() == 0);
}

TEST_CASE("json round trip") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 50; ++it) {
        auto z = RationalGroupPoint::reduce(random_product(rng, 2 + it % 2, 10, 6));
        CHECK(point_from_json(Json::parse(to_json(z).dump())) == z);
    }
    Rat r(-7, 12);
    CHECK(rational_from_json(rational_json(r)) == r);
    Json fam = Json::parse(R"({"n_dim": 2, "polys": [[{"coeff": 1, "exps": [1,0,0,0]}, {"coeff": -1, "exps": [0,0,0,0]}]]})");
    auto f = family_from_json(fam);
    CHECK(f.t() == 1);
    CHECK(eval_family(f, RationalGroupPoint::identity(2)).value == 0);
}
