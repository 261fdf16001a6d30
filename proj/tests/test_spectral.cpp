#include <doctest.h>

#include <cmath>
#include <numeric>

#include "dioph/spectral.hpp"
#include "dioph/errors.hpp"
#include "dioph/volumes.hpp"

using namespace dioph;

namespace {

HeckeGraph cycle(std::size_t V) {
    std::vector<std::uint32_t> nb;
    for (std::size_t v = 0; v < V; ++v) {
        nb.push_back(static_cast<std::uint32_t>((v + 1) % V));
        nb.push_back(static_cast<std::uint32_t>((v + V - 1) % V));
    }
    return HeckeGraph::from_neighbors(V, 2, nb);
}

std::int64_t det(const std::array<std::int64_t, 4>& m) { return m[0] * m[3] - m[1] * m[2]; }

} // namespace

TEST_CASE("cycle graphs have cosine spectrum") {
    const double pi = std::acos(-1.0);
    for (std::size_t V : {5, 7, 9, 12}) {
        double expected = 0;
        for (std::size_t k = 1; k < V; ++k)
            expected = std::max(expected, std::abs(std::cos(2 * pi * static_cast<double>(k) / static_cast<double>(V))));
        CHECK(second_singular_value(cycle(V)) == doctest::Approx(expected).epsilon(1e-9));
    }
    SpectralOptions power;
    power.dense_limit = 0;
    CHECK(second_singular_value(cycle(9), power) == doctest::Approx(second_singular_value(cycle(9))).epsilon(1e-6));
    CHECK_THROWS_AS(HeckeGraph::from_neighbors(3, 1, {0, 1, 5}), InvalidArgument);
}

TEST_CASE("Hecke representatives") {
    for (std::uint64_t p : {2, 3, 5})
        for (unsigned l = 1; l <= 2; ++l) {
            auto reps = hecke_representatives(p, l);
            CHECK(Int(static_cast<unsigned long>(reps.size())) == sl2_ball_volume_closed_form(p, l));
            const auto m = static_cast<std::int64_t>(checked_pow(p, 2 * l));
            for (const auto& r : reps) {
                CHECK(det(r) == m);
                std::int64_t g = std::gcd(std::gcd(r[0], r[1]), std::gcd(r[2], r[3]));
                CHECK(g % static_cast<std::int64_t>(p) != 0);
            }
        }
}

TEST_CASE("Hecke graphs are regular on SL2(Z/q)") {
    auto g = build_hecke_graph(2, 5, 1);
    CHECK(g.vertex_count == 120);
    CHECK(g.degree == 6);
    std::vector<std::size_t> indeg(g.vertex_count);
    for (auto w : g.neighbors)
        ++indeg[w];
    for (auto d : indeg)
        CHECK(d == g.degree);
    double l2 = second_singular_value(g);
    CHECK(l2 < 1);
    CHECK(l2 > 0);
    CHECK_THROWS_AS(build_hecke_graph(2, 6, 1), InvalidArgument);
    CHECK_THROWS_AS(build_hecke_graph(3, 31, 1, 1000), BudgetExceeded);
}

TEST_CASE("dense and power iteration agree on a Hecke graph") {
    auto g = build_hecke_graph(3, 5, 1);
    SpectralOptions power;
    power.dense_limit = 0;
    power.tolerance = 1e-12;
    CHECK(second_singular_value(g, power) == doctest::Approx(second_singular_value(g)).epsilon(1e-5));
}

TEST_CASE("gap decays with the radius") {
    auto rep = gap_decay_report(2, 5, 1, 3);
    REQUIRE(rep.rows.size() == 3);
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        CHECK(rep.rows[i].lambda2 < rep.rows[i - 1].lambda2);
    REQUIRE(rep.slope.has_value());
    CHECK(*rep.slope <= -0.20);
    CHECK(rep.pass);
}
