#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "dioph/arith.hpp"

namespace dioph {

/// Regular directed multigraph on SL_2(Z/q): vertex u is joined to g_i u for
/// each radius-2l Hecke representative g_i, scaled by p^-l mod q.
struct HeckeGraph {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    unsigned l = 0;
    std::size_t vertex_count = 0;
    std::size_t degree = 0;
    std::vector<std::uint32_t> neighbors; // vertex v: [v*degree, (v+1)*degree)

    static HeckeGraph from_neighbors(std::size_t vertex_count, std::size_t degree,
                                     std::vector<std::uint32_t> neighbors);
};

/// Row-reduced representatives of the primitive determinant-p^(2l) classes,
/// as (a, b, c, d); Hermite forms reduced by left SL_2(Z) row operations.
std::vector<std::array<std::int64_t, 4>> hecke_representatives(std::uint64_t p, unsigned l);

/// Throws BudgetExceeded when |SL_2(Z/q)| exceeds `vertex_budget`.
HeckeGraph build_hecke_graph(std::uint64_t p, std::uint64_t q, unsigned l,
                             std::uint64_t vertex_budget = 20'000);

struct SpectralOptions {
    std::size_t dense_limit = 4000; // larger graphs use power iteration
    double tolerance = 1e-10;
    std::size_t max_iterations = 200'000;
};

/// Largest |eigenvalue| of (P + P^T)/2 - J/V, P the averaging operator.
double second_singular_value(const HeckeGraph& g, const SpectralOptions& opts = {});

struct GapRow {
    unsigned l;
    Int volume; // (p+1) p^(2l-1)
    double lambda2;
};

struct GapReport {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    std::vector<GapRow> rows;
    std::optional<double> slope; // log lambda2 against log volume
    bool pass = false;           // slope <= -1/4 + 0.05
};

GapReport gap_decay_report(std::uint64_t p, std::uint64_t q, unsigned l_min, unsigned l_max,
                           const SpectralOptions& opts = {}, std::uint64_t vertex_budget = 20'000);

} // namespace dioph
