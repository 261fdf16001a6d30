#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dioph/enumerate.hpp"
#include "dioph/json_io.hpp"
#include "dioph/sieve.hpp"

namespace dioph {

struct EngineConfig {
    Rat rG = 4;
    std::optional<unsigned> iota; // derived from rG when absent
    double C1 = 1;
    double C2 = 1;
    std::uint64_t oracle_cell_budget = 1'000'000'000;
    std::uint64_t optimized_row_budget = 10'000'000;
    std::uint64_t density_budget = 100'000'000;
    std::uint64_t vertex_budget = 20'000;

    unsigned resolved_iota() const;
    EnumerationOptions enumeration_options() const;

    /// {"rG": 4, "iota": 2, "C1": 1, "C2": 1, "budgets": {"oracle_cells": ...,
    ///  "optimized_rows": ..., "density_order": ..., "spectral_vertices": ...}}
    static EngineConfig from_json(const Json& j);
    Json to_json() const;
};

/// 1 when r(G) = 2, else the least even integer >= r(G)/2.
unsigned iota_from_rG(const Rat& rG);

struct ParameterInput {
    unsigned d = 3;
    Rat a = 2;
    unsigned iota = 2;
    Rat rG = 4;
    Rat alpha;
    std::size_t t = 1;
    unsigned deg_f = 1;
    unsigned delta_n = 0;
};

struct TheoremParameters {
    ParameterInput input;
    Rat alpha0;             // a / (4 iota d)
    Int r;                  // delta_n + ceil(9 t deg (d+1)^2 / (a/(4 iota) - alpha d))
    Rat alpha_prime;        // alpha / a
    Rat kappa;              // (1/(4 iota) - alpha' d) / (alpha' (d+1))
    Rat tau0;               // (1/(4 iota) - alpha' d) / ((d+1)^2 (1 - alpha' d))
    Rat alpha0_anisotropic; // a / (2 iota d)
};

/// Throws AlphaTooLarge when alpha >= alpha0.
TheoremParameters theorem_parameters(const ParameterInput& in);

Json to_json(const TheoremParameters& p);

/// Largest dyadic (2^-53 grid) value <= n^-alpha.
Rat threshold_from_alpha(std::uint64_t n, double alpha);

struct WitnessRecord {
    RatMatrix x;
    std::uint64_t n = 1;
    Rat threshold;
    RationalGroupPoint z = RationalGroupPoint::identity(2);
    Rat distance;
    std::optional<unsigned> factor_count; // empty when f(z) = 0
    bool factor_complete = true;
    std::size_t ball_count = 0;
    double elapsed_ms = 0;
};

/// Minimizes (factor_count of [f(z)]_n, distance, canonical order) over the
/// ball of radius `threshold`. NoWitness when the ball is empty.
WitnessRecord find_witness(const RatMatrix& x, std::uint64_t n, const Rat& threshold, const PolynomialFamily& f,
                           const EnumerationOptions& opts = {}, const FactorBudget& factor_budget = {});

Json to_json(const WitnessRecord& w);

struct CountingCell {
    std::size_t x_index = 0;
    std::uint64_t n = 0;
    Rat epsilon;
    std::uint64_t T = 0;
    double ratio = 0; // T / ((2 eps)^(N^2-1) m(B_n^f))
    bool significant = false;
};

struct CountingReport {
    std::vector<CountingCell> cells;
    std::vector<std::string> skipped;
    std::optional<double> spread; // max/min ratio over significant cells
    std::uint64_t threshold = 1000;
};

CountingReport counting_verification(const std::vector<RatMatrix>& centers, const std::vector<std::uint64_t>& n_list,
                                     const EpsilonRule& rule, std::uint64_t count_threshold = 1000,
                                     const EnumerationOptions& opts = {});

} // namespace dioph
