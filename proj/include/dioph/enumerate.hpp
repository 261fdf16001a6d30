#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dioph/core.hpp"

namespace dioph {

enum class Strategy { Optimized, Oracle };
enum class EnumerationStatus { Complete, Aborted };

const char* to_string(Strategy s);

struct EnumerationOptions {
    std::uint64_t oracle_cell_budget = 1'000'000'000;
    std::uint64_t optimized_row_budget = 10'000'000;
    unsigned threads = 0; // 0: hardware concurrency
    const std::atomic<bool>* cancel = nullptr;
};

struct EnumerationResult {
    std::vector<RationalGroupPoint> points; // canonical order, empty when aborted
    BallSpec ball;
    Strategy strategy = Strategy::Optimized;
    EnumerationStatus status = EnumerationStatus::Complete;
    double elapsed_ms = 0;

    std::size_t count() const { return points.size(); }
};

/// All z with den(z) = n and |z - x| <= eps. N = 2 or 3.
EnumerationResult enumerate_points(const BallSpec& ball, Strategy strategy = Strategy::Optimized,
                                   const EnumerationOptions& opts = {});

/// Number of integer cells the oracle would scan (box volume).
Int oracle_cells(const BallSpec& ball);

struct EpsilonRule {
    enum class Kind { Fixed, Power };
    Kind kind = Kind::Fixed;
    Rat fixed;
    double alpha_prime = 0; // eps_n = m(B_n^f)^(-alpha')
    unsigned bits = BallSpec::kDefaultBits;

    static EpsilonRule constant(Rat eps) { return {Kind::Fixed, std::move(eps), 0, BallSpec::kDefaultBits}; }
    static EpsilonRule power(double alpha_prime) { return {Kind::Power, Rat(0), alpha_prime, BallSpec::kDefaultBits}; }

    Rat epsilon_for(std::uint64_t n, std::size_t n_dim) const;
};

struct CountRow {
    std::uint64_t n = 0;
    Rat epsilon;
    std::optional<std::uint64_t> count; // empty when skipped
    std::string skip_reason;
    Strategy strategy = Strategy::Optimized;
    double elapsed_ms = 0;
};

std::vector<CountRow> count_table(const RatMatrix& center, const std::vector<std::uint64_t>& n_list,
                                  const EpsilonRule& rule, Strategy strategy = Strategy::Optimized,
                                  const EnumerationOptions& opts = {});

} // namespace dioph
