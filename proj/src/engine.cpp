#include "dioph/engine.hpp"

#include <chrono>
#include <cmath>
#include <tuple>

#include "dioph/volumes.hpp"

namespace dioph {

unsigned iota_from_rG(const Rat& rG) {
    if (rG < 2)
        throw InvalidArgument("r(G) must be >= 2");
    if (rG == 2)
        return 1;
    Int half = ceil_rat(rG / 2);
    if (half % 2 != 0)
        half += 1;
    return static_cast<unsigned>(half.get_ui());
}

unsigned EngineConfig::resolved_iota() const { return iota ? *iota : iota_from_rG(rG); }

EnumerationOptions EngineConfig::enumeration_options() const {
    EnumerationOptions o;
    o.oracle_cell_budget = oracle_cell_budget;
    o.optimized_row_budget = optimized_row_budget;
    return o;
}

namespace {

Rat rat_from_json(const Json& j) {
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return Rat(static_cast<long>(j.get<long long>()));
    if (j.is_number())
        return parse_rational(j.dump());
    throw InvalidArgument("expected a number, got " + j.dump());
}

} // namespace

EngineConfig EngineConfig::from_json(const Json& j) {
    EngineConfig c;
    try {
        if (j.contains("rG"))
            c.rG = rat_from_json(j["rG"]);
        if (j.contains("iota")) {
            c.iota = j["iota"].get<unsigned>();
            if (*c.iota < 1)
                throw InvalidArgument("iota must be >= 1");
        }
        if (j.contains("C1"))
            c.C1 = j["C1"].get<double>();
        if (j.contains("C2"))
            c.C2 = j["C2"].get<double>();
        if (j.contains("budgets")) {
            const Json& b = j["budgets"];
            c.oracle_cell_budget = b.value("oracle_cells", c.oracle_cell_budget);
            c.optimized_row_budget = b.value("optimized_rows", c.optimized_row_budget);
            c.density_budget = b.value("density_order", c.density_budget);
            c.vertex_budget = b.value("spectral_vertices", c.vertex_budget);
        }
    } catch (const Json::exception& e) {
        throw InvalidArgument(std::string("malformed config: ") + e.what());
    }
    iota_from_rG(c.rG);
    return c;
}

Json EngineConfig::to_json() const {
    return Json{{"rG", dioph::to_string(rG)},
                {"iota", resolved_iota()},
                {"C1", C1},
                {"C2", C2},
                {"budgets",
                 {{"oracle_cells", oracle_cell_budget},
                  {"optimized_rows", optimized_row_budget},
                  {"density_order", density_budget},
                  {"spectral_vertices", vertex_budget}}}};
}

TheoremParameters theorem_parameters(const ParameterInput& in) {
    if (in.d < 1 || in.a <= 0 || in.iota < 1 || in.alpha <= 0 || in.t < 1)
        throw InvalidArgument("need d >= 1, a > 0, iota >= 1, alpha > 0, t >= 1");
    TheoremParameters p;
    p.input = in;
    const Rat d(static_cast<unsigned long>(in.d));
    const Rat four_iota(4ul * in.iota);
    p.alpha0 = in.a / (four_iota * d);
    p.alpha0_anisotropic = in.a / (Rat(2ul * in.iota) * d);
    if (in.alpha >= p.alpha0)
        throw AlphaTooLarge(dioph::to_string(p.alpha0));
    Rat gap = in.a / four_iota - in.alpha * d;
    Rat num = Rat(9ul * in.t * in.deg_f) * (d + 1) * (d + 1);
    p.r = Int(static_cast<unsigned long>(in.delta_n)) + ceil_rat(num / gap);
    p.alpha_prime = in.alpha / in.a;
    Rat gap_prime = Rat(1) / four_iota - p.alpha_prime * d;
    p.kappa = gap_prime / (p.alpha_prime * (d + 1));
    p.tau0 = gap_prime / ((d + 1) * (d + 1) * (Rat(1) - p.alpha_prime * d));
    return p;
}

Json to_json(const TheoremParameters& p) {
    return Json{{"d", p.input.d},
                {"a", rational_json(p.input.a)},
                {"iota", p.input.iota},
                {"rG", rational_json(p.input.rG)},
                {"alpha", rational_json(p.input.alpha)},
                {"t", p.input.t},
                {"deg_f", p.input.deg_f},
                {"delta_n", p.input.delta_n},
                {"alpha0", rational_json(p.alpha0)},
                {"r", p.r.get_str()},
                {"alpha_prime", rational_json(p.alpha_prime)},
                {"kappa", rational_json(p.kappa)},
                {"tau0", rational_json(p.tau0)},
                {"alpha0_anisotropic", rational_json(p.alpha0_anisotropic)}};
}

Rat threshold_from_alpha(std::uint64_t n, double alpha) {
    if (n < 1)
        throw InvalidArgument("n must be >= 1");
    return dyadic_floor(std::pow(static_cast<double>(n), -alpha), BallSpec::kDefaultBits);
}

WitnessRecord find_witness(const RatMatrix& x, std::uint64_t n, const Rat& threshold, const PolynomialFamily& f,
                           const EnumerationOptions& opts, const FactorBudget& factor_budget) {
    auto start = std::chrono::steady_clock::now();
    if (f.n_dim() != x.dim())
        throw InvalidArgument("family and center dimensions differ");
    auto res = enumerate_points(BallSpec::make(x, threshold, n), Strategy::Optimized, opts);
    if (res.status == EnumerationStatus::Aborted)
        throw Aborted();
    if (res.points.empty()) {
        std::string found;
        Rat eps = threshold;
        for (int k = 0; k < 40 && found.empty(); ++k) {
            eps *= 2;
            try {
                auto probe = enumerate_points(BallSpec::make(x, eps, n), Strategy::Optimized, opts);
                if (probe.count() > 0)
                    found = dioph::to_string(eps);
            } catch (const SearchSpaceTooLarge&) {
                break;
            }
        }
        throw NoWitness(dioph::to_string(threshold), found);
    }

    WitnessRecord best;
    bool have = false;
    // Zeros of f rank after every nonzero value.
    auto key = [](const WitnessRecord& w) {
        return std::make_tuple(w.factor_count ? *w.factor_count : ~0u, w.distance);
    };
    for (const auto& z : res.points) {
        WitnessRecord cand;
        cand.z = z;
        cand.distance = max_distance(z, x);
        Rat value = eval_family(f, z).value;
        if (value != 0) {
            SievedValue sv = coprime_part(value, n, factor_budget);
            cand.factor_count = sv.factor_count;
            cand.factor_complete = sv.complete;
        }
        // Points arrive in canonical order, so strict improvement keeps the first on ties.
        if (!have || key(cand) < key(best)) {
            best = std::move(cand);
            have = true;
        }
    }
    best.x = x;
    best.n = n;
    best.threshold = threshold;
    best.ball_count = res.count();
    best.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return best;
}

Json to_json(const WitnessRecord& w) {
    return Json{{"n", w.n},
                {"threshold", rational_json(w.threshold)},
                {"z", to_json(w.z)},
                {"distance", rational_json(w.distance)},
                {"factor_count", w.factor_count ? Json(*w.factor_count) : Json(nullptr)},
                {"factor_complete", w.factor_complete},
                {"ball_count", w.ball_count},
                {"elapsed_ms", w.elapsed_ms}};
}

CountingReport counting_verification(const std::vector<RatMatrix>& centers, const std::vector<std::uint64_t>& n_list,
                                     const EpsilonRule& rule, std::uint64_t count_threshold,
                                     const EnumerationOptions& opts) {
    CountingReport rep;
    rep.threshold = count_threshold;
    double lo = 0, hi = 0;
    bool any = false;
    for (std::size_t xi = 0; xi < centers.size(); ++xi) {
        const RatMatrix& x = centers[xi];
        const unsigned dim = static_cast<unsigned>(x.dim() * x.dim() - 1);
        for (std::uint64_t n : n_list) {
            CountingCell cell;
            cell.x_index = xi;
            cell.n = n;
            cell.epsilon = rule.epsilon_for(n, x.dim());
            try {
                auto res = enumerate_points(BallSpec::make(x, cell.epsilon, n), Strategy::Optimized, opts);
                if (res.status == EnumerationStatus::Aborted)
                    throw Aborted();
                cell.T = res.count();
            } catch (const SearchSpaceTooLarge& e) {
                rep.skipped.push_back("x" + std::to_string(xi) + " n=" + std::to_string(n) + ": " + e.what());
                continue;
            }
            Rat two_eps = cell.epsilon * 2;
            Rat vol = Rat(finite_volume(n, x.dim()));
            for (unsigned k = 0; k < dim; ++k)
                vol *= two_eps;
            cell.ratio = Rat(Rat(static_cast<unsigned long>(cell.T)) / vol).get_d();
            cell.significant = cell.T >= count_threshold;
            if (cell.significant) {
                lo = any ? std::min(lo, cell.ratio) : cell.ratio;
                hi = any ? std::max(hi, cell.ratio) : cell.ratio;
                any = true;
            }
            rep.cells.push_back(std::move(cell));
        }
    }
    if (any && lo > 0)
        rep.spread = hi / lo;
    return rep;
}

} // namespace dioph
