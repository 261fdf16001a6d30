// dioph: command-line front end for the enumeration, volume, density, sieve,
// spectral and witness routines.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dioph/densities.hpp"
#include "dioph/engine.hpp"
#include "dioph/json_io.hpp"
#include "dioph/sieve.hpp"
#include "dioph/spectral.hpp"
#include "dioph/volumes.hpp"

using namespace dioph;

namespace {

enum Exit { kOk = 0, kFailure = 1, kBudget = 2, kNoWitness = 3, kInvalid = 4 };

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty())
            out.push_back(item);
    return out;
}

std::uint64_t parse_u64(const std::string& s) {
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(s, &used);
        if (used != s.size() || s.front() == '-')
            throw InvalidArgument("not a non-negative integer: '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw InvalidArgument("not a non-negative integer: '" + s + "'");
    }
}

// "2,3,5" or "2:13" (inclusive range) or a mix: "2:5,11".
std::vector<std::uint64_t> parse_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    for (const auto& part : split(s, ',')) {
        auto colon = part.find(':');
        if (colon == std::string::npos) {
            out.push_back(parse_u64(part));
            continue;
        }
        std::uint64_t lo = parse_u64(part.substr(0, colon)), hi = parse_u64(part.substr(colon + 1));
        for (std::uint64_t v = lo; v <= hi; ++v)
            out.push_back(v);
    }
    return out;
}

std::vector<std::uint64_t> primes_in(const std::vector<std::uint64_t>& xs) {
    std::vector<std::uint64_t> out;
    for (auto x : xs)
        if (is_prime(x))
            out.push_back(x);
    return out;
}

RatMatrix parse_center(const std::string& s, std::size_t N) {
    if (s.empty())
        return RatMatrix::identity(N);
    std::vector<double> xs;
    for (const auto& part : split(s, ',')) {
        try {
            std::size_t used = 0;
            xs.push_back(std::stod(part, &used));
            if (used != part.size())
                throw std::invalid_argument(part);
        } catch (const std::logic_error&) {
            throw InvalidArgument("bad center entry '" + part + "'");
        }
    }
    return snap_center(N, xs);
}

PolynomialFamily load_family(const std::string& preset, const std::string& file, std::size_t N) {
    if (file.empty())
        return PolynomialFamily::preset(preset, N);
    std::ifstream in(file);
    if (!in)
        throw InvalidArgument("cannot open polynomial file " + file);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw InvalidArgument(std::string("polynomial file is not JSON: ") + e.what());
    }
    PolynomialFamily f = family_from_json(j);
    if (f.n_dim() != N)
        throw InvalidArgument("polynomial file dimension does not match --group");
    return f;
}

struct Global {
    std::string group = "sl2";
    bool json = false;
    bool csv = false;
    std::uint64_t budget = 0;
    std::uint64_t seed = 1;
    std::string config;

    std::size_t n_dim() const { return group == "sl3" ? 3 : 2; }
};

EngineConfig load_config(const Global& g) {
    if (g.config.empty())
        return EngineConfig{};
    std::ifstream in(g.config);
    if (!in)
        throw InvalidArgument("cannot open config " + g.config);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw InvalidArgument(std::string("config is not JSON: ") + e.what());
    }
    return EngineConfig::from_json(j);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rational points of bounded denominator on SL_N: enumeration, volumes, densities, sieve data"};
    app.require_subcommand(1);
    Global g;
    app.add_option("--group", g.group, "sl2 or sl3")->check(CLI::IsMember({"sl2", "sl3"}));
    app.add_flag("--json", g.json, "JSON output where a table is printed");
    app.add_flag("--csv", g.csv, "CSV output (default for tables)");
    app.add_option("--budget", g.budget, "override the main search budget of the subcommand");
    app.add_option("--seed", g.seed, "seed for the randomized factorizer");
    app.add_option("--config", g.config, "JSON config: rG, iota, C1, C2, budgets");

    std::string center, eps = "0.5", strategy = "optimized", poly = "entry11", poly_file;
    std::uint64_t n = 2;

    auto* en = app.add_subcommand("enumerate", "list B_n(x, eps) as JSON lines plus a summary record");
    en->add_option("--center", center, "N*N comma-separated real entries, row-major (default identity)");
    en->add_option("--eps", eps, "radius, exact decimal or fraction");
    en->add_option("--n", n, "denominator")->required();
    en->add_option("--strategy", strategy)->check(CLI::IsMember({"optimized", "oracle"}));

    std::string primes = "2,3,5,7,11,13";
    unsigned lmax = 3;
    auto* vo = app.add_subcommand("volumes", "closed-form and oracle local ball volumes");
    vo->add_option("--p", primes, "primes, e.g. 2,3,5 or 2:13");
    vo->add_option("--lmax", lmax);

    std::string qs, p_range;
    auto* de = app.add_subcommand("density", "congruence densities rho(q)");
    de->add_option("--poly", poly, "presets: entryIJ, trace-minus-2, sum-of-entries (comma list = factors)");
    de->add_option("--poly-file", poly_file, "JSON coefficient file");
    de->add_option("--q", qs, "square-free moduli, e.g. 2,5,10");
    de->add_option("--p-range", p_range, "primes in a range, e.g. 2:13");

    std::string input = "-";
    double tau = 0.1, s_param = 10, l_param = 3;
    std::optional<double> z_opt;
    std::uint64_t q_max = 30;
    auto* si = app.add_subcommand("sieve", "sieve report for enumerated points (JSON lines on stdin or --input)");
    si->add_option("--input", input, "JSON-lines file from `enumerate`, - for stdin");
    si->add_option("--poly", poly);
    si->add_option("--poly-file", poly_file);
    si->add_option("--tau", tau);
    si->add_option("--s", s_param, "must exceed 9t");
    si->add_option("--l", l_param);
    si->add_option("--z", z_opt, "sifting level (default T^(tau/s))");
    si->add_option("--q-max", q_max, "largest modulus for remainder terms");

    std::uint64_t sp_p = 2, sp_q = 5;
    unsigned sp_lmin = 1;
    lmax = 3;
    auto* sp = app.add_subcommand("spectral", "second singular value of Hecke operators mod q");
    sp->add_option("--p", sp_p)->required();
    sp->add_option("--q", sp_q)->required();
    sp->add_option("--lmin", sp_lmin);
    sp->add_option("--lmax", lmax);

    unsigned d = 3, deg = 1, delta = 0;
    std::size_t t = 1;
    std::string a = "2", alpha;
    std::optional<unsigned> iota_opt;
    auto* pa = app.add_subcommand("params", "alpha0, r, kappa, tau0 for given d, a, alpha");
    pa->add_option("--d", d);
    pa->add_option("--a", a);
    pa->add_option("--alpha", alpha)->required();
    pa->add_option("--t", t);
    pa->add_option("--deg", deg);
    pa->add_option("--delta", delta);
    pa->add_option("--iota", iota_opt, "overrides the value derived from rG");

    std::optional<double> w_alpha;
    std::string threshold;
    auto* wi = app.add_subcommand("witness", "point of denominator n within n^-alpha minimizing prime factors");
    wi->add_option("--n", n)->required();
    wi->add_option("--alpha", w_alpha);
    wi->add_option("--threshold", threshold, "radius directly (instead of --alpha)");
    wi->add_option("--center", center);
    wi->add_option("--poly", poly);
    wi->add_option("--poly-file", poly_file);

    std::string centers, n_list, alpha_prime;
    std::uint64_t count_threshold = 1000;
    auto* vc = app.add_subcommand("verify-count", "ratio T / ((2 eps)^d m(B_n^f)) across cells");
    vc->add_option("--centers", centers, "semicolon-separated centers (default identity)");
    vc->add_option("--n", n_list, "moduli, e.g. 53,59,61")->required();
    vc->add_option("--eps", eps, "fixed radius");
    vc->add_option("--alpha-prime", alpha_prime, "use eps_n = m(B_n^f)^-alpha' instead");
    vc->add_option("--threshold", count_threshold, "minimum count for a significant cell");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        const std::size_t N = g.n_dim();
        EngineConfig cfg = load_config(g);
        FactorBudget fb;
        fb.seed = g.seed;

        if (*en) {
            EnumerationOptions opts = cfg.enumeration_options();
            Strategy st = strategy == "oracle" ? Strategy::Oracle : Strategy::Optimized;
            if (g.budget)
                (st == Strategy::Oracle ? opts.oracle_cell_budget : opts.optimized_row_budget) = g.budget;
            auto res = enumerate_points(BallSpec::make(parse_center(center, N), parse_rational(eps), n), st, opts);
            for (const auto& z : res.points)
                std::cout << to_json(z).dump() << '\n';
            Json summary{{"count", res.count()},
                         {"elapsed_ms", res.elapsed_ms},
                         {"strategy", to_string(res.strategy)},
                         {"status", res.status == EnumerationStatus::Aborted ? "aborted" : "complete"}};
            std::cout << summary.dump() << '\n';
            return kOk;
        }

        if (*vo) {
            std::uint64_t budget = g.budget ? g.budget : 50'000'000;
            Json rows = Json::array();
            if (!g.json)
                std::cout << "p,l,closed_form,oracle,match\n";
            for (std::uint64_t p : parse_list(primes)) {
                if (N == 2) {
                    for (const auto& r : local_volume_table(p, lmax, budget).rows) {
                        std::string oracle = r.oracle ? r.oracle->get_str() : "";
                        if (g.json)
                            rows.push_back({{"p", p}, {"l", r.l}, {"closed_form", r.closed_form.get_str()},
                                            {"oracle", oracle}, {"match", r.match}});
                        else
                            std::cout << p << ',' << r.l << ',' << r.closed_form.get_str() << ',' << oracle << ','
                                      << (r.match ? "true" : "false") << '\n';
                    }
                } else {
                    for (unsigned l = 0; l <= lmax; ++l) {
                        std::string oracle = hnf_coset_oracle(p, l, N, budget).get_str();
                        if (g.json)
                            rows.push_back({{"p", p}, {"l", l}, {"closed_form", nullptr}, {"oracle", oracle}, {"match", nullptr}});
                        else
                            std::cout << p << ',' << l << ",," << oracle << ",\n";
                    }
                }
            }
            if (g.json)
                std::cout << rows.dump(2) << '\n';
            return kOk;
        }

        if (*de) {
            PolynomialFamily f = load_family(poly, poly_file, N);
            std::vector<std::uint64_t> moduli = parse_list(qs);
            for (auto p : primes_in(parse_list(p_range)))
                moduli.push_back(p);
            if (moduli.empty())
                throw InvalidArgument("give --q or --p-range");
            std::uint64_t budget = g.budget ? g.budget : cfg.density_budget;
            Json rows = Json::array();
            if (!g.json)
                std::cout << "q,rho_num,rho_den,order\n";
            for (std::uint64_t q : moduli) {
                LocalDensity ld = local_density(f, q, DensityRoute::Auto, budget);
                if (g.json)
                    rows.push_back({{"q", q}, {"rho", rational_json(ld.rho)}, {"order", ld.order.get_str()}});
                else
                    std::cout << q << ',' << ld.rho.get_num().get_str() << ',' << ld.rho.get_den().get_str() << ','
                              << ld.order.get_str() << '\n';
            }
            if (g.json)
                std::cout << rows.dump(2) << '\n';
            return kOk;
        }

        if (*si) {
            PolynomialFamily f = load_family(poly, poly_file, N);
            std::ifstream file;
            std::istream* in = &std::cin;
            if (input != "-") {
                file.open(input);
                if (!file)
                    throw InvalidArgument("cannot open " + input);
                in = &file;
            }
            std::vector<RationalGroupPoint> points;
            std::string line;
            while (std::getline(*in, line)) {
                if (line.find_first_not_of(" \t\r") == std::string::npos)
                    continue;
                Json j;
                try {
                    j = Json::parse(line);
                } catch (const Json::exception& e) {
                    throw InvalidArgument(std::string("bad JSON line: ") + e.what());
                }
                if (j.contains("u"))
                    points.push_back(point_from_json(j));
            }
            if (points.empty())
                throw InvalidArgument("no points on input");
            std::uint64_t den = points.front().den().get_ui();
            SieveReportParams params;
            params.tau = tau;
            params.s = s_param;
            params.l = l_param;
            params.z = z_opt;
            params.constants = {cfg.C1, cfg.C2};
            params.axioms.q_max = q_max;
            params.axioms.l = l_param;
            std::cout << to_json(sieve_report(points, f, den, params)).dump(2) << '\n';
            return kOk;
        }

        if (*sp) {
            SpectralOptions opts;
            GapReport rep = gap_decay_report(sp_p, sp_q, sp_lmin, lmax, opts, g.budget ? g.budget : cfg.vertex_budget);
            if (g.json) {
                Json rows = Json::array();
                for (const auto& r : rep.rows)
                    rows.push_back({{"l", r.l}, {"volume", r.volume.get_str()}, {"lambda2", r.lambda2}});
                std::cout << Json{{"rows", rows},
                                  {"slope", rep.slope ? Json(*rep.slope) : Json(nullptr)},
                                  {"pass", rep.pass}}
                                 .dump(2)
                          << '\n';
            } else {
                std::cout << "l,volume,lambda2\n";
                for (const auto& r : rep.rows)
                    std::cout << r.l << ',' << r.volume.get_str() << ',' << r.lambda2 << '\n';
                std::cout << "slope," << (rep.slope ? std::to_string(*rep.slope) : "undefined") << ",pass,"
                          << (rep.pass ? "true" : "false") << '\n';
            }
            return kOk;
        }

        if (*pa) {
            ParameterInput in;
            in.d = d;
            in.a = parse_rational(a);
            in.rG = cfg.rG;
            in.iota = iota_opt ? *iota_opt : cfg.resolved_iota();
            in.alpha = parse_rational(alpha);
            in.t = t;
            in.deg_f = deg;
            in.delta_n = delta;
            std::cout << to_json(theorem_parameters(in)).dump(2) << '\n';
            return kOk;
        }

        if (*wi) {
            if (w_alpha.has_value() == !threshold.empty())
                throw InvalidArgument("give exactly one of --alpha and --threshold");
            Rat thr = w_alpha ? threshold_from_alpha(n, *w_alpha) : parse_rational(threshold);
            EnumerationOptions opts = cfg.enumeration_options();
            if (g.budget)
                opts.optimized_row_budget = g.budget;
            auto rec = find_witness(parse_center(center, N), n, thr, load_family(poly, poly_file, N), opts, fb);
            std::cout << to_json(rec).dump(2) << '\n';
            return kOk;
        }

        if (*vc) {
            std::vector<RatMatrix> xs;
            for (const auto& c : split(centers, ';'))
                xs.push_back(parse_center(c, N));
            if (xs.empty())
                xs.push_back(RatMatrix::identity(N));
            EpsilonRule rule = alpha_prime.empty() ? EpsilonRule::constant(parse_rational(eps))
                                                   : EpsilonRule::power(std::stod(alpha_prime));
            EnumerationOptions opts = cfg.enumeration_options();
            if (g.budget)
                opts.optimized_row_budget = g.budget;
            auto rep = counting_verification(xs, parse_list(n_list), rule, count_threshold, opts);
            std::cout << "x,n,eps,T,ratio,significant\n";
            for (const auto& c : rep.cells)
                std::cout << c.x_index << ',' << c.n << ',' << to_string(c.epsilon) << ',' << c.T << ',' << c.ratio
                          << ',' << (c.significant ? "true" : "false") << '\n';
            for (const auto& sk : rep.skipped)
                std::cerr << "skipped " << sk << '\n';
            std::cout << "spread," << (rep.spread ? std::to_string(*rep.spread) : "not-significant") << '\n';
            return kOk;
        }
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBudget;
    } catch (const NoWitness& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNoWitness;
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
        return e.code() == ErrorCode::ConvergenceFailure || e.code() == ErrorCode::Aborted ? kFailure : kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kFailure;
}
