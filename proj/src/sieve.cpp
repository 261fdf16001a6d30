#include "dioph/sieve.hpp"

#include <cmath>
#include <limits>

namespace dioph {

SievedValue coprime_part(const Rat& w, std::uint64_t n, const FactorBudget& budget) {
    if (w == 0)
        throw ZeroValue();
    SievedValue sv;
    sv.raw = w;
    sv.n = n;
    sv.coprime_part = n_coprime_value(w, factor_u64(n));
    if (sv.coprime_part > 1)
        sv.factors = factor_int(sv.coprime_part, budget);
    sv.factor_count = sv.factors.count();
    sv.complete = sv.factors.complete();
    return sv;
}

std::optional<bool> is_r_prime(const RationalGroupPoint& z, const PolynomialFamily& f, std::uint64_t n,
                               unsigned r, const FactorBudget& budget) {
    SievedValue sv = coprime_part(eval_family(f, z).value, n, budget);
    if (sv.complete)
        return sv.factor_count <= r;
    if (sv.factor_count > r)
        return false;
    return std::nullopt;
}

std::map<Int, std::uint64_t> value_histogram(const std::vector<RationalGroupPoint>& points,
                                             const PolynomialFamily& f, std::uint64_t n) {
    const auto nf = factor_u64(n);
    std::map<Int, std::uint64_t> hist;
    for (const auto& z : points)
        ++hist[n_coprime_value(eval_family(f, z).value, nf)];
    return hist;
}

std::uint64_t residue_class_sum(const std::map<Int, std::uint64_t>& histogram, std::uint64_t q) {
    std::uint64_t total = 0;
    for (const auto& [k, a] : histogram)
        if (mpz_divisible_ui_p(k.get_mpz_t(), q))
            total += a;
    return total;
}

namespace {

bool sieve_excluded(std::uint64_t p, std::uint64_t n, const Int& delta) {
    return n % p == 0 || mpz_divisible_ui_p(delta.get_mpz_t(), p);
}

bool prime_to(std::uint64_t q, std::uint64_t n, const Int& delta) {
    for (const auto& pp : factor_u64(q))
        if (sieve_excluded(pp.p, n, delta))
            return false;
    return true;
}

} // namespace

AxiomReport axiom_report(const std::vector<RationalGroupPoint>& points, const PolynomialFamily& f,
                         DensityFunction& rho, const Int& delta, const AxiomParams& params) {
    const std::uint64_t n = rho.n();
    AxiomReport rep;
    rep.T = points.size();
    rho.ensure_primes_up_to(std::max<std::uint64_t>(params.q_max, static_cast<std::uint64_t>(params.z)));

    auto hist = value_histogram(points, f, n);
    const Rat T(static_cast<unsigned long>(rep.T));
    rep.sum_abs_remainders = 0;
    for (std::uint64_t q = 1; q <= params.q_max; ++q) {
        if (!is_squarefree(q) || !prime_to(q, n, delta))
            continue;
        Rat a_q(static_cast<unsigned long>(residue_class_sum(hist, q)));
        Rat r = a_q - rho.rho(q) / Rat(static_cast<unsigned long>(q)) * T;
        rep.sum_abs_remainders += abs(r);
        rep.remainders.emplace(q, r);
    }
    if (rep.T > 1) {
        double logT = std::log(static_cast<double>(rep.T));
        rep.zeta = rep.sum_abs_remainders > 0 ? 1.0 - log_rat(rep.sum_abs_remainders) / logT : 1.0;
    }

    for (const auto& [p, d] : rho.values()) {
        if (sieve_excluded(p, n, delta))
            continue;
        if (d.rho < 0 || d.rho >= Rat(static_cast<unsigned long>(p)))
            rep.a0_holds = false;
    }

    const std::size_t t = f.t();
    for (std::uint64_t p : primes_up_to(static_cast<std::uint64_t>(std::ceil(params.z)))) {
        double pd = static_cast<double>(p);
        if (pd < params.w || pd >= params.z || sieve_excluded(p, n, delta))
            continue;
        rep.a2_sum += rho.at_prime(p).rho.get_d() * std::log(pd) / pd;
    }
    rep.a2_main = static_cast<double>(t) * std::log(params.z / params.w);
    double dev = rep.a2_sum - rep.a2_main;
    rep.a2_holds = dev >= -params.l && dev <= params.c3;
    return rep;
}

SieveBound beta_sieve_lower_bound(std::uint64_t T, const DensityFunction& rho, std::size_t t, double tau,
                                  double s, double l, std::optional<double> z, const Int& delta,
                                  const SieveConstants& c) {
    if (!(s > 9.0 * static_cast<double>(t)))
        throw InvalidArgument("sieve bound needs s > 9t");
    if (!(tau > 0))
        throw InvalidArgument("tau must be positive");
    SieveBound b;
    b.z = z ? *z : std::pow(static_cast<double>(T), tau / s);
    b.W = 1;
    const std::uint64_t n = rho.n();
    if (b.z >= 2) {
        for (std::uint64_t p : primes_up_to(static_cast<std::uint64_t>(std::floor(b.z)))) {
            if (sieve_excluded(p, n, delta))
                continue;
            b.W *= Rat(1) - rho.at_prime(p).rho / Rat(static_cast<unsigned long>(p));
        }
    }
    if (T <= 1) {
        b.lower_bound = -std::numeric_limits<double>::infinity();
    } else {
        double Td = static_cast<double>(T);
        double logT = std::log(Td);
        double ll = std::log(std::log(3.0 * Td));
        double err = c.C2 * l * std::pow(ll, 3.0 * static_cast<double>(t) + 2.0) / logT;
        b.lower_bound = Td * b.W.get_d() * (c.C1 - err);
    }
    b.vacuous = !(b.lower_bound > 0);
    return b;
}

AlmostPrimeCount almost_prime_count(const std::vector<RationalGroupPoint>& points, const PolynomialFamily& f,
                                    std::uint64_t n, double z, const Int& delta) {
    std::vector<std::uint64_t> sieve_primes;
    if (z >= 2)
        for (std::uint64_t p : primes_up_to(static_cast<std::uint64_t>(std::floor(z))))
            if (!sieve_excluded(p, n, delta))
                sieve_primes.push_back(p);
    const auto nf = factor_u64(n);
    AlmostPrimeCount out;
    for (const auto& pt : points) {
        Int w = n_coprime_value(eval_family(f, pt).value, nf);
        if (w == 0) {
            ++out.zeros_excluded;
            continue;
        }
        bool rough = true;
        for (std::uint64_t p : sieve_primes)
            if (mpz_divisible_ui_p(w.get_mpz_t(), p)) {
                rough = false;
                break;
            }
        out.count += rough;
    }
    return out;
}

SieveReport sieve_report(const std::vector<RationalGroupPoint>& points, const PolynomialFamily& f,
                         std::uint64_t n, const SieveReportParams& params) {
    for (const auto& z : points)
        if (z.den() != n)
            throw InvalidArgument("point " + z.to_string() + " does not have denominator " + std::to_string(n));
    SieveReport r;
    r.n = n;
    r.T = points.size();
    r.t = f.t();
    r.tau = params.tau;
    r.s = params.s;
    r.l = params.l;
    r.constants = params.constants;
    r.delta = delta_n(f, n).delta;
    DensityFunction rho(f, n);
    r.axioms = axiom_report(points, f, rho, r.delta, params.axioms);
    double z = params.z ? *params.z : std::pow(static_cast<double>(r.T), params.tau / params.s);
    rho.ensure_primes_up_to(static_cast<std::uint64_t>(std::max(2.0, std::floor(z))));
    r.bound = beta_sieve_lower_bound(r.T, rho, r.t, params.tau, params.s, params.l, z, r.delta, params.constants);
    r.direct = almost_prime_count(points, f, n, z, r.delta);
    return r;
}

Json to_json(const SieveReport& r) {
    Json rem = Json::object();
    for (const auto& [q, v] : r.axioms.remainders)
        rem[std::to_string(q)] = rational_json(v);
    Json axioms{
        {"remainders", rem},
        {"sum_abs_remainders", rational_json(r.axioms.sum_abs_remainders)},
        {"zeta", r.axioms.zeta ? Json(*r.axioms.zeta) : Json(nullptr)},
        {"a0_holds", r.axioms.a0_holds},
        {"a2_sum", r.axioms.a2_sum},
        {"a2_main", r.axioms.a2_main},
        {"a2_holds", r.axioms.a2_holds},
    };
    double lb = r.bound.lower_bound;
    return Json{
        {"n", r.n},
        {"T", r.T},
        {"delta", r.delta.get_str()},
        {"t", r.t},
        {"tau", r.tau},
        {"s", r.s},
        {"l", r.l},
        {"C1", r.constants.C1},
        {"C2", r.constants.C2},
        {"z", r.bound.z},
        {"W_z", rational_json(r.bound.W)},
        {"lower_bound", std::isfinite(lb) ? Json(lb) : Json("-inf")},
        {"vacuous", r.bound.vacuous},
        {"direct_count", r.direct.count},
        {"zeros_excluded", r.direct.zeros_excluded},
        {"axioms", axioms},
    };
}

} // namespace dioph
