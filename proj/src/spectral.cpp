#include "dioph/spectral.hpp"

#include <array>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "dioph/errors.hpp"
#include "dioph/volumes.hpp"

namespace dioph {

HeckeGraph HeckeGraph::from_neighbors(std::size_t vertex_count, std::size_t degree,
                                      std::vector<std::uint32_t> neighbors) {
    if (neighbors.size() != vertex_count * degree)
        throw InvalidArgument("neighbor list must hold vertex_count * degree entries");
    for (auto v : neighbors)
        if (v >= vertex_count)
            throw InvalidArgument("neighbor index out of range");
    HeckeGraph g;
    g.vertex_count = vertex_count;
    g.degree = degree;
    g.neighbors = std::move(neighbors);
    return g;
}

namespace {

using i64 = std::int64_t;

i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

// Gauss reduction of the row basis; (r1, r2) -> (-r2, r1) keeps the determinant.
std::array<i64, 4> reduce_rows(std::array<i64, 4> g) {
    i64 a = g[0], b = g[1], c = g[2], d = g[3];
    auto norm = [](i64 x, i64 y) { return x * x + y * y; };
    while (true) {
        if (norm(c, d) < norm(a, b)) {
            i64 na = -c, nb = -d;
            c = a;
            d = b;
            a = na;
            b = nb;
        }
        i64 n1 = norm(a, b);
        i64 dot = a * c + b * d;
        i64 k = floor_div(2 * dot + n1, 2 * n1);
        if (k == 0)
            break;
        c -= k * a;
        d -= k * b;
        if (norm(c, d) >= n1)
            break;
    }
    return {a, b, c, d};
}

std::uint64_t mod(i64 x, std::uint64_t q) {
    i64 r = x % static_cast<i64>(q);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<i64>(q) : r);
}

} // namespace

std::vector<std::array<std::int64_t, 4>> hecke_representatives(std::uint64_t p, unsigned l) {
    if (!is_prime(p))
        throw InvalidArgument(std::to_string(p) + " is not prime");
    const std::uint64_t m = checked_pow(p, 2 * l);
    if (m > (std::uint64_t(1) << 24))
        throw BudgetExceeded(std::to_string(1 << 24), std::to_string(m));
    std::vector<std::array<i64, 4>> out;
    for (std::uint64_t a = 1; a <= m; a *= p) {
        std::uint64_t d = m / a;
        for (std::uint64_t b = 0; b < d; ++b) {
            bool primitive = a == 1 || d == 1 || b % p != 0;
            if (primitive)
                out.push_back(reduce_rows({i64(a), i64(b), 0, i64(d)}));
        }
    }
    return out;
}

HeckeGraph build_hecke_graph(std::uint64_t p, std::uint64_t q, unsigned l, std::uint64_t vertex_budget) {
    if (q < 2)
        throw InvalidArgument("level q must be >= 2");
    if (gcd_u64(p, q) != 1)
        throw InvalidArgument("need gcd(p, q) = 1");
    if (q > 1000)
        throw BudgetExceeded(std::to_string(vertex_budget), "q = " + std::to_string(q));
    // |SL_2(Z/q)| = q^3 prod_{p | q} (1 - p^-2).
    Int order = Int(static_cast<unsigned long>(q)) * q * q;
    for (const auto& pp : factor_u64(q)) {
        order /= Int(static_cast<unsigned long>(pp.p * pp.p));
        order *= Int(static_cast<unsigned long>(pp.p * pp.p - 1));
    }
    if (order > Int(std::to_string(vertex_budget)))
        throw BudgetExceeded(std::to_string(vertex_budget), order.get_str());

    const std::uint64_t q2 = q * q, q3 = q2 * q;
    std::vector<std::int32_t> index(q3 * q, -1);
    std::vector<std::array<std::uint64_t, 4>> verts;
    for (std::uint64_t a = 0; a < q; ++a)
        for (std::uint64_t b = 0; b < q; ++b)
            for (std::uint64_t c = 0; c < q; ++c)
                for (std::uint64_t d = 0; d < q; ++d)
                    if ((a * d + q2 - (b * c) % q2) % q == 1 % q) {
                        index[a * q3 + b * q2 + c * q + d] = static_cast<std::int32_t>(verts.size());
                        verts.push_back({a, b, c, d});
                    }

    // p^-l mod q scales determinant p^(2l) to 1.
    std::uint64_t pl = 1;
    for (unsigned i = 0; i < l; ++i)
        pl = pl * (p % q) % q;
    std::uint64_t inv = 0;
    for (std::uint64_t x = 1; x < q; ++x)
        if (pl * x % q == 1)
            inv = x;
    std::vector<std::array<std::uint64_t, 4>> gens;
    for (const auto& h : hecke_representatives(p, l))
        gens.push_back({mod(h[0], q) * inv % q, mod(h[1], q) * inv % q, mod(h[2], q) * inv % q,
                        mod(h[3], q) * inv % q});

    HeckeGraph g;
    g.p = p;
    g.q = q;
    g.l = l;
    g.vertex_count = verts.size();
    g.degree = gens.size();
    g.neighbors.resize(g.vertex_count * g.degree);
    for (std::size_t v = 0; v < verts.size(); ++v) {
        const auto& x = verts[v];
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const auto& s = gens[i];
            std::uint64_t a = (s[0] * x[0] + s[1] * x[2]) % q;
            std::uint64_t b = (s[0] * x[1] + s[1] * x[3]) % q;
            std::uint64_t c = (s[2] * x[0] + s[3] * x[2]) % q;
            std::uint64_t d = (s[2] * x[1] + s[3] * x[3]) % q;
            std::int32_t w = index[a * q3 + b * q2 + c * q + d];
            if (w < 0)
                throw std::logic_error("Hecke generator left SL_2(Z/q)");
            g.neighbors[v * g.degree + i] = static_cast<std::uint32_t>(w);
        }
    }
    return g;
}

namespace {

// y = S x with S = (P + P^T)/2 - J/V.
void apply_sym(const HeckeGraph& g, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    const std::size_t V = g.vertex_count, k = g.degree;
    y.setZero(static_cast<Eigen::Index>(V));
    const double w = 0.5 / static_cast<double>(k);
    for (std::size_t v = 0; v < V; ++v)
        for (std::size_t i = 0; i < k; ++i) {
            std::uint32_t u = g.neighbors[v * k + i];
            y[v] += w * x[u];
            y[u] += w * x[v];
        }
    y.array() -= x.sum() / static_cast<double>(V);
}

} // namespace

double second_singular_value(const HeckeGraph& g, const SpectralOptions& opts) {
    const std::size_t V = g.vertex_count;
    if (V < 2)
        return 0.0;
    if (g.degree == 0)
        throw InvalidArgument("graph has degree 0");
    const auto n = static_cast<Eigen::Index>(V);
    if (V <= opts.dense_limit) {
        Eigen::MatrixXd S = Eigen::MatrixXd::Constant(n, n, -1.0 / static_cast<double>(V));
        const double w = 0.5 / static_cast<double>(g.degree);
        for (std::size_t v = 0; v < V; ++v)
            for (std::size_t i = 0; i < g.degree; ++i) {
                std::uint32_t u = g.neighbors[v * g.degree + i];
                S(static_cast<Eigen::Index>(v), u) += w;
                S(u, static_cast<Eigen::Index>(v)) += w;
            }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
        if (es.info() != Eigen::Success)
            throw ConvergenceFailure(std::numeric_limits<double>::infinity());
        const auto& ev = es.eigenvalues();
        Eigen::Index top = ev.cwiseAbs().maxCoeff() == std::abs(ev[0]) ? 0 : n - 1;
        double lambda = std::abs(ev[top]);
        double residual = (S * es.eigenvectors().col(top) - ev[top] * es.eigenvectors().col(top)).norm();
        if (residual > opts.tolerance)
            throw ConvergenceFailure(residual);
        return lambda;
    }
    // Power iteration on S^2 from a deterministic mean-zero start.
    Eigen::VectorXd x(n), y(n), z(n);
    for (Eigen::Index i = 0; i < n; ++i)
        x[i] = std::sin(1.0 + 0.7 * static_cast<double>(i)) + 0.3 * std::cos(0.11 * static_cast<double>(i * i));
    x.array() -= x.mean();
    x.normalize();
    double mu = 0, residual = std::numeric_limits<double>::infinity();
    for (std::size_t it = 0; it < opts.max_iterations; ++it) {
        apply_sym(g, x, y);
        apply_sym(g, y, z);
        mu = x.dot(z);
        residual = (z - mu * x).norm();
        if (residual <= opts.tolerance)
            return std::sqrt(std::max(0.0, mu));
        double nz = z.norm();
        if (nz == 0)
            return 0.0;
        x = z / nz;
    }
    throw ConvergenceFailure(residual);
}

GapReport gap_decay_report(std::uint64_t p, std::uint64_t q, unsigned l_min, unsigned l_max,
                           const SpectralOptions& opts, std::uint64_t vertex_budget) {
    GapReport rep;
    rep.p = p;
    rep.q = q;
    for (unsigned l = l_min; l <= l_max; ++l) {
        HeckeGraph g = build_hecke_graph(p, q, l, vertex_budget);
        rep.rows.push_back({l, sl2_ball_volume_closed_form(p, l), second_singular_value(g, opts)});
    }
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rep.rows)
        if (r.l >= 1 && r.lambda2 > 0)
            pts.emplace_back(log_int(r.volume), std::log(r.lambda2));
    if (pts.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0, k = static_cast<double>(pts.size());
        for (auto [x, y] : pts) {
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double den = k * sxx - sx * sx;
        if (den > 0)
            rep.slope = (k * sxy - sx * sy) / den;
    }
    rep.pass = rep.slope && *rep.slope <= -0.25 + 0.05;
    return rep;
}

} // namespace dioph
