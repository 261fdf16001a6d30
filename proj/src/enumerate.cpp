#include "dioph/enumerate.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

#include "dioph/volumes.hpp"

namespace dioph {

const char* to_string(Strategy s) {
    return s == Strategy::Oracle ? "oracle" : "optimized";
}

namespace {

using i64 = std::int64_t;
using i128 = __int128;
using Cell = std::array<i64, 9>;

constexpr i64 kEntryLimit = i64(1) << 40;

struct Box {
    std::size_t n_dim = 0;
    std::array<i64, 9> lo{};
    std::array<i64, 9> hi{};
    i64 n = 1;
    i128 target = 1; // n^N
    bool empty = false;
};

i64 to_i64(const Int& x) {
    if (abs(x) > Int(std::to_string(kEntryLimit)))
        throw InvalidArgument("ball reaches numerator entries beyond 2^40");
    return static_cast<i64>(x.get_si());
}

Box make_box(const BallSpec& b) {
    const std::size_t N = b.dim();
    if (N != 2 && N != 3)
        throw UnsupportedDimension("enumeration supports N = 2 and N = 3, got N = " + std::to_string(N));
    if (b.modulus >= (std::uint64_t(1) << 40))
        throw InvalidArgument("modulus must be below 2^40");
    Box box;
    box.n_dim = N;
    box.n = static_cast<i64>(b.modulus);
    box.target = 1;
    for (std::size_t k = 0; k < N; ++k)
        box.target *= box.n;
    Rat n(static_cast<unsigned long>(b.modulus));
    for (std::size_t k = 0; k < N * N; ++k) {
        const Rat& x = b.center.entries()[k];
        Int lo = ceil_rat(n * (x - b.radius));
        Int hi = floor_rat(n * (x + b.radius));
        if (lo > hi) {
            box.empty = true;
            return box;
        }
        box.lo[k] = to_i64(lo);
        box.hi[k] = to_i64(hi);
    }
    return box;
}

i64 gcd64(i64 a, i64 b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

i128 det_cell(const Cell& u, std::size_t N) {
    if (N == 2)
        return i128(u[0]) * u[3] - i128(u[1]) * u[2];
    return i128(u[0]) * (i128(u[4]) * u[8] - i128(u[5]) * u[7]) -
           i128(u[1]) * (i128(u[3]) * u[8] - i128(u[5]) * u[6]) +
           i128(u[2]) * (i128(u[3]) * u[7] - i128(u[4]) * u[6]);
}

bool coprime_to_n(const Cell& u, std::size_t N, i64 n) {
    i64 g = n;
    for (std::size_t k = 0; k < N * N && g != 1; ++k)
        g = gcd64(g, u[k]);
    return g == 1;
}

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

// a*s + b*t = g = gcd(a, b) >= 0.
i128 ext_gcd(i128 a, i128 b, i128& s, i128& t) {
    i128 r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        i128 q = r0 / r1;
        i128 tmp = r0 - q * r1; r0 = r1; r1 = tmp;
        tmp = s0 - q * s1; s0 = s1; s1 = tmp;
        tmp = t0 - q * t1; t0 = t1; t1 = tmp;
    }
    if (r0 < 0) {
        r0 = -r0; s0 = -s0; t0 = -t0;
    }
    s = s0;
    t = t0;
    return r0;
}

// k-range with lo <= x0 + k*step <= hi, step != 0.
void step_range(i128 x0, i128 step, i64 lo, i64 hi, i128& kmin, i128& kmax) {
    if (step > 0) {
        kmin = ceil_div(i128(lo) - x0, step);
        kmax = floor_div(i128(hi) - x0, step);
    } else {
        kmin = ceil_div(i128(hi) - x0, step);
        kmax = floor_div(i128(lo) - x0, step);
    }
}

class Scanner {
public:
    Scanner(const Box& box, const std::atomic<bool>* cancel) : box_(box), cancel_(cancel) {}

    bool cancelled() const { return cancel_ && cancel_->load(std::memory_order_relaxed); }

    // Oracle: every cell of the box whose first entry equals `first`.
    bool oracle_slice(i64 first, std::vector<Cell>& out) const {
        const std::size_t M = box_.n_dim * box_.n_dim;
        Cell u{};
        u[0] = first;
        for (std::size_t k = 1; k < M; ++k)
            u[k] = box_.lo[k];
        std::uint64_t tick = 0;
        while (true) {
            if ((++tick & 0xFFFFF) == 0 && cancelled())
                return false;
            if (det_cell(u, box_.n_dim) == box_.target && coprime_to_n(u, box_.n_dim, box_.n))
                out.push_back(u);
            std::size_t k = M - 1;
            while (k >= 1 && u[k] == box_.hi[k]) {
                u[k] = box_.lo[k];
                --k;
            }
            if (k == 0)
                return true;
            ++u[k];
        }
    }

    bool optimized_slice(i64 first, std::vector<Cell>& out) const {
        return box_.n_dim == 2 ? slice2(first, out) : slice3(first, out);
    }

private:
    void keep(const Cell& u, std::vector<Cell>& out) const {
        if (coprime_to_n(u, box_.n_dim, box_.n))
            out.push_back(u);
    }

    // ad - bc = n^2 as a linear equation in (c, d) for fixed (a, b).
    bool slice2(i64 a, std::vector<Cell>& out) const {
        const i128 T = box_.target;
        const i64 clo = box_.lo[2], chi = box_.hi[2], dlo = box_.lo[3], dhi = box_.hi[3];
        for (i64 b = box_.lo[1]; b <= box_.hi[1]; ++b) {
            if (((b - box_.lo[1]) & 0xFFF) == 0 && cancelled())
                return false;
            if (a == 0 && b == 0)
                continue;
            if (b == 0) {
                if (T % a != 0)
                    continue;
                i128 d = T / a;
                if (d < dlo || d > dhi)
                    continue;
                for (i64 c = clo; c <= chi; ++c)
                    keep({a, 0, c, static_cast<i64>(d)}, out);
                continue;
            }
            if (a == 0) {
                if (T % b != 0)
                    continue;
                i128 c = -T / b;
                if (c < clo || c > chi)
                    continue;
                for (i64 d = dlo; d <= dhi; ++d)
                    keep({0, b, static_cast<i64>(c), d}, out);
                continue;
            }
            i128 s, t;
            i128 g = ext_gcd(a, b, s, t);
            if (T % g != 0)
                continue;
            i128 m = T / g;
            // a*(s*m) - b*(-t*m) = T
            i128 d0 = s * m, c0 = -t * m;
            i128 dstep = b / g, cstep = a / g;
            i128 k1, k2, k3, k4;
            step_range(d0, dstep, dlo, dhi, k1, k2);
            step_range(c0, cstep, clo, chi, k3, k4);
            for (i128 k = std::max(k1, k3); k <= std::min(k2, k4); ++k)
                keep({a, b, static_cast<i64>(c0 + k * cstep), static_cast<i64>(d0 + k * dstep)}, out);
        }
        return true;
    }

    // Iterate the first eight entries, solve the last from the determinant.
    bool slice3(i64 first, std::vector<Cell>& out) const {
        Cell u{};
        u[0] = first;
        for (std::size_t k = 1; k < 8; ++k)
            u[k] = box_.lo[k];
        const i64 lo8 = box_.lo[8], hi8 = box_.hi[8];
        std::uint64_t tick = 0;
        while (true) {
            if ((++tick & 0xFFFF) == 0 && cancelled())
                return false;
            u[8] = 0;
            i128 rest = det_cell(u, 3);
            i128 cof = i128(u[0]) * u[4] - i128(u[1]) * u[3];
            i128 need = box_.target - rest;
            if (cof == 0) {
                if (need == 0)
                    for (i64 w = lo8; w <= hi8; ++w) {
                        u[8] = w;
                        keep(u, out);
                    }
            } else if (need % cof == 0) {
                i128 w = need / cof;
                if (w >= lo8 && w <= hi8) {
                    u[8] = static_cast<i64>(w);
                    keep(u, out);
                }
            }
            std::size_t k = 7;
            while (k >= 1 && u[k] == box_.hi[k]) {
                u[k] = box_.lo[k];
                --k;
            }
            if (k == 0)
                return true;
            ++u[k];
        }
    }

    const Box& box_;
    const std::atomic<bool>* cancel_;
};

Int box_product(const Box& box, std::size_t entries) {
    if (box.empty)
        return Int(0);
    Int cells = 1;
    for (std::size_t k = 0; k < entries; ++k)
        cells *= Int(static_cast<long>(box.hi[k] - box.lo[k] + 1));
    return cells;
}

} // namespace

Int oracle_cells(const BallSpec& ball) {
    Box box = make_box(ball);
    return box_product(box, box.n_dim * box.n_dim);
}

EnumerationResult enumerate_points(const BallSpec& ball, Strategy strategy, const EnumerationOptions& opts) {
    auto start = std::chrono::steady_clock::now();
    Box box = make_box(ball);
    EnumerationResult result;
    result.ball = ball;
    result.strategy = strategy;

    const std::size_t M = box.n_dim * box.n_dim;
    if (strategy == Strategy::Oracle) {
        Int cells = box_product(box, M);
        if (cells > Int(std::to_string(opts.oracle_cell_budget)))
            throw SearchSpaceTooLarge(std::to_string(opts.oracle_cell_budget), cells.get_str());
    } else {
        Int rows = box_product(box, box.n_dim == 2 ? 2 : 8);
        if (rows > Int(std::to_string(opts.optimized_row_budget)))
            throw SearchSpaceTooLarge(std::to_string(opts.optimized_row_budget), rows.get_str());
    }

    std::vector<Cell> cells;
    bool aborted = false;
    if (!box.empty) {
        Scanner scanner(box, opts.cancel);
        const i64 first_lo = box.lo[0], first_hi = box.hi[0];
        std::atomic<i64> next{first_lo};
        std::atomic<bool> stop{false};
        std::mutex merge;
        auto worker = [&] {
            std::vector<Cell> local;
            for (i64 f = next++; f <= first_hi && !stop; f = next++) {
                bool ok = strategy == Strategy::Oracle ? scanner.oracle_slice(f, local)
                                                       : scanner.optimized_slice(f, local);
                if (!ok) {
                    stop = true;
                    break;
                }
            }
            std::lock_guard lock(merge);
            cells.insert(cells.end(), local.begin(), local.end());
        };
        unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
        threads = static_cast<unsigned>(std::min<i64>(threads, first_hi - first_lo + 1));
        if (threads <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned i = 0; i < threads; ++i)
                pool.emplace_back(worker);
            for (auto& t : pool)
                t.join();
        }
        aborted = stop.load() || scanner.cancelled();
    }

    if (aborted) {
        result.status = EnumerationStatus::Aborted;
    } else {
        std::sort(cells.begin(), cells.end());
        result.points.reserve(cells.size());
        Int v(static_cast<unsigned long>(ball.modulus));
        for (const Cell& c : cells) {
            IntMatrix u(box.n_dim);
            for (std::size_t k = 0; k < M; ++k)
                u(k / box.n_dim, k % box.n_dim) = Int(static_cast<long>(c[k]));
            result.points.push_back(RationalGroupPoint::from_reduced(std::move(u), v));
        }
    }
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

Rat EpsilonRule::epsilon_for(std::uint64_t n, std::size_t n_dim) const {
    if (kind == Kind::Fixed)
        return fixed;
    double m = log_int(finite_volume(n, n_dim));
    Rat eps = snap_dyadic(std::exp(-alpha_prime * m), bits);
    if (eps <= 0)
        throw InvalidArgument("power-rule radius underflows the dyadic grid at n = " + std::to_string(n));
    return eps;
}

std::vector<CountRow> count_table(const RatMatrix& center, const std::vector<std::uint64_t>& n_list,
                                  const EpsilonRule& rule, Strategy strategy, const EnumerationOptions& opts) {
    std::vector<CountRow> rows;
    for (std::uint64_t n : n_list) {
        CountRow row;
        row.n = n;
        row.strategy = strategy;
        row.epsilon = rule.epsilon_for(n, center.dim());
        try {
            auto res = enumerate_points(BallSpec::make(center, row.epsilon, n), strategy, opts);
            row.elapsed_ms = res.elapsed_ms;
            if (res.status == EnumerationStatus::Aborted)
                row.skip_reason = "aborted";
            else
                row.count = res.count();
        } catch (const SearchSpaceTooLarge& e) {
            row.skip_reason = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace dioph
