#include "presdist/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace presdist {

namespace {

// Jonker-Volgenant style O(n^3) assignment over any ordered additive weight
// type. `big` must exceed any feasible total; forbidden edges carry it.
template <typename W>
std::vector<std::size_t> hungarian(const std::vector<std::vector<W>>& cost, const W& big) {
    const std::size_t n = cost.size();
    std::vector<W> u(n + 1, W(0)), v(n + 1, W(0));
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<W> minv(n + 1, big);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            std::size_t j1 = 0;
            W delta = big;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const W cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> row_to_col(n, 0);
    for (std::size_t j = 1; j <= n; ++j) {
        if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
    }
    return row_to_col;
}

Cost diagonal_drop(const Interval& iv, const PExponent& exponent) {
    // Projection of (a, b) onto the diagonal is ((a+b)/2, (a+b)/2).
    const Rational half = (*iv.death - iv.birth) / 2;
    return Cost::term2(exponent, half, half);
}

Cost pair_cost(const Interval& a, const Interval& b, const PExponent& exponent) {
    if (a.is_infinite() != b.is_infinite()) return Cost::infinite();
    if (a.is_infinite()) return Cost::term(exponent, a.birth - b.birth);
    return Cost::term2(exponent, a.birth - b.birth, *a.death - *b.death);
}

}  // namespace

Cost p_cost(const Barcode& x, const Barcode& y, const Matching& m, const PExponent& exponent) {
    const auto& xs = x.intervals();
    const auto& ys = y.intervals();
    std::vector<bool> seen_x(xs.size(), false), seen_y(ys.size(), false);
    auto touch = [](std::vector<bool>& seen, std::size_t i) {
        if (i >= seen.size() || seen[i]) {
            throw std::invalid_argument("matching index out of range or repeated");
        }
        seen[i] = true;
    };
    Cost total = Cost::zero(exponent);
    for (const auto& [i, j] : m.pairs) {
        touch(seen_x, i);
        touch(seen_y, j);
        total.accumulate(exponent, pair_cost(xs[i], ys[j], exponent));
    }
    for (std::size_t i : m.unmatched_x) {
        touch(seen_x, i);
        if (xs[i].is_infinite()) return Cost::infinite();
        total.accumulate(exponent, diagonal_drop(xs[i], exponent));
    }
    for (std::size_t j : m.unmatched_y) {
        touch(seen_y, j);
        if (ys[j].is_infinite()) return Cost::infinite();
        total.accumulate(exponent, diagonal_drop(ys[j], exponent));
    }
    if (std::find(seen_x.begin(), seen_x.end(), false) != seen_x.end() ||
        std::find(seen_y.begin(), seen_y.end(), false) != seen_y.end()) {
        throw std::invalid_argument("matching does not cover both barcodes");
    }
    return total;
}

namespace {

struct FiniteAssignment {
    Cost cost;
    // For each finite X index (position in fx), the matched finite Y index
    // or npos for a diagonal drop.
    std::vector<std::size_t> x_to_y;
    std::vector<bool> y_matched;
};

constexpr std::size_t npos = static_cast<std::size_t>(-1);

FiniteAssignment solve_finite(const std::vector<Interval>& fx, const std::vector<Interval>& fy,
                              const PExponent& exponent) {
    const std::size_t nx = fx.size(), ny = fy.size(), n = nx + ny;
    FiniteAssignment out;
    out.cost = Cost::zero(exponent);
    out.x_to_y.assign(nx, npos);
    out.y_matched.assign(ny, false);
    if (n == 0) return out;

    if (exponent.is_integer()) {
        // Exact path: clear denominators, run the assignment over integers.
        std::vector<std::vector<Rational>> entries(n, std::vector<Rational>(n, Rational(0)));
        BigInt denom = 1;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                Rational c(0);
                if (i < nx && j < ny) {
                    c = pair_cost(fx[i], fy[j], exponent).value;
                } else if (i < nx) {
                    c = (j == ny + i) ? diagonal_drop(fx[i], exponent).value : Rational(-1);
                } else if (j < ny) {
                    c = (i == nx + j) ? diagonal_drop(fy[j], exponent).value : Rational(-1);
                }  // bottom-right block stays 0
                entries[i][j] = c;
                if (c >= 0) {
                    denom = boost::multiprecision::lcm(denom,
                                                       boost::multiprecision::denominator(c));
                }
            }
        }
        std::vector<std::vector<BigInt>> num(n, std::vector<BigInt>(n, BigInt(0)));
        BigInt max_entry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (entries[i][j] >= 0) {
                    const Rational scaled = entries[i][j] * denom;
                    num[i][j] = boost::multiprecision::numerator(scaled);
                    max_entry = std::max(max_entry, num[i][j]);
                }
            }
        }
        const BigInt big = max_entry * BigInt(n + 1) + 1;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (entries[i][j] < 0) num[i][j] = big;
            }
        }

        std::vector<std::size_t> row_to_col;
        // int64 fast path; dual potentials can grow by up to n*big per
        // phase, so demand 4*(n+2)^2*big headroom before dropping down
        const long long ll_max = std::numeric_limits<long long>::max();
        const long long nn = static_cast<long long>(n + 2);
        if (big < BigInt(ll_max / (4 * nn * nn))) {
            std::vector<std::vector<long long>> small(n, std::vector<long long>(n));
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    small[i][j] = num[i][j].convert_to<long long>();
                }
            }
            row_to_col = hungarian<long long>(small, big.convert_to<long long>());
        } else {
            row_to_col = hungarian<BigInt>(num, big);
        }

        BigInt total = 0;
        for (std::size_t i = 0; i < n; ++i) total += num[i][row_to_col[i]];
        out.cost.value = Rational(total, denom);
        for (std::size_t i = 0; i < nx; ++i) {
            if (row_to_col[i] < ny) {
                out.x_to_y[i] = row_to_col[i];
                out.y_matched[row_to_col[i]] = true;
            }
        }
        return out;
    }

    // Double path for non-integer p.
    double max_entry = 0.0;
    std::vector<std::vector<double>> c(n, std::vector<double>(n, -1.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double v = -1.0;
            if (i < nx && j < ny) {
                v = pair_cost(fx[i], fy[j], exponent).approx;
            } else if (i < nx) {
                v = (j == ny + i) ? diagonal_drop(fx[i], exponent).approx : -1.0;
            } else if (j < ny) {
                v = (i == nx + j) ? diagonal_drop(fy[j], exponent).approx : -1.0;
            } else {
                v = 0.0;
            }
            c[i][j] = v;
            if (v > max_entry) max_entry = v;
        }
    }
    const double big = (max_entry + 1.0) * (n + 1);
    for (auto& row : c) {
        for (auto& v : row) {
            if (v < 0.0) v = big;
        }
    }
    auto row_to_col = hungarian<double>(c, big * (n + 2));
    out.cost.exact = false;
    for (std::size_t i = 0; i < n; ++i) out.cost.approx += c[i][row_to_col[i]];
    for (std::size_t i = 0; i < nx; ++i) {
        if (row_to_col[i] < ny) {
            out.x_to_y[i] = row_to_col[i];
            out.y_matched[row_to_col[i]] = true;
        }
    }
    return out;
}

}  // namespace

WassersteinResult wasserstein(const Barcode& x, const Barcode& y, const PExponent& exponent) {
    if (exponent.is_infinite()) {
        throw std::invalid_argument("wasserstein optimization requires finite p");
    }
    const auto& xs = x.intervals();
    const auto& ys = y.intervals();

    std::vector<std::size_t> fin_x, inf_x, fin_y, inf_y;
    for (std::size_t i = 0; i < xs.size(); ++i) (xs[i].is_infinite() ? inf_x : fin_x).push_back(i);
    for (std::size_t j = 0; j < ys.size(); ++j) (ys[j].is_infinite() ? inf_y : fin_y).push_back(j);

    WassersteinResult result;
    result.cost = Cost::zero(exponent);

    // Infinite intervals pair among themselves, in birth order (the interval
    // lists are already sorted).
    if (inf_x.size() != inf_y.size()) {
        result.cost = Cost::infinite();
        for (std::size_t i : inf_x) result.matching.unmatched_x.push_back(i);
        for (std::size_t j : inf_y) result.matching.unmatched_y.push_back(j);
    } else {
        for (std::size_t k = 0; k < inf_x.size(); ++k) {
            result.matching.pairs.emplace_back(inf_x[k], inf_y[k]);
            result.cost.accumulate(exponent,
                                   Cost::term(exponent, xs[inf_x[k]].birth - ys[inf_y[k]].birth));
        }
    }

    std::vector<Interval> fx, fy;
    for (std::size_t i : fin_x) fx.push_back(xs[i]);
    for (std::size_t j : fin_y) fy.push_back(ys[j]);
    FiniteAssignment fin = solve_finite(fx, fy, exponent);
    result.cost.accumulate(exponent, fin.cost);
    for (std::size_t i = 0; i < fx.size(); ++i) {
        if (fin.x_to_y[i] == npos) {
            result.matching.unmatched_x.push_back(fin_x[i]);
        } else {
            result.matching.pairs.emplace_back(fin_x[i], fin_y[fin.x_to_y[i]]);
        }
    }
    for (std::size_t j = 0; j < fy.size(); ++j) {
        if (!fin.y_matched[j]) result.matching.unmatched_y.push_back(fin_y[j]);
    }
    std::sort(result.matching.pairs.begin(), result.matching.pairs.end());
    return result;
}

}  // namespace presdist
