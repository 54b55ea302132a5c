#include "presdist/solvers.hpp"

#include "presdist/errors.hpp"

#include <algorithm>
#include <cmath>

namespace presdist {

std::optional<BalPartSolution> solve_balpart(const BalPartInstance& inst,
                                             const SolverLimits& limits) {
    const int m = inst.element_count();
    if (m > limits.max_elements) {
        throw SizeLimitExceeded("BAL-PART solver limited to " +
                                std::to_string(limits.max_elements) + " elements");
    }
    const long long target = inst.bin_target();
    std::vector<long long> sums(static_cast<std::size_t>(inst.k), 0);
    std::vector<int> assignment(static_cast<std::size_t>(m), -1);

    auto dfs = [&](auto&& self, int e) -> bool {
        if (e == m) return true;  // all bins full by conservation of the total
        for (int b = 0; b < inst.k; ++b) {
            if (sums[b] + inst.sizes[e] > target) continue;
            // Never open a later empty bin: the lexicographically least
            // solution always uses the first one.
            if (sums[b] == 0 && b > 0 && sums[b - 1] == 0) break;
            sums[b] += inst.sizes[e];
            assignment[e] = b;
            if (self(self, e + 1)) return true;
            sums[b] -= inst.sizes[e];
            assignment[e] = -1;
        }
        return false;
    };
    if (!dfs(dfs, 0)) return std::nullopt;
    return BalPartSolution{assignment};
}

bool verify_balpart(const BalPartInstance& inst, const BalPartSolution& solution) {
    if (solution.assignment.size() != inst.sizes.size()) return false;
    std::vector<long long> sums(static_cast<std::size_t>(inst.k), 0);
    for (std::size_t e = 0; e < solution.assignment.size(); ++e) {
        const int b = solution.assignment[e];
        if (b < 0 || b >= inst.k) return false;
        sums[static_cast<std::size_t>(b)] += inst.sizes[e];
    }
    const long long target = inst.bin_target();
    return std::all_of(sums.begin(), sums.end(), [&](long long s) { return s == target; });
}

namespace {

// Incremental independent-column store: row echelon basis of the columns
// chosen so far.
struct ColumnBasis {
    std::vector<std::vector<std::uint32_t>> rows;
    std::uint32_t q;

    bool would_extend(const std::vector<std::uint32_t>& candidate) const {
        std::vector<std::uint32_t> v = candidate;
        for (const auto& row : rows) {
            std::size_t lead = 0;
            while (lead < row.size() && row[lead] == 0) ++lead;
            if (lead < v.size() && v[lead] != 0) {
                const std::uint32_t f = field_mul(v[lead], field_inv(row[lead], q), q);
                for (std::size_t j = lead; j < v.size(); ++j) {
                    v[j] = field_sub(v[j], field_mul(f, row[j], q), q);
                }
            }
        }
        return std::any_of(v.begin(), v.end(), [](std::uint32_t x) { return x != 0; });
    }

    void push(const std::vector<std::uint32_t>& candidate) {
        std::vector<std::uint32_t> v = candidate;
        for (const auto& row : rows) {
            std::size_t lead = 0;
            while (lead < row.size() && row[lead] == 0) ++lead;
            if (lead < v.size() && v[lead] != 0) {
                const std::uint32_t f = field_mul(v[lead], field_inv(row[lead], q), q);
                for (std::size_t j = lead; j < v.size(); ++j) {
                    v[j] = field_sub(v[j], field_mul(f, row[j], q), q);
                }
            }
        }
        rows.push_back(std::move(v));
        std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            auto la = std::find_if(a.begin(), a.end(), [](std::uint32_t x) { return x != 0; });
            auto lb = std::find_if(b.begin(), b.end(), [](std::uint32_t x) { return x != 0; });
            return (la - a.begin()) < (lb - b.begin());
        });
    }
};

}  // namespace

std::optional<CISolutionPair> solve_ci(const CIInstance& inst, std::uint32_t q,
                                       const SolverLimits& limits) {
    if (!is_prime_modulus(q)) throw std::invalid_argument("field modulus must be a prime <= 251");
    const int n = inst.n;
    int stars = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!inst.zero_p[i][j]) ++stars;
        }
    }
    if (stars * std::log2(static_cast<double>(q)) > limits.max_log2_space) {
        throw SizeLimitExceeded("CI search space exceeds the configured limit");
    }

    std::vector<std::vector<int>> star_rows(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (!inst.zero_p[i][j]) star_rows[static_cast<std::size_t>(j)].push_back(i);
        }
    }

    FieldMatrix a(static_cast<std::size_t>(n), static_cast<std::size_t>(n), q);
    std::vector<std::vector<std::uint32_t>> columns(static_cast<std::size_t>(n));
    std::optional<CISolutionPair> found;

    auto dfs = [&](auto&& self, int col, ColumnBasis& basis) -> bool {
        if (col == n) {
            for (int j = 0; j < n; ++j) {
                for (int i = 0; i < n; ++i) a.set(i, j, columns[static_cast<std::size_t>(j)][i]);
            }
            auto b = invert(a);
            if (!b) return false;  // cannot happen: columns are independent
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    if (inst.zero_q[i][j] && b->get(i, j) != 0) return false;
                }
            }
            found = CISolutionPair{a, *b};
            return true;
        }
        const auto& rows = star_rows[static_cast<std::size_t>(col)];
        std::vector<std::uint32_t> values(rows.size(), 0);
        while (true) {
            std::vector<std::uint32_t> candidate(static_cast<std::size_t>(n), 0);
            for (std::size_t s = 0; s < rows.size(); ++s) {
                candidate[static_cast<std::size_t>(rows[s])] = values[s];
            }
            if (basis.would_extend(candidate)) {
                ColumnBasis next = basis;
                next.push(candidate);
                columns[static_cast<std::size_t>(col)] = candidate;
                if (self(self, col + 1, next)) return true;
            }
            // odometer: first star row is the most significant digit
            std::size_t s = rows.size();
            while (s > 0) {
                --s;
                if (++values[s] < q) break;
                values[s] = 0;
                if (s == 0) return false;
            }
            if (rows.empty()) return false;
        }
    };

    ColumnBasis basis{{}, q};
    dfs(dfs, 0, basis);
    return found;
}

bool verify_ci(const CIInstance& inst, const CISolutionPair& solution) {
    const std::size_t n = static_cast<std::size_t>(inst.n);
    if (solution.a.rows() != n || solution.a.cols() != n || solution.b.rows() != n ||
        solution.b.cols() != n) {
        throw std::invalid_argument("solution matrices do not match the instance dimension");
    }
    if (solution.a.modulus() != solution.b.modulus()) {
        throw std::invalid_argument("solution matrices use different moduli");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (inst.zero_p[i][j] && solution.a.get(i, j) != 0) return false;
            if (inst.zero_q[i][j] && solution.b.get(i, j) != 0) return false;
        }
    }
    return mat_mul(solution.a, solution.b) == FieldMatrix::identity(n, solution.a.modulus());
}

}  // namespace presdist
