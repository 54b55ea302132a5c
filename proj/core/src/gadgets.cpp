#include "presdist/gadgets.hpp"

#include "presdist/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace presdist {

BalPartInstance::BalPartInstance(std::vector<long long> sizes_, int k_)
    : sizes(std::move(sizes_)), k(k_) {
    if (sizes.empty()) throw std::invalid_argument("instance needs at least one element");
    for (long long s : sizes) {
        if (s < 1) throw std::invalid_argument("element sizes must be positive");
    }
    if (k < 1 || k > element_count()) {
        throw std::invalid_argument("bin count must satisfy 1 <= k <= m");
    }
    if (total() < 2) throw std::invalid_argument("total size must be at least 2");
    if (total() % k != 0) throw std::invalid_argument("total size must be divisible by k");
}

long long BalPartInstance::total() const {
    long long n = 0;
    for (long long s : sizes) n += s;
    return n;
}

CIInstance::CIInstance(int n_, std::vector<std::vector<bool>> zero_p_,
                       std::vector<std::vector<bool>> zero_q_)
    : n(n_), zero_p(std::move(zero_p_)), zero_q(std::move(zero_q_)) {
    if (n < 2) throw std::invalid_argument("CI instances need n >= 2");
    auto check = [&](const std::vector<std::vector<bool>>& m, const char* name) {
        if (m.size() != static_cast<std::size_t>(n)) {
            throw std::invalid_argument(std::string(name) + " has the wrong number of rows");
        }
        for (const auto& row : m) {
            if (row.size() != static_cast<std::size_t>(n)) {
                throw std::invalid_argument(std::string(name) + " has a ragged row");
            }
        }
    };
    check(zero_p, "pattern P");
    check(zero_q, "pattern Q");
}

int CIInstance::zero_count() const {
    int k = 0;
    for (const auto& row : zero_p) k += static_cast<int>(std::count(row.begin(), row.end(), true));
    for (const auto& row : zero_q) k += static_cast<int>(std::count(row.begin(), row.end(), true));
    return k;
}

long long gadget_constant(const PExponent& p, long long base) {
    if (base < 1) throw std::invalid_argument("gadget constant base must be positive");
    if (p.is_infinite()) throw std::invalid_argument("gadget constructions require finite p");
    if (p.is_integer()) {
        const unsigned e = p.integer_value();
        const BigInt bound = boost::multiprecision::pow(BigInt(4), e) * base;
        const double est = 4.0 * std::pow(static_cast<double>(base), 1.0 / e);
        long long c = std::max(2LL, 2 * static_cast<long long>(std::floor(est / 2.0)) - 4);
        while (boost::multiprecision::pow(BigInt(c), e) < bound) c += 2;
        return c;
    }
    const double pe = p.real_value();
    const double target = std::pow(4.0, pe) * static_cast<double>(base);
    const double est = 4.0 * std::pow(static_cast<double>(base), 1.0 / pe);
    long long c = std::max(2LL, 2 * static_cast<long long>(std::floor(est / 2.0)) - 4);
    while (std::pow(static_cast<double>(c), pe) < target * (1.0 - 1e-12)) c += 2;
    return c;
}

namespace {

// Flattened generator layout for a chunked chain: chunk sizes give the
// element (or bin) boundaries; relation t joins flat positions t and t+1.
MergeTreePresentation chain_presentation(const std::vector<long long>& chunks, long long c,
                                         const Rational& inner_grade,
                                         const Rational& boundary_grade) {
    long long n = 0;
    for (long long s : chunks) n += s;
    std::vector<MtGenerator> gens;
    gens.reserve(static_cast<std::size_t>(n));
    for (long long t = 0; t < n; ++t) gens.push_back({static_cast<int>(t), Rational(-c)});

    std::vector<MtRelation> rels;
    rels.reserve(static_cast<std::size_t>(n - 1));
    long long boundary = chunks.empty() ? 0 : chunks[0];
    std::size_t chunk = 0;
    for (long long t = 0; t + 1 < n; ++t) {
        const bool crosses = (t + 1 == boundary);
        rels.push_back({static_cast<int>(t), static_cast<int>(t), static_cast<int>(t + 1),
                        crosses ? boundary_grade : inner_grade});
        if (crosses && ++chunk < chunks.size()) boundary += chunks[chunk];
    }
    return MergeTreePresentation(std::move(gens), std::move(rels));
}

}  // namespace

BalPartGadget build_balpart_trees(const BalPartInstance& inst, const PExponent& p) {
    const long long c = gadget_constant(p, inst.total());
    std::vector<long long> bins(static_cast<std::size_t>(inst.k), inst.bin_target());
    return BalPartGadget{
        chain_presentation(inst.sizes, c, Rational(0), Rational(2)),
        chain_presentation(bins, c, Rational(1), Rational(3)),
        c,
    };
}

BalPartCertificate balpart_certificate(const BalPartInstance& inst,
                                       const std::vector<int>& assignment, const PExponent& p) {
    const long long target = inst.bin_target();
    if (assignment.size() != inst.sizes.size()) {
        throw SolutionInvalid("assignment length does not match the instance");
    }
    std::vector<long long> sums(static_cast<std::size_t>(inst.k), 0);
    for (std::size_t e = 0; e < assignment.size(); ++e) {
        if (assignment[e] < 0 || assignment[e] >= inst.k) {
            throw SolutionInvalid("assignment uses a bin outside [0, k)");
        }
        sums[static_cast<std::size_t>(assignment[e])] += inst.sizes[e];
    }
    for (long long s : sums) {
        if (s != target) throw SolutionInvalid("a bin does not sum to n/k");
    }

    // Elements reordered bin by bin; the solution guarantees that bin
    // boundaries in Q land on element boundaries in P.
    std::vector<std::size_t> order;
    for (int b = 0; b < inst.k; ++b) {
        for (std::size_t e = 0; e < assignment.size(); ++e) {
            if (assignment[e] == b) order.push_back(e);
        }
    }
    std::vector<long long> reordered;
    reordered.reserve(order.size());
    for (std::size_t e : order) reordered.push_back(inst.sizes[e]);

    const long long c = gadget_constant(p, inst.total());
    std::vector<long long> bins(static_cast<std::size_t>(inst.k), target);
    BalPartCertificate cert{
        chain_presentation(reordered, c, Rational(0), Rational(2)),
        chain_presentation(bins, c, Rational(1), Rational(3)),
        MtSigma{},
        Cost::zero(p),
        c,
    };
    cert.sigma = MtSigma::identity_for(cert.pres_p);
    cert.cost = dp_cost(cert.pres_p, cert.pres_q, cert.sigma, p);
    return cert;
}

namespace {

std::vector<AnchorInfo> assign_anchors(const CIInstance& inst) {
    const long long big_k = inst.zero_count();
    // x = 5i - 5K - 3 is even exactly when i and K have opposite parity, so
    // P-zeros take the slots with i - K odd and Q-zeros the rest.
    std::vector<long long> p_slots, q_slots;
    for (long long i = -big_k; i <= big_k; ++i) {
        (((i - big_k) % 2 != 0) ? p_slots : q_slots).push_back(i);
    }
    std::vector<AnchorInfo> anchors;
    std::size_t next_p = 0, next_q = 0;
    auto add = [&](bool from_p, int row, int col) {
        AnchorInfo a;
        a.k = static_cast<int>(anchors.size()) + 1;
        a.from_p = from_p;
        a.row = row;
        a.col = col;
        a.slot = from_p ? p_slots[next_p++] : q_slots[next_q++];
        a.point = Grade2{Rational(5 * a.slot - 5 * big_k - 3), Rational(-5 * a.slot - 5 * big_k)};
        anchors.push_back(a);
    };
    for (int i = 0; i < inst.n; ++i) {
        for (int j = 0; j < inst.n; ++j) {
            if (inst.zero_p[i][j]) add(true, i + 1, j + 1);
        }
    }
    for (int i = 0; i < inst.n; ++i) {
        for (int j = 0; j < inst.n; ++j) {
            if (inst.zero_q[i][j]) add(false, i + 1, j + 1);
        }
    }
    return anchors;
}

Grade2 shifted(const Grade2& base, long long dx) {
    return Grade2{base.x + dx, base.y};
}

}  // namespace

CIGadget build_ci_modules(const CIInstance& inst, const PExponent& p, std::uint32_t q) {
    const int n = inst.n;
    const long long big_k = inst.zero_count();
    const long long c = gadget_constant(p, big_k * n + 1);
    const auto anchors = assign_anchors(inst);
    const Grade2 top{Rational(c), Rational(c)};

    auto gen_id = [n](int k, int i) { return (k - 1) * n + (i - 1); };  // k = 1..K
    const int inf_base = static_cast<int>(big_k) * n;

    std::vector<TpGenerator> gens_m, gens_n;
    for (const AnchorInfo& a : anchors) {
        for (int i = 1; i <= n; ++i) {
            Grade2 gm, gn;
            if (a.from_p) {
                gm = (i == a.col) ? a.point : shifted(a.point, 2);
                gn = (i == a.row) ? shifted(a.point, 3) : shifted(a.point, 1);
            } else {
                gm = (i == a.row) ? shifted(a.point, 3) : shifted(a.point, 1);
                gn = (i == a.col) ? a.point : shifted(a.point, 2);
            }
            gens_m.push_back({gen_id(a.k, i), gm});
            gens_n.push_back({gen_id(a.k, i), gn});
        }
    }
    for (int i = 1; i <= n; ++i) {
        gens_m.push_back({inf_base + (i - 1), top});
        gens_n.push_back({inf_base + (i - 1), top});
    }

    std::vector<TpRelation> rels_m, rels_n;
    for (const AnchorInfo& a : anchors) {
        for (int i = 1; i <= n; ++i) {
            TpRelation r;
            r.id = gen_id(a.k, i);
            r.grade = top;
            r.coeffs[gen_id(a.k, i)] = 1;
            r.coeffs[inf_base + (i - 1)] = q - 1;
            rels_m.push_back(r);
            rels_n.push_back(r);
        }
    }

    return CIGadget{
        TwoParamPresentation(q, gens_m, rels_m),
        TwoParamPresentation(q, gens_n, rels_n),
        c,
        anchors,
    };
}

namespace {

// Extends seed to a basis of {x in F^n : x[skip] = 0} by greedily adjoining
// standard basis vectors in ascending index order.
std::vector<std::vector<std::uint32_t>> complete_slice_basis(
    const std::vector<std::uint32_t>& seed, std::size_t skip, std::uint32_t q) {
    const std::size_t n = seed.size();
    std::vector<std::vector<std::uint32_t>> basis{seed};
    for (std::size_t j = 0; j < n && basis.size() < n - 1; ++j) {
        if (j == skip) continue;
        std::vector<std::uint32_t> e(n, 0);
        e[j] = 1;
        auto extended = basis;
        extended.push_back(e);
        if (rank(FieldMatrix::from_rows(extended, q)) == extended.size()) {
            basis.push_back(std::move(e));
        }
    }
    if (basis.size() != n - 1) throw std::logic_error("slice basis completion failed");
    return basis;
}

void write_block(FieldMatrix& m, int block, int n,
                 const std::vector<std::vector<std::uint32_t>>& cols) {
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            m.set(static_cast<std::size_t>(block * n + i), static_cast<std::size_t>(block * n + j),
                  cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
        }
    }
}

}  // namespace

CICertificate ci_certificate(const CIInstance& inst, const CISolutionPair& solution,
                             const PExponent& p) {
    const int n = inst.n;
    const std::uint32_t q = solution.a.modulus();
    if (solution.a.rows() != static_cast<std::size_t>(n) || solution.a.cols() != solution.a.rows() ||
        solution.b.rows() != solution.a.rows() || solution.b.cols() != solution.a.rows() ||
        solution.b.modulus() != q) {
        throw SolutionInvalid("solution matrices do not match the instance dimensions");
    }
    const FieldMatrix& s = solution.a;
    const FieldMatrix& t = solution.b;
    if (mat_mul(s, t) != FieldMatrix::identity(static_cast<std::size_t>(n), q)) {
        throw SolutionInvalid("B is not the inverse of A");
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (inst.zero_p[i][j] && s.get(i, j) != 0) {
                throw SolutionInvalid("A violates the P zero pattern");
            }
            if (inst.zero_q[i][j] && t.get(i, j) != 0) {
                throw SolutionInvalid("B violates the Q zero pattern");
            }
        }
    }

    CIGadget raw = build_ci_modules(inst, p, q);
    const int big_k = inst.zero_count();
    const std::size_t dim = static_cast<std::size_t>((big_k + 1) * n);
    const Grade2 top{Rational(raw.c), Rational(raw.c)};

    FieldMatrix iota_m(dim, dim, q), iota_n(dim, dim, q), phi(dim, dim, q);
    std::vector<Grade2> grades_m(dim), grades_n(dim);

    for (const AnchorInfo& a : raw.anchors) {
        const int block = a.k - 1;
        std::vector<std::vector<std::uint32_t>> cols_m(static_cast<std::size_t>(n)),
            cols_n(static_cast<std::size_t>(n));
        if (a.from_p) {
            // phi(g_{k,b}) lies in the slice h[a.row - 1] = 0 because
            // S_{row,col} = 0; it seeds the basis of N_{p_k + (1,0)}.
            const auto w1 = s.col(static_cast<std::size_t>(a.col - 1));
            auto slice = complete_slice_basis(w1, static_cast<std::size_t>(a.row - 1), q);
            for (int i = 0; i + 1 < n; ++i) cols_n[static_cast<std::size_t>(i)] = slice[i];
            std::vector<std::uint32_t> last(static_cast<std::size_t>(n), 0);
            last[static_cast<std::size_t>(a.row - 1)] = 1;
            cols_n[static_cast<std::size_t>(n - 1)] = last;
            for (int i = 0; i < n; ++i) {
                cols_m[static_cast<std::size_t>(i)] = t.apply(cols_n[static_cast<std::size_t>(i)]);
            }
            for (int i = 0; i < n; ++i) {
                const std::size_t pos = static_cast<std::size_t>(block * n + i);
                grades_m[pos] = (i == 0) ? a.point : shifted(a.point, 2);
                grades_n[pos] = (i + 1 < n) ? shifted(a.point, 1) : shifted(a.point, 3);
            }
        } else {
            // Mirrored through phi^{-1}: T_{row,col} = 0 puts phi^{-1}(h_{k,b})
            // in the slice g[a.row - 1] = 0.
            const auto u1 = t.col(static_cast<std::size_t>(a.col - 1));
            auto slice = complete_slice_basis(u1, static_cast<std::size_t>(a.row - 1), q);
            for (int i = 0; i + 1 < n; ++i) cols_m[static_cast<std::size_t>(i)] = slice[i];
            std::vector<std::uint32_t> last(static_cast<std::size_t>(n), 0);
            last[static_cast<std::size_t>(a.row - 1)] = 1;
            cols_m[static_cast<std::size_t>(n - 1)] = last;
            for (int i = 0; i < n; ++i) {
                cols_n[static_cast<std::size_t>(i)] = s.apply(cols_m[static_cast<std::size_t>(i)]);
            }
            for (int i = 0; i < n; ++i) {
                const std::size_t pos = static_cast<std::size_t>(block * n + i);
                grades_n[pos] = (i == 0) ? a.point : shifted(a.point, 2);
                grades_m[pos] = (i + 1 < n) ? shifted(a.point, 1) : shifted(a.point, 3);
            }
        }
        write_block(iota_m, block, n, cols_m);
        write_block(iota_n, block, n, cols_n);
    }

    // Infinity block: iota_M stays the canonical basis while iota_N absorbs
    // phi, so sigma pairs g'_{inf,i} with h'_{inf,i} index-aligned. The
    // graded spans at (C, C) are unchanged by this invertible block.
    std::vector<std::vector<std::uint32_t>> id_cols(static_cast<std::size_t>(n)),
        s_cols(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        std::vector<std::uint32_t> e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(j)] = 1;
        id_cols[static_cast<std::size_t>(j)] = e;
        s_cols[static_cast<std::size_t>(j)] = s.col(static_cast<std::size_t>(j));
    }
    write_block(iota_m, big_k, n, id_cols);
    write_block(iota_n, big_k, n, s_cols);
    for (int i = 0; i < n; ++i) {
        grades_m[static_cast<std::size_t>(big_k * n + i)] = top;
        grades_n[static_cast<std::size_t>(big_k * n + i)] = top;
    }

    // phi applies S on every block, including infinity.
    for (int b = 0; b <= big_k; ++b) write_block(phi, b, n, s_cols);

    const auto iota_m_inv = invert(iota_m);
    const auto iota_n_inv = invert(iota_n);
    if (!iota_m_inv || !iota_n_inv) throw std::logic_error("certificate iota not invertible");

    auto make_presentation = [&](const FieldMatrix& inv, const std::vector<Grade2>& grades,
                                 bool through_phi) {
        std::vector<TpGenerator> gens;
        for (std::size_t i = 0; i < dim; ++i) gens.push_back({static_cast<int>(i), grades[i]});
        std::vector<TpRelation> rels;
        for (std::size_t r = 0; r < raw.pres_m.relations().size(); ++r) {
            auto vec = raw.pres_m.relation_vector(r);
            if (through_phi) vec = phi.apply(vec);
            vec = inv.apply(vec);
            TpRelation rel;
            rel.id = raw.pres_m.relations()[r].id;
            rel.grade = top;
            for (std::size_t i = 0; i < dim; ++i) {
                if (vec[i] != 0) rel.coeffs[static_cast<int>(i)] = vec[i];
            }
            rels.push_back(std::move(rel));
        }
        return TwoParamPresentation(q, std::move(gens), std::move(rels));
    };

    CICertificate cert{
        make_presentation(*iota_m_inv, grades_m, false),
        make_presentation(*iota_n_inv, grades_n, true),
        mat_mul(*iota_n_inv, mat_mul(phi, iota_m)),
        iota_m,
        iota_n,
        Cost::zero(p),
    };
    if (cert.sigma != FieldMatrix::identity(dim, q)) {
        throw std::logic_error("certificate sigma is not index-aligned");
    }
    cert.cost = dp_cost2(cert.pres_m, cert.pres_n, cert.sigma, p);
    return cert;
}

}  // namespace presdist
