#include "presdist/json_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

namespace presdist {

namespace {

std::string grade_str(const Rational& r) {
    return rational_to_string(r);
}

Rational grade_from(const Json& j) {
    if (j.is_number_integer()) return Rational(BigInt(j.get<long long>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw std::invalid_argument("grade must be a string or integer");
}

Json grade2_json(const Grade2& g) {
    return Json::array({grade_str(g.x), grade_str(g.y)});
}

Grade2 grade2_from(const Json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument("two-parameter grade must be a pair");
    }
    return Grade2{grade_from(j[0]), grade_from(j[1])};
}

}  // namespace

Json merge_tree_to_json(const MergeTreePresentation& p) {
    Json gens = Json::array();
    for (const auto& g : p.generators()) {
        gens.push_back({{"id", g.id}, {"grade", grade_str(g.grade)}});
    }
    Json rels = Json::array();
    for (const auto& r : p.relations()) {
        rels.push_back(
            {{"id", r.id}, {"ends", Json::array({r.end_a, r.end_b})}, {"grade", grade_str(r.grade)}});
    }
    return Json{{"generators", gens}, {"relations", rels}};
}

MergeTreePresentation merge_tree_from_json(const Json& j) {
    std::vector<MtGenerator> gens;
    for (const auto& g : j.at("generators")) {
        gens.push_back({g.at("id").get<int>(), grade_from(g.at("grade"))});
    }
    std::vector<MtRelation> rels;
    for (const auto& r : j.at("relations")) {
        const auto& ends = r.at("ends");
        if (!ends.is_array() || ends.size() != 2) {
            throw std::invalid_argument("relation ends must be a pair of generator ids");
        }
        rels.push_back({r.at("id").get<int>(), ends[0].get<int>(), ends[1].get<int>(),
                        grade_from(r.at("grade"))});
    }
    return MergeTreePresentation(std::move(gens), std::move(rels));
}

Json two_param_to_json(const TwoParamPresentation& p) {
    Json gens = Json::array();
    for (const auto& g : p.generators()) {
        gens.push_back({{"id", g.id}, {"grade", grade2_json(g.grade)}});
    }
    Json rels = Json::array();
    for (const auto& r : p.relations()) {
        Json coeffs = Json::object();
        for (const auto& [gid, v] : r.coeffs) coeffs[std::to_string(gid)] = v;
        rels.push_back({{"id", r.id}, {"coeffs", coeffs}, {"grade", grade2_json(r.grade)}});
    }
    return Json{{"q", p.modulus()}, {"generators", gens}, {"relations", rels}};
}

TwoParamPresentation two_param_from_json(const Json& j) {
    const std::uint32_t q = j.at("q").get<std::uint32_t>();
    std::vector<TpGenerator> gens;
    for (const auto& g : j.at("generators")) {
        gens.push_back({g.at("id").get<int>(), grade2_from(g.at("grade"))});
    }
    std::vector<TpRelation> rels;
    for (const auto& r : j.at("relations")) {
        TpRelation rel;
        rel.id = r.at("id").get<int>();
        rel.grade = grade2_from(r.at("grade"));
        for (const auto& [key, value] : r.at("coeffs").items()) {
            rel.coeffs[std::stoi(key)] = value.get<std::uint32_t>();
        }
        rels.push_back(std::move(rel));
    }
    return TwoParamPresentation(q, std::move(gens), std::move(rels));
}

Json barcode_to_json(const Barcode& b) {
    std::map<std::pair<std::string, std::string>, int> mults;
    std::vector<std::pair<std::string, std::string>> order;
    for (const auto& iv : b.intervals()) {
        const std::string death = iv.is_infinite() ? "inf" : grade_str(*iv.death);
        auto key = std::make_pair(grade_str(iv.birth), death);
        if (mults[key]++ == 0) order.push_back(key);
    }
    Json intervals = Json::array();
    for (const auto& key : order) {
        intervals.push_back({{"birth", key.first}, {"death", key.second}, {"mult", mults[key]}});
    }
    return Json{{"intervals", intervals}};
}

Barcode barcode_from_json(const Json& j) {
    std::vector<Interval> out;
    for (const auto& item : j.at("intervals")) {
        Interval iv;
        iv.birth = grade_from(item.at("birth"));
        const auto& death = item.at("death");
        if (!(death.is_string() && death.get<std::string>() == "inf")) {
            iv.death = grade_from(death);
        }
        const int mult = item.contains("mult") ? item.at("mult").get<int>() : 1;
        if (mult < 1) throw std::invalid_argument("interval multiplicity must be positive");
        for (int i = 0; i < mult; ++i) out.push_back(iv);
    }
    return Barcode(std::move(out));
}

Json balpart_instance_to_json(const BalPartInstance& inst) {
    return Json{{"balpart", Json{{"S", inst.sizes}, {"k", inst.k}}}};
}

Json ci_instance_to_json(const CIInstance& inst) {
    auto pattern = [&](const std::vector<std::vector<bool>>& zeros) {
        Json rows = Json::array();
        for (const auto& row : zeros) {
            Json cells = Json::array();
            for (bool z : row) cells.push_back(z ? "0" : "*");
            rows.push_back(cells);
        }
        return rows;
    };
    return Json{{"ci", Json{{"n", inst.n}, {"P", pattern(inst.zero_p)}, {"Q", pattern(inst.zero_q)}}}};
}

namespace {

std::vector<std::vector<bool>> pattern_from(const Json& j) {
    std::vector<std::vector<bool>> out;
    for (const auto& row : j) {
        std::vector<bool> cells;
        for (const auto& cell : row) {
            const std::string s = cell.get<std::string>();
            if (s != "0" && s != "*") {
                throw std::invalid_argument("pattern entries must be \"0\" or \"*\"");
            }
            cells.push_back(s == "0");
        }
        out.push_back(std::move(cells));
    }
    return out;
}

}  // namespace

Instance instance_from_json(const Json& j) {
    if (j.contains("balpart")) {
        const Json& b = j.at("balpart");
        return BalPartInstance(b.at("S").get<std::vector<long long>>(), b.at("k").get<int>());
    }
    if (j.contains("ci")) {
        const Json& c = j.at("ci");
        return CIInstance(c.at("n").get<int>(), pattern_from(c.at("P")), pattern_from(c.at("Q")));
    }
    throw std::invalid_argument("instance JSON needs a \"balpart\" or \"ci\" key");
}

Json balpart_solution_to_json(const BalPartSolution& s) {
    return Json{{"assignment", s.assignment}};
}

BalPartSolution balpart_solution_from_json(const Json& j) {
    return BalPartSolution{j.at("assignment").get<std::vector<int>>()};
}

namespace {

Json matrix_rows_json(const FieldMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.get(i, j));
        rows.push_back(row);
    }
    return rows;
}

FieldMatrix matrix_from_rows_json(const Json& rows, std::uint32_t q) {
    std::vector<std::vector<std::uint32_t>> data;
    for (const auto& row : rows) data.push_back(row.get<std::vector<std::uint32_t>>());
    return FieldMatrix::from_rows(data, q);
}

}  // namespace

Json ci_solution_to_json(const CISolutionPair& s) {
    return Json{{"A", matrix_rows_json(s.a)}, {"B", matrix_rows_json(s.b)}, {"q", s.a.modulus()}};
}

CISolutionPair ci_solution_from_json(const Json& j) {
    const std::uint32_t q = j.at("q").get<std::uint32_t>();
    return CISolutionPair{matrix_from_rows_json(j.at("A"), q),
                          matrix_from_rows_json(j.at("B"), q)};
}

Json field_matrix_to_json(const FieldMatrix& m) {
    return Json{{"entries", matrix_rows_json(m)}, {"q", m.modulus()}};
}

FieldMatrix field_matrix_from_json(const Json& j) {
    return matrix_from_rows_json(j.at("entries"), j.at("q").get<std::uint32_t>());
}

Json matching_to_json(const Matching& m) {
    Json pairs = Json::array();
    for (const auto& [i, j] : m.pairs) pairs.push_back(Json::array({i, j}));
    return Json{{"pairs", pairs}, {"unmatched_x", m.unmatched_x}, {"unmatched_y", m.unmatched_y}};
}

Json mt_sigma_to_json(const MtSigma& s) {
    Json gens = Json::object();
    for (const auto& [a, b] : s.generator_map) gens[std::to_string(a)] = b;
    Json rels = Json::object();
    for (const auto& [a, b] : s.relation_map) rels[std::to_string(a)] = b;
    return Json{{"generators", gens}, {"relations", rels}};
}

std::string canonical_dump(const Json& j) {
    return j.dump();
}

std::string content_digest(const Json& j) {
    const std::string s = canonical_dump(j);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace presdist
