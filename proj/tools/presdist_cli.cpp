// presdist: generate, solve, certify and verify the partition / constrained
// invertibility reductions, compute barcodes and p-Wasserstein distances.
//
// Exit codes: 0 success, 1 internal consistency violation (a construction
// identity failed to hold), 2 usage or input error.

#include "presdist/errors.hpp"
#include "presdist/json_io.hpp"
#include "presdist/matching.hpp"
#include "presdist/solvers.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace presdist;

std::string decimal12(double v) {
    if (std::isinf(v)) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12f", v);
    return buf;
}

Json cost_json(const Cost& cost, const PExponent& p) {
    return Json{{"pow_p", cost.payload_string()},
                {"value", decimal12(cost.to_double(p))},
                {"exact", cost.exact && !cost.unbounded}};
}

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << canonical_dump(j) << "\n";
    } else {
        write_json_file(out_path, j);
    }
}

std::vector<long long> parse_sizes(const std::string& csv) {
    std::vector<long long> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoll(item));
    }
    return out;
}

std::vector<std::vector<bool>> parse_pattern(const std::string& rows_csv) {
    std::vector<std::vector<bool>> out;
    std::stringstream ss(rows_csv);
    std::string row;
    while (std::getline(ss, row, ',')) {
        std::vector<bool> cells;
        for (char c : row) {
            if (c == '0') {
                cells.push_back(true);
            } else if (c == '*') {
                cells.push_back(false);
            } else {
                throw std::invalid_argument("pattern rows may only contain '0' and '*'");
            }
        }
        out.push_back(std::move(cells));
    }
    return out;
}

CIInstance paper_example(int which) {
    if (which == 1) {
        return CIInstance(3, parse_pattern("***,*0*,**0"), parse_pattern("***,**0,*0*"));
    }
    if (which == 2) {
        return CIInstance(3, parse_pattern("0*0,***,***"), parse_pattern("***,0**,***"));
    }
    throw std::invalid_argument("worked examples are numbered 1 and 2");
}

SolverLimits limits_from(const std::optional<int>& flag) {
    SolverLimits limits;
    const char* env = std::getenv("PRESDIST_LIMIT");
    if (env != nullptr) {
        const int v = std::stoi(env);
        limits.max_elements = v;
        limits.max_log2_space = v;
    }
    if (flag) {
        limits.max_elements = *flag;
        limits.max_log2_space = *flag;
    }
    return limits;
}

std::string stem_of(const std::string& path) {
    const auto slash = path.find_last_of('/');
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = name.find_last_of('.');
    if (dot != std::string::npos) name = name.substr(0, dot);
    return name;
}

// ---------------------------------------------------------------------------

int cmd_gen_balpart(const std::string& sizes_csv, int k, const std::string& out) {
    const BalPartInstance inst(parse_sizes(sizes_csv), k);
    emit(balpart_instance_to_json(inst), out);
    return 0;
}

int cmd_gen_ci(int paper, const std::string& p_csv, const std::string& q_csv,
               const std::string& out) {
    if (paper != 0) {
        emit(ci_instance_to_json(paper_example(paper)), out);
        return 0;
    }
    const auto zp = parse_pattern(p_csv);
    const auto zq = parse_pattern(q_csv);
    const int n = static_cast<int>(zp.size());
    emit(ci_instance_to_json(CIInstance(n, zp, zq)), out);
    return 0;
}

int cmd_gadget(const std::string& inst_path, const PExponent& p, std::uint32_t q,
               std::string prefix) {
    const auto inst = instance_from_json(read_json_file(inst_path));
    if (prefix.empty()) prefix = stem_of(inst_path);
    Json constants;
    if (std::holds_alternative<BalPartInstance>(inst)) {
        const auto& bp = std::get<BalPartInstance>(inst);
        const auto gadget = build_balpart_trees(bp, p);
        write_json_file(prefix + "_M.json", merge_tree_to_json(gadget.tree_m));
        write_json_file(prefix + "_N.json", merge_tree_to_json(gadget.tree_n));
        constants = Json{{"kind", "balpart"},
                         {"C", std::to_string(gadget.c)},
                         {"n", bp.total()},
                         {"files", Json{{"M", prefix + "_M.json"}, {"N", prefix + "_N.json"}}}};
    } else {
        const auto& ci = std::get<CIInstance>(inst);
        const auto gadget = build_ci_modules(ci, p, q);
        write_json_file(prefix + "_PM.json", two_param_to_json(gadget.pres_m));
        write_json_file(prefix + "_PN.json", two_param_to_json(gadget.pres_n));
        Json anchors = Json::array();
        for (const auto& a : gadget.anchors) {
            anchors.push_back(Json{{"k", a.k},
                                   {"zero_of", a.from_p ? "P" : "Q"},
                                   {"row", a.row},
                                   {"col", a.col},
                                   {"point", Json::array({rational_to_string(a.point.x),
                                                          rational_to_string(a.point.y)})}});
        }
        constants = Json{{"kind", "ci"},
                         {"C", std::to_string(gadget.c)},
                         {"K", ci.zero_count()},
                         {"n", ci.n},
                         {"anchors", anchors},
                         {"files", Json{{"PM", prefix + "_PM.json"}, {"PN", prefix + "_PN.json"}}}};
    }
    std::cout << canonical_dump(constants) << "\n";
    return 0;
}

int cmd_barcode(const std::string& pres_path, const std::string& out) {
    const Json j = read_json_file(pres_path);
    Barcode bar;
    if (j.contains("q")) {
        bar = barcode_1param(project_x(two_param_from_json(j)));
    } else {
        bar = barcode(merge_tree_from_json(j));
    }
    emit(barcode_to_json(bar), out);
    return 0;
}

int cmd_wasserstein(const std::string& x_path, const std::string& y_path, const PExponent& p,
                    const std::string& out) {
    const auto x = barcode_from_json(read_json_file(x_path));
    const auto y = barcode_from_json(read_json_file(y_path));
    const auto result = wasserstein(x, y, p);
    Json j{{"p", p.to_string()},
           {"cost", cost_json(result.cost, p)},
           {"matching", matching_to_json(result.matching)}};
    emit(j, out);
    return 0;
}

int cmd_solve(const std::string& inst_path, std::uint32_t q, const std::optional<int>& limit,
              const std::string& out) {
    const auto inst = instance_from_json(read_json_file(inst_path));
    const auto limits = limits_from(limit);
    if (std::holds_alternative<BalPartInstance>(inst)) {
        const auto found = solve_balpart(std::get<BalPartInstance>(inst), limits);
        emit(found ? balpart_solution_to_json(*found) : Json{{"result", "no_solution"}}, out);
    } else {
        const auto found = solve_ci(std::get<CIInstance>(inst), q, limits);
        emit(found ? ci_solution_to_json(*found) : Json{{"result", "no_solution"}}, out);
    }
    return 0;
}

int cmd_certify(const std::string& inst_path, const std::string& sol_path, const PExponent& p,
                const std::string& prefix) {
    const auto inst = instance_from_json(read_json_file(inst_path));
    const Json sol = read_json_file(sol_path);
    Json report;
    if (std::holds_alternative<BalPartInstance>(inst)) {
        const auto& bp = std::get<BalPartInstance>(inst);
        const auto cert = balpart_certificate(bp, balpart_solution_from_json(sol).assignment, p);
        report = Json{{"kind", "balpart"},
                      {"C", std::to_string(cert.c)},
                      {"cost", cost_json(cert.cost, p)},
                      {"sigma", mt_sigma_to_json(cert.sigma)}};
        if (!prefix.empty()) {
            write_json_file(prefix + "_P.json", merge_tree_to_json(cert.pres_p));
            write_json_file(prefix + "_Q.json", merge_tree_to_json(cert.pres_q));
            report["files"] = Json{{"P", prefix + "_P.json"}, {"Q", prefix + "_Q.json"}};
        }
        std::cout << canonical_dump(report) << "\n";
        return 0;
    }
    const auto& ci = std::get<CIInstance>(inst);
    const auto cert = ci_certificate(ci, ci_solution_from_json(sol), p);
    const auto raw = build_ci_modules(ci, p, cert.sigma.modulus());
    const bool reg_m = check_regeneration(Regeneration(cert.pres_m, raw.pres_m, cert.iota_m));
    const bool reg_n = check_regeneration(Regeneration(cert.pres_n, raw.pres_n, cert.iota_n));
    report = Json{{"kind", "ci"},
                  {"C", std::to_string(raw.c)},
                  {"cost", cost_json(cert.cost, p)},
                  {"regenerates_M", reg_m},
                  {"regenerates_N", reg_n}};
    if (!prefix.empty()) {
        write_json_file(prefix + "_PM.json", two_param_to_json(cert.pres_m));
        write_json_file(prefix + "_PN.json", two_param_to_json(cert.pres_n));
        write_json_file(prefix + "_sigma.json", field_matrix_to_json(cert.sigma));
        write_json_file(prefix + "_iotaM.json", field_matrix_to_json(cert.iota_m));
        write_json_file(prefix + "_iotaN.json", field_matrix_to_json(cert.iota_n));
        report["files"] = Json{{"PM", prefix + "_PM.json"},
                               {"PN", prefix + "_PN.json"},
                               {"sigma", prefix + "_sigma.json"}};
    }
    std::cout << canonical_dump(report) << "\n";
    if (!reg_m || !reg_n) {
        std::cerr << "certificate failed the regeneration check\n";
        return 1;
    }
    return 0;
}

int cmd_verify(const std::string& inst_path, const std::string& sol_path) {
    const auto inst = instance_from_json(read_json_file(inst_path));
    const Json sol = read_json_file(sol_path);
    bool valid = false;
    if (std::holds_alternative<BalPartInstance>(inst)) {
        valid = verify_balpart(std::get<BalPartInstance>(inst), balpart_solution_from_json(sol));
    } else {
        valid = verify_ci(std::get<CIInstance>(inst), ci_solution_from_json(sol));
    }
    std::cout << canonical_dump(Json{{"valid", valid}}) << "\n";
    return 0;
}

int cmd_dim(const std::string& pres_path, const std::string& at) {
    const auto comma = at.find(',');
    if (comma == std::string::npos || at.find(',', comma + 1) != std::string::npos) {
        throw std::invalid_argument("--at expects \"x,y\"");
    }
    const Grade2 pt{parse_rational(at.substr(0, comma)), parse_rational(at.substr(comma + 1))};
    const auto p = two_param_from_json(read_json_file(pres_path));
    std::cout << canonical_dump(Json{{"dim", dim_at(p, pt)}}) << "\n";
    return 0;
}

// Full reproduction pipeline: solve, certify, and check every identity the
// constructions promise. A violated identity is an internal error (exit 1).
int cmd_pipeline(const std::string& inst_path, const PExponent& p, std::uint32_t q,
                 const std::optional<int>& limit, bool with_timings) {
    const Json inst_json = read_json_file(inst_path);
    const auto inst = instance_from_json(inst_json);
    const auto limits = limits_from(limit);
    const auto started = std::chrono::steady_clock::now();

    auto matches = [&](const Cost& cost, long long expected) {
        if (cost.unbounded) return false;
        if (cost.exact) return cost.value == Rational(expected);
        return std::abs(cost.approx - static_cast<double>(expected)) <= 1e-9;
    };

    Json report{{"command", "pipeline"},
                {"digest", content_digest(inst_json)},
                {"p", p.to_string()}};
    Json checks = Json::object();
    bool ok = true;
    auto record = [&](const std::string& name, bool pass) {
        checks[name] = pass;
        ok = ok && pass;
    };

    if (std::holds_alternative<BalPartInstance>(inst)) {
        const auto& bp = std::get<BalPartInstance>(inst);
        const long long n = bp.total();
        report["kind"] = "balpart";

        const auto gadget = build_balpart_trees(bp, p);
        const auto bm = barcode(gadget.tree_m);
        const auto bn = barcode(gadget.tree_n);
        const auto w = wasserstein(bm, bn, p);
        record("barcodes_have_n_intervals", bm.size() == static_cast<std::size_t>(n) &&
                                                bn.size() == static_cast<std::size_t>(n));
        record("wasserstein_matches_bound", matches(w.cost, n - 1));

        const auto found = solve_balpart(bp, limits);
        Json result{{"solvable", found.has_value()},
                    {"n", n},
                    {"C", std::to_string(gadget.c)},
                    {"wasserstein_pow_p", w.cost.payload_string()},
                    {"wasserstein", decimal12(w.cost.to_double(p))}};
        if (found) {
            record("solver_output_verifies", verify_balpart(bp, *found));
            const auto cert = balpart_certificate(bp, found->assignment, p);
            bool unit_gaps = true;
            for (const auto& r : cert.pres_p.relations()) {
                const auto& other = cert.pres_q.relation_by_id(cert.sigma.relation_map.at(r.id));
                unit_gaps = unit_gaps && rational_abs(r.grade - other.grade) == 1;
            }
            record("certificate_gaps_are_unit", unit_gaps);
            record("certificate_matches_bound", matches(cert.cost, n - 1));
            result["assignment"] = found->assignment;
            result["certificate_cost_pow_p"] = cert.cost.payload_string();
            result["certificate_cost"] = decimal12(cert.cost.to_double(p));
        }
        report["result"] = result;
    } else {
        const auto& ci = std::get<CIInstance>(inst);
        const long long kn = static_cast<long long>(ci.zero_count()) * ci.n;
        report["kind"] = "ci";
        report["field"] = q;

        const auto gadget = build_ci_modules(ci, p, q);
        const Grade2 top{Rational(gadget.c), Rational(gadget.c)};
        record("top_dimension_is_n",
               dim_at(gadget.pres_m, top) == static_cast<std::size_t>(ci.n) &&
                   dim_at(gadget.pres_n, top) == static_cast<std::size_t>(ci.n));

        const auto found = solve_ci(ci, q, limits);
        Json result{{"solvable", found.has_value()},
                    {"n", ci.n},
                    {"K", ci.zero_count()},
                    {"C", std::to_string(gadget.c)}};
        if (found) {
            record("solver_output_verifies", verify_ci(ci, *found));
            const auto cert = ci_certificate(ci, *found, p);
            record("certificate_matches_bound", matches(cert.cost, kn));
            record("certificate_regenerates_M",
                   check_regeneration(Regeneration(cert.pres_m, gadget.pres_m, cert.iota_m)));
            record("certificate_regenerates_N",
                   check_regeneration(Regeneration(cert.pres_n, gadget.pres_n, cert.iota_n)));
            result["A"] = ci_solution_to_json(*found)["A"];
            result["certificate_cost_pow_p"] = cert.cost.payload_string();
            result["certificate_cost"] = decimal12(cert.cost.to_double(p));
        }
        report["result"] = result;
    }

    report["checks"] = checks;
    if (with_timings) {
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - started)
                                 .count();
        report["timings"] = Json{{"total_ms", elapsed}};
    }
    std::cout << canonical_dump(report) << "\n";
    if (!ok) {
        std::cerr << "pipeline consistency checks failed\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"presentation-distance reductions: gadgets, solvers, certificates"};
    app.require_subcommand(1);

    std::string sizes_csv, pattern_p, pattern_q, out_path, prefix, inst_path, sol_path;
    std::string x_path, y_path, pres_path, at_point, p_text = "1";
    int k = 1, paper = 0;
    std::uint32_t field = 2;
    std::optional<int> limit;
    bool with_timings = false;

    auto* gen = app.add_subcommand("gen", "write a canonical instance file");
    gen->require_subcommand(1);
    auto* gen_bp = gen->add_subcommand("balpart", "balanced partition instance");
    gen_bp->add_option("--sizes", sizes_csv, "comma-separated positive integers")->required();
    gen_bp->add_option("-k,--bins", k, "number of bins")->required();
    gen_bp->add_option("--out", out_path, "output file (stdout if omitted)");
    auto* gen_ci = gen->add_subcommand("ci", "constrained invertibility instance");
    gen_ci->add_option("--paper-example", paper, "worked example 1 (solvable) or 2 (unsolvable)");
    gen_ci->add_option("--pattern-p", pattern_p, "rows of P, e.g. \"***,*0*,**0\"");
    gen_ci->add_option("--pattern-q", pattern_q, "rows of Q");
    gen_ci->add_option("--out", out_path, "output file (stdout if omitted)");

    auto* gadget = app.add_subcommand("gadget", "build the reduction gadget for an instance");
    gadget->add_option("instance", inst_path)->required();
    gadget->add_option("-p", p_text, "cost exponent (default 1)");
    gadget->add_option("--field", field, "prime field modulus for CI gadgets (default 2)");
    gadget->add_option("--out", prefix, "output file prefix (default: instance stem)");

    auto* bar = app.add_subcommand("barcode", "degree-0 barcode of a presentation file");
    bar->add_option("presentation", pres_path)->required();
    bar->add_option("--out", out_path);

    auto* wass = app.add_subcommand("wasserstein", "p-Wasserstein distance of two barcodes");
    wass->add_option("x", x_path)->required();
    wass->add_option("y", y_path)->required();
    wass->add_option("-p", p_text, "cost exponent (default 1, must be finite)");
    wass->add_option("--out", out_path);

    auto* solve = app.add_subcommand("solve", "decide an instance");
    solve->add_option("instance", inst_path)->required();
    solve->add_option("--field", field, "prime field for CI (default 2)");
    solve->add_option("--limit", limit, "override solver size limits");
    solve->add_option("--out", out_path);

    auto* certify = app.add_subcommand("certify", "build the certificate for a solution");
    certify->add_option("instance", inst_path)->required();
    certify->add_option("solution", sol_path)->required();
    certify->add_option("-p", p_text, "cost exponent (default 1)");
    certify->add_option("--out", prefix, "write presentation files with this prefix");

    auto* verify = app.add_subcommand("verify", "check a solution against an instance");
    verify->add_option("instance", inst_path)->required();
    verify->add_option("solution", sol_path)->required();

    auto* dim = app.add_subcommand("dim", "pointwise dimension of a 2-parameter presentation");
    dim->add_option("presentation", pres_path)->required();
    dim->add_option("--at", at_point, "grade \"x,y\"")->required();

    auto* pipeline = app.add_subcommand("pipeline", "solve, certify and check all identities");
    pipeline->add_option("instance", inst_path)->required();
    pipeline->add_option("-p", p_text, "cost exponent (default 1)");
    pipeline->add_option("--field", field, "prime field for CI (default 2)");
    pipeline->add_option("--limit", limit, "override solver size limits");
    pipeline->add_flag("--timings", with_timings, "include wall-clock timings in the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const PExponent p = PExponent::parse(p_text);
        if (gen_bp->parsed()) return cmd_gen_balpart(sizes_csv, k, out_path);
        if (gen_ci->parsed()) return cmd_gen_ci(paper, pattern_p, pattern_q, out_path);
        if (gadget->parsed()) return cmd_gadget(inst_path, p, field, prefix);
        if (bar->parsed()) return cmd_barcode(pres_path, out_path);
        if (wass->parsed()) return cmd_wasserstein(x_path, y_path, p, out_path);
        if (solve->parsed()) return cmd_solve(inst_path, field, limit, out_path);
        if (certify->parsed()) return cmd_certify(inst_path, sol_path, p, prefix);
        if (verify->parsed()) return cmd_verify(inst_path, sol_path);
        if (dim->parsed()) return cmd_dim(pres_path, at_point);
        if (pipeline->parsed()) return cmd_pipeline(inst_path, p, field, limit, with_timings);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const SizeLimitExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
