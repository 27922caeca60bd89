#include "loopalg/cli.hpp"

#include "loopalg/deviations.hpp"
#include "loopalg/errors.hpp"
#include "loopalg/loop_term.hpp"
#include "loopalg/series.hpp"
#include "loopalg/su_ops.hpp"
#include "loopalg/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

namespace loopalg {

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 1729;
// Multilinear monomial counts grow factorially; larger probes need --force.
constexpr int kGrancosaDegreeGuard = 7;

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            if (!cur.empty())
                out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

// Registers the term's identifiers sorted by name, so output order does not
// depend on where a variable first appears; --vars overrides with an
// explicit alphabet.
VarTable make_table(const std::string& term_text, const std::string& vars_csv) {
    VarTable table;
    if (!vars_csv.empty()) {
        for (const auto& name : split_csv(vars_csv))
            table.add(name);
        return table;
    }
    std::set<std::string> names;
    std::size_t i = 0;
    while (i < term_text.size()) {
        if (std::isalpha(static_cast<unsigned char>(term_text[i]))) {
            std::size_t start = i;
            while (i < term_text.size() &&
                   std::isalnum(static_cast<unsigned char>(term_text[i])))
                ++i;
            names.insert(term_text.substr(start, i - start));
        } else {
            ++i;
        }
    }
    for (const auto& name : names)
        table.add(name);
    return table;
}

void emit_series_text(const Series& s, const VarTable& table, std::ostream& out) {
    out << str(s, table) << "\n";
}

void emit_series_records(const Series& s, const VarTable& table, std::ostream& out) {
    s.for_each([&](const Monomial* m, const Coeff& c) {
        json row;
        row["monomial"] = m ? str(*m, table) : "1";
        row["num"] = c.get_num().get_str();
        row["den"] = c.get_den().get_str();
        out << row.dump() << "\n";
    });
}

struct VerifyOptions {
    std::string format = "text";
    std::string inconclusive_as = "fail";
    bool timings = false;
    int jobs = 1;
};

json report_json(const VerificationReport& r, bool timings) {
    json row;
    row["case"] = r.case_id;
    json params = json::object();
    for (const auto& [k, v] : r.params)
        params[k] = v;
    row["params"] = params;
    row["verdict"] = std::string(verdict_str(r.verdict));
    row["witness"] = r.witness ? json(*r.witness) : json(nullptr);
    row["truncation"] = r.truncation;
    row["millis"] = timings ? json(r.millis) : json(nullptr);
    return row;
}

int emit_reports(const std::vector<VerificationReport>& reports,
                 const VerifyOptions& opt, std::ostream& out) {
    int fails = 0, inconclusive = 0;
    for (const auto& r : reports) {
        if (r.verdict == Verdict::Fail)
            ++fails;
        if (r.verdict == Verdict::Inconclusive)
            ++inconclusive;
        if (opt.format == "records") {
            out << report_json(r, opt.timings).dump() << "\n";
        } else {
            out << verdict_str(r.verdict) << "  " << r.case_id << "  (trunc "
                << r.truncation << ", " << std::fixed << std::setprecision(1)
                << r.millis << " ms)\n";
            if (r.verdict != Verdict::Pass) {
                for (const auto& [k, v] : r.params)
                    out << "    " << k << " = " << v << "\n";
                if (r.witness)
                    out << "    witness: " << *r.witness << "\n";
            }
        }
    }
    if (opt.format != "records") {
        out << reports.size() << " cases: " << (reports.size() - fails - inconclusive)
            << " pass, " << fails << " fail, " << inconclusive << " inconclusive\n";
    }
    if (fails > 0)
        return 1;
    if (inconclusive > 0 && opt.inconclusive_as == "fail")
        return 1;
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact computation in free loops and truncated"
                 " non-associative power series"};
    app.require_subcommand(1);

    std::string term_text, vars_csv, format = "text";
    int degree = 6, order = 4;

    auto* cmd_expand = app.add_subcommand("expand", "expand a loop word into series");
    cmd_expand->add_option("term", term_text, "loop word, e.g. \"(y*x)\\(x*y)\"")
        ->required();
    cmd_expand->add_option("--degree", degree, "truncation degree")->check(CLI::PositiveNumber);
    cmd_expand->add_option("--vars", vars_csv, "comma-separated alphabet");
    cmd_expand->add_option("--format", format)->check(CLI::IsMember({"text", "records"}));

    auto* cmd_taylor = app.add_subcommand("taylor", "low-degree coefficients of a loop word");
    cmd_taylor->add_option("term", term_text)->required();
    cmd_taylor->add_option("--order", order, "highest degree reported")
        ->check(CLI::PositiveNumber);
    cmd_taylor->add_option("--vars", vars_csv, "comma-separated alphabet");
    cmd_taylor->add_option("--format", format)->check(CLI::IsMember({"text", "records"}));

    int pop_r = 1, pop_s = 1, pop_degree = 0;
    auto* cmd_pop = app.add_subcommand("pop", "primitive operation on fresh generators");
    cmd_pop->add_option("--r", pop_r)->check(CLI::PositiveNumber);
    cmd_pop->add_option("--s", pop_s)->check(CLI::PositiveNumber);
    cmd_pop->add_option("--degree", pop_degree, "truncation degree (default r+s+1)");
    cmd_pop->add_option("--format", format)->check(CLI::IsMember({"text", "records"}));

    std::string dev_args, dev_idx;
    auto* cmd_dev = app.add_subcommand("deviation", "build an associator deviation");
    cmd_dev->alias("dev");
    cmd_dev->add_option("--args", dev_args, "comma-separated argument names")->required();
    cmd_dev->add_option("--idx", dev_idx, "comma-separated index sequence");

    int p_m = 1, p_n = 1;
    auto* cmd_p = app.add_subcommand("P", "deviation realizing the primitive operation");
    cmd_p->add_option("--m", p_m)->check(CLI::PositiveNumber);
    cmd_p->add_option("--n", p_n)->check(CLI::PositiveNumber);

    VerifyOptions vopt;
    std::string suite;
    std::uint64_t seed = kDefaultSeed;
    int v_degree = 0, v_cases = 0, v_subst = 25, v_max_total = 4;
    int v_m = 0, v_n = 0;
    bool prune = true, force = false;
    auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
    cmd_verify->add_option("suite", suite)
        ->required()
        ->check(CLI::IsMember({"grancosa", "axioms", "balance", "grading", "primitive"}));
    cmd_verify->add_option("--degree", v_degree, "truncation degree");
    cmd_verify->add_option("--cases", v_cases, "number of cases");
    cmd_verify->add_option("--subst-cases", v_subst, "substitution cases (balance)");
    cmd_verify->add_option("--seed", seed, "suite seed");
    cmd_verify->add_option("--max-total", v_max_total, "largest m+n (grancosa)");
    cmd_verify->add_option("--m", v_m, "single case m (grancosa)");
    cmd_verify->add_option("--n", v_n, "single case n (grancosa)");
    cmd_verify->add_flag("--prune,!--no-prune", prune, "multilinear pruning (grancosa)");
    cmd_verify->add_flag("--force", force, "override the resource guard");
    cmd_verify->add_flag("--timings", vopt.timings, "include wall time in records");
    cmd_verify->add_option("--jobs", vopt.jobs, "worker threads")
        ->check(CLI::PositiveNumber);
    cmd_verify->add_option("--format", vopt.format)
        ->check(CLI::IsMember({"text", "records"}));
    cmd_verify->add_option("--inconclusive-as", vopt.inconclusive_as)
        ->check(CLI::IsMember({"pass", "fail"}));

    std::vector<const char*> argv;
    argv.push_back("loopalg");
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*cmd_expand) {
            VarTable table = make_table(term_text, vars_csv);
            LoopTerm t = parse_term(term_text, table);
            Series s = magnus(t, degree);
            if (format == "records")
                emit_series_records(s, table, out);
            else
                emit_series_text(s, table, out);
            return 0;
        }

        if (*cmd_taylor) {
            VarTable table = make_table(term_text, vars_csv);
            LoopTerm t = parse_term(term_text, table);
            TaylorExpansion e = taylor(t, order);
            if (format == "records") {
                for (const auto& [m, c] : e.coeffs) {
                    json row;
                    row["monomial"] = str(m, table);
                    row["num"] = c.get_num().get_str();
                    row["den"] = c.get_den().get_str();
                    out << row.dump() << "\n";
                }
                json tail;
                tail["remainder_known_nonzero"] = e.remainder_known_nonzero;
                out << tail.dump() << "\n";
            } else {
                out << "{";
                bool first = true;
                for (const auto& [m, c] : e.coeffs) {
                    if (!first)
                        out << ", ";
                    first = false;
                    out << str(m, table) << ":" << coeff_str(c);
                }
                out << "}";
                if (e.remainder_known_nonzero)
                    out << " + O(" << e.order + 1 << ")";
                out << "\n";
            }
            return 0;
        }

        if (*cmd_pop) {
            int n = pop_degree > 0 ? pop_degree : pop_r + pop_s + 1;
            VarTable table;
            std::vector<Series> xs, ys;
            for (int i = 1; i <= pop_r; ++i)
                xs.push_back(Series::variable(table.add("x" + std::to_string(i)), n));
            for (int i = 1; i <= pop_s; ++i)
                ys.push_back(Series::variable(table.add("y" + std::to_string(i)), n));
            Series z = Series::variable(table.add("z"), n);
            Series p = primitive_op(xs, ys, z);
            if (format == "records")
                emit_series_records(p, table, out);
            else
                emit_series_text(p, table, out);
            return 0;
        }

        if (*cmd_dev) {
            VarTable table;
            std::vector<LoopTerm> terms;
            for (const auto& name : split_csv(dev_args)) {
                VarId v = table.find(name) ? *table.find(name) : table.add(name);
                terms.push_back(LoopTerm::gen(v));
            }
            std::vector<int> alphas;
            for (const auto& tok : split_csv(dev_idx))
                alphas.push_back(std::stoi(tok));
            LoopTerm d = deviation(terms, alphas);
            out << str(d, table) << "\n";
            return 0;
        }

        if (*cmd_p) {
            VarTable table;
            std::vector<LoopTerm> xs, ys;
            for (int i = 1; i <= p_m; ++i)
                xs.push_back(LoopTerm::gen(table.add("x" + std::to_string(i))));
            for (int i = 1; i <= p_n; ++i)
                ys.push_back(LoopTerm::gen(table.add("y" + std::to_string(i))));
            LoopTerm z = LoopTerm::gen(table.add("z"));
            out << str(deviation_P(p_m, p_n, xs, ys, z), table) << "\n";
            return 0;
        }

        if (*cmd_verify) {
            std::vector<VerificationReport> reports;
            if (suite == "grancosa") {
                bool single = cmd_verify->count("--m") || cmd_verify->count("--n");
                if (single) {
                    if (v_m < 1 || v_n < 1)
                        throw usage_error("grancosa single case needs --m and --n >= 1");
                    if (v_m + v_n + 1 > kGrancosaDegreeGuard && !force)
                        throw usage_error(
                            "resource guard: m+n+1 > " +
                            std::to_string(kGrancosaDegreeGuard) +
                            " needs --force (multilinear monomial counts grow"
                            " factorially)");
                    reports.push_back(verify_grancosa(v_m, v_n, prune));
                } else {
                    if (v_max_total + 1 > kGrancosaDegreeGuard && !force)
                        throw usage_error(
                            "resource guard: max-total+1 > " +
                            std::to_string(kGrancosaDegreeGuard) + " needs --force");
                    reports = run_grancosa_suite(v_max_total, prune, vopt.jobs);
                }
            } else if (suite == "axioms") {
                reports = run_axioms_suite(v_degree > 0 ? v_degree : 8,
                                           v_cases > 0 ? v_cases : 100, seed, vopt.jobs);
            } else if (suite == "balance") {
                reports = run_balance_suite(v_cases > 0 ? v_cases : 50, v_subst, seed,
                                            vopt.jobs);
            } else if (suite == "grading") {
                reports = run_grading_suite(v_cases > 0 ? v_cases : 50,
                                            v_degree > 0 ? v_degree : 7, seed, vopt.jobs);
            } else if (suite == "primitive") {
                reports = run_primitive_suite(v_cases > 0 ? v_cases : 100,
                                              v_degree > 0 ? v_degree : 6, seed,
                                              vopt.jobs);
            }
            return emit_reports(reports, vopt, out);
        }
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const usage_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const non_unit_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace loopalg
