// Command-line prover for information inequalities and identities.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "geitip/bench.hpp"
#include "geitip/errors.hpp"
#include "geitip/prover.hpp"

using namespace geitip;
using nlohmann::json;

namespace {

struct Options {
    std::string file;
    std::string bench_name;
    int retries = 16;
    std::uint64_t seed = 0;
    bool minimal = false;
    bool identity = false;
    std::string json_path;
    bool verify = false;
    bool stats = false;
    bool deterministic = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw error("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void print_stats(const RunStats& stats, bool deterministic) {
    std::cout << "attempts: " << stats.attempts << "\n";
    std::cout << "lp fallback invoked: " << (stats.lp_calls > 0 ? "yes" : "no");
    if (stats.lp_calls > 0)
        std::cout << " (" << stats.lp_calls << " solve" << (stats.lp_calls == 1 ? "" : "s") << ")";
    std::cout << "\n";
    std::cout << "stage sizes:\n";
    for (const auto& s : stats.stages) {
        std::cout << "  " << s.stage << ": " << s.variables << " variables, " << s.equalities
                  << " equalities, " << s.inequalities << " inequalities\n";
    }
    if (!deterministic)
        std::cout << "wall time: " << stats.wall_seconds << " s\n";
}

void print_certificate(const Certificate& cert, const ExpandedProblem* ex,
                       const SlackProblem* sp, const VariableUniverse& display_universe,
                       const std::string& heading) {
    std::cout << heading << "\n";
    for (const auto& [i, mu] : cert.ineq_mults) {
        std::cout << "  " << to_string(mu) << " * ";
        if (ex) {
            std::cout << "[C" << i << "] " << ex->ineq_label(i) << "   ["
                      << to_string(ex->ineqs[i], display_universe) << "]";
        } else {
            std::cout << "[C" << i << "] " << display_universe.display(Variable::slack(
                             static_cast<std::uint32_t>(i + 1)))
                      << " >= 0";
        }
        std::cout << "\n";
    }
    bool have_eq = !cert.eq_mults.empty();
    if (have_eq)
        std::cout << "  with equality multipliers:\n";
    for (const auto& [k, nu] : cert.eq_mults) {
        std::cout << "  " << to_string(nu) << " * ";
        if (ex) {
            std::cout << "[E" << k << "] " << ex->eq_labels[k] << "   ["
                      << to_string(ex->eqs[k], display_universe) << "]";
        } else {
            std::cout << "[E" << k << "] " << to_string(sp->rows[k], display_universe) << " = 0";
        }
        std::cout << "\n";
    }
}

json mults_to_json(const std::map<std::size_t, Rational>& m) {
    json arr = json::array();
    for (const auto& [i, q] : m)
        arr.push_back({i, to_string(q)});
    return arr;
}

json form_to_json(const LinearForm& f, const VariableUniverse& u) {
    json arr = json::array();
    for (const auto& t : f.terms())
        arr.push_back({u.display(t.var), to_string(t.coeff)});
    return arr;
}

json report_to_json(const ProofReport& report, const VariableUniverse& u, bool deterministic) {
    json j;
    j["verdict"] = report.proved ? "PROVED" : "NOT_PROVABLE";
    if (!report.proved)
        j["reason"] = report.reason;
    j["attempts"] = report.stats.attempts;
    j["lp_calls"] = report.stats.lp_calls;
    if (!deterministic)
        j["wall_seconds"] = report.stats.wall_seconds;
    json stages = json::array();
    for (const auto& s : report.stats.stages) {
        stages.push_back({{"stage", s.stage},
                          {"variables", s.variables},
                          {"equalities", s.equalities},
                          {"inequalities", s.inequalities}});
    }
    j["stage_sizes"] = std::move(stages);
    if (report.certificate) {
        j["certificate"] = {
            {"inequality_multipliers", mults_to_json(report.certificate->ineq_mults)},
            {"equality_multipliers", mults_to_json(report.certificate->eq_mults)}};
    }
    if (report.reverse_certificate) {
        j["reverse_certificate"] = {
            {"inequality_multipliers", mults_to_json(report.reverse_certificate->ineq_mults)},
            {"equality_multipliers", mults_to_json(report.reverse_certificate->eq_mults)}};
    }
    if (report.minimal) {
        json rows = json::array();
        for (const auto& r : report.minimal->rows)
            rows.push_back(form_to_json(r, u));
        json bounds = json::array();
        for (Variable v : report.minimal->bounded)
            bounds.push_back(u.display(v));
        j["reduced_problem"] = {{"objective", form_to_json(report.minimal->objective, u)},
                                {"equalities", std::move(rows)},
                                {"bounded", std::move(bounds)},
                                {"variables", report.minimal->variable_count},
                                {"inequalities", report.minimal->inequality_count}};
    }
    return j;
}

int run(const Options& opt) {
    if (opt.file.empty() == opt.bench_name.empty())
        throw error("exactly one of --file and --bench is required");

    ProverOptions popt;
    popt.max_attempts = opt.retries;
    popt.seed = opt.seed;
    popt.want_minimal = opt.minimal;
    popt.collect_wall_time = !opt.deterministic;

    std::optional<ProblemStatement> statement;
    std::optional<SlackProblem> slack;
    if (!opt.file.empty()) {
        statement = parse(read_file(opt.file));
    } else {
        NamedProblem np = bench(opt.bench_name);
        if (np.is_statement())
            statement = np.statement();
        else
            slack = np.slack();
    }

    ProofReport report;
    std::optional<ExpandedProblem> expanded;
    VariableUniverse display_universe;
    if (statement) {
        if (opt.identity && statement->objective.rel != Relation::eq)
            throw error("--identity requires an objective of the form lhs = rhs");
        report = opt.identity ? prove_identity(*statement, popt) : prove(*statement, popt);
        expanded = expand_problem(*statement);
        display_universe = expanded->universe;
    } else {
        if (opt.identity)
            throw error("--identity applies to statement problems only");
        report = prove_slack_problem(*slack, popt);
    }

    std::cout << "verdict: " << (report.proved ? "PROVED" : "NOT_PROVABLE") << "\n";
    if (!report.proved && !report.reason.empty())
        std::cout << "reason: " << report.reason << "\n";
    if (opt.stats)
        print_stats(report.stats, opt.deterministic);

    if (report.proved && report.certificate) {
        print_certificate(*report.certificate, expanded ? &*expanded : nullptr,
                          slack ? &*slack : nullptr, display_universe, "certificate:");
        if (report.reverse_certificate)
            print_certificate(*report.reverse_certificate, expanded ? &*expanded : nullptr,
                              slack ? &*slack : nullptr, display_universe,
                              "reverse certificate:");
    }
    if (report.minimal && (opt.minimal || !report.proved)) {
        std::cout << "reduced problem: " << report.minimal->inequality_count
                  << " inequalities over " << report.minimal->variable_count
                  << " free dimensions, " << report.minimal->rows.size() << " equality rows\n";
        std::cout << "  objective: " << to_string(report.minimal->objective, display_universe)
                  << "\n";
        for (const auto& r : report.minimal->rows)
            std::cout << "  0 = " << to_string(r, display_universe) << "\n";
    }

    if (opt.verify && report.proved) {
        bool ok = statement ? verify_report(report, *statement) : verify_report(report, *slack);
        if (!ok) {
            std::cerr << "certificate verification FAILED\n";
            return 3;
        }
        std::cout << "certificate verified\n";
    }

    if (!opt.json_path.empty()) {
        json j = report_to_json(report, display_universe, opt.deterministic);
        if (opt.json_path == "-") {
            std::cout << j.dump(2) << "\n";
        } else {
            std::ofstream out(opt.json_path);
            if (!out)
                throw error("cannot write JSON report: " + opt.json_path);
            out << j.dump(2) << "\n";
        }
    }
    return report.proved ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prover for Shannon-type information inequalities and identities"};
    Options opt;
    app.add_option("--file", opt.file, "problem file in the statement grammar");
    app.add_option("--bench", opt.bench_name, "built-in problem")
        ->check(CLI::IsMember(bench_names()));
    app.add_option("--retries", opt.retries, "maximum elimination-search attempts")
        ->default_val(16);
    app.add_option("--seed", opt.seed, "base seed for randomized attempts")->default_val(0);
    app.add_flag("--minimal", opt.minimal, "emit the fully reduced system even on success");
    app.add_flag("--identity", opt.identity, "force the identity procedure");
    app.add_option("--json", opt.json_path, "write a JSON report to this path ('-' for stdout)");
    app.add_flag("--verify", opt.verify, "re-verify the certificate before reporting");
    app.add_flag("--stats", opt.stats, "print pipeline statistics");
    app.add_flag("--deterministic", opt.deterministic,
                 "suppress timing fields for byte-identical output");
    CLI11_PARSE(app, argc, argv);

    try {
        return run(opt);
    } catch (const internal_error& e) {
        std::cerr << "internal soundness error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
