// Command-line front end.  Loads a scenario file, runs one stage of the
// pipeline, and prints a deterministic report: `verify` runs the store
// verifier suite, `solve` produces a bounding pair with its re-derived
// certificate, `omega` dumps the superpotential, `ogw` the invariant table,
// `axioms` the axiom report, and `gauge-check` the two-gauge comparison.
//
// Exit codes: 0 success, 1 verification or axiom failure, 2 configuration
// error, 3 truncation fault.  The report goes to standard output; --out
// writes the same bytes to <dir>/<subcommand>.txt (or .rows).  Runs with the
// same scenario and seed produce byte-identical output, and machine rows
// carry exact rationals only.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ogw/scenario.hpp"

namespace {

using namespace ogw;

std::string csv(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out.empty() ? "-" : out;
}

void report_text(std::ostream& os, const Report& rep) {
    if (rep.passed()) {
        os << "PASS " << rep.subject << " (" << rep.checks << " checks)\n";
    } else {
        os << "FAIL " << rep.subject << " (" << rep.checks << " checks, "
           << rep.failure_count << " failures)\n";
        for (const auto& f : rep.failures)
            os << "  " << f.property << ": " << f.witness << "\n";
    }
}

void report_rows(std::ostream& os, const std::string& record,
                 const Report& rep) {
    os << record << " " << (rep.passed() ? "ok" : "fail") << " " << rep.checks
       << " " << rep.failure_count << "\n";
    for (const auto& f : rep.failures)
        os << "failure " << f.property << " " << f.witness << "\n";
}

void series_rows(std::ostream& os, const std::string& record,
                 const Series& f) {
    for (const auto& [m, c] : f.terms)
        os << record << " " << m.s << " " << csv(m.t) << " " << csv(m.beta)
           << " " << rational_to_string(c) << "\n";
}

int run_verify(const Workspace& ws, std::ostream& os, bool rows) {
    std::vector<Report> reports = verify_all(ws.q, ws.gamma, 4);
    long passed = 0;
    for (const Report& rep : reports) {
        if (rep.passed()) ++passed;
        if (rows)
            report_rows(os, "verifier " + rep.subject, rep);
        else
            report_text(os, rep);
    }
    if (!rows)
        os << passed << "/" << reports.size() << " verifiers passed\n";
    return passed == static_cast<long>(reports.size()) ? 0 : 1;
}

int run_solve(const Workspace& ws, std::ostream& os, bool rows) {
    SolveResult res =
        solve_bounding(ws.q, ws.gamma, ws.a, ws.policy, ws.solve_cutoff);
    BoundingCheck check = verify_bounding(ws.q, res.pair);
    const std::vector<BasisElement>& basis = ws.model.basis();
    if (rows) {
        for (const LevelLog& log : res.levels)
            os << "level " << rational_to_string(log.energy) << " "
               << log.primitives << " " << log.forced << " " << log.c_terms
               << " " << log.vanished << "\n";
        for (std::size_t i = 0; i < basis.size(); ++i)
            series_rows(os, "chain " + basis[i].label, res.pair.b.coords[i]);
        series_rows(os, "curvature", res.pair.c);
        report_rows(os, "certificate", check.report);
    } else {
        os << "policy " << policy_name(ws.policy.variant) << ", gauge "
           << ws.policy.gauge.name << ", cutoff "
           << rational_to_string(ws.solve_cutoff) << "\n";
        for (const LevelLog& log : res.levels)
            os << "level " << rational_to_string(log.energy) << ": "
               << log.primitives << " primitive, " << log.forced
               << " forced, " << log.c_terms << " curvature, "
               << log.vanished << " vanished\n";
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (!res.pair.b.coords[i].is_zero())
                os << "b[" << basis[i].label
                   << "] = " << ws.ring.to_string(res.pair.b.coords[i])
                   << "\n";
        os << "c = " << ws.ring.to_string(res.pair.c) << "\n";
        report_text(os, check.report);
    }
    return check.report.passed() ? 0 : 1;
}

Superpotential scenario_omega(const Workspace& ws) {
    SolveResult res =
        solve_bounding(ws.q, ws.gamma, ws.a, ws.policy, ws.solve_cutoff);
    Superpotential om = compute_omega(ws.q, res.pair);
    if (ws.extraction_cutoff < ws.solve_cutoff) {
        om.omega = ws.ring.truncate(om.omega, ws.extraction_cutoff);
        om.omega_hat = ws.ring.truncate(om.omega_hat, ws.extraction_cutoff);
        om.cutoff = ws.extraction_cutoff;
    }
    return om;
}

int run_omega(const Workspace& ws, std::ostream& os, bool rows) {
    Superpotential om = scenario_omega(ws);
    if (rows) {
        series_rows(os, "omega_hat", om.omega_hat);
        series_rows(os, "omega", om.omega);
    } else {
        os << "n = " << om.n << ", cutoff = "
           << rational_to_string(om.cutoff) << "\n";
        os << "omega_hat = " << ws.ring.to_string(om.omega_hat) << "\n";
        os << "omega = " << ws.ring.to_string(om.omega) << "\n";
    }
    return 0;
}

int run_ogw(const Workspace& ws, std::ostream& os, bool rows) {
    InvariantTable tab = extract_table(scenario_omega(ws));
    for (const InvariantEntry& e : tab.entries) {
        if (rows)
            os << "ogw " << csv(e.beta) << " " << e.k << " "
               << csv(e.interior) << " " << rational_to_string(e.value)
               << "\n";
        else
            os << "ogw beta=(" << csv(e.beta) << ") k=" << e.k
               << " interior=(" << csv(e.interior)
               << ") = " << rational_to_string(e.value) << "\n";
    }
    if (!rows)
        os << tab.entries.size() << " invariants within cutoff "
           << rational_to_string(tab.cutoff) << "\n";
    return 0;
}

int run_axioms(const Workspace& ws, std::ostream& os, bool rows) {
    InvariantTable tab = extract_table(scenario_omega(ws));
    Report rep = check_axioms(ws.ring, tab);
    if (rows) {
        os << "table " << tab.entries.size() << "\n";
        report_rows(os, "axioms", rep);
    } else {
        os << "table entries: " << tab.entries.size() << "\n";
        report_text(os, rep);
    }
    return rep.passed() ? 0 : 1;
}

int run_gauge_check(const Workspace& ws, std::ostream& os, bool rows) {
    Report rep = gauge_independence_check(
        ws.q, ws.gamma, ws.a, ws.policy.variant, make_gauge("pivot"),
        make_gauge("shifted"), ws.solve_cutoff);
    if (rows) {
        report_rows(os, "gauge", rep);
    } else {
        report_text(os, rep);
        if (rep.passed())
            os << "gauges pivot and shifted agree on " << rep.checks
               << " monomials\n";
    }
    return rep.passed() ? 0 : 1;
}

int run(int argc, char** argv) {
    CLI::App app{
        "Bounding chains and open invariants from q-operator stores"};
    std::string sub, path, cutoff_text, gauge, out_dir, format;
    std::uint64_t seed = 0;
    app.add_option("subcommand", sub,
                   "verify | solve | omega | ogw | axioms | gauge-check")
        ->required();
    app.add_option("scenario", path, "scenario configuration file")
        ->required();
    CLI::Option* seed_opt =
        app.add_option("--seed", seed, "generated-store seed override");
    app.add_option("--cutoff", cutoff_text,
                   "energy cutoff override, an exact rational like 5/2");
    app.add_option("--gauge", gauge, "gauge override: pivot or shifted");
    app.add_option("--out", out_dir, "directory for the report file");
    app.add_option("--format", format, "output format: text or rows");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Scenario sc = load_scenario(path);
    RunOverrides ov;
    if (seed_opt->count() > 0) ov.seed = seed;
    if (!cutoff_text.empty()) ov.cutoff = parse_rational_literal(cutoff_text);
    if (!gauge.empty()) ov.gauge = gauge;
    std::string fmt = format.empty() ? sc.format : format;
    if (fmt != "text" && fmt != "rows")
        throw ConfigError("--format expects text or rows, got '" + fmt + "'");
    bool rows = fmt == "rows";

    auto ws = instantiate(sc, ov);
    std::ostringstream os;
    if (!rows) os << sub << ": " << sc.name << "\n";

    int code;
    if (sub == "verify")
        code = run_verify(*ws, os, rows);
    else if (sub == "solve")
        code = run_solve(*ws, os, rows);
    else if (sub == "omega")
        code = run_omega(*ws, os, rows);
    else if (sub == "ogw")
        code = run_ogw(*ws, os, rows);
    else if (sub == "axioms")
        code = run_axioms(*ws, os, rows);
    else if (sub == "gauge-check")
        code = run_gauge_check(*ws, os, rows);
    else
        throw ConfigError("unknown subcommand '" + sub +
                          "' (expected verify, solve, omega, ogw, axioms, or "
                          "gauge-check)");

    std::cout << os.str();
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::filesystem::path file =
            std::filesystem::path(out_dir) / (sub + (rows ? ".rows" : ".txt"));
        std::ofstream out(file);
        if (!out)
            throw ConfigError("cannot write report file '" + file.string() +
                              "'");
        out << os.str();
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const TruncationError& e) {
        std::cerr << "truncation fault: " << e.what() << "\n";
        return 3;
    } catch (const VerificationError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const InternalFault& e) {
        std::cerr << "internal fault: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
