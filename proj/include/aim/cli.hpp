#pragma once

// Command-line front end:
//   aim <solve|converge|exact|table|wavefunction|oracle> [options]
// Records go to stdout (or --out) as JSON or CSV; diagnostics go to stderr.
// Exit codes: 0 success, 2 validation, 3 convergence failure, 4 table mismatch.

#include "aim/analytic.hpp"
#include "aim/oracle.hpp"
#include "aim/reference_tables.hpp"
#include "aim/solver.hpp"
#include "aim/wavefunction.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace aim::cli {

using nlohmann::ordered_json;

enum ExitCode : int {
    kOk = 0,
    kValidation = 2,
    kConvergence = 3,
    kMismatch = 4,
};

/// Digits used for every emitted number.
inline constexpr int kOutputDigits = 10;

struct RunConfig {
    std::string command;
    std::optional<int> kappa;
    // physical group
    std::string A, B, C, mass, hbar;
    // reduced group
    bool reduced = false;
    std::string a_tilde, gamma;

    std::string n_spec = "0";
    std::string l_spec = "0";
    std::string beta;  ///< single value, or a comma list for converge
    std::optional<int> k_min, k_max, k_step;
    std::string tol;
    std::optional<unsigned> precision_bits;
    std::string scan_min, scan_max, scan_step;
    std::string format = "json";
    std::string out;

    int table_id = 0;
    int points = 0;          ///< samples (wavefunction) or grid points (oracle)
    std::string r_max;       ///< oracle / exact wavefunction grid extent
    unsigned workers = 0;

    bool has_physical() const {
        return !A.empty() || !B.empty() || !C.empty() || !mass.empty() || !hbar.empty();
    }
};

/// "0..2", "0,2,4", "1" or combinations such as "0..1,3".
inline std::vector<int> parse_index_list(const std::string& spec) {
    std::vector<int> out;
    std::stringstream ss(spec);
    std::string part;
    const auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            throw ParameterError("bad quantum-number list '" + spec + "'");
        }
        if (used != s.size() || v < 0) {
            throw ParameterError("bad quantum-number list '" + spec + "'");
        }
        return v;
    };
    while (std::getline(ss, part, ',')) {
        if (part.empty()) {
            throw ParameterError("bad quantum-number list '" + spec + "'");
        }
        if (const auto dots = part.find(".."); dots != std::string::npos) {
            const int a = to_int(part.substr(0, dots));
            const int b = to_int(part.substr(dots + 2));
            if (b < a) {
                throw ParameterError("descending range in '" + spec + "'");
            }
            for (int i = a; i <= b; ++i) {
                out.push_back(i);
            }
        } else {
            out.push_back(to_int(part));
        }
    }
    if (out.empty()) {
        throw ParameterError("empty quantum-number list");
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline ExtReal parse_real(const std::string& text, const char* what) {
    try {
        ExtReal v(text);
        if (!is_finite(v)) {
            throw std::runtime_error("non-finite");
        }
        return v;
    } catch (const std::exception&) {
        throw ParameterError(std::string("cannot parse ") + what + " value '" + text + "'");
    }
}

inline std::vector<ExtReal> parse_real_list(const std::string& text, const char* what) {
    std::vector<ExtReal> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        out.push_back(parse_real(part, what));
    }
    if (out.empty()) {
        throw ParameterError(std::string("empty ") + what + " list");
    }
    return out;
}

/// JSON number carrying kOutputDigits significant digits.
inline ordered_json number(const ExtReal& x) { return ordered_json(std::stod(to_string(x, kOutputDigits))); }

inline ordered_json optional_number(const std::optional<ExtReal>& x) {
    return x ? number(*x) : ordered_json(nullptr);
}

inline PotentialParams physical_params(const RunConfig& c) {
    PotentialParams p;
    p.kappa = *c.kappa;
    p.A = c.A.empty() ? ExtReal(0) : parse_real(c.A, "--A");
    p.B = c.B.empty() ? ExtReal(1) : parse_real(c.B, "--B");
    p.C = c.C.empty() ? ExtReal(0) : parse_real(c.C, "--C");
    p.mass = c.mass.empty() ? ExtReal(1) : parse_real(c.mass, "--mass");
    p.hbar = c.hbar.empty() ? ExtReal(1) : parse_real(c.hbar, "--hbar");
    validate(p);
    return p;
}

inline ProblemSpec problem_spec(const RunConfig& c) {
    if (c.reduced) {
        if (c.a_tilde.empty() || c.gamma.empty()) {
            throw ParameterError("--reduced needs --a-tilde and --gamma");
        }
        return ProblemSpec::from_reduced(*c.kappa, parse_real(c.a_tilde, "--a-tilde"),
                                         parse_real(c.gamma, "--gamma"));
    }
    return ProblemSpec::from_physical(physical_params(c));
}

inline void validate_config(const RunConfig& c) {
    if (c.reduced && c.has_physical()) {
        throw ParameterError("physical parameters (--A --B --C --mass --hbar) and --reduced are mutually exclusive");
    }
    if (!c.reduced && (!c.a_tilde.empty() || !c.gamma.empty())) {
        throw ParameterError("--a-tilde and --gamma require --reduced");
    }
    if (c.format != "json" && c.format != "csv") {
        throw ParameterError("--format must be json or csv");
    }
    if (c.command == "table") {
        return;
    }
    if (!c.kappa) {
        throw ParameterError("--kappa is required");
    }
    const int k = *c.kappa;
    if (k < -2 || k > 2) {
        throw ParameterError("--kappa must be one of -2, -1, 0, 1, 2");
    }
    if ((c.command == "solve" || c.command == "converge") && k <= 0) {
        throw ParameterError("kappa = " + std::to_string(k) +
                             " has closed-form solutions; use the 'exact' command instead of '" + c.command + "'");
    }
    if (c.command == "exact" && k > 0) {
        throw ParameterError("kappa = " + std::to_string(k) +
                             " has no closed form; use 'solve' or 'converge' instead of 'exact'");
    }
    if ((c.command == "exact" || c.command == "oracle") && c.reduced) {
        throw ParameterError("'" + c.command + "' needs physical parameters (--A --B --C --mass --hbar)");
    }
}

inline SolverOptions solver_options(const RunConfig& c) {
    SolverOptions o;
    if (!c.beta.empty() && c.command != "converge") {
        o.beta = parse_real(c.beta, "--beta");
    }
    if (c.k_min) o.k_min = *c.k_min;
    if (c.k_max) o.k_max = *c.k_max;
    if (c.k_step) o.k_step = *c.k_step;
    if (!c.tol.empty()) o.tol = parse_real(c.tol, "--tol");
    if (!c.scan_min.empty()) o.scan_min = parse_real(c.scan_min, "--scan-min");
    if (!c.scan_max.empty()) o.scan_max = parse_real(c.scan_max, "--scan-max");
    if (!c.scan_step.empty()) o.scan_step = parse_real(c.scan_step, "--scan-step");
    o.workers = c.workers;
    return o;
}

/// Common record fields: kappa, a_tilde, gamma, beta, n, l, epsilon,
/// e_physical, k_converged, status.
inline ordered_json base_record(const ProblemSpec& spec, const std::optional<ExtReal>& beta, int n, int l) {
    const ReducedParams red = spec.reduced(l);
    ordered_json r;
    r["kappa"] = spec.kappa;
    r["a_tilde"] = number(red.a_tilde);
    r["gamma"] = spec.kappa > 0 ? number(red.gamma) : ordered_json(nullptr);
    r["beta"] = optional_number(beta);
    r["n"] = n;
    r["l"] = l;
    r["epsilon"] = nullptr;
    r["e_physical"] = nullptr;
    r["k_converged"] = nullptr;
    r["status"] = nullptr;
    return r;
}

inline void fill_result(ordered_json& r, const EigenResult<ExtReal>& res) {
    r["epsilon"] = number(res.epsilon);
    r["e_physical"] = optional_number(res.e_physical);
    r["k_converged"] = res.k_converged >= 0 ? ordered_json(res.k_converged) : ordered_json(nullptr);
    r["status"] = to_string(res.status);
}

inline const std::vector<std::string>& record_columns() {
    static const std::vector<std::string> cols = {"kappa", "a_tilde", "gamma",       "beta",  "n",
                                                  "l",     "epsilon", "e_physical", "k_converged", "status"};
    return cols;
}

inline std::string csv_field(const ordered_json& v) {
    if (v.is_null()) {
        return "";
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    return v.dump();
}

/// CSV mirror of the record list; converge records expand to one row per trace point.
inline std::string records_csv(const ordered_json& records) {
    const bool traced = !records.empty() && records.front().contains("trace");
    std::ostringstream os;
    const auto& cols = record_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        os << (i ? "," : "") << cols[i];
    }
    if (traced) {
        os << ",k,epsilon_k";
    }
    os << "\n";
    for (const auto& rec : records) {
        std::string head;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            head += (i ? "," : "") + csv_field(rec[cols[i]]);
        }
        if (traced) {
            for (const auto& t : rec["trace"]) {
                os << head << "," << t["k"].dump() << "," << csv_field(t["epsilon"]) << "\n";
            }
        } else {
            os << head << "\n";
        }
    }
    return os.str();
}

struct Output {
    std::string text;
    int exit_code = kOk;
};

inline std::string render(const ordered_json& records, const RunConfig& c) {
    return c.format == "csv" ? records_csv(records) : records.dump(2) + "\n";
}

inline Output cmd_solve(const RunConfig& c, std::ostream& err) {
    const ProblemSpec spec = problem_spec(c);
    const SolverOptions opt = solver_options(c);
    const ExtReal beta = opt.beta.value_or(default_beta(spec.kappa));
    std::vector<StateIndex> states;
    for (int n : parse_index_list(c.n_spec)) {
        for (int l : parse_index_list(c.l_spec)) {
            states.push_back({n, l});
        }
    }
    const auto outcomes = solve_states(spec, states, opt);
    ordered_json records = ordered_json::array();
    int code = kOk;
    for (const auto& o : outcomes) {
        ordered_json r = base_record(spec, beta, o.state.n, o.state.l);
        if (o.result) {
            fill_result(r, *o.result);
            if (o.result->status != ConvergenceStatus::converged) {
                code = kConvergence;
            }
        } else {
            r["status"] = to_string(ConvergenceStatus::max_iterations);
            err << "n=" << o.state.n << " l=" << o.state.l << ": " << o.error << "\n";
            code = kConvergence;
        }
        records.push_back(std::move(r));
    }
    return {render(records, c), code};
}

inline Output cmd_converge(const RunConfig& c, std::ostream& err) {
    const ProblemSpec spec = problem_spec(c);
    const auto ns = parse_index_list(c.n_spec);
    const auto ls = parse_index_list(c.l_spec);
    if (ns.size() != 1 || ls.size() != 1) {
        throw ParameterError("converge takes a single (n, l) state");
    }
    const std::vector<ExtReal> betas =
        c.beta.empty() ? std::vector<ExtReal>{default_beta(spec.kappa)} : parse_real_list(c.beta, "--beta");
    SolverOptions opt = solver_options(c);
    opt.k_min = c.k_min.value_or(20);
    opt.k_max = c.k_max.value_or(90);
    opt.k_step = c.k_step.value_or(10);
    opt.run_to_k_max = true;
    if (opt.k_max < opt.k_min) {
        throw ParameterError("--k-max must be >= --k-min");
    }

    struct Column {
        ExtReal beta;
        std::optional<EigenResult<ExtReal>> result;
        std::string error;
    };
    std::vector<ExtReal> inputs = betas;
    const auto columns = parallel_map(
        inputs,
        [&](const ExtReal& b) {
            Column col{b, std::nullopt, {}};
            SolverOptions o = opt;
            o.beta = b;
            try {
                col.result = solve_state(spec, ns.front(), ls.front(), o);
            } catch (const BracketLost& e) {
                col.error = e.what();
            } catch (const PrecisionExhausted& e) {
                col.error = e.what();
            }
            return col;
        },
        opt.workers);

    ordered_json records = ordered_json::array();
    int code = kOk;
    for (const auto& col : columns) {
        ordered_json r = base_record(spec, col.beta, ns.front(), ls.front());
        ordered_json trace = ordered_json::array();
        if (col.result) {
            fill_result(r, *col.result);
            for (const auto& t : col.result->trace) {
                trace.push_back({{"k", t.k}, {"epsilon", number(t.epsilon)}});
            }
            if (col.result->status != ConvergenceStatus::converged) {
                code = kConvergence;
            }
        } else {
            r["status"] = to_string(ConvergenceStatus::max_iterations);
            err << "beta=" << to_string(col.beta) << ": " << col.error << "\n";
            code = kConvergence;
        }
        r["trace"] = std::move(trace);
        records.push_back(std::move(r));
    }
    return {render(records, c), code};
}

inline Output cmd_exact(const RunConfig& c, std::ostream&) {
    const PotentialParams p = physical_params(c);
    const ProblemSpec spec = ProblemSpec::from_physical(p);
    ordered_json records = ordered_json::array();
    for (int n : parse_index_list(c.n_spec)) {
        for (int l : parse_index_list(c.l_spec)) {
            const ExtReal e = exact_energy(p, n, l);
            ordered_json r = base_record(spec, std::nullopt, n, l);
            r["epsilon"] = p.B > 0 ? number(to_reduced_energy(e, p)) : ordered_json(nullptr);
            r["e_physical"] = number(e);
            r["status"] = "exact";
            records.push_back(std::move(r));
        }
    }
    return {render(records, c), kOk};
}

inline Output cmd_oracle(const RunConfig& c, std::ostream&) {
    const PotentialParams p = physical_params(c);
    const ProblemSpec spec = ProblemSpec::from_physical(p);
    ordered_json records = ordered_json::array();
    for (int n : parse_index_list(c.n_spec)) {
        for (int l : parse_index_list(c.l_spec)) {
            GridSpec g = default_grid(p, n, l, c.points > 0 ? c.points : 40000);
            if (!c.r_max.empty()) {
                g.r_max = static_cast<double>(parse_real(c.r_max, "--r-max"));
                g.r_min = g.r_max * 1e-6;
            }
            const ExtReal e = numerov_eigenvalue(p, n, l, g);
            ordered_json r = base_record(spec, std::nullopt, n, l);
            r["epsilon"] = p.B > 0 ? number(to_reduced_energy(e, p)) : ordered_json(nullptr);
            r["e_physical"] = number(e);
            r["status"] = "oracle";
            records.push_back(std::move(r));
        }
    }
    return {render(records, c), kOk};
}

inline Output cmd_wavefunction(const RunConfig& c, std::ostream& err) {
    const auto ns = parse_index_list(c.n_spec);
    const auto ls = parse_index_list(c.l_spec);
    if (ns.size() != 1 || ls.size() != 1) {
        throw ParameterError("wavefunction takes a single (n, l) state");
    }
    const int n = ns.front();
    const int l = ls.front();
    const std::size_t points = c.points > 0 ? static_cast<std::size_t>(c.points) : 400;
    if (points < kMinWavefunctionPoints) {
        throw ParameterError("--points must be at least " + std::to_string(kMinWavefunctionPoints));
    }

    ordered_json rec;
    SampledFunction<ExtReal> wf;
    int code = kOk;
    if (*c.kappa <= 0) {
        const PotentialParams p = physical_params(c);
        const ProblemSpec spec = ProblemSpec::from_physical(p);
        const ClosedForm cf = closed_form(p, n, l);
        const double extent = c.r_max.empty()
                                  ? (2.0 * (n + 1) + 30.0) / static_cast<double>(cf.eps_cf > 0 ? cf.eps_cf : ExtReal(1))
                                  : static_cast<double>(parse_real(c.r_max, "--r-max"));
        std::vector<ExtReal> grid(points);
        for (std::size_t i = 0; i < points; ++i) {
            grid[i] = ExtReal(extent) * ExtReal(static_cast<double>(i + 1)) / ExtReal(static_cast<double>(points));
        }
        wf = exact_wavefunction(p, n, l, grid);
        rec = base_record(spec, std::nullopt, n, l);
        rec["epsilon"] = p.B > 0 ? number(to_reduced_energy(cf.energy, p)) : ordered_json(nullptr);
        rec["e_physical"] = number(cf.energy);
        rec["status"] = "exact";
    } else {
        const ProblemSpec spec = problem_spec(c);
        const SolverOptions opt = solver_options(c);
        const ExtReal beta = opt.beta.value_or(default_beta(spec.kappa));
        EigenResult<ExtReal> res = solve_state(spec, n, l, opt);
        if (res.status != ConvergenceStatus::converged) {
            err << "eigenvalue did not converge; wavefunction uses the last iterate\n";
            code = kConvergence;
        }
        const ProblemSetup<ExtReal> ps = setup(spec.reduced(l), spec.kappa, beta);
        const int k_gen = std::max(res.trace.back().k + 1, n);
        wf = wavefunction(ps, res.epsilon, k_gen, default_u_grid(ps, n, points));
        rec = base_record(spec, beta, n, l);
        fill_result(rec, res);
    }
    rec["nodes"] = count_sign_changes(wf.value);
    if (c.format == "csv") {
        std::ostringstream os;
        os << "r,R\n";
        for (std::size_t i = 0; i < wf.r.size(); ++i) {
            os << to_string(wf.r[i], kOutputDigits) << "," << to_string(wf.value[i], kOutputDigits) << "\n";
        }
        return {os.str(), code};
    }
    ordered_json samples = ordered_json::array();
    for (std::size_t i = 0; i < wf.r.size(); ++i) {
        samples.push_back({{"r", number(wf.r[i])}, {"R", number(wf.value[i])}});
    }
    rec["samples"] = std::move(samples);
    return {rec.dump(2) + "\n", code};
}

inline ordered_json table_json(const tables::TableReport& rep) {
    ordered_json cells = ordered_json::array();
    for (const auto& cell : rep.cells) {
        cells.push_back({{"label", cell.label},
                         {"computed", number(cell.computed)},
                         {"reference", number(cell.reference)},
                         {"abs_delta", number(cell.abs_delta)},
                         {"rel_delta", number(cell.rel_delta)},
                         {"tolerance", cell.tolerance},
                         {"tolerance_kind", tables::kind_name(cell.kind)},
                         {"pass", cell.pass}});
    }
    ordered_json j;
    j["table"] = rep.id;
    j["title"] = rep.title;
    j["pass"] = rep.pass();
    j["failures"] = rep.failures();
    j["cells"] = std::move(cells);
    return j;
}

inline Output cmd_table(const RunConfig& c, std::ostream& err) {
    if (!tables::is_known_table(c.table_id)) {
        throw ParameterError("unknown table " + std::to_string(c.table_id) + " (expected 1-5)");
    }
    const tables::TableReport rep = tables::run_table(c.table_id, c.workers);
    for (const auto& cell : rep.cells) {
        if (!cell.pass) {
            err << "table " << rep.id << " mismatch: " << cell.label << " computed " << to_string(cell.computed)
                << " reference " << to_string(cell.reference) << " |delta| " << to_string(cell.abs_delta, 3) << "\n";
        }
    }
    const int code = rep.pass() ? kOk : kMismatch;
    if (c.format == "csv") {
        std::ostringstream os;
        os << "table,label,computed,reference,abs_delta,rel_delta,tolerance,tolerance_kind,pass\n";
        for (const auto& cell : rep.cells) {
            os << rep.id << ",\"" << cell.label << "\"," << to_string(cell.computed, kOutputDigits) << ","
               << to_string(cell.reference, kOutputDigits) << "," << to_string(cell.abs_delta, 3) << ","
               << to_string(cell.rel_delta, 3) << "," << cell.tolerance << "," << tables::kind_name(cell.kind) << ","
               << (cell.pass ? "true" : "false") << "\n";
        }
        return {os.str(), code};
    }
    return {table_json(rep).dump(2) + "\n", code};
}

/// Rebuilds the configuration that reproduces a solve/converge record.
inline RunConfig config_from_record(const ordered_json& rec) {
    RunConfig c;
    c.command = rec.contains("trace") ? "converge" : "solve";
    c.kappa = rec.at("kappa").get<int>();
    c.reduced = true;
    c.a_tilde = rec.at("a_tilde").dump();
    c.gamma = rec.at("gamma").dump();
    if (!rec.at("beta").is_null()) {
        c.beta = rec.at("beta").dump();
    }
    c.n_spec = std::to_string(rec.at("n").get<int>());
    c.l_spec = std::to_string(rec.at("l").get<int>());
    return c;
}

/// Command line equivalent of a solve/converge configuration.
inline std::vector<std::string> to_args(const RunConfig& c) {
    std::vector<std::string> a = {c.command, "--kappa", std::to_string(*c.kappa)};
    if (c.reduced) {
        a.insert(a.end(), {"--reduced", "--a-tilde", c.a_tilde, "--gamma", c.gamma});
    }
    const std::pair<const char*, const std::string*> physical[] = {
        {"--A", &c.A}, {"--B", &c.B}, {"--C", &c.C}, {"--mass", &c.mass}, {"--hbar", &c.hbar}};
    for (const auto& [flag, value] : physical) {
        if (!value->empty()) {
            a.insert(a.end(), {flag, *value});
        }
    }
    a.insert(a.end(), {"--n", c.n_spec, "--l", c.l_spec});
    if (!c.beta.empty()) {
        a.insert(a.end(), {"--beta", c.beta});
    }
    if (c.format != "json") {
        a.insert(a.end(), {"--format", c.format});
    }
    return a;
}

inline void add_common_options(CLI::App& sub, RunConfig& c) {
    sub.add_option("--kappa", c.kappa, "power of the C r^kappa term (-2..2)");
    sub.add_option("--A", c.A, "A of A/r^2");
    sub.add_option("--B", c.B, "B of -B/r");
    sub.add_option("--C", c.C, "C of C r^kappa");
    sub.add_option("--mass", c.mass, "particle mass (default 1)");
    sub.add_option("--hbar", c.hbar, "reduced Planck constant (default 1)");
    sub.add_flag("--reduced", c.reduced, "take --a-tilde and --gamma instead of physical parameters");
    sub.add_option("--a-tilde", c.a_tilde, "2 m A / hbar^2");
    sub.add_option("--gamma", c.gamma, "reduced strength of the C r^kappa term");
    sub.add_option("--n", c.n_spec, "radial quantum numbers, e.g. 0..2 or 0,2");
    sub.add_option("--l", c.l_spec, "orbital quantum numbers, e.g. 0..2 or 1");
    sub.add_option("--beta", c.beta, "convergence constant (comma list for converge)");
    sub.add_option("--k-min", c.k_min, "first iteration count tracked");
    sub.add_option("--k-max", c.k_max, "last iteration count tracked");
    sub.add_option("--k-step", c.k_step, "iteration count stride");
    sub.add_option("--tol", c.tol, "convergence tolerance in reduced energy");
    sub.add_option("--precision-bits", c.precision_bits, "significand bits (default $AIM_PRECISION_BITS or 192)");
    sub.add_option("--scan-min", c.scan_min, "lower end of the eigenvalue scan");
    sub.add_option("--scan-max", c.scan_max, "upper end of the eigenvalue scan");
    sub.add_option("--scan-step", c.scan_step, "eigenvalue scan step");
    sub.add_option("--format", c.format, "json or csv");
    sub.add_option("--out", c.out, "write output to this path instead of stdout");
    sub.add_option("--points", c.points, "samples (wavefunction) or grid points (oracle)");
    sub.add_option("--r-max", c.r_max, "grid extent (oracle, closed-form wavefunction)");
    sub.add_option("--workers", c.workers, "parallel workers (0 = hardware concurrency)");
}

/// Entry point shared by the executable and the tests. args excludes argv[0].
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bound states of V(r) = A/r^2 - B/r + C r^kappa by the asymptotic iteration method", "aim"};
    app.require_subcommand(1);
    RunConfig c;
    for (const char* name : {"solve", "converge", "exact", "wavefunction", "oracle"}) {
        add_common_options(*app.add_subcommand(name), c);
    }
    CLI::App* table = app.add_subcommand("table", "reproduce a published table (1-5)");
    table->add_option("id", c.table_id, "table number")->required();
    table->add_option("--format", c.format, "json or csv");
    table->add_option("--out", c.out, "write output to this path instead of stdout");
    table->add_option("--precision-bits", c.precision_bits, "significand bits");
    table->add_option("--workers", c.workers, "parallel workers (0 = hardware concurrency)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }
    c.command = app.get_subcommands().front()->get_name();

    Output result;
    try {
        validate_config(c);
        const unsigned bits = c.precision_bits.value_or(precision_from_env());
        PrecisionScope precision(bits);
        if (c.command == "solve") {
            result = cmd_solve(c, err);
        } else if (c.command == "converge") {
            result = cmd_converge(c, err);
        } else if (c.command == "exact") {
            result = cmd_exact(c, err);
        } else if (c.command == "oracle") {
            result = cmd_oracle(c, err);
        } else if (c.command == "wavefunction") {
            result = cmd_wavefunction(c, err);
        } else {
            result = cmd_table(c, err);
        }
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const BracketLost& e) {
        err << "error: " << e.what() << "\n";
        return kConvergence;
    } catch (const PrecisionExhausted& e) {
        err << "error: " << e.what() << "\n";
        return kConvergence;
    }

    if (c.out.empty()) {
        out << result.text;
    } else {
        std::ofstream file(c.out);
        if (!file) {
            err << "error: cannot open " << c.out << " for writing\n";
            return kValidation;
        }
        file << result.text;
    }
    return result.exit_code;
}

}  // namespace aim::cli
