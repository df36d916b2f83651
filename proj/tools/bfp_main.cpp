#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bfp/contraction.hpp"
#include "bfp/corpus.hpp"
#include "bfp/expr.hpp"
#include "bfp/fractional.hpp"
#include "bfp/io.hpp"
#include "bfp/picard.hpp"
#include "bfp/space.hpp"

namespace {

using bfp::io::Json;

enum Exit : int {
    kOk = 0,
    kViolated = 1,
    kInputError = 2,
    kCycle = 3,
    kMaxIter = 4,
    kDivergence = 5,
    kAuditFailed = 6,
    kInternal = 10,
};

struct Common {
    std::string format = "text";
    std::string output;
};

void emit(const Common& common, const std::string& text) {
    if (common.output.empty()) {
        std::cout << text;
        std::cout.flush();
    } else {
        bfp::io::write_text_file(common.output, text);
    }
}

bool structured(const Common& c) { return c.format == "structured"; }

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

std::string label_pair(const bfp::FiniteBipolarSpace& s, bfp::IndexPair p) {
    return "(" + s.left[p.left] + "," + s.right[p.right] + ")";
}

Json pair_json(const bfp::FiniteBipolarSpace& s, bfp::IndexPair p) { return Json::array({s.left[p.left], s.right[p.right]}); }

Json bound_json(const bfp::FiniteBipolarSpace& s, const bfp::BoundCheck& b) {
    Json j;
    j["ok"] = b.ok;
    j["bound"] = b.bound;
    if (b.witness) {
        j["witness"] = pair_json(s, *b.witness);
        j["value"] = b.value;
    }
    return j;
}

Json side_json(const bfp::FiniteBipolarSpace& s, const bfp::SideConditionReport& r) {
    Json j;
    j["q0_zero"] = r.q0_zero;
    if (r.q0_witness) {
        j["q0_witness"] = pair_json(s, *r.q0_witness);
        j["q0_witness_value"] = r.q0_witness_value;
    }
    j["lower"] = bound_json(s, r.lower);
    if (r.upper) {
        Json u = Json::array();
        for (const auto& b : *r.upper) u.push_back(bound_json(s, b));
        j["upper"] = u;
    }
    j["passes"] = r.passes();
    return j;
}

std::string side_text(const bfp::FiniteBipolarSpace& s, const bfp::SideConditionReport& r, std::size_t rho) {
    std::ostringstream os;
    os << "q0 == 0: " << (r.q0_zero ? "yes" : "no");
    if (r.q0_witness) os << " (" << label_pair(s, *r.q0_witness) << " = " << bfp::format_number(r.q0_witness_value) << ")";
    os << "\n";
    os << "q" << rho << " >= Q: " << (r.lower.ok ? "pass" : "fail");
    if (r.lower.witness)
        os << " (" << label_pair(s, *r.lower.witness) << " = " << bfp::format_number(r.lower.value) << " < "
           << bfp::format_number(r.lower.bound) << ")";
    os << "\n";
    if (r.upper)
        for (std::size_t v = 0; v < r.upper->size(); ++v) {
            const auto& b = (*r.upper)[v];
            os << "q" << v + 1 << " <= W" << v + 1 << ": " << (b.ok ? "pass" : "fail");
            if (b.witness)
                os << " (" << label_pair(s, *b.witness) << " = " << bfp::format_number(b.value) << ")";
            os << "\n";
        }
    return os.str();
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string space, map, coeffs;
    bool almost = false;
    double tolerance = bfp::kDefaultTolerance;
};

int cmd_verify(const VerifyArgs& a, const Common& common) {
    auto space = bfp::io::load_space(a.space);
    auto map = bfp::io::load_map(a.map, space);
    auto file = bfp::io::load_coefficients(a.coeffs, space);
    auto cert = a.almost ? bfp::verify_almost_pc(space, map, file.coeffs, file.spec, a.tolerance)
                         : bfp::verify_pc(space, map, file.coeffs, file.spec, a.tolerance);

    if (structured(common)) {
        Json doc;
        doc["command"] = "verify";
        doc["inputs"] = {{"space", bfp::io::to_json(space)},
                         {"map", bfp::io::to_json(map, space)},
                         {"coefficients", bfp::io::to_json(file)}};
        doc["kind"] = a.almost ? "almost-polynomial" : "polynomial";
        doc["tolerance"] = a.tolerance;
        Json rows = Json::array();
        for (const auto& r : cert.rows)
            rows.push_back({{"pair", pair_json(space, r.pair)},
                            {"image", pair_json(space, r.image)},
                            {"lhs", r.lhs},
                            {"rhs", r.rhs},
                            {"slack", r.slack},
                            {"unscaled", r.unscaled},
                            {"literal_rhs", r.literal_rhs},
                            {"literal_slack", r.literal_slack}});
        doc["rows"] = rows;
        Json viol = Json::array();
        for (auto k : cert.violations) viol.push_back(pair_json(space, cert.rows[k].pair));
        doc["violations"] = viol;
        Json lit = Json::array();
        for (auto k : cert.literal_violations) lit.push_back(pair_json(space, cert.rows[k].pair));
        doc["literal_violations"] = lit;
        doc["side_conditions"] = side_json(space, cert.side_conditions);
        doc["implied_continuity"] = bfp::implied_continuity(cert, cert.side_conditions);
        doc["holds"] = cert.holds;
        emit(common, bfp::io::dump(doc));
    } else {
        std::ostringstream os;
        os << (a.almost ? "almost polynomial contraction" : "polynomial contraction") << ", pi = "
           << bfp::format_number(file.spec.pi) << "\n";
        os << pad("pair", 16) << pad("lhs", 26) << pad("rhs", 26) << pad("slack", 26) << "verdict\n";
        for (const auto& r : cert.rows)
            os << pad(label_pair(space, r.pair), 16) << pad(bfp::format_number(r.lhs), 26)
               << pad(bfp::format_number(r.rhs), 26) << pad(bfp::format_number(r.slack), 26)
               << (r.slack < -a.tolerance ? "VIOLATED" : "ok") << "\n";
        os << side_text(space, cert.side_conditions, file.spec.rho_index);
        os << "violations: " << cert.violations.size() << " of " << cert.rows.size() << "\n";
        os << "literal reading (pi on q0 only) violations: " << cert.literal_violations.size() << "\n";
        os << "implied continuity: " << (bfp::implied_continuity(cert, cert.side_conditions) ? "yes" : "no") << "\n";
        os << "result: " << (cert.holds ? "HOLDS" : "VIOLATED") << "\n";
        emit(common, os.str());
    }
    return cert.holds ? kOk : kViolated;
}

// ---------------------------------------------------------------------------

struct IterateArgs {
    std::string space, map, coeffs, start_left, start_right;
    long long max_iter = 10000;
    double tol = 1e-12;
};

int cmd_iterate(const IterateArgs& a, const Common& common) {
    auto space = bfp::io::load_space(a.space);
    auto map = bfp::io::load_map(a.map, space);
    if (a.max_iter < 1) throw bfp::InputError("--max-iter must be >= 1");
    const bool co = map.variance == bfp::Variance::Covariant;
    if (co && a.start_right.empty()) throw bfp::InputError("--start-right is required for covariant maps");

    bfp::IterationConfig config;
    config.max_iter = static_cast<std::size_t>(a.max_iter);
    config.tol = a.tol;
    std::size_t g0 = space.left_index(a.start_left);
    std::size_t h0 = co ? space.right_index(a.start_right) : 0;
    std::optional<bfp::io::CoefficientFile> file;
    if (!a.coeffs.empty()) {
        file = bfp::io::load_coefficients(a.coeffs, space);
        bfp::ErrorBoundParams params;
        params.M = bfp::compute_M(space, map, file->coeffs, file->spec, g0, h0);
        params.pi = file->spec.pi;
        params.rho_index = file->spec.rho_index;
        params.mode = map.variance;
        config.bounds = params;
    }
    auto out = bfp::iterate(space, map, g0, h0, config);

    if (structured(common)) {
        Json doc;
        doc["command"] = "iterate";
        Json inputs = {{"space", bfp::io::to_json(space)}, {"map", bfp::io::to_json(map, space)}};
        if (file) inputs["coefficients"] = bfp::io::to_json(*file);
        doc["inputs"] = inputs;
        doc["start"] = {{"left", a.start_left}, {"right", co ? a.start_right : space.right[out.trace.h[0]]}};
        doc["status"] = bfp::to_string(out.status);
        if (config.bounds) doc["M"] = config.bounds->M;
        Json trace = Json::array();
        for (std::size_t k = 0; k < out.trace.g.size(); ++k) {
            Json rec = {{"k", k},
                        {"g", space.left[out.trace.g[k]]},
                        {"h", space.right[out.trace.h[k]]},
                        {"dist", out.observed_distances[k]}};
            if (k < out.bounds.size()) rec["bound"] = out.bounds[k];
            trace.push_back(rec);
        }
        doc["trace"] = trace;
        if (out.fixed_point) doc["fixed_point"] = {*out.fixed_point, *out.fixed_point_right};
        if (!out.cycle.empty()) doc["cycle"] = out.cycle;
        if (!out.cycle_right.empty()) doc["cycle_right"] = out.cycle_right;
        emit(common, bfp::io::dump(doc));
    } else {
        std::string text = bfp::format_trace(space, out);
        text += "# status: " + std::string(bfp::to_string(out.status));
        if (out.fixed_point) text += ", fixed point " + *out.fixed_point + " / " + *out.fixed_point_right;
        if (!out.cycle.empty()) {
            text += ", cycle";
            for (const auto& l : out.cycle) text += " " + l;
            if (!out.cycle_right.empty()) {
                text += " /";
                for (const auto& l : out.cycle_right) text += " " + l;
            }
        }
        text += "\n";
        emit(common, text);
    }
    switch (out.status) {
        case bfp::IterationStatus::Converged: return kOk;
        case bfp::IterationStatus::CycleDetected: return kCycle;
        case bfp::IterationStatus::MaxIterations: return kMaxIter;
    }
    return kInternal;
}

// ---------------------------------------------------------------------------

struct SolveArgs {
    std::string config, omega, solution_out;
    std::optional<double> order, sigma, tol;
    std::optional<long long> grid_n, max_iter;
    long long samples = 4096;
    double bound = 10.0;
    bool force = false;
};

int cmd_solve(const SolveArgs& a, const Common& common) {
    bfp::FractionalBVP bvp;
    if (!a.config.empty()) bvp = bfp::io::load_bvp(a.config);
    if (!a.omega.empty()) bfp::set_omega(bvp, a.omega);
    if (a.order) bvp.order = *a.order;
    if (a.sigma) bvp.sigma = *a.sigma;
    if (a.tol) bvp.tol = *a.tol;
    if (a.grid_n) {
        if (*a.grid_n < 0) throw bfp::InputError("--grid-n must be positive");
        bvp.grid_n = static_cast<std::size_t>(*a.grid_n);
    }
    if (a.max_iter) {
        if (*a.max_iter < 1) throw bfp::InputError("--max-iter must be >= 1");
        bvp.max_iter = static_cast<std::size_t>(*a.max_iter);
    }
    if (bvp.omega.root < 0) throw bfp::InputError("no nonlinearity given (use --omega or a config file)");
    if (a.samples < 1) throw bfp::InputError("--samples must be >= 1");
    bfp::validate(bvp);

    auto kernel = bfp::build_kernel(bvp.order, bvp.grid_n);
    const double cond2 = bfp::condition2_audit(kernel);
    auto audit = bfp::lipschitz_audit(bvp.omega, bvp.sigma, static_cast<std::size_t>(a.samples), a.bound);

    Json doc;
    doc["command"] = "solve-frac";
    doc["inputs"] = {{"bvp", bfp::io::to_json(bvp)}};
    doc["condition1"] = {{"max_ratio", audit.max_ratio},
                         {"sigma", bvp.sigma},
                         {"passes", audit.passes},
                         {"evaluated", audit.evaluated},
                         {"skipped", audit.skipped}};
    if (audit.witness) doc["condition1"]["witness"] = *audit.witness;
    doc["condition2"] = {{"value", cond2}, {"passes", cond2 <= 1.0}};

    std::ostringstream os;
    os << "condition (1): max |w(r,e)-w(r,f)|/|e-f| = " << bfp::format_number(audit.max_ratio) << " vs sigma "
       << bfp::format_number(bvp.sigma) << " -> " << (audit.passes ? "pass" : "FAIL") << "\n";
    if (!audit.passes && audit.witness)
        os << "  witness rho = " << bfp::format_number((*audit.witness)[0]) << ", e = "
           << bfp::format_number((*audit.witness)[1]) << ", f = " << bfp::format_number((*audit.witness)[2]) << "\n";
    os << "condition (2): sup integral A = " << bfp::format_number(cond2) << " -> " << (cond2 <= 1.0 ? "pass" : "FAIL")
       << "\n";

    const bool audits_ok = audit.passes && cond2 <= 1.0;
    if (!audits_ok && !a.force) {
        std::cerr << "warning: audit failed; rerun with --force to solve anyway\n";
        doc["status"] = "audit-failed";
        emit(common, structured(common) ? bfp::io::dump(doc) : os.str());
        return kAuditFailed;
    }
    if (!audits_ok) std::cerr << "warning: audit failed; continuing because of --force\n";

    bfp::SolveReport report;
    try {
        report = bfp::solve(bvp, kernel);
    } catch (const bfp::DivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        doc["status"] = "diverged";
        doc["successive_dists"] = e.successive_dists();
        os << "diverged: " << e.what() << "\n";
        for (std::size_t k = 0; k < e.successive_dists().size(); ++k)
            os << "  " << k + 1 << ' ' << bfp::format_number(e.successive_dists()[k]) << "\n";
        emit(common, structured(common) ? bfp::io::dump(doc) : os.str());
        return kDivergence;
    }
    if (!a.solution_out.empty()) bfp::io::write_text_file(a.solution_out, bfp::format_solution(report));

    const bool ok = report.converged && report.residual <= bvp.tol;
    doc["status"] = ok ? "converged" : "max-iterations";
    doc["iterations"] = report.iterations;
    doc["residual"] = report.residual;
    doc["stop_threshold"] = report.stop_threshold;
    doc["successive_dists"] = report.successive_dists;
    doc["contraction_ratios"] = report.contraction_ratios;
    Json sol = Json::array();
    for (std::size_t i = 0; i < report.nodes.size(); ++i)
        sol.push_back(Json::array({report.nodes[i], report.solution.values[i]}));
    doc["solution"] = sol;

    os << "iterations: " << report.iterations << "\n";
    os << "residual: " << bfp::format_number(report.residual) << "\n";
    os << "max contraction ratio: ";
    double max_ratio = 0.0;
    for (double r : report.contraction_ratios) max_ratio = std::max(max_ratio, r);
    os << (report.contraction_ratios.empty() ? std::string("-") : bfp::format_number(max_ratio)) << "\n";
    os << "sup |g|: " << bfp::format_number(report.solution.sup_norm()) << "\n";
    os << "status: " << (ok ? "converged" : "not converged") << "\n";
    emit(common, structured(common) ? bfp::io::dump(doc) : os.str());
    return ok ? kOk : kMaxIter;
}

// ---------------------------------------------------------------------------

int cmd_corpus(const std::string& action, const std::string& dir, const std::string& which, const Common& common) {
    if (action == "regen") {
        bfp::corpus::regenerate(dir);
        emit(common, "wrote " + std::to_string(bfp::corpus::fixture_files().size()) + " files to " + dir + "\n");
        return kOk;
    }
    if (action == "check") {
        auto r = bfp::corpus::check(dir);
        std::string text;
        for (const auto& n : r.matching) text += "ok       " + n + "\n";
        for (const auto& n : r.differing) text += "DIFFERS  " + n + "\n";
        for (const auto& n : r.missing) text += "MISSING  " + n + "\n";
        emit(common, text);
        return r.ok() ? kOk : kViolated;
    }
    auto files = bfp::corpus::fixture_files();
    if (which.empty()) {
        std::string text;
        for (const auto& [name, contents] : files)
            if (name.ends_with(".golden")) text += contents;
        emit(common, text);
        return kOk;
    }
    auto it = files.find(which);
    if (it == files.end()) throw bfp::InputError("unknown corpus file '" + which + "'");
    emit(common, it->second);
    return kOk;
}

// ---------------------------------------------------------------------------

struct ReportArgs {
    std::string space, map, coeffs;
    long long horizon = 64;
};

int cmd_report(const ReportArgs& a, const Common& common) {
    auto space = bfp::io::load_space(a.space);
    auto axioms = bfp::check_axioms(space);
    std::optional<bfp::MappingSpec> map;
    std::optional<bfp::io::CoefficientFile> file;
    if (!a.map.empty()) map = bfp::io::load_map(a.map, space);
    if (!a.coeffs.empty()) {
        if (!map) throw bfp::InputError("--coeffs requires --map");
        file = bfp::io::load_coefficients(a.coeffs, space);
    }
    if (a.horizon < 1) throw bfp::InputError("--horizon must be >= 1");

    Json doc;
    doc["command"] = "report";
    Json inputs = {{"space", bfp::io::to_json(space)}};
    if (map) inputs["map"] = bfp::io::to_json(*map, space);
    if (file) inputs["coefficients"] = bfp::io::to_json(*file);
    doc["inputs"] = inputs;

    std::ostringstream os;
    Json ax = {{"axiom1", axioms.axiom1_ok}, {"axiom2", axioms.axiom2_ok}, {"axiom3", axioms.axiom3_ok}};
    Json viol = Json::array();
    for (const auto& v : axioms.violations)
        viol.push_back({{"axiom", static_cast<int>(v.axiom)}, {"witness", v.witness}, {"lhs", v.lhs}, {"rhs", v.rhs}});
    ax["violations"] = viol;
    doc["axioms"] = ax;
    os << "axioms: 1 " << (axioms.axiom1_ok ? "ok" : "FAIL") << ", 2 " << (axioms.axiom2_ok ? "ok" : "FAIL") << ", 3 "
       << (axioms.axiom3_ok ? "ok" : "FAIL") << "\n";
    for (const auto& v : axioms.violations) {
        os << "  axiom " << static_cast<int>(v.axiom) << " witness";
        for (const auto& w : v.witness) os << ' ' << w;
        os << ": " << bfp::format_number(v.lhs) << " vs " << bfp::format_number(v.rhs) << "\n";
    }

    if (map) {
        auto fixed = bfp::all_fixed_points(space, *map);
        auto labels = bfp::fixed_point_labels(space, fixed);
        auto wp = bfp::check_weakly_picard(space, *map);
        doc["fixed_points"] = labels;
        Json off = Json::array();
        for (const auto& c : wp.offending) off.push_back({{"g", c.g}, {"h", c.h}, {"status", c.detail}});
        doc["weakly_picard"] = {{"value", wp.weakly_picard}, {"offending", off}};
        os << "fixed points:";
        for (const auto& l : labels) os << ' ' << l;
        os << (labels.empty() ? " none\n" : "\n");
        os << "weakly Picard: " << (wp.weakly_picard ? "yes" : "no") << " (" << wp.offending.size()
           << " non-converging starts)\n";
        if (map->variance == bfp::Variance::Covariant) {
            auto pc = bfp::check_picard_continuity(space, *map, static_cast<std::size_t>(a.horizon));
            doc["picard_continuous"] = pc.picard_continuous;
            os << "Picard-continuous: " << (pc.picard_continuous ? "yes" : "no") << "\n";
        }
        if (file) {
            auto cert = bfp::verify_pc(space, *map, file->coeffs, file->spec);
            auto uq = bfp::uniqueness_check(space, *map, cert);
            doc["certificate"] = {{"holds", cert.holds},
                                  {"violations", cert.violations.size()},
                                  {"literal_violations", cert.literal_violations.size()},
                                  {"side_conditions", side_json(space, cert.side_conditions)},
                                  {"implied_continuity", bfp::implied_continuity(cert, cert.side_conditions)}};
            doc["uniqueness"] = {{"claim_applies", uq.claim_applies},
                                 {"consistent", uq.consistent},
                                 {"message", uq.message}};
            os << "polynomial contraction: " << (cert.holds ? "holds" : "violated") << " (" << cert.violations.size()
               << " violating pairs)\n";
            os << side_text(space, cert.side_conditions, file->spec.rho_index);
            os << "uniqueness: " << uq.message << "\n";
        }
    }
    emit(common, structured(common) ? bfp::io::dump(doc) : os.str());
    return kOk;
}

void add_common(CLI::App* cmd, Common& common) {
    cmd->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "structured"}));
    cmd->add_option("-o,--output", common.output, "Write the report to a file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fixed points in finite bipolar metric spaces and fractional BVPs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "bfp 1.0.0");

    Common common;

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Certify a polynomial contraction on a finite space");
    verify->add_option("--space", va.space, "Space file")->required();
    verify->add_option("--map", va.map, "Map file")->required();
    verify->add_option("--coeffs", va.coeffs, "Coefficient file")->required();
    verify->add_flag("--almost", va.almost, "Check the almost polynomial contraction (needs H)");
    verify->add_option("--tolerance", va.tolerance, "Absolute slack tolerance");
    add_common(verify, common);

    IterateArgs ia;
    auto* iter = app.add_subcommand("iterate", "Run the Picard bisequence from a start pair");
    iter->add_option("--space", ia.space, "Space file")->required();
    iter->add_option("--map", ia.map, "Map file")->required();
    iter->add_option("--start-left", ia.start_left, "Left start label")->required();
    iter->add_option("--start-right", ia.start_right, "Right start label (covariant maps)");
    iter->add_option("--coeffs", ia.coeffs, "Coefficient file; enables a-priori bounds");
    iter->add_option("--max-iter", ia.max_iter, "Iteration cap");
    iter->add_option("--tol", ia.tol, "Distance tolerance");
    add_common(iter, common);

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve-frac", "Solve the fractional boundary value problem");
    solve->add_option("--config", sa.config, "BVP config file");
    solve->add_option("--omega", sa.omega, "Nonlinearity omega(rho, g)");
    solve->add_option("--order", sa.order, "Order q in (1, 2]");
    solve->add_option("--sigma", sa.sigma, "Declared Lipschitz constant of omega");
    solve->add_option("--grid-n", sa.grid_n, "Number of grid nodes (odd)");
    solve->add_option("--tol", sa.tol, "Residual tolerance");
    solve->add_option("--max-iter", sa.max_iter, "Iteration cap");
    solve->add_option("--samples", sa.samples, "Lipschitz audit sample count");
    solve->add_option("--bound", sa.bound, "Lipschitz audit range for g");
    solve->add_option("--solution", sa.solution_out, "Write the solution as 'rho g' lines");
    solve->add_flag("--force", sa.force, "Solve even when an audit fails");
    add_common(solve, common);

    std::string corpus_action, corpus_dir = "fixtures/v1", corpus_file;
    auto* corpus = app.add_subcommand("corpus", "Regenerate, check or show the worked-example fixtures");
    corpus->add_option("action", corpus_action, "regen | check | show")
        ->required()
        ->check(CLI::IsMember({"regen", "check", "show"}));
    corpus->add_option("--dir", corpus_dir, "Fixture directory");
    corpus->add_option("--file", corpus_file, "File to show (default: all golden reports)");
    add_common(corpus, common);

    ReportArgs ra;
    auto* report = app.add_subcommand("report", "Axioms, fixed points and contraction summary for one instance");
    report->add_option("--space", ra.space, "Space file")->required();
    report->add_option("--map", ra.map, "Map file");
    report->add_option("--coeffs", ra.coeffs, "Coefficient file");
    report->add_option("--horizon", ra.horizon, "Orbit horizon for the Picard-continuity check");
    add_common(report, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*verify) return cmd_verify(va, common);
        if (*iter) return cmd_iterate(ia, common);
        if (*solve) return cmd_solve(sa, common);
        if (*corpus) return cmd_corpus(corpus_action, corpus_dir, corpus_file, common);
        if (*report) return cmd_report(ra, common);
    } catch (const bfp::expr::ParseError& e) {
        std::cerr << "error: omega: " << e.what() << "\n";
        return kInputError;
    } catch (const bfp::expr::DomainError& e) {
        std::cerr << "error: omega: " << e.what() << "\n";
        return kInputError;
    } catch (const bfp::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}
