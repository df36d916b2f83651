#include "bfp/corpus.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "bfp/io.hpp"

namespace bfp::corpus {

namespace {

std::string num(double x) { return format_number(x); }

std::string pair_text(const FiniteBipolarSpace& s, IndexPair p) {
    return "(" + s.left[p.left] + "," + s.right[p.right] + ")";
}

std::string pair_list(const FiniteBipolarSpace& s, const std::vector<IndexPair>& pairs) {
    if (pairs.empty()) return "none";
    std::string out;
    for (const auto& p : pairs) out += (out.empty() ? "" : " ") + pair_text(s, p);
    return out;
}

std::string row_list(const FiniteBipolarSpace& s, const ContractionCertificate& c, const std::vector<std::size_t>& rows) {
    std::vector<IndexPair> pairs;
    for (auto k : rows) pairs.push_back(c.rows[k].pair);
    return pair_list(s, pairs);
}

// Union metrics of the non-expansive example on {e1, e2, f1, f2}.
bool is_e(const std::string& x) { return !x.empty() && x[0] == 'e'; }
double theta1(const std::string& x, const std::string& y) { return x == y ? 0.0 : 1.0; }
double theta2(const std::string& x, const std::string& y) {
    if (x == y) return 0.0;
    return is_e(x) != is_e(y) ? 2.0 : 1.0;
}

}  // namespace

FiniteBipolarSpace discrete_space(std::size_t n) {
    FiniteBipolarSpace s;
    for (std::size_t i = 1; i <= n; ++i) {
        s.left.push_back("e" + std::to_string(i));
        s.right.push_back("f" + std::to_string(i));
    }
    s.dist.assign(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i) {
        s.dist[i][i] = 0.0;
        s.overlap.push_back({i, i});
    }
    return s;
}

FiniteBipolarSpace example_pc_q0_space() {
    FiniteBipolarSpace s = discrete_space(5);
    auto& d = s.dist;
    auto set = [&](std::size_t a, std::size_t b, double v) {
        d[a - 1][b - 1] = v;
        d[b - 1][a - 1] = v;
    };
    for (std::size_t i = 0; i < 5; ++i) d[i][i] = 0.0;
    set(1, 2, 4);
    set(2, 3, 4);
    set(1, 3, 3);
    set(3, 4, 3);
    set(2, 5, 5);
    set(3, 5, 5);
    set(1, 4, 2);
    set(1, 5, 1);
    set(2, 4, 7);
    set(4, 5, 8);
    return s;
}

PcTableCase example_pc_table() {
    PcTableCase c;
    c.space = discrete_space(5);
    // e1->e1, e2->e3, e3->e4, e4->e2, e5->e4 and the same rule on f.
    c.map.variance = Variance::Covariant;
    c.map.left_map = {0, 2, 3, 1, 3};
    c.map.right_map = c.map.left_map;
    c.coeffs.tables.push_back(example_pc_q0_space().dist);
    c.coeffs.tables.emplace_back(5, std::vector<double>(5, 1.0));
    c.spec.pi = 0.5;
    c.spec.rho_index = 1;
    c.spec.Q = 1.0;
    c.certificate = verify_pc(c.space, c.map, c.coeffs, c.spec);

    struct Printed {
        std::size_t v, r;
        double lhs, unscaled;
    };
    static constexpr Printed kPrinted[] = {
        {1, 2, 4, 5}, {1, 3, 3, 4}, {1, 4, 5, 3}, {1, 5, 3, 2}, {2, 3, 4, 5},
        {2, 4, 5, 8}, {2, 5, 4, 6}, {3, 4, 8, 4}, {3, 5, 1, 6}, {4, 5, 8, 9},
    };
    for (const auto& p : kPrinted) {
        const auto& row = c.certificate.rows[(p.v - 1) * 5 + (p.r - 1)];
        PcTableRow t{p.v, p.r, p.lhs, p.unscaled, row.lhs, row.unscaled, row.literal_rhs, row.rhs};
        c.table.push_back(t);
        if (t.lhs != t.printed_lhs) c.lhs_discrepancies.push_back({p.v - 1, p.r - 1});
        if (t.unscaled != t.printed_unscaled) c.unscaled_discrepancies.push_back({p.v - 1, p.r - 1});
    }

    c.cycle_run = iterate(c.space, c.map, std::size_t{1}, std::size_t{1});
    c.fixed = all_fixed_points(c.space, c.map);
    c.weakly_picard = check_weakly_picard(c.space, c.map);
    c.uniqueness = uniqueness_check(c.space, c.map, c.certificate);
    return c;
}

NonexpansiveCase example_nonexpansive() {
    NonexpansiveCase c;
    struct Printed {
        const char* x;
        const char* y;
        double d1, d2, i1, i2;
    };
    static constexpr Printed kPrinted[] = {
        {"e1", "e2", 1, 1, 0, 0},
        {"e1", "f1", 1, 2, 0, 0},
        {"e2", "f2", 1, 2, 0, 0},
        {"f1", "f2", 1, 1, 0, 0},
    };
    const std::string image = "e1";
    c.nonexpansive = true;
    c.images_zero = true;
    for (const auto& p : kPrinted) {
        NonexpansiveRow r;
        r.x = p.x;
        r.y = p.y;
        r.printed_d1 = p.d1;
        r.printed_d2 = p.d2;
        r.d1 = theta1(r.x, r.y);
        r.d2 = theta2(r.x, r.y);
        r.image_d1 = theta1(image, image);
        r.image_d2 = theta2(image, image);
        r.holds = r.image_d1 <= r.d1 && r.image_d2 <= r.d2;
        c.nonexpansive = c.nonexpansive && r.holds;
        c.images_zero = c.images_zero && r.image_d1 == 0.0 && r.image_d2 == 0.0;
        c.rows.push_back(r);
    }

    c.theta1_space.left = {"e1", "e2"};
    c.theta1_space.right = {"e1", "f2"};
    c.theta1_space.overlap = {{0, 0}};
    c.theta1_space.dist = {{0.0, 1.0}, {1.0, 1.0}};
    c.theta1_map = {Variance::Covariant, {0, 0}, {0, 0}};

    c.theta2_space.left = {"e1", "e2"};
    c.theta2_space.right = {"f1", "f2"};
    c.theta2_space.dist = {{2.0, 2.0}, {2.0, 2.0}};
    c.theta2_map = {Variance::Covariant, {0, 0}, {0, 0}};

    c.coeffs = CoefficientFamily::constant({0.0, 1.0}, 2, 2);
    c.spec.pi = 0.5;
    c.spec.rho_index = 1;
    c.spec.Q = 1.0;
    c.spec.almost_terms = std::vector<double>{10.0, 10.0};
    c.almost_pc = verify_almost_pc(c.theta1_space, c.theta1_map, c.coeffs, c.spec);
    return c;
}

IntervalCase example_interval_picard() {
    IntervalCase c;
    const double q = 0.0;
    const double w = 1.0;
    c.model.lo = q;
    c.model.hi = w;
    c.model.map = [q, w](double x) { return x < w ? q : (q + w) / 3.0; };

    double x = w;
    for (int k = 0; k < 4; ++k) {
        c.orbit_from_one.push_back(x);
        x = c.model.map(x);
    }
    for (int i = 0; i <= 10; ++i) c.starts.push_back(i / 10.0);
    c.collapses = true;
    for (double g : c.starts) {
        double y = g;
        for (int k = 1; k <= 6; ++k) {
            y = c.model.map(y);
            if (k >= 3 && y != q) c.collapses = false;
        }
    }
    std::vector<double> targets;
    for (int i = 0; i <= 20; ++i) targets.push_back(i / 20.0);
    c.continuity = check_picard_continuity(c.model, c.starts, targets, 8);

    c.value_at_one = c.model.map(w);
    c.discontinuous_at_one = true;
    for (int k = 1; k <= 12; ++k) {
        double s = w - std::pow(10.0, -k);
        c.left_samples.push_back(s);
        c.left_values.push_back(c.model.map(s));
        if (std::abs(c.left_values.back() - c.value_at_one) < 1e-3) c.discontinuous_at_one = false;
    }
    return c;
}

std::string render_pc_table(const PcTableCase& c) {
    const auto& s = c.space;
    std::ostringstream os;
    os << "# example_pc_table\n";
    os << "space: discrete metric on e1..e5 x f1..f5, overlap (ei,fi)\n";
    os << "map: covariant e1->e1 e2->e3 e3->e4 e4->e2 e5->e4, same rule on f\n";
    os << "coefficients: degree 1, q1 = 1, pi = " << num(c.spec.pi) << ", rho = " << c.spec.rho_index
       << ", Q = " << num(c.spec.Q) << "\n";
    os << "columns: pair printed_lhs lhs printed_unscaled unscaled literal_rhs pc_rhs\n";
    for (const auto& r : c.table)
        os << "(" << r.v << "," << r.r << ") " << num(r.printed_lhs) << ' ' << num(r.lhs) << ' '
           << num(r.printed_unscaled) << ' ' << num(r.unscaled) << ' ' << num(r.literal_rhs) << ' ' << num(r.rhs)
           << "\n";
    os << "lhs_discrepancies: " << pair_list(s, c.lhs_discrepancies) << "\n";
    os << "unscaled_discrepancies: " << pair_list(s, c.unscaled_discrepancies) << "\n";
    os << "literal_violations (" << c.certificate.literal_violations.size()
       << "): " << row_list(s, c.certificate, c.certificate.literal_violations) << "\n";
    os << "pc_violations (" << c.certificate.violations.size()
       << "): " << row_list(s, c.certificate, c.certificate.violations) << "\n";
    const auto& sc = c.certificate.side_conditions;
    os << "q0_zero: " << (sc.q0_zero ? "true" : "false");
    if (sc.q0_witness) os << " witness " << pair_text(s, *sc.q0_witness) << " = " << num(sc.q0_witness_value);
    os << "\n";
    os << "q_rho_lower_bound: " << (sc.lower.ok ? "pass" : "fail") << "\n";
    os << "holds: " << (c.certificate.holds ? "true" : "false") << "\n";
    os << "implied_continuity: " << (implied_continuity(c.certificate, sc) ? "true" : "false") << "\n";
    os << "fixed_points:";
    for (const auto& l : fixed_point_labels(s, c.fixed)) os << ' ' << l;
    os << "\n";
    os << "iterate (e2,f2): " << to_string(c.cycle_run.status) << ", cycle";
    for (const auto& l : c.cycle_run.cycle) os << ' ' << l;
    os << " /";
    for (const auto& l : c.cycle_run.cycle_right) os << ' ' << l;
    os << "\n";
    os << "weakly_picard: " << (c.weakly_picard.weakly_picard ? "true" : "false") << ", non-converging starts "
       << c.weakly_picard.offending.size() << "\n";
    os << "uniqueness: " << c.uniqueness.message << "\n";
    return os.str();
}

std::string render_nonexpansive(const NonexpansiveCase& c) {
    std::ostringstream os;
    os << "# example_nonexpansive\n";
    os << "map: every point -> e1\n";
    os << "columns: pair printed_d1 d1 printed_d2 d2 image_d1 image_d2 verdict\n";
    for (const auto& r : c.rows)
        os << "(" << r.x << "," << r.y << ") " << num(r.printed_d1) << ' ' << num(r.d1) << ' ' << num(r.printed_d2)
           << ' ' << num(r.d2) << ' ' << num(r.image_d1) << ' ' << num(r.image_d2) << ' '
           << (r.holds ? "ok" : "violated") << "\n";
    os << "nonexpansive: " << (c.nonexpansive ? "true" : "false") << "\n";
    os << "images_zero: " << (c.images_zero ? "true" : "false") << "\n";
    os << "theta1 model axioms: " << (check_axioms(c.theta1_space).all_ok() ? "pass" : "fail") << "\n";
    os << "theta2 model axioms: " << (check_axioms(c.theta2_space).all_ok() ? "pass" : "fail") << "\n";
    os << "almost_pc (theta1, pi = " << num(c.spec.pi) << ", H = 10): "
       << (c.almost_pc.holds ? "holds" : "violated") << ", min slack ";
    double min_slack = c.almost_pc.rows.empty() ? 0.0 : c.almost_pc.rows[0].slack;
    for (const auto& r : c.almost_pc.rows) min_slack = std::min(min_slack, r.slack);
    os << num(min_slack) << "\n";
    return os.str();
}

std::string render_interval(const IntervalCase& c) {
    std::ostringstream os;
    os << "# example_interval_picard\n";
    os << "map: F x = 0 on [0,1), F 1 = 1/3\n";
    os << "orbit from 1:";
    for (double x : c.orbit_from_one) os << ' ' << num(x);
    os << "\n";
    os << "collapse F^k g = 0 for k >= 3 on " << c.starts.size() << " starts: " << (c.collapses ? "true" : "false")
       << "\n";
    os << "picard_continuous: " << (c.continuity.picard_continuous ? "true" : "false") << " (tested "
       << c.continuity.tested << ", premise " << c.continuity.premise_hits << ", inconclusive "
       << c.continuity.inconclusive.size() << ")\n";
    os << "F(1) = " << num(c.value_at_one) << ", left samples F(1 - 1e-k) for k = 1..12:";
    for (double v : c.left_values) os << ' ' << num(v);
    os << "\n";
    os << "discontinuous_at_1: " << (c.discontinuous_at_one ? "true" : "false") << "\n";
    return os.str();
}

std::map<std::string, std::string> fixture_files() {
    std::map<std::string, std::string> files;
    PcTableCase pc = example_pc_table();
    files["pc_table_space.json"] = io::dump(io::to_json(pc.space));
    files["pc_table_map.json"] = io::dump(io::to_json(pc.map, pc.space));
    files["pc_table_coeffs.json"] = io::dump(io::to_json(io::CoefficientFile{pc.coeffs, pc.spec}));

    FiniteBipolarSpace small = discrete_space(3);
    MappingSpec constant{Variance::Covariant, {0, 0, 0}, {0, 0, 0}};
    ContractionSpec spec;
    spec.pi = 0.5;
    spec.upper_bounds = std::vector<double>{1.0};
    files["constant_space.json"] = io::dump(io::to_json(small));
    files["constant_map.json"] = io::dump(io::to_json(constant, small));
    files["constant_coeffs.json"] =
        io::dump(io::to_json(io::CoefficientFile{CoefficientFamily::constant({0.0, 1.0}, 3, 3), spec}));

    FractionalBVP bvp;
    bvp.order = 2.0;
    set_omega(bvp, "1");
    bvp.sigma = 0.5;
    bvp.grid_n = 201;
    bvp.tol = 1e-10;
    bvp.max_iter = 100;
    files["frac_q2_const.json"] = io::dump(io::to_json(bvp));

    FractionalBVP lin = bvp;
    lin.order = 1.5;
    set_omega(lin, "0.3*g + 1");
    lin.sigma = 0.3;
    files["frac_q15_linear.json"] = io::dump(io::to_json(lin));

    files["example_pc_table.golden"] = render_pc_table(pc);
    files["example_nonexpansive.golden"] = render_nonexpansive(example_nonexpansive());
    files["example_interval_picard.golden"] = render_interval(example_interval_picard());
    return files;
}

void regenerate(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw InputError(dir + ": cannot create directory: " + ec.message());
    for (const auto& [name, contents] : fixture_files())
        io::write_text_file((std::filesystem::path(dir) / name).string(), contents);
}

CheckResult check(const std::string& dir) {
    CheckResult r;
    for (const auto& [name, contents] : fixture_files()) {
        auto path = std::filesystem::path(dir) / name;
        if (!std::filesystem::exists(path)) {
            r.missing.push_back(name);
            continue;
        }
        if (io::read_text_file(path.string()) == contents)
            r.matching.push_back(name);
        else
            r.differing.push_back(name);
    }
    return r;
}

}  // namespace bfp::corpus
