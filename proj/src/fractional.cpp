#include "bfp/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bfp/parallel.hpp"

namespace bfp {

namespace {

// Adds the weights of one row piece spanning nodes a..b (b > a) to `w`.
// `f` gives the kernel value at node k; `mid` is the kernel value at the
// midpoint of a single-interval piece.
void add_piece(std::vector<double>& w, std::size_t a, std::size_t b, double h, std::size_t n,
               const std::vector<double>& kernel_row, double kernel_mid) {
    const std::size_t m = b - a;
    if (m == 0) return;
    if (m == 1) {
        const double c = h / 6.0;
        w[a] += c * kernel_row[a];
        w[b] += c * kernel_row[b];
        const double mid = 4.0 * c * kernel_mid;
        if (a == 0) {
            w[0] += mid * 0.375;
            w[1] += mid * 0.75;
            w[2] += mid * -0.125;
        } else {
            w[n - 3] += mid * -0.125;
            w[n - 2] += mid * 0.75;
            w[n - 1] += mid * 0.375;
        }
        return;
    }
    const std::size_t simpson_end = (m % 2 == 0) ? b : b - 3;
    for (std::size_t k = a; k + 2 <= simpson_end; k += 2) {
        const double c = h / 3.0;
        w[k] += c * kernel_row[k];
        w[k + 1] += 4.0 * c * kernel_row[k + 1];
        w[k + 2] += c * kernel_row[k + 2];
    }
    if (m % 2 == 1) {
        const double c = 3.0 * h / 8.0;
        const std::size_t s = b - 3;
        w[s] += c * kernel_row[s];
        w[s + 1] += 3.0 * c * kernel_row[s + 1];
        w[s + 2] += 3.0 * c * kernel_row[s + 2];
        w[s + 3] += c * kernel_row[s + 3];
    }
}

double radical_inverse(std::size_t index, std::size_t base) {
    double result = 0.0;
    double f = 1.0 / static_cast<double>(base);
    while (index > 0) {
        result += f * static_cast<double>(index % base);
        index /= base;
        f /= static_cast<double>(base);
    }
    return result;
}

}  // namespace

void set_omega(FractionalBVP& bvp, const std::string& source) {
    bvp.omega = expr::parse(source);
    bvp.omega_source = source;
}

void validate(const FractionalBVP& bvp) {
    if (!(bvp.order > 1.0 && bvp.order <= 2.0)) throw InputError("order must lie in (1, 2]");
    if (!(bvp.sigma > 0.0 && bvp.sigma < 1.0)) throw InputError("sigma must lie in (0, 1)");
    if (bvp.grid_n < 3 || bvp.grid_n % 2 == 0) throw InputError("grid_n must be odd and >= 3");
    if (!(bvp.tol > 0.0) || !std::isfinite(bvp.tol)) throw InputError("tol must be positive");
    if (bvp.max_iter < 1) throw InputError("max_iter must be >= 1");
    if (bvp.omega.root < 0) throw InputError("omega is empty");
}

double green_function(double order, double rho, double eta) {
    const double p = order - 1.0;
    const double g = std::tgamma(order);
    const double outer = std::pow(rho * (1.0 - eta), p);
    if (eta <= rho) return (outer - std::pow(rho - eta, p)) / g;
    return outer / g;
}

GreenKernel build_kernel(double order, std::size_t grid_n) {
    if (!(order > 1.0 && order <= 2.0)) throw InputError("order must lie in (1, 2]");
    if (grid_n < 3 || grid_n % 2 == 0) throw InputError("grid_n must be odd and >= 3");

    GreenKernel k;
    k.order = order;
    k.gamma_q = std::tgamma(order);
    const std::size_t n = grid_n;
    const double h = 1.0 / static_cast<double>(n - 1);
    k.nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i) k.nodes[i] = static_cast<double>(i) * h;
    k.nodes[n - 1] = 1.0;
    k.matrix.assign(n, std::vector<double>(n, 0.0));
    k.weights.assign(n, std::vector<double>(n, 0.0));

    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double rho = k.nodes[i];
            auto& row = k.matrix[i];
            for (std::size_t j = 0; j < n; ++j) row[j] = green_function(order, rho, k.nodes[j]);
            if (i == 0 || i == n - 1) {
                std::fill(row.begin(), row.end(), 0.0);
                continue;
            }
            const double left_mid = green_function(order, rho, 0.5 * h);
            const double right_mid = green_function(order, rho, 1.0 - 0.5 * h);
            add_piece(k.weights[i], 0, i, h, n, row, left_mid);
            add_piece(k.weights[i], i, n - 1, h, n, row, right_mid);
        }
    }, 8);
    return k;
}

double GridFunction::sup_norm() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double sup_distance(const GridFunction& a, const GridFunction& b) {
    if (a.values.size() != b.values.size()) throw InputError("grid functions have different lengths");
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

double condition2_audit(const GreenKernel& kernel) {
    double best = 0.0;
    for (const auto& row : kernel.weights) {
        double s = 0.0;
        for (double w : row) s += w;
        best = std::max(best, s);
    }
    return best;
}

GridFunction apply_operator(const GreenKernel& kernel, const expr::Ast& omega, const GridFunction& g) {
    const std::size_t n = kernel.nodes.size();
    if (g.values.size() != n)
        throw InputError("grid function has " + std::to_string(g.values.size()) + " values, grid has " +
                         std::to_string(n));
    std::vector<double> phi(n);
    for (std::size_t j = 0; j < n; ++j) {
        try {
            phi[j] = expr::eval(omega, kernel.nodes[j], g.values[j]);
        } catch (const expr::DomainError& e) {
            throw expr::DomainError(e.offset(), std::string(e.what()) + " (grid node " + std::to_string(j) +
                                                    ", rho = " + format_number(kernel.nodes[j]) + ")");
        }
    }
    GridFunction out;
    out.values.assign(n, 0.0);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            if (i == 0 || i == n - 1) continue;
            const auto& w = kernel.weights[i];
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += w[j] * phi[j];
            out.values[i] = s;
        }
    }, 32);
    return out;
}

LipschitzReport lipschitz_audit(const expr::Ast& omega, double sigma, std::size_t samples, double bound) {
    if (samples < 1) throw InputError("samples must be >= 1");
    if (!(bound > 0.0)) throw InputError("bound must be positive");
    LipschitzReport report;
    for (std::size_t s = 1; s <= samples; ++s) {
        const double rho = radical_inverse(s, 2);
        const double e = -bound + 2.0 * bound * radical_inverse(s, 3);
        const double f = -bound + 2.0 * bound * radical_inverse(s, 5);
        if (std::abs(e - f) < 1e-9 * bound) {
            ++report.skipped;
            continue;
        }
        double ratio = 0.0;
        try {
            ratio = std::abs(expr::eval(omega, rho, e) - expr::eval(omega, rho, f)) / std::abs(e - f);
        } catch (const expr::DomainError&) {
            ++report.skipped;
            continue;
        }
        ++report.evaluated;
        if (!report.witness || ratio > report.max_ratio) {
            report.max_ratio = ratio;
            report.witness = std::vector<double>{rho, e, f};
        }
    }
    report.passes = report.max_ratio <= sigma * (1.0 + 1e-9);
    return report;
}

SolveReport solve(const FractionalBVP& bvp) {
    validate(bvp);
    return solve(bvp, build_kernel(bvp.order, bvp.grid_n));
}

SolveReport solve(const FractionalBVP& bvp, const GreenKernel& kernel) {
    validate(bvp);
    if (kernel.nodes.size() != bvp.grid_n || kernel.order != bvp.order)
        throw InputError("kernel does not match the problem's order and grid");

    SolveReport report;
    report.nodes = kernel.nodes;
    report.condition2_value = condition2_audit(kernel);
    report.stop_threshold = bvp.tol * (1.0 - bvp.sigma) / bvp.sigma;

    GridFunction g;
    g.values.assign(bvp.grid_n, 0.0);
    std::size_t growth = 0;
    while (report.iterations < bvp.max_iter) {
        GridFunction next = apply_operator(kernel, bvp.omega, g);
        ++report.iterations;
        const double d = sup_distance(next, g);
        if (!std::isfinite(d))
            throw DivergenceError("iterates became non-finite after " + std::to_string(report.iterations) +
                                      " steps",
                                  report.successive_dists);
        if (!report.successive_dists.empty()) {
            const double prev = report.successive_dists.back();
            if (prev > 0.0) report.contraction_ratios.push_back(d / prev);
            growth = d > prev ? growth + 1 : 0;
        }
        report.successive_dists.push_back(d);
        g = std::move(next);
        if (growth >= 5) {
            std::ostringstream os;
            os << "successive distance grew for 5 consecutive steps (last " << format_number(d) << " after "
               << report.iterations << " steps)";
            throw DivergenceError(os.str(), report.successive_dists);
        }
        if (d <= report.stop_threshold) {
            report.converged = true;
            break;
        }
    }
    report.residual = sup_distance(g, apply_operator(kernel, bvp.omega, g));
    report.solution = std::move(g);
    return report;
}

std::string format_solution(const SolveReport& report) {
    std::string out;
    for (std::size_t i = 0; i < report.nodes.size(); ++i)
        out += format_number(report.nodes[i]) + ' ' + format_number(report.solution.values[i]) + '\n';
    return out;
}

}  // namespace bfp
