#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bfp/common.hpp"
#include "bfp/expr.hpp"

namespace bfp {

/// Two-point fractional boundary value problem
///   D^q g(rho) + omega(rho, g(rho)) = 0 on [0, 1], g(0) = g(1) = 0,
/// solved as the fixed point of g -> integral A(rho, eta) omega(eta, g(eta)).
struct FractionalBVP {
    double order = 2.0;          // q in (1, 2]
    std::string omega_source;    // the expression text, kept for exports
    expr::Ast omega;
    double sigma = 0.5;          // declared Lipschitz constant of omega in g
    std::size_t grid_n = 201;    // odd, >= 3
    double tol = 1e-10;
    std::size_t max_iter = 1000;
};

/// Parses `source` into `bvp.omega` and stores the text.
void set_omega(FractionalBVP& bvp, const std::string& source);

void validate(const FractionalBVP& bvp);

/// Green's function on a uniform grid together with the quadrature weights
/// used to apply it: (F phi)_i = sum_j weights[i][j] * phi_j.
struct GreenKernel {
    double order = 2.0;
    double gamma_q = 1.0;
    std::vector<double> nodes;
    std::vector<std::vector<double>> matrix;   // A(nodes[i], nodes[j])
    std::vector<std::vector<double>> weights;  // quadrature weights per row
};

/// A(rho, eta) = ([rho(1-eta)]^(q-1) - (rho-eta)^(q-1)) / Gamma(q) for eta <= rho,
///               [rho(1-eta)]^(q-1) / Gamma(q)                  for rho <= eta.
double green_function(double order, double rho, double eta);

/// Builds the kernel on grid_n uniform nodes.
///
/// Each row is integrated separately on [0, rho_i] and [rho_i, 1] so the kink
/// at eta = rho_i is always a panel boundary. A piece with an even number of
/// intervals uses composite Simpson; an odd count >= 3 ends with one
/// Simpson 3/8 panel; a single interval uses Simpson with the midpoint value
/// of phi interpolated quadratically from the three nearest nodes (A itself
/// is evaluated exactly there). Throws InputError for order outside (1, 2]
/// or an even / too small grid.
GreenKernel build_kernel(double order, std::size_t grid_n);

struct GridFunction {
    std::vector<double> values;

    double sup_norm() const;
};

double sup_distance(const GridFunction& a, const GridFunction& b);

/// sup over grid rows of the quadrature of the row, i.e. max_i sum_j weights[i][j].
double condition2_audit(const GreenKernel& kernel);

/// Quadrature of A(rho_i, .) * omega(., g(.)) at every node. The first and
/// last outputs are exactly 0. Throws expr::DomainError naming the node when
/// omega cannot be evaluated there.
GridFunction apply_operator(const GreenKernel& kernel, const expr::Ast& omega, const GridFunction& g);

struct LipschitzReport {
    double max_ratio = 0.0;
    bool passes = true;
    std::size_t evaluated = 0;
    std::size_t skipped = 0;  // domain errors or e == f
    std::optional<std::vector<double>> witness;  // (rho, e, f) of the max ratio
};

/// Samples (rho, e, f) from a Halton sweep (bases 2, 3, 5) over
/// [0, 1] x [-bound, bound]^2 and records max |omega(rho,e) - omega(rho,f)| / |e - f|.
/// Pairs with |e - f| < 1e-9 * bound and samples where omega raises a domain
/// error are skipped. passes is max_ratio <= sigma * (1 + 1e-9).
LipschitzReport lipschitz_audit(const expr::Ast& omega, double sigma, std::size_t samples, double bound = 10.0);

struct SolveReport {
    GridFunction solution;
    std::vector<double> nodes;
    std::size_t iterations = 0;  // operator applications in the Picard loop
    bool converged = false;      // the stopping rule fired before max_iter
    std::vector<double> successive_dists;
    std::vector<double> contraction_ratios;
    double residual = 0.0;       // |g - F g|_inf at the returned iterate
    double condition2_value = 0.0;
    double stop_threshold = 0.0; // tol * (1 - sigma) / sigma
};

/// Raised when the successive distance grows for 5 consecutive steps.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, std::vector<double> successive_dists)
        : std::runtime_error(what), successive_dists_(std::move(successive_dists)) {}

    const std::vector<double>& successive_dists() const { return successive_dists_; }

private:
    std::vector<double> successive_dists_;
};

/// Picard iteration from g_0 = 0 until |g_{k+1} - g_k| <= tol (1 - sigma) / sigma
/// or max_iter applications.
SolveReport solve(const FractionalBVP& bvp);
SolveReport solve(const FractionalBVP& bvp, const GreenKernel& kernel);

/// "rho g" lines with 17 significant digits.
std::string format_solution(const SolveReport& report);

}  // namespace bfp
