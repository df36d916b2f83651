#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bfp/fractional.hpp"
#include "instances.hpp"

using namespace bfp;
namespace bt = bfp::testing;

namespace {

FractionalBVP problem(double order, const std::string& omega, double sigma, std::size_t n = 201) {
    FractionalBVP bvp;
    bvp.order = order;
    bvp.sigma = sigma;
    bvp.grid_n = n;
    set_omega(bvp, omega);
    return bvp;
}

double max_error_vs_parabola(const SolveReport& r) {
    double err = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        double x = r.nodes[i];
        err = std::max(err, std::abs(r.solution.values[i] - x * (1.0 - x) / 2.0));
    }
    return err;
}

}  // namespace

TEST(Green, OrderTwo) {
    EXPECT_DOUBLE_EQ(green_function(2.0, 0.5, 0.5), 0.25);
    EXPECT_DOUBLE_EQ(green_function(2.0, 0.75, 0.25), 0.25 * 0.25);
    EXPECT_DOUBLE_EQ(green_function(2.0, 0.25, 0.75), 0.25 * 0.25);
    EXPECT_EQ(green_function(2.0, 0.0, 0.3), 0.0);
    EXPECT_NEAR(green_function(2.0, 1.0, 0.3), 0.0, 1e-16);
}

TEST(Green, OrderThreeHalves) {
    // High-precision reference for (sqrt(0.375) - sqrt(0.25)) / Gamma(1.5).
    EXPECT_NEAR(green_function(1.5, 0.5, 0.25), 0.1267987153949146715824098405030067804347, 1e-15);
    EXPECT_NEAR(green_function(1.5, 0.25, 0.5), std::sqrt(0.125) / (std::sqrt(std::numbers::pi) / 2.0), 1e-15);
}

TEST(Kernel, BoundaryRowsAreZero) {
    for (double q : {1.5, 2.0}) {
        auto k = build_kernel(q, 21);
        for (std::size_t j = 0; j < 21; ++j) {
            EXPECT_EQ(k.weights.front()[j], 0.0);
            EXPECT_EQ(k.weights.back()[j], 0.0);
            EXPECT_GE(k.matrix[10][j], 0.0);
        }
    }
}

TEST(Kernel, NodesAndEntries) {
    auto k = build_kernel(2.0, 5);
    EXPECT_EQ(k.nodes, (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
    EXPECT_DOUBLE_EQ(k.matrix[2][2], 0.25);
    EXPECT_DOUBLE_EQ(k.gamma_q, 1.0);
}

TEST(Kernel, RejectsBadInput) {
    EXPECT_THROW(build_kernel(1.0, 11), InputError);
    EXPECT_THROW(build_kernel(2.5, 11), InputError);
    EXPECT_THROW(build_kernel(2.0, 10), InputError);
    EXPECT_THROW(build_kernel(2.0, 1), InputError);
}

TEST(Condition2, OrderTwoClosedForm) {
    EXPECT_NEAR(condition2_audit(build_kernel(2.0, 201)), 0.125, 1e-8);
    EXPECT_NEAR(condition2_audit(build_kernel(2.0, 3)), 0.125, 1e-2);
}

TEST(Condition2, FractionalOrderBelowOne) {
    double c = condition2_audit(build_kernel(1.5, 201));
    EXPECT_GT(c, 0.0);
    EXPECT_LE(c, 1.0);
}

TEST(Operator, ZeroOmega) {
    auto k = build_kernel(2.0, 51);
    GridFunction g{std::vector<double>(51, 3.0)};
    auto out = apply_operator(k, expr::parse("0"), g);
    for (double v : out.values) EXPECT_EQ(v, 0.0);
}

TEST(Operator, ConstantOmegaMatchesClosedForm) {
    auto k = build_kernel(2.0, 201);
    GridFunction zero{std::vector<double>(201, 0.0)};
    auto out = apply_operator(k, expr::parse("3"), zero);
    for (std::size_t i = 0; i < 201; ++i) {
        double x = k.nodes[i];
        EXPECT_NEAR(out.values[i], 3.0 * x * (1.0 - x) / 2.0, 1e-8);
    }
    EXPECT_EQ(out.values.front(), 0.0);
    EXPECT_EQ(out.values.back(), 0.0);
}

TEST(Operator, LinearOmegaOnConstantInput) {
    auto k = build_kernel(2.0, 201);
    GridFunction one{std::vector<double>(201, 1.0)};
    auto out = apply_operator(k, expr::parse("g"), one);
    for (std::size_t i = 0; i < 201; ++i) EXPECT_NEAR(out.values[i], k.nodes[i] * (1.0 - k.nodes[i]) / 2.0, 1e-8);
}

TEST(Operator, DomainErrorNamesNode) {
    auto k = build_kernel(2.0, 11);
    GridFunction zero{std::vector<double>(11, 0.0)};
    try {
        apply_operator(k, expr::parse("1/(rho - 0.5)"), zero);
        FAIL();
    } catch (const expr::DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("node 5"), std::string::npos) << e.what();
    }
}

TEST(Operator, AffineBound) {
    // |F e - F f| <= sigma * condition2 * |e - f| for omega Lipschitz in g with constant sigma.
    auto k = build_kernel(1.5, 101);
    const double c2 = condition2_audit(k);
    auto omega = expr::parse("0.5*sin(g) + rho");
    bt::Rng rng(51);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int t = 0; t < 100; ++t) {
        GridFunction e{std::vector<double>(101)}, f{std::vector<double>(101)};
        for (std::size_t i = 0; i < 101; ++i) {
            e.values[i] = u(rng);
            f.values[i] = u(rng);
        }
        double lhs = sup_distance(apply_operator(k, omega, e), apply_operator(k, omega, f));
        ASSERT_LE(lhs, 0.5 * c2 * sup_distance(e, f) * (1.0 + 1e-12));
    }
}

TEST(Lipschitz, LinearOmega) {
    auto r = lipschitz_audit(expr::parse("0.3*g"), 0.3, 4096);
    EXPECT_TRUE(r.passes);
    EXPECT_NEAR(r.max_ratio, 0.3, 1e-9);
    EXPECT_GT(r.evaluated, 4000u);
}

TEST(Lipschitz, BoundedSlope) {
    auto r = lipschitz_audit(expr::parse("0.5*sin(g)+rho"), 0.5, 4096);
    EXPECT_TRUE(r.passes);
    EXPECT_LE(r.max_ratio, 0.5 * (1.0 + 1e-9));
}

TEST(Lipschitz, QuadraticFails) {
    auto r = lipschitz_audit(expr::parse("g*g"), 0.9, 4096);
    EXPECT_FALSE(r.passes);
    ASSERT_TRUE(r.witness.has_value());
    const auto& w = *r.witness;
    EXPECT_GT(std::abs(w[1] + w[2]), 0.9);
}

TEST(Lipschitz, DomainErrorsAreSkipped) {
    auto r = lipschitz_audit(expr::parse("0.1*sqrt(g)"), 1e9, 1024);
    EXPECT_GT(r.skipped, 0u);
    EXPECT_GT(r.evaluated, 0u);
}

TEST(Solve, ZeroOmegaOneIteration) {
    auto r = solve(problem(2.0, "0", 0.5));
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.iterations, 1u);
    EXPECT_EQ(r.solution.sup_norm(), 0.0);
}

TEST(Solve, ConstantOmegaTwoIterations) {
    auto r = solve(problem(2.0, "1", 0.5));
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.iterations, 2u);
    EXPECT_LE(max_error_vs_parabola(r), 1e-8);
    EXPECT_NEAR(r.condition2_value, 0.125, 1e-8);
}

TEST(Solve, LinearOmegaContracts) {
    auto r = solve(problem(1.5, "0.3*g + 1", 0.3));
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.residual, 1e-10);
    for (double ratio : r.contraction_ratios) EXPECT_LE(ratio, 0.3 * r.condition2_value + 1e-6);
    EXPECT_LE(r.residual, r.successive_dists.back() / (1.0 - 0.3));
}

TEST(Solve, BoundaryValuesExact) {
    auto r = solve(problem(1.7, "sin(pi*rho) + 0.2*g", 0.2, 101));
    EXPECT_EQ(r.solution.values.front(), 0.0);
    EXPECT_EQ(r.solution.values.back(), 0.0);
}

TEST(Solve, ResidualBoundProperty) {
    bt::Rng rng(52);
    for (int t = 0; t < 20; ++t) {
        const double q = 1.05 + 0.95 * (rng() % 1000) / 1000.0;
        const double s = 0.05 + 0.5 * (rng() % 1000) / 1000.0;
        auto bvp = problem(q, std::to_string(s) + "*cos(g) + rho", s, 51);
        auto r = solve(bvp);
        ASSERT_TRUE(r.converged);
        ASSERT_LE(r.residual, r.successive_dists.back() / (1.0 - s) * (1.0 + 1e-9) + 1e-15);
    }
}

TEST(Solve, FourthOrderOnSmoothForcing) {
    // D^2 g + sin(pi rho) = 0 has the solution sin(pi rho) / pi^2.
    double err[3];
    std::size_t grids[3] = {51, 101, 201};
    for (int i = 0; i < 3; ++i) {
        auto r = solve(problem(2.0, "sin(pi*rho)", 0.5, grids[i]));
        err[i] = 0.0;
        for (std::size_t j = 0; j < r.nodes.size(); ++j)
            err[i] = std::max(err[i], std::abs(r.solution.values[j] -
                                               std::sin(std::numbers::pi * r.nodes[j]) / (std::numbers::pi * std::numbers::pi)));
    }
    EXPECT_GE(err[0] / err[1], 12.0);
    EXPECT_GE(err[1] / err[2], 12.0);
}

TEST(Solve, Divergence) {
    auto bvp = problem(2.0, "20*g + 1", 0.5, 51);
    try {
        solve(bvp);
        FAIL();
    } catch (const DivergenceError& e) {
        EXPECT_GE(e.successive_dists().size(), 5u);
    }
}

TEST(Solve, MaxIterationsNotConverged) {
    auto bvp = problem(2.0, "0.9*g + 1", 0.9, 51);
    bvp.max_iter = 2;
    auto r = solve(bvp);
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.iterations, 2u);
}

TEST(Validate, BadProblems) {
    auto bvp = problem(2.0, "1", 0.5);
    bvp.order = 1.0;
    EXPECT_THROW(validate(bvp), InputError);
    bvp = problem(2.0, "1", 0.5);
    bvp.grid_n = 200;
    EXPECT_THROW(validate(bvp), InputError);
    bvp = problem(2.0, "1", 0.5);
    bvp.sigma = -0.1;
    EXPECT_THROW(validate(bvp), InputError);
    bvp = problem(2.0, "1", 0.5);
    bvp.tol = 0.0;
    EXPECT_THROW(validate(bvp), InputError);
    FractionalBVP empty;
    EXPECT_THROW(set_omega(empty, "rho*("), expr::ParseError);
}

TEST(Export, SolutionLines) {
    auto r = solve(problem(2.0, "0", 0.5, 3));
    EXPECT_EQ(format_solution(r), "0 0\n0.5 0\n1 0\n");
}
