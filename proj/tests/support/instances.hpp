#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "bfp/contraction.hpp"
#include "bfp/picard.hpp"
#include "bfp/expr.hpp"
#include "bfp/space.hpp"

namespace bfp::testing {

using Rng = std::mt19937_64;

// Points on a ray with d(e, f) = |x_e - y_f|. Index 0 on both sides is the
// shared point at position 0; every other position is distinct and > 0.
FiniteBipolarSpace random_ray_space(Rng& rng, std::size_t n_left, std::size_t n_right);

struct ContractiveInstance {
    FiniteBipolarSpace space;
    MappingSpec map;
    CoefficientFamily coeffs;
    ContractionSpec spec;
    ContractionCertificate certificate;
    std::size_t attempts = 0;
};

// Sink construction: every point maps to the shared point p* (index 0) or
// to the next point closer to p* along the ray. q0 = 0, the q_v tables are
// drawn from [Q, W], and pi is set post hoc to the largest LHS/RHS ratio
// (at least 0.05). Draws with ratio >= 0.95 are retried with a higher sink
// probability, the last attempt being the constant map.
ContractiveInstance random_contractive(Rng& rng, Variance variance);

struct BoundAudit {
    std::size_t traces = 0;
    std::size_t checks = 0;
    std::size_t structure_violations = 0;  // bisequence recurrence / interleaving
    std::size_t decay_violations = 0;      // d(g_k, h_k)^rho <= pi^k S(g0, h0) / Q
    std::size_t bound_violations = 0;      // d(g_{k+w}, h_k) <= a_priori_bound(k)
    std::string first_failure;

    std::size_t violations() const { return structure_violations + decay_violations + bound_violations; }
};

// Iterates from every start (every pair for covariant maps, every left point
// for contravariant ones) with a-priori bounds enabled and checks the trace.
// The decay exponent is k for covariant maps and 2k for contravariant ones.
BoundAudit audit_bounds(const ContractiveInstance& inst);

// Arbitrary total map on a space, no contraction guarantee.
MappingSpec random_map(Rng& rng, const FiniteBipolarSpace& space, Variance variance);

// Random expression tree printed as text, using every node kind.
std::string random_expression(Rng& rng, int depth);

// Random AST built directly (not through the parser).
expr::Ast random_ast(Rng& rng, int depth);

}  // namespace bfp::testing
