#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bfp/common.hpp"
#include "bfp/space.hpp"

namespace bfp {

enum class Variance { Covariant, Contravariant };

/// A self-map of E ∪ P given by index lookup tables.
///
/// Covariant: left_map[i] indexes `left`, right_map[j] indexes `right`.
/// Contravariant: left_map[i] indexes `right`, right_map[j] indexes `left`.
struct MappingSpec {
    Variance variance = Variance::Covariant;
    std::vector<std::size_t> left_map;
    std::vector<std::size_t> right_map;

    bool operator==(const MappingSpec&) const = default;
};

void validate(const MappingSpec& map, const FiniteBipolarSpace& space);

/// The pair in E x P at which the image of (e, f) is measured:
/// (F e, F f) for covariant maps, (F f, F e) for contravariant ones.
IndexPair image_pair(const MappingSpec& map, IndexPair pair);

using CoefficientTable = std::vector<std::vector<double>>;

/// Coefficient functions q_0 .. q_degree over E x P.
struct CoefficientFamily {
    std::vector<CoefficientTable> tables;

    std::size_t degree() const { return tables.empty() ? 0 : tables.size() - 1; }
    double q(std::size_t v, std::size_t i, std::size_t j) const { return tables[v][i][j]; }
    bool is_constant(std::size_t v) const;

    /// Constant family: q_v(e, f) = values[v] everywhere.
    static CoefficientFamily constant(const std::vector<double>& values, std::size_t n_left, std::size_t n_right);

    bool operator==(const CoefficientFamily&) const = default;
};

void validate(const CoefficientFamily& coeffs, const FiniteBipolarSpace& space);

/// sum_{v=0}^{degree} q_v(i, j) * d^v with d^0 = 1, accumulated in a fixed
/// order so results are reproducible bit for bit.
double polynomial_sum(const CoefficientFamily& coeffs, std::size_t i, std::size_t j, double d);

struct ContractionSpec {
    double pi = 0.5;
    std::size_t rho_index = 1;
    double Q = 1.0;
    std::optional<std::vector<double>> upper_bounds;  // W_1 .. W_degree
    std::optional<std::vector<double>> almost_terms;  // H_0 .. H_degree

    bool operator==(const ContractionSpec&) const = default;
};

/// Checks 0 < pi < 1, 1 <= rho_index <= degree, Q > 0, and the sizes and
/// signs of W (> 0) and H (>= 0; files additionally require > 0).
void validate(const ContractionSpec& spec, std::size_t degree);

struct BoundCheck {
    bool ok = true;
    std::optional<IndexPair> witness;  // first failing pair, row-major
    double value = 0.0;                // coefficient value at the witness
    double bound = 0.0;
};

struct SideConditionReport {
    bool q0_zero = true;
    std::optional<IndexPair> q0_witness;
    double q0_witness_value = 0.0;
    BoundCheck lower;                               // q_rho >= Q
    std::optional<std::vector<BoundCheck>> upper;   // q_v <= W_v, v = 1..degree

    bool passes() const;
};

SideConditionReport check_side_conditions(const CoefficientFamily& coeffs, const ContractionSpec& spec);

enum class ContractionKind { Polynomial, AlmostPolynomial };

struct CertificateRow {
    IndexPair pair;
    IndexPair image;
    double lhs = 0.0;       // sum q_v(image) d^v(image)
    double rhs = 0.0;       // pi * sum q_v(pair) d^v(pair) (+ almost terms)
    double slack = 0.0;     // rhs - lhs
    double unscaled = 0.0;  // sum q_v(pair) d^v(pair), no pi
    // pi applied to the v = 0 term only: pi*q_0 + sum_{v>=1} q_v d^v. This is
    // how the worked table in the literature writes its inequality, which
    // differs from the definition above.
    double literal_rhs = 0.0;
    double literal_slack = 0.0;
};

struct ContractionCertificate {
    ContractionKind kind = ContractionKind::Polynomial;
    double pi = 0.0;
    double tolerance = kDefaultTolerance;
    bool holds = false;
    std::vector<CertificateRow> rows;         // row-major over E x P
    std::vector<std::size_t> violations;      // rows with slack < -tolerance
    std::vector<std::size_t> literal_violations;
    SideConditionReport side_conditions;
};

ContractionCertificate verify_pc(const FiniteBipolarSpace& space, const MappingSpec& map,
                                 const CoefficientFamily& coeffs, const ContractionSpec& spec,
                                 double tolerance = kDefaultTolerance);

/// Almost polynomial contraction: the right side gains
/// pi * sum q_v(e, f) H_v d^v(F e, f). The mixed distance is measured as
/// d(F e, f), so only covariant maps are accepted.
ContractionCertificate verify_almost_pc(const FiniteBipolarSpace& space, const MappingSpec& map,
                                        const CoefficientFamily& coeffs, const ContractionSpec& spec,
                                        double tolerance = kDefaultTolerance);

/// True when the certificate holds, q_0 == 0, every W_v is given and
/// respected, and the q_rho >= Q bound holds: the hypotheses under which a
/// polynomial contraction is continuous.
bool implied_continuity(const ContractionCertificate& certificate, const SideConditionReport& side);

}  // namespace bfp
