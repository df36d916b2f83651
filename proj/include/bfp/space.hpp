#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bfp/common.hpp"

namespace bfp {

/// (left index, right index) into a FiniteBipolarSpace.
struct IndexPair {
    std::size_t left = 0;
    std::size_t right = 0;
    auto operator<=>(const IndexPair&) const = default;
};

/// A finite bipolar metric space (E, P, d).
///
/// The distance is only defined between a left point and a right point and
/// is stored row-major: dist[i][j] = d(left[i], right[j]). Points that belong
/// to both sets are declared explicitly through `overlap`; labels carry no
/// identity of their own.
struct FiniteBipolarSpace {
    std::vector<std::string> left;
    std::vector<std::string> right;
    std::vector<std::vector<double>> dist;
    std::vector<IndexPair> overlap;

    std::size_t left_size() const { return left.size(); }
    std::size_t right_size() const { return right.size(); }

    double at(std::size_t i, std::size_t j) const { return dist[i][j]; }

    std::size_t left_index(std::string_view label) const;
    std::size_t right_index(std::string_view label) const;

    bool is_overlap(std::size_t i, std::size_t j) const;
    std::optional<std::size_t> right_partner(std::size_t i) const;
    std::optional<std::size_t> left_partner(std::size_t j) const;

    bool operator==(const FiniteBipolarSpace&) const = default;
};

/// Structural validation: non-empty sides, unique labels per side, a total
/// table of finite non-negative entries, in-range overlap pairs with each
/// point used at most once. Throws InputError naming the offending entry.
void validate(const FiniteBipolarSpace& space);

/// d(e, f) by label. Throws InputError on unknown labels.
double distance(const FiniteBipolarSpace& space, std::string_view e, std::string_view f);

enum class Axiom { Separation = 1, OverlapSymmetry = 2, Tetrahedral = 3 };

struct AxiomViolation {
    Axiom axiom;
    // Separation: (e, f). OverlapSymmetry: (x, y, y, x) as (left, right,
    // left, right) labels of d(x, y) and d(y, x). Tetrahedral: (e, r, z, f).
    std::vector<std::string> witness;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct AxiomReport {
    bool axiom1_ok = true;
    bool axiom2_ok = true;
    bool axiom3_ok = true;
    std::vector<AxiomViolation> violations;

    bool all_ok() const { return axiom1_ok && axiom2_ok && axiom3_ok; }
};

/// Exhaustively checks the three bipolar metric axioms.
///
/// Axioms 1 and 2 use exact comparison. Axiom 3 is checked over all
/// |left|^2 * |right|^2 quadruples with absolute tolerance `tetra_tol`.
/// Violations are ordered by axiom, then by witness index.
AxiomReport check_axioms(const FiniteBipolarSpace& space, double tetra_tol = kDefaultTolerance);

}  // namespace bfp
