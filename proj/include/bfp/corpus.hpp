#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "bfp/contraction.hpp"
#include "bfp/picard.hpp"
#include "bfp/space.hpp"

namespace bfp::corpus {

/// Discrete bipolar metric on e1..en x f1..fn: d(ei, fj) = 1 iff i != j.
/// Every (ei, fi) is declared an overlap pair.
FiniteBipolarSpace discrete_space(std::size_t n);

// ---------------------------------------------------------------------------
// Five-point polynomial contraction example with a printed table.

struct PcTableRow {
    std::size_t v = 0;  // 1-based left index
    std::size_t r = 0;  // 1-based right index
    double printed_lhs = 0.0;
    double printed_unscaled = 0.0;
    double lhs = 0.0;
    double unscaled = 0.0;
    double literal_rhs = 0.0;  // pi*q0 + d
    double rhs = 0.0;          // pi*(q0 + d)
};

struct PcTableCase {
    FiniteBipolarSpace space;
    MappingSpec map;
    CoefficientFamily coeffs;
    ContractionSpec spec;
    ContractionCertificate certificate;
    std::vector<PcTableRow> table;              // the ten printed rows, v < r
    std::vector<IndexPair> lhs_discrepancies;   // computed lhs != printed
    std::vector<IndexPair> unscaled_discrepancies;
    IterationOutcome cycle_run;                 // iterate from (e2, f2)
    FixedPoints fixed;
    WeaklyPicardReport weakly_picard;
    UniquenessReport uniqueness;
};

PcTableCase example_pc_table();

/// The q0 coefficient table of the example viewed as a lookup space over the
/// same labels. It is not a bipolar metric (the tetrahedral inequality fails).
FiniteBipolarSpace example_pc_q0_space();

// ---------------------------------------------------------------------------
// Non-expansive map under two metrics.

struct NonexpansiveRow {
    std::string x;
    std::string y;
    double printed_d1 = 0.0;
    double printed_d2 = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double image_d1 = 0.0;
    double image_d2 = 0.0;
    bool holds = false;  // image_di <= di for i = 1, 2
};

struct NonexpansiveCase {
    // Table rows are measured on the union {e1, e2, f1, f2} where d1 is the
    // discrete metric and d2 is 2 between an e-point and an f-point, 1
    // between other distinct points. F sends every point to e1.
    std::vector<NonexpansiveRow> rows;
    bool nonexpansive = false;
    bool images_zero = false;

    // Bipolar models. d1: E = {e1, e2}, P = {e1, f2} with e1 shared.
    // d2: E = {e1, e2}, P = {f1, f2} with no overlap, d2 = 2 throughout.
    FiniteBipolarSpace theta1_space;
    MappingSpec theta1_map;
    FiniteBipolarSpace theta2_space;
    MappingSpec theta2_map;
    CoefficientFamily coeffs;  // q0 = 0, q1 = 1
    ContractionSpec spec;      // pi = 1/2, H = (10, 10)
    ContractionCertificate almost_pc;  // on the d1 model
};

NonexpansiveCase example_nonexpansive();

// ---------------------------------------------------------------------------
// Discontinuous but Picard-continuous self-map of [0, 1].

struct IntervalCase {
    IntervalModel model;  // F x = 0 on [0, 1), F 1 = 1/3
    std::vector<double> orbit_from_one;                // 1, 1/3, 0, 0
    std::vector<double> starts;
    bool collapses = false;  // F^k g = 0 for k >= 3 on every start
    PicardContinuityReport continuity;
    std::vector<double> left_samples;  // points approaching 1 from below
    std::vector<double> left_values;   // F at those points
    double value_at_one = 0.0;
    bool discontinuous_at_one = false;
};

IntervalCase example_interval_picard();

// ---------------------------------------------------------------------------
// Fixtures and golden files.

std::string render_pc_table(const PcTableCase& c);
std::string render_nonexpansive(const NonexpansiveCase& c);
std::string render_interval(const IntervalCase& c);

/// Every file of the versioned fixture directory keyed by file name: JSON
/// inputs for the CLI and the three golden reports.
std::map<std::string, std::string> fixture_files();

struct CheckResult {
    std::vector<std::string> matching;
    std::vector<std::string> differing;
    std::vector<std::string> missing;

    bool ok() const { return differing.empty() && missing.empty(); }
};

/// Writes fixture_files() into `dir` (created if needed).
void regenerate(const std::string& dir);

/// Compares fixture_files() against the contents of `dir` byte for byte.
CheckResult check(const std::string& dir);

}  // namespace bfp::corpus
