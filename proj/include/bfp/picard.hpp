#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bfp/contraction.hpp"
#include "bfp/space.hpp"

namespace bfp {

/// Picard bisequence (g_k) in E, (h_k) in P.
///
/// Covariant: g_{k+1} = F g_k, h_{k+1} = F h_k.
/// Contravariant: h_k = F g_k, g_{k+1} = F h_k.
struct Bisequence {
    Variance mode = Variance::Covariant;
    std::vector<std::size_t> g;
    std::vector<std::size_t> h;
};

struct ErrorBoundParams {
    double M = 0.0;
    double pi = 0.5;
    std::size_t rho_index = 1;
    Variance mode = Variance::Covariant;
};

/// (M / (1 - pi))^(1/rho) * pi^(k/rho); the exponent of pi doubles to 2k/rho
/// for contravariant maps. Throws InputError if pi is outside (0, 1),
/// rho < 1 or M < 0.
double a_priori_bound(const ErrorBoundParams& params, std::size_t kappa);

/// Q^{-1} * S(g0, h1) + Q^{-1} * S(g0, h0) with S(e, f) = sum q_v(e, f) d^v(e, f)
/// for covariant maps. For contravariant maps both terms are taken at
/// (g0, h1), with h0 = F g0, g1 = F h0, h1 = F g1; `start_right` is ignored.
double compute_M(const FiniteBipolarSpace& space, const MappingSpec& map, const CoefficientFamily& coeffs,
                 const ContractionSpec& spec, std::size_t start_left, std::size_t start_right);

enum class IterationStatus { Converged, CycleDetected, MaxIterations };

const char* to_string(IterationStatus status);

struct IterationConfig {
    std::size_t max_iter = 10000;
    double tol = 1e-12;
    std::optional<ErrorBoundParams> bounds;
};

struct IterationOutcome {
    Bisequence trace;
    IterationStatus status = IterationStatus::MaxIterations;
    std::optional<std::string> fixed_point;        // left label
    std::optional<std::string> fixed_point_right;  // right label (same point for contravariant maps)
    // Covariant: left labels of the repeating states, with their right labels
    // in cycle_right. Contravariant: labels interleaved g, h, g, h, ...
    std::vector<std::string> cycle;
    std::vector<std::string> cycle_right;
    std::vector<double> observed_distances;  // d(g_k, h_k)
    std::vector<double> bounds;              // a_priori_bound(k) when bound params were given
};

/// Builds the Picard bisequence until the state (g_k, h_k) maps to itself
/// (converged), repeats an earlier state (cycle) or max_iter steps were taken.
/// On a finite space convergence means exact repetition; `tol` is only
/// validated. For contravariant maps h_0 = F g_0 and start_right is ignored.
IterationOutcome iterate(const FiniteBipolarSpace& space, const MappingSpec& map, std::size_t start_left,
                         std::size_t start_right, const IterationConfig& config = {});

IterationOutcome iterate(const FiniteBipolarSpace& space, const MappingSpec& map, std::string_view start_left,
                         std::string_view start_right, const IterationConfig& config = {});

/// Line-oriented trace: "k g_k h_k d(g_k,h_k) bound" with "-" when no bound.
std::string format_trace(const FiniteBipolarSpace& space, const IterationOutcome& outcome);

struct FixedPoints {
    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
};

/// Exact enumeration. Covariant: F i = i on each side. Contravariant: overlap
/// pairs (i, j) with F i = j and F j = i.
FixedPoints all_fixed_points(const FiniteBipolarSpace& space, const MappingSpec& map);

std::vector<std::string> fixed_point_labels(const FiniteBipolarSpace& space, const FixedPoints& fixed);

struct PicardCase {
    std::string g;
    std::string h;
    std::string detail;
};

struct PicardContinuityReport {
    bool picard_continuous = true;
    std::size_t tested = 0;
    std::size_t premise_hits = 0;  // cases where d(F^k g, h) -> 0
    std::vector<PicardCase> violations;
    std::vector<PicardCase> inconclusive;
};

/// Finite covariant maps: every orbit F^k g is enumerated until it enters its
/// cycle. d(F^k g, h) -> 0 iff d(c, h) <= tol on the whole cycle, and the
/// conclusion requires d(c, F h) <= tol on the whole cycle. Orbits that do
/// not close within `horizon` steps are reported as inconclusive.
PicardContinuityReport check_picard_continuity(const FiniteBipolarSpace& space, const MappingSpec& map,
                                               std::size_t horizon, double tol = 0.0);

/// A self-map of a real interval [lo, hi] with the metric |x - y|.
struct IntervalModel {
    double lo = 0.0;
    double hi = 1.0;
    std::function<double(double)> map;
};

/// Sampled version for interval models: each start is iterated `horizon`
/// times; an orbit counts as settled when its last step moved by at most tol.
/// Every target h (plus the orbit's own limit) with |limit - h| <= tol must
/// satisfy |F(limit) - F(h)| <= tol.
PicardContinuityReport check_picard_continuity(const IntervalModel& model, std::span<const double> starts,
                                               std::span<const double> targets, std::size_t horizon,
                                               double tol = 1e-12);

struct WeaklyPicardReport {
    bool weakly_picard = false;
    FixedPoints fixed;
    std::vector<PicardCase> offending;  // starts whose bisequence does not converge
};

WeaklyPicardReport check_weakly_picard(const FiniteBipolarSpace& space, const MappingSpec& map);

struct UniquenessReport {
    bool claim_applies = false;  // certificate and side conditions hold
    bool consistent = true;      // false only if the claim applies and fails
    std::size_t left_count = 0;
    std::size_t right_count = 0;
    std::vector<std::string> counterexample;
    std::string message;
};

UniquenessReport uniqueness_check(const FiniteBipolarSpace& space, const MappingSpec& map,
                                  const ContractionCertificate& certificate);

}  // namespace bfp
