#include "bfp/picard.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bfp/parallel.hpp"

namespace bfp {

double a_priori_bound(const ErrorBoundParams& params, std::size_t kappa) {
    if (!(params.pi > 0.0 && params.pi < 1.0)) throw InputError("pi must lie in (0, 1)");
    if (params.rho_index < 1) throw InputError("rho_index must be >= 1");
    if (!(params.M >= 0.0)) throw InputError("M must be non-negative");
    const double rho = static_cast<double>(params.rho_index);
    const double steps = params.mode == Variance::Covariant ? static_cast<double>(kappa) : 2.0 * kappa;
    return std::pow(params.M / (1.0 - params.pi), 1.0 / rho) * std::pow(params.pi, steps / rho);
}

double compute_M(const FiniteBipolarSpace& space, const MappingSpec& map, const CoefficientFamily& coeffs,
                 const ContractionSpec& spec, std::size_t start_left, std::size_t start_right) {
    validate(space);
    validate(map, space);
    validate(coeffs, space);
    if (!(spec.Q > 0.0)) throw InputError("Q must be positive");
    if (start_left >= space.left_size()) throw InputError("start_left out of range");

    auto S = [&](std::size_t i, std::size_t j) { return polynomial_sum(coeffs, i, j, space.at(i, j)); };
    const std::size_t g0 = start_left;
    if (map.variance == Variance::Covariant) {
        if (start_right >= space.right_size()) throw InputError("start_right out of range");
        const std::size_t h0 = start_right;
        const std::size_t h1 = map.right_map[h0];
        return S(g0, h1) / spec.Q + S(g0, h0) / spec.Q;
    }
    const std::size_t h0 = map.left_map[g0];
    const std::size_t g1 = map.right_map[h0];
    const std::size_t h1 = map.left_map[g1];
    return S(g0, h1) / spec.Q + S(g0, h1) / spec.Q;
}

const char* to_string(IterationStatus status) {
    switch (status) {
        case IterationStatus::Converged: return "converged";
        case IterationStatus::CycleDetected: return "cycle";
        case IterationStatus::MaxIterations: return "max-iterations";
    }
    return "?";
}

IterationOutcome iterate(const FiniteBipolarSpace& space, const MappingSpec& map, std::size_t start_left,
                         std::size_t start_right, const IterationConfig& config) {
    validate(space);
    validate(map, space);
    if (config.max_iter < 1) throw InputError("max_iter must be >= 1");
    if (!(config.tol > 0.0)) throw InputError("tol must be positive");
    if (start_left >= space.left_size()) throw InputError("start_left out of range");

    const bool co = map.variance == Variance::Covariant;
    if (co && start_right >= space.right_size()) throw InputError("start_right out of range");

    const std::size_t nl = space.left_size();
    const std::size_t nr = space.right_size();
    std::vector<long> first_seen(co ? nl * nr : nl, -1);

    IterationOutcome out;
    out.trace.mode = map.variance;

    std::size_t g = start_left;
    std::size_t h = co ? start_right : map.left_map[g];
    for (std::size_t k = 0;; ++k) {
        out.trace.g.push_back(g);
        out.trace.h.push_back(h);
        out.observed_distances.push_back(space.at(g, h));
        if (config.bounds) out.bounds.push_back(a_priori_bound(*config.bounds, k));
        first_seen[co ? g * nr + h : g] = static_cast<long>(k);

        std::size_t next_g = co ? map.left_map[g] : map.right_map[h];
        std::size_t next_h = co ? map.right_map[h] : map.left_map[next_g];

        if (co ? (next_g == g && next_h == h) : (next_g == g && space.is_overlap(g, h))) {
            out.status = IterationStatus::Converged;
            out.fixed_point = space.left[g];
            out.fixed_point_right = space.right[h];
            return out;
        }
        long seen = first_seen[co ? next_g * nr + next_h : next_g];
        if (seen >= 0) {
            out.status = IterationStatus::CycleDetected;
            for (std::size_t s = static_cast<std::size_t>(seen); s <= k; ++s) {
                out.cycle.push_back(space.left[out.trace.g[s]]);
                if (co)
                    out.cycle_right.push_back(space.right[out.trace.h[s]]);
                else
                    out.cycle.push_back(space.right[out.trace.h[s]]);
            }
            return out;
        }
        if (k + 1 > config.max_iter) {
            out.status = IterationStatus::MaxIterations;
            return out;
        }
        g = next_g;
        h = next_h;
    }
}

IterationOutcome iterate(const FiniteBipolarSpace& space, const MappingSpec& map, std::string_view start_left,
                         std::string_view start_right, const IterationConfig& config) {
    std::size_t g = space.left_index(start_left);
    std::size_t h = map.variance == Variance::Covariant ? space.right_index(start_right) : 0;
    return iterate(space, map, g, h, config);
}

std::string format_trace(const FiniteBipolarSpace& space, const IterationOutcome& outcome) {
    std::ostringstream os;
    for (std::size_t k = 0; k < outcome.trace.g.size(); ++k) {
        os << k << ' ' << space.left[outcome.trace.g[k]] << ' ' << space.right[outcome.trace.h[k]] << ' '
           << format_number(outcome.observed_distances[k]) << ' '
           << (k < outcome.bounds.size() ? format_number(outcome.bounds[k]) : std::string("-")) << '\n';
    }
    return os.str();
}

FixedPoints all_fixed_points(const FiniteBipolarSpace& space, const MappingSpec& map) {
    validate(map, space);
    FixedPoints fp;
    if (map.variance == Variance::Covariant) {
        for (std::size_t i = 0; i < space.left_size(); ++i)
            if (map.left_map[i] == i) fp.left.push_back(i);
        for (std::size_t j = 0; j < space.right_size(); ++j)
            if (map.right_map[j] == j) fp.right.push_back(j);
    } else {
        for (const auto& p : space.overlap)
            if (map.left_map[p.left] == p.right && map.right_map[p.right] == p.left) {
                fp.left.push_back(p.left);
                fp.right.push_back(p.right);
            }
        std::sort(fp.left.begin(), fp.left.end());
        std::sort(fp.right.begin(), fp.right.end());
    }
    return fp;
}

std::vector<std::string> fixed_point_labels(const FiniteBipolarSpace& space, const FixedPoints& fixed) {
    std::vector<std::string> out;
    for (auto i : fixed.left) out.push_back(space.left[i]);
    for (auto j : fixed.right) out.push_back(space.right[j]);
    return out;
}

PicardContinuityReport check_picard_continuity(const FiniteBipolarSpace& space, const MappingSpec& map,
                                               std::size_t horizon, double tol) {
    validate(space);
    validate(map, space);
    if (horizon < 1) throw InputError("horizon must be >= 1");
    if (map.variance != Variance::Covariant)
        throw InputError("Picard continuity is checked for covariant maps only");

    PicardContinuityReport report;
    const std::size_t nl = space.left_size();
    for (std::size_t g = 0; g < nl; ++g) {
        // Orbit until the first repeated point; the tail from there is the cycle.
        std::vector<long> pos(nl, -1);
        std::vector<std::size_t> orbit;
        std::size_t x = g;
        long cycle_start = -1;
        for (std::size_t k = 0; k <= horizon; ++k) {
            if (pos[x] >= 0) {
                cycle_start = pos[x];
                break;
            }
            pos[x] = static_cast<long>(k);
            orbit.push_back(x);
            x = map.left_map[x];
        }
        for (std::size_t h = 0; h < space.right_size(); ++h) {
            ++report.tested;
            if (cycle_start < 0) {
                report.inconclusive.push_back({space.left[g], space.right[h], "orbit did not close within horizon"});
                continue;
            }
            bool premise = true;
            for (std::size_t s = cycle_start; s < orbit.size(); ++s)
                if (space.at(orbit[s], h) > tol) premise = false;
            if (!premise) continue;
            ++report.premise_hits;
            const std::size_t fh = map.right_map[h];
            for (std::size_t s = cycle_start; s < orbit.size(); ++s) {
                double d = space.at(map.left_map[orbit[s]], fh);
                if (d > tol) {
                    report.violations.push_back({space.left[g], space.right[h],
                                                 "d(F c, F h) = " + format_number(d) + " at c = " +
                                                     space.left[orbit[s]]});
                    break;
                }
            }
        }
    }
    report.picard_continuous = report.violations.empty();
    return report;
}

PicardContinuityReport check_picard_continuity(const IntervalModel& model, std::span<const double> starts,
                                               std::span<const double> targets, std::size_t horizon, double tol) {
    if (horizon < 1) throw InputError("horizon must be >= 1");
    if (!model.map) throw InputError("interval model has no map");

    PicardContinuityReport report;
    for (double g : starts) {
        double prev = g;
        double x = g;
        for (std::size_t k = 0; k < horizon; ++k) {
            prev = x;
            x = model.map(x);
        }
        const bool settled = std::abs(x - prev) <= tol;
        std::vector<double> hs(targets.begin(), targets.end());
        hs.push_back(x);
        for (double h : hs) {
            ++report.tested;
            if (!settled) {
                report.inconclusive.push_back({format_number(g), format_number(h), "orbit not settled within horizon"});
                continue;
            }
            if (std::abs(x - h) > tol) continue;
            ++report.premise_hits;
            double d = std::abs(model.map(x) - model.map(h));
            if (d > tol)
                report.violations.push_back({format_number(g), format_number(h), "|F(lim) - F(h)| = " + format_number(d)});
        }
    }
    report.picard_continuous = report.violations.empty();
    return report;
}

WeaklyPicardReport check_weakly_picard(const FiniteBipolarSpace& space, const MappingSpec& map) {
    WeaklyPicardReport report;
    report.fixed = all_fixed_points(space, map);

    const bool co = map.variance == Variance::Covariant;
    const std::size_t nl = space.left_size();
    const std::size_t nr = co ? space.right_size() : 1;
    IterationConfig config;
    config.max_iter = nl * space.right_size() + 1;

    std::vector<std::optional<PicardCase>> slots(nl * nr);
    parallel_for(nl * nr, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            std::size_t g = k / nr;
            std::size_t h = co ? k % nr : map.left_map[g];
            auto out = iterate(space, map, g, h, config);
            if (out.status != IterationStatus::Converged)
                slots[k] = PicardCase{space.left[g], space.right[h], to_string(out.status)};
        }
    });
    for (auto& s : slots)
        if (s) report.offending.push_back(std::move(*s));

    report.weakly_picard = !report.fixed.left.empty() && !report.fixed.right.empty() && report.offending.empty();
    return report;
}

UniquenessReport uniqueness_check(const FiniteBipolarSpace& space, const MappingSpec& map,
                                  const ContractionCertificate& certificate) {
    UniquenessReport report;
    FixedPoints fp = all_fixed_points(space, map);
    report.left_count = fp.left.size();
    report.right_count = fp.right.size();
    report.claim_applies = certificate.holds && certificate.side_conditions.passes();

    auto plural = [](std::size_t n, const char* side) {
        return std::to_string(n) + " " + side + " fixed point" + (n == 1 ? "" : "s");
    };
    const std::string counts = plural(report.left_count, "left") + ", " + plural(report.right_count, "right");

    if (!report.claim_applies) {
        report.message = counts + "; no uniqueness claim";
        return report;
    }
    if (report.left_count <= 1 && report.right_count <= 1) {
        report.message = counts + "; unique, consistent with the certificate";
        return report;
    }
    report.consistent = false;
    report.counterexample = fixed_point_labels(space, fp);
    std::string names;
    for (const auto& l : report.counterexample) names += (names.empty() ? "" : ", ") + l;
    report.message = "theorem violation: certificate holds but " + counts + " (" + names + ")";
    return report;
}

}  // namespace bfp
