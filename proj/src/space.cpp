#include "bfp/space.hpp"

#include <cmath>
#include <set>

#include "bfp/parallel.hpp"

namespace bfp {

namespace {

std::size_t find_label(const std::vector<std::string>& labels, std::string_view label, const char* side) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return i;
    throw InputError("unknown " + std::string(side) + " label '" + std::string(label) + "'");
}

}  // namespace

std::size_t FiniteBipolarSpace::left_index(std::string_view label) const {
    return find_label(left, label, "left");
}

std::size_t FiniteBipolarSpace::right_index(std::string_view label) const {
    return find_label(right, label, "right");
}

bool FiniteBipolarSpace::is_overlap(std::size_t i, std::size_t j) const {
    for (const auto& p : overlap)
        if (p.left == i && p.right == j) return true;
    return false;
}

std::optional<std::size_t> FiniteBipolarSpace::right_partner(std::size_t i) const {
    for (const auto& p : overlap)
        if (p.left == i) return p.right;
    return std::nullopt;
}

std::optional<std::size_t> FiniteBipolarSpace::left_partner(std::size_t j) const {
    for (const auto& p : overlap)
        if (p.right == j) return p.left;
    return std::nullopt;
}

void validate(const FiniteBipolarSpace& space) {
    if (space.left.empty()) throw InputError("space has no left points");
    if (space.right.empty()) throw InputError("space has no right points");

    auto check_unique = [](const std::vector<std::string>& labels, const char* side) {
        std::set<std::string_view> seen;
        for (const auto& l : labels)
            if (!seen.insert(l).second) throw InputError("duplicate " + std::string(side) + " label '" + l + "'");
    };
    check_unique(space.left, "left");
    check_unique(space.right, "right");

    if (space.dist.size() != space.left.size())
        throw InputError("dist has " + std::to_string(space.dist.size()) + " rows, expected " +
                         std::to_string(space.left.size()));
    for (std::size_t i = 0; i < space.dist.size(); ++i) {
        const auto& row = space.dist[i];
        if (row.size() != space.right.size())
            throw InputError("dist row " + std::to_string(i) + " (" + space.left[i] + ") has " +
                             std::to_string(row.size()) + " entries, expected " +
                             std::to_string(space.right.size()));
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (!std::isfinite(row[j]) || row[j] < 0.0)
                throw InputError("dist[" + std::to_string(i) + "][" + std::to_string(j) + "] = d(" + space.left[i] +
                                 ", " + space.right[j] + ") must be finite and non-negative");
        }
    }

    std::set<std::size_t> used_left, used_right;
    for (const auto& p : space.overlap) {
        if (p.left >= space.left.size() || p.right >= space.right.size())
            throw InputError("overlap pair [" + std::to_string(p.left) + ", " + std::to_string(p.right) +
                             "] out of range");
        if (!used_left.insert(p.left).second)
            throw InputError("left point '" + space.left[p.left] + "' appears in more than one overlap pair");
        if (!used_right.insert(p.right).second)
            throw InputError("right point '" + space.right[p.right] + "' appears in more than one overlap pair");
    }
}

double distance(const FiniteBipolarSpace& space, std::string_view e, std::string_view f) {
    return space.at(space.left_index(e), space.right_index(f));
}

AxiomReport check_axioms(const FiniteBipolarSpace& space, double tetra_tol) {
    validate(space);
    AxiomReport report;
    const std::size_t nl = space.left_size();
    const std::size_t nr = space.right_size();

    // Axiom 1: d(e, f) = 0 exactly for declared overlap pairs.
    for (std::size_t i = 0; i < nl; ++i) {
        for (std::size_t j = 0; j < nr; ++j) {
            double d = space.at(i, j);
            bool same = space.is_overlap(i, j);
            if ((d == 0.0) != same) {
                report.axiom1_ok = false;
                report.violations.push_back({Axiom::Separation, {space.left[i], space.right[j]}, d, 0.0});
            }
        }
    }

    // Axiom 2: for x = (i1 ~ j1), y = (i2 ~ j2) in the overlap, d(x, y) = d(y, x).
    for (std::size_t a = 0; a < space.overlap.size(); ++a) {
        for (std::size_t b = a + 1; b < space.overlap.size(); ++b) {
            const auto& x = space.overlap[a];
            const auto& y = space.overlap[b];
            double xy = space.at(x.left, y.right);
            double yx = space.at(y.left, x.right);
            if (xy != yx) {
                report.axiom2_ok = false;
                report.violations.push_back({Axiom::OverlapSymmetry,
                                             {space.left[x.left], space.right[y.right], space.left[y.left],
                                              space.right[x.right]},
                                             xy,
                                             yx});
            }
        }
    }

    // Axiom 3: d(e, f) <= d(e, z) + d(r, z) + d(r, f); one bucket per e keeps
    // the merged list in witness-index order.
    std::vector<std::vector<AxiomViolation>> buckets(nl);
    parallel_for(
        nl,
        [&](std::size_t begin, std::size_t end) {
            for (std::size_t e = begin; e < end; ++e) {
                for (std::size_t r = 0; r < nl; ++r) {
                    for (std::size_t z = 0; z < nr; ++z) {
                        for (std::size_t f = 0; f < nr; ++f) {
                            double lhs = space.at(e, f);
                            double rhs = space.at(e, z) + space.at(r, z) + space.at(r, f);
                            if (lhs > rhs + tetra_tol)
                                buckets[e].push_back({Axiom::Tetrahedral,
                                                      {space.left[e], space.left[r], space.right[z], space.right[f]},
                                                      lhs,
                                                      rhs});
                        }
                    }
                }
            }
        },
        4);
    for (auto& b : buckets) {
        if (!b.empty()) report.axiom3_ok = false;
        for (auto& v : b) report.violations.push_back(std::move(v));
    }
    return report;
}

}  // namespace bfp
