#include "bfp/contraction.hpp"

#include <cmath>
#include <string>

#include "bfp/parallel.hpp"

namespace bfp {

namespace {

std::string idx(std::size_t i) { return std::to_string(i); }

void check_table(const CoefficientTable& t, std::size_t v, std::size_t nl, std::size_t nr) {
    if (t.size() != nl)
        throw InputError("q" + idx(v) + " has " + idx(t.size()) + " rows, expected " + idx(nl));
    for (std::size_t i = 0; i < nl; ++i) {
        if (t[i].size() != nr)
            throw InputError("q" + idx(v) + " row " + idx(i) + " has " + idx(t[i].size()) + " entries, expected " +
                             idx(nr));
        for (std::size_t j = 0; j < nr; ++j)
            if (!std::isfinite(t[i][j]) || t[i][j] < 0.0)
                throw InputError("q" + idx(v) + "[" + idx(i) + "][" + idx(j) + "] must be finite and non-negative");
    }
}

ContractionCertificate evaluate(const FiniteBipolarSpace& space, const MappingSpec& map,
                                const CoefficientFamily& coeffs, const ContractionSpec& spec, double tolerance,
                                ContractionKind kind) {
    validate(space);
    validate(map, space);
    validate(coeffs, space);
    validate(spec, coeffs.degree());

    ContractionCertificate cert;
    cert.kind = kind;
    cert.pi = spec.pi;
    cert.tolerance = tolerance;

    const std::size_t nl = space.left_size();
    const std::size_t nr = space.right_size();
    const std::size_t degree = coeffs.degree();
    cert.rows.resize(nl * nr);

    parallel_for(nl * nr, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            IndexPair pair{k / nr, k % nr};
            IndexPair image = image_pair(map, pair);
            double d = space.at(pair.left, pair.right);
            double d_image = space.at(image.left, image.right);

            CertificateRow row;
            row.pair = pair;
            row.image = image;
            row.lhs = polynomial_sum(coeffs, image.left, image.right, d_image);
            row.unscaled = polynomial_sum(coeffs, pair.left, pair.right, d);
            row.rhs = spec.pi * row.unscaled;
            double higher = 0.0;
            double power = d;
            for (std::size_t v = 1; v <= degree; ++v) {
                higher += coeffs.q(v, pair.left, pair.right) * power;
                power *= d;
            }
            row.literal_rhs = spec.pi * coeffs.q(0, pair.left, pair.right) + higher;

            if (kind == ContractionKind::AlmostPolynomial) {
                const auto& h = *spec.almost_terms;
                // d(F e, f): F e is a left point for covariant maps.
                double mixed = space.at(map.left_map[pair.left], pair.right);
                double extra = 0.0;
                double mixed_power = 1.0;
                for (std::size_t v = 0; v <= degree; ++v) {
                    extra += coeffs.q(v, pair.left, pair.right) * h[v] * mixed_power;
                    mixed_power *= mixed;
                }
                row.rhs += spec.pi * extra;
            }
            row.slack = row.rhs - row.lhs;
            row.literal_slack = row.literal_rhs - row.lhs;
            cert.rows[k] = row;
        }
    });

    for (std::size_t k = 0; k < cert.rows.size(); ++k) {
        if (cert.rows[k].slack < -tolerance) cert.violations.push_back(k);
        if (cert.rows[k].literal_slack < -tolerance) cert.literal_violations.push_back(k);
    }
    cert.side_conditions = check_side_conditions(coeffs, spec);
    cert.holds = cert.violations.empty() && cert.side_conditions.passes();
    return cert;
}

}  // namespace

void validate(const MappingSpec& map, const FiniteBipolarSpace& space) {
    const std::size_t nl = space.left_size();
    const std::size_t nr = space.right_size();
    if (map.left_map.size() != nl)
        throw InputError("map covers " + idx(map.left_map.size()) + " left points, space has " + idx(nl));
    if (map.right_map.size() != nr)
        throw InputError("map covers " + idx(map.right_map.size()) + " right points, space has " + idx(nr));
    const bool co = map.variance == Variance::Covariant;
    for (std::size_t i = 0; i < nl; ++i)
        if (map.left_map[i] >= (co ? nl : nr))
            throw InputError("image of left point '" + space.left[i] + "' is not a " + (co ? "left" : "right") +
                             " point");
    for (std::size_t j = 0; j < nr; ++j)
        if (map.right_map[j] >= (co ? nr : nl))
            throw InputError("image of right point '" + space.right[j] + "' is not a " + (co ? "right" : "left") +
                             " point");
    // A shared point has one image, read from either side.
    for (const auto& p : space.overlap) {
        IndexPair img = image_pair(map, p);
        if (!space.is_overlap(img.left, img.right))
            throw InputError("shared point (" + space.left[p.left] + ", " + space.right[p.right] +
                             ") has two different images: " + space.left[img.left] + " and " +
                             space.right[img.right]);
    }
}

IndexPair image_pair(const MappingSpec& map, IndexPair pair) {
    if (map.variance == Variance::Covariant) return {map.left_map[pair.left], map.right_map[pair.right]};
    return {map.right_map[pair.right], map.left_map[pair.left]};
}

bool CoefficientFamily::is_constant(std::size_t v) const {
    const auto& t = tables.at(v);
    for (const auto& row : t)
        for (double x : row)
            if (x != t[0][0]) return false;
    return true;
}

CoefficientFamily CoefficientFamily::constant(const std::vector<double>& values, std::size_t n_left,
                                              std::size_t n_right) {
    CoefficientFamily c;
    for (double v : values) c.tables.emplace_back(n_left, std::vector<double>(n_right, v));
    return c;
}

void validate(const CoefficientFamily& coeffs, const FiniteBipolarSpace& space) {
    if (coeffs.tables.size() < 2) throw InputError("coefficient family needs degree >= 1");
    for (std::size_t v = 0; v < coeffs.tables.size(); ++v)
        check_table(coeffs.tables[v], v, space.left_size(), space.right_size());
}

double polynomial_sum(const CoefficientFamily& coeffs, std::size_t i, std::size_t j, double d) {
    double sum = 0.0;
    double power = 1.0;
    for (std::size_t v = 0; v <= coeffs.degree(); ++v) {
        sum += coeffs.q(v, i, j) * power;
        power *= d;
    }
    return sum;
}

void validate(const ContractionSpec& spec, std::size_t degree) {
    if (!(spec.pi > 0.0 && spec.pi < 1.0)) throw InputError("pi must lie in (0, 1)");
    if (spec.rho_index < 1 || spec.rho_index > degree)
        throw InputError("rho_index must lie in 1.." + idx(degree));
    if (!(spec.Q > 0.0) || !std::isfinite(spec.Q)) throw InputError("Q must be positive");
    if (spec.upper_bounds) {
        if (spec.upper_bounds->size() != degree)
            throw InputError("W needs " + idx(degree) + " entries (v = 1.." + idx(degree) + ")");
        for (double w : *spec.upper_bounds)
            if (!(w > 0.0) || !std::isfinite(w)) throw InputError("every W_v must be positive");
    }
    if (spec.almost_terms) {
        if (spec.almost_terms->size() != degree + 1)
            throw InputError("H needs " + idx(degree + 1) + " entries (v = 0.." + idx(degree) + ")");
        for (double h : *spec.almost_terms)
            if (!(h >= 0.0) || !std::isfinite(h)) throw InputError("every H_v must be non-negative");
    }
}

bool SideConditionReport::passes() const {
    if (!lower.ok) return false;
    if (upper)
        for (const auto& u : *upper)
            if (!u.ok) return false;
    return true;
}

SideConditionReport check_side_conditions(const CoefficientFamily& coeffs, const ContractionSpec& spec) {
    SideConditionReport report;
    const auto& q0 = coeffs.tables.at(0);
    for (std::size_t i = 0; i < q0.size() && report.q0_zero; ++i)
        for (std::size_t j = 0; j < q0[i].size(); ++j)
            if (q0[i][j] != 0.0) {
                report.q0_zero = false;
                report.q0_witness = IndexPair{i, j};
                report.q0_witness_value = q0[i][j];
                break;
            }

    auto scan = [&](std::size_t v, double bound, bool lower) {
        BoundCheck check;
        check.bound = bound;
        const auto& t = coeffs.tables.at(v);
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = 0; j < t[i].size(); ++j) {
                bool ok = lower ? t[i][j] >= bound : t[i][j] <= bound;
                if (!ok) {
                    check.ok = false;
                    check.witness = IndexPair{i, j};
                    check.value = t[i][j];
                    return check;
                }
            }
        return check;
    };

    report.lower = scan(spec.rho_index, spec.Q, true);
    if (spec.upper_bounds) {
        report.upper.emplace();
        for (std::size_t v = 1; v <= coeffs.degree() && v <= spec.upper_bounds->size(); ++v)
            report.upper->push_back(scan(v, (*spec.upper_bounds)[v - 1], false));
    }
    return report;
}

ContractionCertificate verify_pc(const FiniteBipolarSpace& space, const MappingSpec& map,
                                 const CoefficientFamily& coeffs, const ContractionSpec& spec, double tolerance) {
    return evaluate(space, map, coeffs, spec, tolerance, ContractionKind::Polynomial);
}

ContractionCertificate verify_almost_pc(const FiniteBipolarSpace& space, const MappingSpec& map,
                                        const CoefficientFamily& coeffs, const ContractionSpec& spec,
                                        double tolerance) {
    if (!spec.almost_terms) throw InputError("almost polynomial contraction needs H terms");
    if (map.variance != Variance::Covariant)
        throw InputError("almost polynomial contraction is only defined for covariant maps");
    return evaluate(space, map, coeffs, spec, tolerance, ContractionKind::AlmostPolynomial);
}

bool implied_continuity(const ContractionCertificate& certificate, const SideConditionReport& side) {
    return certificate.holds && side.q0_zero && side.upper.has_value() && side.passes();
}

}  // namespace bfp
