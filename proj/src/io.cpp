#include "bfp/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bfp::io {

namespace {

struct Ctx {
    const std::string& origin;
    std::string path;

    Ctx at(const std::string& key) const { return {origin, path + "/" + key}; }
    Ctx at(std::size_t i) const { return {origin, path + "/" + std::to_string(i)}; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError(origin + ": " + (path.empty() ? "/" : path) + ": " + msg);
    }
};

const Json& member(const Json& doc, const Ctx& ctx, const char* key) {
    if (!doc.is_object()) ctx.fail("expected an object");
    auto it = doc.find(key);
    if (it == doc.end()) ctx.fail(std::string("missing field \"") + key + "\"");
    return *it;
}

double number(const Json& v, const Ctx& ctx) {
    if (!v.is_number()) ctx.fail("expected a number");
    double x = v.get<double>();
    if (!std::isfinite(x)) ctx.fail("expected a finite number");
    return x;
}

std::size_t count(const Json& v, const Ctx& ctx) {
    if (!v.is_number_integer() || v.get<long long>() < 0) ctx.fail("expected a non-negative integer");
    return static_cast<std::size_t>(v.get<long long>());
}

std::string text(const Json& v, const Ctx& ctx) {
    if (!v.is_string()) ctx.fail("expected a string");
    return v.get<std::string>();
}

const Json& array(const Json& v, const Ctx& ctx) {
    if (!v.is_array()) ctx.fail("expected an array");
    return v;
}

std::vector<double> numbers(const Json& v, const Ctx& ctx) {
    std::vector<double> out;
    for (std::size_t i = 0; i < array(v, ctx).size(); ++i) out.push_back(number(v[i], ctx.at(i)));
    return out;
}

std::vector<std::string> labels(const Json& v, const Ctx& ctx) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < array(v, ctx).size(); ++i) out.push_back(text(v[i], ctx.at(i)));
    return out;
}

// Re-raises an InputError from a validator with the document origin attached.
template <class F>
void checked(const std::string& origin, F&& f) {
    try {
        f();
    } catch (const InputError& e) {
        throw InputError(origin + ": " + e.what());
    }
}

Json table_to_json(const CoefficientTable& t) {
    Json rows = Json::array();
    for (const auto& row : t) rows.push_back(row);
    return rows;
}

}  // namespace

Json to_json(const FiniteBipolarSpace& space) {
    Json doc;
    doc["left"] = space.left;
    doc["right"] = space.right;
    Json overlap = Json::array();
    for (const auto& p : space.overlap) overlap.push_back({p.left, p.right});
    doc["overlap"] = overlap;
    Json dist = Json::array();
    for (const auto& row : space.dist) dist.push_back(row);
    doc["dist"] = dist;
    return doc;
}

FiniteBipolarSpace space_from_json(const Json& doc, const std::string& origin) {
    Ctx root{origin, ""};
    FiniteBipolarSpace s;
    s.left = labels(member(doc, root, "left"), root.at("left"));
    s.right = labels(member(doc, root, "right"), root.at("right"));
    if (doc.contains("overlap")) {
        Ctx c = root.at("overlap");
        const Json& ov = array(doc["overlap"], c);
        for (std::size_t k = 0; k < ov.size(); ++k) {
            Ctx e = c.at(k);
            if (!ov[k].is_array() || ov[k].size() != 2) e.fail("expected a pair [left index, right index]");
            s.overlap.push_back({count(ov[k][0], e.at(std::size_t{0})), count(ov[k][1], e.at(std::size_t{1}))});
        }
    }
    Ctx dc = root.at("dist");
    const Json& dist = array(member(doc, root, "dist"), dc);
    for (std::size_t i = 0; i < dist.size(); ++i) s.dist.push_back(numbers(dist[i], dc.at(i)));
    checked(origin, [&] { validate(s); });
    return s;
}

Json to_json(const MappingSpec& map, const FiniteBipolarSpace& space) {
    const bool co = map.variance == Variance::Covariant;
    Json doc;
    doc["variance"] = co ? "covariant" : "contravariant";
    Json l = Json::array();
    for (auto k : map.left_map) l.push_back(co ? space.left[k] : space.right[k]);
    Json r = Json::array();
    for (auto k : map.right_map) r.push_back(co ? space.right[k] : space.left[k]);
    doc["left_map"] = l;
    doc["right_map"] = r;
    return doc;
}

MappingSpec map_from_json(const Json& doc, const FiniteBipolarSpace& space, const std::string& origin) {
    Ctx root{origin, ""};
    MappingSpec m;
    std::string variance = text(member(doc, root, "variance"), root.at("variance"));
    if (variance == "covariant")
        m.variance = Variance::Covariant;
    else if (variance == "contravariant")
        m.variance = Variance::Contravariant;
    else
        root.at("variance").fail("expected \"covariant\" or \"contravariant\"");
    const bool co = m.variance == Variance::Covariant;

    auto side = [&](const char* key, bool to_left) {
        Ctx c = root.at(key);
        const Json& arr = array(member(doc, root, key), c);
        const auto& target = to_left ? space.left : space.right;
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < arr.size(); ++k) {
            Ctx e = c.at(k);
            if (arr[k].is_string()) {
                auto name = arr[k].get<std::string>();
                auto it = std::find(target.begin(), target.end(), name);
                if (it == target.end())
                    e.fail("unknown " + std::string(to_left ? "left" : "right") + " label '" + name + "'");
                out.push_back(static_cast<std::size_t>(it - target.begin()));
            } else {
                std::size_t idx = count(arr[k], e);
                if (idx >= target.size()) e.fail("index out of range");
                out.push_back(idx);
            }
        }
        return out;
    };
    m.left_map = side("left_map", co);
    m.right_map = side("right_map", !co);
    checked(origin, [&] { validate(m, space); });
    return m;
}

Json to_json(const CoefficientFile& file) {
    const auto& c = file.coeffs;
    const auto& s = file.spec;
    Json doc;
    doc["degree"] = c.degree();
    doc["pi"] = s.pi;
    doc["rho_index"] = s.rho_index;
    doc["Q"] = s.Q;
    if (s.upper_bounds) doc["W"] = *s.upper_bounds;
    if (s.almost_terms) doc["H"] = *s.almost_terms;
    Json q = Json::array();
    for (std::size_t v = 0; v <= c.degree(); ++v) {
        if (c.is_constant(v) && !c.tables[v].empty() && !c.tables[v][0].empty())
            q.push_back(c.tables[v][0][0]);
        else
            q.push_back(table_to_json(c.tables[v]));
    }
    doc["q"] = q;
    return doc;
}

CoefficientFile coefficients_from_json(const Json& doc, const FiniteBipolarSpace& space, const std::string& origin) {
    Ctx root{origin, ""};
    CoefficientFile f;
    const std::size_t degree = count(member(doc, root, "degree"), root.at("degree"));
    if (degree < 1) root.at("degree").fail("degree must be >= 1");
    f.spec.pi = number(member(doc, root, "pi"), root.at("pi"));
    f.spec.rho_index = count(member(doc, root, "rho_index"), root.at("rho_index"));
    f.spec.Q = number(member(doc, root, "Q"), root.at("Q"));
    if (doc.contains("W")) f.spec.upper_bounds = numbers(doc["W"], root.at("W"));
    if (doc.contains("H")) {
        f.spec.almost_terms = numbers(doc["H"], root.at("H"));
        for (std::size_t k = 0; k < f.spec.almost_terms->size(); ++k)
            if (!((*f.spec.almost_terms)[k] > 0.0)) root.at("H").at(k).fail("H values must be positive");
    }

    Ctx qc = root.at("q");
    const Json& q = array(member(doc, root, "q"), qc);
    if (q.size() != degree + 1)
        qc.fail("expected " + std::to_string(degree + 1) + " entries (q_0 .. q_" + std::to_string(degree) + ")");
    const std::size_t nl = space.left_size();
    const std::size_t nr = space.right_size();
    for (std::size_t v = 0; v <= degree; ++v) {
        Ctx e = qc.at(v);
        if (q[v].is_number()) {
            f.coeffs.tables.emplace_back(nl, std::vector<double>(nr, number(q[v], e)));
            continue;
        }
        CoefficientTable t;
        const Json& rows = array(q[v], e);
        if (rows.size() != nl) e.fail("expected " + std::to_string(nl) + " rows");
        for (std::size_t i = 0; i < nl; ++i) {
            t.push_back(numbers(rows[i], e.at(i)));
            if (t.back().size() != nr) e.at(i).fail("expected " + std::to_string(nr) + " entries");
        }
        f.coeffs.tables.push_back(std::move(t));
    }
    checked(origin, [&] {
        validate(f.coeffs, space);
        validate(f.spec, degree);
    });
    return f;
}

Json to_json(const FractionalBVP& bvp) {
    Json doc;
    doc["order"] = bvp.order;
    doc["omega"] = bvp.omega_source;
    doc["sigma"] = bvp.sigma;
    doc["grid_n"] = bvp.grid_n;
    doc["tol"] = bvp.tol;
    doc["max_iter"] = bvp.max_iter;
    return doc;
}

FractionalBVP bvp_from_json(const Json& doc, const std::string& origin) {
    Ctx root{origin, ""};
    FractionalBVP b;
    b.order = number(member(doc, root, "order"), root.at("order"));
    std::string omega = text(member(doc, root, "omega"), root.at("omega"));
    b.sigma = number(member(doc, root, "sigma"), root.at("sigma"));
    b.grid_n = count(member(doc, root, "grid_n"), root.at("grid_n"));
    b.tol = number(member(doc, root, "tol"), root.at("tol"));
    b.max_iter = count(member(doc, root, "max_iter"), root.at("max_iter"));
    set_omega(b, omega);
    checked(origin, [&] { validate(b); });
    return b;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError(path + ": cannot write file");
    out << contents;
    if (!out) throw InputError(path + ": write failed");
}

Json read_json_file(const std::string& path) {
    std::string contents = read_text_file(path);
    try {
        return Json::parse(contents);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path + ": invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

FiniteBipolarSpace load_space(const std::string& path) { return space_from_json(read_json_file(path), path); }

MappingSpec load_map(const std::string& path, const FiniteBipolarSpace& space) {
    return map_from_json(read_json_file(path), space, path);
}

CoefficientFile load_coefficients(const std::string& path, const FiniteBipolarSpace& space) {
    return coefficients_from_json(read_json_file(path), space, path);
}

FractionalBVP load_bvp(const std::string& path) { return bvp_from_json(read_json_file(path), path); }

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace bfp::io
