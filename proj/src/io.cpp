#include "tropkit/io.hpp"

#include <fstream>
#include <sstream>

#include "tropkit/errors.hpp"

namespace tropkit {

namespace {

[[noreturn]] void bad(const std::string& source, const std::string& what) {
    throw ParseError(source + ": " + what);
}

Rational rat(const Json& j, const std::string& source, const std::string& field) {
    if (!j.is_string()) bad(source, field + ": rationals must be strings like \"3\" or \"-1/2\"");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const ParseError& e) {
        bad(source, field + ": " + e.what());
    }
}

QVec vec(const Json& j, int n, const std::string& source, const std::string& field) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        bad(source, field + ": expected an array of " + std::to_string(n) + " rational strings");
    QVec v;
    v.reserve(j.size());
    for (const auto& x : j) v.push_back(rat(x, source, field));
    return v;
}

Json vec_json(const QVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

} // namespace

Json qvec_to_json(const QVec& v) { return vec_json(v); }

Json zvec_to_json(const ZVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

LoadedCycle load_cycle_document(const std::string& text, const std::string& source) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::exception& e) {
        bad(source, std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) bad(source, "top level must be an object");
    if (!doc.contains("format_version") || doc["format_version"] != "1")
        bad(source, "format_version: expected \"1\"");
    if (!doc.contains("ambient_dim") || !doc["ambient_dim"].is_number_integer())
        bad(source, "ambient_dim: expected an integer");
    const int n = doc["ambient_dim"].get<int>();
    if (n < 0) bad(source, "ambient_dim: negative");
    if (n > dim_guard())
        bad(source, "ambient_dim: exceeds the dimension guard " + std::to_string(dim_guard()));

    LoadedCycle out;
    if (doc.contains("gamma_generators")) {
        if (!doc["gamma_generators"].is_array()) bad(source, "gamma_generators: expected array");
        for (const auto& g : doc["gamma_generators"])
            out.gamma_generators.push_back(rat(g, source, "gamma_generators"));
    }
    if (!doc.contains("cells") || !doc["cells"].is_array())
        bad(source, "cells: expected an array");
    std::vector<std::pair<Polyhedron, long long>> weighted;
    for (std::size_t ci = 0; ci < doc["cells"].size(); ++ci) {
        const Json& cell = doc["cells"][ci];
        const std::string where = "cells[" + std::to_string(ci) + "]";
        if (!cell.is_object()) bad(source, where + ": expected an object");
        if (!cell.contains("weight") || !cell["weight"].is_number_integer())
            bad(source, where + ".weight: expected an integer");
        QMat vertices, rays, lineality;
        if (!cell.contains("vertices") || !cell["vertices"].is_array() || cell["vertices"].empty())
            bad(source, where + ".vertices: expected a nonempty array of points");
        for (const auto& v : cell["vertices"]) vertices.push_back(vec(v, n, source, where + ".vertices"));
        if (cell.contains("rays"))
            for (const auto& r : cell["rays"]) rays.push_back(vec(r, n, source, where + ".rays"));
        if (cell.contains("lineality"))
            for (const auto& l : cell["lineality"]) lineality.push_back(vec(l, n, source, where + ".lineality"));
        Polyhedron p;
        try {
            p = canonicalize_from_vrep(n, vertices, rays, lineality);
        } catch (const ZeroVector&) {
            bad(source, where + ": zero ray or lineality vector");
        }
        weighted.emplace_back(std::move(p), cell["weight"].get<long long>());
    }
    // Check the intersection axiom on the document cells first, so that a
    // violation reports document cell positions even when some cells are
    // pruned for weight zero.
    for (std::size_t i = 0; i < weighted.size(); ++i)
        for (std::size_t j = i + 1; j < weighted.size(); ++j) {
            const Polyhedron meet = intersect(weighted[i].first, weighted[j].first);
            if (meet.is_empty()) continue;
            if (!is_face_of(meet, weighted[i].first) || !is_face_of(meet, weighted[j].first))
                throw IntersectionAxiomViolated(static_cast<int>(i), static_cast<int>(j));
        }
    out.cycle = make_cycle(n, weighted, &out.warnings, /*validate=*/false);
    out.report.input_cells = weighted.size();
    out.report.added_faces = out.cycle.complex.cells.size() - out.cycle.weights.size();
    for (const auto& [p, w] : weighted) {
        const int idx = w == 0 ? -1 : out.cycle.complex.find_cell(p);
        out.doc_cell_index.push_back(idx);
    }
    return out;
}

LoadedCycle load_cycle_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_cycle_document(ss.str(), path);
}

Json cycle_to_json(const TropicalCycle& c) {
    Json doc;
    doc["format_version"] = "1";
    doc["ambient_dim"] = c.complex.ambient_dim;
    Json cells = Json::array();
    for (const auto& [i, w] : c.weights) {
        const Polyhedron& cell = c.cell(i);
        Json jc;
        Json vs = Json::array();
        for (const auto& v : cell.vertices) vs.push_back(vec_json(v));
        jc["vertices"] = vs;
        Json rs = Json::array();
        for (const auto& r : cell.rays) rs.push_back(vec_json(r));
        jc["rays"] = rs;
        Json ls = Json::array();
        for (const auto& l : cell.lineality) ls.push_back(vec_json(l));
        jc["lineality"] = ls;
        jc["weight"] = w;
        cells.push_back(std::move(jc));
    }
    doc["cells"] = cells;
    return doc;
}

std::string save_cycle_document(const TropicalCycle& c) { return cycle_to_json(c).dump(2) + "\n"; }

LoadedFunction load_function_document(const std::string& text, const std::string& source,
                                      const LoadedCycle& on) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::exception& e) {
        bad(source, std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) bad(source, "top level must be an object");
    if (!doc.contains("kind") || !doc["kind"].is_string()) bad(source, "kind: expected a string");
    const std::string kind = doc["kind"].get<std::string>();
    const int n = on.cycle.complex.ambient_dim;

    LoadedFunction out;
    if (kind == "tropical_polynomial") {
        TropicalPolynomial g;
        const std::string mode = doc.value("mode", "max");
        if (mode == "max") g.mode = TropicalPolynomial::Mode::Max;
        else if (mode == "min") g.mode = TropicalPolynomial::Mode::Min;
        else bad(source, "mode: expected \"max\" or \"min\"");
        if (!doc.contains("terms") || !doc["terms"].is_array() || doc["terms"].empty())
            bad(source, "terms: expected a nonempty array");
        for (std::size_t i = 0; i < doc["terms"].size(); ++i) {
            const Json& t = doc["terms"][i];
            const std::string where = "terms[" + std::to_string(i) + "]";
            if (!t.is_object() || !t.contains("m")) bad(source, where + ": expected {m, c}");
            QVec m = vec(t["m"], n, source, where + ".m");
            Rational c = t.contains("c") ? rat(t["c"], source, where + ".c") : Rational(0);
            g.terms.emplace_back(std::move(m), std::move(c));
        }
        auto [refined, f] = refine(on.cycle, g);
        out.cycle = std::move(refined);
        out.func = std::move(f);
        out.was_polynomial = true;
        return out;
    }
    if (kind == "piecewise") {
        if (!doc.contains("pieces") || !doc["pieces"].is_array())
            bad(source, "pieces: expected an array");
        std::map<int, QuadraticForm> pieces;
        for (std::size_t i = 0; i < doc["pieces"].size(); ++i) {
            const Json& p = doc["pieces"][i];
            const std::string where = "pieces[" + std::to_string(i) + "]";
            if (!p.is_object() || !p.contains("cell") || !p["cell"].is_number_integer())
                bad(source, where + ".cell: expected a document cell index");
            const int doc_cell = p["cell"].get<int>();
            if (doc_cell < 0 || doc_cell >= static_cast<int>(on.doc_cell_index.size()))
                bad(source, where + ".cell: out of range");
            const int idx = on.doc_cell_index[static_cast<std::size_t>(doc_cell)];
            if (idx < 0) bad(source, where + ".cell: refers to a pruned cell");
            QVec lin = p.contains("linear") ? vec(p["linear"], n, source, where + ".linear")
                                            : zero_vec(n);
            Rational cst = p.contains("constant") ? rat(p["constant"], source, where + ".constant")
                                                  : Rational(0);
            QMat hess;
            if (p.contains("quadratic") && !p["quadratic"].is_null()) {
                if (!p["quadratic"].is_array() || static_cast<int>(p["quadratic"].size()) != n)
                    bad(source, where + ".quadratic: expected an " + std::to_string(n) + "x" +
                                    std::to_string(n) + " matrix");
                for (const auto& row : p["quadratic"])
                    hess.push_back(vec(row, n, source, where + ".quadratic"));
                for (int a = 0; a < n; ++a)
                    for (int b = a + 1; b < n; ++b)
                        if (hess[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] !=
                            hess[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)])
                            bad(source, where + ".quadratic: matrix must be symmetric");
            }
            if (!pieces.emplace(idx, QuadraticForm(std::move(hess), std::move(lin), std::move(cst)))
                     .second)
                bad(source, where + ": duplicate piece for cell " + std::to_string(doc_cell));
        }
        for (const auto& [i, w] : on.cycle.weights)
            if (!pieces.count(i))
                bad(source, "pieces: no piece for weighted cell with document index " +
                                std::to_string(i));
        PiecewiseFunction f(std::make_shared<TropicalCycle>(on.cycle), std::move(pieces));
        const ContinuityReport cont = check_continuity(f);
        if (!cont.continuous)
            bad(source, "pieces are discontinuous across face " +
                            std::to_string(cont.witness_face) + " (difference " +
                            cont.witness_delta.str() + ")");
        out.cycle = on.cycle;
        out.func = std::move(f);
        return out;
    }
    bad(source, "kind: expected \"tropical_polynomial\" or \"piecewise\"");
}

LoadedFunction load_function_file(const std::string& path, const LoadedCycle& on) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_function_document(ss.str(), path, on);
}

QVec parse_point(const std::string& csv, int expected_dim) {
    QVec out;
    std::string token;
    std::stringstream ss(csv);
    while (std::getline(ss, token, ',')) out.push_back(Rational::parse(token));
    if (expected_dim >= 0 && static_cast<int>(out.size()) != expected_dim)
        throw ParseError("point '" + csv + "': expected " + std::to_string(expected_dim) +
                         " coordinates");
    return out;
}

Json balancing_to_json(const BalancingReport& rep) {
    Json j;
    j["balanced"] = rep.balanced;
    j["faces_checked"] = rep.faces_checked;
    Json v = Json::array();
    for (const auto& viol : rep.violations)
        v.push_back({{"face", viol.face}, {"excess", zvec_to_json(viol.excess)}});
    j["violations"] = v;
    return j;
}

Json psh_to_json(const PshReport& rep) {
    Json j;
    j["verdict"] = rep.verdict;
    Json h = Json::array();
    for (const auto& x : rep.hessian_violations)
        h.push_back({{"cell", x.cell},
                     {"direction", qvec_to_json(x.direction)},
                     {"value", x.value.str()}});
    j["hessian_violations"] = h;
    Json c = Json::array();
    for (const auto& x : rep.corner_violations)
        c.push_back({{"face", x.face}, {"point", qvec_to_json(x.point)}, {"value", x.value.str()}});
    j["corner_violations"] = c;
    return j;
}

Json genericity_to_json(const GenericityCertificate& cert) {
    Json j;
    j["generic"] = cert.generic;
    j["offenders"] = cert.offenders;
    return j;
}

Json trace_to_json(const SlicingTrace& trace) {
    Json j;
    switch (trace.status) {
    case SlicingTrace::Status::Completed: j["status"] = "completed"; break;
    case SlicingTrace::Status::NotBalanced: j["status"] = "not_balanced"; break;
    case SlicingTrace::Status::NotPsh: j["status"] = "not_psh"; break;
    case SlicingTrace::Status::NotLocalMax: j["status"] = "not_local_max"; break;
    }
    Json nodes = Json::array();
    for (const auto& node : trace.nodes) {
        Json nj;
        nj["dimension"] = node.dimension;
        nj["cycle"] = cycle_to_json(node.cycle);
        if (node.leaf) {
            nj["leaf"] = true;
            Json edges = Json::array();
            for (const auto& e : node.edges)
                edges.push_back({{"weight", e.weight},
                                 {"direction", qvec_to_json(e.direction)},
                                 {"slope", e.slope.str()}});
            nj["edges"] = edges;
        } else {
            nj["leaf"] = false;
            nj["search_height"] = node.search_height;
            nj["constant_at_scale"] = node.constant_at_scale;
            if (!node.constant_at_scale) {
                nj["witness_point"] = qvec_to_json(node.witness_point);
                nj["witness_value"] = node.witness_value.str();
                nj["hyperplane"] = {{"normal", zvec_to_json(node.hyperplane.normal)},
                                    {"offset", node.hyperplane.offset.str()}};
                nj["certificate"] = genericity_to_json(node.certificate);
                nj["sample_seed"] = node.sample_seed;
                nj["child"] = node.child;
            }
        }
        nodes.push_back(std::move(nj));
    }
    j["nodes"] = nodes;
    return j;
}

Json verdict_to_json(const MaxPrincipleVerdict& v) {
    Json j;
    switch (v.status) {
    case MaxPrincipleVerdict::Status::LocallyConstant: j["status"] = "locally_constant"; break;
    case MaxPrincipleVerdict::Status::NotLocallyConstant: j["status"] = "not_locally_constant"; break;
    case MaxPrincipleVerdict::Status::NotLocalMax: j["status"] = "not_local_max"; break;
    case MaxPrincipleVerdict::Status::NotPsh: j["status"] = "not_psh"; break;
    }
    j["base_value"] = v.base_value.str();
    if (v.psh) j["psh"] = psh_to_json(*v.psh);
    if (v.local_max && v.local_max->blocking) {
        const auto& b = *v.local_max->blocking;
        j["blocking"] = {{"cell", b.cell},
                         {"direction", qvec_to_json(b.direction)},
                         {"slope", b.slope.str()},
                         {"quad", b.quad.str()}};
    }
    if (v.status == MaxPrincipleVerdict::Status::LocallyConstant) {
        Json cc = Json::array();
        for (const auto& p : v.constancy) cc.push_back(p.cell);
        j["constant_cells"] = cc;
    }
    if (v.status == MaxPrincipleVerdict::Status::NotLocallyConstant) {
        j["witness_point"] = qvec_to_json(v.witness_point);
        j["witness_value"] = v.witness_value.str();
    }
    return j;
}

} // namespace tropkit
