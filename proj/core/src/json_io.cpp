#include "kstab/json_io.hpp"

#include <json.hpp>

#include "kstab/errors.hpp"

namespace kstab {

using nlohmann::json;

namespace {

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

Rat rat_field(const json& j, const std::string& where) {
    if (!j.is_string())
        throw ParseError(where + ": rationals must be decimal-digit strings like \"3/4\"");
    return parse_rational(j.get<std::string>());
}

RatVec rat_vector(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array of rational strings");
    RatVec out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rat_field(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

PLConvexFunction parse_function(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("type")) throw ParseError(where + ": expected {\"type\": ...}");
    const std::string type = j.at("type").get<std::string>();
    if (type == "max_affine") {
        if (!j.contains("pieces") || !j.at("pieces").is_array() || j.at("pieces").empty())
            throw ParseError(where + ": max_affine needs a nonempty \"pieces\" array");
        std::vector<AffinePiece> pieces;
        for (std::size_t i = 0; i < j.at("pieces").size(); ++i) {
            const json& p = j.at("pieces")[i];
            const std::string pw = where + ".pieces[" + std::to_string(i) + "]";
            AffinePiece piece;
            piece.grad = rat_vector(p.at("grad"), pw + ".grad");
            piece.constant = rat_field(p.at("const"), pw + ".const");
            pieces.push_back(std::move(piece));
        }
        return PLConvexFunction::max_affine(std::move(pieces));
    }
    if (type == "node_values") {
        TriangulationData tri;
        for (std::size_t i = 0; i < j.at("nodes").size(); ++i)
            tri.nodes.push_back(rat_vector(j.at("nodes")[i], where + ".nodes[" + std::to_string(i) + "]"));
        for (const auto& s : j.at("simplices")) tri.simplices.push_back(s.get<std::vector<int>>());
        RatVec values = rat_vector(j.at("values"), where + ".values");
        return PLConvexFunction::node_values(std::move(tri), std::move(values));
    }
    throw ParseError(where + ": unknown function type '" + type + "'");
}

TriangulationData parse_triangulation(const json& j, const std::string& where) {
    TriangulationData tri;
    if (!j.is_object() || !j.contains("nodes") || !j.contains("simplices"))
        throw ParseError(where + ": expected {\"nodes\": [...], \"simplices\": [...]}");
    for (std::size_t i = 0; i < j.at("nodes").size(); ++i)
        tri.nodes.push_back(rat_vector(j.at("nodes")[i], where + ".nodes[" + std::to_string(i) + "]"));
    for (const auto& s : j.at("simplices")) tri.simplices.push_back(s.get<std::vector<int>>());
    return tri;
}

}  // namespace

ToricInput parse_toric_input(const std::string& json_text) {
    const json doc = parse_document(json_text);
    if (!doc.is_object() || !doc.contains("vertices"))
        throw ParseError("toric input: missing \"vertices\"");

    ToricInput in;
    std::vector<RatVec> verts;
    for (std::size_t i = 0; i < doc.at("vertices").size(); ++i)
        verts.push_back(rat_vector(doc.at("vertices")[i], "vertices[" + std::to_string(i) + "]"));
    in.polytope = LatticePolytope::from_vertices(std::move(verts));

    if (doc.contains("functions")) {
        for (std::size_t i = 0; i < doc.at("functions").size(); ++i)
            in.functions.push_back(parse_function(doc.at("functions")[i], "functions[" + std::to_string(i) + "]"));
    }
    for (const auto& f : in.functions)
        if (f.dimension() != in.polytope.dimension())
            throw ParseError("toric input: function dimension differs from the polytope dimension");

    if (doc.contains("labels")) {
        in.labels = doc.at("labels").get<std::vector<std::string>>();
        if (in.labels.size() != in.functions.size())
            throw ParseError("toric input: one label per function required");
    } else {
        for (std::size_t i = 0; i < in.functions.size(); ++i) in.labels.push_back("f" + std::to_string(i));
    }

    if (doc.contains("shifts")) {
        in.shifts = rat_vector(doc.at("shifts"), "shifts");
        if (in.shifts.size() != in.functions.size())
            throw ParseError("toric input: one shift per function required");
    } else {
        for (const auto& f : in.functions) in.shifts.push_back(f.max_over(in.polytope));
    }

    if (doc.contains("triangulation"))
        in.triangulation = parse_triangulation(doc.at("triangulation"), "triangulation");
    if (doc.contains("k_samples")) in.k_samples = doc.at("k_samples").get<std::vector<long>>();
    if (doc.contains("resolution")) in.resolution = doc.at("resolution").get<int>();
    if (doc.contains("max_iterations")) in.max_iterations = doc.at("max_iterations").get<long>();
    if (doc.contains("seed")) in.seed = doc.at("seed").get<std::uint64_t>();
    return in;
}

std::string model_to_json(const EquivariantModel& model) {
    json doc;
    doc["n"] = model.hilbert().n;
    doc["r"] = model.exponent_r();
    doc["a0"] = rat_to_string(model.hilbert().a0);
    doc["a1"] = rat_to_string(model.hilbert().a1);
    doc["actions"] = json::array();
    for (const auto& a : model.actions()) {
        json entry;
        entry["label"] = a.label;
        entry["b0"] = rat_to_string(a.weight.b0);
        entry["b1"] = rat_to_string(a.weight.b1);
        doc["actions"].push_back(entry);
    }
    doc["d0"] = json::array();
    for (std::size_t i = 0; i < model.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < model.size(); ++j) row.push_back(rat_to_string(model.d0().at(i, j)));
        doc["d0"].push_back(row);
    }
    return doc.dump(2) + "\n";
}

EquivariantModel model_from_json(const std::string& json_text) {
    const json doc = parse_document(json_text);
    return [&doc]() {
        if (!doc.is_object()) throw ParseError("model: expected an object");
        for (const char* key : {"n", "r", "a0", "a1", "actions", "d0"})
            if (!doc.contains(key)) throw ParseError(std::string("model: missing field \"") + key + "\"");
        HilbertData h;
        h.n = doc.at("n").get<int>();
        h.a0 = rat_field(doc.at("a0"), "model.a0");
        h.a1 = rat_field(doc.at("a1"), "model.a1");
        const int r = doc.at("r").get<int>();
        std::vector<ActionData> actions;
        for (std::size_t i = 0; i < doc.at("actions").size(); ++i) {
            const json& a = doc.at("actions")[i];
            const std::string where = "model.actions[" + std::to_string(i) + "]";
            ActionData act;
            act.label = a.at("label").get<std::string>();
            act.weight.b0 = rat_field(a.at("b0"), where + ".b0");
            act.weight.b1 = rat_field(a.at("b1"), where + ".b1");
            actions.push_back(std::move(act));
        }
        const json& d = doc.at("d0");
        RatMatrix d0(actions.size(), actions.size());
        if (d.size() != actions.size()) throw ParseError("model.d0: row count must match the action count");
        for (std::size_t i = 0; i < actions.size(); ++i) {
            if (d[i].size() != actions.size()) throw ParseError("model.d0: ragged matrix");
            for (std::size_t j = 0; j < actions.size(); ++j)
                d0.at(i, j) = rat_field(d[i][j], "model.d0[" + std::to_string(i) + "]");
        }
        return EquivariantModel(h, std::move(actions), std::move(d0), r);
    }();
}

VerifyInput parse_verify_input(const std::string& json_text) {
    const json doc = parse_document(json_text);
    if (!doc.is_object() || !doc.contains("model") || !doc.contains("candidate"))
        throw ParseError("verify input: need \"model\" and \"candidate\"");
    VerifyInput in{model_from_json(doc.at("model").dump()), {}, {}, false};
    in.candidate = rat_vector(doc.at("candidate"), "candidate");

    if (!doc.contains("directions")) throw ParseError("verify input: need \"directions\" (list or \"span\")");
    const json& dirs = doc.at("directions");
    if (dirs.is_string()) {
        if (dirs.get<std::string>() != "span")
            throw ParseError("verify input: directions must be a list or the keyword \"span\"");
        in.span = true;
        // basis directions and their negations: nonnegativity on both signs
        // pins relative DF to zero on the whole orthogonal complement
        for (std::size_t i = 0; i < in.model.size(); ++i) {
            LieAlgebraPoint e(in.model.size(), Rat(0));
            e[i] = 1;
            in.directions.push_back(e);
            e[i] = -1;
            in.directions.push_back(e);
        }
    } else {
        for (std::size_t i = 0; i < dirs.size(); ++i)
            in.directions.push_back(rat_vector(dirs[i], "directions[" + std::to_string(i) + "]"));
    }
    return in;
}

}  // namespace kstab
