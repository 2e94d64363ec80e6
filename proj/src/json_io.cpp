#include "systo/json_io.hpp"

#include <fstream>

#include "systo/systolize.hpp"

namespace systo {

using nlohmann::json;

namespace {

json metadata_to_json(const Metadata& md) {
    json j;
    j["provenance"] = md.provenance;
    j["rank"] = md.rank;
    j["radius"] = md.radius;
    j["systolized"] = md.systolized;
    j["case"] = md.case_label;
    j["exponents"] = md.exponents;
    j["generator_names"] = md.generator_names;
    j["slot_labels"] = md.slot_labels;
    j["slot_exponents"] = md.slot_exponents;
    j["chambers"] = md.chambers;
    j["chamber_distances"] = md.chamber_distances;
    j["notes"] = md.notes;
    return j;
}

Metadata metadata_from_json(const json& j) {
    Metadata md;
    if (!j.is_object()) return md;
    md.provenance = j.value("provenance", std::string{});
    md.rank = j.value("rank", 0);
    md.radius = j.value("radius", -1);
    md.systolized = j.value("systolized", false);
    md.case_label = j.value("case", std::string{});
    if (j.contains("exponents")) md.exponents = j["exponents"].get<std::vector<int>>();
    if (j.contains("generator_names"))
        md.generator_names = j["generator_names"].get<std::vector<std::string>>();
    if (j.contains("slot_labels"))
        md.slot_labels = j["slot_labels"].get<std::vector<std::string>>();
    if (j.contains("slot_exponents"))
        md.slot_exponents = j["slot_exponents"].get<std::vector<int>>();
    if (j.contains("chambers")) md.chambers = j["chambers"].get<std::vector<std::vector<int>>>();
    if (j.contains("chamber_distances"))
        md.chamber_distances = j["chamber_distances"].get<std::vector<int>>();
    if (j.contains("notes")) md.notes = j["notes"].get<std::map<std::string, std::string>>();
    return md;
}

} // namespace

json complex_to_json(const TypedComplex& complex) {
    json j;
    j["vertices"] = json::array();
    for (int v = 0; v < complex.vertex_count(); ++v) {
        j["vertices"].push_back({{"id", v},
                                 {"type", complex.vertices[v].type},
                                 {"origin", complex.vertices[v].origin}});
    }
    j["edges"] = json::array();
    for (size_t i = 0; i < complex.edges.size(); ++i) {
        j["edges"].push_back(json::array({complex.edges[i][0], complex.edges[i][1],
                                          edge_origin_name(complex.edge_origins[i])}));
    }
    j["maximal_simplices"] = complex.maximal_simplices;
    j["metadata"] = metadata_to_json(complex.metadata);
    return j;
}

TypedComplex complex_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges") ||
        !j.contains("maximal_simplices"))
        throw InputError("complex JSON must carry vertices, edges and maximal_simplices");
    TypedComplex out;
    const auto& vs = j["vertices"];
    out.vertices.resize(vs.size());
    for (const auto& v : vs) {
        int id = v.at("id").get<int>();
        if (id < 0 || id >= static_cast<int>(vs.size()))
            throw InputError("vertex id out of range");
        out.vertices[id] = {v.at("type").get<std::string>(), v.value("origin", "original")};
    }
    std::vector<std::pair<std::array<int, 2>, EdgeOrigin>> edge_list;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() < 2) throw InputError("malformed edge entry");
        int u = e[0].get<int>(), v = e[1].get<int>();
        if (u > v) std::swap(u, v);
        edge_list.emplace_back(std::array<int, 2>{u, v},
                               e.size() > 2 ? edge_origin_from_name(e[2].get<std::string>())
                                            : EdgeOrigin::Original);
    }
    std::sort(edge_list.begin(), edge_list.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [edge, origin] : edge_list) {
        if (!out.edges.empty() && out.edges.back() == edge) continue;
        out.edges.push_back(edge);
        out.edge_origins.push_back(origin);
    }
    out.maximal_simplices = j["maximal_simplices"].get<std::vector<std::vector<int>>>();
    for (auto& s : out.maximal_simplices) std::sort(s.begin(), s.end());
    std::sort(out.maximal_simplices.begin(), out.maximal_simplices.end());
    if (j.contains("metadata")) out.metadata = metadata_from_json(j["metadata"]);
    if (out.metadata.provenance.empty()) out.metadata.provenance = "ingested";
    validate_complex(out);
    return out;
}

std::string complex_to_canonical_string(const TypedComplex& complex) {
    return complex_to_json(complex).dump(2) + "\n";
}

json report_to_json(const VerificationReport& report) {
    json j;
    j["check_name"] = report.check_name;
    j["scanned"] = report.scanned;
    j["skipped_boundary"] = report.skipped_boundary;
    j["margin_used"] = report.margin_used;
    j["passed"] = report.passed();
    j["violations"] = json::array();
    for (const auto& v : report.violations) {
        json jv;
        jv["kind"] = v.kind;
        jv["vertices"] = v.vertices;
        jv["detail"] = v.detail;
        if (v.cycle) {
            jv["cycle"] = {{"vertices", v.cycle->vertices},
                           {"length", v.cycle->length},
                           {"context", v.cycle->context}};
        }
        j["violations"].push_back(std::move(jv));
    }
    return j;
}

std::string report_to_canonical_string(const VerificationReport& report) {
    return report_to_json(report).dump(2) + "\n";
}

namespace {

std::string vertex_color(const TypedComplex& complex, int v) {
    const auto& type = complex.vertices[v].type;
    const auto& slots = complex.metadata.slot_labels;
    if (complex.metadata.rank == 3 && slots.size() == 3) {
        // the figure convention: type 2 red, type k green, type m blue
        int slot2 = 0, slotk = 1, slotm = 2;
        try {
            Rank3Designation d =
                designate_rank3(system_from_metadata(complex.metadata), /*force=*/true);
            if (!d.all_geq3) {
                slot2 = d.slot2;
                slotk = d.slotk;
                slotm = d.slotm;
            }
        } catch (const std::exception&) {
        }
        if (type == slots[slot2]) return "red";
        if (type == slots[slotk]) return "green";
        if (type == slots[slotm]) return "blue";
    }
    if (type == "a") return "red";
    if (type == "b") return "orange";
    if (type == "c") return "green";
    if (type == "d") return "blue";
    return "lightgray";
}

const char* edge_color(EdgeOrigin origin) {
    switch (origin) {
        case EdgeOrigin::Original: return "black";
        case EdgeOrigin::Friend: return "green";
        case EdgeOrigin::Acquaintance: return "purple";
        case EdgeOrigin::Derived: return "gray";
    }
    return "black";
}

} // namespace

std::string export_dot(const TypedComplex& complex) {
    std::string out = "graph complex {\n  node [style=filled];\n";
    for (int v = 0; v < complex.vertex_count(); ++v) {
        out += "  v" + std::to_string(v) + " [label=\"" + std::to_string(v) + ":" +
               complex.vertices[v].type + "\" fillcolor=" + vertex_color(complex, v) + "];\n";
    }
    for (size_t i = 0; i < complex.edges.size(); ++i) {
        out += "  v" + std::to_string(complex.edges[i][0]) + " -- v" +
               std::to_string(complex.edges[i][1]) + " [color=" +
               edge_color(complex.edge_origins[i]) + "];\n";
    }
    out += "}\n";
    return out;
}

TypedComplex read_complex_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("bad JSON in " + path + ": " + e.what());
    }
    return complex_from_json(j);
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << contents;
}

CoxeterSystem system_from_json(const json& j) {
    if (!j.is_object()) throw InputError("system description must be a JSON object");
    int rank = j.value("rank", 0);
    CoxeterSystem sys;
    if (j.contains("exponents")) {
        auto values = j["exponents"].get<std::vector<int>>();
        if (rank == 0) rank = values.size() == 3 ? 3 : 4;
        if (rank == 3 && values.size() == 3) {
            sys = CoxeterSystem::triangle(values[0], values[1], values[2]);
        } else if (rank == 4 && values.size() == 6) {
            std::array<int, 6> labels;
            std::copy(values.begin(), values.end(), labels.begin());
            sys = CoxeterSystem::tetrahedral(labels);
        } else {
            throw InputError("system description: exponent count does not match the rank");
        }
    } else if (j.contains("exponent_matrix")) {
        auto matrix = j["exponent_matrix"].get<std::vector<std::vector<int>>>();
        rank = static_cast<int>(matrix.size());
        if (rank != 3 && rank != 4) throw InputError("exponent matrix must be 3x3 or 4x4");
        sys.rank = rank;
        for (int i = 0; i < rank; ++i) {
            if (static_cast<int>(matrix[i].size()) != rank)
                throw InputError("exponent matrix must be square");
            for (int jj = 0; jj < rank; ++jj) sys.exp[i][jj] = matrix[i][jj];
        }
        sys.generator_names.assign(rank, "");
        for (int i = 0; i < rank; ++i) sys.generator_names[i] = "g" + std::to_string(i);
    } else {
        throw InputError("system description needs exponents or an exponent_matrix");
    }
    if (j.contains("generator_names")) {
        sys.generator_names = j["generator_names"].get<std::vector<std::string>>();
    }
    sys.validate();
    return sys;
}

CoxeterSystem read_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("bad JSON in " + path + ": " + e.what());
    }
    return system_from_json(j);
}

} // namespace systo
