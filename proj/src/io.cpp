#include "stablab/io.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include <json.hpp>

#include "stablab/errors.hpp"

namespace stablab {

using nlohmann::json;

namespace {

json parse_or_throw(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw malformed_input("invalid JSON");
    return j;
}

std::vector<VertexId> int_list(const json& j, const char* what) {
    if (!j.is_array()) throw malformed_input(std::string(what) + " must be an array");
    std::vector<VertexId> out;
    for (const auto& e : j) {
        if (!e.is_number_integer()) throw malformed_input(std::string(what) + " must hold integers");
        out.push_back(e.get<VertexId>());
    }
    return out;
}

}  // namespace

std::string complex_json(const SimplicialComplex& x) {
    json j;
    j["vertices"] = x.vertices();
    auto maximal = json::array();
    for (const Simplex& m : x.maximal_simplices()) maximal.push_back(m.vertices());
    j["maximal"] = std::move(maximal);
    return j.dump();
}

SimplicialComplex complex_from_json(const std::string& text) {
    json j = parse_or_throw(text);
    if (!j.is_object() || !j.contains("vertices") || !j.contains("maximal"))
        throw malformed_input("simplicial JSON needs \"vertices\" and \"maximal\"");
    std::vector<VertexId> declared = int_list(j["vertices"], "vertices");
    if (!j["maximal"].is_array()) throw malformed_input("maximal must be an array");
    std::vector<Simplex> maximal;
    for (const auto& e : j["maximal"]) maximal.push_back(Simplex(int_list(e, "maximal entry")));
    SimplicialComplex out = SimplicialComplex::from_maximal(std::move(maximal));
    std::sort(declared.begin(), declared.end());
    if (declared != out.vertices())
        throw malformed_input("declared vertex list disagrees with the maximal simplices");
    return out;
}

std::string semi_complex_json(const SemiSimplicialComplex& x) {
    json cells = json::object();
    json faces = json::object();
    for (int d = 0; d <= x.dim(); ++d) {
        auto ids = json::array();
        for (std::size_t c = 0; c < x.cells(d); ++c) ids.push_back(c);
        cells[std::to_string(d)] = std::move(ids);
        if (d == 0) continue;
        auto triples = json::array();
        for (std::size_t c = 0; c < x.cells(d); ++c)
            for (std::size_t i = 0; i <= static_cast<std::size_t>(d); ++i)
                triples.push_back(json::array({c, i, x.face(d, c, i)}));
        faces[std::to_string(d)] = std::move(triples);
    }
    json j;
    j["cells"] = std::move(cells);
    j["faces"] = std::move(faces);
    return j.dump();
}

SemiSimplicialComplex semi_complex_from_json(const std::string& text) {
    json j = parse_or_throw(text);
    if (!j.is_object() || !j.contains("cells") || !j.contains("faces"))
        throw malformed_input("semi-simplicial JSON needs \"cells\" and \"faces\"");
    const json& cells = j["cells"];
    const json& faces = j["faces"];
    if (!cells.is_object() || !faces.is_object())
        throw malformed_input("cells and faces must be objects keyed by dimension");

    std::map<int, std::size_t> counts_by_dim;
    for (const auto& [key, ids] : cells.items()) {
        int d = 0;
        try {
            d = std::stoi(key);
        } catch (...) {
            throw malformed_input("cell dimension keys must be integers");
        }
        if (d < 0) throw malformed_input("cell dimensions must be nonnegative");
        std::vector<VertexId> listed = int_list(ids, "cell list");
        for (std::size_t i = 0; i < listed.size(); ++i)
            if (listed[i] != static_cast<VertexId>(i))
                throw malformed_input("cell lists must be 0..count-1 in order");
        counts_by_dim[d] = listed.size();
    }
    if (counts_by_dim.empty()) return SemiSimplicialComplex();
    int top = counts_by_dim.rbegin()->first;
    std::vector<std::size_t> counts(static_cast<std::size_t>(top) + 1, 0);
    for (auto [d, c] : counts_by_dim) counts[static_cast<std::size_t>(d)] = c;

    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    std::vector<std::vector<std::vector<std::size_t>>> tables(counts.size());
    for (int d = 1; d <= top; ++d)
        tables[static_cast<std::size_t>(d)].assign(
            counts[static_cast<std::size_t>(d)],
            std::vector<std::size_t>(static_cast<std::size_t>(d) + 1, kUnset));
    for (const auto& [key, triples] : faces.items()) {
        int d = 0;
        try {
            d = std::stoi(key);
        } catch (...) {
            throw malformed_input("face dimension keys must be integers");
        }
        if (d < 1 || d > top) throw malformed_input("face table dimension out of range");
        if (!triples.is_array()) throw malformed_input("face table must be an array");
        for (const auto& t : triples) {
            std::vector<VertexId> v = int_list(t, "face triple");
            if (v.size() != 3) throw malformed_input("face entries must be [cell, i, face] triples");
            auto c = static_cast<std::size_t>(v[0]);
            auto i = static_cast<std::size_t>(v[1]);
            auto f = static_cast<std::size_t>(v[2]);
            if (v[0] < 0 || v[1] < 0 || v[2] < 0 || c >= counts[static_cast<std::size_t>(d)] ||
                i > static_cast<std::size_t>(d) || f >= counts[static_cast<std::size_t>(d) - 1])
                throw malformed_input("face triple out of range");
            auto& slot = tables[static_cast<std::size_t>(d)][c][i];
            if (slot != kUnset) throw malformed_input("duplicate face assignment");
            slot = f;
        }
    }
    for (int d = 1; d <= top; ++d)
        for (const auto& row : tables[static_cast<std::size_t>(d)])
            for (std::size_t f : row)
                if (f == kUnset) throw malformed_input("incomplete face table");
    return SemiSimplicialComplex(std::move(counts), std::move(tables));
}

ParsedComplex any_complex_from_json(const std::string& text) {
    json j = parse_or_throw(text);
    ParsedComplex out;
    if (j.is_object() && j.contains("maximal")) {
        out.is_simplicial = true;
        out.simplicial = complex_from_json(text);
    } else if (j.is_object() && j.contains("cells")) {
        out.is_simplicial = false;
        out.semi = semi_complex_from_json(text);
    } else {
        throw malformed_input("unrecognized complex JSON layout");
    }
    return out;
}

}  // namespace stablab
