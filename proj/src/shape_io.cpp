#include "formfactor/shape_io.hpp"

#include "formfactor/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace ff {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what)
{
    throw Error(ErrorKind::ParseError, what);
}

} // namespace

shapes::Figure parse_shape(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object())
        fail("top level must be an object");
    if (!j.contains("vertices") || !j["vertices"].is_array())
        fail("missing array \"vertices\"");
    if (!j.contains("faces") || !j["faces"].is_array())
        fail("missing array \"faces\"");

    PolyhedronMesh mesh;
    if (j.contains("name")) {
        if (!j["name"].is_string())
            fail("\"name\" must be a string");
        mesh.name = j["name"].get<std::string>();
    }
    for (const auto& v : j["vertices"]) {
        if (!v.is_array() || v.size() != 3)
            fail("each vertex must be an array of 3 numbers");
        RealVec3 p;
        for (int i = 0; i < 3; ++i) {
            if (!v[i].is_number())
                fail("vertex coordinates must be numbers");
            p(i) = v[i].get<double>();
        }
        if (!p.allFinite())
            fail("vertex coordinates must be finite");
        mesh.vertices.push_back(p);
    }
    const auto nv = static_cast<long>(mesh.vertices.size());
    for (const auto& f : j["faces"]) {
        if (!f.is_array() || f.size() < 3)
            fail("each face must list at least 3 vertex indices");
        std::vector<int> face;
        for (const auto& idx : f) {
            if (!idx.is_number_integer())
                fail("face indices must be integers");
            const long k = idx.get<long>();
            if (k < 0 || k >= nv)
                fail("face index " + std::to_string(k) + " out of range");
            face.push_back(static_cast<int>(k));
        }
        mesh.faces.push_back(std::move(face));
    }
    if (mesh.faces.empty())
        fail("no faces");
    if (mesh.faces.size() == 1)
        return mesh.face_chain(0);
    return mesh;
}

shapes::Figure read_shape_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_shape(ss.str());
}

std::string format_shape(const shapes::Figure& figure, const std::string& name)
{
    std::vector<RealVec3> verts;
    std::vector<std::vector<int>> faces;
    std::string label = name;
    if (const auto* chain = std::get_if<VertexChain>(&figure)) {
        verts = chain->vertices;
        faces.emplace_back();
        for (std::size_t i = 0; i < chain->size(); ++i)
            faces.back().push_back(static_cast<int>(i));
        if (label.empty())
            label = "polygon";
    } else {
        const auto& mesh = std::get<PolyhedronMesh>(figure);
        verts = mesh.vertices;
        faces = mesh.faces;
        if (label.empty())
            label = mesh.name;
    }

    // One vertex / face per line; numbers in shortest round-trip form.
    std::ostringstream os;
    os << "{\n  \"name\": " << json(label).dump() << ",\n  \"vertices\": [\n";
    for (std::size_t i = 0; i < verts.size(); ++i) {
        os << "    [" << json(verts[i].x()).dump() << ", " << json(verts[i].y()).dump() << ", "
           << json(verts[i].z()).dump() << "]" << (i + 1 < verts.size() ? ",\n" : "\n");
    }
    os << "  ],\n  \"faces\": [\n";
    for (std::size_t k = 0; k < faces.size(); ++k) {
        os << "    " << json(faces[k]).dump() << (k + 1 < faces.size() ? ",\n" : "\n");
    }
    os << "  ]\n}\n";
    return os.str();
}

} // namespace ff
