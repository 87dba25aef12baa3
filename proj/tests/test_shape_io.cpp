#include "formfactor/shape_io.hpp"

#include <doctest.h>

using namespace ff;

TEST_CASE("round trip of a polyhedron")
{
    const auto cube = shapes::cube();
    const auto text = format_shape(cube, "cube");
    const auto back = std::get<PolyhedronMesh>(parse_shape(text));
    CHECK(back.name == "cube");
    CHECK(back.faces == cube.faces);
    REQUIRE(back.vertices.size() == cube.vertices.size());
    for (std::size_t i = 0; i < back.vertices.size(); ++i)
        CHECK(back.vertices[i] == cube.vertices[i]);
    CHECK(format_shape(back, "cube") == text);
}

TEST_CASE("a single face is a polygon")
{
    const auto tri = shapes::triangle_edge_along_x();
    const auto back = parse_shape(format_shape(tri));
    REQUIRE(std::holds_alternative<VertexChain>(back));
    const auto& c = std::get<VertexChain>(back);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(c.vertices[i] == tri.vertices[i]); // shortest round-trip digits
}

TEST_CASE("malformed input")
{
    auto kind_of = [](const std::string& text) {
        try {
            (void)parse_shape(text);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::InvalidSpec;
    };
    CHECK(kind_of("not json") == ErrorKind::ParseError);
    CHECK(kind_of("[]") == ErrorKind::ParseError);
    CHECK(kind_of(R"({"vertices": [[0,0,0]]})") == ErrorKind::ParseError);
    CHECK(kind_of(R"({"vertices": [[0,0]], "faces": [[0,0,0]]})") == ErrorKind::ParseError);
    CHECK(kind_of(R"({"vertices": [[0,0,0],[1,0,0],[0,1,0]], "faces": [[0,1,3]]})") == ErrorKind::ParseError);
    CHECK(kind_of(R"({"vertices": [[0,0,0],[1,0,0],[0,1,0]], "faces": [[0,1]]})") == ErrorKind::ParseError);
    CHECK(kind_of(R"({"vertices": [[0,0,0],[1,0,0],[0,1,0]], "faces": [[0,1,2.5]]})") == ErrorKind::ParseError);
    CHECK(kind_of(R"({"name": 3, "vertices": [], "faces": []})") == ErrorKind::ParseError);
    CHECK_THROWS_AS((void)read_shape_file("/nonexistent/shape.json"), Error);
}
