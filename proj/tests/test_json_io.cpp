#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "procstar/json_io.hpp"

using namespace procstar;

TEST_CASE("canonical dump") {
  const Json j = parse_json(R"({"b": [1, 2.5, 3.0], "a": {"z": true, "y": [[1, 2], [3]]}, "c": 0.1})");
  CHECK(canonical_dump(j) ==
        "{\n"
        "  \"a\": {\n"
        "    \"y\": [\n"
        "      [1, 2],\n"
        "      [3]\n"
        "    ],\n"
        "    \"z\": true\n"
        "  },\n"
        "  \"b\": [1, 2.5, 3.0],\n"
        "  \"c\": 0.10000000000000001\n"
        "}\n");
  CHECK(canonical_dump(parse_json(canonical_dump(j))) == canonical_dump(j));
  CHECK(canonical_dump(Json(-0.0)) == "0.0\n");
  CHECK_THROWS_AS(parse_json("{\"a\": "), UsageError);
}

TEST_CASE("complex numbers") {
  CHECK(complex_from_json(Json(2)) == Complex(2.0, 0.0));
  CHECK(complex_from_json(parse_json("[1, -2]")) == Complex(1.0, -2.0));
  CHECK_THROWS_AS(complex_from_json(parse_json("[1]")), UsageError);
  CHECK_THROWS_AS(complex_from_json(Json("x")), UsageError);
}

TEST_CASE("descriptors") {
  const auto d = descriptor_from_json(parse_json(R"({"family": "elementary-abelian-2", "params": [3]})"));
  CHECK(d.family == "elementary_abelian_2");
  CHECK(family_order(d) == 8);
  const auto p = parse_descriptor_label("direct_product(cyclic(2),symmetric(3))");
  REQUIRE(p);
  CHECK(p->factors.size() == 2);
  CHECK(family_order(*p) == 12);
  CHECK_FALSE(parse_descriptor_label("cyclic(2"));
  CHECK_FALSE(parse_descriptor_label("nonsense(3)"));
  CHECK(descriptor_from_json(to_json(*p)).factors[1].family == "symmetric");
}

TEST_CASE("group algebra elements round trip") {
  for (const char* text : {
           R"({"group": {"family": "integers"}, "terms": [{"g": 1, "c": [1, 0]}, {"g": 0, "c": [0, 1]}]})",
           R"({"group": {"family": "integers", "params": [2]}, "terms": [{"g": [1, -2], "c": 3}]})",
           R"({"group": {"family": "heisenberg"}, "terms": [{"g": [0, 0, 1]}, {"g": [0, 0, 0], "c": -1}]})",
           R"({"group": {"family": "free2"}, "terms": [{"g": "g1 g2 -g1", "c": 2}]})",
           R"({"group": {"family": "symmetric", "params": [3]}, "terms": [{"g": 5, "c": [0.5, 0.5]}]})"}) {
    const auto a = algebra_element_from_json(parse_json(text));
    CHECK(algebra_element_from_json(to_json(a)) == a);
  }
  CHECK_THROWS_AS(algebra_element_from_json(parse_json(R"({"terms": []})")), UsageError);
  CHECK_THROWS_AS(algebra_element_from_json(parse_json(R"({"group": {"family": "heisenberg"}, "terms": [{"g": [1, 2]}]})")),
                  UsageError);
  CHECK_THROWS_AS(algebra_element_from_json(parse_json(R"({"group": {"family": "cyclic", "params": [3]}, "terms": [{"g": 3}]})")),
                  UsageError);
}

TEST_CASE("quotients round trip") {
  for (const char* text : {
           R"({"group": {"family": "integers", "params": [2]}, "kind": "mod", "params": 3})",
           R"({"group": {"family": "heisenberg"}, "kind": "mod", "params": [4]})",
           R"({"group": {"family": "free2"}, "kind": "catalog",
               "params": {"target": {"family": "symmetric", "params": [3]}, "images": [1, 2]}})",
           R"({"group": {"family": "symmetric", "params": [4]}, "kind": "normal", "params": [1]})"}) {
    const auto q = quotient_from_json(parse_json(text));
    const auto r = quotient_from_json(to_json(q));
    CHECK(r.target_order() == q.target_order());
    CHECK(r.label() == q.label());
  }
  CHECK(quotient_from_json(parse_json(R"({"group": {"family": "integers", "params": [2]}, "kind": "mod", "params": 3})"))
            .target_order() == 9);
  CHECK_THROWS_AS(quotient_from_json(parse_json(R"({"group": {"family": "heisenberg"}, "kind": "lattice"})")),
                  UsageError);
  CHECK_THROWS_AS(quotient_from_json(parse_json(R"({"group": {"family": "heisenberg"}, "kind": "mod", "params": "x"})")),
                  UsageError);
}
