#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dct/type_json.hpp"
#include "dct/type_node.hpp"
#include "dct/type_ops.hpp"
#include "dct/type_render.hpp"

using namespace dct;

namespace {

TypePtr t_int() { return TypeNode::primitive("int"); }
TypePtr t_float() { return TypeNode::primitive("float"); }

Field field(const std::string& name, TypePtr t, std::optional<int> bits = std::nullopt) {
    return Field{name, std::move(t), bits};
}

// struct rtc_time { int tm_year; ... int tm_sec; } -- six int fields.
TypePtr rtc_time() {
    return TypeNode::struct_type("rtc_time", {
        field("tm_year", t_int()), field("tm_mon", t_int()), field("tm_mday", t_int()),
        field("tm_hour", t_int()), field("tm_min", t_int()), field("tm_sec", t_int())});
}

TypePtr six_int_struct(const std::string& tag, const std::vector<std::string>& names) {
    std::vector<Field> fs;
    for (const auto& n : names) fs.push_back(field(n, t_int()));
    return TypeNode::struct_type(tag, std::move(fs));
}

// Random types for property tests. Depth-bounded, all kinds reachable.
struct TypeGen {
    std::mt19937_64 rng;
    int tag_counter = 0;

    explicit TypeGen(unsigned seed) : rng(seed) {}

    int pick(int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); }

    std::string fresh_name(const char* stem) {
        return std::string(stem) + std::to_string(tag_counter++);
    }

    TypePtr gen(int depth) {
        static const char* prims[] = {"int", "unsigned int", "char", "long", "float", "double"};
        if (depth <= 0) return TypeNode::primitive(prims[pick(6)]);
        switch (pick(8)) {
            case 0:
            case 1:
                return TypeNode::primitive(prims[pick(6)]);
            case 2:
                return TypeNode::pointer(gen(depth - 1));
            case 3:
                return TypeNode::array_of(gen(depth - 1),
                                          pick(4) == 0 ? std::nullopt
                                                       : std::optional<std::uint64_t>(1 + pick(8)));
            case 4: {
                std::vector<TypePtr> ps;
                int n = pick(3);
                for (int i = 0; i < n; ++i) ps.push_back(gen(depth - 1));
                return TypeNode::function(gen(depth - 1), std::move(ps), pick(4) == 0);
            }
            case 5:
                return TypeNode::enum_type(fresh_name("e"), {{fresh_name("E"), std::nullopt}});
            default: {
                std::vector<Field> fs;
                int n = 1 + pick(4);
                std::string tag = fresh_name("s");
                for (int i = 0; i < n; ++i) {
                    std::optional<int> bits;
                    TypePtr ft;
                    if (pick(6) == 0) {
                        ft = t_int();
                        bits = 1 + pick(7);
                    } else if (pick(6) == 0) {
                        // self-referential pointer field
                        ft = TypeNode::pointer(TypeNode::struct_ref(tag));
                    } else {
                        ft = gen(depth - 1);
                    }
                    fs.push_back(field(fresh_name("f"), std::move(ft), bits));
                }
                return pick(4) == 0 ? TypeNode::union_type(tag, std::move(fs))
                                    : TypeNode::struct_type(tag, std::move(fs));
            }
        }
    }

    // Structure-preserving clone with all tags and field names replaced.
    TypePtr rename_clone(const TypePtr& t, std::map<std::string, std::string>& tag_map) {
        const TypeNode& n = *t;
        switch (n.kind) {
            case TypeKind::Primitive:
                return t;
            case TypeKind::Pointer:
                return TypeNode::pointer(rename_clone(n.element, tag_map));
            case TypeKind::Array:
                return TypeNode::array_of(rename_clone(n.element, tag_map), n.length);
            case TypeKind::Function: {
                std::vector<TypePtr> ps;
                for (const auto& p : n.params) ps.push_back(rename_clone(p, tag_map));
                return TypeNode::function(rename_clone(n.return_type, tag_map), std::move(ps),
                                          n.variadic);
            }
            case TypeKind::Enum: {
                if (!n.defined) return TypeNode::enum_ref(fresh_name("re"));
                return TypeNode::enum_type(fresh_name("re"), {{fresh_name("RE"), std::nullopt}});
            }
            case TypeKind::Struct:
            case TypeKind::Union: {
                auto mapped_tag = [&](const std::string& tag) {
                    if (tag.empty()) return tag;
                    auto it = tag_map.find(tag);
                    if (it != tag_map.end()) return it->second;
                    std::string fresh = fresh_name("rs");
                    tag_map[tag] = fresh;
                    return fresh;
                };
                std::string tag = mapped_tag(n.tag);
                if (!n.defined) {
                    return n.kind == TypeKind::Struct ? TypeNode::struct_ref(tag)
                                                      : TypeNode::union_ref(tag);
                }
                std::vector<Field> fs;
                for (const auto& f : n.fields)
                    fs.push_back(field(fresh_name("rf"), rename_clone(f.type, tag_map), f.bit_width));
                return n.kind == TypeKind::Struct ? TypeNode::struct_type(tag, std::move(fs))
                                                  : TypeNode::union_type(tag, std::move(fs));
            }
            case TypeKind::Alias:
                return t;
        }
        return t;
    }

    TypePtr rename_clone(const TypePtr& t) {
        std::map<std::string, std::string> tag_map;
        return rename_clone(t, tag_map);
    }
};

}  // namespace

TEST_CASE("complexity matches the caption oracle") {
    CHECK(complexity(t_int()) == 1);
    CHECK(complexity(TypeNode::pointer(t_int())) == 2);
    CHECK(complexity(TypeNode::struct_type("s", {field("x", t_int()), field("y", t_int())})) == 3);
    CHECK(complexity(rtc_time()) == 7);
    CHECK(complexity(TypeNode::pointer(rtc_time())) == 8);
    // function: 1 + return + params
    CHECK(complexity(TypeNode::function(t_int(), {t_int(), TypeNode::pointer(t_int())})) == 5);
    CHECK(complexity(TypeNode::enum_type("c", {{"A", std::nullopt}})) == 1);
    CHECK_THROWS_AS(complexity(TypeNode::alias("myint")), UnresolvedAliasError);
}

TEST_CASE("complexity counts recursive back-references once") {
    // struct list { struct list *next; int v; } -> 1 + (1+1) + 1 = 4
    auto list = TypeNode::struct_type(
        "list", {field("next", TypeNode::pointer(TypeNode::struct_ref("list"))),
                 field("v", t_int())});
    CHECK(complexity(list) == 4);
}

TEST_CASE("recursive_field_count") {
    CHECK(recursive_field_count(t_int()) == 0);
    CHECK(recursive_field_count(rtc_time()) == 6);
    // struct outer { struct inner { int a; int b; } p; int q; } -> p, q, a, b
    auto inner = TypeNode::struct_type("inner", {field("a", t_int()), field("b", t_int())});
    auto outer = TypeNode::struct_type("outer", {field("p", inner), field("q", t_int())});
    CHECK(recursive_field_count(outer) == 4);
    // reached through a pointer, fields still counted
    auto holder = TypeNode::struct_type("holder", {field("p", TypeNode::pointer(inner))});
    CHECK(recursive_field_count(holder) == 3);
    CHECK(recursive_field_count(TypeNode::pointer(rtc_time())) == 6);
}

TEST_CASE("composition_equal ignores tags and field names") {
    auto s = six_int_struct("s", {"u", "v", "w", "x", "y", "z"});
    auto date_t = six_int_struct("date_t", {"year", "month", "day", "hour", "min", "sec"});
    CHECK(composition_equal(s, date_t));
    CHECK(composition_equal(s, rtc_time()));
    CHECK(composition_equal(date_t, date_t));

    auto ab = TypeNode::struct_type("", {field("a", t_int()), field("b", t_float())});
    auto ba = TypeNode::struct_type("", {field("b", t_float()), field("a", t_int())});
    CHECK_FALSE(composition_equal(ab, ba));  // field order is significant
}

TEST_CASE("composition_equal details") {
    // struct vs union
    auto su = TypeNode::struct_type("t", {field("x", t_int())});
    auto un = TypeNode::union_type("t", {field("x", t_int())});
    CHECK_FALSE(composition_equal(su, un));
    // array lengths participate
    CHECK_FALSE(composition_equal(TypeNode::array_of(t_int(), 3), TypeNode::array_of(t_int(), 4)));
    CHECK(composition_equal(TypeNode::array_of(t_int(), 3), TypeNode::array_of(t_int(), 3)));
    // flexible arrays only equal flexible arrays
    CHECK(composition_equal(TypeNode::array_of(t_int(), std::nullopt),
                            TypeNode::array_of(t_int(), std::nullopt)));
    CHECK_FALSE(composition_equal(TypeNode::array_of(t_int(), std::nullopt),
                                  TypeNode::array_of(t_int(), 1)));
    // bitfield widths must match
    auto b3 = TypeNode::struct_type("a", {field("f", t_int(), 3)});
    auto b4 = TypeNode::struct_type("b", {field("f", t_int(), 4)});
    auto b3b = TypeNode::struct_type("c", {field("g", t_int(), 3)});
    CHECK_FALSE(composition_equal(b3, b4));
    CHECK(composition_equal(b3, b3b));
    // enums compare by underlying representation
    auto e = TypeNode::enum_type("color", {{"RED", std::nullopt}});
    auto e2 = TypeNode::enum_type("mode", {{"ON", 1}});
    CHECK(composition_equal(e, e2));
    CHECK(composition_equal(e, t_int()));
    CHECK_FALSE(composition_equal(e, TypeNode::primitive("unsigned int")));
}

TEST_CASE("composition_equal on recursive types") {
    auto self_a = TypeNode::struct_type(
        "A", {field("next", TypeNode::pointer(TypeNode::struct_ref("A")))});
    auto self_b = TypeNode::struct_type(
        "B", {field("n", TypeNode::pointer(TypeNode::struct_ref("B")))});
    CHECK(composition_equal(self_a, self_b));
    auto nonrec = TypeNode::struct_type("C", {field("p", TypeNode::pointer(t_int()))});
    CHECK_FALSE(composition_equal(self_a, nonrec));

    // mutually recursive pairs, expanded from their roots
    std::map<std::string, TypePtr> udts1 = {
        {"A", TypeNode::struct_type("A", {field("b", TypeNode::pointer(TypeNode::struct_ref("B")))})},
        {"B", TypeNode::struct_type("B", {field("a", TypeNode::pointer(TypeNode::struct_ref("A")))})}};
    std::map<std::string, TypePtr> udts2 = {
        {"X", TypeNode::struct_type("X", {field("y", TypeNode::pointer(TypeNode::struct_ref("Y")))})},
        {"Y", TypeNode::struct_type("Y", {field("x", TypeNode::pointer(TypeNode::struct_ref("X")))})}};
    auto a = expand_refs(TypeNode::struct_ref("A"), udts1);
    auto x = expand_refs(TypeNode::struct_ref("X"), udts2);
    CHECK(composition_equal(a, x));
    CHECK_FALSE(composition_equal(a, self_a));  // one hop vs two hops to the back-reference
}

TEST_CASE("composition_and_tags_equal") {
    auto a = six_int_struct("rtc_time", {"u", "v", "w", "x", "y", "z"});
    CHECK(composition_and_tags_equal(a, rtc_time()));  // field names still ignored
    auto b = six_int_struct("date_t", {"u", "v", "w", "x", "y", "z"});
    CHECK_FALSE(composition_and_tags_equal(b, rtc_time()));
}

TEST_CASE("dealias resolves chains") {
    AliasTable t;
    t.define("int32", t_int());
    CHECK(types_identical(dealias("int32", t), t_int()));

    AliasTable empty;
    auto plain = t_int();
    CHECK(dealias(plain, empty) == plain);  // alias-free trees return unchanged

    // u32ptr -> uint32* ; uint32 -> unsigned int
    AliasTable chain;
    chain.define("uint32", TypeNode::primitive("unsigned int"));
    chain.define("u32ptr", TypeNode::pointer(TypeNode::alias("uint32")));
    auto resolved = dealias("u32ptr", chain);
    CHECK(types_identical(resolved, TypeNode::pointer(TypeNode::primitive("unsigned int"))));

    // chains through another typedef name
    AliasTable two;
    two.define("myint", t_int());
    two.define("myint2", TypeNode::alias("myint"));
    CHECK(types_identical(dealias("myint2", two), t_int()));

    AliasTable cyc;
    cyc.define("a", TypeNode::alias("b"));
    cyc.define("b", TypeNode::alias("a"));
    CHECK_THROWS_AS(dealias("a", cyc), AliasCycleError);
    CHECK_THROWS_AS(dealias("nope", AliasTable{}), UnknownTypeNameError);
}

TEST_CASE("udt_closure") {
    CHECK(udt_closure(TypeNode::pointer(t_int())).empty());
    auto c1 = udt_closure(TypeNode::pointer(rtc_time()));
    REQUIRE(c1.size() == 1);
    CHECK(c1[0]->tag == "rtc_time");

    std::map<std::string, TypePtr> udts = {
        {"A", TypeNode::struct_type("A", {field("b", TypeNode::pointer(TypeNode::struct_ref("B")))})},
        {"B", TypeNode::struct_type("B", {field("a", TypeNode::pointer(TypeNode::struct_ref("A")))})}};
    auto a = expand_refs(TypeNode::struct_ref("A"), udts);
    auto c2 = udt_closure(a);
    REQUIRE(c2.size() == 2);
    CHECK(c2[0]->tag == "A");
    CHECK(c2[1]->tag == "B");
}

TEST_CASE("typemodel invariants over random types") {
    TypeGen gen(20260811);
    for (int i = 0; i < 300; ++i) {
        TypePtr t = gen.gen(3);
        CAPTURE(i);
        CHECK(complexity(t) >= 1);
        CHECK(complexity(TypeNode::pointer(t)) == 1 + complexity(t));
        CHECK(composition_equal(t, t));

        TypePtr renamed = gen.rename_clone(t);
        CHECK(composition_equal(t, renamed));
        CHECK(complexity(t) == complexity(renamed));
        CHECK(recursive_field_count(t) == recursive_field_count(renamed));
    }
}

TEST_CASE("composition_equal is an equivalence relation on randomized triples") {
    TypeGen gen(7);
    for (int i = 0; i < 200; ++i) {
        TypePtr a = gen.gen(3);
        TypePtr b = (i % 3 == 0) ? gen.rename_clone(a) : gen.gen(3);
        TypePtr c = (i % 2 == 0) ? gen.rename_clone(b) : gen.gen(3);
        // symmetry
        CHECK(composition_equal(a, b) == composition_equal(b, a));
        CHECK(composition_equal(b, c) == composition_equal(c, b));
        // transitivity
        if (composition_equal(a, b) && composition_equal(b, c)) CHECK(composition_equal(a, c));
        // equal composition forces equal measures
        if (composition_equal(a, b)) {
            CHECK(complexity(a) == complexity(b));
            CHECK(recursive_field_count(a) == recursive_field_count(b));
        }
    }
}

TEST_CASE("dealias is idempotent on random types with aliases sprinkled in") {
    TypeGen gen(99);
    AliasTable table;
    table.define("word", TypeNode::primitive("unsigned short"));
    table.define("wordp", TypeNode::pointer(TypeNode::alias("word")));
    for (int i = 0; i < 100; ++i) {
        // wrap a random type so alias nodes appear at the leaves
        TypePtr t = TypeNode::struct_type(
            "w" + std::to_string(i),
            {field("a", TypeNode::alias("wordp")), field("b", gen.gen(2))});
        TypePtr once = dealias(t, table);
        TypePtr twice = dealias(once, table);
        CHECK(types_identical(once, twice));
    }
}

TEST_CASE("type JSON round-trips") {
    TypeGen gen(4242);
    for (int i = 0; i < 200; ++i) {
        TypePtr t = gen.gen(4);
        TypePtr back = type_from_json(type_to_json(t));
        CHECK(types_identical(t, back));
    }
    // spot-check a tree with every feature
    auto t = TypeNode::struct_type(
        "everything",
        {field("bits", t_int(), 5),
         field("flex", TypeNode::array_of(t_int(), std::nullopt)),
         field("fp", TypeNode::pointer(TypeNode::function(t_int(), {t_float()}, true))),
         field("self", TypeNode::pointer(TypeNode::struct_ref("everything"))),
         field("e", TypeNode::enum_type("mode", {{"ON", 1}, {"OFF", std::nullopt}}))});
    CHECK(types_identical(t, type_from_json(type_to_json(t))));
}

TEST_CASE("rendering declarations") {
    CHECK(render_type(t_int()) == "int");
    CHECK(render_type(TypeNode::pointer(t_int())) == "int *");
    CHECK(render_declaration(TypeNode::pointer(rtc_time()), "tm") == "struct rtc_time *tm");
    CHECK(render_declaration(TypeNode::array_of(TypeNode::pointer(t_int()), 3), "v") == "int *v[3]");
    CHECK(render_declaration(TypeNode::pointer(TypeNode::array_of(t_int(), 3)), "v") == "int (*v)[3]");
    CHECK(render_declaration(TypeNode::pointer(TypeNode::function(t_int(), {t_int()})), "f") ==
          "int (*f)(int)");
    CHECK(render_udt_definition(TypeNode::struct_type(
              "s", {field("x", t_int()), field("y", t_int())})) ==
          "struct s {\n    int x;\n    int y;\n};");
}

#include "dct/canonicalize.hpp"
#include "dct/parser.hpp"

TEST_CASE("declaration rendering round-trips through the parser") {
    // representative declarator shapes
    std::vector<TypePtr> types{
        t_int(),
        TypeNode::pointer(t_int()),
        TypeNode::array_of(t_int(), 3),
        TypeNode::array_of(TypeNode::pointer(t_int()), 3),
        TypeNode::pointer(TypeNode::array_of(t_int(), 3)),
        TypeNode::pointer(TypeNode::function(t_int(), {t_int(), TypeNode::pointer(
            TypeNode::primitive("char"))})),
        TypeNode::pointer(TypeNode::pointer(TypeNode::primitive("unsigned long"))),
        TypeNode::struct_type("", {field("a", t_int()), field("b", t_float())}),
    };
    for (const auto& t : types) {
        std::string src = "void f(void) { " + render_declaration(t, "v") + "; }";
        CAPTURE(src);
        TranslationUnit unit = parse_translation_unit(src);
        canonicalize_unit(unit);
        REQUIRE(unit.functions.size() == 1);
        REQUIRE_FALSE(unit.functions[0].error.has_value());
        REQUIRE(unit.functions[0].variables.size() == 1);
        const TypePtr& back = unit.functions[0].variables[0].second;
        CHECK(render_type(back) == render_type(t));
        CHECK(composition_equal(back, t));
    }
}

TEST_CASE("UDT definition rendering round-trips through the parser") {
    auto def = TypeNode::struct_type(
        "widget",
        {field("flags", t_int(), 3),
         field("pad", t_int(), 5),
         field("name", TypeNode::array_of(TypeNode::primitive("char"), 16)),
         field("next", TypeNode::pointer(TypeNode::struct_ref("widget"))),
         field("tail", TypeNode::array_of(t_int(), std::nullopt))});
    std::string src = render_udt_definition(def);
    TranslationUnit unit = parse_translation_unit(src);
    canonicalize_unit(unit);
    REQUIRE(unit.udts.count("widget") == 1);
    CHECK(types_identical(unit.udts.at("widget"), def));
}
