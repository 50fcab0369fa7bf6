#include <doctest.h>

#include <algorithm>

#include "palc/terminology.hpp"

using namespace palc;

namespace {

Concept sym(const char* s) { return Concept::symbol(s); }

Terminology birds_terminology() {
    Terminology t;
    t.declare_concept("animal");
    t.declare_concept("flying");
    t.declare_concept("flying_object");
    t.declare_concept("antarctic_animal");
    t.declare_concept("bird");
    t.declare_concept("antarctic_bird");
    t.declare_concept("penguin");
    t.declare_role("moves_by");
    t.add_axiom({AxiomKind::Definition, "flying_object",
                 Concept::forall("moves_by", sym("flying"))});
    t.add_axiom({AxiomKind::Specialization, "antarctic_animal", sym("animal")});
    t.add_axiom({AxiomKind::Specialization, "bird", sym("animal")});
    t.add_axiom({AxiomKind::Definition, "antarctic_bird",
                 Concept::conjunction(sym("antarctic_animal"), sym("bird"))});
    t.add_axiom({AxiomKind::Specialization, "penguin", sym("antarctic_bird")});
    return t;
}

}  // namespace

TEST_CASE("declarations keep source order and reject duplicates") {
    Terminology t;
    t.declare_concept("b");
    t.declare_concept("a");
    t.declare_role("r");
    CHECK(t.concept_names() == std::vector<std::string>{"b", "a"});
    CHECK(t.role_names() == std::vector<std::string>{"r"});
    CHECK(t.has_concept("a"));
    CHECK_FALSE(t.has_concept("r"));
    CHECK(t.has_role("r"));
    CHECK_THROWS_AS(t.declare_concept("a"), TerminologyError);
    CHECK_THROWS_AS(t.declare_role("r"), TerminologyError);
}

TEST_CASE("at most one axiom per concept") {
    Terminology t;
    t.declare_concept("a");
    t.declare_concept("b");
    t.add_axiom({AxiomKind::Specialization, "a", sym("b")});
    CHECK_THROWS_AS(t.add_axiom({AxiomKind::Definition, "a", sym("b")}), TerminologyError);
    REQUIRE(t.axiom_for("a"));
    CHECK(t.axiom_for("a")->kind == AxiomKind::Specialization);
    CHECK(t.axiom_for("b") == nullptr);
}

TEST_CASE("validate catches structural problems") {
    SUBCASE("concept and role name collision") {
        Terminology t;
        t.declare_concept("x");
        t.declare_role("x");
        CHECK_THROWS_WITH_AS(t.validate(), "'x' is declared both as concept and role",
                             TerminologyError);
    }
    SUBCASE("axiom over undeclared left side") {
        Terminology t;
        t.declare_concept("a");
        t.add_axiom({AxiomKind::Specialization, "ghost", sym("a")});
        CHECK_THROWS_AS(t.validate(), TerminologyError);
    }
    SUBCASE("axiom uses undeclared symbol") {
        Terminology t;
        t.declare_concept("a");
        t.add_axiom({AxiomKind::Specialization, "a", sym("ghost")});
        CHECK_THROWS_WITH_AS(t.validate(), "axiom for 'a' uses undeclared concept 'ghost'",
                             TerminologyError);
    }
    SUBCASE("axiom uses undeclared role") {
        Terminology t;
        t.declare_concept("a");
        t.declare_concept("b");
        t.add_axiom({AxiomKind::Definition, "a", Concept::forall("r", sym("b"))});
        CHECK_THROWS_WITH_AS(t.validate(), "axiom for 'a' uses undeclared role 'r'",
                             TerminologyError);
    }
    SUBCASE("direct cycle") {
        Terminology t;
        t.declare_concept("a");
        t.add_axiom({AxiomKind::Definition, "a", Concept::negation(sym("a"))});
        CHECK_THROWS_AS(t.validate(), TerminologyError);
    }
    SUBCASE("indirect cycle") {
        Terminology t;
        t.declare_concept("a");
        t.declare_concept("b");
        t.add_axiom({AxiomKind::Specialization, "a", sym("b")});
        t.add_axiom({AxiomKind::Specialization, "b", Concept::conjunction(sym("a"), sym("a"))});
        CHECK_THROWS_AS(t.validate(), TerminologyError);
    }
    SUBCASE("well formed terminology passes") { CHECK_NOTHROW(birds_terminology().validate()); }
}

TEST_CASE("check_concept reports the location given by the caller") {
    Terminology t = birds_terminology();
    CHECK_NOTHROW(t.check_concept(Concept::conjunction(sym("bird"), sym("penguin")), "query"));
    CHECK_THROWS_WITH_AS(t.check_concept(sym("fish"), "query"),
                         "query uses undeclared concept 'fish'", TerminologyError);
    CHECK_THROWS_WITH_AS(t.check_concept(Concept::exists("eats", sym("bird")), "query"),
                         "query uses undeclared role 'eats'", TerminologyError);
}

TEST_CASE("dependency order puts mentioned symbols first") {
    Terminology t = birds_terminology();
    std::vector<std::string> order = t.dependency_order();
    CHECK(order.size() == t.concept_names().size());
    auto pos = [&](const std::string& n) {
        return std::find(order.begin(), order.end(), n) - order.begin();
    };
    CHECK(pos("animal") < pos("antarctic_animal"));
    CHECK(pos("animal") < pos("bird"));
    CHECK(pos("flying") < pos("flying_object"));
    CHECK(pos("antarctic_animal") < pos("antarctic_bird"));
    CHECK(pos("bird") < pos("antarctic_bird"));
    CHECK(pos("antarctic_bird") < pos("penguin"));
}

TEST_CASE("mentioned_symbols is duplicate free in first appearance order") {
    Concept c = Concept::conjunction(
        {sym("b"), Concept::negation(sym("a")), Concept::forall("r", sym("b")), sym("c")});
    CHECK(Terminology::mentioned_symbols(c) == std::vector<std::string>{"b", "a", "c"});
    CHECK(Terminology::mentioned_symbols(Concept::top()).empty());
}
