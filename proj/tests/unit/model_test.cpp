#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "adl/frontend/parser.hpp"
#include "adl/meta/model.hpp"

#include "test_support.hpp"

using namespace adl;
using namespace adl::meta;
using adltest::codes;
using adltest::compile;
using adltest::compile_ok;

namespace {

std::vector<std::string> names(const std::vector<MetaAttribute>& attrs)
{
    std::vector<std::string> out;
    for (const auto& a : attrs) {
        out.push_back(a.name);
    }
    return out;
}

bool has_code(const std::vector<Diagnostic>& diags, DiagCode code)
{
    const auto c = codes(diags);
    return std::find(c.begin(), c.end(), code) != c.end();
}

Outcome<MetaModel> build(const std::vector<std::string>& sources)
{
    std::vector<frontend::CompilationUnit> units;
    for (const auto& s : sources) {
        units.push_back(*frontend::parse_source(s, "u.adl").value);
    }
    return build_model(units);
}

} // namespace

// build_model

TEST(BuildModel, NoUnitsGiveAnEmptyModel)
{
    auto r = build_model({});
    ASSERT_TRUE(r.ok());
    EXPECT_TRUE(r.value->classes().empty());
    EXPECT_FALSE(r.value->resolved());
}

TEST(BuildModel, AggregatesUnits)
{
    auto r = build({"module Evt { class Track : DataObject { }; };",
                    "module Evt { class Vertex : DataObject { }; };"});
    ASSERT_TRUE(r.ok());
    EXPECT_NE(r.value->find_class("Evt::Track"), nullptr);
    EXPECT_NE(r.value->find_class("Evt::Vertex"), nullptr);
    EXPECT_EQ(r.value->modules().count("Evt"), 1u);
}

TEST(BuildModel, DuplicateDefinitionNamesBothPositions)
{
    auto r = build({"module Evt { class Track { }; };", "module Evt {\n class Track { }; };"});
    ASSERT_FALSE(r.ok());
    ASSERT_EQ(r.diagnostics[0].code, DiagCode::model_duplicate);
    EXPECT_NE(r.diagnostics[0].message.find("duplicate definition"), std::string::npos);
    EXPECT_NE(r.diagnostics[0].message.find("u.adl:1:"), std::string::npos)
        << r.diagnostics[0].message;
    EXPECT_EQ(r.diagnostics[0].pos.line, 2);
}

TEST(BuildModel, DuplicateMemberIsAnError)
{
    auto r = compile("class A { long x; double x; };");
    EXPECT_TRUE(has_code(r.diagnostics, DiagCode::model_duplicate_member));
}

// resolve

TEST(Resolve, UnknownTypeIsAnError)
{
    auto r = compile("module Evt { class Track : DataObject { persistent Foo f; }; };");
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.diagnostics[0].code, DiagCode::model_unknown_type);
    EXPECT_NE(r.diagnostics[0].message.find("unknown type Foo"), std::string::npos);
}

TEST(Resolve, ExternMakesTheTypeOpaque)
{
    auto m = compile_ok("extern Foo; module Evt { class Track : DataObject { persistent Foo f; }; };");
    const auto* foo = m.find_class("Foo");
    ASSERT_NE(foo, nullptr);
    EXPECT_EQ(foo->category, Category::extern_type);
    const auto& attr = m.find_class("Evt::Track")->attributes.at(0);
    EXPECT_EQ(attr.type.kind, MetaType::Kind::opaque);
    EXPECT_EQ(attr.type.name, "Foo");
}

TEST(Resolve, AsymmetricInverseIsAnError)
{
    auto r = compile(R"(
        class Vertex : DataObject {
            relationship many Track tracks inverse Track::other;
        };
        class Track : DataObject {
            relationship one Vertex origin inverse Vertex::tracks;
            relationship one Vertex other inverse Vertex::tracks;
        };)");
    ASSERT_FALSE(r.ok());
    EXPECT_TRUE(has_code(r.diagnostics, DiagCode::model_inverse_asymmetric))
        << adltest::render_all(r.diagnostics);
    bool named = false;
    for (const auto& d : r.diagnostics) {
        named |= d.message.find("asymmetric relationship inverse") != std::string::npos;
    }
    EXPECT_TRUE(named);
}

TEST(Resolve, DanglingInverseIsAnError)
{
    auto r = compile("class A : DataObject { relationship one B b inverse B::a; };"
                     "class B : DataObject { };");
    EXPECT_TRUE(has_code(r.diagnostics, DiagCode::model_inverse_dangling));
}

TEST(Resolve, InheritanceCycleIsAnError)
{
    auto r = compile("class A : C { }; class B : A { }; class C : B { };");
    EXPECT_TRUE(has_code(r.diagnostics, DiagCode::model_inheritance_cycle));
}

TEST(Resolve, RelationshipsNeedAFrameworkOwner)
{
    auto r = compile("class P { relationship one Q q inverse Q::p; };"
                     "class Q : DataObject { relationship one P p inverse P::q; };");
    EXPECT_TRUE(has_code(r.diagnostics, DiagCode::model_relationship_owner));
    auto c = compile("class P : CollectionObject { relationship one Q q inverse Q::p; };"
                     "class Q : DataObject { relationship one P p inverse P::q; };");
    EXPECT_TRUE(has_code(c.diagnostics, DiagCode::model_relationship_owner));
}

TEST(Resolve, InnermostScopeWins)
{
    auto r = compile("class X { long a; }; module M { class X { long b; }; "
                     "module N { class User : DataObject { persistent X x; }; }; };");
    ASSERT_TRUE(r.ok()) << adltest::render_all(r.diagnostics);
    EXPECT_EQ(r.value->find_class("M::N::User")->attributes[0].type.name, "M::X");
}

TEST(Resolve, AmbiguousLookupIsAnError)
{
    auto r = compile("module A { class V { long a; }; }; module B { class V { long b; }; }; "
                     "class U : DataObject { persistent V v; };");
    ASSERT_FALSE(r.ok());
    EXPECT_TRUE(has_code(r.diagnostics, DiagCode::model_ambiguous))
        << adltest::render_all(r.diagnostics);
}

TEST(Resolve, QualifiedLookup)
{
    auto m = compile_ok("module A { class V { long a; }; }; "
                        "module B { class U : DataObject { persistent A::V v; }; };");
    EXPECT_EQ(m.find_class("B::U")->attributes[0].type.name, "A::V");
}

TEST(Resolve, IsIdempotent)
{
    auto m = compile_ok(adltest::read_file(adltest::corpus_dir() / "event_model.adl"));
    auto again = resolve(m);
    ASSERT_TRUE(again.ok());
    EXPECT_TRUE(*again.value == m);
}

TEST(Resolve, InverseOfInverseIsSelf)
{
    for (const auto& path : adltest::corpus_files()) {
        auto m = compile_ok(adltest::read_file(path));
        for (const auto& c : m.classes()) {
            for (const auto& r : c.relationships) {
                const auto* target = m.find_class(r.inverseClass);
                ASSERT_NE(target, nullptr);
                const auto* inv = m.find_relationship(*target, r.inverseName);
                ASSERT_NE(inv, nullptr) << c.qualifiedName << "::" << r.name;
                const auto* owner = m.find_class(inv->inverseClass);
                const auto* back = m.find_relationship(*owner, inv->inverseName);
                EXPECT_EQ(back->name, r.name);
                EXPECT_TRUE(m.is_kind_of(c, inv->target));
            }
        }
    }
}

TEST(Resolve, TypedefsExpand)
{
    auto m = adltest::compile_corpus_file("typedefs.adl");
    const auto* d = m.find_class("Units::Detector");
    EXPECT_EQ(d->attributes[0].type.spelling(), "double");
    EXPECT_EQ(d->attributes[1].type.spelling(), "sequence<double>");
}

TEST(Resolve, CategoryIsInherited)
{
    auto m = adltest::compile_corpus_file("event_model.adl");
    EXPECT_EQ(m.find_class("Evt::ElectronTrack")->category, Category::data_object);
    EXPECT_EQ(m.find_class("Evt::Cov")->category, Category::plain);
}

TEST(Resolve, ExtensionsReachTheModel)
{
    auto m = adltest::compile_corpus_file("event_model.adl");
    const auto* track = m.find_class("Evt::Track");
    ASSERT_NE(track, nullptr);
    EXPECT_EQ(track->category, Category::data_object);
    const auto& seed = track->attributes[2];
    EXPECT_EQ(seed.visibility, Visibility::private_);
    EXPECT_TRUE(seed.persistent);
    EXPECT_FALSE(track->attributes[5].persistent);
    ASSERT_EQ(track->relationships.size(), 1u);
    EXPECT_EQ(track->relationships[0].target, "Evt::Vertex");
    EXPECT_EQ(track->relationships[0].inverseName, "tracks");
    ASSERT_EQ(track->methods.size(), 1u);
    EXPECT_TRUE(track->methods[0].isConst);
}

// ClassId

TEST(ClassId, DeterministicAndMatchesOracle)
{
    EXPECT_EQ(compute_class_id("A"), compute_class_id("A"));
    EXPECT_EQ(compute_class_id("Evt::Track").value, adltest::reference_fnv1a("Evt::Track"));
    EXPECT_EQ(compute_class_id("Evt::Track").value, 0x32236665u);
    EXPECT_EQ(compute_class_id("Evt::Vertex").value, 0xd9f6bbc4u);
    EXPECT_EQ(compute_class_id("A").value, 0xc40bf6ccu);
    EXPECT_EQ(to_hex(compute_class_id("Track")), "0x20f8dddc");
}

TEST(ClassId, AssignedDuringResolve)
{
    auto m = adltest::compile_corpus_file("event_model.adl");
    for (const auto& c : m.classes()) {
        EXPECT_EQ(c.classId, compute_class_id(c.qualifiedName)) << c.qualifiedName;
    }
}

TEST(ClassId, CollisionIsReported)
{
    ASSERT_EQ(compute_class_id("Ak3vu"), compute_class_id("A5tea"));
    auto r = compile("class Ak3vu { long a; }; class A5tea { long b; };");
    ASSERT_FALSE(r.ok());
    EXPECT_TRUE(has_code(r.diagnostics, DiagCode::model_classid_collision));
}

// Reflection queries

TEST(Reflect, FindClass)
{
    auto m = adltest::compile_corpus_file("event_model.adl");
    EXPECT_NE(m.find_class("Evt::Track"), nullptr);
    EXPECT_EQ(m.find_class("Evt::Nope"), nullptr);
    EXPECT_EQ(m.find_class("Track"), nullptr);
}

TEST(Reflect, IsKindOf)
{
    auto m = adltest::compile_corpus_file("event_model.adl");
    const auto& track = *m.find_class("Evt::Track");
    const auto& electron = *m.find_class("Evt::ElectronTrack");
    EXPECT_TRUE(m.is_kind_of(track, "Track"));
    EXPECT_TRUE(m.is_kind_of(track, "Evt::Track"));
    EXPECT_TRUE(m.is_kind_of(electron, "Evt::Track"));
    EXPECT_TRUE(m.is_kind_of(electron, "DataObject"));
    EXPECT_FALSE(m.is_kind_of(track, "Evt::ElectronTrack"));
    EXPECT_FALSE(m.is_kind_of(track, "ContainedObject"));
}

TEST(Reflect, InheritedAttributesComeFirst)
{
    auto m = adltest::compile_corpus_file("event_model.adl");
    const auto& track = *m.find_class("Evt::Track");
    const auto& electron = *m.find_class("Evt::ElectronTrack");
    auto expected = names(m.attributes_of(track, true));
    expected.push_back("eOverP");
    EXPECT_EQ(names(m.attributes_of(electron, true)), expected);
    EXPECT_EQ(names(m.attributes_of(electron, false)), std::vector<std::string>{"eOverP"});
}

TEST(Reflect, LinearizationOrder)
{
    auto m = adltest::compile_corpus_file("inheritance_chain.adl");
    std::vector<std::string> order;
    for (const auto* c : m.linearization(*m.find_class("Chain::Leaf"))) {
        order.push_back(c->qualifiedName);
    }
    EXPECT_EQ(order, (std::vector<std::string>{"Chain::Base", "Chain::Middle", "Chain::Leaf"}));
    EXPECT_EQ(names(m.attributes_of(*m.find_class("Chain::Leaf"), true)),
              (std::vector<std::string>{"a", "b", "c"}));
}

TEST(Reflect, DiamondAncestorAppearsOnce)
{
    auto m = adltest::compile_corpus_file("diamond.adl");
    EXPECT_EQ(names(m.attributes_of(*m.find_class("Shapes::Swatch"), true)),
              (std::vector<std::string>{"name", "rgb", "width", "height", "glossy"}));
}

TEST(Reflect, InheritedRelationships)
{
    auto m = adltest::compile_corpus_file("inherited_relationships.adl");
    const auto& wn = *m.find_class("Graph::WeightedNode");
    EXPECT_NE(m.find_relationship(wn, "outgoing"), nullptr);
    EXPECT_EQ(m.relationships_of(wn, true).size(), 1u);
    EXPECT_TRUE(m.relationships_of(wn, false).empty());
}

TEST(Reflect, CorpusUsesEveryExtension)
{
    bool relationship = false, persistent = false, ext = false, priv = false;
    std::set<Category> categories;
    for (const auto& path : adltest::corpus_files()) {
        auto m = compile_ok(adltest::read_file(path));
        for (const auto& c : m.classes()) {
            categories.insert(c.declaredCategory);
            ext |= c.is_extern();
            relationship |= !c.relationships.empty();
            for (const auto& a : c.attributes) {
                persistent |= a.persistent;
                priv |= a.visibility == Visibility::private_;
            }
        }
    }
    EXPECT_TRUE(relationship);
    EXPECT_TRUE(persistent);
    EXPECT_TRUE(ext);
    EXPECT_TRUE(priv);
    EXPECT_TRUE(categories.count(Category::data_object));
    EXPECT_TRUE(categories.count(Category::contained_object));
    EXPECT_TRUE(categories.count(Category::collection_object));
}
