#include <gtest/gtest.h>

#include <cmath>

#include "adl/backend/emit.hpp"
#include "adl/backend/manifest.hpp"
#include "adl/runtime/dictionary.hpp"
#include "adl/runtime/error.hpp"

#include "test_support.hpp"

using namespace adl;
using namespace adl::runtime;

namespace {

DictionaryService event_service()
{
    return adltest::service_for(adltest::compile_corpus_file("event_model.adl"));
}

RuntimeError::Kind failure_kind(const std::function<void()>& f)
{
    try {
        f();
    } catch (const RuntimeError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no RuntimeError";
    return RuntimeError::Kind::unknown_class;
}

} // namespace

TEST(Dictionary, EmptyManifestGivesEmptyRegistry)
{
    auto text = backend::write_manifest(backend::ReflectionManifest{});
    auto service = DictionaryService::load_manifest(text);
    EXPECT_EQ(service.size(), 0u);
}

TEST(Dictionary, LookupByNameAndIdAgree)
{
    auto service = event_service();
    const auto* byName = service.find("Evt::Track");
    ASSERT_NE(byName, nullptr);
    const auto* byId = service.find(adltest::reference_fnv1a("Evt::Track"));
    EXPECT_EQ(byName, byId);
    EXPECT_EQ(service.find("Evt::Nope"), nullptr);
    EXPECT_EQ(service.find(0u), nullptr);
    EXPECT_EQ(service.size(), 4u);
}

TEST(Dictionary, CreateInstanceZeroInitializes)
{
    auto service = event_service();
    auto track = service.create_instance("Evt::Track");
    EXPECT_EQ(track->get("pt"), DynamicValue::f64(0.0));
    EXPECT_EQ(track->get("id"), DynamicValue::i32(0));
    EXPECT_EQ(track->get("charge").as<EnumValue>().label, "negative");
    EXPECT_EQ(track->get("cov.xy"), DynamicValue::f64(0.0));
    EXPECT_TRUE(track->links("origin").empty());
    EXPECT_EQ(track->classId(), adltest::reference_fnv1a("Evt::Track"));

    auto prims = adltest::service_for(adltest::compile_corpus_file("primitives.adl"));
    auto all = prims.create_instance("Prim::AllTypes");
    EXPECT_EQ(all->get("b"), DynamicValue::boolean(false));
    EXPECT_EQ(all->get("str"), DynamicValue::str(""));
    auto seqs = adltest::service_for(adltest::compile_corpus_file("sequences.adl"));
    EXPECT_TRUE(seqs.create_instance("Seq::Path")->get("tags").as<Sequence>().empty());
}

TEST(Dictionary, UnknownAndOpaqueClassesAreNotInstantiable)
{
    auto service = event_service();
    EXPECT_EQ(failure_kind([&] { service.create_instance("Foo"); }), RuntimeError::Kind::unknown_class);
    auto ext = adltest::service_for(adltest::compile_corpus_file("extern_types.adl"));
    try {
        ext.create_instance("Blob");
        FAIL();
    } catch (const RuntimeError& e) {
        EXPECT_EQ(e.kind(), RuntimeError::Kind::not_instantiable);
        EXPECT_NE(std::string(e.what()).find("opaque type not instantiable"), std::string::npos);
    }
}

TEST(Dictionary, ReadYourWrite)
{
    auto service = event_service();
    auto track = service.create_instance("Evt::Track");
    service.set_field(*track, "pt", DynamicValue::f64(3.5));
    EXPECT_EQ(service.get_field(*track, "pt"), DynamicValue::f64(3.5));
}

TEST(Dictionary, TypeMismatchLeavesFieldUnchanged)
{
    auto service = event_service();
    auto track = service.create_instance("Evt::Track");
    service.set_field(*track, "pt", DynamicValue::f64(1.25));
    EXPECT_EQ(failure_kind([&] { service.set_field(*track, "pt", DynamicValue::str("abc")); }),
              RuntimeError::Kind::type_mismatch);
    EXPECT_EQ(track->get("pt"), DynamicValue::f64(1.25));
    EXPECT_EQ(failure_kind([&] { service.set_field(*track, "id", DynamicValue::i64(1)); }),
              RuntimeError::Kind::type_mismatch);
    EnumValue bad{"Evt::Charge", 7, "bogus"};
    EXPECT_EQ(failure_kind([&] { service.set_field(*track, "charge", DynamicValue::enumeration(bad)); }),
              RuntimeError::Kind::type_mismatch);
}

TEST(Dictionary, NestedPaths)
{
    auto service = event_service();
    auto track = service.create_instance("Evt::Track");
    service.set_field(*track, "cov.xx", DynamicValue::f64(2.0));
    EXPECT_EQ(service.get_field(*track, "cov.xx"), DynamicValue::f64(2.0));
    EXPECT_EQ(track->get("cov").as<StructValue>().find("xx")->as<double>(), 2.0);
    EXPECT_EQ(failure_kind([&] { track->get("cov.zz"); }), RuntimeError::Kind::unknown_field);
    EXPECT_EQ(failure_kind([&] { track->get("pt.x"); }), RuntimeError::Kind::unknown_field);
    EXPECT_EQ(failure_kind([&] { track->get("nope"); }), RuntimeError::Kind::unknown_field);
}

TEST(Dictionary, PrivateAttributesNeedPrivilege)
{
    auto service = event_service();
    auto track = service.create_instance("Evt::Track");
    EXPECT_EQ(failure_kind([&] { service.set_field(*track, "seed", DynamicValue::i32(9)); }),
              RuntimeError::Kind::access_denied);
    EXPECT_EQ(track->get("seed"), DynamicValue::i32(0));
    service.set_privileged(true);
    service.set_field(*track, "seed", DynamicValue::i32(9));
    EXPECT_EQ(track->get("seed"), DynamicValue::i32(9));

    auto acct = adltest::service_for(adltest::compile_corpus_file("private_members.adl"));
    auto a = acct.create_instance("Acct::Account");
    EXPECT_EQ(failure_kind([&] { acct.set_field(*a, "secret.owner", DynamicValue::str("x")); }),
              RuntimeError::Kind::access_denied);
}

TEST(Values, ParseAndRenderAgree)
{
    auto service = event_service();
    const auto& schema = *service.find("Evt::Track")->schema;
    auto type_of = [&](std::string_view name) -> const wire::TypeSchema& {
        for (const auto& f : schema.fields) {
            if (f.name == name) {
                return f.type;
            }
        }
        throw std::logic_error("no field");
    };
    EXPECT_EQ(parse_value("3.5", type_of("pt")), DynamicValue::f64(3.5));
    EXPECT_EQ(parse_value("-7", type_of("id")), DynamicValue::i32(-7));
    EXPECT_EQ(parse_value("positive", type_of("charge")).as<EnumValue>().ordinal, 2u);
    auto cov = parse_value("{yy=2}", type_of("cov"));
    EXPECT_EQ(render_value(cov), "{xx=0, yy=2, xy=0}");
    EXPECT_THROW(parse_value("abc", type_of("pt")), RuntimeError);
    EXPECT_THROW(parse_value("99999999999", type_of("id")), RuntimeError);
    EXPECT_EQ(render_value(DynamicValue::f64(std::nan(""))), "nan");
    EXPECT_EQ(render_value(DynamicValue::f32(-INFINITY)), "-inf");
    EXPECT_EQ(render_value(DynamicValue::f64(0.1)), "0.10000000000000001");
    EXPECT_EQ(render_value(DynamicValue::str("a\"b\\\n")), "\"a\\\"b\\\\\\x0a\"");
    EXPECT_EQ(render_value(DynamicValue::opaque(support::Opaque{{0xde, 0xad}})), "x\"dead\"");
    EXPECT_EQ(render_value(DynamicValue::sequence({DynamicValue::i32(1), DynamicValue::i32(2)})), "[1, 2]");
}

TEST(Values, RenderParseRoundTripOnRandomValues)
{
    std::mt19937_64 rng(5);
    for (const auto& name : {"primitives.adl", "sequences.adl", "value_types.adl", "enums.adl",
                             "extern_types.adl"}) {
        auto service = adltest::service_for(adltest::compile_corpus_file(name));
        for (const auto& mc : service.manifest().classes) {
            const auto* d = service.find(mc.qualifiedName);
            for (const auto& f : d->schema->fields) {
                for (int i = 0; i < 20; ++i) {
                    auto v = adltest::random_value(f.type, rng);
                    EXPECT_EQ(parse_value(render_value(v), f.type), v) << render_value(v);
                }
            }
        }
    }
}
