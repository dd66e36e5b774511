#include "adl/backend/schema.hpp"

#include <set>

namespace adl::backend {

namespace {

using wire::FieldSchema;
using wire::Tag;
using wire::TypeSchema;

[[noreturn]] void inconsistent(const std::string& what)
{
    throw ManifestError(ManifestError::Kind::malformed, "inconsistent manifest: " + what);
}

class SchemaBuilder {
public:
    explicit SchemaBuilder(const ReflectionManifest& m) : manifest_(m)
    {
        for (const auto& c : m.classes) {
            if (!classes_.emplace(c.qualifiedName, &c).second) {
                inconsistent("class '" + c.qualifiedName + "' listed twice");
            }
        }
        for (const auto& e : m.enums) {
            if (!enums_.emplace(e.qualifiedName, &e).second) {
                inconsistent("enum '" + e.qualifiedName + "' listed twice");
            }
        }
    }

    std::map<std::string, wire::ClassSchema> build()
    {
        std::map<std::uint32_t, std::string> ids;
        std::map<std::string, wire::ClassSchema> out;
        for (const auto& c : manifest_.classes) {
            auto [it, fresh] = ids.emplace(c.classId, c.qualifiedName);
            if (!fresh) {
                throw ManifestError(ManifestError::Kind::duplicate_class_id,
                                    "duplicate classId " + meta::to_hex(meta::ClassId{c.classId}) +
                                        " shared by '" + it->second + "' and '" +
                                        c.qualifiedName + "'");
            }
            wire::ClassSchema s;
            s.classId = c.classId;
            s.name = c.qualifiedName;
            s.category = wire_category(c.category);
            if (c.linearization.empty() || c.linearization.back() != c.qualifiedName) {
                inconsistent("linearization of '" + c.qualifiedName + "' must end with the class");
            }
            s.ancestors.assign(c.linearization.begin(), c.linearization.end() - 1);
            s.fields = fields_of(c, 0);
            for (const auto& k : c.linearization) {
                for (const auto& r : lookup(k).relationships) {
                    s.links.push_back(wire::LinkSchema{r.name, r.cardinality == "many", r.target,
                                                       r.inverse});
                }
            }
            out.emplace(c.qualifiedName, std::move(s));
        }
        return out;
    }

private:
    const ManifestClass& lookup(const std::string& name) const
    {
        auto it = classes_.find(name);
        if (it == classes_.end()) {
            inconsistent("unknown class '" + name + "'");
        }
        return *it->second;
    }

    std::vector<FieldSchema> fields_of(const ManifestClass& c, int depth)
    {
        if (depth > wire::kMaxTypeDepth) {
            inconsistent("value types nested too deeply under '" + c.qualifiedName + "'");
        }
        std::vector<FieldSchema> fields;
        for (const auto& k : c.linearization) {
            for (const auto& a : lookup(k).attributes) {
                FieldSchema f;
                f.name = a.name;
                f.persistent = a.persistent;
                f.isPrivate = a.visibility == "private";
                f.type = type_of(a.type, depth);
                fields.push_back(std::move(f));
            }
        }
        return fields;
    }

    TypeSchema type_of(const ManifestType& t, int depth)
    {
        static const std::map<std::string, Tag> kPrims = {
            {"boolean", Tag::boolean}, {"octet", Tag::octet},         {"short", Tag::short_},
            {"long", Tag::long_},      {"long long", Tag::long_long}, {"float", Tag::float_},
            {"double", Tag::double_},  {"string", Tag::string},
        };
        if (t.kind == "primitive") {
            return TypeSchema::primitive(kPrims.at(t.name));
        }
        if (t.kind == "sequence") {
            return TypeSchema::sequence_of(type_of(*t.element, depth));
        }
        TypeSchema out;
        out.name = t.name;
        if (t.kind == "enum") {
            auto it = enums_.find(t.name);
            if (it == enums_.end()) {
                inconsistent("unknown enum '" + t.name + "'");
            }
            out.tag = Tag::enumeration;
            out.enumerators = it->second->enumerators;
        } else if (t.kind == "value") {
            const ManifestClass& c = lookup(t.name);
            if (c.category != "plain") {
                inconsistent("'" + t.name + "' is held by value but is not a plain class");
            }
            out.tag = Tag::structure;
            out.fields = fields_of(c, depth + 1);
        } else if (t.kind == "extern") {
            out.tag = Tag::opaque;
        } else {
            inconsistent("attribute of kind '" + t.kind + "'");
        }
        return out;
    }

    const ReflectionManifest& manifest_;
    std::map<std::string, const ManifestClass*> classes_;
    std::map<std::string, const ManifestEnum*> enums_;
};

} // namespace

wire::ClassCategory wire_category(std::string_view c)
{
    if (c == "DataObject") {
        return wire::ClassCategory::data_object;
    }
    if (c == "ContainedObject") {
        return wire::ClassCategory::contained_object;
    }
    if (c == "CollectionObject") {
        return wire::ClassCategory::collection_object;
    }
    if (c == "extern") {
        return wire::ClassCategory::extern_type;
    }
    return wire::ClassCategory::plain;
}

std::map<std::string, wire::ClassSchema> build_schemas(const ReflectionManifest& manifest)
{
    return SchemaBuilder(manifest).build();
}

} // namespace adl::backend
