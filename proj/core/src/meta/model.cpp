#include "adl/meta/model.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace adl::meta {

std::string to_hex(ClassId id)
{
    char buf[11];
    std::snprintf(buf, sizeof buf, "0x%08x", id.value);
    return buf;
}

std::string join_name(std::string_view scope, std::string_view name)
{
    if (scope.empty()) {
        return std::string(name);
    }
    std::string out(scope);
    out += "::";
    out += name;
    return out;
}

std::string simple_name(std::string_view qualifiedName)
{
    auto pos = qualifiedName.rfind("::");
    return std::string(pos == std::string_view::npos ? qualifiedName
                                                     : qualifiedName.substr(pos + 2));
}

MetaType MetaType::make_primitive(Primitive p)
{
    MetaType t;
    t.kind = Kind::primitive;
    t.primitive = p;
    return t;
}

MetaType MetaType::make_sequence(MetaType element)
{
    MetaType t;
    t.kind = Kind::sequence;
    t.element = std::make_shared<const MetaType>(std::move(element));
    return t;
}

MetaType MetaType::make_named(Kind kind, std::string qualifiedName)
{
    MetaType t;
    t.kind = kind;
    t.name = std::move(qualifiedName);
    return t;
}

std::string MetaType::spelling() const
{
    switch (kind) {
    case Kind::void_: return "void";
    case Kind::primitive: return std::string(primitive_name(primitive));
    case Kind::sequence: return "sequence<" + element->spelling() + ">";
    default: return name;
    }
}

bool operator==(const MetaType& a, const MetaType& b)
{
    if (a.kind != b.kind || a.name != b.name || a.scope != b.scope || a.pos != b.pos) {
        return false;
    }
    if (a.kind == MetaType::Kind::primitive && a.primitive != b.primitive) {
        return false;
    }
    if (static_cast<bool>(a.element) != static_cast<bool>(b.element)) {
        return false;
    }
    return !a.element || *a.element == *b.element;
}

const MetaClass* MetaModel::find_class(std::string_view qualifiedName) const
{
    auto it = classIndex_.find(qualifiedName);
    return it == classIndex_.end() ? nullptr : &classes_[it->second];
}

MetaClass* MetaModel::mutable_class(std::string_view qualifiedName)
{
    auto it = classIndex_.find(qualifiedName);
    return it == classIndex_.end() ? nullptr : &classes_[it->second];
}

const MetaEnum* MetaModel::find_enum(std::string_view qualifiedName) const
{
    auto it = enumIndex_.find(qualifiedName);
    return it == enumIndex_.end() ? nullptr : &enums_[it->second];
}

const MetaTypedef* MetaModel::find_typedef(std::string_view qualifiedName) const
{
    auto it = typedefIndex_.find(qualifiedName);
    return it == typedefIndex_.end() ? nullptr : &typedefs_[it->second];
}

std::vector<const MetaClass*> MetaModel::linearization(const MetaClass& cls) const
{
    std::vector<const MetaClass*> order;
    std::set<const MetaClass*> visited;
    // Explicit stack so that a malformed (cyclic) model cannot recurse forever;
    // `visited` is marked on entry, so cycles terminate.
    struct Frame {
        const MetaClass* cls;
        std::size_t next;
    };
    std::vector<Frame> stack{{&cls, 0}};
    visited.insert(&cls);
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next < top.cls->bases.size()) {
            const MetaClass* base = find_class(top.cls->bases[top.next++]);
            if (base && visited.insert(base).second) {
                stack.push_back({base, 0});
            }
            continue;
        }
        order.push_back(top.cls);
        stack.pop_back();
    }
    return order;
}

std::vector<MetaAttribute> MetaModel::attributes_of(const MetaClass& cls,
                                                    bool includeInherited) const
{
    if (!includeInherited) {
        return cls.attributes;
    }
    std::vector<MetaAttribute> out;
    for (const MetaClass* c : linearization(cls)) {
        out.insert(out.end(), c->attributes.begin(), c->attributes.end());
    }
    return out;
}

std::vector<MetaRelationship> MetaModel::relationships_of(const MetaClass& cls,
                                                          bool includeInherited) const
{
    if (!includeInherited) {
        return cls.relationships;
    }
    std::vector<MetaRelationship> out;
    for (const MetaClass* c : linearization(cls)) {
        out.insert(out.end(), c->relationships.begin(), c->relationships.end());
    }
    return out;
}

const MetaRelationship* MetaModel::find_relationship(const MetaClass& cls,
                                                     std::string_view name) const
{
    for (const MetaClass* c : linearization(cls)) {
        for (const auto& r : c->relationships) {
            if (r.name == name) {
                return &r;
            }
        }
    }
    return nullptr;
}

bool MetaModel::is_kind_of(const MetaClass& cls, std::string_view ancestor) const
{
    for (const MetaClass* c : linearization(cls)) {
        if (c->qualifiedName == ancestor || c->name == ancestor) {
            return true;
        }
        if (c->category != Category::plain && c->category != Category::extern_type &&
            category_name(c->category) == ancestor) {
            return true;
        }
    }
    return false;
}

} // namespace adl::meta
