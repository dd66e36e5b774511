#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adl/frontend/ast.hpp"
#include "adl/meta/class_id.hpp"

namespace adl::meta {

namespace detail {
class Resolver;
}

/// A type reference inside the model. Before resolution named references are
/// `unresolved` and carry the lexical scope they were written in; afterwards
/// every reference is a primitive, a sequence, or points at a registered
/// class, enum, or extern. Typedefs are expanded during resolution.
struct MetaType {
    enum class Kind {
        unresolved,
        void_,
        primitive,
        sequence,
        value,       // plain class embedded by value
        object,      // framework object referenced from a method signature
        enumeration,
        opaque,      // extern type
    };

    Kind kind = Kind::primitive;
    Primitive primitive = Primitive::long_;
    std::string name;  // qualified once resolved; as written while unresolved
    std::shared_ptr<const MetaType> element;
    std::vector<std::string> scope;  // lexical scope, unresolved references only
    SourcePos pos;

    static MetaType make_primitive(Primitive p);
    static MetaType make_sequence(MetaType element);
    static MetaType make_named(Kind kind, std::string qualifiedName);

    /// ADL spelling (`sequence<Evt::Cov>`, `long long`, ...).
    std::string spelling() const;

    friend bool operator==(const MetaType& a, const MetaType& b);
};

struct MetaAttribute {
    std::string name;
    MetaType type;
    Visibility visibility = Visibility::public_;
    bool persistent = false;
    SourcePos pos;

    friend bool operator==(const MetaAttribute&, const MetaAttribute&) = default;
};

struct MetaRelationship {
    std::string name;
    Cardinality cardinality = Cardinality::one;
    std::string target;        // qualified class name once resolved
    std::string inverseClass;  // qualified class part of the inverse once resolved
    std::string inverseName;   // member part of the inverse
    std::string writtenInverse;
    SourcePos pos;

    friend bool operator==(const MetaRelationship&, const MetaRelationship&) = default;
};

struct MetaParam {
    std::string name;
    MetaType type;

    friend bool operator==(const MetaParam&, const MetaParam&) = default;
};

struct MetaMethod {
    std::string name;
    MetaType returnType;
    std::vector<MetaParam> params;
    bool isConst = false;
    SourcePos pos;

    friend bool operator==(const MetaMethod&, const MetaMethod&) = default;
};

struct MetaClass {
    std::string qualifiedName;
    std::string name;
    std::string module;  // qualified name of the enclosing module, "" for the root
    Category category = Category::plain;
    Category declaredCategory = Category::plain;
    std::vector<std::string> bases;  // qualified once resolved
    std::vector<MetaAttribute> attributes;
    std::vector<MetaMethod> methods;
    std::vector<MetaRelationship> relationships;
    ClassId classId;
    std::vector<std::string> scope;
    SourcePos pos;

    bool is_extern() const { return category == Category::extern_type; }
    bool is_framework_object() const
    {
        return category == Category::data_object || category == Category::contained_object ||
               category == Category::collection_object;
    }

    friend bool operator==(const MetaClass&, const MetaClass&) = default;
};

struct MetaEnum {
    std::string qualifiedName;
    std::string name;
    std::string module;
    std::vector<std::string> enumerators;
    SourcePos pos;

    friend bool operator==(const MetaEnum&, const MetaEnum&) = default;
};

struct MetaTypedef {
    std::string qualifiedName;
    std::string name;
    std::string module;
    MetaType type;
    SourcePos pos;

    friend bool operator==(const MetaTypedef&, const MetaTypedef&) = default;
};

struct MetaModule {
    std::string qualifiedName;
    std::vector<std::string> classes;  // qualified names, declaration order
    std::vector<std::string> enums;
    std::vector<std::string> typedefs;

    friend bool operator==(const MetaModule&, const MetaModule&) = default;
};

/// The meta-object representation: every class, enum and typedef declared by a
/// set of compilation units, plus a reflection-style query API. A resolved
/// model is immutable and safe to share between threads for reading.
class MetaModel {
public:
    const std::map<std::string, MetaModule>& modules() const { return modules_; }
    const std::vector<MetaClass>& classes() const { return classes_; }
    const std::vector<MetaEnum>& enums() const { return enums_; }
    const std::vector<MetaTypedef>& typedefs() const { return typedefs_; }
    bool resolved() const { return resolved_; }

    const MetaClass* find_class(std::string_view qualifiedName) const;
    const MetaEnum* find_enum(std::string_view qualifiedName) const;
    const MetaTypedef* find_typedef(std::string_view qualifiedName) const;

    /// Depth-first, left-to-right walk of the base graph, each class emitted
    /// after its bases and only on first visit; the class itself comes last.
    std::vector<const MetaClass*> linearization(const MetaClass& cls) const;

    /// Attributes in linearization order when `includeInherited` is set.
    std::vector<MetaAttribute> attributes_of(const MetaClass& cls, bool includeInherited) const;
    std::vector<MetaRelationship> relationships_of(const MetaClass& cls,
                                                   bool includeInherited) const;
    const MetaRelationship* find_relationship(const MetaClass& cls, std::string_view name) const;

    /// Reflexive and transitive. `ancestor` matches a qualified or simple class
    /// name, or one of the object category keywords.
    bool is_kind_of(const MetaClass& cls, std::string_view ancestor) const;

    friend bool operator==(const MetaModel&, const MetaModel&) = default;

private:
    friend class ModelBuilder;
    friend class detail::Resolver;
    friend Outcome<MetaModel> resolve(MetaModel model);

    MetaClass* mutable_class(std::string_view qualifiedName);

    std::map<std::string, MetaModule> modules_;
    std::vector<MetaClass> classes_;
    std::map<std::string, std::size_t, std::less<>> classIndex_;
    std::vector<MetaEnum> enums_;
    std::map<std::string, std::size_t, std::less<>> enumIndex_;
    std::vector<MetaTypedef> typedefs_;
    std::map<std::string, std::size_t, std::less<>> typedefIndex_;
    bool resolved_ = false;
};

/// Visits every unit and collects its declarations into one unresolved model.
Outcome<MetaModel> build_model(std::span<const frontend::CompilationUnit> units);

/// Binds names, linearizes inheritance, verifies relationship inverses and
/// assigns ClassIds. Resolving an already resolved model returns it unchanged.
Outcome<MetaModel> resolve(MetaModel model);

/// Qualified-name helpers: `join_name("Evt", "Track") == "Evt::Track"`.
std::string join_name(std::string_view scope, std::string_view name);
std::string simple_name(std::string_view qualifiedName);

} // namespace adl::meta
