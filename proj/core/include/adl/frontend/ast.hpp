#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "adl/frontend/diagnostic.hpp"

namespace adl {

enum class Primitive { boolean, octet, short_, long_, long_long, float_, double_, string };

std::string_view primitive_name(Primitive p);

enum class Category { plain, data_object, contained_object, collection_object, extern_type };

/// ADL keyword for a category (`DataObject`, ...); "plain" and "extern" for the others.
std::string_view category_name(Category c);

enum class Visibility { public_, private_ };
enum class Cardinality { one, many };

std::string_view cardinality_name(Cardinality c);

} // namespace adl

namespace adl::frontend {

/// Maximum nesting of `sequence<...>` inside one type reference.
inline constexpr int kMaxSequenceDepth = 8;
/// Maximum nesting of `module` blocks.
inline constexpr int kMaxModuleDepth = 64;

struct TypeRef {
    enum class Kind { primitive, named, sequence, void_ };

    Kind kind = Kind::primitive;
    Primitive primitive = Primitive::long_;
    std::string name;                        // scoped name as written, for `named`
    std::shared_ptr<const TypeRef> element;  // for `sequence`
    SourcePos pos;

    static TypeRef make_primitive(Primitive p, SourcePos pos = {});
    static TypeRef make_named(std::string name, SourcePos pos = {});
    static TypeRef make_sequence(TypeRef element, SourcePos pos = {});
    static TypeRef make_void(SourcePos pos = {});
};

struct AttributeDecl {
    TypeRef type;
    std::string name;
    Visibility visibility = Visibility::public_;
    bool persistent = false;
    SourcePos pos;
};

struct RelationshipDecl {
    Cardinality cardinality = Cardinality::one;
    std::string target;   // scoped class name
    std::string name;
    std::string inverse;  // `Class::member`, possibly with a module prefix
    SourcePos pos;
};

struct Param {
    TypeRef type;
    std::string name;
    SourcePos pos;
};

struct MethodDecl {
    TypeRef returnType;
    std::string name;
    std::vector<Param> params;
    bool isConst = false;
    SourcePos pos;
};

using ClassMember = std::variant<AttributeDecl, RelationshipDecl, MethodDecl>;

struct ClassDecl {
    std::string name;
    Category category = Category::plain;
    std::vector<std::string> bases;  // scoped names, declaration order
    std::vector<ClassMember> members;
    SourcePos pos;
};

struct ExternDecl {
    std::string name;
    SourcePos pos;
};

struct Enumerator {
    std::string name;
    SourcePos pos;
};

struct EnumDecl {
    std::string name;
    std::vector<Enumerator> enumerators;
    SourcePos pos;
};

struct TypedefDecl {
    std::string alias;
    TypeRef type;
    SourcePos pos;
};

struct Decl;

struct ModuleDecl {
    std::string name;
    std::vector<Decl> members;
    SourcePos pos;
};

struct Decl {
    std::variant<ModuleDecl, ClassDecl, ExternDecl, EnumDecl, TypedefDecl> node;
};

struct CompilationUnit {
    std::string file;
    std::vector<Decl> decls;
};

/// Position-free structural rendering of a unit; two units are structurally
/// equal iff their dumps are equal.
std::string dump_structure(const CompilationUnit& unit);
bool structurally_equal(const CompilationUnit& a, const CompilationUnit& b);

/// Classic visitor over the AST. `walk` drives the traversal in declaration
/// order; overriders receive the enclosing module path as a scope.
class AstVisitor {
public:
    virtual ~AstVisitor() = default;

    void walk(const CompilationUnit& unit);

protected:
    virtual void enter_module(const ModuleDecl& /*module*/) {}
    virtual void leave_module(const ModuleDecl& /*module*/) {}
    virtual void visit_class(const ClassDecl& /*cls*/) {}
    virtual void visit_extern(const ExternDecl& /*ext*/) {}
    virtual void visit_enum(const EnumDecl& /*en*/) {}
    virtual void visit_typedef(const TypedefDecl& /*td*/) {}

    /// Enclosing module names, outermost first.
    const std::vector<std::string>& scope() const { return scope_; }

private:
    void walk_decl(const Decl& decl);

    std::vector<std::string> scope_;
};

} // namespace adl::frontend
