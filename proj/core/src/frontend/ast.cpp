#include "adl/frontend/ast.hpp"

#include <sstream>

namespace adl {

std::string_view primitive_name(Primitive p)
{
    switch (p) {
    case Primitive::boolean: return "boolean";
    case Primitive::octet: return "octet";
    case Primitive::short_: return "short";
    case Primitive::long_: return "long";
    case Primitive::long_long: return "long long";
    case Primitive::float_: return "float";
    case Primitive::double_: return "double";
    case Primitive::string: return "string";
    }
    return "?";
}

std::string_view category_name(Category c)
{
    switch (c) {
    case Category::plain: return "plain";
    case Category::data_object: return "DataObject";
    case Category::contained_object: return "ContainedObject";
    case Category::collection_object: return "CollectionObject";
    case Category::extern_type: return "extern";
    }
    return "?";
}

std::string_view cardinality_name(Cardinality c)
{
    return c == Cardinality::one ? "one" : "many";
}

} // namespace adl

namespace adl::frontend {

TypeRef TypeRef::make_primitive(Primitive p, SourcePos pos)
{
    TypeRef t;
    t.kind = Kind::primitive;
    t.primitive = p;
    t.pos = std::move(pos);
    return t;
}

TypeRef TypeRef::make_named(std::string name, SourcePos pos)
{
    TypeRef t;
    t.kind = Kind::named;
    t.name = std::move(name);
    t.pos = std::move(pos);
    return t;
}

TypeRef TypeRef::make_sequence(TypeRef element, SourcePos pos)
{
    TypeRef t;
    t.kind = Kind::sequence;
    t.element = std::make_shared<const TypeRef>(std::move(element));
    t.pos = std::move(pos);
    return t;
}

TypeRef TypeRef::make_void(SourcePos pos)
{
    TypeRef t;
    t.kind = Kind::void_;
    t.pos = std::move(pos);
    return t;
}

namespace {

void dump_type(std::ostream& os, const TypeRef& t)
{
    switch (t.kind) {
    case TypeRef::Kind::primitive: os << "(prim " << primitive_name(t.primitive) << ")"; break;
    case TypeRef::Kind::named: os << "(named " << t.name << ")"; break;
    case TypeRef::Kind::void_: os << "(void)"; break;
    case TypeRef::Kind::sequence:
        os << "(seq ";
        dump_type(os, *t.element);
        os << ")";
        break;
    }
}

struct MemberDumper {
    std::ostream& os;

    void operator()(const AttributeDecl& a) const
    {
        os << "(attr " << a.name << " " << (a.visibility == Visibility::private_ ? "private" : "public")
           << (a.persistent ? " persistent " : " transient ");
        dump_type(os, a.type);
        os << ")";
    }
    void operator()(const RelationshipDecl& r) const
    {
        os << "(rel " << cardinality_name(r.cardinality) << " " << r.target << " " << r.name
           << " inverse " << r.inverse << ")";
    }
    void operator()(const MethodDecl& m) const
    {
        os << "(method " << m.name << " ";
        dump_type(os, m.returnType);
        os << " (";
        for (const auto& p : m.params) {
            os << "(param " << p.name << " ";
            dump_type(os, p.type);
            os << ")";
        }
        os << ")" << (m.isConst ? " const" : "") << ")";
    }
};

void dump_decl(std::ostream& os, const Decl& decl);

struct DeclDumper {
    std::ostream& os;

    void operator()(const ModuleDecl& m) const
    {
        os << "(module " << m.name;
        for (const auto& d : m.members) {
            os << " ";
            dump_decl(os, d);
        }
        os << ")";
    }
    void operator()(const ClassDecl& c) const
    {
        os << "(class " << c.name << " " << category_name(c.category) << " (";
        for (std::size_t i = 0; i < c.bases.size(); ++i) {
            os << (i ? " " : "") << c.bases[i];
        }
        os << ")";
        for (const auto& m : c.members) {
            os << " ";
            std::visit(MemberDumper{os}, m);
        }
        os << ")";
    }
    void operator()(const ExternDecl& e) const { os << "(extern " << e.name << ")"; }
    void operator()(const EnumDecl& e) const
    {
        os << "(enum " << e.name;
        for (const auto& en : e.enumerators) {
            os << " " << en.name;
        }
        os << ")";
    }
    void operator()(const TypedefDecl& t) const
    {
        os << "(typedef " << t.alias << " ";
        dump_type(os, t.type);
        os << ")";
    }
};

void dump_decl(std::ostream& os, const Decl& decl) { std::visit(DeclDumper{os}, decl.node); }

} // namespace

std::string dump_structure(const CompilationUnit& unit)
{
    std::ostringstream os;
    os << "(unit";
    for (const auto& d : unit.decls) {
        os << " ";
        dump_decl(os, d);
    }
    os << ")";
    return os.str();
}

bool structurally_equal(const CompilationUnit& a, const CompilationUnit& b)
{
    return dump_structure(a) == dump_structure(b);
}

void AstVisitor::walk(const CompilationUnit& unit)
{
    scope_.clear();
    for (const auto& d : unit.decls) {
        walk_decl(d);
    }
}

void AstVisitor::walk_decl(const Decl& decl)
{
    if (const auto* m = std::get_if<ModuleDecl>(&decl.node)) {
        enter_module(*m);
        scope_.push_back(m->name);
        for (const auto& d : m->members) {
            walk_decl(d);
        }
        scope_.pop_back();
        leave_module(*m);
    } else if (const auto* c = std::get_if<ClassDecl>(&decl.node)) {
        visit_class(*c);
    } else if (const auto* e = std::get_if<ExternDecl>(&decl.node)) {
        visit_extern(*e);
    } else if (const auto* en = std::get_if<EnumDecl>(&decl.node)) {
        visit_enum(*en);
    } else if (const auto* t = std::get_if<TypedefDecl>(&decl.node)) {
        visit_typedef(*t);
    }
}

} // namespace adl::frontend
