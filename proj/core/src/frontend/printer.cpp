#include "adl/frontend/parser.hpp"

#include <sstream>

namespace adl::frontend {

namespace {

constexpr int kIndent = 4;

std::string type_text(const TypeRef& t)
{
    switch (t.kind) {
    case TypeRef::Kind::primitive: return std::string(primitive_name(t.primitive));
    case TypeRef::Kind::named: return t.name;
    case TypeRef::Kind::void_: return "void";
    case TypeRef::Kind::sequence: return "sequence<" + type_text(*t.element) + ">";
    }
    return {};
}

class Printer {
public:
    std::string run(const CompilationUnit& unit)
    {
        print_decls(unit.decls, 0);
        return os_.str();
    }

private:
    void indent(int level) { os_ << std::string(static_cast<std::size_t>(level * kIndent), ' '); }

    void print_decls(const std::vector<Decl>& decls, int level)
    {
        for (std::size_t i = 0; i < decls.size(); ++i) {
            if (i) {
                os_ << "\n";
            }
            std::visit([&](const auto& d) { print(d, level); }, decls[i].node);
        }
    }

    void print(const ModuleDecl& m, int level)
    {
        indent(level);
        os_ << "module " << m.name << " {\n";
        print_decls(m.members, level + 1);
        indent(level);
        os_ << "};\n";
    }

    void print(const ClassDecl& c, int level)
    {
        indent(level);
        os_ << "class " << c.name;
        bool first = true;
        auto sep = [&] {
            os_ << (first ? " : " : ", ");
            first = false;
        };
        if (c.category != Category::plain) {
            sep();
            os_ << category_name(c.category);
        }
        for (const auto& b : c.bases) {
            sep();
            os_ << b;
        }
        os_ << " {\n";
        for (const auto& member : c.members) {
            indent(level + 1);
            std::visit([&](const auto& m) { print_member(m); }, member);
            os_ << "\n";
        }
        indent(level);
        os_ << "};\n";
    }

    void print_member(const AttributeDecl& a)
    {
        if (a.visibility == Visibility::private_) {
            os_ << "private ";
        }
        if (a.persistent) {
            os_ << "persistent ";
        }
        os_ << type_text(a.type) << " " << a.name << ";";
    }

    void print_member(const RelationshipDecl& r)
    {
        os_ << "relationship " << cardinality_name(r.cardinality) << " " << r.target << " "
            << r.name << " inverse " << r.inverse << ";";
    }

    void print_member(const MethodDecl& m)
    {
        os_ << type_text(m.returnType) << " " << m.name << "(";
        for (std::size_t i = 0; i < m.params.size(); ++i) {
            os_ << (i ? ", " : "") << type_text(m.params[i].type) << " " << m.params[i].name;
        }
        os_ << ")" << (m.isConst ? " const" : "") << ";";
    }

    void print(const ExternDecl& e, int level)
    {
        indent(level);
        os_ << "extern " << e.name << ";\n";
    }

    void print(const EnumDecl& e, int level)
    {
        indent(level);
        os_ << "enum " << e.name << " { ";
        for (std::size_t i = 0; i < e.enumerators.size(); ++i) {
            os_ << (i ? ", " : "") << e.enumerators[i].name;
        }
        os_ << " };\n";
    }

    void print(const TypedefDecl& t, int level)
    {
        indent(level);
        os_ << "typedef " << type_text(t.type) << " " << t.alias << ";\n";
    }

    std::ostringstream os_;
};

} // namespace

std::string pretty_print(const CompilationUnit& unit) { return Printer().run(unit); }

} // namespace adl::frontend
