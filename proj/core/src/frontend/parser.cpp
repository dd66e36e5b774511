#include "adl/frontend/parser.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace adl::frontend {

namespace {

// IDL features outside the ADL subset, keyed by the keyword that introduces
// them. The description is what the diagnostic names.
const std::map<std::string_view, std::string_view> kUnsupported = {
    {"union", "union"},
    {"any", "any"},
    {"in", "in parameter mode"},
    {"out", "out parameter mode"},
    {"inout", "inout parameter mode"},
    {"raises", "raises clause"},
    {"exception", "exception"},
    {"interface", "interface"},
    {"struct", "struct"},
    {"attribute", "attribute declaration"},
    {"readonly", "readonly attribute"},
    {"oneway", "oneway operation"},
    {"unsigned", "unsigned integer type"},
    {"wstring", "wstring"},
    {"wchar", "wchar"},
    {"char", "char"},
    {"fixed", "fixed-point type"},
    {"valuetype", "valuetype"},
    {"native", "native type"},
    {"context", "context clause"},
};

struct ParseFailure {};

class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {}

    Outcome<CompilationUnit> run()
    {
        CompilationUnit unit;
        if (toks_.empty() || toks_.back().kind != TokenKind::end_of_input) {
            Diagnostic d;
            d.code = DiagCode::parse_syntax;
            d.message = "token stream does not end with end of input";
            if (!toks_.empty()) {
                d.pos = toks_.back().begin;
            }
            return Outcome<CompilationUnit>{std::nullopt, {d}};
        }
        unit.file = toks_.front().begin.file;
        while (!at_end()) {
            parse_definition_into(unit.decls, 0, /*top_level=*/true);
        }
        Outcome<CompilationUnit> out;
        if (!has_errors(diags_)) {
            out.value = std::move(unit);
        }
        out.diagnostics = std::move(diags_);
        return out;
    }

private:
    const Token& cur() const { return toks_[idx_]; }
    const Token& peek(std::size_t ahead = 1) const
    {
        return toks_[std::min(idx_ + ahead, toks_.size() - 1)];
    }
    bool at_end() const { return cur().kind == TokenKind::end_of_input; }
    const Token& take()
    {
        const Token& t = toks_[idx_];
        if (!at_end()) {
            ++idx_;
        }
        return t;
    }

    static std::string show(const Token& t)
    {
        if (t.kind == TokenKind::end_of_input) {
            return "end of input";
        }
        return "'" + t.text + "'";
    }

    [[noreturn]] void fail(DiagCode code, std::string message, const SourcePos& pos)
    {
        diags_.push_back(Diagnostic{Severity::error, code, std::move(message), pos});
        throw ParseFailure{};
    }

    [[noreturn]] void expected(std::initializer_list<std::string_view> what)
    {
        if (cur().kind == TokenKind::keyword) {
            check_unsupported(cur());
        }
        std::string msg = "syntax error: expected ";
        std::size_t i = 0;
        for (auto w : what) {
            if (i) {
                msg += i + 1 == what.size() ? " or " : ", ";
            }
            msg += w;
            ++i;
        }
        msg += ", found " + show(cur());
        fail(DiagCode::parse_syntax, std::move(msg), cur().begin);
    }

    void check_unsupported(const Token& t)
    {
        if (t.kind != TokenKind::keyword) {
            return;
        }
        auto it = kUnsupported.find(t.text);
        if (it != kUnsupported.end()) {
            fail(DiagCode::parse_unsupported,
                 "unsupported IDL construct: " + std::string(it->second), t.begin);
        }
    }

    void expect_punct(std::string_view p)
    {
        if (!cur().is_punct(p)) {
            expected({quote(p)});
        }
        take();
    }

    static std::string_view quote(std::string_view p)
    {
        // interned quoted forms for the punctuators the grammar uses
        static const std::map<std::string_view, std::string_view> q = {
            {";", "';'"}, {"{", "'{'"}, {"}", "'}'"}, {"(", "'('"}, {")", "')'"},
            {"<", "'<'"}, {">", "'>'"}, {":", "':'"}, {",", "','"}, {"::", "'::'"}};
        auto it = q.find(p);
        return it == q.end() ? p : it->second;
    }

    void expect_keyword(std::string_view k)
    {
        if (!cur().is_keyword(k)) {
            expected({k});
        }
        take();
    }

    std::string expect_identifier()
    {
        if (cur().kind != TokenKind::identifier) {
            expected({"identifier"});
        }
        return take().text;
    }

    std::string parse_scoped_name()
    {
        std::string name = expect_identifier();
        while (cur().is_punct("::")) {
            take();
            name += "::";
            name += expect_identifier();
        }
        return name;
    }

    // Skips to the end of the broken construct: past the next `;` at brace depth
    // zero, or up to (not past) an unmatched `}`.
    void synchronize(std::size_t start)
    {
        int depth = 0;
        while (!at_end()) {
            const Token& t = cur();
            if (t.is_punct("{")) {
                ++depth;
            } else if (t.is_punct("}")) {
                if (depth == 0) {
                    break;
                }
                --depth;
            } else if (t.is_punct(";") && depth == 0) {
                take();
                return;
            }
            take();
        }
        if (idx_ == start && !at_end()) {
            take();
        }
    }

    void parse_definition_into(std::vector<Decl>& out, int depth, bool top_level)
    {
        std::size_t start = idx_;
        try {
            if (top_level && cur().is_punct("}")) {
                fail(DiagCode::parse_syntax, "syntax error: unmatched '}'", cur().begin);
            }
            out.push_back(parse_definition(depth));
        } catch (const ParseFailure&) {
            synchronize(start);
        }
    }

    Decl parse_definition(int depth)
    {
        const Token& t = cur();
        if (t.is_keyword("module")) {
            return Decl{parse_module(depth)};
        }
        if (t.is_keyword("class")) {
            return Decl{parse_class()};
        }
        if (t.is_keyword("extern")) {
            SourcePos pos = take().begin;
            ExternDecl e{parse_plain_identifier(), pos};
            expect_punct(";");
            return Decl{std::move(e)};
        }
        if (t.is_keyword("enum")) {
            return Decl{parse_enum()};
        }
        if (t.is_keyword("typedef")) {
            SourcePos pos = take().begin;
            TypeRef type = parse_type(0);
            std::string alias = expect_identifier();
            expect_punct(";");
            return Decl{TypedefDecl{std::move(alias), std::move(type), std::move(pos)}};
        }
        if (t.is_keyword("const")) {
            fail(DiagCode::parse_unsupported, "unsupported IDL construct: const declaration",
                 t.begin);
        }
        expected({"'module'", "'class'", "'extern'", "'enum'", "'typedef'"});
    }

    std::string parse_plain_identifier() { return expect_identifier(); }

    ModuleDecl parse_module(int depth)
    {
        SourcePos pos = take().begin;
        if (depth + 1 > kMaxModuleDepth) {
            fail(DiagCode::parse_too_deep,
                 "module nesting exceeds " + std::to_string(kMaxModuleDepth) + " levels", pos);
        }
        ModuleDecl m;
        m.pos = pos;
        m.name = expect_identifier();
        expect_punct("{");
        while (!at_end() && !cur().is_punct("}")) {
            parse_definition_into(m.members, depth + 1, false);
        }
        expect_punct("}");
        expect_punct(";");
        return m;
    }

    static std::optional<Category> category_keyword(const Token& t)
    {
        if (t.is_keyword("DataObject")) {
            return Category::data_object;
        }
        if (t.is_keyword("ContainedObject")) {
            return Category::contained_object;
        }
        if (t.is_keyword("CollectionObject")) {
            return Category::collection_object;
        }
        return std::nullopt;
    }

    ClassDecl parse_class()
    {
        ClassDecl c;
        c.pos = take().begin;
        c.name = expect_identifier();
        if (cur().is_punct(":")) {
            take();
            bool have_category = false;
            while (true) {
                if (auto cat = category_keyword(cur())) {
                    if (have_category) {
                        fail(DiagCode::parse_duplicate_modifier,
                             "class '" + c.name + "' lists more than one object category",
                             cur().begin);
                    }
                    have_category = true;
                    c.category = *cat;
                    take();
                } else if (cur().kind == TokenKind::identifier) {
                    c.bases.push_back(parse_scoped_name());
                } else {
                    expected({"base class name", "object category"});
                }
                if (!cur().is_punct(",")) {
                    break;
                }
                take();
            }
        }
        expect_punct("{");
        while (!at_end() && !cur().is_punct("}")) {
            std::size_t start = idx_;
            try {
                c.members.push_back(parse_member());
            } catch (const ParseFailure&) {
                synchronize(start);
            }
        }
        expect_punct("}");
        expect_punct(";");
        return c;
    }

    ClassMember parse_member()
    {
        const Token& t = cur();
        if (t.is_keyword("relationship")) {
            return parse_relationship();
        }
        SourcePos pos = t.begin;
        bool is_private = false;
        bool is_persistent = false;
        bool any_modifier = false;
        while (cur().is_keyword("private") || cur().is_keyword("persistent")) {
            bool& flag = cur().is_keyword("private") ? is_private : is_persistent;
            if (flag) {
                fail(DiagCode::parse_duplicate_modifier,
                     "duplicate modifier '" + cur().text + "'", cur().begin);
            }
            flag = true;
            any_modifier = true;
            take();
        }
        TypeRef type;
        if (cur().is_keyword("void")) {
            type = TypeRef::make_void(take().begin);
        } else if (cur().is_keyword("oneway") || cur().is_keyword("attribute") ||
                   cur().is_keyword("readonly")) {
            check_unsupported(cur());
        } else {
            type = parse_type(0);
        }
        std::string name = expect_identifier();
        if (cur().is_punct("(")) {
            if (any_modifier) {
                fail(DiagCode::parse_syntax,
                     "syntax error: 'private' and 'persistent' apply to attributes only", pos);
            }
            return parse_method_rest(std::move(type), std::move(name), pos);
        }
        if (type.kind == TypeRef::Kind::void_) {
            fail(DiagCode::parse_syntax, "syntax error: attribute '" + name + "' declared void",
                 pos);
        }
        expect_punct(";");
        AttributeDecl a;
        a.type = std::move(type);
        a.name = std::move(name);
        a.visibility = is_private ? Visibility::private_ : Visibility::public_;
        a.persistent = is_persistent;
        a.pos = pos;
        return a;
    }

    MethodDecl parse_method_rest(TypeRef ret, std::string name, SourcePos pos)
    {
        MethodDecl m;
        m.returnType = std::move(ret);
        m.name = std::move(name);
        m.pos = std::move(pos);
        expect_punct("(");
        if (!cur().is_punct(")")) {
            while (true) {
                check_unsupported(cur()); // in / out / inout
                Param p;
                p.pos = cur().begin;
                p.type = parse_type(0);
                p.name = expect_identifier();
                m.params.push_back(std::move(p));
                if (!cur().is_punct(",")) {
                    break;
                }
                take();
            }
        }
        expect_punct(")");
        if (cur().is_keyword("const")) {
            take();
            m.isConst = true;
        }
        check_unsupported(cur()); // raises / context
        expect_punct(";");
        return m;
    }

    RelationshipDecl parse_relationship()
    {
        RelationshipDecl r;
        r.pos = take().begin;
        if (cur().is_keyword("one")) {
            r.cardinality = Cardinality::one;
        } else if (cur().is_keyword("many")) {
            r.cardinality = Cardinality::many;
        } else {
            expected({"'one'", "'many'"});
        }
        take();
        r.target = parse_scoped_name();
        r.name = expect_identifier();
        expect_keyword("inverse");
        SourcePos inv_pos = cur().begin;
        r.inverse = parse_scoped_name();
        if (r.inverse.find("::") == std::string::npos) {
            fail(DiagCode::parse_syntax,
                 "syntax error: inverse must name a member as Class::member", inv_pos);
        }
        expect_punct(";");
        return r;
    }

    EnumDecl parse_enum()
    {
        EnumDecl e;
        e.pos = take().begin;
        e.name = expect_identifier();
        expect_punct("{");
        while (true) {
            SourcePos pos = cur().begin;
            e.enumerators.push_back(Enumerator{expect_identifier(), pos});
            if (!cur().is_punct(",")) {
                break;
            }
            take();
        }
        expect_punct("}");
        expect_punct(";");
        return e;
    }

    TypeRef parse_type(int depth)
    {
        const Token& t = cur();
        SourcePos pos = t.begin;
        if (t.kind == TokenKind::identifier) {
            return TypeRef::make_named(parse_scoped_name(), pos);
        }
        if (t.kind == TokenKind::keyword) {
            static const std::map<std::string_view, Primitive> kPrims = {
                {"boolean", Primitive::boolean}, {"octet", Primitive::octet},
                {"short", Primitive::short_},    {"float", Primitive::float_},
                {"double", Primitive::double_},  {"string", Primitive::string}};
            if (auto it = kPrims.find(t.text); it != kPrims.end()) {
                take();
                return TypeRef::make_primitive(it->second, pos);
            }
            if (t.text == "long") {
                take();
                if (cur().is_keyword("long")) {
                    take();
                    return TypeRef::make_primitive(Primitive::long_long, pos);
                }
                if (cur().is_keyword("double")) {
                    fail(DiagCode::parse_unsupported, "unsupported IDL construct: long double",
                         pos);
                }
                return TypeRef::make_primitive(Primitive::long_, pos);
            }
            if (t.text == "sequence") {
                take();
                if (depth + 1 > kMaxSequenceDepth) {
                    fail(DiagCode::parse_too_deep,
                         "sequence nesting exceeds " + std::to_string(kMaxSequenceDepth) +
                             " levels",
                         pos);
                }
                expect_punct("<");
                TypeRef element = parse_type(depth + 1);
                if (cur().is_punct(",")) {
                    fail(DiagCode::parse_unsupported, "unsupported IDL construct: bounded sequence",
                         cur().begin);
                }
                expect_punct(">");
                return TypeRef::make_sequence(std::move(element), pos);
            }
            check_unsupported(t);
        }
        expected({"type"});
    }

    const std::vector<Token>& toks_;
    std::size_t idx_ = 0;
    std::vector<Diagnostic> diags_;
};

} // namespace

Outcome<CompilationUnit> parse(const std::vector<Token>& tokens)
{
    return Parser(tokens).run();
}

Outcome<CompilationUnit> parse_source(std::string_view source, std::string_view file)
{
    auto toks = tokenize(source, file);
    if (!toks.value) {
        return Outcome<CompilationUnit>{std::nullopt, std::move(toks.diagnostics)};
    }
    auto unit = parse(*toks.value);
    unit.diagnostics.insert(unit.diagnostics.begin(), toks.diagnostics.begin(),
                            toks.diagnostics.end());
    if (unit.value) {
        unit.value->file = std::string(file);
    }
    return unit;
}

} // namespace adl::frontend
