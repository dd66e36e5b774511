#include <set>

#include "adl/backend/emit.hpp"
#include "cpp_names.hpp"

namespace adl::backend {

namespace {

using meta::MetaClass;
using meta::MetaType;

struct GeneratedMethod {
    std::string name;
    std::vector<MetaType> params;
};

void collect_types(const MetaType& t, std::set<std::string>& values, std::set<std::string>& enums,
                   std::set<std::string>& objects)
{
    switch (t.kind) {
    case MetaType::Kind::value: values.insert(t.name); break;
    case MetaType::Kind::enumeration: enums.insert(t.name); break;
    case MetaType::Kind::object: objects.insert(t.name); break;
    case MetaType::Kind::sequence: collect_types(*t.element, values, enums, objects); break;
    default: break;
    }
}

std::string enum_module(const meta::MetaModel& model, const std::string& qualifiedName)
{
    return model.find_enum(qualifiedName)->module;
}

class DataObjectEmitter {
public:
    DataObjectEmitter(const meta::MetaModel& model, const EmitterConfig& config)
        : model_(model), config_(config)
    {
    }

    Outcome<FileSet> run()
    {
        Outcome<FileSet> out;
        FileSet files;
        check_names();
        for (const auto& [module, m] : model_.modules()) {
            if (!m.enums.empty()) {
                files.files.push_back({cpp::enums_path(module), enums_header(module, m)});
            }
        }
        for (const auto& c : model_.classes()) {
            if (c.is_extern()) {
                continue;
            }
            files.files.push_back({cpp::header_path(c), header(c)});
            files.files.push_back({cpp::source_path(c), source(c)});
        }
        out.diagnostics = std::move(diags_);
        if (!has_errors(out.diagnostics)) {
            out.value = std::move(files);
        }
        return out;
    }

private:
    void collision(const std::string& message, const SourcePos& pos)
    {
        diags_.push_back(Diagnostic{Severity::error, DiagCode::emit_name_collision, message, pos});
    }

    void check_identifier(std::string_view name, std::string_view what, const SourcePos& pos)
    {
        if (cpp::is_keyword(name)) {
            collision(std::string(what) + " '" + std::string(name) +
                          "' is reserved in the generated C++",
                      pos);
        }
    }

    static std::vector<GeneratedMethod> generated_methods(const MetaClass& c)
    {
        std::vector<GeneratedMethod> out{{"classId", {}}};
        for (const auto& a : c.attributes) {
            out.push_back({a.name, {}});
            if (a.visibility == Visibility::public_) {
                out.push_back({"set" + cpp::capitalize(a.name), {a.type}});
            }
        }
        for (const auto& r : c.relationships) {
            MetaType target = MetaType::make_named(MetaType::Kind::object, r.target);
            out.push_back({r.name, {}});
            if (r.cardinality == Cardinality::one) {
                out.push_back({"set" + cpp::capitalize(r.name), {target}});
            } else {
                out.push_back({"addTo" + cpp::capitalize(r.name), {target}});
                out.push_back({"removeFrom" + cpp::capitalize(r.name), {target}});
            }
        }
        return out;
    }

    void check_names()
    {
        for (const auto& [module, m] : model_.modules()) {
            if (!module.empty()) {
                for (const auto& part : cpp::split_qualified(module)) {
                    check_identifier(part, "module name", SourcePos{});
                }
            }
        }
        for (const auto& e : model_.enums()) {
            check_identifier(e.name, "enum name", e.pos);
            for (const auto& v : e.enumerators) {
                check_identifier(v, "enumerator", e.pos);
            }
        }
        for (const auto& c : model_.classes()) {
            check_identifier(c.name, "class name", c.pos);
            if (c.is_extern()) {
                continue;
            }
            if (c.name.size() > 3 && c.name.substr(c.name.size() - 3) == "Cnv") {
                std::string owner = meta::join_name(c.module, c.name.substr(0, c.name.size() - 3));
                const MetaClass* o = model_.find_class(owner);
                if (o && !o->is_extern()) {
                    collision("class '" + c.qualifiedName + "' clashes with the converter of '" +
                                  owner + "'",
                              c.pos);
                }
            }
            for (const auto& a : c.attributes) {
                check_identifier(a.name, "attribute", a.pos);
            }
            for (const auto& r : c.relationships) {
                check_identifier(r.name, "relationship", r.pos);
            }
            auto generated = generated_methods(c);
            for (const auto& m : c.methods) {
                check_identifier(m.name, "method", m.pos);
                for (const auto& p : m.params) {
                    check_identifier(p.name, "parameter", m.pos);
                }
                for (const auto& g : generated) {
                    if (g.name != m.name || g.params.size() != m.params.size()) {
                        continue;
                    }
                    bool same = true;
                    for (std::size_t i = 0; i < g.params.size(); ++i) {
                        same = same && cpp::type_name(g.params[i]) == cpp::type_name(m.params[i].type);
                    }
                    if (same) {
                        collision("method '" + c.qualifiedName + "::" + m.name +
                                      "' has the signature of a generated member",
                                  m.pos);
                    }
                }
            }
        }
    }

    std::string preamble(std::string_view from) const
    {
        return cpp::banner(config_) + "// Generated from " + std::string(from) +
               ". Edits outside the user regions are overwritten.\n";
    }

    std::string enums_header(const std::string& module, const meta::MetaModule& m) const
    {
        std::string out = preamble(module.empty() ? "the root module" : "module " + module);
        out += "#pragma once\n\n#include <cstdint>\n#include <string_view>\n\n";
        out += cpp::namespace_open(module);
        for (const auto& qn : m.enums) {
            const auto* e = model_.find_enum(qn);
            out += "enum class " + e->name + " : std::uint32_t {\n";
            for (const auto& v : e->enumerators) {
                out += "    " + v + ",\n";
            }
            out += "};\n\n";
            out += "inline constexpr std::uint32_t kEnumeratorCount" + e->name + " = " +
                   std::to_string(e->enumerators.size()) + ";\n\n";
            out += "inline std::string_view to_string(" + e->name + " v)\n{\n    switch (v) {\n";
            for (const auto& v : e->enumerators) {
                out += "    case " + e->name + "::" + v + ": return \"" + v + "\";\n";
            }
            out += "    }\n    return {};\n}\n\n";
        }
        out += cpp::namespace_close(module);
        return out;
    }

    std::string member_name(std::string_view n) const { return std::string(n) + "_"; }

    std::string header(const MetaClass& c) const
    {
        std::set<std::string> values, enums, objects;
        for (const auto& a : c.attributes) {
            collect_types(a.type, values, enums, objects);
        }
        std::set<std::string> sigValues, sigObjects;
        for (const auto& m : c.methods) {
            collect_types(m.returnType, sigValues, enums, sigObjects);
            for (const auto& p : m.params) {
                collect_types(p.type, sigValues, enums, sigObjects);
            }
        }
        std::set<std::string> forward = sigObjects;
        for (const auto& v : sigValues) {
            if (!values.count(v) && v != c.qualifiedName) {
                forward.insert(v);
            }
        }
        for (const auto& r : c.relationships) {
            forward.insert(r.target);
        }
        forward.erase(c.qualifiedName);

        std::set<std::string> includes;
        for (const auto& b : c.bases) {
            includes.insert(cpp::header_path(*model_.find_class(b)));
        }
        for (const auto& v : values) {
            includes.insert(cpp::header_path(*model_.find_class(v)));
        }
        for (const auto& e : enums) {
            includes.insert(cpp::enums_path(enum_module(model_, e)));
        }

        bool framework = c.is_framework_object();
        std::string out = preamble(c.qualifiedName);
        out += "#pragma once\n\n#include <cstdint>\n#include <string>\n#include <vector>\n\n";
        out += "#include \"adl/support/objects.hpp\"\n";
        for (const auto& i : includes) {
            out += "#include \"" + i + "\"\n";
        }
        out += "\n" + user_region("includes", "") + "\n";
        out += cpp::forward_declarations(forward);
        out += cpp::namespace_open(c.module);

        out += "class " + c.name;
        std::vector<std::string> bases;
        bool frameworkBase = false;
        for (const auto& b : c.bases) {
            bases.push_back("public virtual " + cpp::global_name(b));
            frameworkBase = frameworkBase || model_.find_class(b)->is_framework_object();
        }
        if (framework && !frameworkBase) {
            bases.push_back("public virtual adl::support::" + std::string(category_name(c.category)));
        }
        for (std::size_t i = 0; i < bases.size(); ++i) {
            out += (i ? ", " : " : ") + bases[i];
        }
        out += " {\npublic:\n";
        out += "    static constexpr std::uint32_t kClassId = " + meta::to_hex(c.classId) + "u;\n\n";
        out += "    " + c.name + "();\n";
        if (framework) {
            out += "    ~" + c.name + "() override;\n";
            out += "    " + c.name + "(const " + c.name + "&) = delete;\n";
            out += "    " + c.name + "& operator=(const " + c.name + "&) = delete;\n\n";
            out += "    std::uint32_t classId() const override { return kClassId; }\n";
        } else {
            out += "    ~" + c.name + "();\n";
            out += "    " + c.name + "(const " + c.name + "&) = default;\n";
            out += "    " + c.name + "& operator=(const " + c.name + "&) = default;\n\n";
            out += "    std::uint32_t classId() const { return kClassId; }\n";
        }

        for (const auto& a : c.attributes) {
            std::string t = cpp::type_name(a.type);
            std::string ret = cpp::passed_by_value(a.type) ? t : "const " + t + "&";
            out += "\n    " + ret + " " + a.name + "() const { return " + member_name(a.name) +
                   "; }\n";
            if (a.visibility == Visibility::public_) {
                out += "    void set" + cpp::capitalize(a.name) + "(" + cpp::param_type(a.type) +
                       " value) { " + member_name(a.name) + " = value; }\n";
            }
        }
        for (const auto& r : c.relationships) {
            std::string t = cpp::global_name(r.target) + "*";
            if (r.cardinality == Cardinality::one) {
                out += "\n    " + t + " " + r.name + "() const { return " + member_name(r.name) +
                       "; }\n";
                out += "    void set" + cpp::capitalize(r.name) + "(" + t + " target);\n";
            } else {
                out += "\n    const std::vector<" + t + ">& " + r.name + "() const { return " +
                       member_name(r.name) + "; }\n";
                out += "    void addTo" + cpp::capitalize(r.name) + "(" + t + " target);\n";
                out += "    void removeFrom" + cpp::capitalize(r.name) + "(" + t + " target);\n";
            }
        }
        if (!c.methods.empty()) {
            out += "\n";
        }
        for (const auto& m : c.methods) {
            out += "    " + signature(c, m, false) + ";\n";
        }
        out += "\n" + user_region("declarations", "", "    ");

        out += "\nprivate:\n";
        out += "    friend struct " + c.name + "Cnv;\n";
        std::set<std::string> friends;
        for (const auto& r : c.relationships) {
            if (r.target != c.qualifiedName) {
                friends.insert(r.target);
            }
        }
        for (const auto& f : friends) {
            out += "    friend class " + cpp::global_name(f) + ";\n";
        }
        if (!c.attributes.empty() || !c.relationships.empty()) {
            out += "\n";
        }
        for (const auto& a : c.attributes) {
            out += "    " + cpp::type_name(a.type) + " " + member_name(a.name) + "{};\n";
        }
        for (const auto& r : c.relationships) {
            std::string t = cpp::global_name(r.target) + "*";
            if (r.cardinality == Cardinality::one) {
                out += "    " + t + " " + member_name(r.name) + " = nullptr;\n";
            } else {
                out += "    std::vector<" + t + "> " + member_name(r.name) + ";\n";
            }
        }
        out += "};\n\n";
        out += cpp::namespace_close(c.module);
        return out;
    }

    std::string signature(const MetaClass& c, const meta::MetaMethod& m, bool qualified) const
    {
        std::string out = cpp::type_name(m.returnType) + " ";
        out += qualified ? c.name + "::" + m.name : m.name;
        out += "(";
        for (std::size_t i = 0; i < m.params.size(); ++i) {
            out += (i ? ", " : "") + cpp::param_type(m.params[i].type) + " " + m.params[i].name;
        }
        out += ")";
        if (m.isConst) {
            out += " const";
        }
        return out;
    }

    const meta::MetaRelationship& inverse_of(const meta::MetaRelationship& r) const
    {
        return *model_.find_relationship(*model_.find_class(r.target), r.inverseName);
    }

    std::string relationship_bodies(const MetaClass& c) const
    {
        std::string out;
        for (const auto& r : c.relationships) {
            const auto& inv = inverse_of(r);
            std::string t = cpp::global_name(r.target) + "*";
            std::string mine = member_name(r.name);
            std::string theirs = member_name(inv.name);
            bool invMany = inv.cardinality == Cardinality::many;
            if (r.cardinality == Cardinality::one) {
                out += "void " + c.name + "::set" + cpp::capitalize(r.name) + "(" + t +
                       " target)\n{\n";
                out += "    if (" + mine + " == target) {\n        return;\n    }\n";
                if (invMany) {
                    out += "    if (" + mine + ") {\n        adl::support::erase_link(" + mine +
                           "->" + theirs + ", this);\n    }\n";
                    out += "    " + mine + " = target;\n";
                    out += "    if (target) {\n        target->" + theirs +
                           ".push_back(this);\n    }\n";
                } else {
                    out += "    if (" + mine + ") {\n        " + mine + "->" + theirs +
                           " = nullptr;\n    }\n";
                    out += "    if (target && target->" + theirs + ") {\n        target->" +
                           theirs + "->" + mine + " = nullptr;\n    }\n";
                    out += "    " + mine + " = target;\n";
                    out += "    if (target) {\n        target->" + theirs + " = this;\n    }\n";
                }
                out += "}\n\n";
            } else {
                out += "void " + c.name + "::addTo" + cpp::capitalize(r.name) + "(" + t +
                       " target)\n{\n";
                out += "    if (!target || adl::support::holds_link(" + mine +
                       ", target)) {\n        return;\n    }\n";
                if (invMany) {
                    out += "    " + mine + ".push_back(target);\n";
                    out += "    if (!adl::support::holds_link(target->" + theirs +
                           ", this)) {\n        target->" + theirs + ".push_back(this);\n    }\n";
                } else {
                    out += "    if (target->" + theirs + ") {\n        adl::support::erase_link(target->" +
                           theirs + "->" + mine + ", target);\n    }\n";
                    out += "    " + mine + ".push_back(target);\n";
                    out += "    target->" + theirs + " = this;\n";
                }
                out += "}\n\n";
                out += "void " + c.name + "::removeFrom" + cpp::capitalize(r.name) + "(" + t +
                       " target)\n{\n";
                out += "    if (!target || !adl::support::holds_link(" + mine +
                       ", target)) {\n        return;\n    }\n";
                out += "    adl::support::erase_link(" + mine + ", target);\n";
                if (invMany) {
                    out += "    adl::support::erase_link(target->" + theirs + ", this);\n";
                } else {
                    out += "    target->" + theirs + " = nullptr;\n";
                }
                out += "}\n\n";
            }
        }
        return out;
    }

    static std::string stub_body(const meta::MetaMethod& m)
    {
        std::string body;
        for (const auto& p : m.params) {
            body += "    (void)" + p.name + ";\n";
        }
        if (m.returnType.kind != MetaType::Kind::void_) {
            body += "    return {};\n";
        }
        return body;
    }

    std::string source(const MetaClass& c) const
    {
        std::set<std::string> includes;
        for (const auto& r : c.relationships) {
            if (r.target != c.qualifiedName) {
                includes.insert(cpp::header_path(*model_.find_class(r.target)));
            }
        }
        // Method stubs return `{}`, so by-value signature types must be complete here.
        std::set<std::string> sigValues, enums, objects;
        for (const auto& m : c.methods) {
            collect_types(m.returnType, sigValues, enums, objects);
            for (const auto& p : m.params) {
                collect_types(p.type, sigValues, enums, objects);
            }
        }
        for (const auto& v : sigValues) {
            if (v != c.qualifiedName) {
                includes.insert(cpp::header_path(*model_.find_class(v)));
            }
        }
        std::string out = preamble(c.qualifiedName);
        out += "#include \"" + cpp::header_path(c) + "\"\n";
        if (!includes.empty()) {
            out += "\n";
        }
        for (const auto& i : includes) {
            out += "#include \"" + i + "\"\n";
        }
        out += "\n" + user_region("includes", "") + "\n";
        out += cpp::namespace_open(c.module);
        out += c.name + "::" + c.name + "() = default;\n\n";
        if (c.relationships.empty()) {
            out += c.name + "::~" + c.name + "() = default;\n\n";
        } else {
            out += c.name + "::~" + c.name + "()\n{\n";
            for (const auto& r : c.relationships) {
                std::string mine = member_name(r.name);
                if (r.cardinality == Cardinality::one) {
                    out += "    set" + cpp::capitalize(r.name) + "(nullptr);\n";
                } else {
                    out += "    while (!" + mine + ".empty()) {\n        removeFrom" +
                           cpp::capitalize(r.name) + "(" + mine + ".back());\n    }\n";
                }
            }
            out += "}\n\n";
        }
        out += relationship_bodies(c);
        for (const auto& m : c.methods) {
            out += signature(c, m, true) + "\n{\n";
            out += user_region("method:" + m.name, stub_body(m));
            out += "}\n\n";
        }
        out += user_region("extensions", "") + "\n";
        out += cpp::namespace_close(c.module);
        return out;
    }

    const meta::MetaModel& model_;
    const EmitterConfig& config_;
    std::vector<Diagnostic> diags_;
};

} // namespace

const GeneratedFile* FileSet::find(std::string_view path) const
{
    for (const auto& f : files) {
        if (f.path == path) {
            return &f;
        }
    }
    return nullptr;
}

std::string_view format_name(ConverterFormat f)
{
    return f == ConverterFormat::canonical_json ? "canonical-json" : "self-describing-binary";
}

Outcome<FileSet> emit_dataobjects(const meta::MetaModel& model, const EmitterConfig& config)
{
    if (!model.resolved()) {
        throw std::invalid_argument("emission requires a resolved model");
    }
    return DataObjectEmitter(model, config).run();
}

} // namespace adl::backend
