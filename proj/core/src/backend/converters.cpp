#include <functional>
#include <map>
#include <set>

#include <json.hpp>

#include "adl/backend/emit.hpp"
#include "adl/backend/manifest.hpp"
#include "adl/backend/schema.hpp"
#include "cpp_names.hpp"

namespace adl::backend {

namespace {

using meta::MetaClass;
using meta::MetaType;
using wire::Tag;
using wire::TypeSchema;

std::string tag_name(Tag t)
{
    switch (t) {
    case Tag::boolean: return "boolean";
    case Tag::octet: return "octet";
    case Tag::short_: return "short_";
    case Tag::long_: return "long_";
    case Tag::long_long: return "long_long";
    case Tag::float_: return "float_";
    case Tag::double_: return "double_";
    case Tag::string: return "string";
    case Tag::sequence: return "sequence";
    case Tag::enumeration: return "enumeration";
    case Tag::structure: return "structure";
    case Tag::opaque: return "opaque";
    }
    return "?";
}

std::string category_enum(wire::ClassCategory c)
{
    switch (c) {
    case wire::ClassCategory::plain: return "plain";
    case wire::ClassCategory::data_object: return "data_object";
    case wire::ClassCategory::contained_object: return "contained_object";
    case wire::ClassCategory::collection_object: return "collection_object";
    case wire::ClassCategory::extern_type: return "extern_type";
    }
    return "plain";
}

std::string string_list(const std::vector<std::string>& items)
{
    std::string out = "{";
    for (std::size_t i = 0; i < items.size(); ++i) {
        out += (i ? ", " : "") + cpp::quoted(items[i]);
    }
    return out + "}";
}

std::string indent_of(int level)
{
    return std::string(static_cast<std::size_t>(level) * 4, ' ');
}

std::string type_literal(const TypeSchema& t, int level);

std::string field_literal(const wire::FieldSchema& f, int level)
{
    return "aw::FieldSchema{" + cpp::quoted(f.name) + ", " + (f.persistent ? "true" : "false") +
           ", " + (f.isPrivate ? "true" : "false") + ", " + type_literal(f.type, level) + "}";
}

std::string field_list(const std::vector<wire::FieldSchema>& fields, int level)
{
    if (fields.empty()) {
        return "{}";
    }
    std::string out = "{\n";
    for (const auto& f : fields) {
        out += indent_of(level + 1) + field_literal(f, level + 1) + ",\n";
    }
    return out + indent_of(level) + "}";
}

std::string type_literal(const TypeSchema& t, int level)
{
    switch (t.tag) {
    case Tag::sequence: return "aw::TypeSchema::sequence_of(" + type_literal(*t.element, level) + ")";
    case Tag::enumeration:
        return "aw::TypeSchema::enumeration_of(" + cpp::quoted(t.name) + ", " +
               string_list(t.enumerators) + ")";
    case Tag::structure:
        return "aw::TypeSchema::structure_of(" + cpp::quoted(t.name) + ", " +
               field_list(t.fields, level) + ")";
    case Tag::opaque: return "aw::TypeSchema::opaque_of(" + cpp::quoted(t.name) + ")";
    default: return "aw::TypeSchema::primitive(aw::Tag::" + tag_name(t.tag) + ")";
    }
}

std::string schema_function(const wire::ClassSchema& s)
{
    std::string out;
    out += "    static const adl::wire::ClassSchema& schema()\n    {\n";
    out += "        static const adl::wire::ClassSchema s = [] {\n";
    out += "            namespace aw = adl::wire;\n";
    out += "            aw::ClassSchema c;\n";
    out += "            c.classId = " + meta::to_hex(meta::ClassId{s.classId}) + "u;\n";
    out += "            c.name = " + cpp::quoted(s.name) + ";\n";
    out += "            c.category = aw::ClassCategory::" + category_enum(s.category) + ";\n";
    if (!s.ancestors.empty()) {
        out += "            c.ancestors = " + string_list(s.ancestors) + ";\n";
    }
    if (!s.fields.empty()) {
        out += "            c.fields = " + field_list(s.fields, 3) + ";\n";
    }
    if (!s.links.empty()) {
        out += "            c.links = {\n";
        for (const auto& l : s.links) {
            out += "                aw::LinkSchema{" + cpp::quoted(l.name) + ", " +
                   (l.many ? "true" : "false") + ", " + cpp::quoted(l.target) + ", " +
                   cpp::quoted(l.inverse) + "},\n";
        }
        out += "            };\n";
    }
    out += "            return c;\n        }();\n        return s;\n    }\n";
    return out;
}

class ConverterEmitter {
public:
    ConverterEmitter(const meta::MetaModel& model, const EmitterConfig& config)
        : model_(model), config_(config), schemas_(build_schemas(make_manifest(model)))
    {
    }

    Outcome<FileSet> run()
    {
        Outcome<FileSet> out;
        FileSet files;
        nlohmann::json classes = nlohmann::json::array();
        for (const auto& c : model_.classes()) {
            if (c.is_extern()) {
                continue;
            }
            files.files.push_back({cpp::converter_path(c), converter(c)});
            classes.push_back(layout_entry(c));
            if (c.category == Category::data_object) {
                bool persistent = false;
                for (const auto& f : schemas_.at(c.qualifiedName).fields) {
                    persistent = persistent || f.persistent;
                }
                if (!persistent) {
                    out.diagnostics.push_back(Diagnostic{
                        Severity::warning, DiagCode::emit_empty_payload,
                        "DataObject '" + c.qualifiedName +
                            "' has no persistent attributes; its payload carries links only",
                        c.pos});
                }
            }
        }
        if (!files.files.empty()) {
            nlohmann::json doc = {{"format", "ADD1"},
                                  {"formatVersion", wire::kFormatVersion},
                                  {"converterFormat", format_name(config_.converterFormat)},
                                  {"classes", classes}};
            files.files.push_back({std::string(kLayoutFileName), doc.dump(2) + "\n"});
        }
        out.value = std::move(files);
        return out;
    }

private:
    nlohmann::json layout_entry(const MetaClass& c) const
    {
        const auto& s = schemas_.at(c.qualifiedName);
        nlohmann::json layout = nlohmann::json::array();
        bool whole = !c.is_framework_object();
        for (const auto& f : s.fields) {
            if (whole || f.persistent) {
                layout.push_back({{"name", f.name}, {"type", type_text(f.type)}});
            }
        }
        nlohmann::json links = nlohmann::json::array();
        for (const auto& l : s.links) {
            links.push_back({{"name", l.name},
                             {"cardinality", l.many ? "many" : "one"},
                             {"target", l.target},
                             {"inverse", l.inverse}});
        }
        return {{"name", c.qualifiedName},
                {"classId", c.classId.value},
                {"role", whole ? "value" : "object"},
                {"converter", cpp::converter_path(c)},
                {"layout", layout},
                {"links", links}};
    }

    static std::string type_text(const TypeSchema& t)
    {
        switch (t.tag) {
        case Tag::sequence: return "sequence<" + type_text(*t.element) + ">";
        case Tag::enumeration:
        case Tag::structure:
        case Tag::opaque: return t.name;
        case Tag::short_: return "short";
        case Tag::long_: return "long";
        case Tag::long_long: return "long long";
        case Tag::float_: return "float";
        case Tag::double_: return "double";
        default: return tag_name(t.tag);
        }
    }

    std::string cnv_name(const std::string& qualifiedName) const
    {
        return cpp::global_name(qualifiedName) + "Cnv";
    }

    std::string write_stmt(const MetaType& mt, const TypeSchema& ts, const std::string& name,
                           const std::string& expr, int level, int depth) const
    {
        std::string ind = indent_of(level);
        std::string n = cpp::quoted(name);
        switch (ts.tag) {
        case Tag::boolean: return ind + "w.boolean(" + n + ", " + expr + ");\n";
        case Tag::octet: return ind + "w.octet(" + n + ", " + expr + ");\n";
        case Tag::short_: return ind + "w.i16(" + n + ", " + expr + ");\n";
        case Tag::long_: return ind + "w.i32(" + n + ", " + expr + ");\n";
        case Tag::long_long: return ind + "w.i64(" + n + ", " + expr + ");\n";
        case Tag::float_: return ind + "w.f32(" + n + ", " + expr + ");\n";
        case Tag::double_: return ind + "w.f64(" + n + ", " + expr + ");\n";
        case Tag::string: return ind + "w.str(" + n + ", " + expr + ");\n";
        case Tag::opaque: return ind + "w.opaque(" + n + ", " + expr + ");\n";
        case Tag::enumeration: {
            const auto* e = model_.find_enum(mt.name);
            std::string scope = e->module.empty() ? "::" : cpp::global_name(e->module) + "::";
            return ind + "w.enumeration(" + n + ", static_cast<std::uint32_t>(" + expr + "), " +
                   scope + "to_string(" + expr + "));\n";
        }
        case Tag::structure:
            return ind + "w.begin_struct(" + n + ");\n" + ind + cnv_name(mt.name) +
                   "::write_value(" + expr + ", w);\n" + ind + "w.end_struct();\n";
        case Tag::sequence: {
            std::string var = "e" + std::to_string(depth);
            std::string out = ind + "w.begin_sequence(" + n + ", " + expr + ".size());\n";
            out += ind + "for (const auto& " + var + " : " + expr + ") {\n";
            out += write_stmt(*mt.element, *ts.element, "", var, level + 1, depth + 1);
            out += ind + "}\n" + ind + "w.end_sequence();\n";
            return out;
        }
        }
        return {};
    }

    std::string read_stmt(const MetaType& mt, const TypeSchema& ts, const std::string& target,
                          int level, int depth) const
    {
        std::string ind = indent_of(level);
        switch (ts.tag) {
        case Tag::boolean: return ind + target + " = r.boolean();\n";
        case Tag::octet: return ind + target + " = r.octet();\n";
        case Tag::short_: return ind + target + " = r.i16();\n";
        case Tag::long_: return ind + target + " = r.i32();\n";
        case Tag::long_long: return ind + target + " = r.i64();\n";
        case Tag::float_: return ind + target + " = r.f32();\n";
        case Tag::double_: return ind + target + " = r.f64();\n";
        case Tag::string: return ind + target + " = r.str();\n";
        case Tag::opaque: return ind + target + " = r.opaque();\n";
        case Tag::enumeration:
            return ind + target + " = static_cast<" + cpp::type_name(mt) + ">(r.enumeration(" +
                   std::to_string(ts.enumerators.size()) + "));\n";
        case Tag::structure: return ind + cnv_name(mt.name) + "::read_value(" + target + ", r);\n";
        case Tag::sequence: {
            std::string d = std::to_string(depth);
            std::size_t minSize = std::max<std::size_t>(1, wire::min_wire_size(*ts.element));
            std::string out = ind + "{\n";
            out += ind + "    std::size_t n" + d + " = r.begin_sequence(" + std::to_string(minSize) +
                   ");\n";
            out += ind + "    " + target + ".clear();\n";
            out += ind + "    for (std::size_t i" + d + " = 0; i" + d + " < n" + d + "; ++i" + d +
                   ") {\n";
            out += ind + "        " + cpp::type_name(*mt.element) + " e" + d + "{};\n";
            out += read_stmt(*mt.element, *ts.element, "e" + d, level + 2, depth + 1);
            out += ind + "        " + target + ".push_back(std::move(e" + d + "));\n";
            out += ind + "    }\n" + ind + "}\n";
            return out;
        }
        }
        return {};
    }

    std::string converter(const MetaClass& c) const
    {
        const auto& s = schemas_.at(c.qualifiedName);
        bool framework = c.is_framework_object();
        std::vector<const MetaClass*> lin = model_.linearization(c);

        std::set<std::string> includes{cpp::header_path(c)};
        for (const MetaClass* k : lin) {
            if (k != &c) {
                includes.insert(cpp::converter_path(*k));
            }
        }
        std::set<std::string> values;
        std::function<void(const MetaType&)> collect = [&](const MetaType& t) {
            if (t.kind == MetaType::Kind::value) {
                values.insert(t.name);
            } else if (t.element) {
                collect(*t.element);
            }
        };
        for (const auto& a : c.attributes) {
            collect(a.type);
        }
        for (const auto& v : values) {
            includes.insert(cpp::converter_path(*model_.find_class(v)));
        }
        for (const auto& r : c.relationships) {
            includes.insert(cpp::header_path(*model_.find_class(r.target)));
        }

        std::string out = cpp::banner(config_);
        out += "// Converter for " + c.qualifiedName + ". Generated; do not edit.\n";
        out += "#pragma once\n\n#include <cstddef>\n#include <cstdint>\n#include <utility>\n\n";
        out += "#include \"adl/support/wire.hpp\"\n";
        for (const auto& i : includes) {
            out += "#include \"" + i + "\"\n";
        }
        out += "\n" + cpp::namespace_open(c.module);
        out += "struct " + c.name + "Cnv {\n";
        out += "    using Type = " + c.name + ";\n";
        if (framework) {
            out += std::string("    using Builder = adl::wire::") +
                   (config_.converterFormat == ConverterFormat::canonical_json ? "JsonBuilder"
                                                                               : "PayloadBuilder") +
                   ";\n";
        }
        out += "\n";
        if (framework) {
            out += schema_function(s) + "\n";
        }

        // own attributes: the tail of the linearized field list
        std::size_t first = s.fields.size() - c.attributes.size();
        out += "    template <bool Whole, class W>\n";
        out += "    static void write_own(const " + c.name + "& obj, W& w)\n    {\n";
        std::string writes, reads;
        for (std::size_t i = 0; i < c.attributes.size(); ++i) {
            const auto& a = c.attributes[i];
            const auto& f = s.fields[first + i];
            std::string expr = "obj." + a.name + "_";
            if (f.persistent) {
                writes += write_stmt(a.type, f.type, a.name, expr, 2, 0);
                reads += read_stmt(a.type, f.type, expr, 2, 0);
            } else {
                writes += "        if constexpr (Whole) {\n" +
                          write_stmt(a.type, f.type, a.name, expr, 3, 0) + "        }\n";
                reads += "        if constexpr (Whole) {\n" + read_stmt(a.type, f.type, expr, 3, 0) +
                         "        }\n";
            }
        }
        bool anyPersistent = false;
        for (std::size_t i = 0; i < c.attributes.size(); ++i) {
            anyPersistent = anyPersistent || s.fields[first + i].persistent;
        }
        if (!anyPersistent) {
            writes = "        (void)obj;\n        (void)w;\n" + writes;
            reads = "        (void)obj;\n        (void)r;\n" + reads;
        }
        out += writes + "    }\n\n";
        out += "    template <bool Whole>\n";
        out += "    static void read_own(" + c.name + "& obj, adl::wire::BinaryReader& r)\n    {\n";
        out += reads + "    }\n";

        if (framework) {
            out += "\n    template <class W>\n";
            out += "    static void write_own_links(const " + c.name + "& obj, W& w)\n    {\n";
            std::string lw, lr;
            for (const auto& r : c.relationships) {
                std::string m = "obj." + r.name + "_";
                if (r.cardinality == Cardinality::one) {
                    lw += "        w.link(" + cpp::quoted(r.name) + ", " + m + ");\n";
                    lr += "        " + m + " = r.link<" + cpp::global_name(r.target) + ">();\n";
                } else {
                    lw += "        w.links(" + cpp::quoted(r.name) + ", " + m + ");\n";
                    lr += "        " + m + " = r.links<" + cpp::global_name(r.target) + ">();\n";
                }
            }
            if (c.relationships.empty()) {
                lw = "        (void)obj;\n        (void)w;\n";
                lr = "        (void)obj;\n        (void)r;\n";
            }
            out += lw + "    }\n\n";
            out += "    static void read_own_links(" + c.name +
                   "& obj, adl::wire::BinaryReader& r)\n    {\n" + lr + "    }\n\n";

            out += "    template <class W>\n";
            out += "    static void write(const " + c.name + "& obj, W& w)\n    {\n";
            for (const MetaClass* k : lin) {
                out += "        " + cnv_name(k->qualifiedName) + "::template write_own<false>(obj, w);\n";
            }
            for (const MetaClass* k : lin) {
                if (k->is_framework_object()) {
                    out += "        " + cnv_name(k->qualifiedName) + "::write_own_links(obj, w);\n";
                }
            }
            out += "    }\n\n";
            out += "    static void read(" + c.name + "& obj, adl::wire::BinaryReader& r)\n    {\n";
            for (const MetaClass* k : lin) {
                out += "        " + cnv_name(k->qualifiedName) + "::template read_own<false>(obj, r);\n";
            }
            for (const MetaClass* k : lin) {
                if (k->is_framework_object()) {
                    out += "        " + cnv_name(k->qualifiedName) + "::read_own_links(obj, r);\n";
                }
            }
            out += "    }\n";
        } else {
            out += "\n    template <class W>\n";
            out += "    static void write_value(const " + c.name + "& obj, W& w)\n    {\n";
            for (const MetaClass* k : lin) {
                out += "        " + cnv_name(k->qualifiedName) + "::template write_own<true>(obj, w);\n";
            }
            out += "    }\n\n";
            out += "    static void read_value(" + c.name + "& obj, adl::wire::BinaryReader& r)\n    {\n";
            for (const MetaClass* k : lin) {
                out += "        " + cnv_name(k->qualifiedName) + "::template read_own<true>(obj, r);\n";
            }
            out += "    }\n";
        }
        out += "};\n\n";
        out += cpp::namespace_close(c.module);
        return out;
    }

    const meta::MetaModel& model_;
    const EmitterConfig& config_;
    std::map<std::string, wire::ClassSchema> schemas_;
};

} // namespace

Outcome<FileSet> emit_converters(const meta::MetaModel& model, const EmitterConfig& config)
{
    if (!model.resolved()) {
        throw std::invalid_argument("emission requires a resolved model");
    }
    return ConverterEmitter(model, config).run();
}

} // namespace adl::backend
