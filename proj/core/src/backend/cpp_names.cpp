#include "cpp_names.hpp"

#include <map>

namespace adl::backend::cpp {

bool is_keyword(std::string_view word)
{
    static const std::set<std::string_view> kWords = {
        "alignas",   "alignof",     "and",          "and_eq",       "asm",
        "auto",      "bitand",      "bitor",        "bool",         "break",
        "case",      "catch",       "char",         "char8_t",      "char16_t",
        "char32_t",  "class",       "compl",        "concept",      "const",
        "consteval", "constexpr",   "constinit",    "const_cast",   "continue",
        "co_await",  "co_return",   "co_yield",     "decltype",     "default",
        "delete",    "do",          "double",       "dynamic_cast", "else",
        "enum",      "explicit",    "export",       "extern",       "false",
        "float",     "for",         "friend",       "goto",         "if",
        "inline",    "int",         "long",         "mutable",      "namespace",
        "new",       "noexcept",    "not",          "not_eq",       "nullptr",
        "operator",  "or",          "or_eq",        "private",      "protected",
        "public",    "register",    "reinterpret_cast", "requires", "return",
        "short",     "signed",      "sizeof",       "static",       "static_assert",
        "static_cast", "struct",    "switch",       "template",     "this",
        "thread_local", "throw",    "true",         "try",          "typedef",
        "typeid",    "typename",    "union",        "unsigned",     "using",
        "virtual",   "void",        "volatile",     "wchar_t",      "while",
        "xor",       "xor_eq",      "final",        "override",     "import",
        "module",    "adl",         "std",
    };
    return kWords.count(word) != 0;
}

std::vector<std::string> split_qualified(std::string_view name)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t sep = name.find("::", start);
        parts.emplace_back(name.substr(start, sep - start));
        if (sep == std::string_view::npos) {
            break;
        }
        start = sep + 2;
    }
    return parts;
}

std::string module_dir(std::string_view module)
{
    if (module.empty()) {
        return {};
    }
    std::string out;
    for (const auto& p : split_qualified(module)) {
        out += p + "/";
    }
    return out;
}

std::string header_path(const meta::MetaClass& cls)
{
    return module_dir(cls.module) + cls.name + ".h";
}

std::string source_path(const meta::MetaClass& cls)
{
    return module_dir(cls.module) + cls.name + ".cpp";
}

std::string converter_path(const meta::MetaClass& cls)
{
    return module_dir(cls.module) + cls.name + "Cnv.h";
}

std::string enums_path(std::string_view module)
{
    return module_dir(module) + "enums.h";
}

std::string capitalize(std::string_view name)
{
    std::string out(name);
    if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') {
        out[0] = static_cast<char>(out[0] - 'a' + 'A');
    }
    return out;
}

std::string global_name(std::string_view qualifiedName)
{
    return "::" + std::string(qualifiedName);
}

std::string type_name(const meta::MetaType& t)
{
    using K = meta::MetaType::Kind;
    switch (t.kind) {
    case K::void_: return "void";
    case K::primitive:
        switch (t.primitive) {
        case Primitive::boolean: return "bool";
        case Primitive::octet: return "std::uint8_t";
        case Primitive::short_: return "std::int16_t";
        case Primitive::long_: return "std::int32_t";
        case Primitive::long_long: return "std::int64_t";
        case Primitive::float_: return "float";
        case Primitive::double_: return "double";
        case Primitive::string: return "std::string";
        }
        break;
    case K::sequence: return "std::vector<" + type_name(*t.element) + ">";
    case K::value:
    case K::enumeration: return global_name(t.name);
    case K::object: return global_name(t.name) + "*";
    case K::opaque: return "adl::support::Opaque";
    case K::unresolved: break;
    }
    return "void";
}

bool passed_by_value(const meta::MetaType& t)
{
    using K = meta::MetaType::Kind;
    if (t.kind == K::primitive) {
        return t.primitive != Primitive::string;
    }
    return t.kind == K::enumeration || t.kind == K::object;
}

std::string param_type(const meta::MetaType& t)
{
    return passed_by_value(t) ? type_name(t) : "const " + type_name(t) + "&";
}

std::string banner(const EmitterConfig& config)
{
    if (config.headerBanner.empty()) {
        return {};
    }
    std::string out;
    std::size_t start = 0;
    const std::string& b = config.headerBanner;
    while (start <= b.size()) {
        std::size_t nl = b.find('\n', start);
        std::string_view line = std::string_view(b).substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        out += line.empty() ? "//\n" : "// " + std::string(line) + "\n";
        if (nl == std::string::npos || nl + 1 == b.size()) {
            break;
        }
        start = nl + 1;
    }
    return out;
}

std::string namespace_open(std::string_view module)
{
    return module.empty() ? std::string{} : "namespace " + std::string(module) + " {\n\n";
}

std::string namespace_close(std::string_view module)
{
    return module.empty() ? std::string{} : "} // namespace " + std::string(module) + "\n";
}

std::string forward_declarations(const std::set<std::string>& names)
{
    std::map<std::string, std::vector<std::string>> byModule;
    for (const auto& n : names) {
        std::size_t sep = n.rfind("::");
        if (sep == std::string::npos) {
            byModule[""].push_back(n);
        } else {
            byModule[n.substr(0, sep)].push_back(n.substr(sep + 2));
        }
    }
    std::string out;
    for (const auto& [module, classes] : byModule) {
        if (module.empty()) {
            for (const auto& c : classes) {
                out += "class " + c + ";\n";
            }
        } else {
            out += "namespace " + module + " {\n";
            for (const auto& c : classes) {
                out += "class " + c + ";\n";
            }
            out += "}\n";
        }
    }
    return out.empty() ? out : out + "\n";
}

std::string quoted(std::string_view s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out.push_back('\\');
        }
        out.push_back(c);
    }
    return out + "\"";
}

} // namespace adl::backend::cpp
