#include "adl/backend/manifest.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace adl::backend {

using nlohmann::json;

bool operator==(const ManifestType& a, const ManifestType& b)
{
    if (a.kind != b.kind || a.name != b.name ||
        static_cast<bool>(a.element) != static_cast<bool>(b.element)) {
        return false;
    }
    return !a.element || *a.element == *b.element;
}

namespace {

ManifestType describe(const meta::MetaType& t)
{
    using K = meta::MetaType::Kind;
    ManifestType out;
    switch (t.kind) {
    case K::void_: out.kind = "void"; break;
    case K::primitive:
        out.kind = "primitive";
        out.name = std::string(primitive_name(t.primitive));
        break;
    case K::sequence:
        out.kind = "sequence";
        out.element = std::make_shared<const ManifestType>(describe(*t.element));
        break;
    case K::value: out.kind = "value"; out.name = t.name; break;
    case K::object: out.kind = "object"; out.name = t.name; break;
    case K::enumeration: out.kind = "enum"; out.name = t.name; break;
    case K::opaque: out.kind = "extern"; out.name = t.name; break;
    case K::unresolved: throw std::invalid_argument("manifest requires a resolved model");
    }
    return out;
}

json type_to_json(const ManifestType& t)
{
    json j = {{"kind", t.kind}};
    if (!t.name.empty()) {
        j["name"] = t.name;
    }
    if (t.element) {
        j["element"] = type_to_json(*t.element);
    }
    return j;
}

[[noreturn]] void malformed(const std::string& what)
{
    throw ManifestError(ManifestError::Kind::malformed, "malformed manifest: " + what);
}

const json& member(const json& obj, const char* key)
{
    if (!obj.is_object()) {
        malformed(std::string("expected an object holding '") + key + "'");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        malformed(std::string("missing '") + key + "'");
    }
    return *it;
}

std::string get_string(const json& obj, const char* key)
{
    const json& v = member(obj, key);
    if (!v.is_string()) {
        malformed(std::string("'") + key + "' must be a string");
    }
    return v.get<std::string>();
}

bool get_bool(const json& obj, const char* key)
{
    const json& v = member(obj, key);
    if (!v.is_boolean()) {
        malformed(std::string("'") + key + "' must be a boolean");
    }
    return v.get<bool>();
}

const json& get_array(const json& obj, const char* key)
{
    const json& v = member(obj, key);
    if (!v.is_array()) {
        malformed(std::string("'") + key + "' must be an array");
    }
    return v;
}

std::vector<std::string> get_strings(const json& obj, const char* key)
{
    std::vector<std::string> out;
    for (const auto& v : get_array(obj, key)) {
        if (!v.is_string()) {
            malformed(std::string("'") + key + "' must hold strings");
        }
        out.push_back(v.get<std::string>());
    }
    return out;
}

ManifestType type_from_json(const json& j, int depth = 0)
{
    static const std::set<std::string> kKinds = {"void",   "primitive", "sequence", "value",
                                                 "object", "enum",      "extern"};
    static const std::set<std::string> kPrims = {"boolean", "octet", "short",  "long",
                                                 "long long", "float", "double", "string"};
    if (depth > 64) {
        malformed("type nested too deeply");
    }
    ManifestType t;
    t.kind = get_string(j, "kind");
    if (!kKinds.count(t.kind)) {
        malformed("unknown type kind '" + t.kind + "'");
    }
    if (t.kind == "sequence") {
        t.element = std::make_shared<const ManifestType>(type_from_json(member(j, "element"), depth + 1));
    } else if (t.kind != "void") {
        t.name = get_string(j, "name");
        if (t.kind == "primitive" && !kPrims.count(t.name)) {
            malformed("unknown primitive '" + t.name + "'");
        }
    }
    return t;
}

} // namespace

ReflectionManifest make_manifest(const meta::MetaModel& model)
{
    if (!model.resolved()) {
        throw std::invalid_argument("manifest requires a resolved model");
    }
    ReflectionManifest m;
    for (const auto& c : model.classes()) {
        ManifestClass mc;
        mc.qualifiedName = c.qualifiedName;
        mc.module = c.module;
        mc.classId = c.classId.value;
        mc.category = std::string(category_name(c.category));
        mc.bases = c.bases;
        for (const meta::MetaClass* k : model.linearization(c)) {
            mc.linearization.push_back(k->qualifiedName);
        }
        for (const auto& a : c.attributes) {
            mc.attributes.push_back(ManifestAttribute{
                a.name, describe(a.type),
                a.visibility == Visibility::private_ ? "private" : "public", a.persistent});
        }
        for (const auto& r : c.relationships) {
            mc.relationships.push_back(ManifestRelationship{
                r.name, std::string(cardinality_name(r.cardinality)), r.target, r.inverseName});
        }
        for (const auto& meth : c.methods) {
            ManifestMethod mm;
            mm.name = meth.name;
            mm.returns = describe(meth.returnType);
            mm.isConst = meth.isConst;
            for (const auto& p : meth.params) {
                mm.params.push_back(ManifestParam{p.name, describe(p.type)});
            }
            mc.methods.push_back(std::move(mm));
        }
        m.classes.push_back(std::move(mc));
    }
    for (const auto& e : model.enums()) {
        m.enums.push_back(ManifestEnum{e.qualifiedName, e.module, e.enumerators});
    }
    std::sort(m.classes.begin(), m.classes.end(),
              [](const auto& a, const auto& b) { return a.qualifiedName < b.qualifiedName; });
    std::sort(m.enums.begin(), m.enums.end(),
              [](const auto& a, const auto& b) { return a.qualifiedName < b.qualifiedName; });
    return m;
}

std::string write_manifest(const ReflectionManifest& manifest)
{
    json classes = json::array();
    for (const auto& c : manifest.classes) {
        json attrs = json::array();
        for (const auto& a : c.attributes) {
            attrs.push_back({{"name", a.name},
                             {"type", type_to_json(a.type)},
                             {"visibility", a.visibility},
                             {"persistent", a.persistent}});
        }
        json rels = json::array();
        for (const auto& r : c.relationships) {
            rels.push_back({{"name", r.name},
                            {"cardinality", r.cardinality},
                            {"target", r.target},
                            {"inverse", r.inverse}});
        }
        json methods = json::array();
        for (const auto& m : c.methods) {
            json params = json::array();
            for (const auto& p : m.params) {
                params.push_back({{"name", p.name}, {"type", type_to_json(p.type)}});
            }
            methods.push_back({{"name", m.name},
                               {"returns", type_to_json(m.returns)},
                               {"params", params},
                               {"const", m.isConst}});
        }
        classes.push_back({{"name", c.qualifiedName},
                           {"module", c.module},
                           {"classId", c.classId},
                           {"category", c.category},
                           {"bases", c.bases},
                           {"linearization", c.linearization},
                           {"attributes", attrs},
                           {"relationships", rels},
                           {"methods", methods}});
    }
    json enums = json::array();
    for (const auto& e : manifest.enums) {
        enums.push_back(
            {{"name", e.qualifiedName}, {"module", e.module}, {"enumerators", e.enumerators}});
    }
    json doc = {{"format", kManifestFormat},
                {"schemaVersion", manifest.schemaVersion},
                {"classes", classes},
                {"enums", enums}};
    return doc.dump(2) + "\n";
}

ReflectionManifest read_manifest(std::string_view document)
{
    json doc = json::parse(document.begin(), document.end(), nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object()) {
        malformed("not a JSON object");
    }
    if (get_string(doc, "format") != kManifestFormat) {
        malformed("unexpected format tag");
    }
    const json& version = member(doc, "schemaVersion");
    if (!version.is_number_integer()) {
        malformed("'schemaVersion' must be an integer");
    }
    ReflectionManifest m;
    m.schemaVersion = version.get<int>();
    if (m.schemaVersion != kManifestSchemaVersion) {
        throw ManifestError(ManifestError::Kind::unsupported_version,
                            "unsupported manifest schemaVersion " + std::to_string(m.schemaVersion));
    }
    for (const auto& jc : get_array(doc, "classes")) {
        ManifestClass c;
        c.qualifiedName = get_string(jc, "name");
        c.module = get_string(jc, "module");
        const json& id = member(jc, "classId");
        if (!id.is_number_unsigned() || id.get<std::uint64_t>() > 0xffffffffu) {
            malformed("'classId' must be a 32-bit unsigned integer");
        }
        c.classId = id.get<std::uint32_t>();
        c.category = get_string(jc, "category");
        static const std::set<std::string> kCats = {"plain", "DataObject", "ContainedObject",
                                                    "CollectionObject", "extern"};
        if (!kCats.count(c.category)) {
            malformed("unknown category '" + c.category + "'");
        }
        c.bases = get_strings(jc, "bases");
        c.linearization = get_strings(jc, "linearization");
        for (const auto& ja : get_array(jc, "attributes")) {
            ManifestAttribute a;
            a.name = get_string(ja, "name");
            a.type = type_from_json(member(ja, "type"));
            a.visibility = get_string(ja, "visibility");
            if (a.visibility != "public" && a.visibility != "private") {
                malformed("unknown visibility '" + a.visibility + "'");
            }
            a.persistent = get_bool(ja, "persistent");
            c.attributes.push_back(std::move(a));
        }
        for (const auto& jr : get_array(jc, "relationships")) {
            ManifestRelationship r;
            r.name = get_string(jr, "name");
            r.cardinality = get_string(jr, "cardinality");
            if (r.cardinality != "one" && r.cardinality != "many") {
                malformed("unknown cardinality '" + r.cardinality + "'");
            }
            r.target = get_string(jr, "target");
            r.inverse = get_string(jr, "inverse");
            c.relationships.push_back(std::move(r));
        }
        for (const auto& jm : get_array(jc, "methods")) {
            ManifestMethod mm;
            mm.name = get_string(jm, "name");
            mm.returns = type_from_json(member(jm, "returns"));
            mm.isConst = get_bool(jm, "const");
            for (const auto& jp : get_array(jm, "params")) {
                mm.params.push_back(ManifestParam{get_string(jp, "name"),
                                                  type_from_json(member(jp, "type"))});
            }
            c.methods.push_back(std::move(mm));
        }
        m.classes.push_back(std::move(c));
    }
    for (const auto& je : get_array(doc, "enums")) {
        ManifestEnum e;
        e.qualifiedName = get_string(je, "name");
        e.module = get_string(je, "module");
        e.enumerators = get_strings(je, "enumerators");
        if (e.enumerators.empty()) {
            malformed("enum '" + e.qualifiedName + "' has no enumerators");
        }
        m.enums.push_back(std::move(e));
    }
    return m;
}

} // namespace adl::backend
