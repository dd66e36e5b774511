#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "adl/meta/model.hpp"

namespace adl::meta {

namespace {

enum class SymbolKind { module, cls, enumeration, alias };

struct Symbol {
    SymbolKind kind;
    std::string qualifiedName;
};

std::string join_scope(const std::vector<std::string>& scope, std::size_t count)
{
    std::string out;
    for (std::size_t i = 0; i < count; ++i) {
        out = join_name(out, scope[i]);
    }
    return out;
}

bool can_own_relationships(Category c)
{
    return c == Category::data_object || c == Category::contained_object;
}

} // namespace

namespace detail {

class Resolver {
public:
    explicit Resolver(MetaModel& model) : model_(model) {}

    std::vector<Diagnostic> run(MetaModel& m);

private:
    void error(DiagCode code, std::string message, const SourcePos& pos)
    {
        diags_.push_back(Diagnostic{Severity::error, code, std::move(message), pos});
    }

    // Lookup order: the declaring module, then each enclosing scope out to the
    // root; failing that, a model-wide search for the name as a suffix, which
    // must be unique.
    std::optional<Symbol> lookup(const std::vector<std::string>& scope, const std::string& name,
                                 const SourcePos& pos)
    {
        for (std::size_t n = scope.size() + 1; n-- > 0;) {
            auto it = symbols_.find(join_name(join_scope(scope, n), name));
            if (it != symbols_.end()) {
                return it->second;
            }
        }
        std::vector<const Symbol*> matches;
        std::string suffix = "::" + name;
        for (const auto& [qname, sym] : symbols_) {
            if (qname.size() > suffix.size() &&
                qname.compare(qname.size() - suffix.size(), suffix.size(), suffix) == 0) {
                matches.push_back(&sym);
            }
        }
        if (matches.size() == 1) {
            return *matches.front();
        }
        if (matches.empty()) {
            error(DiagCode::model_unknown_type, "unknown type " + name, pos);
        } else {
            std::string list;
            for (const auto* m : matches) {
                list += (list.empty() ? "" : ", ") + m->qualifiedName;
            }
            error(DiagCode::model_ambiguous,
                  "ambiguous reference '" + name + "' (candidates: " + list + ")", pos);
        }
        return std::nullopt;
    }

    std::optional<std::string> lookup_class(const std::vector<std::string>& scope,
                                            const std::string& name, const SourcePos& pos)
    {
        auto sym = lookup(scope, name, pos);
        if (!sym) {
            return std::nullopt;
        }
        if (sym->kind != SymbolKind::cls) {
            error(DiagCode::model_not_a_type, "'" + sym->qualifiedName + "' is not a class", pos);
            return std::nullopt;
        }
        return sym->qualifiedName;
    }

    enum class TypeUse { attribute, signature, alias };

    std::optional<MetaType> resolve_type(const MetaType& t, TypeUse use, const SourcePos& where)
    {
        switch (t.kind) {
        case MetaType::Kind::void_:
        case MetaType::Kind::primitive: {
            MetaType out = t;
            out.scope.clear();
            return out;
        }
        case MetaType::Kind::sequence: {
            if (t.element->kind == MetaType::Kind::void_) {
                error(DiagCode::parse_syntax, "sequence of void", t.pos);
                return std::nullopt;
            }
            auto el = resolve_type(*t.element, use, where);
            if (!el) {
                return std::nullopt;
            }
            MetaType out = MetaType::make_sequence(std::move(*el));
            out.pos = t.pos;
            return out;
        }
        case MetaType::Kind::unresolved: break;
        default: return t; // already resolved
        }
        SourcePos pos = t.pos.file.empty() ? where : t.pos;
        auto sym = lookup(t.scope, t.name, pos);
        if (!sym) {
            return std::nullopt;
        }
        MetaType out;
        out.pos = t.pos;
        out.name = sym->qualifiedName;
        switch (sym->kind) {
        case SymbolKind::module:
            error(DiagCode::model_not_a_type, "'" + sym->qualifiedName + "' is a module, not a type",
                  pos);
            return std::nullopt;
        case SymbolKind::enumeration: out.kind = MetaType::Kind::enumeration; return out;
        case SymbolKind::alias: {
            auto expanded = resolve_typedef(sym->qualifiedName);
            if (!expanded) {
                return std::nullopt;
            }
            if (use == TypeUse::attribute && contains_object(*expanded)) {
                error(DiagCode::model_value_type,
                      "typedef '" + sym->qualifiedName +
                          "' names a framework object, which cannot be held by value",
                      pos);
                return std::nullopt;
            }
            MetaType copy = *expanded;
            copy.pos = t.pos;
            return copy;
        }
        case SymbolKind::cls: break;
        }
        const MetaClass* cls = model_.find_class(sym->qualifiedName);
        if (cls->is_extern()) {
            out.kind = MetaType::Kind::opaque;
        } else if (categories_[cls->qualifiedName] == Category::plain) {
            out.kind = MetaType::Kind::value;
        } else if (use == TypeUse::attribute) {
            error(DiagCode::model_value_type,
                  "'" + cls->qualifiedName + "' is a " +
                      std::string(category_name(categories_[cls->qualifiedName])) +
                      " and cannot be held by value; use a relationship",
                  pos);
            return std::nullopt;
        } else {
            out.kind = MetaType::Kind::object;
        }
        return out;
    }

    static bool contains_object(const MetaType& t)
    {
        if (t.kind == MetaType::Kind::object) {
            return true;
        }
        return t.element && contains_object(*t.element);
    }

    std::optional<MetaType> resolve_typedef(const std::string& qname)
    {
        if (auto it = typedefDone_.find(qname); it != typedefDone_.end()) {
            return it->second;
        }
        const MetaTypedef* td = model_.find_typedef(qname);
        if (!typedefActive_.insert(qname).second) {
            error(DiagCode::model_typedef_cycle, "typedef cycle through '" + qname + "'", td->pos);
            return std::nullopt;
        }
        auto out = resolve_type(td->type, TypeUse::alias, td->pos);
        typedefActive_.erase(qname);
        typedefDone_[qname] = out;
        return out;
    }

    void resolve_bases();
    bool check_cycles();
    void compute_categories();
    void resolve_members();
    void check_value_cycles();
    void check_member_names();
    void check_relationships();
    void assign_class_ids();

    MetaModel& model_;
    std::map<std::string, Symbol> symbols_;
    std::map<std::string, Category> categories_;
    std::map<std::string, std::optional<MetaType>> typedefDone_;
    std::set<std::string> typedefActive_;
    std::vector<Diagnostic> diags_;
};

std::vector<Diagnostic> Resolver::run(MetaModel& m)
{
    for (const auto& [qname, module] : m.modules()) {
        if (!qname.empty()) {
            symbols_[qname] = Symbol{SymbolKind::module, qname};
        }
    }
    for (const auto& c : m.classes()) {
        symbols_[c.qualifiedName] = Symbol{SymbolKind::cls, c.qualifiedName};
    }
    for (const auto& e : m.enums()) {
        symbols_[e.qualifiedName] = Symbol{SymbolKind::enumeration, e.qualifiedName};
    }
    for (const auto& t : m.typedefs()) {
        symbols_[t.qualifiedName] = Symbol{SymbolKind::alias, t.qualifiedName};
    }

    resolve_bases();
    if (!check_cycles()) {
        return std::move(diags_);
    }
    compute_categories();
    resolve_members();
    check_value_cycles();
    check_member_names();
    check_relationships();
    assign_class_ids();
    return std::move(diags_);
}

void Resolver::resolve_bases()
{
    for (const auto& c : model_.classes()) {
        MetaClass& mc = *model_.mutable_class(c.qualifiedName);
        std::vector<std::string> resolved;
        for (const auto& base : mc.bases) {
            auto q = lookup_class(mc.scope, base, mc.pos);
            if (!q) {
                continue;
            }
            const MetaClass* bc = model_.find_class(*q);
            if (bc->is_extern()) {
                error(DiagCode::model_bad_base,
                      "class '" + mc.qualifiedName + "' cannot derive from opaque type '" + *q + "'",
                      mc.pos);
                continue;
            }
            if (std::find(resolved.begin(), resolved.end(), *q) != resolved.end()) {
                error(DiagCode::model_bad_base,
                      "class '" + mc.qualifiedName + "' lists base '" + *q + "' twice", mc.pos);
                continue;
            }
            resolved.push_back(*q);
        }
        mc.bases = std::move(resolved);
    }
}

bool Resolver::check_cycles()
{
    enum class Color { white, grey, black };
    std::map<std::string, Color> color;
    std::vector<std::string> path;
    bool ok = true;

    std::function<void(const MetaClass&)> visit = [&](const MetaClass& c) {
        color[c.qualifiedName] = Color::grey;
        path.push_back(c.qualifiedName);
        for (const auto& b : c.bases) {
            Color col = color[b];
            if (col == Color::grey) {
                std::string cycle;
                auto start = std::find(path.begin(), path.end(), b);
                for (auto it = start; it != path.end(); ++it) {
                    cycle += *it + " -> ";
                }
                cycle += b;
                error(DiagCode::model_inheritance_cycle, "inheritance cycle: " + cycle,
                      model_.find_class(b)->pos);
                ok = false;
            } else if (col == Color::white) {
                visit(*model_.find_class(b));
            }
        }
        path.pop_back();
        color[c.qualifiedName] = Color::black;
    };
    for (const auto& c : model_.classes()) {
        if (color[c.qualifiedName] == Color::white) {
            visit(c);
        }
    }
    return ok;
}

void Resolver::compute_categories()
{
    std::function<Category(const MetaClass&)> category_of = [&](const MetaClass& c) -> Category {
        if (auto it = categories_.find(c.qualifiedName); it != categories_.end()) {
            return it->second;
        }
        Category result = c.declaredCategory;
        std::string from;
        for (const auto& b : c.bases) {
            Category bc = category_of(*model_.find_class(b));
            if (bc == Category::plain) {
                continue;
            }
            if (result == Category::plain) {
                result = bc;
                from = b;
            } else if (result != bc) {
                error(DiagCode::model_category_conflict,
                      "class '" + c.qualifiedName + "' is " + std::string(category_name(result)) +
                          (from.empty() ? "" : " (via '" + from + "')") + " but base '" + b +
                          "' is " + std::string(category_name(bc)),
                      c.pos);
            }
        }
        categories_[c.qualifiedName] = result;
        return result;
    };
    for (const auto& c : model_.classes()) {
        category_of(c);
    }
    for (const auto& [qname, cat] : categories_) {
        model_.mutable_class(qname)->category = cat;
    }
}

void Resolver::resolve_members()
{
    for (auto& td : model_.typedefs_) {
        if (auto t = resolve_typedef(td.qualifiedName)) {
            td.type = *t;
        }
    }
    for (auto& c : model_.classes_) {
        for (auto& a : c.attributes) {
            if (a.type.kind == MetaType::Kind::void_) {
                continue;
            }
            if (auto t = resolve_type(a.type, TypeUse::attribute, a.pos)) {
                a.type = *t;
            }
        }
        for (auto& m : c.methods) {
            if (auto t = resolve_type(m.returnType, TypeUse::signature, m.pos)) {
                m.returnType = *t;
            }
            std::set<std::string> names;
            for (auto& p : m.params) {
                if (p.type.kind == MetaType::Kind::void_) {
                    error(DiagCode::parse_syntax, "parameter '" + p.name + "' declared void", m.pos);
                }
                if (!names.insert(p.name).second) {
                    error(DiagCode::model_duplicate_param,
                          "duplicate parameter '" + p.name + "' in method '" + c.qualifiedName +
                              "::" + m.name + "'",
                          m.pos);
                }
                if (auto t = resolve_type(p.type, TypeUse::signature, m.pos)) {
                    p.type = *t;
                }
            }
        }
        for (auto& r : c.relationships) {
            if (auto q = lookup_class(c.scope, r.target, r.pos)) {
                r.target = *q;
            }
            // The class part of the inverse is looked up quietly: a failure there
            // is reported as a dangling inverse below.
            std::size_t before = diags_.size();
            if (auto q = lookup_class(c.scope, r.inverseClass, r.pos)) {
                r.inverseClass = *q;
            } else {
                diags_.resize(before);
                r.inverseClass = "?" + r.inverseClass;
            }
        }
    }
}

void Resolver::check_value_cycles()
{
    // Plain classes embedded by value (directly or through sequences) must form
    // a DAG, otherwise no finite value exists.
    auto value_deps = [&](const MetaClass& c) {
        std::vector<std::string> deps;
        std::function<void(const MetaType&)> collect = [&](const MetaType& t) {
            if (t.kind == MetaType::Kind::value) {
                deps.push_back(t.name);
            } else if (t.element) {
                collect(*t.element);
            }
        };
        for (const MetaClass* k : model_.linearization(c)) {
            for (const auto& a : k->attributes) {
                collect(a.type);
            }
        }
        return deps;
    };
    enum class Color { white, grey, black };
    std::map<std::string, Color> color;
    std::function<bool(const MetaClass&)> visit = [&](const MetaClass& c) -> bool {
        color[c.qualifiedName] = Color::grey;
        for (const auto& d : value_deps(c)) {
            Color col = color[d];
            if (col == Color::grey) {
                error(DiagCode::model_value_cycle,
                      "class '" + d + "' contains itself by value (through '" + c.qualifiedName +
                          "')",
                      model_.find_class(d)->pos);
                color[c.qualifiedName] = Color::black;
                return false;
            }
            if (col == Color::white && !visit(*model_.find_class(d))) {
                color[c.qualifiedName] = Color::black;
                return false;
            }
        }
        color[c.qualifiedName] = Color::black;
        return true;
    };
    for (const auto& c : model_.classes()) {
        if (color[c.qualifiedName] == Color::white) {
            visit(c);
        }
    }
}

void Resolver::check_member_names()
{
    for (const auto& c : model_.classes()) {
        std::map<std::string, std::string> owner;  // member name -> declaring class
        for (const MetaClass* k : model_.linearization(c)) {
            auto note = [&](const std::string& name, const SourcePos& pos) {
                auto [it, inserted] = owner.try_emplace(name, k->qualifiedName);
                if (!inserted && it->second != k->qualifiedName) {
                    error(DiagCode::model_duplicate_member,
                          "member '" + name + "' of '" + k->qualifiedName +
                              "' clashes with the member of the same name inherited from '" +
                              it->second + "' in class '" + c.qualifiedName + "'",
                          pos);
                }
            };
            for (const auto& a : k->attributes) {
                note(a.name, a.pos);
            }
            for (const auto& r : k->relationships) {
                note(r.name, r.pos);
            }
        }
        std::set<std::string> signatures;
        for (const auto& m : c.methods) {
            std::string sig = m.name + "(";
            for (const auto& p : m.params) {
                sig += p.type.spelling() + ",";
            }
            sig += m.isConst ? ") const" : ")";
            if (!signatures.insert(sig).second) {
                error(DiagCode::model_duplicate_member,
                      "method '" + c.qualifiedName + "::" + sig + "' declared twice", m.pos);
            }
        }
    }
}

void Resolver::check_relationships()
{
    for (const auto& c : model_.classes()) {
        for (const auto& r : c.relationships) {
            std::string self = c.qualifiedName + "::" + r.name;
            if (!can_own_relationships(c.category)) {
                error(DiagCode::model_relationship_owner,
                      "relationship '" + self + "' declared on a " +
                          std::string(category_name(c.category)) +
                          " class; only DataObject and ContainedObject classes own relationships",
                      r.pos);
                continue;
            }
            const MetaClass* target = model_.find_class(r.target);
            if (!target) {
                continue; // lookup already reported
            }
            if (!can_own_relationships(target->category)) {
                error(DiagCode::model_relationship_target,
                      "relationship '" + self + "' targets '" + target->qualifiedName +
                          "', which is not a DataObject or ContainedObject",
                      r.pos);
                continue;
            }
            const MetaRelationship* inv = nullptr;
            if (r.inverseClass == target->qualifiedName) {
                inv = model_.find_relationship(*target, r.inverseName);
            }
            if (!inv) {
                error(DiagCode::model_inverse_dangling,
                      "dangling relationship inverse: '" + r.writtenInverse + "' of '" + self +
                          "' is not a relationship of '" + target->qualifiedName + "'",
                      r.pos);
                continue;
            }
            if (inv->target != c.qualifiedName || inv->inverseClass != c.qualifiedName ||
                inv->inverseName != r.name) {
                std::string back = inv->inverseClass;
                if (!back.empty() && back[0] == '?') {
                    back.erase(0, 1);
                }
                error(DiagCode::model_inverse_asymmetric,
                      "asymmetric relationship inverse: '" + self + "' names '" +
                          target->qualifiedName + "::" + inv->name + "', whose inverse is '" +
                          back + "::" + inv->inverseName + "'",
                      r.pos);
            }
        }
    }
}

void Resolver::assign_class_ids()
{
    std::map<std::uint32_t, const MetaClass*> byId;
    for (auto& c : model_.classes_) {
        c.classId = compute_class_id(c.qualifiedName);
        auto [it, inserted] = byId.try_emplace(c.classId.value, &c);
        if (!inserted) {
            error(DiagCode::model_classid_collision,
                  "ClassId collision: '" + c.qualifiedName + "' and '" + it->second->qualifiedName +
                      "' both hash to " + to_hex(c.classId),
                  c.pos);
        }
    }
}

} // namespace detail

Outcome<MetaModel> resolve(MetaModel model)
{
    Outcome<MetaModel> out;
    if (model.resolved_) {
        out.value = std::move(model);
        return out;
    }
    detail::Resolver resolver(model);
    out.diagnostics = resolver.run(model);
    if (!has_errors(out.diagnostics)) {
        for (auto& c : model.classes_) {
            c.scope.clear();
        }
        model.resolved_ = true;
        out.value = std::move(model);
    }
    return out;
}

} // namespace adl::meta
