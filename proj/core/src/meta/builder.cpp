#include <map>
#include <set>

#include "adl/meta/model.hpp"

namespace adl::meta {

namespace {

std::string join_scope(const std::vector<std::string>& scope)
{
    std::string out;
    for (const auto& s : scope) {
        out = join_name(out, s);
    }
    return out;
}

} // namespace

/// Walks compilation units and fills an unresolved MetaModel.
class ModelBuilder : public frontend::AstVisitor {
public:
    void add_unit(const frontend::CompilationUnit& unit)
    {
        model_.modules_.try_emplace("", MetaModule{"", {}, {}, {}});
        walk(unit);
    }

    Outcome<MetaModel> finish()
    {
        Outcome<MetaModel> out;
        if (!has_errors(diags_)) {
            out.value = std::move(model_);
        }
        out.diagnostics = std::move(diags_);
        return out;
    }

protected:
    void enter_module(const frontend::ModuleDecl& m) override
    {
        std::string qname = join_name(join_scope(scope()), m.name);
        auto [it, inserted] = symbols_.try_emplace(qname, Symbol{true, m.pos});
        if (!inserted && !it->second.isModule) {
            duplicate(qname, m.pos, it->second.pos);
        }
        model_.modules_.try_emplace(qname, MetaModule{qname, {}, {}, {}});
    }

    void visit_class(const frontend::ClassDecl& c) override
    {
        MetaClass mc = start_class(c.name, c.pos);
        if (!claim(mc.qualifiedName, c.pos)) {
            return;
        }
        mc.category = c.category;
        mc.declaredCategory = c.category;
        mc.bases = c.bases;

        std::map<std::string, SourcePos> members;
        auto claim_member = [&](const std::string& name, const SourcePos& pos) {
            auto [it, inserted] = members.try_emplace(name, pos);
            if (!inserted) {
                diags_.push_back(Diagnostic{
                    Severity::error, DiagCode::model_duplicate_member,
                    "duplicate member '" + name + "' in class '" + mc.qualifiedName +
                        "' (previous declaration at " + to_string(it->second) + ")",
                    pos});
            }
        };

        for (const auto& member : c.members) {
            if (const auto* a = std::get_if<frontend::AttributeDecl>(&member)) {
                claim_member(a->name, a->pos);
                mc.attributes.push_back(
                    MetaAttribute{a->name, convert(a->type), a->visibility, a->persistent, a->pos});
            } else if (const auto* r = std::get_if<frontend::RelationshipDecl>(&member)) {
                claim_member(r->name, r->pos);
                MetaRelationship mr;
                mr.name = r->name;
                mr.cardinality = r->cardinality;
                mr.target = r->target;
                mr.writtenInverse = r->inverse;
                auto split = r->inverse.rfind("::");
                mr.inverseClass = r->inverse.substr(0, split);
                mr.inverseName = r->inverse.substr(split + 2);
                mr.pos = r->pos;
                mc.relationships.push_back(std::move(mr));
            } else if (const auto* m = std::get_if<frontend::MethodDecl>(&member)) {
                MetaMethod mm;
                mm.name = m->name;
                mm.returnType = convert(m->returnType);
                mm.isConst = m->isConst;
                mm.pos = m->pos;
                for (const auto& p : m->params) {
                    mm.params.push_back(MetaParam{p.name, convert(p.type)});
                }
                mc.methods.push_back(std::move(mm));
            }
        }
        add_class(std::move(mc));
    }

    void visit_extern(const frontend::ExternDecl& e) override
    {
        MetaClass mc = start_class(e.name, e.pos);
        if (!claim(mc.qualifiedName, e.pos)) {
            return;
        }
        mc.category = Category::extern_type;
        mc.declaredCategory = Category::extern_type;
        add_class(std::move(mc));
    }

    void visit_enum(const frontend::EnumDecl& e) override
    {
        std::string module = join_scope(scope());
        std::string qname = join_name(module, e.name);
        if (!claim(qname, e.pos)) {
            return;
        }
        MetaEnum me{qname, e.name, module, {}, e.pos};
        std::set<std::string> seen;
        for (const auto& en : e.enumerators) {
            if (!seen.insert(en.name).second) {
                diags_.push_back(Diagnostic{Severity::error, DiagCode::model_duplicate_member,
                                            "duplicate enumerator '" + en.name + "' in enum '" +
                                                qname + "'",
                                            en.pos});
            }
            me.enumerators.push_back(en.name);
        }
        model_.enumIndex_.emplace(qname, model_.enums_.size());
        model_.modules_[module].enums.push_back(qname);
        model_.enums_.push_back(std::move(me));
    }

    void visit_typedef(const frontend::TypedefDecl& t) override
    {
        std::string module = join_scope(scope());
        std::string qname = join_name(module, t.alias);
        if (!claim(qname, t.pos)) {
            return;
        }
        model_.typedefIndex_.emplace(qname, model_.typedefs_.size());
        model_.modules_[module].typedefs.push_back(qname);
        model_.typedefs_.push_back(MetaTypedef{qname, t.alias, module, convert(t.type), t.pos});
    }

private:
    struct Symbol {
        bool isModule = false;
        SourcePos pos;
    };

    MetaClass start_class(const std::string& name, const SourcePos& pos)
    {
        MetaClass mc;
        mc.module = join_scope(scope());
        mc.name = name;
        mc.qualifiedName = join_name(mc.module, name);
        mc.scope = scope();
        mc.pos = pos;
        return mc;
    }

    void add_class(MetaClass mc)
    {
        model_.classIndex_.emplace(mc.qualifiedName, model_.classes_.size());
        model_.modules_[mc.module].classes.push_back(mc.qualifiedName);
        model_.classes_.push_back(std::move(mc));
    }

    bool claim(const std::string& qname, const SourcePos& pos)
    {
        auto [it, inserted] = symbols_.try_emplace(qname, Symbol{false, pos});
        if (!inserted) {
            duplicate(qname, pos, it->second.pos);
            return false;
        }
        return true;
    }

    void duplicate(const std::string& qname, const SourcePos& pos, const SourcePos& previous)
    {
        diags_.push_back(Diagnostic{Severity::error, DiagCode::model_duplicate,
                                    "duplicate definition of '" + qname +
                                        "' (previous definition at " + to_string(previous) + ")",
                                    pos});
    }

    MetaType convert(const frontend::TypeRef& t) const
    {
        MetaType out;
        out.pos = t.pos;
        switch (t.kind) {
        case frontend::TypeRef::Kind::void_: out.kind = MetaType::Kind::void_; break;
        case frontend::TypeRef::Kind::primitive:
            out.kind = MetaType::Kind::primitive;
            out.primitive = t.primitive;
            break;
        case frontend::TypeRef::Kind::sequence:
            out.kind = MetaType::Kind::sequence;
            out.element = std::make_shared<const MetaType>(convert(*t.element));
            break;
        case frontend::TypeRef::Kind::named:
            out.kind = MetaType::Kind::unresolved;
            out.name = t.name;
            out.scope = scope();
            break;
        }
        return out;
    }

    MetaModel model_;
    std::map<std::string, Symbol> symbols_;
    std::vector<Diagnostic> diags_;
};

Outcome<MetaModel> build_model(std::span<const frontend::CompilationUnit> units)
{
    ModelBuilder builder;
    for (const auto& unit : units) {
        builder.add_unit(unit);
    }
    return builder.finish();
}

} // namespace adl::meta
