#include "adl/runtime/codec.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace adl::runtime {

using wire::FormatError;

std::string serialize(const TransientStore& store, const std::vector<std::string>& roots)
{
    std::vector<const DynamicObject*> order;
    std::map<std::string, std::uint32_t, std::less<>> index;
    std::deque<const DynamicObject*> pending;
    auto visit = [&](const std::string& key) {
        if (index.count(key)) {
            return;
        }
        auto obj = store.retrieve(key);
        if (!obj) {
            throw RuntimeError(RuntimeError::Kind::unreachable_object,
                               "object '" + key + "' is not in the store");
        }
        index.emplace(key, static_cast<std::uint32_t>(order.size()));
        order.push_back(obj.get());
        pending.push_back(obj.get());
    };
    for (const auto& r : roots) {
        visit(r);
    }
    while (!pending.empty()) {
        const DynamicObject* obj = pending.front();
        pending.pop_front();
        for (const auto& l : obj->schema().links) {
            for (const auto& k : obj->links(l.name)) {
                visit(k);
            }
        }
    }

    std::vector<const wire::ClassSchema*> schemas;
    std::vector<wire::ObjectRecord> records;
    for (const DynamicObject* obj : order) {
        const auto& s = obj->schema();
        if (std::none_of(schemas.begin(), schemas.end(),
                         [&](const wire::ClassSchema* x) { return x->classId == s.classId; })) {
            schemas.push_back(&s);
        }
        wire::ObjectRecord rec;
        rec.classId = s.classId;
        rec.key = obj->key();
        wire::Encoder enc(rec.body);
        for (std::size_t i = 0; i < s.fields.size(); ++i) {
            if (s.fields[i].persistent) {
                encode_value(enc, obj->values()[i]);
            }
        }
        for (const auto& l : s.links) {
            const auto& partners = obj->links(l.name);
            if (l.many) {
                enc.count(partners.size());
                for (const auto& k : partners) {
                    enc.u32(index.at(k));
                }
            } else {
                enc.u32(partners.empty() ? wire::kNoLink : index.at(partners.front()));
            }
        }
        records.push_back(std::move(rec));
    }
    return wire::assemble_payload(schemas, records);
}

TransientStore deserialize(std::string_view bytes)
{
    wire::PayloadView view = wire::parse_payload(bytes);
    std::vector<std::shared_ptr<const wire::ClassSchema>> schemas;
    for (auto& s : view.schemas) {
        schemas.push_back(std::make_shared<const wire::ClassSchema>(std::move(s)));
    }
    TransientStore store;
    std::vector<std::shared_ptr<DynamicObject>> objects;
    for (const auto& o : view.objects) {
        if (o.key.empty() || store.contains(o.key)) {
            throw FormatError(FormatError::Kind::malformed,
                              o.key.empty() ? "object with an empty key"
                                            : "duplicate object key '" + o.key + "'");
        }
        auto obj = std::make_shared<DynamicObject>(schemas[o.schemaIndex]);
        store.record(o.key, obj);
        objects.push_back(std::move(obj));
    }
    for (std::size_t i = 0; i < objects.size(); ++i) {
        DynamicObject& obj = *objects[i];
        const auto& s = obj.schema();
        wire::Decoder dec(view.objects[i].body);
        for (std::size_t f = 0; f < s.fields.size(); ++f) {
            if (s.fields[f].persistent) {
                obj.values_[f] = decode_value(dec, s.fields[f].type);
            }
        }
        auto target = [&](std::uint32_t idx, const wire::LinkSchema& l) -> const std::string& {
            if (idx >= objects.size()) {
                throw FormatError(FormatError::Kind::malformed, "link index out of range");
            }
            if (!objects[idx]->schema().is_kind_of(l.target)) {
                throw FormatError(FormatError::Kind::malformed,
                                  "link " + s.name + "::" + l.name + " points at a " +
                                      objects[idx]->className());
            }
            return objects[idx]->key();
        };
        for (const auto& l : s.links) {
            auto& partners = obj.links_[l.name];
            if (l.many) {
                std::uint32_t n = dec.count(4);
                for (std::uint32_t k = 0; k < n; ++k) {
                    partners.push_back(target(dec.u32(), l));
                }
            } else {
                std::uint32_t idx = dec.u32();
                if (idx != wire::kNoLink) {
                    partners.push_back(target(idx, l));
                }
            }
        }
        if (!dec.at_end()) {
            throw FormatError(FormatError::Kind::malformed, "object body has trailing bytes");
        }
    }
    if (std::string problem = store.check_integrity(); !problem.empty()) {
        throw FormatError(FormatError::Kind::malformed, "inconsistent links: " + problem);
    }
    return store;
}

namespace {

std::string_view category_label(wire::ClassCategory c)
{
    switch (c) {
    case wire::ClassCategory::plain: return "plain";
    case wire::ClassCategory::data_object: return "DataObject";
    case wire::ClassCategory::contained_object: return "ContainedObject";
    case wire::ClassCategory::collection_object: return "CollectionObject";
    case wire::ClassCategory::extern_type: return "extern";
    }
    return "?";
}

} // namespace

PayloadSummary describe_payload(std::string_view bytes)
{
    wire::PayloadView view = wire::parse_payload(bytes);
    PayloadSummary out;
    out.version = view.version;
    out.objectCount = view.objects.size();
    for (const auto& s : view.schemas) {
        PayloadSummary::Class c;
        c.name = s.name;
        c.classId = s.classId;
        c.category = std::string(category_label(s.category));
        for (const auto& f : s.fields) {
            c.fields.push_back(PayloadSummary::Field{f.name, describe_type(f.type), f.persistent});
        }
        for (const auto& l : s.links) {
            c.links.push_back(l.name);
        }
        out.classes.push_back(std::move(c));
    }
    for (const auto& o : view.objects) {
        ++out.classes[o.schemaIndex].count;
    }
    return out;
}

std::string dump_store(const TransientStore& store)
{
    std::vector<std::string> lines;
    for (const auto& key : store.keys()) {
        auto obj = store.retrieve(key);
        const auto& s = obj->schema();
        std::string prefix = s.name + "." + key + ".";
        for (std::size_t i = 0; i < s.fields.size(); ++i) {
            lines.push_back(prefix + s.fields[i].name + "=" + render_value(obj->values()[i]));
        }
        for (const auto& l : s.links) {
            const auto& partners = obj->links(l.name);
            std::string v = prefix + l.name + "=@";
            if (l.many) {
                Sequence keys;
                for (const auto& p : partners) {
                    keys.push_back(DynamicValue::str(p));
                }
                v += render_value(DynamicValue::sequence(std::move(keys)));
            } else {
                v += partners.empty() ? "null" : render_value(DynamicValue::str(partners.front()));
            }
            lines.push_back(std::move(v));
        }
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

} // namespace adl::runtime
