#include "adl/runtime/object.hpp"

namespace adl::runtime {

namespace {

std::vector<std::string_view> split_path(std::string_view path)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t dot = path.find('.', start);
        parts.push_back(path.substr(start, dot - start));
        if (dot == std::string_view::npos) {
            break;
        }
        start = dot + 1;
    }
    return parts;
}

} // namespace

DynamicObject::DynamicObject(std::shared_ptr<const wire::ClassSchema> schema)
    : schema_(std::move(schema))
{
    for (const auto& f : schema_->fields) {
        values_.push_back(zero_value(f.type));
    }
    for (const auto& l : schema_->links) {
        links_[l.name];
    }
}

DynamicObject::Located DynamicObject::locate(std::string_view path, bool forWrite)
{
    auto parts = split_path(path);
    const wire::FieldSchema* field = nullptr;
    DynamicValue* value = nullptr;
    for (std::size_t i = 0; i < schema_->fields.size(); ++i) {
        if (schema_->fields[i].name == parts[0]) {
            field = &schema_->fields[i];
            value = &values_[i];
            break;
        }
    }
    if (!field) {
        throw RuntimeError(RuntimeError::Kind::unknown_field,
                           "unknown field '" + std::string(parts[0]) + "' in " + schema_->name);
    }
    bool hidden = field->isPrivate;
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (field->type.tag != wire::Tag::structure) {
            throw RuntimeError(RuntimeError::Kind::unknown_field,
                               "'" + std::string(path.substr(0, parts[i].data() - path.data() - 1)) +
                                   "' is not a struct value");
        }
        const wire::FieldSchema* next = nullptr;
        for (const auto& f : field->type.fields) {
            if (f.name == parts[i]) {
                next = &f;
                break;
            }
        }
        if (!next) {
            throw RuntimeError(RuntimeError::Kind::unknown_field,
                               "unknown member '" + std::string(parts[i]) + "' in " +
                                   field->type.name);
        }
        field = next;
        value = value->as<StructValue>().find(parts[i]);
        hidden = hidden || field->isPrivate;
    }
    if (forWrite && hidden) {
        field = nullptr;
    }
    return Located{field, value};
}

const DynamicValue& DynamicObject::get(std::string_view path) const
{
    return *const_cast<DynamicObject*>(this)->locate(path, false).value;
}

void DynamicObject::set(std::string_view path, DynamicValue value, Access access)
{
    Located loc = locate(path, access == Access::checked);
    if (!loc.field) {
        throw RuntimeError(RuntimeError::Kind::access_denied,
                           "'" + std::string(path) + "' is private in " + schema_->name);
    }
    if (!conforms(value, loc.field->type)) {
        throw RuntimeError(RuntimeError::Kind::type_mismatch,
                           "type mismatch: '" + std::string(path) + "' holds " +
                               describe_type(loc.field->type));
    }
    *loc.value = std::move(value);
}

const std::vector<std::string>& DynamicObject::links(std::string_view relationship) const
{
    auto it = links_.find(relationship);
    if (it == links_.end()) {
        throw RuntimeError(RuntimeError::Kind::unknown_relationship,
                           "unknown relationship '" + std::string(relationship) + "' in " +
                               schema_->name);
    }
    return it->second;
}

} // namespace adl::runtime
