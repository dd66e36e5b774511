#include "adl/runtime/dictionary.hpp"

#include "adl/backend/schema.hpp"

namespace adl::runtime {

DictionaryService DictionaryService::load_manifest(std::string_view document)
{
    return from_manifest(backend::read_manifest(document));
}

DictionaryService DictionaryService::from_manifest(backend::ReflectionManifest manifest)
{
    DictionaryService svc;
    *svc.manifest_ = std::move(manifest);
    auto schemas = backend::build_schemas(*svc.manifest_);
    for (const auto& c : svc.manifest_->classes) {
        Descriptor d;
        d.manifest = &c;
        d.schema = std::make_shared<const wire::ClassSchema>(std::move(schemas.at(c.qualifiedName)));
        auto [it, fresh] = svc.byName_.emplace(c.qualifiedName, std::move(d));
        svc.byId_.emplace(c.classId, &it->second);
    }
    return svc;
}

const DictionaryService::Descriptor* DictionaryService::find(std::string_view qualifiedName) const
{
    auto it = byName_.find(qualifiedName);
    return it == byName_.end() ? nullptr : &it->second;
}

const DictionaryService::Descriptor* DictionaryService::find(std::uint32_t classId) const
{
    auto it = byId_.find(classId);
    return it == byId_.end() ? nullptr : it->second;
}

std::shared_ptr<DynamicObject> DictionaryService::create_instance(std::string_view qualifiedName) const
{
    const Descriptor* d = find(qualifiedName);
    if (!d) {
        throw RuntimeError(RuntimeError::Kind::unknown_class,
                           "unknown class '" + std::string(qualifiedName) + "'");
    }
    if (d->schema->category == wire::ClassCategory::extern_type) {
        throw RuntimeError(RuntimeError::Kind::not_instantiable,
                           "opaque type not instantiable: " + d->schema->name);
    }
    return std::make_shared<DynamicObject>(d->schema);
}

} // namespace adl::runtime
