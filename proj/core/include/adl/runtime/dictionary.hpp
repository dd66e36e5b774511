#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "adl/backend/manifest.hpp"
#include "adl/runtime/object.hpp"

namespace adl::runtime {

/// Registry of class descriptors loaded from a reflection manifest.
/// Immutable after loading apart from the privileged flag.
class DictionaryService {
public:
    struct Descriptor {
        const backend::ManifestClass* manifest = nullptr;
        std::shared_ptr<const wire::ClassSchema> schema;
    };

    DictionaryService() = default;
    DictionaryService(const DictionaryService&) = delete;
    DictionaryService& operator=(const DictionaryService&) = delete;
    DictionaryService(DictionaryService&&) noexcept = default;
    DictionaryService& operator=(DictionaryService&&) noexcept = default;

    /// Throws backend::ManifestError for malformed documents, unsupported
    /// schema versions and duplicate classIds.
    static DictionaryService load_manifest(std::string_view document);
    static DictionaryService from_manifest(backend::ReflectionManifest manifest);

    const Descriptor* find(std::string_view qualifiedName) const;
    const Descriptor* find(std::uint32_t classId) const;
    std::size_t size() const { return byName_.size(); }

    const backend::ReflectionManifest& manifest() const { return *manifest_; }

    /// Re-emits the loaded description in canonical form.
    std::string write_manifest() const { return backend::write_manifest(*manifest_); }

    /// Fresh instance with zero-valued fields and no links.
    std::shared_ptr<DynamicObject> create_instance(std::string_view qualifiedName) const;

    bool privileged() const { return privileged_; }
    void set_privileged(bool on) { privileged_ = on; }

    const DynamicValue& get_field(const DynamicObject& obj, std::string_view path) const
    {
        return obj.get(path);
    }
    /// Private attributes are writable only in privileged mode.
    void set_field(DynamicObject& obj, std::string_view path, DynamicValue value) const
    {
        obj.set(path, std::move(value),
                privileged_ ? DynamicObject::Access::privileged : DynamicObject::Access::checked);
    }

private:
    std::unique_ptr<backend::ReflectionManifest> manifest_ =
        std::make_unique<backend::ReflectionManifest>();
    std::map<std::string, Descriptor, std::less<>> byName_;
    std::map<std::uint32_t, const Descriptor*> byId_;
    bool privileged_ = false;
};

} // namespace adl::runtime
