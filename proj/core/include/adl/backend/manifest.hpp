#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adl/meta/model.hpp"

namespace adl::backend {

inline constexpr int kManifestSchemaVersion = 1;
inline constexpr std::string_view kManifestFormat = "adl-reflection-manifest";
inline constexpr std::string_view kManifestFileName = "reflection.manifest.json";

/// Language-neutral type descriptor. `kind` is one of void, primitive,
/// sequence, value, object, enum, extern.
struct ManifestType {
    std::string kind;
    std::string name;  // primitive spelling, or the qualified name of the referenced type
    std::shared_ptr<const ManifestType> element;

    friend bool operator==(const ManifestType& a, const ManifestType& b);
};

struct ManifestAttribute {
    std::string name;
    ManifestType type;
    std::string visibility;  // "public" | "private"
    bool persistent = false;

    friend bool operator==(const ManifestAttribute&, const ManifestAttribute&) = default;
};

struct ManifestRelationship {
    std::string name;
    std::string cardinality;  // "one" | "many"
    std::string target;
    std::string inverse;

    friend bool operator==(const ManifestRelationship&, const ManifestRelationship&) = default;
};

struct ManifestParam {
    std::string name;
    ManifestType type;

    friend bool operator==(const ManifestParam&, const ManifestParam&) = default;
};

struct ManifestMethod {
    std::string name;
    ManifestType returns;
    std::vector<ManifestParam> params;
    bool isConst = false;

    friend bool operator==(const ManifestMethod&, const ManifestMethod&) = default;
};

struct ManifestClass {
    std::string qualifiedName;
    std::string module;
    std::uint32_t classId = 0;
    std::string category;
    std::vector<std::string> bases;
    std::vector<std::string> linearization;  // bases first, the class itself last
    std::vector<ManifestAttribute> attributes;  // own attributes only
    std::vector<ManifestRelationship> relationships;
    std::vector<ManifestMethod> methods;

    friend bool operator==(const ManifestClass&, const ManifestClass&) = default;
};

struct ManifestEnum {
    std::string qualifiedName;
    std::string module;
    std::vector<std::string> enumerators;

    friend bool operator==(const ManifestEnum&, const ManifestEnum&) = default;
};

struct ReflectionManifest {
    int schemaVersion = kManifestSchemaVersion;
    std::vector<ManifestClass> classes;  // sorted by qualified name
    std::vector<ManifestEnum> enums;     // sorted by qualified name

    friend bool operator==(const ReflectionManifest&, const ReflectionManifest&) = default;
};

class ManifestError : public std::runtime_error {
public:
    enum class Kind { malformed, unsupported_version, duplicate_class_id };

    ManifestError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Describes a resolved model. Throws std::invalid_argument for an unresolved one.
ReflectionManifest make_manifest(const meta::MetaModel& model);

/// Canonical JSON: sorted keys, two-space indentation, LF line endings,
/// trailing newline.
std::string write_manifest(const ReflectionManifest& manifest);

/// Parses and validates a manifest document. Throws ManifestError.
ReflectionManifest read_manifest(std::string_view document);

} // namespace adl::backend
