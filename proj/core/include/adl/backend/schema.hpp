#pragma once

#include <map>
#include <string>

#include "adl/backend/manifest.hpp"
#include "adl/support/wire.hpp"

namespace adl::backend {

/// Wire schemas for every class of a manifest, keyed by qualified name.
/// Fields follow the linearized attribute order and links the linearized
/// relationship order; plain classes held by value become structure types
/// listing all of their attributes. Throws ManifestError when the manifest
/// refers to undeclared types or reuses a classId.
std::map<std::string, wire::ClassSchema> build_schemas(const ReflectionManifest& manifest);

wire::ClassCategory wire_category(std::string_view manifestCategory);

} // namespace adl::backend
