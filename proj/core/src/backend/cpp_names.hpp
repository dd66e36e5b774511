#pragma once

// Naming and type-spelling rules shared by the C++ emitters.

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "adl/backend/emit.hpp"
#include "adl/meta/model.hpp"

namespace adl::backend::cpp {

bool is_keyword(std::string_view word);

std::vector<std::string> split_qualified(std::string_view qualifiedName);

/// `Evt::Sub` -> `Evt/Sub/`, root -> "".
std::string module_dir(std::string_view module);

std::string header_path(const meta::MetaClass& cls);
std::string source_path(const meta::MetaClass& cls);
std::string converter_path(const meta::MetaClass& cls);
std::string enums_path(std::string_view module);

std::string capitalize(std::string_view name);

/// `::Evt::Track`.
std::string global_name(std::string_view qualifiedName);

/// C++ spelling of a model type. Object references become raw pointers.
std::string type_name(const meta::MetaType& type);

/// Parameter spelling: by value for scalars, const reference otherwise.
std::string param_type(const meta::MetaType& type);
bool passed_by_value(const meta::MetaType& type);

/// `// ` prefixed banner lines, or nothing.
std::string banner(const EmitterConfig& config);

std::string namespace_open(std::string_view module);
std::string namespace_close(std::string_view module);

/// Groups `class X;` declarations by namespace.
std::string forward_declarations(const std::set<std::string>& qualifiedNames);

std::string quoted(std::string_view s);

} // namespace adl::backend::cpp
