#pragma once

#include <stdexcept>
#include <string>

namespace adl::runtime {

class RuntimeError : public std::runtime_error {
public:
    enum class Kind {
        unknown_class,
        not_instantiable,
        unknown_field,
        type_mismatch,
        access_denied,
        empty_key,
        duplicate_key,
        already_recorded,
        unknown_key,
        unknown_relationship,
        target_mismatch,
        not_linked,
        unreachable_object,
    };

    RuntimeError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

} // namespace adl::runtime
