#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace adl::meta {

/// Stable 32-bit class identifier: FNV-1a over the UTF-8 bytes of the fully
/// qualified class name.
struct ClassId {
    std::uint32_t value = 0;

    friend auto operator<=>(const ClassId&, const ClassId&) = default;
};

constexpr std::uint32_t kFnvOffsetBasis = 0x811c9dc5u;
constexpr std::uint32_t kFnvPrime = 0x01000193u;

constexpr std::uint32_t fnv1a32(std::string_view bytes)
{
    std::uint32_t h = kFnvOffsetBasis;
    for (char c : bytes) {
        h ^= static_cast<std::uint8_t>(c);
        h *= kFnvPrime;
    }
    return h;
}

constexpr ClassId compute_class_id(std::string_view qualifiedName)
{
    return ClassId{fnv1a32(qualifiedName)};
}

/// "0x" followed by eight lowercase hex digits.
std::string to_hex(ClassId id);

} // namespace adl::meta
