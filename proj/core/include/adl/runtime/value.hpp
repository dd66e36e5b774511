#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "adl/support/objects.hpp"
#include "adl/support/wire.hpp"

namespace adl::runtime {

class DynamicValue;

struct EnumValue {
    std::string type;  // qualified enum name
    std::uint32_t ordinal = 0;
    std::string label;

    friend bool operator==(const EnumValue&, const EnumValue&) = default;
};

struct StructValue {
    std::string type;  // qualified plain-class name
    std::vector<std::pair<std::string, DynamicValue>> members;

    const DynamicValue* find(std::string_view name) const;
    DynamicValue* find(std::string_view name);

    friend bool operator==(const StructValue&, const StructValue&);
};

using Sequence = std::vector<DynamicValue>;

/// Tagged runtime value covering every ADL attribute type.
class DynamicValue {
public:
    using Storage = std::variant<bool, std::uint8_t, std::int16_t, std::int32_t, std::int64_t,
                                 float, double, std::string, Sequence, EnumValue, StructValue,
                                 support::Opaque>;

    DynamicValue() = default;

    static DynamicValue boolean(bool v) { return DynamicValue(Storage(std::in_place_index<0>, v)); }
    static DynamicValue octet(std::uint8_t v) { return DynamicValue(Storage(std::in_place_index<1>, v)); }
    static DynamicValue i16(std::int16_t v) { return DynamicValue(Storage(std::in_place_index<2>, v)); }
    static DynamicValue i32(std::int32_t v) { return DynamicValue(Storage(std::in_place_index<3>, v)); }
    static DynamicValue i64(std::int64_t v) { return DynamicValue(Storage(std::in_place_index<4>, v)); }
    static DynamicValue f32(float v) { return DynamicValue(Storage(std::in_place_index<5>, v)); }
    static DynamicValue f64(double v) { return DynamicValue(Storage(std::in_place_index<6>, v)); }
    static DynamicValue str(std::string v)
    {
        return DynamicValue(Storage(std::in_place_index<7>, std::move(v)));
    }
    static DynamicValue sequence(Sequence v)
    {
        return DynamicValue(Storage(std::in_place_index<8>, std::move(v)));
    }
    static DynamicValue enumeration(EnumValue v)
    {
        return DynamicValue(Storage(std::in_place_index<9>, std::move(v)));
    }
    static DynamicValue structure(StructValue v)
    {
        return DynamicValue(Storage(std::in_place_index<10>, std::move(v)));
    }
    static DynamicValue opaque(support::Opaque v)
    {
        return DynamicValue(Storage(std::in_place_index<11>, std::move(v)));
    }

    /// Wire tag of the held alternative.
    wire::Tag tag() const { return static_cast<wire::Tag>(storage_.index()); }

    template <class T>
    const T& as() const { return std::get<T>(storage_); }
    template <class T>
    T& as() { return std::get<T>(storage_); }
    template <class T>
    const T* if_as() const { return std::get_if<T>(&storage_); }

    const Storage& storage() const { return storage_; }

    /// Bitwise comparison for floating point, so NaN payloads compare equal to
    /// themselves after a round trip.
    friend bool operator==(const DynamicValue& a, const DynamicValue& b);

private:
    explicit DynamicValue(Storage s) : storage_(std::move(s)) {}

    Storage storage_;
};

/// The zero value of a type: false, 0, 0.0, "", [], first enumerator,
/// zeroed struct members, empty opaque bytes.
DynamicValue zero_value(const wire::TypeSchema& type);

/// True when `value` is a well-formed instance of `type`.
bool conforms(const DynamicValue& value, const wire::TypeSchema& type);

/// ADL spelling of a wire type, for diagnostics.
std::string describe_type(const wire::TypeSchema& type);

/// Canonical text rendering used by the store dump.
std::string render_value(const DynamicValue& value);

/// Inverse of render_value for a value of `type`. Struct literals may omit
/// members, which then keep their zero value. Throws RuntimeError.
DynamicValue parse_value(std::string_view text, const wire::TypeSchema& type);

void encode_value(wire::Encoder& enc, const DynamicValue& value);
DynamicValue decode_value(wire::Decoder& dec, const wire::TypeSchema& type);

} // namespace adl::runtime
