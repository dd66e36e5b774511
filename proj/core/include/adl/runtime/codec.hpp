#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "adl/runtime/store.hpp"

namespace adl::runtime {

/// Encodes `roots` and everything reachable from them over links. Objects
/// are ordered roots first, in argument order, then by a breadth-first walk
/// of links in schema order.
std::string serialize(const TransientStore& store, const std::vector<std::string>& roots);

/// Rebuilds a store from a payload using only its embedded schemas.
/// Throws wire::FormatError.
TransientStore deserialize(std::string_view bytes);

struct PayloadSummary {
    struct Field {
        std::string name;
        std::string type;
        bool persistent = false;
    };
    struct Class {
        std::string name;
        std::uint32_t classId = 0;
        std::string category;
        std::vector<Field> fields;
        std::vector<std::string> links;
        std::size_t count = 0;
    };

    std::uint16_t version = 0;
    std::vector<Class> classes;  // header order
    std::size_t objectCount = 0;
};

/// Reads the header and object table without materializing objects.
PayloadSummary describe_payload(std::string_view bytes);

/// One `Class.key.field=value` line per field and link, sorted bytewise.
std::string dump_store(const TransientStore& store);

} // namespace adl::runtime
