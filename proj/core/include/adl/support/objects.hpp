#pragma once

// Base classes and helper types referenced by generated data-object sources.

#include <algorithm>
#include <cstdint>
#include <vector>

namespace adl::support {

/// Root of every generated framework object (DataObject, ContainedObject,
/// CollectionObject). Plain value classes do not derive from it.
class Object {
public:
    virtual ~Object() = default;
    virtual std::uint32_t classId() const = 0;
};

class DataObject : public virtual Object {};
class ContainedObject : public virtual Object {};
class CollectionObject : public virtual Object {};

/// Storage for an `extern` (opaque) attribute: uninterpreted bytes.
struct Opaque {
    std::vector<std::uint8_t> bytes;

    friend bool operator==(const Opaque&, const Opaque&) = default;
};

template <class T, class U>
bool holds_link(const std::vector<T*>& links, const U* target)
{
    return std::find(links.begin(), links.end(), target) != links.end();
}

template <class T, class U>
void erase_link(std::vector<T*>& links, const U* target)
{
    links.erase(std::remove(links.begin(), links.end(), target), links.end());
}

} // namespace adl::support
