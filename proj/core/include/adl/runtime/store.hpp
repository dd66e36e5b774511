#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "adl/runtime/object.hpp"

namespace adl::runtime {

/// Keyed container of dynamic objects. Relationships are maintained here so
/// that both ends of a link always agree.
class TransientStore {
public:
    /// Registers `obj` under `key`; the store shares ownership.
    void record(const std::string& key, std::shared_ptr<DynamicObject> obj);

    /// The registered object itself, or null.
    std::shared_ptr<DynamicObject> retrieve(std::string_view key) const;

    bool contains(std::string_view key) const { return objects_.count(key) != 0; }
    std::size_t size() const { return objects_.size(); }
    /// Keys in recording order.
    const std::vector<std::string>& keys() const { return order_; }

    /// Links `aKey` to `bKey` through `relationship` of a's class and adds the
    /// inverse on b. A `one` side drops its previous partner first.
    void link(std::string_view aKey, std::string_view relationship, std::string_view bKey);
    void unlink(std::string_view aKey, std::string_view relationship, std::string_view bKey);

    /// Empty when every link has its mirror and no `one` side holds more
    /// than one partner; otherwise a description of the first violation.
    std::string check_integrity() const;

private:
    friend TransientStore deserialize(std::string_view bytes);

    struct Side {
        DynamicObject* object;
        const wire::LinkSchema* link;
    };
    DynamicObject& require(std::string_view key) const;
    std::pair<Side, Side> sides(std::string_view aKey, std::string_view relationship,
                                std::string_view bKey) const;
    static void detach(DynamicObject& obj, const std::string& rel, const std::string& key);

    std::map<std::string, std::shared_ptr<DynamicObject>, std::less<>> objects_;
    std::vector<std::string> order_;
};

} // namespace adl::runtime
