#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "adl/runtime/error.hpp"
#include "adl/runtime/value.hpp"

namespace adl::runtime {

class TransientStore;

/// An instance of a described class, addressed by field name. The schema is
/// either a dictionary descriptor or one read back from a payload header.
class DynamicObject {
public:
    enum class Access { checked, privileged };

    explicit DynamicObject(std::shared_ptr<const wire::ClassSchema> schema);

    const wire::ClassSchema& schema() const { return *schema_; }
    std::shared_ptr<const wire::ClassSchema> schema_ptr() const { return schema_; }
    std::uint32_t classId() const { return schema_->classId; }
    const std::string& className() const { return schema_->name; }

    /// Store key once recorded, empty before.
    const std::string& key() const { return key_; }

    /// `path` is a field name, optionally followed by `.member` steps into
    /// nested struct values.
    const DynamicValue& get(std::string_view path) const;

    /// Type-checked assignment. Leaves the object untouched on error.
    void set(std::string_view path, DynamicValue value, Access access = Access::checked);

    const std::vector<DynamicValue>& values() const { return values_; }

    /// Keys of the partners of a relationship, in link order.
    const std::vector<std::string>& links(std::string_view relationship) const;
    const std::map<std::string, std::vector<std::string>, std::less<>>& all_links() const
    {
        return links_;
    }

private:
    friend class TransientStore;
    friend TransientStore deserialize(std::string_view bytes);

    struct Located {
        const wire::FieldSchema* field;
        DynamicValue* value;
    };
    Located locate(std::string_view path, bool forWrite);

    std::shared_ptr<const wire::ClassSchema> schema_;
    std::vector<DynamicValue> values_;
    std::map<std::string, std::vector<std::string>, std::less<>> links_;
    std::string key_;
};

} // namespace adl::runtime
