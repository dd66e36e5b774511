#include "adl/runtime/store.hpp"

#include <algorithm>

namespace adl::runtime {

void TransientStore::record(const std::string& key, std::shared_ptr<DynamicObject> obj)
{
    if (key.empty()) {
        throw RuntimeError(RuntimeError::Kind::empty_key, "store keys must be non-empty");
    }
    if (objects_.count(key)) {
        throw RuntimeError(RuntimeError::Kind::duplicate_key, "duplicate store key '" + key + "'");
    }
    if (!obj->key_.empty()) {
        throw RuntimeError(RuntimeError::Kind::already_recorded,
                           "object is already recorded as '" + obj->key_ + "'");
    }
    obj->key_ = key;
    objects_.emplace(key, std::move(obj));
    order_.push_back(key);
}

std::shared_ptr<DynamicObject> TransientStore::retrieve(std::string_view key) const
{
    auto it = objects_.find(key);
    return it == objects_.end() ? nullptr : it->second;
}

DynamicObject& TransientStore::require(std::string_view key) const
{
    auto it = objects_.find(key);
    if (it == objects_.end()) {
        throw RuntimeError(RuntimeError::Kind::unknown_key,
                           "no object recorded as '" + std::string(key) + "'");
    }
    return *it->second;
}

namespace {

const wire::LinkSchema* find_link(const wire::ClassSchema& s, std::string_view name)
{
    for (const auto& l : s.links) {
        if (l.name == name) {
            return &l;
        }
    }
    return nullptr;
}

bool holds(const std::vector<std::string>& keys, const std::string& key)
{
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

} // namespace

std::pair<TransientStore::Side, TransientStore::Side>
TransientStore::sides(std::string_view aKey, std::string_view relationship,
                      std::string_view bKey) const
{
    DynamicObject& a = require(aKey);
    DynamicObject& b = require(bKey);
    const wire::LinkSchema* rel = find_link(a.schema(), relationship);
    if (!rel) {
        throw RuntimeError(RuntimeError::Kind::unknown_relationship,
                           "unknown relationship '" + std::string(relationship) + "' in " +
                               a.className());
    }
    if (!b.schema().is_kind_of(rel->target)) {
        throw RuntimeError(RuntimeError::Kind::target_mismatch,
                           "target class mismatch: " + a.className() + "::" + rel->name +
                               " expects " + rel->target + ", got " + b.className());
    }
    const wire::LinkSchema* inv = find_link(b.schema(), rel->inverse);
    if (!inv || !a.schema().is_kind_of(inv->target)) {
        throw RuntimeError(RuntimeError::Kind::target_mismatch,
                           "target class mismatch: " + b.className() + " has no inverse '" +
                               rel->inverse + "' accepting " + a.className());
    }
    return {Side{&a, rel}, Side{&b, inv}};
}

void TransientStore::detach(DynamicObject& obj, const std::string& rel, const std::string& key)
{
    auto& keys = obj.links_[rel];
    keys.erase(std::remove(keys.begin(), keys.end(), key), keys.end());
}

void TransientStore::link(std::string_view aKey, std::string_view relationship,
                          std::string_view bKey)
{
    auto [a, b] = sides(aKey, relationship, bKey);
    const std::string& ak = a.object->key_;
    const std::string& bk = b.object->key_;
    if (holds(a.object->links_[a.link->name], bk)) {
        return;
    }
    if (!a.link->many && !a.object->links_[a.link->name].empty()) {
        std::string old = a.object->links_[a.link->name].front();
        unlink(ak, a.link->name, old);
    }
    if (!b.link->many && !b.object->links_[b.link->name].empty()) {
        std::string old = b.object->links_[b.link->name].front();
        unlink(bk, b.link->name, old);
    }
    a.object->links_[a.link->name].push_back(bk);
    auto& back = b.object->links_[b.link->name];
    if (!holds(back, ak)) {
        back.push_back(ak);
    }
}

void TransientStore::unlink(std::string_view aKey, std::string_view relationship,
                            std::string_view bKey)
{
    auto [a, b] = sides(aKey, relationship, bKey);
    if (!holds(a.object->links_[a.link->name], b.object->key_)) {
        throw RuntimeError(RuntimeError::Kind::not_linked,
                           "'" + std::string(aKey) + "' is not linked to '" + std::string(bKey) +
                               "' through " + a.link->name);
    }
    detach(*a.object, a.link->name, b.object->key_);
    detach(*b.object, b.link->name, a.object->key_);
}

std::string TransientStore::check_integrity() const
{
    for (const auto& key : order_) {
        const DynamicObject& a = *objects_.find(key)->second;
        for (const auto& rel : a.schema().links) {
            const auto& partners = a.links(rel.name);
            if (!rel.many && partners.size() > 1) {
                return key + "." + rel.name + " holds " + std::to_string(partners.size()) +
                       " partners";
            }
            for (std::size_t i = 0; i < partners.size(); ++i) {
                if (std::find(partners.begin(), partners.begin() + static_cast<long>(i),
                              partners[i]) != partners.begin() + static_cast<long>(i)) {
                    return key + "." + rel.name + " lists '" + partners[i] + "' twice";
                }
                auto it = objects_.find(partners[i]);
                if (it == objects_.end()) {
                    return key + "." + rel.name + " points at unknown '" + partners[i] + "'";
                }
                const DynamicObject& b = *it->second;
                auto back = b.all_links().find(rel.inverse);
                if (back == b.all_links().end() || !holds(back->second, key)) {
                    return key + "." + rel.name + " -> " + partners[i] + " has no inverse " +
                           rel.inverse;
                }
            }
        }
    }
    return {};
}

} // namespace adl::runtime
