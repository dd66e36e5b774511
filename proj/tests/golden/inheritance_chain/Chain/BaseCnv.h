// Converter for Chain::Base. Generated; do not edit.
#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "adl/support/wire.hpp"
#include "Chain/Base.h"

namespace Chain {

struct BaseCnv {
    using Type = Base;
    using Builder = adl::wire::PayloadBuilder;

    static const adl::wire::ClassSchema& schema()
    {
        static const adl::wire::ClassSchema s = [] {
            namespace aw = adl::wire;
            aw::ClassSchema c;
            c.classId = 0x7f285917u;
            c.name = "Chain::Base";
            c.category = aw::ClassCategory::data_object;
            c.fields = {
                aw::FieldSchema{"a", true, false, aw::TypeSchema::primitive(aw::Tag::long_)},
            };
            return c;
        }();
        return s;
    }

    template <bool Whole, class W>
    static void write_own(const Base& obj, W& w)
    {
        w.i32("a", obj.a_);
    }

    template <bool Whole>
    static void read_own(Base& obj, adl::wire::BinaryReader& r)
    {
        obj.a_ = r.i32();
    }

    template <class W>
    static void write_own_links(const Base& obj, W& w)
    {
        (void)obj;
        (void)w;
    }

    static void read_own_links(Base& obj, adl::wire::BinaryReader& r)
    {
        (void)obj;
        (void)r;
    }

    template <class W>
    static void write(const Base& obj, W& w)
    {
        ::Chain::BaseCnv::template write_own<false>(obj, w);
        ::Chain::BaseCnv::write_own_links(obj, w);
    }

    static void read(Base& obj, adl::wire::BinaryReader& r)
    {
        ::Chain::BaseCnv::template read_own<false>(obj, r);
        ::Chain::BaseCnv::read_own_links(obj, r);
    }
};

} // namespace Chain
