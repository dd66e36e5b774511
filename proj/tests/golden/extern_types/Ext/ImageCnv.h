// Converter for Ext::Image. Generated; do not edit.
#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "adl/support/wire.hpp"
#include "Ext/Image.h"

namespace Ext {

struct ImageCnv {
    using Type = Image;
    using Builder = adl::wire::PayloadBuilder;

    static const adl::wire::ClassSchema& schema()
    {
        static const adl::wire::ClassSchema s = [] {
            namespace aw = adl::wire;
            aw::ClassSchema c;
            c.classId = 0x075094cdu;
            c.name = "Ext::Image";
            c.category = aw::ClassCategory::data_object;
            c.fields = {
                aw::FieldSchema{"pixels", true, false, aw::TypeSchema::opaque_of("Blob")},
                aw::FieldSchema{"transform", true, false, aw::TypeSchema::opaque_of("Ext::Matrix")},
                aw::FieldSchema{"width", true, false, aw::TypeSchema::primitive(aw::Tag::long_)},
            };
            return c;
        }();
        return s;
    }

    template <bool Whole, class W>
    static void write_own(const Image& obj, W& w)
    {
        w.opaque("pixels", obj.pixels_);
        w.opaque("transform", obj.transform_);
        w.i32("width", obj.width_);
    }

    template <bool Whole>
    static void read_own(Image& obj, adl::wire::BinaryReader& r)
    {
        obj.pixels_ = r.opaque();
        obj.transform_ = r.opaque();
        obj.width_ = r.i32();
    }

    template <class W>
    static void write_own_links(const Image& obj, W& w)
    {
        (void)obj;
        (void)w;
    }

    static void read_own_links(Image& obj, adl::wire::BinaryReader& r)
    {
        (void)obj;
        (void)r;
    }

    template <class W>
    static void write(const Image& obj, W& w)
    {
        ::Ext::ImageCnv::template write_own<false>(obj, w);
        ::Ext::ImageCnv::write_own_links(obj, w);
    }

    static void read(Image& obj, adl::wire::BinaryReader& r)
    {
        ::Ext::ImageCnv::template read_own<false>(obj, r);
        ::Ext::ImageCnv::read_own_links(obj, r);
    }
};

} // namespace Ext
