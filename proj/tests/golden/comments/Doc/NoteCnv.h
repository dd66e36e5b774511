// Converter for Doc::Note. Generated; do not edit.
#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "adl/support/wire.hpp"
#include "Doc/Note.h"

namespace Doc {

struct NoteCnv {
    using Type = Note;
    using Builder = adl::wire::PayloadBuilder;

    static const adl::wire::ClassSchema& schema()
    {
        static const adl::wire::ClassSchema s = [] {
            namespace aw = adl::wire;
            aw::ClassSchema c;
            c.classId = 0x18727dfdu;
            c.name = "Doc::Note";
            c.category = aw::ClassCategory::data_object;
            c.fields = {
                aw::FieldSchema{"text", true, false, aw::TypeSchema::primitive(aw::Tag::string)},
            };
            return c;
        }();
        return s;
    }

    template <bool Whole, class W>
    static void write_own(const Note& obj, W& w)
    {
        w.str("text", obj.text_);
    }

    template <bool Whole>
    static void read_own(Note& obj, adl::wire::BinaryReader& r)
    {
        obj.text_ = r.str();
    }

    template <class W>
    static void write_own_links(const Note& obj, W& w)
    {
        (void)obj;
        (void)w;
    }

    static void read_own_links(Note& obj, adl::wire::BinaryReader& r)
    {
        (void)obj;
        (void)r;
    }

    template <class W>
    static void write(const Note& obj, W& w)
    {
        ::Doc::NoteCnv::template write_own<false>(obj, w);
        ::Doc::NoteCnv::write_own_links(obj, w);
    }

    static void read(Note& obj, adl::wire::BinaryReader& r)
    {
        ::Doc::NoteCnv::template read_own<false>(obj, r);
        ::Doc::NoteCnv::read_own_links(obj, r);
    }
};

} // namespace Doc
