// Converter for Calc::Engine. Generated; do not edit.
#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "adl/support/wire.hpp"
#include "Calc/Engine.h"

namespace Calc {

struct EngineCnv {
    using Type = Engine;
    using Builder = adl::wire::PayloadBuilder;

    static const adl::wire::ClassSchema& schema()
    {
        static const adl::wire::ClassSchema s = [] {
            namespace aw = adl::wire;
            aw::ClassSchema c;
            c.classId = 0xbfcfe022u;
            c.name = "Calc::Engine";
            c.category = aw::ClassCategory::data_object;
            c.fields = {
                aw::FieldSchema{"gain", true, false, aw::TypeSchema::primitive(aw::Tag::double_)},
            };
            return c;
        }();
        return s;
    }

    template <bool Whole, class W>
    static void write_own(const Engine& obj, W& w)
    {
        w.f64("gain", obj.gain_);
    }

    template <bool Whole>
    static void read_own(Engine& obj, adl::wire::BinaryReader& r)
    {
        obj.gain_ = r.f64();
    }

    template <class W>
    static void write_own_links(const Engine& obj, W& w)
    {
        (void)obj;
        (void)w;
    }

    static void read_own_links(Engine& obj, adl::wire::BinaryReader& r)
    {
        (void)obj;
        (void)r;
    }

    template <class W>
    static void write(const Engine& obj, W& w)
    {
        ::Calc::EngineCnv::template write_own<false>(obj, w);
        ::Calc::EngineCnv::write_own_links(obj, w);
    }

    static void read(Engine& obj, adl::wire::BinaryReader& r)
    {
        ::Calc::EngineCnv::template read_own<false>(obj, r);
        ::Calc::EngineCnv::read_own_links(obj, r);
    }
};

} // namespace Calc
