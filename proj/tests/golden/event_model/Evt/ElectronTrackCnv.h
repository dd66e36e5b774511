// Converter for Evt::ElectronTrack. Generated; do not edit.
#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "adl/support/wire.hpp"
#include "Evt/ElectronTrack.h"
#include "Evt/TrackCnv.h"

namespace Evt {

struct ElectronTrackCnv {
    using Type = ElectronTrack;
    using Builder = adl::wire::PayloadBuilder;

    static const adl::wire::ClassSchema& schema()
    {
        static const adl::wire::ClassSchema s = [] {
            namespace aw = adl::wire;
            aw::ClassSchema c;
            c.classId = 0xe3a62413u;
            c.name = "Evt::ElectronTrack";
            c.category = aw::ClassCategory::data_object;
            c.ancestors = {"Evt::Track"};
            c.fields = {
                aw::FieldSchema{"id", true, false, aw::TypeSchema::primitive(aw::Tag::long_)},
                aw::FieldSchema{"pt", true, false, aw::TypeSchema::primitive(aw::Tag::double_)},
                aw::FieldSchema{"seed", true, true, aw::TypeSchema::primitive(aw::Tag::long_)},
                aw::FieldSchema{"charge", true, false, aw::TypeSchema::enumeration_of("Evt::Charge", {"negative", "neutral", "positive"})},
                aw::FieldSchema{"cov", true, false, aw::TypeSchema::structure_of("Evt::Cov", {
                    aw::FieldSchema{"xx", false, false, aw::TypeSchema::primitive(aw::Tag::double_)},
                    aw::FieldSchema{"yy", false, false, aw::TypeSchema::primitive(aw::Tag::double_)},
                    aw::FieldSchema{"xy", false, false, aw::TypeSchema::primitive(aw::Tag::double_)},
                })},
                aw::FieldSchema{"cache", false, false, aw::TypeSchema::primitive(aw::Tag::double_)},
                aw::FieldSchema{"eOverP", true, false, aw::TypeSchema::primitive(aw::Tag::float_)},
            };
            c.links = {
                aw::LinkSchema{"origin", false, "Evt::Vertex", "tracks"},
            };
            return c;
        }();
        return s;
    }

    template <bool Whole, class W>
    static void write_own(const ElectronTrack& obj, W& w)
    {
        w.f32("eOverP", obj.eOverP_);
    }

    template <bool Whole>
    static void read_own(ElectronTrack& obj, adl::wire::BinaryReader& r)
    {
        obj.eOverP_ = r.f32();
    }

    template <class W>
    static void write_own_links(const ElectronTrack& obj, W& w)
    {
        (void)obj;
        (void)w;
    }

    static void read_own_links(ElectronTrack& obj, adl::wire::BinaryReader& r)
    {
        (void)obj;
        (void)r;
    }

    template <class W>
    static void write(const ElectronTrack& obj, W& w)
    {
        ::Evt::TrackCnv::template write_own<false>(obj, w);
        ::Evt::ElectronTrackCnv::template write_own<false>(obj, w);
        ::Evt::TrackCnv::write_own_links(obj, w);
        ::Evt::ElectronTrackCnv::write_own_links(obj, w);
    }

    static void read(ElectronTrack& obj, adl::wire::BinaryReader& r)
    {
        ::Evt::TrackCnv::template read_own<false>(obj, r);
        ::Evt::ElectronTrackCnv::template read_own<false>(obj, r);
        ::Evt::TrackCnv::read_own_links(obj, r);
        ::Evt::ElectronTrackCnv::read_own_links(obj, r);
    }
};

} // namespace Evt
