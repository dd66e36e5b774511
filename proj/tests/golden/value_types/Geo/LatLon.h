// Generated from Geo::LatLon. Edits outside the user regions are overwritten.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adl/support/objects.hpp"

// <<adl:user-begin includes hash=811c9dc5>>
// <<adl:user-end includes>>

namespace Geo {

class LatLon {
public:
    static constexpr std::uint32_t kClassId = 0x242ec030u;

    LatLon();
    ~LatLon();
    LatLon(const LatLon&) = default;
    LatLon& operator=(const LatLon&) = default;

    std::uint32_t classId() const { return kClassId; }

    double lat() const { return lat_; }
    void setLat(double value) { lat_ = value; }

    double lon() const { return lon_; }
    void setLon(double value) { lon_ = value; }

    // <<adl:user-begin declarations hash=811c9dc5>>
    // <<adl:user-end declarations>>

private:
    friend struct LatLonCnv;

    double lat_{};
    double lon_{};
};

} // namespace Geo
