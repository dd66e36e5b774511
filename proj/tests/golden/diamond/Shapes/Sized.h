// Generated from Shapes::Sized. Edits outside the user regions are overwritten.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adl/support/objects.hpp"
#include "Shapes/Named.h"

// <<adl:user-begin includes hash=811c9dc5>>
// <<adl:user-end includes>>

namespace Shapes {

class Sized : public virtual ::Shapes::Named {
public:
    static constexpr std::uint32_t kClassId = 0xf3884426u;

    Sized();
    ~Sized() override;
    Sized(const Sized&) = delete;
    Sized& operator=(const Sized&) = delete;

    std::uint32_t classId() const override { return kClassId; }

    double width() const { return width_; }
    void setWidth(double value) { width_ = value; }

    double height() const { return height_; }
    void setHeight(double value) { height_ = value; }

    // <<adl:user-begin declarations hash=811c9dc5>>
    // <<adl:user-end declarations>>

private:
    friend struct SizedCnv;

    double width_{};
    double height_{};
};

} // namespace Shapes
