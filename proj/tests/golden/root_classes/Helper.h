// Generated from Helper. Edits outside the user regions are overwritten.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adl/support/objects.hpp"

// <<adl:user-begin includes hash=811c9dc5>>
// <<adl:user-end includes>>

class Helper {
public:
    static constexpr std::uint32_t kClassId = 0x6a61af4du;

    Helper();
    ~Helper();
    Helper(const Helper&) = default;
    Helper& operator=(const Helper&) = default;

    std::uint32_t classId() const { return kClassId; }

    double weight() const { return weight_; }
    void setWeight(double value) { weight_ = value; }

    // <<adl:user-begin declarations hash=811c9dc5>>
    // <<adl:user-end declarations>>

private:
    friend struct HelperCnv;

    double weight_{};
};

