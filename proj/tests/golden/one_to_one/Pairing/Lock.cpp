// Generated from Pairing::Lock. Edits outside the user regions are overwritten.
#include "Pairing/Lock.h"

#include "Pairing/Key.h"

// <<adl:user-begin includes hash=811c9dc5>>
// <<adl:user-end includes>>

namespace Pairing {

Lock::Lock() = default;

Lock::~Lock()
{
    setKey(nullptr);
}

void Lock::setKey(::Pairing::Key* target)
{
    if (key_ == target) {
        return;
    }
    if (key_) {
        key_->lock_ = nullptr;
    }
    if (target && target->lock_) {
        target->lock_->key_ = nullptr;
    }
    key_ = target;
    if (target) {
        target->lock_ = this;
    }
}

// <<adl:user-begin extensions hash=811c9dc5>>
// <<adl:user-end extensions>>

} // namespace Pairing
