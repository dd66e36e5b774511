// Generated from Chain::Base. Edits outside the user regions are overwritten.
#include "Chain/Base.h"

// <<adl:user-begin includes hash=811c9dc5>>
// <<adl:user-end includes>>

namespace Chain {

Base::Base() = default;

Base::~Base() = default;

// <<adl:user-begin extensions hash=811c9dc5>>
// <<adl:user-end extensions>>

} // namespace Chain
