// Generated from Helper. Edits outside the user regions are overwritten.
#include "Helper.h"

// <<adl:user-begin includes hash=811c9dc5>>
// <<adl:user-end includes>>

Helper::Helper() = default;

Helper::~Helper() = default;

// <<adl:user-begin extensions hash=811c9dc5>>
// <<adl:user-end extensions>>

