// Generated from Det::Hit. Edits outside the user regions are overwritten.
#include "Det/Hit.h"

#include "Det/Cluster.h"

// <<adl:user-begin includes hash=811c9dc5>>
// <<adl:user-end includes>>

namespace Det {

Hit::Hit() = default;

Hit::~Hit()
{
    setCluster(nullptr);
}

void Hit::setCluster(::Det::Cluster* target)
{
    if (cluster_ == target) {
        return;
    }
    if (cluster_) {
        adl::support::erase_link(cluster_->hits_, this);
    }
    cluster_ = target;
    if (target) {
        target->hits_.push_back(this);
    }
}

// <<adl:user-begin extensions hash=811c9dc5>>
// <<adl:user-end extensions>>

} // namespace Det
