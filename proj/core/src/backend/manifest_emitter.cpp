#include "adl/backend/emit.hpp"
#include "adl/backend/manifest.hpp"

namespace adl::backend {

Outcome<FileSet> emit_manifest(const meta::MetaModel& model, const EmitterConfig& config)
{
    Outcome<FileSet> out;
    FileSet files;
    files.files.push_back({std::string(kManifestFileName), write_manifest(make_manifest(model))});
    if (config.scriptingShim) {
        files.files.push_back({std::string(kShimPath), std::string(shim_source())});
    }
    out.value = std::move(files);
    return out;
}

} // namespace adl::backend
