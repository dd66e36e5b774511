#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "adl/frontend/diagnostic.hpp"
#include "adl/meta/model.hpp"

namespace adl::backend {

struct GeneratedFile {
    std::string path;  // relative, '/'-separated
    std::string contents;

    friend bool operator==(const GeneratedFile&, const GeneratedFile&) = default;
};

/// Output of one back end, in emission order.
struct FileSet {
    std::vector<GeneratedFile> files;

    const GeneratedFile* find(std::string_view path) const;
    friend bool operator==(const FileSet&, const FileSet&) = default;
};

enum class ConverterFormat { self_describing_binary, canonical_json };

std::string_view format_name(ConverterFormat f);

struct EmitterConfig {
    std::string outputRoot = ".";
    std::string headerBanner;  // copied as `//` comment lines at the top of C++ sources
    ConverterFormat converterFormat = ConverterFormat::self_describing_binary;
    bool scriptingShim = true;
};

inline constexpr std::string_view kLayoutFileName = "converters.layout.json";
inline constexpr std::string_view kShimPath = "shim/adl_shim.py";

/// One header and one implementation file per non-extern class, plus one
/// `enums.h` per module declaring enums. Reports emit.collision errors for
/// generated names that clash with declared methods or C++ keywords.
Outcome<FileSet> emit_dataobjects(const meta::MetaModel& model, const EmitterConfig& config);

/// One `<Class>Cnv.h` per non-extern class and the wire layout sidecar.
/// Warns (emit.empty-payload) for a DataObject without persistent state.
Outcome<FileSet> emit_converters(const meta::MetaModel& model, const EmitterConfig& config);

/// `reflection.manifest.json` and, when enabled, the scripting shim.
Outcome<FileSet> emit_manifest(const meta::MetaModel& model, const EmitterConfig& config);

/// Source text of the scripting shim module.
std::string_view shim_source();

// ---------------------------------------------------------------------------
// User-extension regions
//
//   // <<adl:user-begin NAME hash=XXXXXXXX>>
//   ...
//   // <<adl:user-end NAME>>
//
// The hash is FNV-1a over the region body as the generator wrote it. A body
// whose hash no longer matches was edited by hand.

struct UserRegion {
    std::string name;
    std::uint32_t hash = 0;
    std::string body;  // lines between the markers, each with its '\n'
};

struct MergeResult {
    std::string text;
    std::vector<std::string> warnings;  // edited regions that no longer exist
};

/// Markers of one file, in order. Throws std::invalid_argument when markers
/// are unbalanced, nested, renamed or repeated.
std::vector<UserRegion> scan_user_regions(std::string_view text);

/// Region markers wrapping `body` (which must end in '\n' unless empty).
std::string user_region(std::string_view name, std::string_view body, std::string_view indent = "");

/// Carries the edited regions of `existing` into `generated`. A file without
/// markers is replaced wholesale. Throws std::invalid_argument for malformed
/// markers in either text.
MergeResult merge_user_regions(std::string_view existing, std::string_view generated);

} // namespace adl::backend
