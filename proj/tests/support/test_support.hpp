#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "adl/frontend/ast.hpp"
#include "adl/meta/model.hpp"
#include "adl/runtime/dictionary.hpp"
#include "adl/runtime/store.hpp"

namespace adltest {

namespace fs = std::filesystem;

fs::path source_dir();
fs::path corpus_dir();
fs::path golden_dir();
fs::path adlc_path();

/// Top-level `.adl` files of the corpus, sorted by name.
std::vector<fs::path> corpus_files();

std::string read_file(const fs::path& path);
void write_file(const fs::path& path, std::string_view contents);

/// parse + build_model + resolve over one or more in-memory sources, with the
/// diagnostics of every stage collected in order.
adl::Outcome<adl::meta::MetaModel> compile(const std::vector<std::string>& sources);
adl::Outcome<adl::meta::MetaModel> compile(const std::string& source);

/// Like compile(), but fails the current test when errors are reported.
adl::meta::MetaModel compile_ok(const std::string& source);

adl::meta::MetaModel compile_corpus_file(const std::string& name);

std::vector<adl::DiagCode> codes(const std::vector<adl::Diagnostic>& diags);
std::string render_all(const std::vector<adl::Diagnostic>& diags);

/// Independent FNV-1a reference, written without the library's constants.
std::uint32_t reference_fnv1a(std::string_view bytes);

/// A random but well-formed compilation unit.
adl::frontend::CompilationUnit random_unit(std::mt19937_64& rng);

/// Random ADL-looking text: token soup, truncations and raw bytes.
std::string fuzz_input(std::mt19937_64& rng);

/// A value of `type`; floats include infinities and NaNs now and then.
adl::runtime::DynamicValue random_value(const adl::wire::TypeSchema& type, std::mt19937_64& rng,
                                        int depth = 0);

adl::runtime::DictionaryService service_for(const adl::meta::MetaModel& model);

/// Creates `objects` random instances of the framework classes of `service`,
/// with random persistent and transient field values and random links.
adl::runtime::TransientStore random_store(const adl::runtime::DictionaryService& service,
                                          std::mt19937_64& rng, std::size_t objects,
                                          std::size_t links);

/// Keys reachable from `roots` through links, roots first, then breadth-first.
std::vector<std::string> closure(const adl::runtime::TransientStore& store,
                                 const std::vector<std::string>& roots);

/// Fresh directory under the system temp dir, removed on destruction.
class ScratchDir {
public:
    explicit ScratchDir(std::string_view tag);
    ~ScratchDir();
    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;

    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

struct CommandResult {
    int status = -1;
    std::string out;
    std::string err;
};

/// Runs `adlc` with `args` (already shell-quoted where needed).
CommandResult run_adlc(const std::string& args);

std::string shell_quote(const std::string& s);

/// `classes` chained data-object classes in module Syn, each with a few
/// attributes and a one/many relationship pair to its neighbour.
std::string synthetic_model(int classes);

/// A `pack` script creating one object per class of synthetic_model(classes),
/// linked along the chain, with the first object as the only root.
std::string synthetic_script(int classes);

} // namespace adltest
