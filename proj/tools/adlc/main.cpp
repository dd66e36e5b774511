// adlc: check ADL sources, run the back ends, and inspect ADD1 payloads.
//
// Exit status: 0 success, 1 diagnostics or a bad payload, 2 usage or I/O.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adl/backend/emit.hpp"
#include "adl/frontend/parser.hpp"
#include "adl/meta/model.hpp"
#include "adl/runtime/codec.hpp"
#include "adl/runtime/dictionary.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

struct IoError {
    std::string message;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError{path + ": cannot open for reading"};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        throw IoError{path + ": read failed"};
    }
    return ss.str();
}

void write_file(const fs::path& path, const std::string& contents)
{
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec) {
            throw IoError{path.parent_path().string() + ": " + ec.message()};
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw IoError{path.string() + ": write failed"};
    }
}

void report(const std::vector<adl::Diagnostic>& diags)
{
    for (const auto& d : diags) {
        std::cerr << adl::render(d) << "\n";
    }
}

/// Parses and resolves every input. Diagnostics go to standard error.
std::optional<adl::meta::MetaModel> compile(const std::vector<std::string>& inputs)
{
    std::vector<std::string> sources;
    for (const auto& path : inputs) {
        sources.push_back(read_file(path));
    }
    std::vector<adl::frontend::CompilationUnit> units;
    bool failed = false;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        auto parsed = adl::frontend::parse_source(sources[i], inputs[i]);
        report(parsed.diagnostics);
        if (!parsed.ok()) {
            failed = true;
            continue;
        }
        units.push_back(std::move(*parsed.value));
    }
    if (failed) {
        return std::nullopt;
    }
    auto built = adl::meta::build_model(units);
    report(built.diagnostics);
    if (!built.ok()) {
        return std::nullopt;
    }
    auto resolved = adl::meta::resolve(std::move(*built.value));
    report(resolved.diagnostics);
    if (!resolved.ok()) {
        return std::nullopt;
    }
    return std::move(*resolved.value);
}

int cmd_check(const std::vector<std::string>& inputs)
{
    return compile(inputs) ? kOk : kDomainError;
}

struct EmitOptions {
    std::vector<std::string> inputs;
    std::string out = "adl-out";
    std::string backends = "objects,converters,manifest";
    std::string format = "binary";
    std::string banner;
    bool noShim = false;
};

struct Planned {
    std::string backend;
    adl::backend::GeneratedFile file;
};

int cmd_emit(const EmitOptions& opt)
{
    std::set<std::string> selected;
    std::stringstream list(opt.backends);
    for (std::string b; std::getline(list, b, ',');) {
        if (b != "objects" && b != "converters" && b != "manifest") {
            std::cerr << "adlc: unknown back end '" << b
                      << "' (expected objects, converters, manifest)\n";
            return kUsageError;
        }
        selected.insert(b);
    }
    if (selected.empty()) {
        std::cerr << "adlc: --backends selects nothing\n";
        return kUsageError;
    }

    auto model = compile(opt.inputs);
    if (!model) {
        return kDomainError;
    }
    adl::backend::EmitterConfig config;
    config.outputRoot = opt.out;
    config.headerBanner = opt.banner;
    config.converterFormat = opt.format == "json" ? adl::backend::ConverterFormat::canonical_json
                                                  : adl::backend::ConverterFormat::self_describing_binary;
    config.scriptingShim = !opt.noShim;

    std::vector<Planned> plan;
    bool failed = false;
    auto run = [&](const std::string& name, adl::Outcome<adl::backend::FileSet> result) {
        report(result.diagnostics);
        if (!result.ok()) {
            failed = true;
            return;
        }
        for (auto& f : result.value->files) {
            plan.push_back({name, std::move(f)});
        }
    };
    if (selected.count("objects")) {
        run("objects", adl::backend::emit_dataobjects(*model, config));
    }
    if (selected.count("converters")) {
        run("converters", adl::backend::emit_converters(*model, config));
    }
    if (selected.count("manifest")) {
        run("manifest", adl::backend::emit_manifest(*model, config));
    }
    if (failed) {
        return kDomainError;
    }

    // Paths are compared case-folded so the tree also unpacks on case-insensitive file systems.
    std::map<std::string, const Planned*> owner;
    for (const auto& p : plan) {
        std::string folded = p.file.path;
        std::transform(folded.begin(), folded.end(), folded.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        auto [it, fresh] = owner.emplace(folded, &p);
        if (!fresh) {
            std::cerr << "adlc: output path collision: " << p.file.path << " (" << p.backend
                      << ") and " << it->second->file.path << " (" << it->second->backend << ")\n";
            failed = true;
        }
    }
    if (failed) {
        return kDomainError;
    }

    // Merge user regions before touching the disk, so a malformed file aborts the whole run.
    struct Write {
        fs::path path;
        std::string contents;
        bool changed;
    };
    std::vector<Write> writes;
    for (const auto& p : plan) {
        fs::path target = fs::path(opt.out) / p.file.path;
        std::string contents = p.file.contents;
        bool changed = true;
        if (fs::exists(target)) {
            std::string existing = read_file(target.string());
            try {
                auto merged = adl::backend::merge_user_regions(existing, contents);
                for (const auto& w : merged.warnings) {
                    std::cerr << target.string() << ": warning: " << w << "\n";
                }
                contents = std::move(merged.text);
            } catch (const std::invalid_argument& e) {
                std::cerr << target.string() << ": error: " << e.what() << "\n";
                failed = true;
                continue;
            }
            changed = existing != contents;
        }
        writes.push_back({target, std::move(contents), changed});
    }
    if (failed) {
        return kDomainError;
    }
    for (const auto& w : writes) {
        if (w.changed) {
            write_file(w.path, w.contents);
        }
        std::cout << (w.changed ? "wrote " : "unchanged ") << w.path.generic_string() << "\n";
    }
    return kOk;
}

int cmd_inspect(const std::string& path)
{
    std::string bytes = read_file(path);
    adl::runtime::PayloadSummary s;
    try {
        s = adl::runtime::describe_payload(bytes);
    } catch (const adl::wire::FormatError& e) {
        std::cerr << path << ": error: " << e.what() << "\n";
        return kDomainError;
    }
    std::cout << s.objectCount << (s.objectCount == 1 ? " object" : " objects") << ", "
              << s.classes.size() << (s.classes.size() == 1 ? " class" : " classes")
              << " (ADD1 version " << s.version << ")\n";
    for (const auto& c : s.classes) {
        char id[16];
        std::snprintf(id, sizeof id, "0x%08x", c.classId);
        std::cout << c.name << ": " << c.count << "\n";
        std::cout << "    classId " << id << ", " << c.category << "\n";
        if (!c.fields.empty()) {
            std::cout << "    fields:";
            for (std::size_t i = 0; i < c.fields.size(); ++i) {
                const auto& f = c.fields[i];
                std::cout << (i ? ", " : " ") << f.name << " " << f.type
                          << (f.persistent ? "" : " [transient]");
            }
            std::cout << "\n";
        }
        if (!c.links.empty()) {
            std::cout << "    links:";
            for (std::size_t i = 0; i < c.links.size(); ++i) {
                std::cout << (i ? ", " : " ") << c.links[i];
            }
            std::cout << "\n";
        }
    }
    return kOk;
}

int cmd_dump(const std::string& path)
{
    std::string bytes = read_file(path);
    try {
        std::cout << adl::runtime::dump_store(adl::runtime::deserialize(bytes));
    } catch (const std::exception& e) {
        std::cerr << path << ": error: " << e.what() << "\n";
        return kDomainError;
    }
    return kOk;
}

struct PackOptions {
    std::string manifest;
    std::string script;
    std::string out;
    bool privileged = false;
};

std::vector<std::string> split_words(const std::string& line, std::size_t maxWords)
{
    std::vector<std::string> words;
    std::size_t pos = 0;
    while (words.size() + 1 < maxWords) {
        pos = line.find_first_not_of(" \t", pos);
        if (pos == std::string::npos) {
            return words;
        }
        std::size_t end = line.find_first_of(" \t", pos);
        words.push_back(line.substr(pos, end - pos));
        if (end == std::string::npos) {
            return words;
        }
        pos = end;
    }
    pos = line.find_first_not_of(" \t", pos);
    if (pos != std::string::npos) {
        std::string rest = line.substr(pos);
        rest.erase(rest.find_last_not_of(" \t\r") + 1);
        words.push_back(rest);
    }
    return words;
}

const adl::wire::FieldSchema* field_at(const adl::wire::ClassSchema& s, const std::string& path)
{
    const std::vector<adl::wire::FieldSchema>* fields = &s.fields;
    const adl::wire::FieldSchema* found = nullptr;
    std::stringstream parts(path);
    for (std::string part; std::getline(parts, part, '.');) {
        found = nullptr;
        for (const auto& f : *fields) {
            if (f.name == part) {
                found = &f;
            }
        }
        if (!found) {
            return nullptr;
        }
        fields = &found->type.fields;
    }
    return found;
}

/// Script commands, one per line (`#` starts a comment):
///   new CLASS KEY | set KEY PATH VALUE | link KEY REL KEY | unlink KEY REL KEY | roots KEY...
int cmd_pack(const PackOptions& opt)
{
    auto service = adl::runtime::DictionaryService::load_manifest(read_file(opt.manifest));
    service.set_privileged(opt.privileged);
    adl::runtime::TransientStore store;
    std::optional<std::vector<std::string>> roots;

    std::istringstream script(read_file(opt.script));
    std::size_t lineNo = 0;
    for (std::string line; std::getline(script, line);) {
        ++lineNo;
        std::string trimmed = line.substr(0, line.find('#') == std::string::npos ? line.size()
                                                                                  : line.find('#'));
        if (line.find('"') != std::string::npos) {
            trimmed = line;  // '#' may sit inside a string literal
        }
        auto head = split_words(trimmed, 2);
        if (head.empty() || head[0][0] == '#') {
            continue;
        }
        try {
            const std::string& op = head[0];
            if (op == "new") {
                auto w = split_words(trimmed, 3);
                if (w.size() != 3) {
                    throw std::invalid_argument("usage: new CLASS KEY");
                }
                store.record(w[2], service.create_instance(w[1]));
            } else if (op == "set") {
                auto w = split_words(trimmed, 4);
                if (w.size() != 4) {
                    throw std::invalid_argument("usage: set KEY PATH VALUE");
                }
                auto obj = store.retrieve(w[1]);
                if (!obj) {
                    throw std::invalid_argument("no object '" + w[1] + "'");
                }
                const auto* field = field_at(obj->schema(), w[2]);
                if (!field) {
                    throw std::invalid_argument("unknown field '" + w[2] + "'");
                }
                service.set_field(*obj, w[2], adl::runtime::parse_value(w[3], field->type));
            } else if (op == "link" || op == "unlink") {
                auto w = split_words(trimmed, 5);
                if (w.size() != 4) {
                    throw std::invalid_argument("usage: " + op + " KEY REL KEY");
                }
                if (op == "link") {
                    store.link(w[1], w[2], w[3]);
                } else {
                    store.unlink(w[1], w[2], w[3]);
                }
            } else if (op == "roots") {
                roots = split_words(trimmed, 1u << 20);
                roots->erase(roots->begin());
            } else {
                throw std::invalid_argument("unknown command '" + op + "'");
            }
        } catch (const std::exception& e) {
            std::cerr << opt.script << ":" << lineNo << ": error: " << e.what() << "\n";
            return kDomainError;
        }
    }
    std::string bytes = adl::runtime::serialize(store, roots ? *roots : store.keys());
    write_file(opt.out, bytes);
    std::cout << "wrote " << opt.out << " (" << (roots ? roots->size() : store.size())
              << " roots, " << bytes.size() << " bytes)\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"ADL toolchain: check descriptions, generate code, inspect payloads"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "adlc 0.1.0");

    std::vector<std::string> checkInputs;
    auto* check = app.add_subcommand("check", "parse and resolve ADL sources");
    check->add_option("inputs", checkInputs, "ADL source files")->required();

    EmitOptions emit;
    auto* emitCmd = app.add_subcommand("emit", "run the selected back ends");
    emitCmd->add_option("inputs", emit.inputs, "ADL source files")->required();
    emitCmd->add_option("-o,--out", emit.out, "output root")->capture_default_str();
    emitCmd->add_option("-b,--backends", emit.backends, "comma-separated subset of objects,converters,manifest")
        ->capture_default_str();
    emitCmd->add_option("-f,--format", emit.format, "converter format")
        ->check(CLI::IsMember({"binary", "json"}))
        ->capture_default_str();
    emitCmd->add_option("--banner", emit.banner, "comment placed at the top of generated C++");
    emitCmd->add_flag("--no-shim", emit.noShim, "omit the scripting shim");

    std::string inspectPath;
    auto* inspect = app.add_subcommand("inspect", "summarize a payload without loading it");
    inspect->add_option("payload", inspectPath, "ADD1 payload")->required();

    std::string dumpPath;
    auto* dump = app.add_subcommand("dump", "print the canonical text dump of a payload");
    dump->add_option("payload", dumpPath, "ADD1 payload")->required();

    PackOptions pack;
    auto* packCmd = app.add_subcommand("pack", "build a payload from a manifest and a script");
    packCmd->add_option("-m,--manifest", pack.manifest, "reflection manifest")->required();
    packCmd->add_option("-s,--script", pack.script, "object script")->required();
    packCmd->add_option("-o,--out", pack.out, "payload to write")->required();
    packCmd->add_flag("--privileged", pack.privileged, "allow writes to private attributes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int status = app.exit(e);
        return status == 0 ? kOk : kUsageError;
    }

    try {
        if (*check) {
            return cmd_check(checkInputs);
        }
        if (*emitCmd) {
            return cmd_emit(emit);
        }
        if (*inspect) {
            return cmd_inspect(inspectPath);
        }
        if (*dump) {
            return cmd_dump(dumpPath);
        }
        if (*packCmd) {
            return cmd_pack(pack);
        }
    } catch (const IoError& e) {
        std::cerr << "adlc: " << e.message << "\n";
        return kUsageError;
    } catch (const adl::backend::ManifestError& e) {
        std::cerr << "adlc: " << e.what() << "\n";
        return kDomainError;
    } catch (const std::exception& e) {
        std::cerr << "adlc: " << e.what() << "\n";
        return kDomainError;
    }
    return kUsageError;
}
