#include "test_support.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "adl/backend/manifest.hpp"
#include "adl/frontend/lexer.hpp"
#include "adl/frontend/parser.hpp"

namespace adltest {

using namespace adl;
using frontend::CompilationUnit;
using frontend::TypeRef;

fs::path source_dir() { return ADL_SOURCE_DIR; }
fs::path corpus_dir() { return source_dir() / "tests" / "corpus"; }
fs::path golden_dir() { return source_dir() / "tests" / "golden"; }
fs::path adlc_path() { return ADLC_PATH; }

std::vector<fs::path> corpus_files()
{
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(corpus_dir())) {
        if (e.is_regular_file() && e.path().extension() == ".adl") {
            out.push_back(e.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, std::string_view contents)
{
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

Outcome<meta::MetaModel> compile(const std::vector<std::string>& sources)
{
    Outcome<meta::MetaModel> out;
    std::vector<CompilationUnit> units;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        auto parsed = frontend::parse_source(sources[i], "unit" + std::to_string(i) + ".adl");
        out.diagnostics.insert(out.diagnostics.end(), parsed.diagnostics.begin(),
                               parsed.diagnostics.end());
        if (!parsed.ok()) {
            return out;
        }
        units.push_back(std::move(*parsed.value));
    }
    auto built = meta::build_model(units);
    out.diagnostics.insert(out.diagnostics.end(), built.diagnostics.begin(),
                           built.diagnostics.end());
    if (!built.ok()) {
        return out;
    }
    auto resolved = meta::resolve(std::move(*built.value));
    out.diagnostics.insert(out.diagnostics.end(), resolved.diagnostics.begin(),
                           resolved.diagnostics.end());
    out.value = std::move(resolved.value);
    return out;
}

Outcome<meta::MetaModel> compile(const std::string& source)
{
    return compile(std::vector<std::string>{source});
}

meta::MetaModel compile_ok(const std::string& source)
{
    auto out = compile(source);
    EXPECT_TRUE(out.ok()) << render_all(out.diagnostics);
    if (!out.value) {
        return {};
    }
    return std::move(*out.value);
}

meta::MetaModel compile_corpus_file(const std::string& name)
{
    return compile_ok(read_file(corpus_dir() / name));
}

std::vector<DiagCode> codes(const std::vector<Diagnostic>& diags)
{
    std::vector<DiagCode> out;
    for (const auto& d : diags) {
        out.push_back(d.code);
    }
    return out;
}

std::string render_all(const std::vector<Diagnostic>& diags)
{
    std::string out;
    for (const auto& d : diags) {
        out += render(d) + "\n";
    }
    return out;
}

std::uint32_t reference_fnv1a(std::string_view bytes)
{
    // 2166136261 and 16777619, the published 32-bit parameters, in decimal.
    unsigned long long h = 2166136261ull;
    for (unsigned char c : bytes) {
        h = ((h ^ c) * 16777619ull) % 4294967296ull;
    }
    return static_cast<std::uint32_t>(h);
}

// ---------------------------------------------------------------------------
// Random units

namespace {

template <class T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng)
{
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

int roll(std::mt19937_64& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(std::mt19937_64& rng, double p)
{
    return std::bernoulli_distribution(p)(rng);
}

std::string identifier(std::mt19937_64& rng)
{
    static const std::string head = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz_";
    static const std::string tail = head + "0123456789";
    while (true) {
        std::string s(1, head[static_cast<std::size_t>(roll(rng, 0, int(head.size()) - 1))]);
        int n = roll(rng, 0, 7);
        for (int i = 0; i < n; ++i) {
            s += tail[static_cast<std::size_t>(roll(rng, 0, int(tail.size()) - 1))];
        }
        if (!frontend::is_reserved(s)) {
            return s;
        }
    }
}

std::string scoped_name(std::mt19937_64& rng)
{
    std::string s = identifier(rng);
    int extra = roll(rng, 0, 2);
    for (int i = 0; i < extra; ++i) {
        s += "::" + identifier(rng);
    }
    return s;
}

TypeRef random_type(std::mt19937_64& rng, int depth = 0)
{
    int k = roll(rng, 0, 9);
    if (k < 6 || depth >= 3) {
        if (chance(rng, 0.3) && depth < 3) {
            return TypeRef::make_named(scoped_name(rng));
        }
        return TypeRef::make_primitive(static_cast<Primitive>(roll(rng, 0, 7)));
    }
    if (k < 8) {
        return TypeRef::make_named(scoped_name(rng));
    }
    return TypeRef::make_sequence(random_type(rng, depth + 1));
}

frontend::ClassDecl random_class(std::mt19937_64& rng)
{
    frontend::ClassDecl c;
    c.name = identifier(rng);
    c.category = static_cast<Category>(roll(rng, 0, 3));
    int bases = roll(rng, 0, 2);
    for (int i = 0; i < bases; ++i) {
        c.bases.push_back(scoped_name(rng));
    }
    int members = roll(rng, 0, 6);
    for (int i = 0; i < members; ++i) {
        switch (roll(rng, 0, 2)) {
        case 0: {
            frontend::AttributeDecl a;
            a.type = random_type(rng);
            a.name = identifier(rng);
            a.visibility = chance(rng, 0.3) ? Visibility::private_ : Visibility::public_;
            a.persistent = chance(rng, 0.6);
            c.members.emplace_back(std::move(a));
            break;
        }
        case 1: {
            frontend::RelationshipDecl r;
            r.cardinality = chance(rng, 0.5) ? Cardinality::one : Cardinality::many;
            r.target = scoped_name(rng);
            r.name = identifier(rng);
            r.inverse = scoped_name(rng) + "::" + identifier(rng);
            c.members.emplace_back(std::move(r));
            break;
        }
        default: {
            frontend::MethodDecl m;
            m.returnType = chance(rng, 0.3) ? TypeRef::make_void() : random_type(rng);
            m.name = identifier(rng);
            int params = roll(rng, 0, 3);
            for (int p = 0; p < params; ++p) {
                m.params.push_back(frontend::Param{random_type(rng), identifier(rng), {}});
            }
            m.isConst = chance(rng, 0.5);
            c.members.emplace_back(std::move(m));
            break;
        }
        }
    }
    return c;
}

frontend::Decl random_decl(std::mt19937_64& rng, int depth)
{
    int k = roll(rng, 0, 9);
    if (k < 2 && depth < 3) {
        frontend::ModuleDecl m;
        m.name = identifier(rng);
        int n = roll(rng, 0, 4);
        for (int i = 0; i < n; ++i) {
            m.members.push_back(random_decl(rng, depth + 1));
        }
        return frontend::Decl{std::move(m)};
    }
    if (k < 6) {
        return frontend::Decl{random_class(rng)};
    }
    if (k < 7) {
        return frontend::Decl{frontend::ExternDecl{identifier(rng), {}}};
    }
    if (k < 8) {
        frontend::EnumDecl e;
        e.name = identifier(rng);
        int n = roll(rng, 1, 5);
        for (int i = 0; i < n; ++i) {
            e.enumerators.push_back(frontend::Enumerator{identifier(rng), {}});
        }
        return frontend::Decl{std::move(e)};
    }
    return frontend::Decl{frontend::TypedefDecl{identifier(rng), random_type(rng), {}}};
}

} // namespace

CompilationUnit random_unit(std::mt19937_64& rng)
{
    CompilationUnit u;
    int n = roll(rng, 0, 5);
    for (int i = 0; i < n; ++i) {
        u.decls.push_back(random_decl(rng, 0));
    }
    return u;
}

std::string fuzz_input(std::mt19937_64& rng)
{
    static const std::vector<std::string> pieces = {
        "module", "class", "extern", "enum", "typedef", "relationship", "one", "many",
        "inverse", "persistent", "private", "DataObject", "ContainedObject", "CollectionObject",
        "sequence", "long", "double", "string", "void", "const", "union", "any", "in", "out",
        "raises", "Track", "Evt", "x", "{", "}", "(", ")", "<", ">", ";", ":", "::", ",", "=",
        "\"str", "\"ok\"", "12", "3.5e", "0x", "/*", "*/", "//", "\n", " ", "\t", "@", "\\",
        "\xff", "\xc3\xa9", std::string(1, '\0'),
    };
    std::string s;
    switch (roll(rng, 0, 3)) {
    case 0: {
        int n = roll(rng, 0, 200);
        for (int i = 0; i < n; ++i) {
            s += static_cast<char>(roll(rng, 0, 255));
        }
        break;
    }
    case 1: {
        int n = roll(rng, 0, 80);
        for (int i = 0; i < n; ++i) {
            s += pick(pieces, rng);
            if (chance(rng, 0.7)) {
                s += ' ';
            }
        }
        break;
    }
    default: {
        // mutate a valid unit
        s = frontend::pretty_print(random_unit(rng));
        int edits = roll(rng, 1, 6);
        for (int i = 0; i < edits && !s.empty(); ++i) {
            auto pos = static_cast<std::size_t>(roll(rng, 0, int(s.size()) - 1));
            switch (roll(rng, 0, 2)) {
            case 0: s.erase(pos, static_cast<std::size_t>(roll(rng, 1, 10))); break;
            case 1: s.insert(pos, pick(pieces, rng)); break;
            default: s.resize(pos); break;
            }
        }
        break;
    }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Random values and stores

using runtime::DynamicValue;

DynamicValue random_value(const wire::TypeSchema& type, std::mt19937_64& rng, int depth)
{
    auto special = [&](auto normal) {
        using F = decltype(normal);
        switch (roll(rng, 0, 19)) {
        case 0: return std::numeric_limits<F>::infinity();
        case 1: return -std::numeric_limits<F>::infinity();
        case 2: return std::numeric_limits<F>::quiet_NaN();
        case 3: return F(-0.0);
        default: return normal;
        }
    };
    switch (type.tag) {
    case wire::Tag::boolean: return DynamicValue::boolean(chance(rng, 0.5));
    case wire::Tag::octet: return DynamicValue::octet(static_cast<std::uint8_t>(roll(rng, 0, 255)));
    case wire::Tag::short_:
        return DynamicValue::i16(static_cast<std::int16_t>(roll(rng, -32768, 32767)));
    case wire::Tag::long_:
        return DynamicValue::i32(static_cast<std::int32_t>(rng()));
    case wire::Tag::long_long: return DynamicValue::i64(static_cast<std::int64_t>(rng()));
    case wire::Tag::float_:
        return DynamicValue::f32(
            special(std::uniform_real_distribution<float>(-1e6f, 1e6f)(rng)));
    case wire::Tag::double_:
        return DynamicValue::f64(
            special(std::uniform_real_distribution<double>(-1e12, 1e12)(rng)));
    case wire::Tag::string: {
        std::string s;
        int n = roll(rng, 0, 12);
        for (int i = 0; i < n; ++i) {
            s += static_cast<char>(roll(rng, 0, 255));
        }
        return DynamicValue::str(std::move(s));
    }
    case wire::Tag::sequence: {
        runtime::Sequence seq;
        int n = depth > 2 ? 0 : roll(rng, 0, 3);
        for (int i = 0; i < n; ++i) {
            seq.push_back(random_value(*type.element, rng, depth + 1));
        }
        return DynamicValue::sequence(std::move(seq));
    }
    case wire::Tag::enumeration: {
        auto ord = static_cast<std::uint32_t>(roll(rng, 0, int(type.enumerators.size()) - 1));
        return DynamicValue::enumeration(runtime::EnumValue{type.name, ord, type.enumerators[ord]});
    }
    case wire::Tag::structure: {
        runtime::StructValue sv;
        sv.type = type.name;
        for (const auto& f : type.fields) {
            sv.members.emplace_back(f.name, random_value(f.type, rng, depth + 1));
        }
        return DynamicValue::structure(std::move(sv));
    }
    case wire::Tag::opaque: {
        support::Opaque o;
        int n = roll(rng, 0, 9);
        for (int i = 0; i < n; ++i) {
            o.bytes.push_back(static_cast<std::uint8_t>(roll(rng, 0, 255)));
        }
        return DynamicValue::opaque(std::move(o));
    }
    }
    return {};
}

runtime::DictionaryService service_for(const meta::MetaModel& model)
{
    return runtime::DictionaryService::from_manifest(backend::make_manifest(model));
}

runtime::TransientStore random_store(const runtime::DictionaryService& service,
                                     std::mt19937_64& rng, std::size_t objects, std::size_t links)
{
    std::vector<std::string> classes;
    for (const auto& c : service.manifest().classes) {
        if (c.category != "extern" && c.category != "plain") {
            classes.push_back(c.qualifiedName);
        }
    }
    runtime::TransientStore store;
    if (classes.empty()) {
        return store;
    }
    for (std::size_t i = 0; i < objects; ++i) {
        auto obj = service.create_instance(pick(classes, rng));
        for (const auto& f : obj->schema().fields) {
            obj->set(f.name, random_value(f.type, rng), runtime::DynamicObject::Access::privileged);
        }
        store.record("obj/" + std::to_string(i), std::move(obj));
    }
    const auto& keys = store.keys();
    for (std::size_t i = 0; i < links && !keys.empty(); ++i) {
        const auto& a = pick(keys, rng);
        auto obj = store.retrieve(a);
        const auto& rels = obj->schema().links;
        if (rels.empty()) {
            continue;
        }
        const auto& rel = pick(rels, rng);
        std::vector<std::string> candidates;
        for (const auto& k : keys) {
            if (store.retrieve(k)->schema().is_kind_of(rel.target)) {
                candidates.push_back(k);
            }
        }
        if (!candidates.empty()) {
            store.link(a, rel.name, pick(candidates, rng));
        }
    }
    return store;
}

std::vector<std::string> closure(const runtime::TransientStore& store,
                                 const std::vector<std::string>& roots)
{
    std::vector<std::string> order;
    std::set<std::string> seen;
    std::deque<std::string> queue;
    for (const auto& r : roots) {
        if (seen.insert(r).second) {
            order.push_back(r);
            queue.push_back(r);
        }
    }
    while (!queue.empty()) {
        auto obj = store.retrieve(queue.front());
        queue.pop_front();
        for (const auto& rel : obj->schema().links) {
            for (const auto& k : obj->links(rel.name)) {
                if (seen.insert(k).second) {
                    order.push_back(k);
                    queue.push_back(k);
                }
            }
        }
    }
    return order;
}

// ---------------------------------------------------------------------------
// Processes and directories

ScratchDir::ScratchDir(std::string_view tag)
{
    static std::mt19937_64 rng{std::random_device{}()};
    path_ = fs::temp_directory_path() /
            ("adl-" + std::string(tag) + "-" + std::to_string(rng() % 1000000000));
    fs::create_directories(path_);
}

ScratchDir::~ScratchDir()
{
    std::error_code ec;
    fs::remove_all(path_, ec);
}

std::string shell_quote(const std::string& s)
{
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out += c;
        }
    }
    return out + "'";
}

CommandResult run_adlc(const std::string& args)
{
    ScratchDir tmp("run");
    fs::path out = tmp.path() / "stdout";
    fs::path err = tmp.path() / "stderr";
    std::string cmd = shell_quote(adlc_path().string()) + " " + args + " >" +
                      shell_quote(out.string()) + " 2>" + shell_quote(err.string());
    int raw = std::system(cmd.c_str());
    CommandResult r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = read_file(out);
    r.err = read_file(err);
    return r;
}

std::string synthetic_model(int classes)
{
    std::string out = "module Syn {\n    enum Mode { idle, busy };\n\n";
    out += "    class Stamp {\n        long tick;\n        double weight;\n    };\n\n";
    for (int i = 0; i < classes; ++i) {
        auto name = "C" + std::to_string(i);
        out += "    class " + name + " : DataObject {\n";
        out += "        persistent long id;\n";
        out += "        persistent double value;\n";
        out += "        persistent string label;\n";
        out += "        persistent Mode mode;\n";
        out += "        persistent Stamp stamp;\n";
        out += "        persistent sequence<float> samples;\n";
        out += "        double scratch;\n";
        if (i + 1 < classes) {
            out += "        relationship one C" + std::to_string(i + 1) + " next inverse C" +
                   std::to_string(i + 1) + "::prev;\n";
        }
        if (i > 0) {
            out += "        relationship many C" + std::to_string(i - 1) + " prev inverse C" +
                   std::to_string(i - 1) + "::next;\n";
        }
        out += "        double score(long k) const;\n";
        out += "    };\n\n";
    }
    out += "};\n";
    return out;
}

std::string synthetic_script(int classes)
{
    std::string out;
    for (int i = 0; i < classes; ++i) {
        auto key = "o" + std::to_string(i);
        out += "new Syn::C" + std::to_string(i) + " " + key + "\n";
        out += "set " + key + " id " + std::to_string(i) + "\n";
        out += "set " + key + " label \"object " + std::to_string(i) + "\"\n";
        out += "set " + key + " mode busy\n";
    }
    for (int i = 0; i + 1 < classes; ++i) {
        out += "link o" + std::to_string(i) + " next o" + std::to_string(i + 1) + "\n";
    }
    out += "roots o0\n";
    return out;
}

} // namespace adltest
