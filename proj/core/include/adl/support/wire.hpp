#pragma once

// The self-describing payload format ("ADD1") and the writer/reader plumbing
// shared by the runtime codec and by generated converters. Header-only so that
// generated sources can use it without linking the toolchain library.
//
// Layout (all integers little-endian):
//
//   "ADD1"  u16 version  u16 flags
//   u32 classCount   { class schema } * classCount
//   u32 objectCount  { u32 classId, string key, u32 bodyLength, body } * objectCount
//
// A body holds the persistent field values in schema order followed by the
// links in schema order. docs/format.md has the full description.

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "adl/support/objects.hpp"

namespace adl::wire {

inline constexpr std::string_view kMagic = "ADD1";
inline constexpr std::uint16_t kFormatVersion = 1;
inline constexpr std::uint32_t kNoLink = 0xffffffffu;
inline constexpr int kMaxTypeDepth = 64;
inline constexpr std::uint32_t kMaxCount = 1u << 26;

class FormatError : public std::runtime_error {
public:
    enum class Kind {
        bad_magic,
        truncated_header,
        truncated_table,
        malformed,
        unsupported_version,
        schema_mismatch,
        unknown_class,
        unregistered_object,
    };

    FormatError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

enum class Tag : std::uint8_t {
    boolean = 0,
    octet = 1,
    short_ = 2,
    long_ = 3,
    long_long = 4,
    float_ = 5,
    double_ = 6,
    string = 7,
    sequence = 8,
    enumeration = 9,
    structure = 10,
    opaque = 11,
};

enum class ClassCategory : std::uint8_t {
    plain = 0,
    data_object = 1,
    contained_object = 2,
    collection_object = 3,
    extern_type = 4,
};

inline constexpr std::uint8_t kFieldPersistent = 0x01;
inline constexpr std::uint8_t kFieldPrivate = 0x02;

struct FieldSchema;

struct TypeSchema {
    Tag tag = Tag::long_;
    std::string name;                      // enumeration / structure / opaque
    std::vector<std::string> enumerators;  // enumeration
    std::shared_ptr<const TypeSchema> element;  // sequence
    std::vector<FieldSchema> fields;       // structure, every attribute in order

    static TypeSchema primitive(Tag tag)
    {
        TypeSchema t;
        t.tag = tag;
        return t;
    }
    static TypeSchema sequence_of(TypeSchema element)
    {
        TypeSchema t;
        t.tag = Tag::sequence;
        t.element = std::make_shared<const TypeSchema>(std::move(element));
        return t;
    }
    static TypeSchema enumeration_of(std::string name, std::vector<std::string> enumerators)
    {
        TypeSchema t;
        t.tag = Tag::enumeration;
        t.name = std::move(name);
        t.enumerators = std::move(enumerators);
        return t;
    }
    static TypeSchema opaque_of(std::string name)
    {
        TypeSchema t;
        t.tag = Tag::opaque;
        t.name = std::move(name);
        return t;
    }
    static TypeSchema structure_of(std::string name, std::vector<FieldSchema> fields);
};

struct FieldSchema {
    std::string name;
    bool persistent = false;
    bool isPrivate = false;
    TypeSchema type;
};

inline TypeSchema TypeSchema::structure_of(std::string name, std::vector<FieldSchema> fields)
{
    TypeSchema t;
    t.tag = Tag::structure;
    t.name = std::move(name);
    t.fields = std::move(fields);
    return t;
}

inline bool operator==(const TypeSchema& a, const TypeSchema& b);

inline bool operator==(const FieldSchema& a, const FieldSchema& b)
{
    return a.name == b.name && a.persistent == b.persistent && a.isPrivate == b.isPrivate &&
           a.type == b.type;
}

inline bool operator==(const TypeSchema& a, const TypeSchema& b)
{
    if (a.tag != b.tag || a.name != b.name || a.enumerators != b.enumerators ||
        a.fields != b.fields || static_cast<bool>(a.element) != static_cast<bool>(b.element)) {
        return false;
    }
    return !a.element || *a.element == *b.element;
}

struct LinkSchema {
    std::string name;
    bool many = false;
    std::string target;   // qualified class name
    std::string inverse;  // relationship name on the target

    friend bool operator==(const LinkSchema&, const LinkSchema&) = default;
};

struct ClassSchema {
    std::uint32_t classId = 0;
    std::string name;
    ClassCategory category = ClassCategory::plain;
    std::vector<std::string> ancestors;  // linearized, bases first, without the class itself
    std::vector<FieldSchema> fields;     // every attribute, persistent or not
    std::vector<LinkSchema> links;

    bool is_kind_of(std::string_view qualifiedName) const
    {
        return name == qualifiedName ||
               std::find(ancestors.begin(), ancestors.end(), qualifiedName) != ancestors.end();
    }

    friend bool operator==(const ClassSchema&, const ClassSchema&) = default;
};

// ---------------------------------------------------------------------------
// Byte-level encoding

class Encoder {
public:
    explicit Encoder(std::string& out) : out_(out) {}

    void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
    void u16(std::uint16_t v) { put_le(v, 2); }
    void u32(std::uint32_t v) { put_le(v, 4); }
    void u64(std::uint64_t v) { put_le(v, 8); }

    void boolean(bool v) { u8(v ? 1 : 0); }
    void octet(std::uint8_t v) { u8(v); }
    void i16(std::int16_t v) { u16(static_cast<std::uint16_t>(v)); }
    void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
    void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
    void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void count(std::size_t n)
    {
        if (n > kMaxCount) {
            throw FormatError(FormatError::Kind::malformed, "count exceeds format limit");
        }
        u32(static_cast<std::uint32_t>(n));
    }
    void str(std::string_view s)
    {
        count(s.size());
        out_.append(s);
    }
    void bytes(const std::vector<std::uint8_t>& b)
    {
        count(b.size());
        out_.append(reinterpret_cast<const char*>(b.data()), b.size());
    }
    void raw(std::string_view s) { out_.append(s); }

    std::size_t size() const { return out_.size(); }

private:
    void put_le(std::uint64_t v, int width)
    {
        for (int i = 0; i < width; ++i) {
            out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
        }
    }

    std::string& out_;
};

class Decoder {
public:
    explicit Decoder(std::string_view in,
                     FormatError::Kind truncation = FormatError::Kind::truncated_table)
        : in_(in), truncation_(truncation)
    {
    }

    void set_truncation(FormatError::Kind kind) { truncation_ = kind; }

    std::uint8_t u8() { return static_cast<std::uint8_t>(get_le(1)); }
    std::uint16_t u16() { return static_cast<std::uint16_t>(get_le(2)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(get_le(4)); }
    std::uint64_t u64() { return get_le(8); }

    bool boolean()
    {
        auto v = u8();
        if (v > 1) {
            throw FormatError(FormatError::Kind::malformed, "boolean byte out of range");
        }
        return v == 1;
    }
    std::uint8_t octet() { return u8(); }
    std::int16_t i16() { return static_cast<std::int16_t>(u16()); }
    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
    float f32() { return std::bit_cast<float>(u32()); }
    double f64() { return std::bit_cast<double>(u64()); }

    /// Element count; `minElementSize` bounds it by the bytes left.
    std::uint32_t count(std::size_t minElementSize = 1)
    {
        std::uint32_t n = u32();
        if (n > kMaxCount) {
            throw FormatError(FormatError::Kind::malformed, "count exceeds format limit");
        }
        if (minElementSize > 0 && n > remaining() / minElementSize) {
            fail_truncated();
        }
        return n;
    }
    std::string str()
    {
        std::uint32_t n = count(1);
        return std::string(take(n));
    }
    std::vector<std::uint8_t> bytes()
    {
        std::uint32_t n = count(1);
        auto view = take(n);
        return std::vector<std::uint8_t>(view.begin(), view.end());
    }
    std::uint32_t enumeration(std::size_t limit)
    {
        std::uint32_t v = u32();
        if (v >= limit) {
            throw FormatError(FormatError::Kind::malformed, "enumerator ordinal out of range");
        }
        return v;
    }

    std::string_view take(std::size_t n)
    {
        need(n);
        auto view = in_.substr(pos_, n);
        pos_ += n;
        return view;
    }

    std::size_t remaining() const { return in_.size() - pos_; }
    std::size_t position() const { return pos_; }
    bool at_end() const { return pos_ == in_.size(); }

private:
    [[noreturn]] void fail_truncated() const
    {
        throw FormatError(truncation_, truncation_ == FormatError::Kind::truncated_header
                                           ? "truncated header"
                                           : "truncated object table");
    }

    void need(std::size_t n) const
    {
        if (remaining() < n) {
            fail_truncated();
        }
    }

    std::uint64_t get_le(int width)
    {
        need(static_cast<std::size_t>(width));
        std::uint64_t v = 0;
        for (int i = 0; i < width; ++i) {
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in_[pos_ + i])) << (8 * i);
        }
        pos_ += static_cast<std::size_t>(width);
        return v;
    }

    std::string_view in_;
    std::size_t pos_ = 0;
    FormatError::Kind truncation_;
};

// ---------------------------------------------------------------------------
// Schema encoding

inline void write_field(Encoder& enc, const FieldSchema& field);

inline void write_type(Encoder& enc, const TypeSchema& type)
{
    enc.u8(static_cast<std::uint8_t>(type.tag));
    switch (type.tag) {
    case Tag::sequence: write_type(enc, *type.element); break;
    case Tag::enumeration:
        enc.str(type.name);
        enc.count(type.enumerators.size());
        for (const auto& e : type.enumerators) {
            enc.str(e);
        }
        break;
    case Tag::structure:
        enc.str(type.name);
        enc.count(type.fields.size());
        for (const auto& f : type.fields) {
            write_field(enc, f);
        }
        break;
    case Tag::opaque: enc.str(type.name); break;
    default: break;
    }
}

inline void write_field(Encoder& enc, const FieldSchema& field)
{
    enc.str(field.name);
    enc.u8(static_cast<std::uint8_t>((field.persistent ? kFieldPersistent : 0) |
                                     (field.isPrivate ? kFieldPrivate : 0)));
    write_type(enc, field.type);
}

inline void write_class(Encoder& enc, const ClassSchema& cls)
{
    enc.u32(cls.classId);
    enc.str(cls.name);
    enc.u8(static_cast<std::uint8_t>(cls.category));
    enc.count(cls.ancestors.size());
    for (const auto& a : cls.ancestors) {
        enc.str(a);
    }
    enc.count(cls.fields.size());
    for (const auto& f : cls.fields) {
        write_field(enc, f);
    }
    enc.count(cls.links.size());
    for (const auto& l : cls.links) {
        enc.str(l.name);
        enc.u8(l.many ? 1 : 0);
        enc.str(l.target);
        enc.str(l.inverse);
    }
}

inline FieldSchema read_field(Decoder& dec, int depth);

inline TypeSchema read_type(Decoder& dec, int depth = 0)
{
    if (depth > kMaxTypeDepth) {
        throw FormatError(FormatError::Kind::malformed, "type descriptor nested too deeply");
    }
    TypeSchema t;
    std::uint8_t tag = dec.u8();
    if (tag > static_cast<std::uint8_t>(Tag::opaque)) {
        throw FormatError(FormatError::Kind::malformed, "unknown type tag");
    }
    t.tag = static_cast<Tag>(tag);
    switch (t.tag) {
    case Tag::sequence: t.element = std::make_shared<const TypeSchema>(read_type(dec, depth + 1)); break;
    case Tag::enumeration: {
        t.name = dec.str();
        std::uint32_t n = dec.count(4);
        if (n == 0) {
            throw FormatError(FormatError::Kind::malformed, "enumeration without enumerators");
        }
        for (std::uint32_t i = 0; i < n; ++i) {
            t.enumerators.push_back(dec.str());
        }
        break;
    }
    case Tag::structure: {
        t.name = dec.str();
        std::uint32_t n = dec.count(6);
        for (std::uint32_t i = 0; i < n; ++i) {
            t.fields.push_back(read_field(dec, depth + 1));
        }
        break;
    }
    case Tag::opaque: t.name = dec.str(); break;
    default: break;
    }
    return t;
}

inline FieldSchema read_field(Decoder& dec, int depth)
{
    FieldSchema f;
    f.name = dec.str();
    std::uint8_t flags = dec.u8();
    if (flags & ~(kFieldPersistent | kFieldPrivate)) {
        throw FormatError(FormatError::Kind::malformed, "unknown field flags");
    }
    f.persistent = flags & kFieldPersistent;
    f.isPrivate = flags & kFieldPrivate;
    f.type = read_type(dec, depth);
    return f;
}

inline ClassSchema read_class(Decoder& dec)
{
    ClassSchema c;
    c.classId = dec.u32();
    c.name = dec.str();
    std::uint8_t cat = dec.u8();
    if (cat > static_cast<std::uint8_t>(ClassCategory::extern_type)) {
        throw FormatError(FormatError::Kind::malformed, "unknown class category");
    }
    c.category = static_cast<ClassCategory>(cat);
    std::uint32_t n = dec.count(4);
    for (std::uint32_t i = 0; i < n; ++i) {
        c.ancestors.push_back(dec.str());
    }
    n = dec.count(6);
    for (std::uint32_t i = 0; i < n; ++i) {
        c.fields.push_back(read_field(dec, 0));
    }
    n = dec.count(13);
    for (std::uint32_t i = 0; i < n; ++i) {
        LinkSchema l;
        l.name = dec.str();
        std::uint8_t many = dec.u8();
        if (many > 1) {
            throw FormatError(FormatError::Kind::malformed, "unknown link cardinality");
        }
        l.many = many == 1;
        l.target = dec.str();
        l.inverse = dec.str();
        c.links.push_back(std::move(l));
    }
    return c;
}

/// Smallest number of bytes one value of `type` occupies on the wire.
inline std::size_t min_wire_size(const TypeSchema& type)
{
    switch (type.tag) {
    case Tag::boolean:
    case Tag::octet: return 1;
    case Tag::short_: return 2;
    case Tag::long_:
    case Tag::float_: return 4;
    case Tag::long_long:
    case Tag::double_: return 8;
    case Tag::string:
    case Tag::sequence:
    case Tag::enumeration:
    case Tag::opaque: return 4;
    case Tag::structure: {
        std::size_t n = 0;
        for (const auto& f : type.fields) {
            n += min_wire_size(f.type);
        }
        return n;
    }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Payload framing

struct ObjectRecord {
    std::uint32_t classId = 0;
    std::string key;
    std::string body;
};

/// Writes header + object table. `schemas` lists each class present once, in
/// order of first appearance in `objects`.
inline std::string assemble_payload(const std::vector<const ClassSchema*>& schemas,
                                    const std::vector<ObjectRecord>& objects)
{
    std::string out;
    Encoder enc(out);
    enc.raw(kMagic);
    enc.u16(kFormatVersion);
    enc.u16(0);
    enc.count(schemas.size());
    for (const ClassSchema* s : schemas) {
        write_class(enc, *s);
    }
    enc.count(objects.size());
    for (const auto& o : objects) {
        enc.u32(o.classId);
        enc.str(o.key);
        enc.count(o.body.size());
        enc.raw(o.body);
    }
    return out;
}

struct ObjectView {
    std::uint32_t classId = 0;
    std::string key;
    std::string_view body;
    std::size_t schemaIndex = 0;
};

struct PayloadView {
    std::uint16_t version = 0;
    std::vector<ClassSchema> schemas;
    std::vector<ObjectView> objects;
};

/// Validates magic and version and decodes the embedded schemas, leaving the
/// decoder positioned at the object count.
inline std::vector<ClassSchema> read_header(Decoder& dec, std::string_view bytes,
                                            std::uint16_t* versionOut = nullptr)
{
    std::size_t probe = std::min(bytes.size(), kMagic.size());
    if (bytes.substr(0, probe) != kMagic.substr(0, probe)) {
        throw FormatError(FormatError::Kind::bad_magic, "bad magic: not an ADD1 payload");
    }
    dec.set_truncation(FormatError::Kind::truncated_header);
    dec.take(kMagic.size());
    std::uint16_t version = dec.u16();
    if (version != kFormatVersion) {
        throw FormatError(FormatError::Kind::unsupported_version,
                          "unsupported payload version " + std::to_string(version));
    }
    if (dec.u16() != 0) {
        throw FormatError(FormatError::Kind::malformed, "unknown payload flags");
    }
    std::uint32_t n = dec.count(10);
    std::vector<ClassSchema> schemas;
    for (std::uint32_t i = 0; i < n; ++i) {
        schemas.push_back(read_class(dec));
        for (std::uint32_t j = 0; j < i; ++j) {
            if (schemas[j].classId == schemas.back().classId) {
                throw FormatError(FormatError::Kind::malformed, "duplicate classId in header");
            }
        }
    }
    if (versionOut) {
        *versionOut = version;
    }
    // the object count belongs to the header
    return schemas;
}

inline std::size_t schema_index(const std::vector<ClassSchema>& schemas, std::uint32_t classId)
{
    for (std::size_t i = 0; i < schemas.size(); ++i) {
        if (schemas[i].classId == classId) {
            return i;
        }
    }
    throw FormatError(FormatError::Kind::malformed,
                      "object refers to a class absent from the header");
}

inline PayloadView parse_payload(std::string_view bytes)
{
    PayloadView view;
    Decoder dec(bytes);
    view.schemas = read_header(dec, bytes, &view.version);
    std::uint32_t n = dec.count(12);
    dec.set_truncation(FormatError::Kind::truncated_table);
    for (std::uint32_t i = 0; i < n; ++i) {
        ObjectView o;
        o.classId = dec.u32();
        o.schemaIndex = schema_index(view.schemas, o.classId);
        o.key = dec.str();
        std::uint32_t len = dec.count(1);
        o.body = dec.take(len);
        view.objects.push_back(std::move(o));
    }
    if (!dec.at_end()) {
        throw FormatError(FormatError::Kind::malformed, "trailing bytes after object table");
    }
    return view;
}

// ---------------------------------------------------------------------------
// Writers and readers driven by generated converters

namespace detail {

template <class T>
const void* identity(const T* p)
{
    if constexpr (std::is_polymorphic_v<T>) {
        return p ? dynamic_cast<const void*>(p) : nullptr;
    } else {
        return p;
    }
}

inline void append_json_string(std::string& out, std::string_view s)
{
    static constexpr char kHex[] = "0123456789abcdef";
    out.push_back('"');
    for (char ch : s) {
        auto c = static_cast<unsigned char>(ch);
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (c < 0x20) {
                out += "\\u00";
                out.push_back(kHex[c >> 4]);
                out.push_back(kHex[c & 0xf]);
            } else {
                out.push_back(ch);
            }
        }
    }
    out.push_back('"');
}

template <class F>
void append_float(std::string& out, F v)
{
    if (std::isnan(v)) {
        out += "\"nan\"";
        return;
    }
    if (std::isinf(v)) {
        out += v > 0 ? "\"inf\"" : "\"-inf\"";
        return;
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

} // namespace detail

using IndexOf = std::function<std::uint32_t(const void*)>;

/// Binary body writer. Field names are accepted for interface parity with
/// JsonWriter and ignored.
class BinaryWriter {
public:
    BinaryWriter(std::string& out, IndexOf indexOf) : enc_(out), indexOf_(std::move(indexOf)) {}

    void boolean(std::string_view, bool v) { enc_.boolean(v); }
    void octet(std::string_view, std::uint8_t v) { enc_.octet(v); }
    void i16(std::string_view, std::int16_t v) { enc_.i16(v); }
    void i32(std::string_view, std::int32_t v) { enc_.i32(v); }
    void i64(std::string_view, std::int64_t v) { enc_.i64(v); }
    void f32(std::string_view, float v) { enc_.f32(v); }
    void f64(std::string_view, double v) { enc_.f64(v); }
    void str(std::string_view, std::string_view v) { enc_.str(v); }
    void opaque(std::string_view, const support::Opaque& v) { enc_.bytes(v.bytes); }
    void enumeration(std::string_view, std::uint32_t ordinal, std::string_view /*label*/)
    {
        enc_.u32(ordinal);
    }
    void begin_sequence(std::string_view, std::size_t n) { enc_.count(n); }
    void end_sequence() {}
    void begin_struct(std::string_view) {}
    void end_struct() {}

    template <class T>
    void link(std::string_view, const T* target)
    {
        enc_.u32(target ? indexOf_(detail::identity(target)) : kNoLink);
    }
    template <class T>
    void links(std::string_view, const std::vector<T*>& targets)
    {
        enc_.count(targets.size());
        for (const T* t : targets) {
            enc_.u32(indexOf_(detail::identity(t)));
        }
    }

private:
    Encoder enc_;
    IndexOf indexOf_;
};

using KeyOf = std::function<const std::string&(const void*)>;

/// Writes one object's persistent state as a JSON object with a fixed key
/// order: `{"fields": {...}, "links": {...}}`. Links are rendered as store keys.
class JsonWriter {
public:
    JsonWriter(std::string& out, KeyOf keyOf) : out_(out), keyOf_(std::move(keyOf))
    {
        out_ += "{\"fields\": {";
        first_.push_back(true);
    }

    void finish()
    {
        if (!inLinks_) {
            out_ += "}, \"links\": {";
        }
        out_ += "}}";
    }

    void boolean(std::string_view name, bool v)
    {
        key(name);
        out_ += v ? "true" : "false";
    }
    void octet(std::string_view name, std::uint8_t v) { integer(name, v); }
    void i16(std::string_view name, std::int16_t v) { integer(name, v); }
    void i32(std::string_view name, std::int32_t v) { integer(name, v); }
    void i64(std::string_view name, std::int64_t v) { integer(name, v); }
    void f32(std::string_view name, float v)
    {
        key(name);
        detail::append_float(out_, v);
    }
    void f64(std::string_view name, double v)
    {
        key(name);
        detail::append_float(out_, v);
    }
    void str(std::string_view name, std::string_view v)
    {
        key(name);
        detail::append_json_string(out_, v);
    }
    void opaque(std::string_view name, const support::Opaque& v)
    {
        static constexpr char kHex[] = "0123456789abcdef";
        key(name);
        out_.push_back('"');
        for (auto b : v.bytes) {
            out_.push_back(kHex[b >> 4]);
            out_.push_back(kHex[b & 0xf]);
        }
        out_.push_back('"');
    }
    void enumeration(std::string_view name, std::uint32_t, std::string_view label)
    {
        key(name);
        detail::append_json_string(out_, label);
    }
    void begin_sequence(std::string_view name, std::size_t)
    {
        key(name);
        out_ += "[";
        first_.push_back(true);
    }
    void end_sequence()
    {
        out_ += "]";
        first_.pop_back();
    }
    void begin_struct(std::string_view name)
    {
        key(name);
        out_ += "{";
        first_.push_back(true);
    }
    void end_struct()
    {
        out_ += "}";
        first_.pop_back();
    }

    template <class T>
    void link(std::string_view name, const T* target)
    {
        enter_links();
        key(name);
        if (target) {
            detail::append_json_string(out_, keyOf_(detail::identity(target)));
        } else {
            out_ += "null";
        }
    }
    template <class T>
    void links(std::string_view name, const std::vector<T*>& targets)
    {
        enter_links();
        key(name);
        out_ += "[";
        for (std::size_t i = 0; i < targets.size(); ++i) {
            out_ += i ? ", " : "";
            detail::append_json_string(out_, keyOf_(detail::identity(targets[i])));
        }
        out_ += "]";
    }

private:
    template <class I>
    void integer(std::string_view name, I v)
    {
        key(name);
        out_ += std::to_string(v);
    }

    void key(std::string_view name)
    {
        if (!first_.back()) {
            out_ += ", ";
        }
        first_.back() = false;
        if (!name.empty()) {
            detail::append_json_string(out_, name);
            out_ += ": ";
        }
    }

    void enter_links()
    {
        if (!inLinks_) {
            inLinks_ = true;
            out_ += "}, \"links\": {";
            first_.back() = true;
        }
    }

    std::string& out_;
    KeyOf keyOf_;
    std::vector<bool> first_;
    bool inLinks_ = false;
};

/// Collects generated objects and renders them through their converters
/// `Cnv`, which provide `Type`, `schema()` and `write(const Type&, W&)`.
class BuilderBase {
public:
    template <class Cnv>
    void add(const typename Cnv::Type& object, std::string key)
    {
        const void* id = detail::identity(&object);
        if (!index_.emplace(id, static_cast<std::uint32_t>(entries_.size())).second) {
            throw FormatError(FormatError::Kind::malformed, "object added twice");
        }
        Entry e;
        e.schema = &Cnv::schema();
        e.key = std::move(key);
        e.writeBinary = [&object](BinaryWriter& w) { Cnv::write(object, w); };
        e.writeJson = [&object](JsonWriter& w) { Cnv::write(object, w); };
        entries_.push_back(std::move(e));
    }

protected:
    struct Entry {
        const ClassSchema* schema = nullptr;
        std::string key;
        std::function<void(BinaryWriter&)> writeBinary;
        std::function<void(JsonWriter&)> writeJson;
    };

    std::uint32_t index_of(const void* id) const
    {
        auto it = index_.find(id);
        if (it == index_.end()) {
            throw FormatError(FormatError::Kind::unregistered_object,
                              "linked object was not added to the payload");
        }
        return it->second;
    }

    std::vector<Entry> entries_;
    std::map<const void*, std::uint32_t> index_;
};

/// Builds a binary ADD1 payload from generated objects, in insertion order.
class PayloadBuilder : public BuilderBase {
public:
    std::string finish() const
    {
        std::vector<const ClassSchema*> schemas;
        std::vector<ObjectRecord> records;
        for (const auto& e : entries_) {
            if (std::find_if(schemas.begin(), schemas.end(), [&](const ClassSchema* s) {
                    return s->classId == e.schema->classId;
                }) == schemas.end()) {
                schemas.push_back(e.schema);
            }
            ObjectRecord r;
            r.classId = e.schema->classId;
            r.key = e.key;
            BinaryWriter w(r.body, [this](const void* id) { return index_of(id); });
            e.writeBinary(w);
            records.push_back(std::move(r));
        }
        return assemble_payload(schemas, records);
    }
};

/// Canonical JSON rendering of the same object set (write-only export).
class JsonBuilder : public BuilderBase {
public:
    std::string finish() const
    {
        std::string out = "{\"format\": \"ADD1-json\", \"objects\": [";
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            const auto& e = entries_[i];
            out += i ? ",\n  " : "\n  ";
            out += "{\"class\": ";
            detail::append_json_string(out, e.schema->name);
            out += ", \"classId\": " + std::to_string(e.schema->classId) + ", \"key\": ";
            detail::append_json_string(out, e.key);
            out += ", \"state\": ";
            JsonWriter w(out, [this](const void* id) -> const std::string& {
                return entries_[index_of(id)].key;
            });
            e.writeJson(w);
            w.finish();
            out += "}";
        }
        out += entries_.empty() ? "]}\n" : "\n]}\n";
        return out;
    }
};

/// Binary body reader handed to generated `read` functions.
class BinaryReader {
public:
    using Resolve = std::function<support::Object*(std::uint32_t)>;

    BinaryReader(std::string_view body, Resolve resolve) : dec_(body), resolve_(std::move(resolve))
    {
    }

    bool boolean() { return dec_.boolean(); }
    std::uint8_t octet() { return dec_.octet(); }
    std::int16_t i16() { return dec_.i16(); }
    std::int32_t i32() { return dec_.i32(); }
    std::int64_t i64() { return dec_.i64(); }
    float f32() { return dec_.f32(); }
    double f64() { return dec_.f64(); }
    std::string str() { return dec_.str(); }
    support::Opaque opaque() { return support::Opaque{dec_.bytes()}; }
    std::uint32_t enumeration(std::size_t limit) { return dec_.enumeration(limit); }
    /// `minElementSize` is the wire size lower bound of one element.
    std::size_t begin_sequence(std::size_t minElementSize) { return dec_.count(minElementSize); }

    template <class T>
    T* link()
    {
        std::uint32_t idx = dec_.u32();
        if (idx == kNoLink) {
            return nullptr;
        }
        return cast<T>(idx);
    }
    template <class T>
    std::vector<T*> links()
    {
        std::uint32_t n = dec_.count(4);
        std::vector<T*> out;
        for (std::uint32_t i = 0; i < n; ++i) {
            out.push_back(cast<T>(dec_.u32()));
        }
        return out;
    }

    bool at_end() const { return dec_.at_end(); }

private:
    template <class T>
    T* cast(std::uint32_t idx)
    {
        T* p = dynamic_cast<T*>(resolve_(idx));
        if (!p) {
            throw FormatError(FormatError::Kind::malformed, "link target has the wrong class");
        }
        return p;
    }

    Decoder dec_;
    Resolve resolve_;
};

/// Materializes generated objects from a binary payload. Every class present
/// must be registered via its converter, and its embedded schema must match
/// the converter's compiled-in schema.
class PayloadReader {
public:
    struct Entry {
        std::string key;
        std::unique_ptr<support::Object> object;
    };

    explicit PayloadReader(std::string_view bytes) : view_(parse_payload(bytes)) {}

    template <class Cnv>
    void register_class()
    {
        using T = typename Cnv::Type;
        Binding b;
        b.schema = &Cnv::schema();
        b.create = [] { return std::unique_ptr<support::Object>(new T()); };
        b.read = [](support::Object& o, BinaryReader& r) { Cnv::read(dynamic_cast<T&>(o), r); };
        bindings_[b.schema->classId] = std::move(b);
    }

    std::vector<Entry> read()
    {
        std::vector<Entry> out;
        std::vector<const Binding*> bound;
        for (const auto& o : view_.objects) {
            auto it = bindings_.find(o.classId);
            if (it == bindings_.end()) {
                throw FormatError(FormatError::Kind::unknown_class,
                                  "no converter registered for " +
                                      view_.schemas[o.schemaIndex].name);
            }
            if (!(*it->second.schema == view_.schemas[o.schemaIndex])) {
                throw FormatError(FormatError::Kind::schema_mismatch,
                                  "embedded schema of " + it->second.schema->name +
                                      " differs from the compiled converter");
            }
            out.push_back(Entry{o.key, it->second.create()});
            bound.push_back(&it->second);
        }
        auto resolve = [&out](std::uint32_t idx) -> support::Object* {
            if (idx >= out.size()) {
                throw FormatError(FormatError::Kind::malformed, "link index out of range");
            }
            return out[idx].object.get();
        };
        for (std::size_t i = 0; i < out.size(); ++i) {
            BinaryReader r(view_.objects[i].body, resolve);
            bound[i]->read(*out[i].object, r);
            if (!r.at_end()) {
                throw FormatError(FormatError::Kind::malformed, "object body has trailing bytes");
            }
        }
        return out;
    }

private:
    struct Binding {
        const ClassSchema* schema = nullptr;
        std::function<std::unique_ptr<support::Object>()> create;
        std::function<void(support::Object&, BinaryReader&)> read;
    };

    PayloadView view_;
    std::map<std::uint32_t, Binding> bindings_;
};

} // namespace adl::wire
