#include "adl/runtime/value.hpp"

#include "adl/runtime/error.hpp"

#include <bit>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <cmath>
#include <cstdio>

namespace adl::runtime {

using wire::Tag;
using wire::TypeSchema;

const DynamicValue* StructValue::find(std::string_view name) const
{
    for (const auto& [n, v] : members) {
        if (n == name) {
            return &v;
        }
    }
    return nullptr;
}

DynamicValue* StructValue::find(std::string_view name)
{
    for (auto& [n, v] : members) {
        if (n == name) {
            return &v;
        }
    }
    return nullptr;
}

bool operator==(const StructValue& a, const StructValue& b)
{
    return a.type == b.type && a.members == b.members;
}

bool operator==(const DynamicValue& a, const DynamicValue& b)
{
    if (a.storage_.index() != b.storage_.index()) {
        return false;
    }
    if (auto f = a.if_as<float>()) {
        return std::bit_cast<std::uint32_t>(*f) == std::bit_cast<std::uint32_t>(b.as<float>());
    }
    if (auto d = a.if_as<double>()) {
        return std::bit_cast<std::uint64_t>(*d) == std::bit_cast<std::uint64_t>(b.as<double>());
    }
    return a.storage_ == b.storage_;
}

DynamicValue zero_value(const TypeSchema& type)
{
    switch (type.tag) {
    case Tag::boolean: return DynamicValue::boolean(false);
    case Tag::octet: return DynamicValue::octet(0);
    case Tag::short_: return DynamicValue::i16(0);
    case Tag::long_: return DynamicValue::i32(0);
    case Tag::long_long: return DynamicValue::i64(0);
    case Tag::float_: return DynamicValue::f32(0.0f);
    case Tag::double_: return DynamicValue::f64(0.0);
    case Tag::string: return DynamicValue::str("");
    case Tag::sequence: return DynamicValue::sequence({});
    case Tag::enumeration:
        return DynamicValue::enumeration(
            EnumValue{type.name, 0, type.enumerators.empty() ? "" : type.enumerators.front()});
    case Tag::structure: {
        StructValue s;
        s.type = type.name;
        for (const auto& f : type.fields) {
            s.members.emplace_back(f.name, zero_value(f.type));
        }
        return DynamicValue::structure(std::move(s));
    }
    case Tag::opaque: return DynamicValue::opaque({});
    }
    return {};
}

bool conforms(const DynamicValue& value, const TypeSchema& type)
{
    if (value.tag() != type.tag) {
        return false;
    }
    switch (type.tag) {
    case Tag::sequence:
        for (const auto& e : value.as<Sequence>()) {
            if (!conforms(e, *type.element)) {
                return false;
            }
        }
        return true;
    case Tag::enumeration: {
        const auto& e = value.as<EnumValue>();
        return e.type == type.name && e.ordinal < type.enumerators.size() &&
               type.enumerators[e.ordinal] == e.label;
    }
    case Tag::structure: {
        const auto& s = value.as<StructValue>();
        if (s.type != type.name || s.members.size() != type.fields.size()) {
            return false;
        }
        for (std::size_t i = 0; i < s.members.size(); ++i) {
            if (s.members[i].first != type.fields[i].name ||
                !conforms(s.members[i].second, type.fields[i].type)) {
                return false;
            }
        }
        return true;
    }
    default: return true;
    }
}

std::string describe_type(const TypeSchema& type)
{
    switch (type.tag) {
    case Tag::boolean: return "boolean";
    case Tag::octet: return "octet";
    case Tag::short_: return "short";
    case Tag::long_: return "long";
    case Tag::long_long: return "long long";
    case Tag::float_: return "float";
    case Tag::double_: return "double";
    case Tag::string: return "string";
    case Tag::sequence: return "sequence<" + describe_type(*type.element) + ">";
    case Tag::enumeration:
    case Tag::structure:
    case Tag::opaque: return type.name;
    }
    return "?";
}

namespace {

void quote(std::string& out, std::string_view s)
{
    static constexpr char kHex[] = "0123456789abcdef";
    out.push_back('"');
    for (char ch : s) {
        auto c = static_cast<unsigned char>(ch);
        if (c == '"' || c == '\\') {
            out.push_back('\\');
            out.push_back(ch);
        } else if (c < 0x20 || c == 0x7f) {
            out += "\\x";
            out.push_back(kHex[c >> 4]);
            out.push_back(kHex[c & 0xf]);
        } else {
            out.push_back(ch);
        }
    }
    out.push_back('"');
}

void real(std::string& out, double v, int digits)
{
    if (std::isnan(v)) {
        out += "nan";
        return;
    }
    if (std::isinf(v)) {
        out += v > 0 ? "inf" : "-inf";
        return;
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    out += buf;
}

void render(std::string& out, const DynamicValue& v)
{
    static constexpr char kHex[] = "0123456789abcdef";
    switch (v.tag()) {
    case Tag::boolean: out += v.as<bool>() ? "true" : "false"; break;
    case Tag::octet: out += std::to_string(v.as<std::uint8_t>()); break;
    case Tag::short_: out += std::to_string(v.as<std::int16_t>()); break;
    case Tag::long_: out += std::to_string(v.as<std::int32_t>()); break;
    case Tag::long_long: out += std::to_string(v.as<std::int64_t>()); break;
    case Tag::float_: real(out, v.as<float>(), 9); break;
    case Tag::double_: real(out, v.as<double>(), 17); break;
    case Tag::string: quote(out, v.as<std::string>()); break;
    case Tag::sequence: {
        out += "[";
        const auto& seq = v.as<Sequence>();
        for (std::size_t i = 0; i < seq.size(); ++i) {
            out += i ? ", " : "";
            render(out, seq[i]);
        }
        out += "]";
        break;
    }
    case Tag::enumeration: out += v.as<EnumValue>().label; break;
    case Tag::structure: {
        out += "{";
        const auto& s = v.as<StructValue>();
        for (std::size_t i = 0; i < s.members.size(); ++i) {
            out += i ? ", " : "";
            out += s.members[i].first;
            out += "=";
            render(out, s.members[i].second);
        }
        out += "}";
        break;
    }
    case Tag::opaque:
        out += "x\"";
        for (auto b : v.as<support::Opaque>().bytes) {
            out.push_back(kHex[b >> 4]);
            out.push_back(kHex[b & 0xf]);
        }
        out += "\"";
        break;
    }
}

} // namespace

std::string render_value(const DynamicValue& value)
{
    std::string out;
    render(out, value);
    return out;
}

namespace {

class LiteralParser {
public:
    explicit LiteralParser(std::string_view text) : text_(text) {}

    DynamicValue parse_all(const TypeSchema& type)
    {
        DynamicValue v = value(type);
        skip_space();
        if (pos_ != text_.size()) {
            fail("trailing characters", type);
        }
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what, const TypeSchema& type) const
    {
        throw RuntimeError(RuntimeError::Kind::type_mismatch,
                           "cannot read '" + std::string(text_) + "' as " + describe_type(type) +
                               ": " + what + " at offset " + std::to_string(pos_));
    }

    void skip_space()
    {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) {
            ++pos_;
        }
    }

    bool eat(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string_view word()
    {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                      c == '_' || c == '-' || c == '+' || c == '.';
            if (!ok) {
                break;
            }
            ++pos_;
        }
        return text_.substr(start, pos_ - start);
    }

    template <class I>
    I integer(const TypeSchema& type)
    {
        std::string_view w = word();
        long long v = 0;
        auto res = std::from_chars(w.data(), w.data() + w.size(), v);
        if (w.empty() || res.ec != std::errc{} || res.ptr != w.data() + w.size() ||
            v < static_cast<long long>(std::numeric_limits<I>::min()) ||
            v > static_cast<long long>(std::numeric_limits<I>::max())) {
            fail("not an integer in range", type);
        }
        return static_cast<I>(v);
    }

    template <class F>
    F real(const TypeSchema& type)
    {
        std::string w(word());
        if (w == "nan") {
            return std::numeric_limits<F>::quiet_NaN();
        }
        if (w == "inf") {
            return std::numeric_limits<F>::infinity();
        }
        if (w == "-inf") {
            return -std::numeric_limits<F>::infinity();
        }
        char* end = nullptr;
        F v{};
        if (!w.empty()) {
            if constexpr (std::is_same_v<F, float>) {
                v = std::strtof(w.c_str(), &end);
            } else {
                v = std::strtod(w.c_str(), &end);
            }
        }
        if (w.empty() || end != w.c_str() + w.size()) {
            fail("not a number", type);
        }
        return v;
    }

    static int hex_digit(char c)
    {
        if (c >= '0' && c <= '9') {
            return c - '0';
        }
        if (c >= 'a' && c <= 'f') {
            return c - 'a' + 10;
        }
        if (c >= 'A' && c <= 'F') {
            return c - 'A' + 10;
        }
        return -1;
    }

    std::string quoted(const TypeSchema& type)
    {
        if (!eat('"')) {
            fail("expected '\"'", type);
        }
        std::string out;
        while (pos_ < text_.size() && text_[pos_] != '"') {
            char c = text_[pos_++];
            if (c != '\\') {
                out.push_back(c);
                continue;
            }
            if (pos_ >= text_.size()) {
                break;
            }
            char e = text_[pos_++];
            if (e == 'x' && pos_ + 2 <= text_.size() && hex_digit(text_[pos_]) >= 0 &&
                hex_digit(text_[pos_ + 1]) >= 0) {
                out.push_back(static_cast<char>(hex_digit(text_[pos_]) * 16 + hex_digit(text_[pos_ + 1])));
                pos_ += 2;
            } else if (e == '"' || e == '\\') {
                out.push_back(e);
            } else {
                fail("bad escape", type);
            }
        }
        if (pos_ >= text_.size()) {
            fail("unterminated string", type);
        }
        ++pos_;
        return out;
    }

    DynamicValue value(const TypeSchema& type)
    {
        switch (type.tag) {
        case Tag::boolean: {
            std::string_view w = word();
            if (w != "true" && w != "false") {
                fail("expected true or false", type);
            }
            return DynamicValue::boolean(w == "true");
        }
        case Tag::octet: return DynamicValue::octet(integer<std::uint8_t>(type));
        case Tag::short_: return DynamicValue::i16(integer<std::int16_t>(type));
        case Tag::long_: return DynamicValue::i32(integer<std::int32_t>(type));
        case Tag::long_long: return DynamicValue::i64(integer<std::int64_t>(type));
        case Tag::float_: return DynamicValue::f32(real<float>(type));
        case Tag::double_: return DynamicValue::f64(real<double>(type));
        case Tag::string: return DynamicValue::str(quoted(type));
        case Tag::enumeration: {
            std::string_view w = word();
            for (std::size_t i = 0; i < type.enumerators.size(); ++i) {
                if (type.enumerators[i] == w) {
                    return DynamicValue::enumeration(
                        EnumValue{type.name, static_cast<std::uint32_t>(i), std::string(w)});
                }
            }
            fail("unknown enumerator", type);
        }
        case Tag::opaque: {
            skip_space();
            if (!eat('x')) {
                fail("expected x\"...\"", type);
            }
            std::string hex = quoted(type);
            if (hex.size() % 2) {
                fail("odd number of hex digits", type);
            }
            support::Opaque o;
            for (std::size_t i = 0; i < hex.size(); i += 2) {
                int hi = hex_digit(hex[i]);
                int lo = hex_digit(hex[i + 1]);
                if (hi < 0 || lo < 0) {
                    fail("not a hex digit", type);
                }
                o.bytes.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
            }
            return DynamicValue::opaque(std::move(o));
        }
        case Tag::sequence: {
            if (!eat('[')) {
                fail("expected '['", type);
            }
            Sequence seq;
            if (!eat(']')) {
                do {
                    seq.push_back(value(*type.element));
                } while (eat(','));
                if (!eat(']')) {
                    fail("expected ']'", type);
                }
            }
            return DynamicValue::sequence(std::move(seq));
        }
        case Tag::structure: {
            if (!eat('{')) {
                fail("expected '{'", type);
            }
            DynamicValue out = zero_value(type);
            auto& s = out.as<StructValue>();
            if (!eat('}')) {
                do {
                    std::string_view name = word();
                    std::size_t idx = type.fields.size();
                    for (std::size_t i = 0; i < type.fields.size(); ++i) {
                        if (type.fields[i].name == name) {
                            idx = i;
                        }
                    }
                    if (idx == type.fields.size() || !eat('=')) {
                        fail("expected member=value", type);
                    }
                    s.members[idx].second = value(type.fields[idx].type);
                } while (eat(','));
                if (!eat('}')) {
                    fail("expected '}'", type);
                }
            }
            return out;
        }
        }
        fail("unsupported type", type);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

DynamicValue parse_value(std::string_view text, const TypeSchema& type)
{
    return LiteralParser(text).parse_all(type);
}

void encode_value(wire::Encoder& enc, const DynamicValue& v)
{
    switch (v.tag()) {
    case Tag::boolean: enc.boolean(v.as<bool>()); break;
    case Tag::octet: enc.octet(v.as<std::uint8_t>()); break;
    case Tag::short_: enc.i16(v.as<std::int16_t>()); break;
    case Tag::long_: enc.i32(v.as<std::int32_t>()); break;
    case Tag::long_long: enc.i64(v.as<std::int64_t>()); break;
    case Tag::float_: enc.f32(v.as<float>()); break;
    case Tag::double_: enc.f64(v.as<double>()); break;
    case Tag::string: enc.str(v.as<std::string>()); break;
    case Tag::sequence: {
        const auto& seq = v.as<Sequence>();
        enc.count(seq.size());
        for (const auto& e : seq) {
            encode_value(enc, e);
        }
        break;
    }
    case Tag::enumeration: enc.u32(v.as<EnumValue>().ordinal); break;
    case Tag::structure:
        for (const auto& [name, member] : v.as<StructValue>().members) {
            encode_value(enc, member);
        }
        break;
    case Tag::opaque: enc.bytes(v.as<support::Opaque>().bytes); break;
    }
}

DynamicValue decode_value(wire::Decoder& dec, const TypeSchema& type)
{
    switch (type.tag) {
    case Tag::boolean: return DynamicValue::boolean(dec.boolean());
    case Tag::octet: return DynamicValue::octet(dec.octet());
    case Tag::short_: return DynamicValue::i16(dec.i16());
    case Tag::long_: return DynamicValue::i32(dec.i32());
    case Tag::long_long: return DynamicValue::i64(dec.i64());
    case Tag::float_: return DynamicValue::f32(dec.f32());
    case Tag::double_: return DynamicValue::f64(dec.f64());
    case Tag::string: return DynamicValue::str(dec.str());
    case Tag::sequence: {
        std::uint32_t n = dec.count(std::max<std::size_t>(1, wire::min_wire_size(*type.element)));
        Sequence seq;
        seq.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            seq.push_back(decode_value(dec, *type.element));
        }
        return DynamicValue::sequence(std::move(seq));
    }
    case Tag::enumeration: {
        std::uint32_t ord = dec.enumeration(type.enumerators.size());
        return DynamicValue::enumeration(EnumValue{type.name, ord, type.enumerators[ord]});
    }
    case Tag::structure: {
        StructValue s;
        s.type = type.name;
        for (const auto& f : type.fields) {
            s.members.emplace_back(f.name, decode_value(dec, f.type));
        }
        return DynamicValue::structure(std::move(s));
    }
    case Tag::opaque: return DynamicValue::opaque(support::Opaque{dec.bytes()});
    }
    throw wire::FormatError(wire::FormatError::Kind::malformed, "unknown type tag");
}

} // namespace adl::runtime
