#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "adl/frontend/diagnostic.hpp"

namespace adl::frontend {

enum class TokenKind {
    keyword,
    identifier,
    integer_literal,
    float_literal,
    string_literal,
    punctuator,
    end_of_input,
};

std::string_view kind_name(TokenKind kind);

struct Token {
    TokenKind kind = TokenKind::end_of_input;
    std::string text;  // exact source slice
    SourcePos begin;
    SourcePos end;     // one past the last character
    std::size_t offset = 0;

    bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
    bool is_keyword(std::string_view t) const { return is(TokenKind::keyword, t); }
    bool is_punct(std::string_view t) const { return is(TokenKind::punctuator, t); }
};

/// Reserved words: the ADL keyword set plus the IDL words the language
/// deliberately leaves out (so they are reported by name, never taken as
/// identifiers).
bool is_reserved(std::string_view word);
const std::vector<std::string_view>& reserved_words();

Outcome<std::vector<Token>> tokenize(std::string_view source, std::string_view file);

} // namespace adl::frontend
