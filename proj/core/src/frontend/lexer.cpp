#include "adl/frontend/lexer.hpp"

#include <algorithm>

namespace adl::frontend {

namespace {

const std::vector<std::string_view> kReserved = {
    // ADL
    "module", "class", "extern", "enum", "typedef", "sequence", "relationship", "one",
    "many", "inverse", "persistent", "private", "const", "void", "boolean", "octet",
    "short", "long", "float", "double", "string", "DataObject", "ContainedObject",
    "CollectionObject",
    // IDL outside the supported subset
    "union", "any", "in", "out", "inout", "raises", "exception", "interface", "struct",
    "attribute", "readonly", "oneway", "unsigned", "wstring", "wchar", "char", "fixed",
    "valuetype", "native", "context",
};

bool is_ident_start(char c)
{
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

bool is_hex(char c)
{
    return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

class Lexer {
public:
    Lexer(std::string_view src, std::string_view file) : src_(src), file_(file) {}

    Outcome<std::vector<Token>> run()
    {
        std::vector<Token> tokens;
        while (true) {
            skip_trivia();
            if (at_end()) {
                break;
            }
            std::size_t start = pos_;
            SourcePos begin = here();
            char c = peek();
            TokenKind kind{};
            bool ok = true;
            if (is_ident_start(c)) {
                while (!at_end() && is_ident_char(peek())) {
                    advance();
                }
                kind = is_reserved(src_.substr(start, pos_ - start)) ? TokenKind::keyword
                                                                     : TokenKind::identifier;
            } else if (is_digit(c)) {
                ok = lex_number(kind, begin);
            } else if (c == '"') {
                ok = lex_string(begin);
                kind = TokenKind::string_literal;
            } else if (c == ':' && peek(1) == ':') {
                advance();
                advance();
                kind = TokenKind::punctuator;
            } else if (std::string_view("{}()<>;:,=").find(c) != std::string_view::npos) {
                advance();
                kind = TokenKind::punctuator;
            } else {
                advance();
                error(DiagCode::lex_illegal_char, "illegal character " + describe(c), begin);
                ok = false;
            }
            if (ok) {
                tokens.push_back(Token{kind, std::string(src_.substr(start, pos_ - start)), begin,
                                       here(), start});
            }
        }
        SourcePos end = here();
        tokens.push_back(Token{TokenKind::end_of_input, "", end, end, pos_});
        Outcome<std::vector<Token>> out;
        if (!has_errors(diags_)) {
            out.value = std::move(tokens);
        }
        out.diagnostics = std::move(diags_);
        return out;
    }

private:
    bool at_end() const { return pos_ >= src_.size(); }
    char peek(std::size_t ahead = 0) const
    {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance()
    {
        if (src_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    SourcePos here() const { return SourcePos{std::string(file_), line_, column_}; }

    void error(DiagCode code, std::string message, SourcePos pos)
    {
        diags_.push_back(Diagnostic{Severity::error, code, std::move(message), std::move(pos)});
    }

    static std::string describe(char c)
    {
        auto byte = static_cast<unsigned char>(c);
        if (byte >= 0x20 && byte < 0x7f) {
            return std::string("'") + c + "'";
        }
        static constexpr char kHex[] = "0123456789abcdef";
        return std::string("0x") + kHex[byte >> 4] + kHex[byte & 0xf];
    }

    void skip_trivia()
    {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (!at_end() && peek() != '\n') {
                    advance();
                }
            } else if (c == '/' && peek(1) == '*') {
                SourcePos begin = here();
                advance();
                advance();
                bool closed = false;
                while (!at_end()) {
                    if (peek() == '*' && peek(1) == '/') {
                        advance();
                        advance();
                        closed = true;
                        break;
                    }
                    advance();
                }
                if (!closed) {
                    error(DiagCode::lex_unterminated_comment, "unterminated comment", begin);
                }
            } else {
                return;
            }
        }
    }

    bool lex_number(TokenKind& kind, const SourcePos& begin)
    {
        kind = TokenKind::integer_literal;
        if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
            advance();
            advance();
            if (!is_hex(peek())) {
                return bad_number(begin);
            }
            while (is_hex(peek())) {
                advance();
            }
        } else {
            while (is_digit(peek())) {
                advance();
            }
            if (peek() == '.' && is_digit(peek(1))) {
                kind = TokenKind::float_literal;
                advance();
                while (is_digit(peek())) {
                    advance();
                }
            }
            if (peek() == 'e' || peek() == 'E') {
                kind = TokenKind::float_literal;
                advance();
                if (peek() == '+' || peek() == '-') {
                    advance();
                }
                if (!is_digit(peek())) {
                    return bad_number(begin);
                }
                while (is_digit(peek())) {
                    advance();
                }
            }
        }
        if (is_ident_char(peek())) {
            return bad_number(begin);
        }
        return true;
    }

    bool bad_number(const SourcePos& begin)
    {
        while (!at_end() && (is_ident_char(peek()) || peek() == '.')) {
            advance();
        }
        error(DiagCode::lex_bad_number, "malformed numeric literal", begin);
        return false;
    }

    bool lex_string(const SourcePos& begin)
    {
        advance(); // opening quote
        while (!at_end() && peek() != '"' && peek() != '\n') {
            if (peek() == '\\' && pos_ + 1 < src_.size() && src_[pos_ + 1] != '\n') {
                advance();
            }
            advance();
        }
        if (peek() != '"') {
            error(DiagCode::lex_unterminated_string, "unterminated string literal", begin);
            return false;
        }
        advance();
        return true;
    }

    std::string_view src_;
    std::string_view file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
    std::vector<Diagnostic> diags_;
};

} // namespace

std::string_view kind_name(TokenKind kind)
{
    switch (kind) {
    case TokenKind::keyword: return "keyword";
    case TokenKind::identifier: return "identifier";
    case TokenKind::integer_literal: return "integer literal";
    case TokenKind::float_literal: return "float literal";
    case TokenKind::string_literal: return "string literal";
    case TokenKind::punctuator: return "punctuator";
    case TokenKind::end_of_input: return "end of input";
    }
    return "?";
}

bool is_reserved(std::string_view word)
{
    return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end();
}

const std::vector<std::string_view>& reserved_words() { return kReserved; }

Outcome<std::vector<Token>> tokenize(std::string_view source, std::string_view file)
{
    return Lexer(source, file).run();
}

} // namespace adl::frontend
