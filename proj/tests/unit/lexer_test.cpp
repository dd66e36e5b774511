#include <gtest/gtest.h>

#include "adl/frontend/lexer.hpp"

using adl::DiagCode;
using adl::frontend::Token;
using adl::frontend::TokenKind;
using adl::frontend::tokenize;

namespace {

std::vector<std::pair<TokenKind, std::string>> kinds(const std::vector<Token>& tokens)
{
    std::vector<std::pair<TokenKind, std::string>> out;
    for (const auto& t : tokens) {
        out.emplace_back(t.kind, t.text);
    }
    return out;
}

std::vector<Token> lex_ok(std::string_view src)
{
    auto r = tokenize(src, "t.adl");
    EXPECT_TRUE(r.ok());
    return r.value ? *r.value : std::vector<Token>{};
}

} // namespace

TEST(Lexer, EmptyInputYieldsOnlyEndOfInput)
{
    auto tokens = lex_ok("");
    ASSERT_EQ(tokens.size(), 1u);
    EXPECT_EQ(tokens[0].kind, TokenKind::end_of_input);
}

TEST(Lexer, PersistentIsReserved)
{
    using K = TokenKind;
    std::vector<std::pair<K, std::string>> expected = {
        {K::keyword, "persistent"}, {K::keyword, "long"}, {K::identifier, "id"},
        {K::punctuator, ";"},       {K::end_of_input, ""},
    };
    EXPECT_EQ(kinds(lex_ok("persistent long id;")), expected);
}

TEST(Lexer, ClassHeaderMatchesHandTokenization)
{
    using K = TokenKind;
    std::vector<std::pair<K, std::string>> expected = {
        {K::keyword, "class"},      {K::identifier, "Track"}, {K::punctuator, ":"},
        {K::keyword, "DataObject"}, {K::punctuator, "{"},     {K::punctuator, "}"},
        {K::punctuator, ";"},       {K::end_of_input, ""},
    };
    auto tokens = lex_ok("class Track : DataObject { };");
    EXPECT_EQ(kinds(tokens), expected);
    EXPECT_EQ(tokens.size(), 8u);
}

TEST(Lexer, PositionsAreOneBased)
{
    auto tokens = lex_ok("module\n  Evt");
    EXPECT_EQ(tokens[0].begin.line, 1);
    EXPECT_EQ(tokens[0].begin.column, 1);
    EXPECT_EQ(tokens[1].begin.line, 2);
    EXPECT_EQ(tokens[1].begin.column, 3);
    EXPECT_EQ(tokens[1].begin.file, "t.adl");
}

TEST(Lexer, TokenTextsPlusSkippedTextReconstructSource)
{
    const std::string src = "/* head */ module A { // note\n class B : DataObject { "
                            "persistent sequence<long> xs; double f(long a) const; }; };\n";
    auto tokens = lex_ok(src);
    std::string rebuilt;
    std::size_t pos = 0;
    for (const auto& t : tokens) {
        ASSERT_GE(t.offset, pos);
        rebuilt += src.substr(pos, t.offset - pos);
        EXPECT_EQ(src.substr(t.offset, t.text.size()), t.text);
        rebuilt += t.text;
        pos = t.offset + t.text.size();
    }
    rebuilt += src.substr(pos);
    EXPECT_EQ(rebuilt, src);
}

TEST(Lexer, ScopeOperatorIsOneToken)
{
    using K = TokenKind;
    auto tokens = lex_ok("Evt::Track");
    std::vector<std::pair<K, std::string>> expected = {
        {K::identifier, "Evt"}, {K::punctuator, "::"}, {K::identifier, "Track"},
        {K::end_of_input, ""}};
    EXPECT_EQ(kinds(tokens), expected);
}

TEST(Lexer, LiteralsAreClassified)
{
    auto tokens = lex_ok("42 3.5 1e3 \"a\\\"b\"");
    EXPECT_EQ(tokens[0].kind, TokenKind::integer_literal);
    EXPECT_EQ(tokens[1].kind, TokenKind::float_literal);
    EXPECT_EQ(tokens[2].kind, TokenKind::float_literal);
    EXPECT_EQ(tokens[3].kind, TokenKind::string_literal);
    EXPECT_EQ(tokens[3].text, "\"a\\\"b\"");
}

TEST(Lexer, ExtensionKeywordsAreNeverIdentifiers)
{
    for (std::string word : {"relationship", "persistent", "extern", "DataObject",
                             "ContainedObject", "CollectionObject", "private"}) {
        auto tokens = lex_ok(word);
        EXPECT_EQ(tokens[0].kind, TokenKind::keyword) << word;
    }
}

TEST(Lexer, UnterminatedStringIsReported)
{
    auto r = tokenize("\"open", "t.adl");
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.diagnostics.at(0).code, DiagCode::lex_unterminated_string);
    EXPECT_EQ(r.diagnostics.at(0).pos.column, 1);
}

TEST(Lexer, UnterminatedCommentIsReported)
{
    auto r = tokenize("module /* never closed", "t.adl");
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.diagnostics.at(0).code, DiagCode::lex_unterminated_comment);
    EXPECT_EQ(r.diagnostics.at(0).pos.column, 8);
}

TEST(Lexer, IllegalCharacterIsReportedWithPosition)
{
    auto r = tokenize("module A {\n  @\n};", "t.adl");
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.diagnostics.at(0).code, DiagCode::lex_illegal_char);
    EXPECT_EQ(r.diagnostics.at(0).pos.line, 2);
    EXPECT_EQ(r.diagnostics.at(0).pos.column, 3);
}

TEST(Lexer, DiagnosticRendering)
{
    auto r = tokenize("$", "dir/x.adl");
    ASSERT_FALSE(r.diagnostics.empty());
    EXPECT_EQ(adl::render(r.diagnostics[0]).rfind("dir/x.adl:1:1: error[lex.char]: ", 0), 0u);
}
