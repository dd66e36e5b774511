#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace adl {

struct SourcePos {
    std::string file;
    int line = 1;
    int column = 1;

    friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

std::string to_string(const SourcePos& pos);

enum class Severity { error, warning };

/// Closed set of diagnostic codes. The textual form (see code_name) is stable
/// and is what appears between the brackets of a rendered diagnostic.
enum class DiagCode {
    // lexer
    lex_illegal_char,
    lex_unterminated_string,
    lex_unterminated_comment,
    lex_bad_number,
    // parser
    parse_syntax,
    parse_unsupported,
    parse_too_deep,
    parse_duplicate_modifier,
    // model building and resolution
    model_duplicate,
    model_unknown_type,
    model_ambiguous,
    model_not_a_type,
    model_inheritance_cycle,
    model_bad_base,
    model_category_conflict,
    model_duplicate_member,
    model_duplicate_param,
    model_relationship_owner,
    model_relationship_target,
    model_inverse_dangling,
    model_inverse_asymmetric,
    model_value_type,
    model_value_cycle,
    model_typedef_cycle,
    model_classid_collision,
    // emission
    emit_name_collision,
    emit_empty_payload,
};

std::string_view code_name(DiagCode code);
std::optional<DiagCode> code_from_name(std::string_view name);

struct Diagnostic {
    Severity severity = Severity::error;
    DiagCode code = DiagCode::parse_syntax;
    std::string message;
    SourcePos pos;
};

/// `file:line:col: severity[code]: message`
std::string render(const Diagnostic& diag);

bool has_errors(const std::vector<Diagnostic>& diags);

/// A value that may be absent when errors were reported. Warnings can
/// accompany a present value.
template <class T>
struct Outcome {
    std::optional<T> value;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return value.has_value() && !has_errors(diagnostics); }
};

} // namespace adl
