#include "adl/frontend/diagnostic.hpp"

#include <algorithm>
#include <array>

namespace adl {

namespace {

struct CodeEntry {
    DiagCode code;
    std::string_view name;
};

constexpr std::array kCodes = {
    CodeEntry{DiagCode::lex_illegal_char, "lex.char"},
    CodeEntry{DiagCode::lex_unterminated_string, "lex.string"},
    CodeEntry{DiagCode::lex_unterminated_comment, "lex.comment"},
    CodeEntry{DiagCode::lex_bad_number, "lex.number"},
    CodeEntry{DiagCode::parse_syntax, "parse.syntax"},
    CodeEntry{DiagCode::parse_unsupported, "parse.unsupported"},
    CodeEntry{DiagCode::parse_too_deep, "parse.depth"},
    CodeEntry{DiagCode::parse_duplicate_modifier, "parse.modifier"},
    CodeEntry{DiagCode::model_duplicate, "model.duplicate"},
    CodeEntry{DiagCode::model_unknown_type, "model.unknown-type"},
    CodeEntry{DiagCode::model_ambiguous, "model.ambiguous"},
    CodeEntry{DiagCode::model_not_a_type, "model.not-a-type"},
    CodeEntry{DiagCode::model_inheritance_cycle, "model.cycle"},
    CodeEntry{DiagCode::model_bad_base, "model.base"},
    CodeEntry{DiagCode::model_category_conflict, "model.category"},
    CodeEntry{DiagCode::model_duplicate_member, "model.member"},
    CodeEntry{DiagCode::model_duplicate_param, "model.param"},
    CodeEntry{DiagCode::model_relationship_owner, "model.rel-owner"},
    CodeEntry{DiagCode::model_relationship_target, "model.rel-target"},
    CodeEntry{DiagCode::model_inverse_dangling, "model.inverse-dangling"},
    CodeEntry{DiagCode::model_inverse_asymmetric, "model.inverse-asymmetric"},
    CodeEntry{DiagCode::model_value_type, "model.value-type"},
    CodeEntry{DiagCode::model_value_cycle, "model.value-cycle"},
    CodeEntry{DiagCode::model_typedef_cycle, "model.typedef-cycle"},
    CodeEntry{DiagCode::model_classid_collision, "model.classid"},
    CodeEntry{DiagCode::emit_name_collision, "emit.collision"},
    CodeEntry{DiagCode::emit_empty_payload, "emit.empty-payload"},
};

} // namespace

std::string to_string(const SourcePos& pos)
{
    return pos.file + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

std::string_view code_name(DiagCode code)
{
    for (const auto& entry : kCodes) {
        if (entry.code == code) {
            return entry.name;
        }
    }
    return "unknown";
}

std::optional<DiagCode> code_from_name(std::string_view name)
{
    for (const auto& entry : kCodes) {
        if (entry.name == name) {
            return entry.code;
        }
    }
    return std::nullopt;
}

std::string render(const Diagnostic& diag)
{
    std::string out = to_string(diag.pos);
    out += diag.severity == Severity::error ? ": error[" : ": warning[";
    out += code_name(diag.code);
    out += "]: ";
    out += diag.message;
    return out;
}

bool has_errors(const std::vector<Diagnostic>& diags)
{
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::error; });
}

} // namespace adl
