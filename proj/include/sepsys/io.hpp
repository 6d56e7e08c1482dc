#pragma once

// Family documents.
//
// JSON form:
//   {"ground_size": 4, "role": "dual", "sets": [[0], [1, 3]],
//    "witnesses": [{"member_index": 0, "separator": [0, 2], "key": [0]}]}
// "role" and "witnesses" are optional. Indices are 0-based and emitted in
// ascending order.
//
// Text form: a header line "m n", then n rows of m characters '0'/'1'
// (row = member, column = ground element).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sepsys/family.hpp"

namespace sepsys::io {

enum class Format { json, text };

struct DocumentWitness {
    std::size_t member_index = 0;
    SeparatorWitness witness;

    friend bool operator==(const DocumentWitness&, const DocumentWitness&) = default;
};

struct FamilyDocument {
    Family family;
    std::optional<std::string> role;  // "primal" or "dual"
    std::vector<DocumentWitness> witnesses;

    friend bool operator==(const FamilyDocument&, const FamilyDocument&) = default;
};

/// Detects the format from the first non-blank character. Throws Error(parse)
/// with a line or field diagnostic on malformed input.
FamilyDocument parse_document(std::string_view text);
FamilyDocument parse_json(std::string_view text);
FamilyDocument parse_text(std::string_view text);

inline Family parse_family(std::string_view text) { return parse_document(text).family; }

/// Single-line JSON, keys in schema order, trailing newline.
std::string emit_json(const FamilyDocument& doc);

/// Text form; role and witnesses are not representable and are dropped.
std::string emit_text(const Family& f);

std::string emit(const FamilyDocument& doc, Format format);

inline std::string emit_family(const Family& f) { return emit_json({f, std::nullopt, {}}); }

} // namespace sepsys::io
