#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ginv/errors.hpp"
#include "ginv/matrix.hpp"

namespace ginv {

/// Largest matrix dimension accepted from input documents.
inline constexpr std::size_t kMaxDimension = 16;

/// A field plus named matrices over it, as read from JSON:
///   {"field": "Q" | {"GF": p}, "matrices": {"name": [[entry, ...], ...]}}
/// Rational entries are strings "int" or "int/int"; GF(p) entries are
/// integers (or integer strings) reduced mod p.
struct InputDocument {
  Field field;
  std::map<std::string, Matrix> matrices;

  /// Throws InputError naming the missing matrix.
  const Matrix& at(const std::string& name) const;
  friend bool operator==(const InputDocument&, const InputDocument&) = default;
};

/// Strict parse: unknown keys, malformed entries and bad field descriptors
/// raise InputError with a message naming the offending key or entry.
InputDocument parse_input(std::string_view text);

nlohmann::json field_to_json(Field field);
nlohmann::json matrix_to_json(const Matrix& m);
nlohmann::json document_to_json(const InputDocument& doc);
/// Canonical serialization (sorted keys, two-space indent, trailing newline).
std::string serialize(const InputDocument& doc);

/// Parses "Q", "GF(7)", "GF7" or "7".
Field parse_field_name(std::string_view name);

}  // namespace ginv
