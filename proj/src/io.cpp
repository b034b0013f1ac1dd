#include "ginv/io.hpp"

#include <cctype>
#include <vector>

namespace ginv {

using nlohmann::json;

namespace {

std::string entry_name(const std::string& matrix, std::size_t i, std::size_t j) {
  return matrix + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

bool is_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

Field parse_field(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "Q") return Field::rationals();
    throw InputError("unknown field descriptor \"" + j.get<std::string>() + "\" (expected \"Q\" or {\"GF\": p})");
  }
  if (j.is_object()) {
    for (const auto& [key, _] : j.items()) {
      if (key != "GF") throw InputError("unknown key \"" + key + "\" in field descriptor");
    }
    if (!j.contains("GF") || !j["GF"].is_number_integer()) {
      throw InputError("field descriptor must be {\"GF\": <prime integer>}");
    }
    if (j["GF"].is_number_unsigned() || j["GF"].get<std::int64_t>() > 0) {
      const auto p = j["GF"].get<std::uint64_t>();
      try {
        return Field::prime(p);
      } catch (const FieldError& e) {
        throw InputError(e.what());
      }
    }
    throw InputError(j["GF"].dump() + " is not prime");
  }
  throw InputError("field descriptor must be \"Q\" or {\"GF\": p}");
}

Scalar parse_entry(Field field, const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    const mpz_class v = j.is_number_unsigned() ? mpz_class(std::to_string(j.get<std::uint64_t>()))
                                               : mpz_class(std::to_string(j.get<std::int64_t>()));
    return Scalar::from_mpz(field, v);
  }
  if (!j.is_string()) throw InputError("entry " + where + " must be an integer or a string");
  const std::string text = j.get<std::string>();
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_text(text)) throw InputError("bad fraction syntax at " + where + ": \"" + text + "\"");
    return Scalar::from_mpz(field, parse_integer(text));
  }
  if (!field.is_rational()) {
    throw InputError("entry " + where + " must be an integer over " + field.name());
  }
  const std::string_view num(text.data(), slash);
  const std::string_view den(text.data() + slash + 1, text.size() - slash - 1);
  if (!is_integer_text(num) || !is_integer_text(den)) {
    throw InputError("bad fraction syntax at " + where + ": \"" + text + "\"");
  }
  const mpz_class d = parse_integer(den);
  if (d == 0) throw InputError("zero denominator at " + where);
  return Scalar::from_fraction(field, parse_integer(num), d);
}

Matrix parse_matrix(Field field, const std::string& name, const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix " + name + " must be a non-empty array of rows");
  std::vector<std::vector<Scalar>> rows;
  std::size_t width = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.empty()) throw InputError("row " + std::to_string(i) + " of " + name + " must be a non-empty array");
    if (i == 0) width = row.size();
    if (row.size() != width) throw InputError("matrix " + name + " has ragged rows");
    auto& out = rows.emplace_back();
    for (std::size_t c = 0; c < row.size(); ++c) out.push_back(parse_entry(field, row[c], entry_name(name, i, c)));
  }
  if (rows.size() > kMaxDimension || width > kMaxDimension) {
    throw InputError("matrix " + name + " exceeds the dimension cap " + std::to_string(kMaxDimension));
  }
  return Matrix::from_rows(field, rows);
}

}  // namespace

const Matrix& InputDocument::at(const std::string& name) const {
  const auto it = matrices.find(name);
  if (it == matrices.end()) throw InputError("no matrix named \"" + name + "\" in the input document");
  return it->second;
}

InputDocument parse_input(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw InputError("input document must be a JSON object");
  for (const auto& [key, _] : root.items()) {
    if (key != "field" && key != "matrices") throw InputError("unknown key \"" + key + "\"");
  }
  if (!root.contains("field")) throw InputError("missing key \"field\"");
  if (!root.contains("matrices") || !root["matrices"].is_object()) {
    throw InputError("missing or non-object key \"matrices\"");
  }
  InputDocument doc;
  doc.field = parse_field(root["field"]);
  for (const auto& [name, grid] : root["matrices"].items()) {
    doc.matrices.emplace(name, parse_matrix(doc.field, name, grid));
  }
  return doc;
}

json field_to_json(Field field) {
  if (field.is_rational()) return "Q";
  return json{{"GF", field.modulus()}};
}

json matrix_to_json(const Matrix& m) {
  json grid = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m.field().is_rational()) {
        row.push_back(m(i, j).to_string());
      } else {
        row.push_back(m(i, j).residue());
      }
    }
    grid.push_back(std::move(row));
  }
  return grid;
}

json document_to_json(const InputDocument& doc) {
  json matrices = json::object();
  for (const auto& [name, m] : doc.matrices) matrices[name] = matrix_to_json(m);
  return json{{"field", field_to_json(doc.field)}, {"matrices", std::move(matrices)}};
}

std::string serialize(const InputDocument& doc) { return document_to_json(doc).dump(2) + "\n"; }

Field parse_field_name(std::string_view name) {
  if (name == "Q") return Field::rationals();
  std::string_view digits = name;
  if (digits.rfind("GF(", 0) == 0 && digits.size() > 4 && digits.back() == ')') {
    digits = digits.substr(3, digits.size() - 4);
  } else if (digits.rfind("GF", 0) == 0) {
    digits = digits.substr(2);
  }
  if (!is_integer_text(digits) || digits.front() == '-' || digits.size() > 12) {
    throw InputError("unknown field \"" + std::string(name) + "\" (expected Q or GF(p))");
  }
  try {
    return Field::prime(std::stoull(std::string(digits)));
  } catch (const FieldError& e) {
    throw InputError(e.what());
  }
}

}  // namespace ginv
