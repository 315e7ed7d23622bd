#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "cartan/operators.hpp"

namespace cartan::cli {

using nlohmann::json;

/// Input problem attributable to a line of the source document.
class InputError : public std::runtime_error {
 public:
  InputError(std::string file, int line, std::string pointer,
             const std::string& message);

  int line() const noexcept { return line_; }
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  int line_;
  std::string pointer_;
};

// Line numbers of every value in a JSON document, keyed by JSON pointer
// ("" for the root, "/systems/0/state" and so on).
class SourceMap {
 public:
  SourceMap() = default;
  explicit SourceMap(std::string_view text);

  /// Line of the value at `pointer`, falling back to its closest ancestor.
  int line_of(std::string pointer) const;

 private:
  std::map<std::string, int> lines_;
};

struct Document {
  std::string file;
  json value;
  SourceMap map;

  [[noreturn]] void fail(const std::string& pointer,
                         const std::string& message) const;
};

/// Reads and parses a JSON file. Syntax errors become InputError with the
/// line of the offending byte.
Document load_document(const std::string& path);
Document parse_document(std::string text, std::string file);

json to_json(Complex z);
json to_json(const Mat2& m);
json to_json(const Mat4& m);
json to_json(const Bra2& v);
json to_json(const SectorOperator& op);

Complex complex_from(const Document& doc, const json& v,
                     const std::string& pointer);
Mat2 mat2_from(const Document& doc, const json& v, const std::string& pointer);
Mat4 mat4_from(const Document& doc, const json& v, const std::string& pointer);

}  // namespace cartan::cli
