#include "json_io.hpp"

#include <fstream>
#include <sstream>

namespace cartan::cli {

InputError::InputError(std::string file, int line, std::string pointer,
                       const std::string& message)
    : std::runtime_error(file + ":" + std::to_string(line) + ": " +
                         (pointer.empty() ? std::string() : pointer + ": ") +
                         message),
      line_(line),
      pointer_(std::move(pointer)) {}

namespace {

std::string escape_token(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

// Walks the raw text just far enough to attribute a line to each value. It
// assumes the document is well formed; nlohmann reports syntax errors.
class Scanner {
 public:
  Scanner(std::string_view text, std::map<std::string, int>& out)
      : text_(text), out_(out) {}

  void run() {
    skip_ws();
    value("");
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
      } else if (c != ' ' && c != '\t' && c != '\r') {
        break;
      }
      ++pos_;
    }
  }

  bool at(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  std::string string_token() {
    std::string s;
    ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
        s += text_[pos_ + 1];
        pos_ += 2;
        continue;
      }
      s += text_[pos_++];
    }
    ++pos_;
    return s;
  }

  void value(const std::string& pointer) {
    if (pos_ >= text_.size()) return;
    out_.emplace(pointer, line_);
    const char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      skip_ws();
      while (pos_ < text_.size() && !at('}')) {
        if (!at('"')) return;
        const std::string key = string_token();
        skip_ws();
        if (!at(':')) return;
        ++pos_;
        skip_ws();
        value(pointer + "/" + escape_token(key));
        skip_ws();
        if (at(',')) {
          ++pos_;
          skip_ws();
        }
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      skip_ws();
      int index = 0;
      while (pos_ < text_.size() && !at(']')) {
        value(pointer + "/" + std::to_string(index++));
        skip_ws();
        if (at(',')) {
          ++pos_;
          skip_ws();
        }
      }
      ++pos_;
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']' &&
             text_[pos_] != '}' && text_[pos_] != '\n' && text_[pos_] != ' ') {
        ++pos_;
      }
    }
  }

  std::string_view text_;
  std::map<std::string, int>& out_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

int line_at_byte(std::string_view text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

}  // namespace

SourceMap::SourceMap(std::string_view text) { Scanner(text, lines_).run(); }

int SourceMap::line_of(std::string pointer) const {
  for (;;) {
    const auto it = lines_.find(pointer);
    if (it != lines_.end()) return it->second;
    if (pointer.empty()) return 1;
    const auto slash = pointer.rfind('/');
    pointer = slash == std::string::npos ? "" : pointer.substr(0, slash);
  }
}

void Document::fail(const std::string& pointer,
                    const std::string& message) const {
  throw InputError(file, map.line_of(pointer), pointer, message);
}

Document parse_document(std::string text, std::string file) {
  Document doc;
  doc.file = std::move(file);
  try {
    doc.value = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    if (const auto p = what.find("syntax error"); p != std::string::npos) {
      what = what.substr(p);
    }
    throw InputError(doc.file, line_at_byte(text, e.byte), "", what);
  }
  doc.map = SourceMap(text);
  return doc;
}

Document load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, 0, "", "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path);
}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

namespace {

template <typename M>
json matrix_json(const M& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename M>
M matrix_from(const Document& doc, const json& v, const std::string& pointer) {
  constexpr int n = M::RowsAtCompileTime;
  if (!v.is_array() || v.size() != n) {
    doc.fail(pointer, "expected a " + std::to_string(n) + "x" +
                          std::to_string(n) + " matrix of [re, im] pairs");
  }
  M m;
  for (int i = 0; i < n; ++i) {
    const std::string rp = pointer + "/" + std::to_string(i);
    if (!v[i].is_array() || v[i].size() != n) {
      doc.fail(rp, "expected a row of " + std::to_string(n) + " entries");
    }
    for (int j = 0; j < n; ++j) {
      m(i, j) = complex_from(doc, v[i][j], rp + "/" + std::to_string(j));
    }
  }
  return m;
}

}  // namespace

json to_json(const Mat2& m) { return matrix_json(m); }
json to_json(const Mat4& m) { return matrix_json(m); }

json to_json(const Bra2& v) {
  return json::array({to_json(v(0)), to_json(v(1))});
}

json to_json(const SectorOperator& op) {
  return json{{"domain", std::string(to_string(op.domain()))},
              {"range", std::string(to_string(op.range()))},
              {"entries", to_json(op.entries())}};
}

Complex complex_from(const Document& doc, const json& v,
                     const std::string& pointer) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
      !v[1].is_number()) {
    doc.fail(pointer, "expected a complex number as [re, im]");
  }
  const Complex z{v[0].get<double>(), v[1].get<double>()};
  if (!is_finite(z)) doc.fail(pointer, "complex number is not finite");
  return z;
}

Mat2 mat2_from(const Document& doc, const json& v, const std::string& pointer) {
  return matrix_from<Mat2>(doc, v, pointer);
}

Mat4 mat4_from(const Document& doc, const json& v, const std::string& pointer) {
  return matrix_from<Mat4>(doc, v, pointer);
}

}  // namespace cartan::cli
