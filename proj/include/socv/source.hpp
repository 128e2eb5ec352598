#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace socv {

// A region of a source file. Lines and columns are 1-based; `end_col` is
// one past the last character. Nodes created by the toolchain itself (not
// read from a file) carry `generated = true`.
struct SourceSpan {
  std::shared_ptr<const std::string> file;
  std::uint32_t line = 0;
  std::uint32_t col = 0;
  std::uint32_t end_line = 0;
  std::uint32_t end_col = 0;
  bool generated = false;

  static SourceSpan synthetic(std::shared_ptr<const std::string> file = nullptr) {
    SourceSpan s;
    s.file = std::move(file);
    s.generated = true;
    return s;
  }

  std::string file_name() const { return file ? *file : std::string("<input>"); }

  // Smallest span covering both.
  static SourceSpan cover(const SourceSpan& a, const SourceSpan& b);

  // True when `inner` lies within this span.
  bool contains(const SourceSpan& inner) const;

  // `file:line:col`
  std::string location() const;
};

enum class Severity { Error, Note };

struct Diagnostic {
  SourceSpan span;
  std::string message;
  Severity severity = Severity::Error;

  // `file:line:col: error: <message>`
  std::string render() const;
};

// Raised by any phase that stops on the first (lexer/parser) or collected
// (type checker, elaboration) errors.
class CompileError : public std::runtime_error {
 public:
  explicit CompileError(std::vector<Diagnostic> diags);
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

 private:
  std::vector<Diagnostic> diags_;
};

}  // namespace socv
