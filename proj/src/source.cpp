#include "socv/source.hpp"

#include <fmt/format.h>

#include <tuple>

namespace socv {

SourceSpan SourceSpan::cover(const SourceSpan& a, const SourceSpan& b) {
  if (a.generated) return b;
  if (b.generated) return a;
  SourceSpan s = a;
  if (std::tie(b.line, b.col) < std::tie(a.line, a.col)) {
    s.line = b.line;
    s.col = b.col;
  }
  if (std::tie(b.end_line, b.end_col) > std::tie(a.end_line, a.end_col)) {
    s.end_line = b.end_line;
    s.end_col = b.end_col;
  }
  return s;
}

bool SourceSpan::contains(const SourceSpan& inner) const {
  return std::tie(line, col) <= std::tie(inner.line, inner.col) &&
         std::tie(inner.end_line, inner.end_col) <= std::tie(end_line, end_col);
}

std::string SourceSpan::location() const {
  return fmt::format("{}:{}:{}", file_name(), line, col);
}

std::string Diagnostic::render() const {
  return fmt::format("{}: {}: {}", span.location(),
                     severity == Severity::Error ? "error" : "note", message);
}

static std::string join_diags(const std::vector<Diagnostic>& diags) {
  std::string out;
  for (const auto& d : diags) {
    if (!out.empty()) out += '\n';
    out += d.render();
  }
  return out;
}

CompileError::CompileError(std::vector<Diagnostic> diags)
    : std::runtime_error(join_diags(diags)), diags_(std::move(diags)) {}

}  // namespace socv
