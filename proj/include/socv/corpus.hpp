#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace socv {

struct CorpusEntry {
  std::string file;  // relative to the corpus directory
  std::string scenario;
  bool expect_exploit = false;
  int expected_exit = 0;  // verify exit code: 2 for an exploit, 0 for a proof
  std::vector<std::string> fragments;  // must appear in the counterexample transcript
};

// Directory holding the bundled models.
std::filesystem::path corpus_dir();

// Reads `<dir>/MANIFEST`. Lines are `<file> <scenario> <exploit|proven>`
// optionally followed by `fragment "<text>"` items; `#` starts a comment.
// Throws std::runtime_error on malformed lines.
std::vector<CorpusEntry> corpus_manifest(const std::filesystem::path& dir = corpus_dir());

// Well-typed `.soc` files directly under `dir`, sorted.
std::vector<std::filesystem::path> corpus_models(const std::filesystem::path& dir = corpus_dir());

// Files under `<dir>/ill-typed`, sorted.
std::vector<std::filesystem::path> ill_typed_models(const std::filesystem::path& dir = corpus_dir());

// 1-based line carrying the `// expect-error` marker, if any.
std::optional<int> expected_error_line(const std::filesystem::path& file);

}  // namespace socv
