#include "socv/corpus.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace socv {

namespace fs = std::filesystem;

fs::path corpus_dir() {
#ifdef SOCV_SOURCE_DIR
  return fs::path(SOCV_SOURCE_DIR) / "corpus";
#else
  return fs::path("corpus");
#endif
}

std::vector<CorpusEntry> corpus_manifest(const fs::path& dir) {
  fs::path path = dir / "MANIFEST";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<CorpusEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    CorpusEntry e;
    std::string expect;
    if (!(ls >> e.file)) continue;
    if (!(ls >> e.scenario >> expect))
      throw std::runtime_error(fmt::format("{}:{}: expected `<file> <scenario> <expectation>`", path.string(), lineno));
    if (expect == "exploit") {
      e.expect_exploit = true;
      e.expected_exit = 2;
    } else if (expect != "proven") {
      throw std::runtime_error(fmt::format("{}:{}: unknown expectation `{}`", path.string(), lineno, expect));
    }
    std::string key;
    while (ls >> key) {
      std::string text;
      if (key != "fragment" || !(ls >> std::quoted(text)))
        throw std::runtime_error(fmt::format("{}:{}: expected `fragment \"...\"`", path.string(), lineno));
      e.fragments.push_back(text);
    }
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

std::vector<fs::path> soc_files(const fs::path& dir) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& ent : fs::directory_iterator(dir))
    if (ent.is_regular_file() && ent.path().extension() == ".soc") out.push_back(ent.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<fs::path> corpus_models(const fs::path& dir) { return soc_files(dir); }

std::vector<fs::path> ill_typed_models(const fs::path& dir) { return soc_files(dir / "ill-typed"); }

std::optional<int> expected_error_line(const fs::path& file) {
  std::ifstream in(file);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find("// expect-error") != std::string::npos) return n;
  }
  return std::nullopt;
}

}  // namespace socv
