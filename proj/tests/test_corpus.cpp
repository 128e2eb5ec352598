#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "socv/corpus.hpp"
#include "test_util.hpp"

using namespace socv;

TEST(Corpus, ManifestCoversRequiredEntries) {
  auto entries = corpus_manifest();
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& e : entries) seen.insert({e.file, e.scenario});
  EXPECT_TRUE(seen.count({"mini_tx1_vulnerable.soc", "test_secure_area_unchanged"}));
  EXPECT_TRUE(seen.count({"mini_tx1_fixed.soc", "test_secure_area_unchanged"}));
  for (const char* s : {"base_case", "inductive_step", "invariant_is_useful"})
    EXPECT_TRUE(seen.count({"mini_tx1_fixed.soc", s})) << s;
  EXPECT_TRUE(seen.count({"monitor_secure_access.soc", "nonsecure_never_touches_secure_memory"}));
  EXPECT_TRUE(seen.count({"keystore_invariant.soc", "protected_slots_preserved"}));
  for (const auto& e : entries) {
    EXPECT_EQ(e.expected_exit, e.expect_exploit ? 2 : 0);
    auto m = load_model_file((corpus_dir() / e.file).string());
    EXPECT_NE(m->typed.find_scenario(e.scenario), nullptr) << e.file << " " << e.scenario;
  }
}

TEST(Corpus, VulnerableEntryExpectsAttackFragment) {
  for (const auto& e : corpus_manifest())
    if (e.file == "mini_tx1_vulnerable.soc" && e.scenario == "test_secure_area_unchanged") {
      ASSERT_FALSE(e.fragments.empty());
      EXPECT_EQ(e.fragments.front(), "Setting region3.ATTR to 1");
    }
}

TEST(Corpus, ManifestParsing) {
  auto dir = std::filesystem::temp_directory_path() / ("socv-manifest-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "MANIFEST") << "# header\n\na.soc s1 exploit fragment \"x y\" fragment \"z\"\nb.soc s2 proven # tail\n";
  auto es = corpus_manifest(dir);
  ASSERT_EQ(es.size(), 2u);
  EXPECT_TRUE(es[0].expect_exploit);
  EXPECT_EQ(es[0].fragments, (std::vector<std::string>{"x y", "z"}));
  EXPECT_EQ(es[1].expected_exit, 0);
  std::ofstream(dir / "MANIFEST") << "a.soc s1 maybe\n";
  EXPECT_THROW(corpus_manifest(dir), std::runtime_error);
  std::filesystem::remove_all(dir);
}

TEST(Corpus, RegionSetupMatchesBootConfig) {
  std::ifstream in(corpus_dir() / "mini_tx1_vulnerable.soc");
  std::string src((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  for (const char* line : {"write_config(0, 1, 0xff_ffff);", "write_config(1, 0, 0x100_0000);",
                           "write_config(1, 1, 0x3_ffff_ffff);", "assume(test_addr <= 0x1f_ffffu31);"})
    EXPECT_NE(src.find(line), std::string::npos) << line;
}
