#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "lcdepth/errors.hpp"
#include "lcdepth/io.hpp"
#include "lcdepth/rng.hpp"
#include "lcdepth/sampling.hpp"

using namespace lcdepth;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "lcdd_io_test") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("double formatting round-trips") {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double x = (rng.next_double() - 0.5) * std::pow(10.0, (i % 13) - 6);
    CHECK(parse_double(format_double(x)) == x);
  }
  CHECK_THROWS_AS(parse_double("1.2.3"), DataError);
  CHECK_THROWS_AS(parse_double(""), DataError);
}

TEST_CASE("csv reading validates shape") {
  TempDir dir;
  write_file(dir.file("ok.csv"), "a,b\n1,2\n3,4\n");
  const CsvTable t = read_csv(dir.file("ok.csv"));
  CHECK(t.header == std::vector<std::string>{"a", "b"});
  CHECK(t.rows.size() == 2);
  CHECK(t.column("b") == 1);
  CHECK_THROWS_AS(t.column("c"), DataError);

  write_file(dir.file("ragged.csv"), "a,b\n1,2,3\n");
  CHECK_THROWS_AS(read_csv(dir.file("ragged.csv")), DataError);
  CHECK_THROWS_AS(read_csv(dir.file("missing.csv")), DataError);
}

TEST_CASE("wholesale-style ingestion") {
  TempDir dir;
  write_file(dir.file("wholesale.csv"),
             "Channel,Region,Fresh,Milk,Grocery,Frozen,Detergents_Paper,Delicassen\n"
             "1,3,10,10,10,10,10,10\n"
             "2,3,100,0,0,0,0,0\n");
  auto recipe = DatasetRecipe::wholesale(dir.file("wholesale.csv"));
  const SphericalSample s = ingest(recipe);
  REQUIRE(s.size() == 2);
  CHECK(s.dim() == 6);
  CHECK(s.label(0) == 1);
  CHECK(s.label(1) == 2);
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(s.point(0)[k] == doctest::Approx(std::sqrt(1.0 / 6.0)));
  }
  CHECK(s.point(1)[0] == doctest::Approx(1.0));

  // A negative spend is rejected with its row number.
  write_file(dir.file("bad.csv"),
             "Channel,Region,Fresh,Milk,Grocery,Frozen,Detergents_Paper,Delicassen\n"
             "1,3,10,10,10,10,10,10\n"
             "2,3,-5,1,1,1,1,1\n");
  recipe.source = dir.file("bad.csv");
  try {
    ingest(recipe);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
}

TEST_CASE("spambase-style ingestion") {
  TempDir dir;
  std::string header;
  for (int i = 1; i <= 58; ++i) {
    header += (i > 1 ? "," : "");
    header += (i <= 48 ? "word_freq_" + std::to_string(i)
                       : (i == 58 ? std::string("spam") : "other_" + std::to_string(i)));
  }
  // Row 1: all 48 percentages zero -> full mass on the complement axis.
  std::string row1;
  for (int i = 1; i <= 57; ++i) row1 += "0,";
  row1 += "0";
  // Row 2: two words at 25% each -> composition (.25, .25, .5) over 49 axes.
  std::string row2 = "25,25";
  for (int i = 3; i <= 57; ++i) row2 += ",0";
  row2 += ",1";
  write_file(dir.file("spam.csv"), header + "\n" + row1 + "\n" + row2 + "\n");

  const SphericalSample s = ingest(DatasetRecipe::spambase(dir.file("spam.csv")));
  REQUIRE(s.size() == 2);
  CHECK(s.dim() == 49);
  CHECK(s.label(0) == 1);
  CHECK(s.label(1) == 2);
  CHECK(s.point(0)[48] == doctest::Approx(1.0));
  for (std::size_t k = 0; k < 48; ++k) CHECK(s.point(0)[k] == 0.0);
  CHECK(s.point(1)[0] == doctest::Approx(0.5));
  CHECK(s.point(1)[1] == doctest::Approx(0.5));
  CHECK(s.point(1)[48] == doctest::Approx(std::sqrt(0.5)));

  // Percentages summing past 100 leave a complement below -1e-9.
  std::string row3 = "90,20";
  for (int i = 3; i <= 57; ++i) row3 += ",0";
  row3 += ",1";
  write_file(dir.file("over.csv"), header + "\n" + row3 + "\n");
  CHECK_THROWS_AS(ingest(DatasetRecipe::spambase(dir.file("over.csv"))), DataError);
}

TEST_CASE("ingest -> serialize -> re-ingest is bitwise") {
  TempDir dir;
  Rng rng(9);
  SphericalSample s;
  for (int i = 0; i < 25; ++i) {
    s.push_back(sample_uniform_direction(5, rng), 1 + (i % 2));
  }
  write_sample_csv(s, dir.file("sample.csv"));
  const SphericalSample back = read_sample_csv(dir.file("sample.csv"));
  REQUIRE(back.size() == s.size());
  REQUIRE(back.dim() == s.dim());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(back.label(i) == s.label(i));
    for (std::size_t k = 0; k < s.dim(); ++k) CHECK(back.point(i)[k] == s.point(i)[k]);
  }

  // And once more through the file for stability.
  write_sample_csv(back, dir.file("sample2.csv"));
  const SphericalSample twice = read_sample_csv(dir.file("sample2.csv"));
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t k = 0; k < s.dim(); ++k) CHECK(twice.point(i)[k] == s.point(i)[k]);
  }

  // The same through a compositional recipe.
  write_file(dir.file("comp.csv"),
             "Channel,Region,Fresh,Milk,Grocery,Frozen,Detergents_Paper,Delicassen\n"
             "1,3,31,17,42,5,93,11\n"
             "2,1,7,13,5,61,2,29\n");
  const SphericalSample embedded = ingest(DatasetRecipe::wholesale(dir.file("comp.csv")));
  write_sample_csv(embedded, dir.file("comp_rt.csv"));
  const SphericalSample embedded_back = read_sample_csv(dir.file("comp_rt.csv"));
  for (std::size_t i = 0; i < embedded.size(); ++i) {
    for (std::size_t k = 0; k < embedded.dim(); ++k) {
      CHECK(embedded_back.point(i)[k] == embedded.point(i)[k]);
    }
  }
}

TEST_CASE("atomic writes leave no partial file") {
  TempDir dir;
  const std::string target = dir.file("nested/dir/out.txt");
  atomic_write_text(target, "payload");
  std::ifstream in(target);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "payload");
  CHECK_FALSE(fs::exists(target + ".tmp"));
}

TEST_CASE("generic recipe with auto label mapping") {
  TempDir dir;
  write_file(dir.file("generic.csv"),
             "f1,f2,f3,grp\n"
             "1,2,3,yes\n"
             "3,2,1,no\n"
             "2,2,2,yes\n");
  DatasetRecipe recipe;
  recipe.source = dir.file("generic.csv");
  recipe.feature_columns = {"f1", "f2", "f3"};
  recipe.label_column = "grp";
  recipe.preprocessing = Preprocess::SqrtCompositional;
  const SphericalSample s = ingest(recipe);
  REQUIRE(s.size() == 3);
  CHECK(s.label(0) == 2);  // sorted distinct values: no -> 1, yes -> 2
  CHECK(s.label(1) == 1);
}
