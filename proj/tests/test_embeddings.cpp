#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "swr/corpus.hpp"
#include "swr/embeddings.hpp"
#include "swr/error.hpp"

using namespace swr;

namespace {

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name, const std::string& body)
      : path(std::filesystem::temp_directory_path() / ("swr_emb_" + name)) {
    std::ofstream(path) << body;
  }
  ~TempFile() { std::filesystem::remove(path); }
};

std::string load_error_message(const std::filesystem::path& p) {
  try {
    load_embeddings(p);
  } catch (const LoadError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("load with header") {
  TempFile f("header.txt", "2 3\ncat 1 0 0\ndog 0 1 0\n");
  const auto loaded = load_embeddings(f.path);
  CHECK(loaded.table.size() == 2);
  CHECK(loaded.table.dimension() == 3);
  CHECK(loaded.report.had_header);
  CHECK(loaded.report.loaded == 2);

  const std::unordered_set<std::string> only_cat{"cat"};
  const auto filtered = load_embeddings(f.path, &only_cat);
  CHECK(filtered.table.size() == 1);
  CHECK(filtered.table.contains("cat"));
  CHECK_FALSE(filtered.table.contains("dog"));
  CHECK(filtered.report.filtered == 1);
}

TEST_CASE("load without header infers the dimension") {
  TempFile f("plain.txt", "cat 1 0 0 0.5\r\ndog 0 1 0 2e-1\n\n");
  const auto loaded = load_embeddings(f.path);
  CHECK_FALSE(loaded.report.had_header);
  CHECK(loaded.table.dimension() == 4);
  CHECK((*loaded.table.lookup("dog"))[3] == doctest::Approx(0.2));
}

TEST_CASE("load errors name the line") {
  TempFile mismatch("mismatch.txt", "cat 1 0 0\ndog 0 1\n");
  CHECK_THROWS_AS(load_embeddings(mismatch.path), LoadError);
  CHECK(load_error_message(mismatch.path).find(":2:") != std::string::npos);

  TempFile bad_float("badfloat.txt", "cat 1 0 0\ndog 0 x 0\n");
  CHECK(load_error_message(bad_float.path).find(":2:") != std::string::npos);

  TempFile header_mismatch("headerdim.txt", "1 3\ncat 1 0\n");
  CHECK(load_error_message(header_mismatch.path).find(":2:") != std::string::npos);

  CHECK_THROWS_AS(load_embeddings("/nonexistent/vectors.txt"), LoadError);
  // LoadError is an input error, which the CLI maps to exit code 1.
  CHECK_THROWS_AS(load_embeddings("/nonexistent/vectors.txt"), InputError);
}

TEST_CASE("duplicates: last wins and is counted") {
  TempFile f("dups.txt", "cat 1 0\ndog 0 1\ncat 0 2\n");
  const auto loaded = load_embeddings(f.path);
  CHECK(loaded.table.size() == 2);
  CHECK(loaded.report.duplicates == 1);
  CHECK((*loaded.table.lookup("cat"))[1] == 2.0);
  CHECK(*loaded.table.norm("cat") == 2.0);

  const auto log = nlohmann::json::parse(loaded.report.to_log_line());
  CHECK(log["duplicates"] == 1);
  CHECK(log["loaded"] == 2);
}

TEST_CASE("zero vectors under each policy") {
  TempFile f("zero.txt", "cat 1 0\nnil 0 0\n");
  const auto skip = load_embeddings(f.path, nullptr, OovPolicy::skip);
  CHECK(skip.table.size() == 1);
  CHECK(skip.report.zero_rejected == 1);
  CHECK_FALSE(skip.table.lookup("nil").has_value());
  CHECK_FALSE(skip.table.lookup("unknown").has_value());

  const auto zero = load_embeddings(f.path, nullptr, OovPolicy::zero);
  CHECK(zero.table.size() == 2);
  REQUIRE(zero.table.lookup("unknown").has_value());
  CHECK(zero.table.lookup("unknown")->size() == 2);
  CHECK_FALSE(cosine("cat", "nil", zero.table).has_value());
  CHECK_FALSE(cosine("cat", "unknown", zero.table).has_value());

  EmbeddingTable t(2, OovPolicy::skip);
  const std::vector<double> z{0.0, 0.0};
  CHECK_THROWS_AS(t.insert("z", z), InputError);
  const std::vector<double> wrong{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(t.insert("w", wrong), InputError);
}

TEST_CASE("cosine examples") {
  EmbeddingTable t(3);
  const std::vector<double> x{1, 0, 0}, y{0, 1, 0}, xy{1, 1, 0};
  t.insert("x", x);
  t.insert("y", y);
  t.insert("xy", xy);
  CHECK(*cosine("x", "x", t) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(*cosine("x", "y", t) == 0.0);
  CHECK(std::abs(*cosine("xy", "x", t) - 0.70710678) <= 1e-8);
  CHECK(std::abs(*cosine("xy", "x", t) - 1.0 / std::sqrt(2.0)) <= 1e-12);
  CHECK_FALSE(cosine("x", "missing", t).has_value());
}

TEST_CASE("cosine is symmetric and scale invariant") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + rng() % 40;
    std::vector<double> a(dim), b(dim);
    for (auto& v : a) v = g(rng);
    for (auto& v : b) v = g(rng);
    const double s = scale(rng);
    std::vector<double> as(a);
    for (auto& v : as) v *= s;

    EmbeddingTable t(dim);
    t.insert("a", a);
    t.insert("b", b);
    t.insert("as", as);
    const double ab = *cosine("a", "b", t);
    CHECK(ab == *cosine("b", "a", t));
    CHECK(std::abs(*cosine("as", "b", t) - ab) <= 1e-12);
    CHECK(ab >= -1.0);
    CHECK(ab <= 1.0);
    CHECK(*cosine(std::span<const double>(a), std::span<const double>(b)) == doctest::Approx(ab).epsilon(1e-12));
  }
}

TEST_CASE("representative surface: most frequent, ties by first occurrence") {
  const Document doc = build_document("Runs running. Running runs runs. Growing grows.", FilterConfig::english_default());
  const auto rep = representative_surfaces(doc);
  CHECK(rep.at("run") == "runs");
  CHECK(rep.at("grow") == "growing");
  const auto vocab = document_vocabulary(doc);
  CHECK(vocab.contains("running"));
  CHECK(vocab.contains("grows"));
}
