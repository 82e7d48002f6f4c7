#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "swr/error.hpp"
#include "swr/rouge.hpp"

using namespace swr::rouge;

namespace {

std::vector<std::string> toks(const std::string& s) { return tokenize(s, {.stem = false}); }

}  // namespace

TEST_CASE("hand-counted examples") {
  const auto cand = toks("the cat sat");
  const std::vector<std::vector<std::string>> ref{toks("the cat ate")};
  CHECK(rouge_n(cand, ref, 1).value == 2.0 / 3.0);
  CHECK(rouge_n(cand, ref, 2).value == 0.5);
  CHECK(rouge_su4(toks("a b"), {toks("a c b")}).value == 0.5);
  CHECK(rouge_su4(toks("x y"), {toks("p q r")}).value == 0.0);
  CHECK(rouge_n(toks("x y"), {toks("p q r")}, 1).value == 0.0);
}

TEST_CASE("identical texts score one") {
  const std::string text = "Stocks fell sharply as the central bank raised rates again.";
  const auto report = evaluate(text, {text});
  CHECK(report.aggregate.r1 == 1.0);
  CHECK(report.aggregate.r2 == 1.0);
  CHECK(report.aggregate.rsu4 == 1.0);
  CHECK(rouge_su4(toks("a b c"), {toks("a b c")}).value == 1.0);
}

TEST_CASE("SU4 counts gaps of at most four tokens") {
  // Reference "a 1 2 3 4 b": a..b has four tokens in between, so (a,b) counts.
  const auto ref = toks("a w x y z b");
  const auto near = rouge_su4(toks("a b"), {ref});
  // Units: 6 unigrams + skip pairs: 5 + 4 + 3 + 2 + 1 = 15; total 21.
  CHECK(near.value == doctest::Approx(3.0 / 21.0));
  const auto far_ref = toks("a v w x y z b");
  const auto far = rouge_su4(toks("a b"), {far_ref});
  // 7 unigrams; pairs within distance 5: 5+5+4+3+2+1 = 20; total 27; (a,b) at distance 6 excluded.
  CHECK(far.value == doctest::Approx(2.0 / 27.0));
}

TEST_CASE("clipping caps repeated matches") {
  const std::vector<std::vector<std::string>> ref{toks("cat dog bird")};
  CHECK(rouge_n(toks("cat cat cat cat"), ref, 1).value == doctest::Approx(1.0 / 3.0));
  const std::vector<std::vector<std::string>> ref2{toks("cat cat dog")};
  CHECK(rouge_n(toks("cat cat cat"), ref2, 1).value == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("multi-reference aggregation") {
  const auto cand = toks("the cat sat");
  const std::vector<std::vector<std::string>> refs{toks("the cat ate"), toks("a dog ran")};
  const auto avg = rouge_n(cand, refs, 1, Aggregation::average);
  const auto mx = rouge_n(cand, refs, 1, Aggregation::max);
  CHECK(avg.per_reference.size() == 2);
  CHECK(std::abs(avg.value - (avg.per_reference[0] + avg.per_reference[1]) / 2) <= 1e-12);
  CHECK(mx.value == doctest::Approx(2.0 / 3.0));
  CHECK(parse_aggregation("max") == Aggregation::max);
  CHECK_THROWS_AS(parse_aggregation("median"), swr::InputError);
}

TEST_CASE("short references score zero with a warning") {
  const auto r = rouge_n(toks("one two"), {toks("one")}, 2);
  CHECK(r.value == 0.0);
  CHECK(r.short_references == 1);
  const auto report = evaluate("one two", {"one"});
  CHECK(report.warnings == 1);
  CHECK(report.aggregate.r1 == 1.0);
}

TEST_CASE("tokenizer splits on non-alphanumerics and stems by default") {
  CHECK(tokenize("It's U.S.-based, 3rd place!") ==
        std::vector<std::string>{"it", "s", "u", "s", "base", "3rd", "place"});
  CHECK(tokenize("Running runs", {.stem = false}) == std::vector<std::string>{"running", "runs"});
  CHECK(tokenize("Running runs") == std::vector<std::string>{"run", "run"});
  const auto stemmed = evaluate("the cats were running", {"a cat runs"});
  CHECK(stemmed.aggregate.r1 == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("range and monotonicity on random texts") {
  std::mt19937 rng(77);
  const std::vector<std::string> vocab{"a", "b", "c", "d", "e", "f", "g"};
  auto random_tokens = [&](std::size_t len) {
    std::vector<std::string> t;
    for (std::size_t i = 0; i < len; ++i) t.push_back(vocab[rng() % vocab.size()]);
    return t;
  };
  for (int trial = 0; trial < 300; ++trial) {
    auto cand = random_tokens(rng() % 12);
    const auto ref = random_tokens(2 + rng() % 12);
    const std::vector<std::vector<std::string>> refs{ref};
    for (std::size_t n : {1u, 2u}) {
      const double before = rouge_n(cand, refs, n).value;
      CHECK(before >= 0.0);
      CHECK(before <= 1.0);
      // Append one reference n-gram.
      const std::size_t at = rng() % (ref.size() - n + 1);
      auto extended = cand;
      extended.insert(extended.end(), ref.begin() + static_cast<long>(at), ref.begin() + static_cast<long>(at + n));
      CHECK(rouge_n(extended, refs, n).value >= before);
      CHECK(rouge_n(ref, refs, n).value == 1.0);
    }
    const double su = rouge_su4(cand, refs).value;
    CHECK(su >= 0.0);
    CHECK(su <= 1.0);
    CHECK(rouge_su4(ref, refs).value == 1.0);
  }
  CHECK_THROWS_AS(rouge_n({}, {}, 0), swr::InputError);
}
