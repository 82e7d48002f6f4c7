#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "support/fixtures.hpp"
#include "swr/corpus.hpp"
#include "swr/diversity.hpp"
#include "swr/embeddings.hpp"
#include "swr/error.hpp"

using namespace swr;
using namespace fixture;

TEST_CASE("bag masses normalize and accumulate") {
  SentenceBag bag;
  const std::vector<double> v{1, 0}, w{0, 1};
  bag.add("a", v);
  bag.add("b", w);
  bag.add("a", v);
  bag.normalize();
  CHECK(bag.size() == 2);
  CHECK(bag.mass()[0] == doctest::Approx(2.0 / 3.0));
  CHECK(std::accumulate(bag.mass().begin(), bag.mass().end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sentence bags drop unresolvable stems") {
  const Document doc = build_document("Markets rallied strongly. Nothing known here.", FilterConfig::english_default());
  EmbeddingTable t(2);
  const std::vector<double> a{1, 0}, b{0, 1};
  t.insert("markets", a);
  t.insert("rallied", b);
  const auto bags = sentence_bags(doc, t);
  REQUIRE(bags.size() == 2);
  CHECK(bags[0].size() == 2);
  CHECK(bags[0].mass()[0] == 0.5);
  CHECK(bags[1].empty());
}

TEST_CASE("relaxed WMD basics") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = to_bag(random_int_bag(rng, 4));
    const auto b = to_bag(random_int_bag(rng, 4));
    CHECK(relaxed_wmd(a, a) == 0.0);
    CHECK(relaxed_wmd(a, b) == relaxed_wmd(b, a));
    CHECK(relaxed_wmd(a, b) >= 0.0);
  }
  CHECK_THROWS_AS(relaxed_wmd(SentenceBag{}, to_bag(random_int_bag(rng, 2))), InputError);
}

TEST_CASE("two 2-stem bags with hand-placed vectors") {
  // a: {(0,0,0), (4,0,0)}, b: {(0,1,0), (4,2,0)}; nearest neighbours pair
  // them off one to one, which is a feasible plan. Exact cost (1 + 2) / 2.
  oracle::IntBag a{{{0, 0, 0}, {4, 0, 0}}, {1, 1}};
  oracle::IntBag b{{{0, 1, 0}, {4, 2, 0}}, {1, 1}};
  CHECK(oracle::exact_wmd(a, b) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(oracle::nearest_plan_feasible(a, b));
  CHECK(relaxed_wmd(to_bag(a), to_bag(b)) == doctest::Approx(1.5).epsilon(1e-12));

  // Both stems of c crowd onto the same stem of d and vice versa, so
  // neither relaxation is a feasible plan and the bound is strict.
  oracle::IntBag c{{{0, 0, 0}, {0.1, 0, 0}}, {1, 1}};
  oracle::IntBag d{{{0.2, 0, 0}, {5, 0, 0}}, {1, 1}};
  CHECK(oracle::exact_wmd(c, d) == doctest::Approx(2.55).epsilon(1e-12));
  CHECK(relaxed_wmd(to_bag(c), to_bag(d)) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("relaxed WMD is a lower bound on the exact transport cost") {
  std::mt19937_64 rng(97);
  std::size_t tight = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const oracle::IntBag a = random_int_bag(rng, 4);
    oracle::IntBag b;
    if (trial % 4 == 0) {
      // Small perturbation of a: nearest neighbours map one to one.
      b = a;
      std::uniform_real_distribution<double> eps(-0.01, 0.01);
      for (auto& v : b.vectors) {
        for (double& x : v) x += eps(rng);
      }
    } else {
      b = random_int_bag(rng, 4);
    }
    const double rwmd = relaxed_wmd(to_bag(a), to_bag(b));
    const double exact = oracle::exact_wmd(a, b);
    CAPTURE(trial);
    CHECK(rwmd <= exact + 1e-9);
    if (oracle::nearest_plan_feasible(a, b) || oracle::nearest_plan_feasible(b, a)) {
      CHECK(std::abs(rwmd - exact) <= 1e-9);
      ++tight;
    }
  }
  CHECK(tight >= 50);
}

TEST_CASE("degenerate sentences are placed far away") {
  std::vector<SentenceBag> bags(3);
  const std::vector<double> x{0, 0}, y{3, 4};
  bags[0].add("x", x);
  bags[0].normalize();
  bags[2].add("y", y);
  bags[2].normalize();
  const auto d = sentence_distances(bags);
  CHECK(d.degenerate_count == 1);
  CHECK(d.degenerate[1]);
  CHECK(d.distance(0, 2) == doctest::Approx(5.0));
  CHECK(d.distance(0, 1) == doctest::Approx(6.0));
  CHECK(d.distance(1, 2) == doctest::Approx(6.0));
  CHECK(d.distance(1, 1) == 0.0);
}

TEST_CASE("affinity values and monotonicity") {
  CHECK(affinity(0.0) == 1.0);
  CHECK(std::abs(affinity(1.0) - 0.367879) <= 1e-6);
  CHECK(std::abs(affinity(2.0) - 0.018316) <= 1e-6);
  CHECK(affinity(1.0, 2.0) == doctest::Approx(std::exp(-2.0)));
  for (double d = 0.0; d < 5.0; d += 0.125) CHECK(affinity(d) > affinity(d + 0.125));

  SquareMatrix dist(2);
  dist(0, 1) = dist(1, 0) = 1.0;
  const auto a = affinity_matrix(dist);
  CHECK(a(0, 0) == 1.0);
  CHECK(a(0, 1) == a(1, 0));
}

TEST_CASE("cluster count rule") {
  for (std::size_t n = 1; n <= 200; ++n) {
    const std::size_t expected = std::max<std::size_t>(1, std::min<std::size_t>((3 * n) / 10, 8));
    CHECK(cluster_count(n) == expected);
  }
  CHECK(cluster_count(10) == 3);
  CHECK(cluster_count(100) == 8);
  CHECK(cluster_count(3) == 1);
}

TEST_CASE("planted partition is recovered for every seed") {
  const SquareMatrix a = planted(5, 0.9, 0.05);
  const std::vector<std::size_t> expected{0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SpectralOptions opts;
    opts.seed = seed;
    const auto c = spectral_cluster(a, 2, opts);
    CHECK(c.c_num == 2);
    CHECK(c.label == expected);
  }
}

TEST_CASE("spectral clustering degenerate cases") {
  SquareMatrix identity(4);
  for (std::size_t i = 0; i < 4; ++i) identity(i, i) = 1.0;
  CHECK(spectral_cluster(identity, 4).label == std::vector<std::size_t>{0, 1, 2, 3});

  SquareMatrix one(1, 1.0);
  const auto single = spectral_cluster(one, 1);
  CHECK(single.label == std::vector<std::size_t>{0});

  // c_num above n still gives singletons.
  CHECK(spectral_cluster(planted(2, 0.9, 0.1), 7).label == std::vector<std::size_t>{0, 1, 2, 3});

  // An isolated row gets its own cluster next to the planted blocks.
  SquareMatrix a(7);
  const SquareMatrix p = planted(3, 0.9, 0.05);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) a(i, j) = p(i, j);
  }
  a(6, 6) = 1.0;
  const auto c = spectral_cluster(a, 2);
  CHECK(c.label == std::vector<std::size_t>{0, 0, 0, 1, 1, 1, 2});
  CHECK(std::set<std::size_t>(c.label.begin(), c.label.end()).size() <= c.c_num);
}

TEST_CASE("clustering is deterministic and labels stay in range") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + rng() % 20;
    SquareMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
      a(i, i) = 1.0;
      for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = u(rng);
    }
    const std::size_t k = cluster_count(n);
    SpectralOptions opts;
    opts.seed = 1234;
    const auto first = spectral_cluster(a, k, opts);
    const auto second = spectral_cluster(a, k, opts);
    CHECK(first.label == second.label);
    CHECK(first.c_num == k);
    for (std::size_t l : first.label) CHECK(l < k);
  }
}

TEST_CASE("Laplacian of a connected affinity graph has a zero eigenvalue") {
  const auto spectrum = laplacian_spectrum(planted(5, 0.9, 0.05));
  REQUIRE(spectrum.size() == 10);
  CHECK(std::abs(spectrum[0]) <= 1e-8);
  CHECK(spectrum[1] > 1e-3);
  for (std::size_t i = 1; i < spectrum.size(); ++i) CHECK(spectrum[i] >= spectrum[i - 1]);
}
