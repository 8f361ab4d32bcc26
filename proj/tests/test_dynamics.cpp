#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "equidecomp/dynamics.hpp"
#include "equidecomp/errors.hpp"
#include "support.hpp"

using namespace equidecomp;

namespace {

KMatching one_path(int k, Coord lo, std::vector<Coord> partner) {
  PathMatching pm;
  pm.lo = lo;
  pm.hi = lo + 2 * static_cast<Coord>(partner.size()) - 1;
  pm.partner = std::move(partner);
  return {k, {pm}};
}

DynamicsError::Kind error_kind(auto&& fn) {
  try {
    fn();
  } catch (const DynamicsError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a DynamicsError";
  return DynamicsError::Kind::InvalidMatching;
}

// Rays straight from the definition: r(x) is the half-line from x through M(x).
bool ray_contains(const KMatching& m, const PathVertex& x, const PathVertex& y) {
  if (x.path != y.path) return false;
  const Coord mx = m.partner(x);
  return mx > x.coord ? y.coord >= x.coord : y.coord <= x.coord;
}

// S(M) by scanning every pair of A-vertices near the windows.
std::set<PathVertex> brute_force_S(const KMatching& m) {
  std::set<PathVertex> out;
  for (std::size_t p = 0; p < m.path_count(); ++p) {
    const Coord lo = m.path(p).lo - 6;
    const Coord hi = m.path(p).hi + 6;
    for (Coord a = lo; a <= hi; a += 2) {
      for (Coord b = lo; b <= hi; b += 2) {
        const PathVertex x{p, a};
        const PathVertex y{p, b};
        const Coord dist = a > b ? a - b : b - a;
        if (dist == 2 && ray_contains(m, x, y) && ray_contains(m, y, x)) out.insert(x);
      }
    }
  }
  return out;
}

std::int64_t brute_force_cost(const KMatching& m) {
  std::int64_t total = 0;
  for (std::size_t p = 0; p < m.path_count(); ++p) {
    for (Coord a = m.path(p).lo - 4; a <= m.path(p).hi + 4; a += 2) {
      const Coord d = m.partner({p, a}) - a;
      total += (d < 0 ? -d : d) - 1;
    }
  }
  return total;
}

// Every B-vertex in the windows is hit exactly once.
bool covers_window_once(const KMatching& m) {
  for (std::size_t p = 0; p < m.path_count(); ++p) {
    std::map<Coord, int> hits;
    for (Coord a = m.path(p).lo; a <= m.path(p).hi; a += 2) ++hits[m.partner({p, a})];
    for (Coord b = m.path(p).lo + 1; b <= m.path(p).hi; b += 2) {
      if (hits[b] != 1) return false;
    }
    if (hits.size() != static_cast<std::size_t>((m.path(p).hi - m.path(p).lo + 1) / 2)) return false;
  }
  return true;
}

const KMatching kSwap = one_path(3, 0, {3, 1});
const KMatching kRotation = one_path(3, 0, {3, 5, 1});

}  // namespace

TEST(KMatching, Validation) {
  EXPECT_EQ(error_kind([] { one_path(4, 0, {1}); }), DynamicsError::Kind::InvalidK);
  EXPECT_EQ(error_kind([] { one_path(-1, 0, {1}); }), DynamicsError::Kind::InvalidK);
  EXPECT_EQ(error_kind([] { one_path(3, 0, {3, 3}); }), DynamicsError::Kind::InvalidMatching);
  EXPECT_EQ(error_kind([] { one_path(1, 0, {3, 1}); }), DynamicsError::Kind::InvalidMatching);
  EXPECT_EQ(error_kind([] { one_path(3, 0, {2, 1}); }), DynamicsError::Kind::InvalidMatching);
  EXPECT_EQ(error_kind([] { one_path(3, 1, {2}); }), DynamicsError::Kind::InvalidMatching);
  // A pair leaving the window would collide with the standard part.
  EXPECT_EQ(error_kind([] { one_path(3, 0, {-1, 3}); }), DynamicsError::Kind::InvalidMatching);
}

TEST(KMatching, PartnerOutsideWindowIsStandard) {
  EXPECT_EQ(kSwap.partner({0, -4}), -3);
  EXPECT_EQ(kSwap.partner({0, 10}), 11);
  EXPECT_EQ(kSwap.partner({0, 1}), 2);  // B-vertex partner
  EXPECT_EQ(kSwap.partner({0, 3}), 0);
  EXPECT_TRUE(KMatching::standard(5, 10, 2).is_standard());
}

TEST(Cost, Examples) {
  EXPECT_EQ(cost(KMatching::standard(3, 20)), 0);
  EXPECT_EQ(cost(kSwap), 2);
  EXPECT_EQ(cost(kRotation), 6);
  EXPECT_EQ(cost(one_path(1, 0, {1, 3, 5})), 0);
}

TEST(Phi, Examples) {
  EXPECT_FALSE(phi(kSwap, {0, 0}, {0, 0}));
  const KMatching standard = KMatching::standard(3, 10);
  EXPECT_FALSE(phi(standard, {0, 2}, {0, 4}));
  EXPECT_TRUE(phi(kSwap, {0, 0}, {0, 2}));
  EXPECT_TRUE(phi(kSwap, {0, 2}, {0, 0}));
}

TEST(ComputeS, Examples) {
  EXPECT_TRUE(compute_S(KMatching::standard(3, 20)).empty());
  EXPECT_EQ(compute_S(kSwap), (std::vector<PathVertex>{{0, 0}, {0, 2}}));
  // Directions +, +, -: only the last two face each other.
  EXPECT_EQ(compute_S(kRotation), (std::vector<PathVertex>{{0, 2}, {0, 4}}));
  const auto s = compute_S(kRotation);
  EXPECT_EQ(std::set<PathVertex>(s.begin(), s.end()), brute_force_S(kRotation));
}

TEST(Improve, SingleSwapBecomesStandard) {
  const ImproveStep step = improve_step(kSwap);
  EXPECT_TRUE(step.next.is_standard());
  EXPECT_EQ(cost(step.next), 0);
  ASSERT_EQ(step.pairs.size(), 1u);
  EXPECT_EQ(step.pairs[0].new_a, 1);
  EXPECT_EQ(step.pairs[0].new_a_prime, 3);
  EXPECT_EQ(error_kind([] { improve(KMatching::standard(3, 8)); }), DynamicsError::Kind::EmptyS);
}

TEST(Dynamics, Examples) {
  const DynamicsResult standard = run_dynamics(KMatching::standard(5, 20), 10);
  EXPECT_EQ(standard.trace.iterations(), 0u);
  const DynamicsResult swap = run_dynamics(kSwap, 10);
  EXPECT_EQ(swap.trace.iterations(), 1u);
  EXPECT_EQ(swap.trace.total_s(), 2);
  EXPECT_EQ(error_kind([] { run_dynamics(kRotation, 0); }), DynamicsError::Kind::IterationCap);
}

TEST(Dynamics, GoldenSeededRun) {
  // Regression value recorded from the implementation itself.
  const KMatching m0 = random_kmatching(200, 7, 2024);
  const DynamicsResult result = run_dynamics(m0, static_cast<std::size_t>(cost(m0)) + 1);
  EXPECT_EQ(cost(m0), 302);
  EXPECT_EQ(result.trace.iterations(), 9u);
  EXPECT_TRUE(result.final.is_standard());
}

TEST(NestedRays, Examples) {
  EXPECT_TRUE(check_nested_rays(KMatching::standard(3, 10)));
  EXPECT_FALSE(check_nested_rays(kSwap));
}

TEST(Extract, Examples) {
  const KMatching standard = KMatching::standard(5, 10);
  const KMatching extracted = extract_matching(standard);
  EXPECT_EQ(extracted.k(), 1);
  EXPECT_TRUE(extracted.is_standard());
  EXPECT_EQ(error_kind([] { extract_matching(kSwap); }), DynamicsError::Kind::SNotEmpty);
}

TEST(RandomKMatching, GeneratorContract) {
  EXPECT_TRUE(random_kmatching(20, 5, 1, 0).is_standard());
  EXPECT_EQ(error_kind([] { random_kmatching(20, 4, 1); }), DynamicsError::Kind::InvalidK);
  EXPECT_EQ(error_kind([] { random_kmatching(4, 5, 1); }), DynamicsError::Kind::InvalidWindow);
  EXPECT_EQ(error_kind([] { random_kmatching(21, 5, 1); }), DynamicsError::Kind::InvalidWindow);
  const KMatching m = random_kmatching(50, 5, 1);
  EXPECT_EQ(m, random_kmatching(50, 5, 1));
  EXPECT_TRUE(matching_problem(5, m.paths()).empty());
  EXPECT_TRUE(covers_window_once(m));
  EXPECT_FALSE(m.is_standard());
}

TEST(Bridge, KBound) {
  EXPECT_EQ(bridge_k_bound(0), 1);
  EXPECT_EQ(bridge_k_bound(1), 3);
  EXPECT_EQ(bridge_k_bound(4), 9);
}

TEST(Bridge, AssignmentsOnAChart) {
  const SchreierGraph graph(AlphaContext::make(AlphaSpec{}));
  const ComponentChart chart =
      ComponentChart::build(graph, AlgebraicPoint::rational(testing_support::rational(1, 2)), 30);
  EXPECT_EQ(chart.vertex(0), (GVertex{Side::I, AlgebraicPoint::rational(testing_support::rational(1, 2))}));
  EXPECT_EQ(chart.vertex(1).side, Side::J);

  // The one-step assignment reproduces the standard matching.
  const KMatching standard = KMatching::standard(1, 20);
  const auto pieces = assignment_for(chart, standard);
  const KMatching rebuilt = kmatching_from_assignment(chart, pieces);
  EXPECT_TRUE(rebuilt.is_standard());

  // Swapping the targets of two neighbouring blocks.
  const KMatching swapped = one_path(3, 0, {3, 1, 7, 5});
  const KMatching from_pieces = kmatching_from_assignment(chart, assignment_for(chart, swapped));
  EXPECT_EQ(from_pieces.path(0).partner, swapped.path(0).partner);
  EXPECT_GT(cost(from_pieces), 0);
  EXPECT_TRUE(run_dynamics(from_pieces, 100).final.is_standard());

  // Overlapping pieces.
  std::vector<AssignmentPiece> overlap{pieces.front(), pieces.front()};
  EXPECT_EQ(error_kind([&] { kmatching_from_assignment(chart, overlap); }), DynamicsError::Kind::NotAMatching);
}

TEST(DynamicsProperty, ComputeSMatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const int k = 2 * static_cast<int>(uniform_between(rng, 0, 4)) + 1;
    const Coord window = 2 * uniform_between(rng, (k + 1) / 2, 20);
    const std::size_t transpositions = uniform_below(rng, static_cast<std::uint64_t>(window) + 1);
    const std::size_t paths = 1 + uniform_below(rng, 2);
    const KMatching m = random_kmatching(window, k, seed, transpositions, paths);
    const auto s = compute_S(m);
    EXPECT_EQ(std::set<PathVertex>(s.begin(), s.end()), brute_force_S(m)) << "seed " << seed;
    EXPECT_EQ(cost(m), brute_force_cost(m));
  }
}

TEST(DynamicsProperty, ImproveStepsKeepTheClaims) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int k = 3 + 2 * static_cast<int>(seed % 4);
    KMatching m = random_kmatching(60, k, derive_seed(31, seed));
    const std::int64_t c0 = cost(m);
    std::int64_t total_s = 0;
    std::size_t iterations = 0;
    while (true) {
      const auto s = compute_S(m);
      if (s.empty()) break;
      total_s += static_cast<std::int64_t>(s.size());
      const ImproveStep step = improve_step(m);
      EXPECT_TRUE(matching_problem(k, step.next.paths()).empty());
      EXPECT_TRUE(covers_window_once(step.next));
      EXPECT_LE(cost(step.next), cost(m) - static_cast<std::int64_t>(s.size()));
      EXPECT_EQ(step.pairs.size() * 2, s.size());
      for (const RewiredPair& pair : step.pairs) {
        const auto dist = [](Coord x, Coord y) { return x > y ? x - y : y - x; };
        EXPECT_LE(dist(pair.a.coord, pair.new_a) + dist(pair.a_prime.coord, pair.new_a_prime),
                  dist(pair.a.coord, pair.old_a) + dist(pair.a_prime.coord, pair.old_a_prime) - 2);
        EXPECT_EQ(step.next.partner(pair.a), m.partner(pair.a_prime));
      }
      m = step.next;
      ++iterations;
    }
    EXPECT_LE(static_cast<std::int64_t>(iterations), c0);
    EXPECT_LE(total_s, c0);
    EXPECT_TRUE(check_nested_rays(m));
    EXPECT_TRUE(m.is_standard());
    EXPECT_TRUE(extract_matching(m).is_standard());
  }
}
