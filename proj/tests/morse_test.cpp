#include <doctest.h>

#include <algorithm>
#include <random>

#include "stablefold/braid.hpp"
#include "stablefold/morse.hpp"
#include "support.hpp"

using namespace stablefold;

namespace {

int count_events(const SectorTrace& t, EventKind kind) {
  return static_cast<int>(
      std::count_if(t.events.begin(), t.events.end(), [kind](const TraceEvent& e) { return e.kind == kind; }));
}

// Components of the sublevel set: minima below minus merges below.
int sublevel_components(const MergeTree& t, const Rational& level) {
  int count = 0;
  for (int i = 0; i < t.node_count(); ++i) {
    if (t.node(i).height < level) count += t.is_minimum(i) ? 1 : -1;
  }
  return count;
}

// Dense floating-point sampling of the height difference, independent of
// the exact crossing detector.
int sampled_crossings(const LevelCurve& a, const LevelCurve& b) {
  const auto height = [](const LevelCurve& c, double t) {
    for (std::size_t i = 1; i < c.points.size(); ++i) {
      const double t0 = to_double(c.points[i - 1].time);
      const double t1 = to_double(c.points[i].time);
      if (t <= t1) {
        const double h0 = to_double(c.points[i - 1].height);
        const double h1 = to_double(c.points[i].height);
        return t1 == t0 ? h1 : h0 + (h1 - h0) * (t - t0) / (t1 - t0);
      }
    }
    return to_double(c.points.back().height);
  };
  int crossings = 0;
  int previous = 0;
  constexpr int samples = 4003;
  for (int k = 0; k <= samples; ++k) {
    const double t = static_cast<double>(k) / samples;
    const double d = height(a, t) - height(b, t);
    const int sign = d > 1e-12 ? 1 : (d < -1e-12 ? -1 : 0);
    if (sign == 0) continue;
    if (previous != 0 && sign != previous) ++crossings;
    previous = sign;
  }
  return crossings;
}

struct Tally {
  int minima = 0;
  int saddles = 0;
  int mixed = 0;
};

Tally sampled_tally(const std::vector<LevelCurve>& curves) {
  Tally t;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      const int c = sampled_crossings(curves[i], curves[j]);
      const bool mi = curves[i].kind == CriticalKind::Minimum;
      const bool mj = curves[j].kind == CriticalKind::Minimum;
      (mi && mj ? t.minima : (!mi && !mj ? t.saddles : t.mixed)) += c;
    }
  }
  return t;
}

MorseErrc morse_error(const auto& f) {
  try {
    f();
  } catch (const MorseError& e) {
    return e.code();
  }
  FAIL("expected a MorseError");
  return MorseErrc::InvalidTree;
}

}  // namespace

TEST_CASE("canonical_fiber_tree is the caterpillar") {
  const MergeTree two = canonical_fiber_tree(2);
  CHECK(two.node_count() == 3);
  CHECK(two.node(0).height == Rational(1));
  CHECK(two.node(1).height == Rational(2));
  CHECK(two.node(2).height == Rational(3));
  CHECK(two.root() == 2);

  const MergeTree three = canonical_fiber_tree(3);
  CHECK(three.leaf_labels() == std::vector<int>{1, 2, 3});
  const TreeNode& s1 = three.node(three.saddle_with_tag(1));
  const TreeNode& s2 = three.node(three.saddle_with_tag(2));
  CHECK(s1.height == Rational(4));
  CHECK(s1.children == std::array<int, 2>{0, 1});
  CHECK(s2.height == Rational(5));
  CHECK(s2.children == std::array<int, 2>{three.saddle_with_tag(1), 2});
  CHECK(s2.parent == -1);

  CHECK(morse_error([] { canonical_fiber_tree(1); }) == MorseErrc::InvalidStrandCount);
}

TEST_CASE("from_nodes rejects broken trees") {
  const MergeTree base = canonical_fiber_tree(3);
  auto nodes = std::vector<TreeNode>(base.nodes().begin(), base.nodes().end());
  CHECK(MergeTree::from_nodes(3, nodes) == canonical_fiber_tree(3));

  auto duplicate_label = nodes;
  duplicate_label[1].tag = 1;
  CHECK(morse_error([&] { MergeTree::from_nodes(3, duplicate_label); }) == MorseErrc::InvalidTree);

  auto low_saddle = nodes;
  low_saddle[3].height = Rational(3, 2);
  CHECK(morse_error([&] { MergeTree::from_nodes(3, low_saddle); }) == MorseErrc::InvalidTree);

  auto two_roots = nodes;
  two_roots[3].parent = -1;
  CHECK(morse_error([&] { MergeTree::from_nodes(3, two_roots); }) == MorseErrc::InvalidTree);

  auto tied = nodes;
  tied[2].height = Rational(2);
  CHECK(morse_error([&] { MergeTree::from_nodes(3, tied); }) == MorseErrc::InvalidTree);

  nodes.pop_back();
  CHECK(morse_error([&] { MergeTree::from_nodes(3, nodes); }) == MorseErrc::InvalidTree);
}

TEST_CASE("level_component_count counts straddling edges") {
  const MergeTree t = canonical_fiber_tree(3);
  CHECK(level_component_count(t, Rational(9, 2)) == 2);
  CHECK(sublevel_components(t, Rational(9, 2)) == 2);
  CHECK(level_component_count(t, Rational(1, 2)) == 0);
  CHECK(level_component_count(t, Rational(-7)) == 0);
  CHECK(level_component_count(t, Rational(11, 2)) == 1);
  CHECK(level_component_count(t, Rational(100)) == 1);
  CHECK(morse_error([&] { level_component_count(t, Rational(4)); }) == MorseErrc::CriticalLevel);
  // Radial sequence of the two-strand tree.
  const MergeTree two = canonical_fiber_tree(2);
  std::vector<int> radial;
  for (const Rational level : {Rational(1, 2), Rational(3, 2), Rational(5, 2), Rational(7, 2)}) {
    radial.push_back(level_component_count(two, level));
  }
  CHECK(radial == std::vector<int>{0, 1, 2, 1});
}

TEST_CASE("deform_syllable event lists") {
  const SectorTrace a = deform_syllable(canonical_fiber_tree(2), 1, 3);
  CHECK(count_events(a, EventKind::MinimaCross) == 3);
  CHECK(count_events(a, EventKind::HalfTwist) == 3);
  CHECK(count_events(a, EventKind::SaddleCross) == 0);
  CHECK(a.states.empty());
  CHECK(a.end_tree.leaf_labels() == std::vector<int>{2, 1});

  const SectorTrace b = deform_syllable(canonical_fiber_tree(5), 2, 4);
  CHECK(count_events(b, EventKind::MinimaCross) == 4);
  CHECK(count_events(b, EventKind::SaddleCross) == 2);
  CHECK(b.events.front().kind == EventKind::SaddleCross);
  CHECK(b.events.back().kind == EventKind::SaddleCross);
  CHECK(b.end_tree == canonical_fiber_tree(5));
  REQUIRE(b.states.size() == 3);
  CHECK(b.states[0].name == "F'");
  CHECK(b.states[1].name == "F''");
  CHECK(b.states[0].time < b.states[1].time);
  CHECK(b.states[1].time < b.states[2].time);

  const SectorTrace single = deform_syllable(canonical_fiber_tree(3), 2, -1);
  CHECK(count_events(single, EventKind::SaddleCross) == 2);
  CHECK(count_events(single, EventKind::MinimaCross) == 1);
  for (const TraceEvent& e : single.events) {
    if (e.kind == EventKind::MinimaCross) CHECK(e.sign == -1);
  }

  for (std::size_t k = 0; k < b.events.size(); ++k) {
    CHECK(b.events[k].time == Rational(static_cast<std::int64_t>(k) + 1,
                                       static_cast<std::int64_t>(b.events.size()) + 1));
  }

  CHECK(morse_error([] { deform_syllable(canonical_fiber_tree(3), 3, 1); }) == MorseErrc::ZOutOfRange);
  CHECK(morse_error([] { deform_syllable(canonical_fiber_tree(3), 0, 1); }) == MorseErrc::ZOutOfRange);
  CHECK(morse_error([] { deform_syllable(canonical_fiber_tree(3), 2, 0); }) == MorseErrc::ZeroExponent);
}

TEST_CASE("apply_trace") {
  const MergeTree two = canonical_fiber_tree(2);
  CHECK(apply_trace(two, trivial_sector(two)) == two);
  CHECK(apply_trace(two, deform_syllable(two, 1, 1)).leaf_labels() == std::vector<int>{2, 1});
  const MergeTree three = canonical_fiber_tree(3);
  CHECK(apply_trace(three, deform_syllable(three, 2, 2)) == three);

  const SectorTrace t = deform_syllable(three, 1, 1);
  CHECK(morse_error([&] { apply_trace(t.end_tree, t); }) == MorseErrc::StartMismatch);

  SectorTrace dropped = deform_syllable(three, 2, 3);
  dropped.events.erase(dropped.events.begin() + 2);
  CHECK(morse_error([&] { replay(dropped); }) == MorseErrc::InvalidEvent);

  SectorTrace unordered = deform_syllable(three, 2, 1);
  std::swap(unordered.events[0].time, unordered.events[1].time);
  CHECK(morse_error([&] { replay(unordered); }) == MorseErrc::InvalidEvent);
}

TEST_CASE("concatenated traces compose") {
  const MergeTree start = canonical_fiber_tree(4);
  const SectorTrace a = deform_syllable(start, 3, 3);
  const SectorTrace b = deform_syllable(a.end_tree, 1, -2);
  const SectorTrace ab = concatenate(a, b);
  CHECK(ab.events.size() == a.events.size() + b.events.size());
  CHECK(apply_trace(start, ab) == apply_trace(apply_trace(start, a), b));
  const SectorTrace c = deform_syllable(b.end_tree, 2, 1);
  CHECK(apply_trace(start, concatenate(concatenate(a, b), c)) == apply_trace(start, concatenate(a, concatenate(b, c))));
  CHECK(morse_error([&] { concatenate(b, a); }) == MorseErrc::StartMismatch);
}

TEST_CASE("trace_level_curves crossings match the events") {
  const auto one = trace_level_curves(deform_syllable(canonical_fiber_tree(2), 1, 1));
  CHECK(one.size() == 3);
  const Tally t1 = sampled_tally(one);
  CHECK(t1.minima == 1);
  CHECK(t1.saddles == 0);

  const auto two = trace_level_curves(deform_syllable(canonical_fiber_tree(3), 2, 1));
  const Tally t2 = sampled_tally(two);
  CHECK(t2.minima == 1);
  CHECK(t2.saddles == 2);
  CHECK(t2.mixed == 0);

  for (const LevelCurve& c : two) {
    CHECK(c.points.front().time == Rational(0));
    CHECK(c.points.back().time == Rational(1));
  }

  // Every generator and exponent up to six strands.
  for (int n = 2; n <= 6; ++n) {
    for (int z = 1; z < n; ++z) {
      for (int m = -4; m <= 4; ++m) {
        if (m == 0) continue;
        CAPTURE(n);
        CAPTURE(z);
        CAPTURE(m);
        const SectorTrace tr = deform_syllable(canonical_fiber_tree(n), z, m);
        const Tally t = sampled_tally(trace_level_curves(tr));
        CHECK(count_events(tr, EventKind::SaddleCross) == (z == 1 ? 0 : 2));
        CHECK(t.saddles == count_events(tr, EventKind::SaddleCross));
        CHECK(t.minima == count_events(tr, EventKind::MinimaCross));
        CHECK(t.mixed == 0);
      }
    }
  }
}

TEST_CASE("level counts step by one across each critical height") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const BraidWord w = testing::random_canonical_word(rng, 6, 5, 3);
    MergeTree tree = canonical_fiber_tree(w.strands);
    for (const Syllable& s : w.syllables) {
      const SectorTrace tr = deform_syllable(tree, s.generator, s.exponent);
      for (const MergeTree& state : replay(tr)) {
        std::vector<Rational> heights;
        for (const TreeNode& node : state.nodes()) heights.push_back(node.height);
        std::sort(heights.begin(), heights.end());
        int previous = level_component_count(state, heights.front() - 1);
        CHECK(previous == 0);
        for (std::size_t k = 0; k < heights.size(); ++k) {
          const Rational above = k + 1 < heights.size() ? (heights[k] + heights[k + 1]) / 2 : heights[k] + 1;
          const int count = level_component_count(state, above);
          CHECK(count == sublevel_components(state, above));
          CHECK(std::abs(count - previous) == 1);
          previous = count;
        }
        CHECK(previous == 1);
      }
      tree = tr.end_tree;
    }
  }
}

TEST_CASE("chained traces realize the braid permutation") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const BraidWord w = testing::random_canonical_word(rng, 6, 8, 4);
    MergeTree tree = canonical_fiber_tree(w.strands);
    int minima_crossings = 0;
    for (const Syllable& s : w.syllables) {
      const SectorTrace tr = deform_syllable(tree, s.generator, s.exponent);
      minima_crossings += count_events(tr, EventKind::MinimaCross);
      tree = apply_trace(tree, tr);
    }
    const Permutation p = underlying_permutation(w);
    for (int label = 1; label <= w.strands; ++label) CHECK(tree.minimum_with_label(label) + 1 == p(label));
    CHECK(minima_crossings == crossing_count(w));
    CHECK(tree.same_shape(canonical_fiber_tree(w.strands)));
  }
}
