#include "stablefold/morse.hpp"

#include <algorithm>
#include <cstdlib>

namespace stablefold {

const char* to_string(MorseErrc code) noexcept {
  switch (code) {
    case MorseErrc::InvalidStrandCount: return "InvalidStrandCount";
    case MorseErrc::InvalidTree: return "InvalidTree";
    case MorseErrc::CriticalLevel: return "CriticalLevel";
    case MorseErrc::ZOutOfRange: return "ZOutOfRange";
    case MorseErrc::ZeroExponent: return "ZeroExponent";
    case MorseErrc::NotCanonicalShape: return "NotCanonicalShape";
    case MorseErrc::StartMismatch: return "StartMismatch";
    case MorseErrc::InvalidEvent: return "InvalidEvent";
  }
  return "Unknown";
}

const char* to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::SaddleCross: return "saddle_cross";
    case EventKind::MinimaCross: return "minima_cross";
    case EventKind::HalfTwist: return "half_twist";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// MergeTree

MergeTree MergeTree::from_nodes(int strands, std::vector<TreeNode> nodes) {
  const auto fail = [](const std::string& why) {
    return MorseError(MorseErrc::InvalidTree, "invalid merge tree: " + why);
  };
  if (strands < 2) throw fail("needs at least 2 minima");
  const int count = 2 * strands - 1;
  if (static_cast<int>(nodes.size()) != count) {
    throw fail("expected " + std::to_string(count) + " nodes, got " + std::to_string(nodes.size()));
  }

  std::vector<bool> leaf_tag_seen(static_cast<std::size_t>(strands) + 1, false);
  std::vector<bool> saddle_tag_seen(static_cast<std::size_t>(strands), false);
  int roots = 0;
  for (int i = 0; i < count; ++i) {
    const TreeNode& node = nodes[static_cast<std::size_t>(i)];
    const bool minimum = i < strands;
    if (minimum) {
      if (node.children != std::array<int, 2>{-1, -1}) throw fail("minimum with children");
      if (node.tag < 1 || node.tag > strands || leaf_tag_seen[static_cast<std::size_t>(node.tag)]) {
        throw fail("strand labels are not a bijection onto 1..n");
      }
      leaf_tag_seen[static_cast<std::size_t>(node.tag)] = true;
    } else {
      if (node.tag < 1 || node.tag > strands - 1 || saddle_tag_seen[static_cast<std::size_t>(node.tag)]) {
        throw fail("saddle ids are not a bijection onto 1..n-1");
      }
      saddle_tag_seen[static_cast<std::size_t>(node.tag)] = true;
      for (int child : node.children) {
        if (child < 0 || child >= count || child == i) throw fail("saddle child out of range");
        if (nodes[static_cast<std::size_t>(child)].parent != i) throw fail("parent/child links disagree");
        if (!(nodes[static_cast<std::size_t>(child)].height < node.height)) {
          throw fail("a saddle must sit above everything below it");
        }
      }
      if (node.children[0] == node.children[1]) throw fail("saddle needs two distinct children");
    }
    if (node.parent == -1) {
      ++roots;
    } else {
      if (node.parent < strands || node.parent >= count) throw fail("parent must be a saddle");
      const auto& pc = nodes[static_cast<std::size_t>(node.parent)].children;
      if (pc[0] != i && pc[1] != i) throw fail("parent/child links disagree");
    }
  }
  if (roots != 1) throw fail("expected exactly one root");

  // Connectivity: walk down from the root.
  int root = -1;
  for (int i = 0; i < count; ++i) {
    if (nodes[static_cast<std::size_t>(i)].parent == -1) root = i;
  }
  std::vector<int> stack{root};
  int reached = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (++reached > count) throw fail("cycle in parent links");
    if (v >= strands) {
      for (int child : nodes[static_cast<std::size_t>(v)].children) stack.push_back(child);
    }
  }
  if (reached != count) throw fail("tree is not connected");

  std::vector<Rational> heights;
  heights.reserve(nodes.size());
  for (const auto& node : nodes) heights.push_back(node.height);
  std::sort(heights.begin(), heights.end());
  if (std::adjacent_find(heights.begin(), heights.end()) != heights.end()) {
    throw fail("critical heights must be pairwise distinct");
  }
  return MergeTree(strands, std::move(nodes));
}

int MergeTree::root() const {
  for (int i = 0; i < node_count(); ++i) {
    if (nodes_[static_cast<std::size_t>(i)].parent == -1) return i;
  }
  return -1;
}

int MergeTree::minimum_with_label(int label) const {
  for (int i = 0; i < strands_; ++i) {
    if (nodes_[static_cast<std::size_t>(i)].tag == label) return i;
  }
  throw MorseError(MorseErrc::InvalidEvent, "no minimum carries strand label " + std::to_string(label));
}

int MergeTree::saddle_with_tag(int tag) const {
  for (int i = strands_; i < node_count(); ++i) {
    if (nodes_[static_cast<std::size_t>(i)].tag == tag) return i;
  }
  throw MorseError(MorseErrc::InvalidEvent, "no saddle with id " + std::to_string(tag));
}

std::vector<int> MergeTree::leaf_labels() const {
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(strands_));
  for (int i = 0; i < strands_; ++i) labels.push_back(nodes_[static_cast<std::size_t>(i)].tag);
  return labels;
}

bool MergeTree::same_shape(const MergeTree& other) const {
  if (strands_ != other.strands_) return false;
  for (int i = 0; i < node_count(); ++i) {
    const TreeNode& a = nodes_[static_cast<std::size_t>(i)];
    const TreeNode& b = other.nodes_[static_cast<std::size_t>(i)];
    if (a.height != b.height || a.parent != b.parent || a.children != b.children) return false;
    if (!is_minimum(i) && a.tag != b.tag) return false;
  }
  return true;
}

void MergeTree::swap_sibling_minima(int label_a, int label_b) {
  const int a = minimum_with_label(label_a);
  const int b = minimum_with_label(label_b);
  if (a == b || node(a).parent != node(b).parent || node(a).parent == -1) {
    throw MorseError(MorseErrc::InvalidEvent,
                     "minima " + std::to_string(label_a) + " and " + std::to_string(label_b) +
                         " do not hang from a common saddle");
  }
  std::swap(mut(a).tag, mut(b).tag);
}

void MergeTree::pass_saddles(int tag_a, int tag_b) {
  const int u = saddle_with_tag(tag_a);
  const int v = saddle_with_tag(tag_b);
  int child = -1;
  int parent = -1;
  if (node(u).parent == v) {
    child = u;
    parent = v;
  } else if (node(v).parent == u) {
    child = v;
    parent = u;
  } else {
    throw MorseError(MorseErrc::InvalidEvent,
                     "saddles " + std::to_string(tag_a) + " and " + std::to_string(tag_b) +
                         " are not a parent/child pair");
  }
  for (const TreeNode& other : nodes_) {
    if (node(child).height < other.height && other.height < node(parent).height) {
      throw MorseError(MorseErrc::InvalidEvent,
                       "saddles " + std::to_string(tag_a) + " and " + std::to_string(tag_b) +
                           " are not at adjacent levels");
    }
  }

  const auto [a, b] = node(child).children;
  const auto set_parent = [this](int node_index, int p) { mut(node_index).parent = p; };
  if (node(parent).children[0] == child) {
    // parent = (child(a, b), c)  ->  parent = (a, child(b, c))
    const int c = node(parent).children[1];
    mut(child).children = {b, c};
    mut(parent).children = {a, child};
    set_parent(a, parent);
    set_parent(b, child);
    set_parent(c, child);
  } else {
    // parent = (c, child(a, b))  ->  parent = (child(c, a), b)
    const int c = node(parent).children[0];
    mut(child).children = {c, a};
    mut(parent).children = {child, b};
    set_parent(c, child);
    set_parent(a, child);
    set_parent(b, parent);
  }
  std::swap(mut(child).tag, mut(parent).tag);
}

MergeTree canonical_fiber_tree(int strands) {
  if (strands < 2) {
    throw MorseError(MorseErrc::InvalidStrandCount,
                     "a fiber tree needs at least 2 strands, got " + std::to_string(strands));
  }
  const int n = strands;
  std::vector<TreeNode> nodes(static_cast<std::size_t>(2 * n - 1));
  for (int j = 0; j < n; ++j) {
    auto& leaf = nodes[static_cast<std::size_t>(j)];
    leaf.height = Rational(j + 1);
    leaf.tag = j + 1;
    leaf.parent = j == 0 ? n : n + j - 1;
  }
  for (int k = 1; k <= n - 1; ++k) {
    auto& saddle = nodes[static_cast<std::size_t>(n + k - 1)];
    saddle.height = Rational(n + k);
    saddle.tag = k;
    saddle.children = k == 1 ? std::array<int, 2>{0, 1} : std::array<int, 2>{n + k - 2, k};
    saddle.parent = k < n - 1 ? n + k : -1;
  }
  return MergeTree::from_nodes(n, std::move(nodes));
}

int level_component_count(const MergeTree& tree, const Rational& level) {
  int count = 0;
  for (const TreeNode& node : tree.nodes()) {
    if (node.height == level) {
      throw MorseError(MorseErrc::CriticalLevel, "level " + to_string(level) + " is a critical height");
    }
    if (!(node.height < level)) continue;
    if (node.parent == -1 || level < tree.node(node.parent).height) ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Deformation

void apply_event(MergeTree& tree, const TraceEvent& event) {
  switch (event.kind) {
    case EventKind::SaddleCross:
      tree.pass_saddles(event.a, event.b);
      break;
    case EventKind::MinimaCross: {
      const int lower = tree.minimum_with_label(event.a);
      const int upper = tree.minimum_with_label(event.b);
      if (!(tree.node(lower).height < tree.node(upper).height)) {
        throw MorseError(MorseErrc::InvalidEvent, "minima_cross expects strand " + std::to_string(event.a) +
                                                      " below strand " + std::to_string(event.b));
      }
      tree.swap_sibling_minima(event.a, event.b);
      break;
    }
    case EventKind::HalfTwist:
      tree.saddle_with_tag(event.a);
      break;
  }
}

namespace {

void require_canonical_shape(const MergeTree& tree) {
  if (!tree.same_shape(canonical_fiber_tree(tree.strands()))) {
    throw MorseError(MorseErrc::NotCanonicalShape,
                     "deformation needs the caterpillar tree at canonical heights");
  }
}

}  // namespace

SectorTrace deform_syllable(const MergeTree& tree, int generator, int exponent) {
  const int n = tree.strands();
  if (generator < 1 || generator > n - 1) {
    throw MorseError(MorseErrc::ZOutOfRange, "generator s" + std::to_string(generator) +
                                                 " out of range for " + std::to_string(n) + " strands");
  }
  if (exponent == 0) {
    throw MorseError(MorseErrc::ZeroExponent, "zero exponent; canonicalize the word first");
  }
  require_canonical_shape(tree);

  const int z = generator;
  const int twists = std::abs(exponent);
  const int sign = exponent > 0 ? 1 : -1;
  // The pair being braided hangs from saddle s_1 already when z = 1; otherwise
  // s_{z-1} and s_z first trade levels so that strands z and z + 1 share a saddle.
  const int cherry = z == 1 ? 1 : z;

  SectorTrace trace;
  trace.generator = generator;
  trace.exponent = exponent;
  trace.start_tree = tree;

  MergeTree working = tree;
  const auto push = [&](TraceEvent event) {
    apply_event(working, event);
    trace.events.push_back(event);
  };
  if (z >= 2) push({EventKind::SaddleCross, {}, z - 1, z, 0});
  for (int j = 0; j < twists; ++j) {
    push({EventKind::HalfTwist, {}, cherry, 0, 0});
    const int lower = working.node(z - 1).tag;
    const int upper = working.node(z).tag;
    push({EventKind::MinimaCross, {}, lower, upper, sign});
  }
  if (z >= 2) push({EventKind::SaddleCross, {}, z - 1, z, 0});

  const auto total = static_cast<std::int64_t>(trace.events.size());
  for (std::int64_t k = 0; k < total; ++k) {
    trace.events[static_cast<std::size_t>(k)].time = Rational(k + 1, total + 1);
  }
  if (z >= 2) {
    const Rational first = trace.events.front().time;
    const Rational second = trace.events[1].time;
    trace.states = {{"F'", first}, {"F''", (first + second) / 2}, {"F'", trace.events.back().time}};
  }
  trace.end_tree = working;
  return trace;
}

SectorTrace trivial_sector(const MergeTree& tree) {
  SectorTrace trace;
  trace.start_tree = tree;
  trace.end_tree = tree;
  return trace;
}

std::vector<MergeTree> replay(const SectorTrace& trace) {
  std::vector<MergeTree> states;
  states.reserve(trace.events.size() + 1);
  states.push_back(trace.start_tree);
  Rational previous(0);
  for (std::size_t k = 0; k < trace.events.size(); ++k) {
    const TraceEvent& event = trace.events[k];
    if (!(previous < event.time) || !(event.time < Rational(1))) {
      throw MorseError(MorseErrc::InvalidEvent,
                       "event " + std::to_string(k) + " at " + to_string(event.time) +
                           " is not strictly time-ordered inside (0, 1)");
    }
    previous = event.time;
    MergeTree next = states.back();
    apply_event(next, event);
    states.push_back(std::move(next));
  }
  if (!(states.back() == trace.end_tree)) {
    throw MorseError(MorseErrc::InvalidEvent, "replaying the events does not reach the recorded end tree");
  }
  return states;
}

MergeTree apply_trace(const MergeTree& tree, const SectorTrace& trace) {
  if (!(tree == trace.start_tree)) {
    throw MorseError(MorseErrc::StartMismatch, "tree does not match the trace's start tree");
  }
  return replay(trace).back();
}

SectorTrace concatenate(const SectorTrace& a, const SectorTrace& b) {
  if (!(a.end_tree == b.start_tree)) {
    throw MorseError(MorseErrc::StartMismatch, "second trace does not start where the first ends");
  }
  SectorTrace out;
  out.generator = a.is_trivial() ? b.generator : a.generator;
  out.exponent = a.is_trivial() ? b.exponent : a.exponent;
  out.start_tree = a.start_tree;
  out.end_tree = b.end_tree;
  const Rational half(1, 2);
  for (TraceEvent e : a.events) {
    e.time *= half;
    out.events.push_back(e);
  }
  for (TraceEvent e : b.events) {
    e.time = half + e.time * half;
    out.events.push_back(e);
  }
  for (MarkedState s : a.states) {
    s.time *= half;
    out.states.push_back(s);
  }
  for (MarkedState s : b.states) {
    s.time = half + s.time * half;
    out.states.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Level curves

std::vector<LevelCurve> trace_level_curves(const SectorTrace& trace) {
  const auto states = replay(trace);
  return trace_level_curves(trace, states);
}

std::vector<LevelCurve> trace_level_curves(const SectorTrace& trace, std::span<const MergeTree> states) {
  const MergeTree& start = states.front();
  const int n = start.strands();
  const auto events = static_cast<std::int64_t>(trace.events.size());
  const Rational h(1, 2 * (events + 1));

  // Keyframes: the flat before the first event, one flat after each event,
  // then the sector's far edge.
  std::vector<std::pair<Rational, std::size_t>> keyframes;
  keyframes.emplace_back(Rational(0), 0);
  for (std::int64_t k = 0; k <= events; ++k) {
    keyframes.emplace_back(h * (2 * k + 1), static_cast<std::size_t>(k));
  }
  keyframes.emplace_back(Rational(1), static_cast<std::size_t>(events));

  std::vector<LevelCurve> curves;
  curves.reserve(static_cast<std::size_t>(2 * n - 1));
  const auto build = [&](CriticalKind kind, int tag) {
    const auto slot_of = [&](const MergeTree& t) {
      return kind == CriticalKind::Minimum ? t.minimum_with_label(tag) : t.saddle_with_tag(tag);
    };
    LevelCurve curve;
    curve.kind = kind;
    curve.tag = tag;
    curve.start_slot = slot_of(states.front());
    curve.end_slot = slot_of(states.back());
    for (const auto& [time, state] : keyframes) {
      const MergeTree& t = states[state];
      curve.points.push_back({time, t.node(slot_of(t)).height});
    }
    curves.push_back(std::move(curve));
  };
  for (int label = 1; label <= n; ++label) build(CriticalKind::Minimum, label);
  for (int id = 1; id <= n - 1; ++id) build(CriticalKind::Saddle, id);
  return curves;
}

Rational curve_height_at(const LevelCurve& curve, const Rational& time) {
  const auto& pts = curve.points;
  if (pts.empty() || time < pts.front().time || pts.back().time < time) {
    throw std::out_of_range("time " + to_string(time) + " outside the curve's support");
  }
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (time <= pts[i].time) {
      const CurvePoint& p = pts[i - 1];
      const CurvePoint& q = pts[i];
      if (q.time == p.time) return q.height;
      return p.height + (q.height - p.height) * (time - p.time) / (q.time - p.time);
    }
  }
  return pts.back().height;
}

}  // namespace stablefold
