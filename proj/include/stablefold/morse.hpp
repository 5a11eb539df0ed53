#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stablefold/rational.hpp"

namespace stablefold {

enum class MorseErrc {
  InvalidStrandCount,
  InvalidTree,
  CriticalLevel,
  ZOutOfRange,
  ZeroExponent,
  NotCanonicalShape,
  StartMismatch,
  InvalidEvent,
};

const char* to_string(MorseErrc code) noexcept;

class MorseError : public std::runtime_error {
 public:
  MorseError(MorseErrc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  MorseErrc code() const noexcept { return code_; }

 private:
  MorseErrc code_;
};

// A critical point of the fiber Morse function. Nodes are height slots: a
// deformation moves tags (strand labels, saddle ids) and re-wires children,
// while slot heights stay put between events.
struct TreeNode {
  Rational height;
  int parent = -1;                       // -1: root edge up to the disk boundary
  std::array<int, 2> children{-1, -1};   // planar left-to-right order; leaves have none
  int tag = 0;                           // strand label (minima) or saddle id (saddles)

  bool operator==(const TreeNode&) const = default;
};

// Reeb graph of a Morse function on a disk fiber whose boundary is the top
// level: an ordered rooted binary tree with n minima and n - 1 saddles.
// Nodes [0, n) are minima, [n, 2n - 1) are saddles.
class MergeTree {
 public:
  MergeTree() = default;

  // Validates every structural invariant; throws MorseError(InvalidTree).
  static MergeTree from_nodes(int strands, std::vector<TreeNode> nodes);

  int strands() const noexcept { return strands_; }
  std::span<const TreeNode> nodes() const noexcept { return nodes_; }
  const TreeNode& node(int index) const { return nodes_.at(static_cast<std::size_t>(index)); }
  int node_count() const noexcept { return static_cast<int>(nodes_.size()); }
  bool is_minimum(int index) const noexcept { return index < strands_; }
  int root() const;

  int minimum_with_label(int label) const;
  int saddle_with_tag(int tag) const;
  // Strand label per minimum slot, bottom to top.
  std::vector<int> leaf_labels() const;

  // Equal up to the strand labels carried by the minima.
  bool same_shape(const MergeTree& other) const;

  // Two sibling minima trade places: the half twist of the disk bounded by
  // their common saddle's level circle. Throws InvalidEvent unless the two
  // minima hang from the same saddle.
  void swap_sibling_minima(int label_a, int label_b);

  // A parent/child saddle pair with adjacent heights exchange heights. The
  // lower slot is re-wired to merge the two planar-adjacent branches, and the
  // saddle ids trade slots. Throws InvalidEvent for non-adjacent pairs.
  void pass_saddles(int tag_a, int tag_b);

  bool operator==(const MergeTree&) const = default;

 private:
  MergeTree(int strands, std::vector<TreeNode> nodes) : strands_(strands), nodes_(std::move(nodes)) {}
  TreeNode& mut(int index) { return nodes_.at(static_cast<std::size_t>(index)); }

  int strands_ = 0;
  std::vector<TreeNode> nodes_;
};

// Caterpillar: strand j's minimum at height j, saddle s_k at height n + k
// merging the component of minima {1..k} with minimum k + 1.
MergeTree canonical_fiber_tree(int strands);

// Number of fiber circles at a regular level: tree edges straddling it. The
// root edge runs to +infinity. Throws CriticalLevel on a vertex height.
int level_component_count(const MergeTree& tree, const Rational& level);

enum class EventKind { SaddleCross, MinimaCross, HalfTwist };

const char* to_string(EventKind kind) noexcept;

// SaddleCross: a, b are saddle ids (lower id first).
// MinimaCross: a, b are strand labels, a below b before the crossing; sign is
//              the braid crossing sign, kept for rendering only.
// HalfTwist:   a is the id of the saddle at the root of the twisted subtree.
struct TraceEvent {
  EventKind kind = EventKind::HalfTwist;
  Rational time;
  int a = 0;
  int b = 0;
  int sign = 0;

  bool operator==(const TraceEvent&) const = default;
};

// Named instants of the deformation: "F'" where two saddles sit at the same
// level, "F''" once their relative heights have switched.
struct MarkedState {
  std::string name;
  Rational time;

  bool operator==(const MarkedState&) const = default;
};

// Deformation of the fiber function across one sector. generator 0 with
// exponent 0 is the trivial (event-free) sector.
struct SectorTrace {
  int generator = 0;
  int exponent = 0;
  MergeTree start_tree;
  MergeTree end_tree;
  std::vector<TraceEvent> events;
  std::vector<MarkedState> states;

  bool is_trivial() const noexcept { return generator == 0; }
  bool operator==(const SectorTrace&) const = default;
};

void apply_event(MergeTree& tree, const TraceEvent& event);

// Deformation realizing sigma_z^m on top of a caterpillar-shaped tree.
SectorTrace deform_syllable(const MergeTree& tree, int generator, int exponent);

SectorTrace trivial_sector(const MergeTree& tree);

// Tree after each prefix of the event list: element k follows k events.
// Validates time ordering, every event, and arrival at end_tree.
std::vector<MergeTree> replay(const SectorTrace& trace);

// Checks tree == trace.start_tree and replays. Throws StartMismatch.
MergeTree apply_trace(const MergeTree& tree, const SectorTrace& trace);

// Runs a then b inside one sector, with a in (0, 1/2) and b in (1/2, 1).
SectorTrace concatenate(const SectorTrace& a, const SectorTrace& b);

enum class CriticalKind { Minimum, Saddle };

struct CurvePoint {
  Rational time;
  Rational height;

  bool operator==(const CurvePoint&) const = default;
};

// Piecewise-linear height of one critical point over the sector's [0, 1].
struct LevelCurve {
  CriticalKind kind = CriticalKind::Minimum;
  int tag = 0;
  int start_slot = 0;
  int end_slot = 0;
  std::vector<CurvePoint> points;
};

// Event k (1-based, E events) sits at k/(E+1). Each curve holds its slot
// height on flats around the event instants and moves linearly in
// [t_k - h, t_k + h], h = 1/(2(E+1)), so swaps cross exactly at t_k.
// Minima come first (by label), then saddles (by id).
std::vector<LevelCurve> trace_level_curves(const SectorTrace& trace);
std::vector<LevelCurve> trace_level_curves(const SectorTrace& trace,
                                           std::span<const MergeTree> states);

// Height of a piecewise-linear curve at time t within its support.
Rational curve_height_at(const LevelCurve& curve, const Rational& time);

}  // namespace stablefold
