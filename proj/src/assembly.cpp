#include "stablefold/assembly.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>

namespace stablefold {

const char* to_string(AssemblyErrc code) noexcept {
  switch (code) {
    case AssemblyErrc::NonCanonicalWord: return "NonCanonicalWord";
    case AssemblyErrc::NonGenericDiagram: return "NonGenericDiagram";
    case AssemblyErrc::InconsistentLabeling: return "InconsistentLabeling";
    case AssemblyErrc::NoConsistentLabeling: return "NoConsistentLabeling";
    case AssemblyErrc::CoefficientCountMismatch: return "CoefficientCountMismatch";
  }
  return "Unknown";
}

bool Region::has_marker(const std::string& m) const {
  return std::find(markers.begin(), markers.end(), m) != markers.end();
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int size) : parent_(static_cast<std::size_t>(size)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

void append_point(std::vector<ArcPoint>& points, ArcPoint p) {
  if (!points.empty() && points.back() == p) return;
  // Drop the middle of three level points along increasing theta.
  if (points.size() >= 2) {
    const ArcPoint& a = points[points.size() - 2];
    const ArcPoint& b = points.back();
    if (a.level == b.level && b.level == p.level && a.theta < b.theta && b.theta < p.theta) {
      points.back() = p;
      return;
    }
  }
  points.push_back(std::move(p));
}

std::vector<std::vector<MergeTree>> replay_all(const std::vector<SectorTrace>& sectors) {
  std::vector<std::vector<MergeTree>> states;
  states.reserve(sectors.size());
  for (const auto& sector : sectors) states.push_back(replay(sector));
  return states;
}

}  // namespace

// ---------------------------------------------------------------------------
// Arcs

std::vector<Arc> trace_arcs(const std::vector<SectorTrace>& sectors,
                            const std::vector<std::vector<MergeTree>>& states) {
  if (sectors.empty()) return {};
  const int sector_count = static_cast<int>(sectors.size());
  const int n = sectors.front().start_tree.strands();

  std::vector<std::vector<LevelCurve>> curves;
  curves.reserve(sectors.size());
  for (int s = 0; s < sector_count; ++s) {
    curves.push_back(trace_level_curves(sectors[static_cast<std::size_t>(s)], states[static_cast<std::size_t>(s)]));
  }

  std::vector<Arc> arcs;
  for (const ArcKind kind : {ArcKind::Definite, ArcKind::Indefinite}) {
    const int first_slot = kind == ArcKind::Definite ? 0 : n;
    const int last_slot = kind == ArcKind::Definite ? n : 2 * n - 1;
    std::vector<bool> visited(static_cast<std::size_t>(2 * n - 1), false);
    for (int origin = first_slot; origin < last_slot; ++origin) {
      if (visited[static_cast<std::size_t>(origin)]) continue;
      Arc arc;
      arc.id = static_cast<int>(arcs.size());
      arc.kind = kind;
      int slot = origin;
      int sector = 0;
      // Each lap returns to sector 0 at a slot of the same kind, and slot maps
      // are bijections, so the walk closes after at most n laps.
      for (int guard = 0; guard <= n * sector_count; ++guard) {
        if (sector == 0) visited[static_cast<std::size_t>(slot)] = true;
        const MergeTree& start = states[static_cast<std::size_t>(sector)].front();
        const int tag = start.node(slot).tag;
        arc.pieces.push_back({sector, tag});
        const std::size_t curve_index =
            static_cast<std::size_t>(kind == ArcKind::Definite ? tag - 1 : n + tag - 1);
        const LevelCurve& curve = curves[static_cast<std::size_t>(sector)][curve_index];
        for (const CurvePoint& p : curve.points) {
          append_point(arc.points, {Rational(sector) + p.time, p.height});
        }
        slot = curve.end_slot;
        if (++sector == sector_count) {
          sector = 0;
          if (slot == origin) break;
        }
      }
      arcs.push_back(std::move(arc));
    }
  }
  return arcs;
}

// ---------------------------------------------------------------------------
// CellComplex

CellComplex::CellComplex(const std::vector<SectorTrace>& sectors, DiagramLayer layer)
    : states_(replay_all(sectors)), arcs_(trace_arcs(sectors, states_)) {
  if (sectors.empty()) {
    throw AssemblyError(AssemblyErrc::NonGenericDiagram, "a diagram needs at least one sector");
  }
  const int sector_count = static_cast<int>(sectors.size());
  const int n = sectors.front().start_tree.strands();

  // (sector, tag) -> arc id, separately for minima and saddles.
  std::vector<std::vector<int>> minimum_arc(static_cast<std::size_t>(sector_count),
                                            std::vector<int>(static_cast<std::size_t>(n) + 1, -1));
  std::vector<std::vector<int>> saddle_arc(static_cast<std::size_t>(sector_count),
                                           std::vector<int>(static_cast<std::size_t>(n), -1));
  for (const Arc& arc : arcs_) {
    auto& table = arc.kind == ArcKind::Definite ? minimum_arc : saddle_arc;
    for (const ArcPiece& piece : arc.pieces) {
      table[static_cast<std::size_t>(piece.sector)][static_cast<std::size_t>(piece.tag)] = arc.id;
    }
  }

  // Curve identities per band; two strands of one link component share an
  // arc id but still cross each other.
  std::vector<std::vector<int>> key_order;
  int total_bands = 0;
  for (int s = 0; s < sector_count; ++s) {
    band_offset_.push_back(total_bands);
    total_bands += static_cast<int>(states_[static_cast<std::size_t>(s)].size());
  }
  for (int s = 0; s < sector_count; ++s) {
    for (const MergeTree& tree : states_[static_cast<std::size_t>(s)]) {
      std::vector<int> order;
      const int first = layer == DiagramLayer::All ? 0 : n;
      for (int v = first; v < tree.node_count(); ++v) order.push_back(v);
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return tree.node(a).height < tree.node(b).height; });
      std::vector<int> arc_ids;
      std::vector<int> keys;
      arc_ids.reserve(order.size());
      keys.reserve(order.size());
      for (int v : order) {
        const auto& table = tree.is_minimum(v) ? minimum_arc : saddle_arc;
        const int tag = tree.node(v).tag;
        arc_ids.push_back(table[static_cast<std::size_t>(s)][static_cast<std::size_t>(tag)]);
        keys.push_back(tree.is_minimum(v) ? tag : n + tag);
      }
      order_.push_back(std::move(order));
      arc_order_.push_back(std::move(arc_ids));
      key_order.push_back(std::move(keys));
    }
  }
  gaps_ = static_cast<int>(order_.front().size()) + 1;

  DisjointSets sets(total_bands * gaps_);
  const auto glue_all = [&](int from_band, int to_band) {
    for (int g = 0; g < gaps_; ++g) sets.unite(from_band * gaps_ + g, to_band * gaps_ + g);
  };
  for (int s = 0; s < sector_count; ++s) {
    const int bands = band_count(s);
    for (int b = 0; b + 1 < bands; ++b) {
      const int here = band_offset_[static_cast<std::size_t>(s)] + b;
      const auto& before = key_order[static_cast<std::size_t>(here)];
      const auto& after = key_order[static_cast<std::size_t>(here + 1)];
      if (before == after) {
        glue_all(here, here + 1);
        continue;
      }
      std::vector<int> differing;
      for (std::size_t p = 0; p < before.size(); ++p) {
        if (before[p] != after[p]) differing.push_back(static_cast<int>(p));
      }
      const int q = differing.front();
      const auto uq = static_cast<std::size_t>(q);
      if (differing.size() != 2 || differing[1] != q + 1 || before[uq] != after[uq + 1] ||
          before[uq + 1] != after[uq]) {
        throw AssemblyError(AssemblyErrc::NonGenericDiagram,
                            "sector " + std::to_string(s) + " event " + std::to_string(b) +
                                " is not a single transverse crossing");
      }
      const int pinched = q + 1;
      for (int g = 0; g < gaps_; ++g) {
        if (g != pinched) sets.unite(here * gaps_ + g, (here + 1) * gaps_ + g);
      }
      Crossing crossing;
      crossing.sector = s;
      crossing.event = b;
      crossing.gap = pinched;
      const auto& arcs_here = arc_order_[static_cast<std::size_t>(here)];
      crossing.arcs = {arcs_here[uq], arcs_here[uq + 1]};
      crossing.below = cell(s, b, pinched - 1);
      crossing.above = cell(s, b, pinched + 1);
      crossing.left = cell(s, b, pinched);
      crossing.right = cell(s, b + 1, pinched);
      crossings_.push_back(crossing);
    }
    const int last = band_offset_[static_cast<std::size_t>(s)] + bands - 1;
    const int next = band_offset_[static_cast<std::size_t>((s + 1) % sector_count)];
    if (arc_order_[static_cast<std::size_t>(last)] != arc_order_[static_cast<std::size_t>(next)]) {
      throw AssemblyError(AssemblyErrc::NonGenericDiagram,
                          "sector " + std::to_string(s) + " does not glue to the next sector");
    }
    glue_all(last, next);
  }

  region_of_cell_.assign(static_cast<std::size_t>(total_bands * gaps_), -1);
  std::vector<int> region_of_root(region_of_cell_.size(), -1);
  for (int c = 0; c < total_bands * gaps_; ++c) {
    int& r = region_of_root[static_cast<std::size_t>(sets.find(c))];
    if (r < 0) r = regions_++;
    region_of_cell_[static_cast<std::size_t>(c)] = r;
  }

  for (int band = 0; band < total_bands; ++band) {
    for (int g = 0; g + 1 < gaps_; ++g) {
      boundaries_.push_back({band * gaps_ + g, band * gaps_ + g + 1,
                             arc_order_[static_cast<std::size_t>(band)][static_cast<std::size_t>(g)]});
    }
  }
}

int CellComplex::band_count(int sector) const {
  return static_cast<int>(states_.at(static_cast<std::size_t>(sector)).size());
}

int CellComplex::cell(int sector, int band, int gap) const {
  return (band_offset_.at(static_cast<std::size_t>(sector)) + band) * gaps_ + gap;
}

int CellComplex::sector_of_cell(int c) const {
  const int band = c / gaps_;
  const auto it = std::upper_bound(band_offset_.begin(), band_offset_.end(), band);
  return static_cast<int>(it - band_offset_.begin()) - 1;
}

int CellComplex::band_of_cell(int c) const {
  return c / gaps_ - band_offset_[static_cast<std::size_t>(sector_of_cell(c))];
}

std::vector<CellRun> CellComplex::runs_of_region(int region) const {
  std::vector<CellRun> runs;
  for (int s = 0; s < sector_count(); ++s) {
    for (int g = 0; g < gaps_; ++g) {
      for (int b = 0; b < band_count(s); ++b) {
        if (region_of_cell(cell(s, b, g)) != region) continue;
        if (!runs.empty() && runs.back().sector == s && runs.back().gap == g && runs.back().band_to == b - 1) {
          runs.back().band_to = b;
        } else {
          runs.push_back({s, g, b, b});
        }
      }
    }
  }
  return runs;
}

Rational CellComplex::gap_level(int sector, int band, int gap) const {
  const int global = band_offset_.at(static_cast<std::size_t>(sector)) + band;
  const auto& order = order_.at(static_cast<std::size_t>(global));
  const MergeTree& tree = states_[static_cast<std::size_t>(sector)][static_cast<std::size_t>(band)];
  const Rational half(1, 2);
  if (gap == 0) return tree.node(order.front()).height - half;
  if (gap == static_cast<int>(order.size())) return tree.node(order.back()).height + half;
  return (tree.node(order[static_cast<std::size_t>(gap - 1)]).height +
          tree.node(order[static_cast<std::size_t>(gap)]).height) * half;
}

int CellComplex::arc_at(int sector, int band, int position) const {
  const int global = band_offset_.at(static_cast<std::size_t>(sector)) + band;
  return arc_order_.at(static_cast<std::size_t>(global)).at(static_cast<std::size_t>(position));
}

// ---------------------------------------------------------------------------

namespace {

// Every region with its cell runs, in one sweep over the cells.
std::vector<Region> empty_regions(const CellComplex& complex) {
  std::vector<Region> regions(static_cast<std::size_t>(complex.region_count()));
  for (int r = 0; r < complex.region_count(); ++r) regions[static_cast<std::size_t>(r)].id = r;
  for (int s = 0; s < complex.sector_count(); ++s) {
    for (int g = 0; g < complex.gap_count(); ++g) {
      for (int b = 0; b < complex.band_count(s); ++b) {
        auto& runs = regions[static_cast<std::size_t>(complex.region_of_cell(complex.cell(s, b, g)))].cells;
        if (!runs.empty() && runs.back().sector == s && runs.back().gap == g && runs.back().band_to == b - 1) {
          runs.back().band_to = b;
        } else {
          runs.push_back({s, g, b, b});
        }
      }
    }
  }
  return regions;
}

int bottom_region(const CellComplex& complex) { return complex.region_of_cell(complex.cell(0, 0, 0)); }

int top_region(const CellComplex& complex) {
  return complex.region_of_cell(complex.cell(0, 0, complex.gap_count() - 1));
}

std::vector<Region> fiber_labelled_regions(const CellComplex& complex) {
  std::vector<Region> regions = empty_regions(complex);
  std::vector<std::optional<int>> labels(regions.size());
  for (int s = 0; s < complex.sector_count(); ++s) {
    for (int b = 0; b < complex.band_count(s); ++b) {
      const MergeTree& tree = complex.states()[static_cast<std::size_t>(s)][static_cast<std::size_t>(b)];
      for (int g = 0; g < complex.gap_count(); ++g) {
        const int label = level_component_count(tree, complex.gap_level(s, b, g));
        auto& slot = labels[static_cast<std::size_t>(complex.region_of_cell(complex.cell(s, b, g)))];
        if (slot && *slot != label) {
          throw AssemblyError(AssemblyErrc::InconsistentLabeling,
                              "region of cell (" + std::to_string(s) + ", " + std::to_string(b) + ", " +
                                  std::to_string(g) + ") has fiber counts " + std::to_string(*slot) +
                                  " and " + std::to_string(label));
        }
        slot = label;
      }
    }
  }
  for (std::size_t r = 0; r < regions.size(); ++r) regions[r].label = *labels[r];
  regions[static_cast<std::size_t>(bottom_region(complex))].markers.push_back("outer");
  regions[static_cast<std::size_t>(top_region(complex))].markers.push_back("E");
  return regions;
}

std::vector<DoublePoint> double_points_of(const CellComplex& complex, const std::vector<SectorTrace>& sectors) {
  std::vector<DoublePoint> points;
  points.reserve(complex.crossings().size());
  for (const auto& crossing : complex.crossings()) {
    const Arc& a = complex.arcs()[static_cast<std::size_t>(crossing.arcs[0])];
    const Arc& b = complex.arcs()[static_cast<std::size_t>(crossing.arcs[1])];
    if (a.kind != b.kind) {
      throw AssemblyError(AssemblyErrc::NonGenericDiagram, "a definite arc crosses an indefinite arc");
    }
    const TraceEvent& event =
        sectors[static_cast<std::size_t>(crossing.sector)].events[static_cast<std::size_t>(crossing.event)];
    DoublePoint p;
    p.kind = a.kind == ArcKind::Definite ? DoublePointKind::DefiniteCross : DoublePointKind::II2;
    p.sector = crossing.sector;
    p.event = crossing.event;
    p.gap = crossing.gap;
    p.theta = Rational(crossing.sector) + event.time;
    // The gap's mid-level before the crossing is where the two curves meet.
    p.level = complex.gap_level(crossing.sector, crossing.event, crossing.gap);
    p.arcs = crossing.arcs;
    p.sign = p.kind == DoublePointKind::DefiniteCross ? event.sign : 0;
    points.push_back(p);
  }
  return points;
}

std::vector<SectorTrace> build_sectors(const BraidWord& word) {
  std::vector<SectorTrace> sectors;
  sectors.reserve(word.syllables.size() + 1);
  MergeTree tree = canonical_fiber_tree(word.strands);
  for (const Syllable& s : word.syllables) {
    sectors.push_back(deform_syllable(tree, s.generator, s.exponent));
    tree = sectors.back().end_tree;
  }
  sectors.push_back(trivial_sector(tree));
  return sectors;
}

int definite_arc_count(const std::vector<Arc>& arcs) {
  return static_cast<int>(
      std::count_if(arcs.begin(), arcs.end(), [](const Arc& a) { return a.kind == ArcKind::Definite; }));
}

SingularCounts counts_of(const std::vector<Arc>& arcs, const std::vector<DoublePoint>& points) {
  SingularCounts counts;
  counts.cusps = 0;  // the model has no cusp generator
  counts.s0_components = definite_arc_count(arcs);
  for (const DoublePoint& p : points) {
    switch (p.kind) {
      case DoublePointKind::DefiniteCross: ++counts.definite_crossings; break;
      case DoublePointKind::II2: ++counts.ii2; break;
      case DoublePointKind::II3: ++counts.ii3; break;
    }
  }
  return counts;
}

std::vector<Region> solved_regions(const CellComplex& complex, int anchor_label) {
  std::vector<Region> regions = empty_regions(complex);
  const int count = complex.region_count();
  // Edges carry the required step: label(to) - label(from).
  std::vector<std::vector<std::pair<int, int>>> steps(static_cast<std::size_t>(count));
  for (const auto& boundary : complex.boundaries()) {
    const int lower = complex.region_of_cell(boundary.lower_cell);
    const int upper = complex.region_of_cell(boundary.upper_cell);
    steps[static_cast<std::size_t>(lower)].emplace_back(upper, +1);
    steps[static_cast<std::size_t>(upper)].emplace_back(lower, -1);
  }

  const int anchor = bottom_region(complex);
  std::vector<std::optional<int>> labels(static_cast<std::size_t>(count));
  labels[static_cast<std::size_t>(anchor)] = anchor_label;
  std::deque<int> queue{anchor};
  while (!queue.empty()) {
    const int r = queue.front();
    queue.pop_front();
    for (const auto& [other, step] : steps[static_cast<std::size_t>(r)]) {
      const int wanted = *labels[static_cast<std::size_t>(r)] + step;
      auto& slot = labels[static_cast<std::size_t>(other)];
      if (!slot) {
        slot = wanted;
        queue.push_back(other);
      } else if (*slot != wanted) {
        throw AssemblyError(AssemblyErrc::NoConsistentLabeling,
                            "region " + std::to_string(other) + " needs labels " + std::to_string(*slot) +
                                " and " + std::to_string(wanted));
      }
    }
  }
  for (int r = 0; r < count; ++r) {
    const auto& label = labels[static_cast<std::size_t>(r)];
    if (!label) {
      throw AssemblyError(AssemblyErrc::NoConsistentLabeling,
                          "region " + std::to_string(r) + " is not connected to the D3 cap");
    }
    if (*label < 1) {
      throw AssemblyError(AssemblyErrc::NoConsistentLabeling,
                          "region " + std::to_string(r) + " would have empty fibers (label " +
                              std::to_string(*label) + ")");
    }
    regions[static_cast<std::size_t>(r)].label = *label;
  }
  regions[static_cast<std::size_t>(anchor)].markers.push_back("D3");
  regions[static_cast<std::size_t>(top_region(complex))].markers.push_back("E");
  return regions;
}

}  // namespace

// ---------------------------------------------------------------------------

StableMapModel assemble(const BraidWord& word) {
  if (!is_canonical(word)) {
    throw AssemblyError(AssemblyErrc::NonCanonicalWord,
                        "assemble needs a canonical word, got '" + format_braid(word) + "'");
  }
  StableMapModel model;
  model.word = word;
  model.sectors = build_sectors(word);
  const CellComplex complex(model.sectors, DiagramLayer::All);
  model.arcs = complex.arcs();
  model.double_points = double_points_of(complex, model.sectors);
  model.regions = fiber_labelled_regions(complex);
  model.counts = counts_of(model.arcs, model.double_points);
  return model;
}

std::vector<Region> region_labels(const StableMapModel& model) {
  return fiber_labelled_regions(CellComplex(model.sectors, DiagramLayer::All));
}

SingularCounts singular_counts(const StableMapModel& model) {
  return counts_of(model.arcs, model.double_points);
}

SingularCounts singular_counts(const SurgeredMapModel& model) {
  return counts_of(model.arcs, model.double_points);
}

std::string cap_annotation(const std::vector<int>& coefficients) {
  std::string out = "(";
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(coefficients[i]);
  }
  return out + ")";
}

SurgeredMapModel do_surgery(const StableMapModel& model, const std::vector<int>& coefficients) {
  const int components = definite_arc_count(model.arcs);
  if (static_cast<int>(coefficients.size()) != components) {
    throw AssemblyError(AssemblyErrc::CoefficientCountMismatch,
                        "surgery needs one coefficient per link component: expected " +
                            std::to_string(components) + ", got " + std::to_string(coefficients.size()));
  }
  SurgeredMapModel out;
  out.base = model;
  out.coefficients = coefficients;

  const CellComplex complex(model.sectors, DiagramLayer::IndefiniteOnly);
  for (const Arc& arc : complex.arcs()) {
    if (arc.kind == ArcKind::Indefinite) out.arcs.push_back(arc);
  }
  out.double_points = double_points_of(complex, model.sectors);
  out.regions = solved_regions(complex, components);
  out.cap.label = components;
  out.cap.region = bottom_region(complex);
  out.cap.annotation = cap_annotation(coefficients);
  out.counts = counts_of(out.arcs, out.double_points);
  return out;
}

std::vector<Region> solve_surgered_labels(const SurgeredMapModel& model) {
  return solved_regions(CellComplex(model.base.sectors, DiagramLayer::IndefiniteOnly),
                        definite_arc_count(model.base.arcs));
}

}  // namespace stablefold
