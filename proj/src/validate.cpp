#include "stablefold/validate.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <memory>
#include <sstream>

namespace stablefold {

const char* to_string(CheckGroup group) noexcept {
  switch (group) {
    case CheckGroup::Structure: return "structure";
    case CheckGroup::Theorem1: return "theorem1";
    case CheckGroup::Corollary2: return "corollary2";
    case CheckGroup::Labeling: return "labeling";
    case CheckGroup::Oracle: return "oracle";
  }
  return "unknown";
}

bool ValidationReport::group_passed(CheckGroup group) const {
  return std::all_of(checks.begin(), checks.end(),
                     [group](const CheckResult& c) { return c.group != group || c.passed; });
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Crossing oracle

namespace {

// Height at t, where next is the first point with time >= t. Returns false
// when t lies before the curve's support.
bool height_at(const std::vector<CurvePoint>& pts, std::size_t next, const Rational& t, Rational& out) {
  const CurvePoint& q = pts[next];
  if (q.time == t) {
    out = q.height;
    return true;
  }
  if (next == 0) return false;
  const CurvePoint& p = pts[next - 1];
  out = p.height + (q.height - p.height) * (t - p.time) / (q.time - p.time);
  return true;
}

}  // namespace

int transverse_crossings(const LevelCurve& a, const LevelCurve& b) {
  const auto& pa = a.points;
  const auto& pb = b.points;
  int crossings = 0;
  int previous_sign = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  // Merge walk over the union of breakpoints inside both supports.
  while (i < pa.size() && j < pb.size()) {
    const Rational t = std::min(pa[i].time, pb[j].time);
    Rational ha;
    Rational hb;
    if (height_at(pa, i, t, ha) && height_at(pb, j, t, hb)) {
      const int sign = ha > hb ? 1 : (ha < hb ? -1 : 0);
      if (sign != 0) {
        if (previous_sign != 0 && sign != previous_sign) ++crossings;
        previous_sign = sign;
      }
    }
    if (pa[i].time == t) ++i;
    if (pb[j].time == t) ++j;
  }
  return crossings;
}

CrossingTally tally_crossings(const std::vector<LevelCurve>& curves) {
  CrossingTally tally;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      const int count = transverse_crossings(curves[i], curves[j]);
      const bool mi = curves[i].kind == CriticalKind::Minimum;
      const bool mj = curves[j].kind == CriticalKind::Minimum;
      if (mi && mj) {
        tally.minima += count;
      } else if (!mi && !mj) {
        tally.saddles += count;
      } else {
        tally.mixed += count;
      }
    }
  }
  return tally;
}

int oracle_ii2(const BraidWord& word) {
  MergeTree tree = canonical_fiber_tree(word.strands);
  int total = 0;
  for (const Syllable& s : word.syllables) {
    const SectorTrace trace = deform_syllable(tree, s.generator, s.exponent);
    total += tally_crossings(trace_level_curves(trace)).saddles;
    tree = trace.end_tree;
  }
  return total;
}

// ---------------------------------------------------------------------------

namespace {

using Outcome = std::pair<bool, std::string>;

class Runner {
 public:
  explicit Runner(ValidationReport& report) : report_(report) {}

  void run(const std::string& name, CheckGroup group, const std::function<Outcome()>& check) {
    CheckResult result{name, group, false, {}};
    try {
      auto [ok, detail] = check();
      result.passed = ok;
      result.detail = std::move(detail);
    } catch (const std::exception& e) {
      result.passed = false;
      result.detail = std::string("error: ") + e.what();
    }
    report_.checks.push_back(std::move(result));
  }

 private:
  ValidationReport& report_;
};

std::string eq_detail(const std::string& what, long long got, long long expected) {
  return what + "=" + std::to_string(got) + " expected " + std::to_string(expected);
}

Outcome equal_counts(const std::string& what, long long got, long long expected) {
  return {got == expected, eq_detail(what, got, expected)};
}

int count_points(const std::vector<DoublePoint>& points, DoublePointKind kind) {
  return static_cast<int>(
      std::count_if(points.begin(), points.end(), [kind](const DoublePoint& p) { return p.kind == kind; }));
}

int count_arcs(const std::vector<Arc>& arcs, ArcKind kind) {
  return static_cast<int>(std::count_if(arcs.begin(), arcs.end(), [kind](const Arc& a) { return a.kind == kind; }));
}

// Builds a complex once, remembering why it failed if it did.
struct LazyComplex {
  std::unique_ptr<CellComplex> complex;
  std::string error;

  LazyComplex(const std::vector<SectorTrace>& sectors, DiagramLayer layer) {
    try {
      complex = std::make_unique<CellComplex>(sectors, layer);
    } catch (const std::exception& e) {
      error = e.what();
    }
  }
  const CellComplex& get() const {
    if (!complex) throw std::runtime_error("diagram cannot be built: " + error);
    return *complex;
  }
};

// Stored region per cell; -1 where the stored runs leave a cell uncovered.
// Returns an error string instead when runs overlap or leave the complex.
struct CellMap {
  std::vector<int> region;
  std::string problem;
};

CellMap map_cells(const CellComplex& complex, const std::vector<Region>& regions) {
  CellMap map;
  map.region.assign(static_cast<std::size_t>(complex.cell_count()), -1);
  for (std::size_t r = 0; r < regions.size(); ++r) {
    if (regions[r].id != static_cast<int>(r)) {
      map.problem = "region ids are not 0..R-1 in order";
      return map;
    }
    for (const CellRun& run : regions[r].cells) {
      if (run.sector < 0 || run.sector >= complex.sector_count() || run.gap < 0 ||
          run.gap >= complex.gap_count() || run.band_from < 0 || run.band_from > run.band_to ||
          run.band_to >= complex.band_count(run.sector)) {
        map.problem = "region " + std::to_string(r) + " has a cell run outside the diagram";
        return map;
      }
      for (int b = run.band_from; b <= run.band_to; ++b) {
        int& slot = map.region[static_cast<std::size_t>(complex.cell(run.sector, b, run.gap))];
        if (slot != -1) {
          map.problem = "cell (" + std::to_string(run.sector) + ", " + std::to_string(b) + ", " +
                        std::to_string(run.gap) + ") belongs to two regions";
          return map;
        }
        slot = static_cast<int>(r);
      }
    }
  }
  for (std::size_t c = 0; c < map.region.size(); ++c) {
    if (map.region[c] == -1) {
      map.problem = "cell " + std::to_string(c) + " is not covered by any region";
      return map;
    }
  }
  return map;
}

int label_of_cell(const CellMap& map, const std::vector<Region>& regions, int cell) {
  if (!map.problem.empty()) throw std::runtime_error(map.problem);
  return regions[static_cast<std::size_t>(map.region[static_cast<std::size_t>(cell)])].label;
}

void labeling_checks(Runner& runner, const LazyComplex& lazy, const std::vector<Region>& regions) {
  // Cells are mapped once; the checks below share the mapping.
  auto map = std::make_shared<CellMap>();
  runner.run("labeling.cover", CheckGroup::Labeling, [&]() -> Outcome {
    *map = map_cells(lazy.get(), regions);
    if (!map->problem.empty()) return {false, map->problem};
    return {true, std::to_string(lazy.get().cell_count()) + " cells in " + std::to_string(regions.size()) +
                      " regions"};
  });
  runner.run("labeling.step", CheckGroup::Labeling, [&]() -> Outcome {
    const CellComplex& complex = lazy.get();
    for (const auto& boundary : complex.boundaries()) {
      const int lower = label_of_cell(*map, regions, boundary.lower_cell);
      const int upper = label_of_cell(*map, regions, boundary.upper_cell);
      if (std::abs(upper - lower) != 1) {
        return {false, "labels " + std::to_string(lower) + " and " + std::to_string(upper) +
                           " across arc " + std::to_string(boundary.arc)};
      }
    }
    return {true, std::to_string(complex.boundaries().size()) + " arc segments"};
  });
  runner.run("labeling.cocycle", CheckGroup::Labeling, [&]() -> Outcome {
    const CellComplex& complex = lazy.get();
    for (const auto& x : complex.crossings()) {
      const int below = label_of_cell(*map, regions, x.below);
      const int above = label_of_cell(*map, regions, x.above);
      const int left = label_of_cell(*map, regions, x.left);
      const int right = label_of_cell(*map, regions, x.right);
      // Crossing the same arc on either side of the double point must jump
      // by the same amount.
      const bool steps = std::abs(left - below) == 1 && std::abs(above - left) == 1 &&
                         std::abs(right - below) == 1 && std::abs(above - right) == 1;
      if (!steps || left - below != above - right) {
        return {false, "double point in sector " + std::to_string(x.sector) + " event " +
                           std::to_string(x.event) + " has quadrants below=" + std::to_string(below) +
                           " left=" + std::to_string(left) + " right=" + std::to_string(right) +
                           " above=" + std::to_string(above)};
      }
    }
    return {true, std::to_string(complex.crossings().size()) + " double points"};
  });
}

}  // namespace

const std::vector<std::string>& theorem1_check_names() {
  static const std::vector<std::string> names = {
      "structure.word_canonical", "structure.sectors",       "structure.sector_replay",
      "structure.construction",   "structure.arcs",          "structure.double_points",
      "structure.regions",        "structure.counts",        "theorem1.no_cusps",
      "theorem1.no_ii3",          "theorem1.ii2_formula",    "theorem1.s0_components",
      "theorem1.definite_crossings", "oracle.ii2_simulation", "oracle.stored_trajectories",
      "oracle.permutation",       "labeling.cover",          "labeling.step",
      "labeling.cocycle",         "labeling.outer",          "labeling.cap",
  };
  return names;
}

const std::vector<std::string>& corollary2_check_names() {
  static const std::vector<std::string> names = {
      "structure.base_model",        "structure.arcs",          "structure.double_points",
      "structure.regions",           "structure.counts",        "structure.cap",
      "corollary2.coefficients",     "corollary2.no_definite_folds", "corollary2.no_cusps",
      "corollary2.no_ii3",           "corollary2.ii2_preserved", "corollary2.ii2_formula",
      "corollary2.indefinite_arcs_preserved", "labeling.cover", "labeling.step",
      "labeling.cocycle",            "labeling.solvable",       "labeling.positive",
      "labeling.cap_anchor",
  };
  return names;
}

ValidationReport check_theorem1(const StableMapModel& model) {
  ValidationReport report;
  report.subject = "stable_map";
  Runner runner(report);
  const BraidWord& word = model.word;
  const LazyComplex lazy(model.sectors, DiagramLayer::All);
  const int ii2_points = count_points(model.double_points, DoublePointKind::II2);
  const int definite_points = count_points(model.double_points, DoublePointKind::DefiniteCross);

  runner.run("structure.word_canonical", CheckGroup::Structure, [&]() -> Outcome {
    if (word.strands < 2) return {false, "strands=" + std::to_string(word.strands)};
    for (const Syllable& s : word.syllables) {
      if (s.generator < 1 || s.generator > word.strands - 1) {
        return {false, "generator s" + std::to_string(s.generator) + " out of range"};
      }
    }
    return {is_canonical(word), "word '" + format_braid(word) + "' on " + std::to_string(word.strands) + " strands"};
  });

  runner.run("structure.sectors", CheckGroup::Structure, [&]() -> Outcome {
    const auto& sectors = model.sectors;
    if (sectors.size() != word.syllables.size() + 1) {
      return equal_counts("sectors", static_cast<long long>(sectors.size()),
                          static_cast<long long>(word.syllables.size() + 1));
    }
    for (std::size_t i = 0; i < word.syllables.size(); ++i) {
      if (sectors[i].generator != word.syllables[i].generator || sectors[i].exponent != word.syllables[i].exponent) {
        return {false, "sector " + std::to_string(i) + " does not carry syllable " + std::to_string(i)};
      }
    }
    if (!sectors.back().is_trivial() || !sectors.back().events.empty()) {
      return {false, "last sector must be the event-free sector"};
    }
    if (!(sectors.front().start_tree == canonical_fiber_tree(word.strands))) {
      return {false, "first sector does not start at the canonical fiber tree"};
    }
    for (std::size_t i = 0; i < sectors.size(); ++i) {
      const auto& next = sectors[(i + 1) % sectors.size()];
      const bool glued = i + 1 < sectors.size() ? sectors[i].end_tree == next.start_tree
                                                : sectors[i].end_tree.same_shape(next.start_tree);
      if (!glued) return {false, "sector " + std::to_string(i) + " does not glue to the next one"};
    }
    return {true, std::to_string(sectors.size()) + " sectors glue cyclically"};
  });

  runner.run("structure.sector_replay", CheckGroup::Structure, [&]() -> Outcome {
    for (std::size_t i = 0; i < model.sectors.size(); ++i) {
      try {
        replay(model.sectors[i]);
      } catch (const std::exception& e) {
        return {false, "sector " + std::to_string(i) + ": " + e.what()};
      }
    }
    return {true, "all sector traces replay"};
  });

  runner.run("structure.construction", CheckGroup::Structure, [&]() -> Outcome {
    for (std::size_t i = 0; i < model.sectors.size(); ++i) {
      const SectorTrace& stored = model.sectors[i];
      const SectorTrace rebuilt = stored.is_trivial()
                                      ? trivial_sector(stored.start_tree)
                                      : deform_syllable(stored.start_tree, stored.generator, stored.exponent);
      if (!(rebuilt == stored)) {
        return {false, "sector " + std::to_string(i) + " differs from the deformation schedule"};
      }
    }
    return {true, "sector traces follow the deformation schedule"};
  });

  runner.run("structure.arcs", CheckGroup::Structure, [&]() -> Outcome {
    const auto& expected = lazy.get().arcs();
    if (model.arcs == expected) return {true, std::to_string(expected.size()) + " arcs"};
    return {false, eq_detail("arcs", static_cast<long long>(model.arcs.size()),
                             static_cast<long long>(expected.size())) + " (or their geometry differs)"};
  });

  runner.run("structure.double_points", CheckGroup::Structure, [&]() -> Outcome {
    const StableMapModel rebuilt = assemble(word);
    if (model.double_points == rebuilt.double_points) {
      return {true, std::to_string(rebuilt.double_points.size()) + " double points"};
    }
    return {false, eq_detail("double_points", static_cast<long long>(model.double_points.size()),
                             static_cast<long long>(rebuilt.double_points.size())) +
                       " (or their placement differs)"};
  });

  runner.run("structure.regions", CheckGroup::Structure, [&]() -> Outcome {
    const auto expected = region_labels(model);
    if (model.regions == expected) return {true, std::to_string(expected.size()) + " regions"};
    return {false, eq_detail("regions", static_cast<long long>(model.regions.size()),
                             static_cast<long long>(expected.size())) + " (or their cells/labels differ)"};
  });

  runner.run("structure.counts", CheckGroup::Structure, [&]() -> Outcome {
    const SingularCounts recomputed = singular_counts(model);
    return {model.counts == recomputed, "stored counts against arcs and double points"};
  });

  runner.run("theorem1.no_cusps", CheckGroup::Theorem1,
             [&]() -> Outcome { return equal_counts("cusps", model.counts.cusps, 0); });

  runner.run("theorem1.no_ii3", CheckGroup::Theorem1, [&]() -> Outcome {
    const int points = count_points(model.double_points, DoublePointKind::II3);
    return {model.counts.ii3 == 0 && points == 0,
            "ii3=" + std::to_string(model.counts.ii3) + " ii3_points=" + std::to_string(points)};
  });

  runner.run("theorem1.ii2_formula", CheckGroup::Theorem1, [&]() -> Outcome {
    const PredictedCounts predicted = predicted_counts(word);
    const bool ok = ii2_points == predicted.ii2 && model.counts.ii2 == predicted.ii2;
    return {ok, "ii2=" + std::to_string(ii2_points) + " 2(l-X)=2(" + std::to_string(predicted.syllables) + "-" +
                    std::to_string(predicted.sigma1_syllables) + ")=" + std::to_string(predicted.ii2)};
  });

  runner.run("theorem1.s0_components", CheckGroup::Theorem1, [&]() -> Outcome {
    const int arcs = count_arcs(model.arcs, ArcKind::Definite);
    const int cycles = closure_component_count(word);
    return {arcs == cycles && model.counts.s0_components == cycles,
            "definite_arcs=" + std::to_string(arcs) + " closure_components=" + std::to_string(cycles)};
  });

  runner.run("theorem1.definite_crossings", CheckGroup::Theorem1, [&]() -> Outcome {
    const int expected = crossing_count(word);
    return {definite_points == expected && model.counts.definite_crossings == expected,
            eq_detail("definite_crossings", definite_points, expected)};
  });

  runner.run("oracle.ii2_simulation", CheckGroup::Oracle, [&]() -> Outcome {
    return equal_counts("ii2_points vs simulated", ii2_points, oracle_ii2(word));
  });

  runner.run("oracle.stored_trajectories", CheckGroup::Oracle, [&]() -> Outcome {
    CrossingTally total;
    for (const auto& sector : model.sectors) {
      const CrossingTally t = tally_crossings(trace_level_curves(sector));
      total.minima += t.minima;
      total.saddles += t.saddles;
      total.mixed += t.mixed;
    }
    const bool ok = total.saddles == ii2_points && total.minima == definite_points && total.mixed == 0;
    return {ok, "trajectory crossings saddle=" + std::to_string(total.saddles) + " minima=" +
                    std::to_string(total.minima) + " mixed=" + std::to_string(total.mixed) +
                    "; diagram ii2=" + std::to_string(ii2_points) + " definite=" + std::to_string(definite_points)};
  });

  runner.run("oracle.permutation", CheckGroup::Oracle, [&]() -> Outcome {
    const Permutation perm = underlying_permutation(word);
    const MergeTree& end = model.sectors.back().end_tree;
    for (int label = 1; label <= word.strands; ++label) {
      if (end.minimum_with_label(label) + 1 != perm(label)) {
        return {false, "strand " + std::to_string(label) + " ends at slot " +
                           std::to_string(end.minimum_with_label(label) + 1) + ", permutation says " +
                           std::to_string(perm(label))};
      }
    }
    return {true, "leaf labels realize the braid permutation"};
  });

  labeling_checks(runner, lazy, model.regions);

  runner.run("labeling.outer", CheckGroup::Labeling, [&]() -> Outcome {
    const CellComplex& complex = lazy.get();
    const int outer = complex.region_of_cell(complex.cell(0, 0, 0));
    std::vector<int> zero;
    for (const Region& r : model.regions) {
      if (r.label == 0) zero.push_back(r.id);
    }
    const bool ok = zero.size() == 1 && zero.front() == outer &&
                    model.regions[static_cast<std::size_t>(outer)].has_marker("outer");
    return {ok, std::to_string(zero.size()) + " region(s) with label 0"};
  });

  runner.run("labeling.cap", CheckGroup::Labeling, [&]() -> Outcome {
    const CellComplex& complex = lazy.get();
    const int top = complex.region_of_cell(complex.cell(0, 0, complex.gap_count() - 1));
    const Region& r = model.regions.at(static_cast<std::size_t>(top));
    return {r.label == 1 && r.has_marker("E"), "E cap region label " + std::to_string(r.label)};
  });

  return report;
}

ValidationReport check_corollary2(const SurgeredMapModel& model) {
  ValidationReport report;
  report.subject = "surgered_map";
  Runner runner(report);
  const LazyComplex lazy(model.base.sectors, DiagramLayer::IndefiniteOnly);
  const int tori = count_arcs(model.base.arcs, ArcKind::Definite);
  const int ii2_points = count_points(model.double_points, DoublePointKind::II2);

  runner.run("structure.base_model", CheckGroup::Structure, [&]() -> Outcome {
    const ValidationReport base = check_theorem1(model.base);
    for (const auto& c : base.checks) {
      if (!c.passed) return {false, "base model fails " + c.name + ": " + c.detail};
    }
    return {true, "base model passes every check"};
  });

  runner.run("structure.arcs", CheckGroup::Structure, [&]() -> Outcome {
    std::vector<Arc> expected;
    for (const Arc& arc : lazy.get().arcs()) {
      if (arc.kind == ArcKind::Indefinite) expected.push_back(arc);
    }
    return {model.arcs == expected, eq_detail("arcs", static_cast<long long>(model.arcs.size()),
                                              static_cast<long long>(expected.size()))};
  });

  runner.run("structure.double_points", CheckGroup::Structure, [&]() -> Outcome {
    std::vector<DoublePoint> expected;
    for (const DoublePoint& p : model.base.double_points) {
      if (p.kind == DoublePointKind::II2) expected.push_back(p);
    }
    // Gaps are renumbered once the definite curves are gone.
    const auto& crossings = lazy.get().crossings();
    if (expected.size() != crossings.size() || model.double_points.size() != expected.size()) {
      return {false, eq_detail("double_points", static_cast<long long>(model.double_points.size()),
                               static_cast<long long>(crossings.size()))};
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
      expected[i].gap = crossings[i].gap;
      if (!(model.double_points[i] == expected[i])) {
        return {false, "double point " + std::to_string(i) + " differs from the base II2 point"};
      }
    }
    return {true, std::to_string(expected.size()) + " double points"};
  });

  runner.run("structure.regions", CheckGroup::Structure, [&]() -> Outcome {
    const auto expected = solve_surgered_labels(model);
    return {model.regions == expected, eq_detail("regions", static_cast<long long>(model.regions.size()),
                                                 static_cast<long long>(expected.size()))};
  });

  runner.run("structure.counts", CheckGroup::Structure, [&]() -> Outcome {
    return {model.counts == singular_counts(model), "stored counts against arcs and double points"};
  });

  runner.run("structure.cap", CheckGroup::Structure, [&]() -> Outcome {
    const CellComplex& complex = lazy.get();
    const int d3 = complex.region_of_cell(complex.cell(0, 0, 0));
    const bool ok = model.cap.region == d3 && model.cap.label == tori &&
                    model.cap.annotation == cap_annotation(model.coefficients);
    return {ok, "cap region " + std::to_string(model.cap.region) + " label " + std::to_string(model.cap.label) +
                    " annotation " + model.cap.annotation};
  });

  runner.run("corollary2.coefficients", CheckGroup::Corollary2, [&]() -> Outcome {
    return equal_counts("coefficients", static_cast<long long>(model.coefficients.size()), tori);
  });

  runner.run("corollary2.no_definite_folds", CheckGroup::Corollary2, [&]() -> Outcome {
    const int arcs = count_arcs(model.arcs, ArcKind::Definite);
    const int points = count_points(model.double_points, DoublePointKind::DefiniteCross);
    return {arcs == 0 && points == 0 && model.counts.s0_components == 0,
            "definite_arcs=" + std::to_string(arcs) + " s0=" + std::to_string(model.counts.s0_components)};
  });

  runner.run("corollary2.no_cusps", CheckGroup::Corollary2,
             [&]() -> Outcome { return equal_counts("cusps", model.counts.cusps, 0); });

  runner.run("corollary2.no_ii3", CheckGroup::Corollary2, [&]() -> Outcome {
    const int points = count_points(model.double_points, DoublePointKind::II3);
    return {model.counts.ii3 == 0 && points == 0, "ii3=" + std::to_string(model.counts.ii3)};
  });

  runner.run("corollary2.ii2_preserved", CheckGroup::Corollary2, [&]() -> Outcome {
    const int base = count_points(model.base.double_points, DoublePointKind::II2);
    return {ii2_points == base && model.counts.ii2 == base, eq_detail("ii2", ii2_points, base)};
  });

  runner.run("corollary2.ii2_formula", CheckGroup::Corollary2, [&]() -> Outcome {
    return equal_counts("ii2", ii2_points, predicted_counts(model.base.word).ii2);
  });

  runner.run("corollary2.indefinite_arcs_preserved", CheckGroup::Corollary2, [&]() -> Outcome {
    std::vector<Arc> base;
    for (const Arc& arc : model.base.arcs) {
      if (arc.kind == ArcKind::Indefinite) base.push_back(arc);
    }
    return {model.arcs == base, eq_detail("indefinite_arcs", static_cast<long long>(model.arcs.size()),
                                          static_cast<long long>(base.size()))};
  });

  labeling_checks(runner, lazy, model.regions);

  runner.run("labeling.solvable", CheckGroup::Labeling, [&]() -> Outcome {
    const auto solved = solve_surgered_labels(model);
    return {true, std::to_string(solved.size()) + " regions labelled from the D3 anchor"};
  });

  runner.run("labeling.positive", CheckGroup::Labeling, [&]() -> Outcome {
    for (const Region& r : model.regions) {
      if (r.label < 1) return {false, "region " + std::to_string(r.id) + " has label " + std::to_string(r.label)};
    }
    return {!model.regions.empty(), "all labels >= 1"};
  });

  runner.run("labeling.cap_anchor", CheckGroup::Labeling, [&]() -> Outcome {
    const CellComplex& complex = lazy.get();
    const Region& r = model.regions.at(static_cast<std::size_t>(complex.region_of_cell(complex.cell(0, 0, 0))));
    return {r.label == tori && r.has_marker("D3"), eq_detail("D3 label", r.label, tori)};
  });

  return report;
}

std::string format_report(const ValidationReport& report) {
  std::size_t width = 5;
  for (const auto& c : report.checks) width = std::max(width, c.name.size());
  std::ostringstream out;
  out << "validation report (" << report.subject << ")";
  if (report.seed) out << " seed=" << *report.seed;
  out << '\n';
  const auto pad = [width](const std::string& s) { return s + std::string(width + 2 - s.size(), ' '); };
  out << pad("check") << "result  detail\n";
  for (const auto& c : report.checks) {
    out << pad(c.name) << (c.passed ? "PASS    " : "FAIL    ") << c.detail << '\n';
  }
  const auto yn = [](bool b) { return b ? "pass" : "FAIL"; };
  out << "summary: theorem1=" << yn(report.theorem1()) << " corollary2=" << yn(report.corollary2())
      << " labeling=" << yn(report.labeling()) << " oracle_agreement=" << yn(report.oracle_agreement())
      << " overall=" << (report.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

}  // namespace stablefold
