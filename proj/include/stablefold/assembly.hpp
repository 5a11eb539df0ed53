#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "stablefold/braid.hpp"
#include "stablefold/morse.hpp"
#include "stablefold/rational.hpp"

namespace stablefold {

enum class AssemblyErrc {
  NonCanonicalWord,
  NonGenericDiagram,
  InconsistentLabeling,
  NoConsistentLabeling,
  CoefficientCountMismatch,
};

const char* to_string(AssemblyErrc code) noexcept;

class AssemblyError : public std::runtime_error {
 public:
  AssemblyError(AssemblyErrc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  AssemblyErrc code() const noexcept { return code_; }

 private:
  AssemblyErrc code_;
};

enum class ArcKind { Definite, Indefinite };

// Diagram coordinates: theta in [0, S] runs once around the annulus (sector
// s covers [s, s + 1]), level is the fiber height, growing towards the cap E.
struct ArcPoint {
  Rational theta;
  Rational level;

  bool operator==(const ArcPoint&) const = default;
};

// The critical point an arc follows through one sector, in traversal order.
struct ArcPiece {
  int sector = 0;
  int tag = 0;

  bool operator==(const ArcPiece&) const = default;
};

// A closed curve of the singular value set. Definite arcs trace the minima
// (one per link component), indefinite arcs the saddles.
struct Arc {
  int id = 0;
  ArcKind kind = ArcKind::Definite;
  std::vector<ArcPiece> pieces;
  std::vector<ArcPoint> points;

  bool operator==(const Arc&) const = default;
};

// II3 is never generated; it exists so that a model read from disk can say so.
enum class DoublePointKind { DefiniteCross, II2, II3 };

struct DoublePoint {
  DoublePointKind kind = DoublePointKind::DefiniteCross;
  int sector = 0;
  int event = 0;   // index into the sector's event list
  int gap = 0;     // the gap pinched off at the crossing
  Rational theta;
  Rational level;
  std::array<int, 2> arcs{0, 0};   // lower-then-upper before the crossing
  int sign = 0;    // braid crossing sign for definite crossings, else 0

  bool operator==(const DoublePoint&) const = default;
};

// Cells are (sector, band, gap): band b of a sector lies between its events
// b and b + 1, gap g between the (g-1)-th and g-th drawn curve from the
// bottom. A run covers bands [band_from, band_to] of one (sector, gap).
struct CellRun {
  int sector = 0;
  int gap = 0;
  int band_from = 0;
  int band_to = 0;

  bool operator==(const CellRun&) const = default;
};

struct Region {
  int id = 0;
  int label = 0;
  std::vector<CellRun> cells;
  // "outer" (unbounded side of the annulus), "E" (inner capping disk),
  // "D3" (surgery cap glued along the outer boundary).
  std::vector<std::string> markers;

  bool has_marker(const std::string& m) const;
  bool operator==(const Region&) const = default;
};

struct SingularCounts {
  int cusps = 0;
  int s0_components = 0;
  int ii2 = 0;
  int ii3 = 0;
  int definite_crossings = 0;

  bool operator==(const SingularCounts&) const = default;
};

// Singular value diagram of f : S^3 -> R^2 over D = A u E. Sectors T_1..T_l
// follow the syllables; the last sector is the event-free R_2.
struct StableMapModel {
  BraidWord word;
  std::vector<SectorTrace> sectors;
  std::vector<Arc> arcs;
  std::vector<DoublePoint> double_points;
  std::vector<Region> regions;
  SingularCounts counts;

  bool operator==(const StableMapModel&) const = default;
};

struct CapDisk {
  int label = 0;
  int region = 0;
  std::string annotation;   // "(p1,...,pk)"

  bool operator==(const CapDisk&) const = default;
};

// The map f0 : M -> S^2 after integral surgery on every link component.
struct SurgeredMapModel {
  StableMapModel base;
  std::vector<int> coefficients;   // one per definite arc, in arc order
  std::vector<Arc> arcs;
  std::vector<DoublePoint> double_points;
  std::vector<Region> regions;
  CapDisk cap;
  SingularCounts counts;

  bool operator==(const SurgeredMapModel&) const = default;
};

// Which curves partition the annulus into cells.
enum class DiagramLayer { All, IndefiniteOnly };

// Combinatorial skeleton shared by both models: cells, their gluing into
// regions, arcs separating vertically adjacent cells, and crossings.
class CellComplex {
 public:
  struct Boundary {
    int lower_cell = 0;
    int upper_cell = 0;
    int arc = 0;
  };
  struct Crossing {
    int sector = 0;
    int event = 0;
    int gap = 0;
    std::array<int, 2> arcs{0, 0};
    // cells around the crossing point
    int below = 0;
    int above = 0;
    int left = 0;
    int right = 0;
  };

  CellComplex(const std::vector<SectorTrace>& sectors, DiagramLayer layer);

  int gap_count() const noexcept { return gaps_; }
  int sector_count() const noexcept { return static_cast<int>(band_offset_.size()); }
  int band_count(int sector) const;
  int cell_count() const noexcept { return static_cast<int>(region_of_cell_.size()); }
  int cell(int sector, int band, int gap) const;
  int sector_of_cell(int cell) const;
  int band_of_cell(int cell) const;
  int gap_of_cell(int cell) const { return cell % gaps_; }

  // Regions are numbered by their first cell in (sector, band, gap) order.
  int region_count() const noexcept { return regions_; }
  int region_of_cell(int cell) const { return region_of_cell_.at(static_cast<std::size_t>(cell)); }
  std::vector<CellRun> runs_of_region(int region) const;

  const std::vector<Boundary>& boundaries() const noexcept { return boundaries_; }
  const std::vector<Crossing>& crossings() const noexcept { return crossings_; }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  const std::vector<std::vector<MergeTree>>& states() const noexcept { return states_; }

  // Regular level in the middle of a cell's gap.
  Rational gap_level(int sector, int band, int gap) const;
  // Arc id of the drawn curve at vertical position p in a band.
  int arc_at(int sector, int band, int position) const;

 private:
  std::vector<std::vector<MergeTree>> states_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> order_;   // per global band: drawn node slots bottom to top
  std::vector<std::vector<int>> arc_order_;
  std::vector<int> band_offset_;
  int gaps_ = 0;
  int regions_ = 0;
  std::vector<int> region_of_cell_;
  std::vector<Boundary> boundaries_;
  std::vector<Crossing> crossings_;
};

// Closed curves traced through the cyclically glued sectors. Definite arcs
// first (by smallest starting slot), then indefinite arcs.
std::vector<Arc> trace_arcs(const std::vector<SectorTrace>& sectors,
                            const std::vector<std::vector<MergeTree>>& states);

// Chains deform_syllable over a canonical word, closes with the trivial
// sector and populates arcs, double points, labelled regions and counts.
StableMapModel assemble(const BraidWord& word);

// Fiber-count labels from the sector trees. Throws InconsistentLabeling if
// one region would carry two labels.
std::vector<Region> region_labels(const StableMapModel& model);

SingularCounts singular_counts(const StableMapModel& model);
SingularCounts singular_counts(const SurgeredMapModel& model);

// Integral surgery along every component: definite arcs removed, the outer
// collar capped by D3. Throws CoefficientCountMismatch.
SurgeredMapModel do_surgery(const StableMapModel& model, const std::vector<int>& coefficients);

// Labels on the S^2 diagram anchored at the D3 cap (one circle per surgery
// torus), stepping by +1 across each indefinite arc towards E. Throws
// NoConsistentLabeling if the constraints disagree or a label drops below 1.
std::vector<Region> solve_surgered_labels(const SurgeredMapModel& model);

std::string cap_annotation(const std::vector<int>& coefficients);

}  // namespace stablefold
