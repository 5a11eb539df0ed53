#include "stablefold/serialize.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

namespace stablefold {

const char* to_string(SerializeErrc code) noexcept {
  switch (code) {
    case SerializeErrc::SchemaMismatch: return "SchemaMismatch";
    case SerializeErrc::Corrupted: return "Corrupted";
    case SerializeErrc::Io: return "Io";
  }
  return "Unknown";
}

namespace {

[[noreturn]] void corrupted(const std::string& what) {
  throw SerializeError(SerializeErrc::Corrupted, "corrupted model: " + what);
}

Json rational(const Rational& r) { return to_string(r); }

Json pair(int a, int b) {
  Json j = Json::array();
  j.get_ref<Json::array_t&>().reserve(2);
  j.push_back(a);
  j.push_back(b);
  return j;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) corrupted(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) corrupted(std::string("missing field '") + key + "'");
  return *it;
}

int get_int(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) corrupted(std::string("field '") + key + "' is not an integer");
  const auto value = v.get<std::int64_t>();
  if (value < INT32_MIN || value > INT32_MAX) corrupted(std::string("field '") + key + "' is out of range");
  return static_cast<int>(value);
}

int as_int(const Json& v, const char* what) {
  if (!v.is_number_integer()) corrupted(std::string(what) + " is not an integer");
  const auto value = v.get<std::int64_t>();
  if (value < INT32_MIN || value > INT32_MAX) corrupted(std::string(what) + " is out of range");
  return static_cast<int>(value);
}

std::string get_string(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) corrupted(std::string("field '") + key + "' is not a string");
  return v.get<std::string>();
}

Rational as_rational(const Json& v, const char* what) {
  if (!v.is_string()) corrupted(std::string(what) + " is not a \"p/q\" string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::exception& e) {
    corrupted(std::string(what) + ": " + e.what());
  }
}

Rational get_rational(const Json& j, const char* key) { return as_rational(field(j, key), key); }

const Json& get_array(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) corrupted(std::string("field '") + key + "' is not an array");
  return v;
}

std::array<int, 2> int_pair(const Json& v, const char* what) {
  if (!v.is_array() || v.size() != 2) corrupted(std::string(what) + " is not a pair");
  return {as_int(v[0], what), as_int(v[1], what)};
}

const char* arc_kind_name(ArcKind kind) { return kind == ArcKind::Definite ? "definite" : "indefinite"; }

ArcKind arc_kind_from(const std::string& s) {
  if (s == "definite") return ArcKind::Definite;
  if (s == "indefinite") return ArcKind::Indefinite;
  corrupted("unknown arc kind '" + s + "'");
}

const char* point_kind_name(DoublePointKind kind) {
  switch (kind) {
    case DoublePointKind::DefiniteCross: return "definite_cross";
    case DoublePointKind::II2: return "ii2";
    case DoublePointKind::II3: return "ii3";
  }
  return "unknown";
}

DoublePointKind point_kind_from(const std::string& s) {
  if (s == "definite_cross") return DoublePointKind::DefiniteCross;
  if (s == "ii2") return DoublePointKind::II2;
  if (s == "ii3") return DoublePointKind::II3;
  corrupted("unknown double point kind '" + s + "'");
}

EventKind event_kind_from(const std::string& s) {
  if (s == "saddle_cross") return EventKind::SaddleCross;
  if (s == "minima_cross") return EventKind::MinimaCross;
  if (s == "half_twist") return EventKind::HalfTwist;
  corrupted("unknown event kind '" + s + "'");
}

Json arcs_json(const std::vector<Arc>& arcs) {
  Json out = Json::array();
  for (const Arc& arc : arcs) {
    Json pieces = Json::array();
    for (const ArcPiece& p : arc.pieces) pieces.push_back(pair(p.sector, p.tag));
    Json points = Json::array();
    for (const ArcPoint& p : arc.points) {
      Json point = Json::array();
      point.push_back(rational(p.theta));
      point.push_back(rational(p.level));
      points.push_back(std::move(point));
    }
    Json j;
    j["id"] = arc.id;
    j["kind"] = arc_kind_name(arc.kind);
    j["pieces"] = std::move(pieces);
    j["points"] = std::move(points);
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<Arc> arcs_from(const Json& j) {
  std::vector<Arc> arcs;
  for (const Json& a : j) {
    Arc arc;
    arc.id = get_int(a, "id");
    arc.kind = arc_kind_from(get_string(a, "kind"));
    for (const Json& p : get_array(a, "pieces")) {
      const auto pair = int_pair(p, "arc piece");
      arc.pieces.push_back({pair[0], pair[1]});
    }
    for (const Json& p : get_array(a, "points")) {
      if (!p.is_array() || p.size() != 2) corrupted("arc point is not a pair");
      arc.points.push_back({as_rational(p[0], "arc point theta"), as_rational(p[1], "arc point level")});
    }
    arcs.push_back(std::move(arc));
  }
  return arcs;
}

Json points_json(const std::vector<DoublePoint>& points) {
  Json out = Json::array();
  for (const DoublePoint& p : points) {
    Json j;
    j["arcs"] = pair(p.arcs[0], p.arcs[1]);
    j["event"] = p.event;
    j["gap"] = p.gap;
    j["kind"] = point_kind_name(p.kind);
    j["level"] = rational(p.level);
    j["sector"] = p.sector;
    j["sign"] = p.sign;
    j["theta"] = rational(p.theta);
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<DoublePoint> points_from(const Json& j) {
  std::vector<DoublePoint> points;
  for (const Json& v : j) {
    DoublePoint p;
    p.arcs = int_pair(field(v, "arcs"), "double point arcs");
    p.event = get_int(v, "event");
    p.gap = get_int(v, "gap");
    p.kind = point_kind_from(get_string(v, "kind"));
    p.level = get_rational(v, "level");
    p.sector = get_int(v, "sector");
    p.sign = get_int(v, "sign");
    p.theta = get_rational(v, "theta");
    points.push_back(p);
  }
  return points;
}

Json regions_json(const std::vector<Region>& regions) {
  Json out = Json::array();
  for (const Region& r : regions) {
    Json cells = Json::array();
    for (const CellRun& c : r.cells) {
      Json run = Json::array();
      for (int v : {c.sector, c.gap, c.band_from, c.band_to}) run.push_back(v);
      cells.push_back(std::move(run));
    }
    Json j;
    j["cells"] = std::move(cells);
    j["id"] = r.id;
    j["label"] = r.label;
    j["markers"] = r.markers;
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<Region> regions_from(const Json& j) {
  std::vector<Region> regions;
  for (const Json& v : j) {
    Region r;
    r.id = get_int(v, "id");
    r.label = get_int(v, "label");
    for (const Json& c : get_array(v, "cells")) {
      if (!c.is_array() || c.size() != 4) corrupted("cell run is not a 4-tuple");
      r.cells.push_back({as_int(c[0], "cell sector"), as_int(c[1], "cell gap"), as_int(c[2], "cell band"),
                         as_int(c[3], "cell band")});
    }
    for (const Json& m : get_array(v, "markers")) {
      if (!m.is_string()) corrupted("region marker is not a string");
      r.markers.push_back(m.get<std::string>());
    }
    regions.push_back(std::move(r));
  }
  return regions;
}

Json counts_json(const SingularCounts& c) {
  return {{"cusps", c.cusps},
          {"definite_crossings", c.definite_crossings},
          {"ii2", c.ii2},
          {"ii3", c.ii3},
          {"s0_components", c.s0_components}};
}

SingularCounts counts_from(const Json& j) {
  SingularCounts c;
  c.cusps = get_int(j, "cusps");
  c.definite_crossings = get_int(j, "definite_crossings");
  c.ii2 = get_int(j, "ii2");
  c.ii3 = get_int(j, "ii3");
  c.s0_components = get_int(j, "s0_components");
  return c;
}

Json stable_body(const StableMapModel& model) {
  Json sectors = Json::array();
  for (const auto& s : model.sectors) sectors.push_back(to_json(s));
  Json j;
  j["arcs"] = arcs_json(model.arcs);
  j["counts"] = counts_json(model.counts);
  j["double_points"] = points_json(model.double_points);
  j["regions"] = regions_json(model.regions);
  j["sectors"] = std::move(sectors);
  j["word"] = to_json(model.word);
  return j;
}

StableMapModel stable_body_from(const Json& j) {
  StableMapModel m;
  m.arcs = arcs_from(get_array(j, "arcs"));
  m.counts = counts_from(field(j, "counts"));
  m.double_points = points_from(get_array(j, "double_points"));
  m.regions = regions_from(get_array(j, "regions"));
  for (const Json& s : get_array(j, "sectors")) m.sectors.push_back(sector_from_json(s));
  m.word = word_from_json(field(j, "word"));
  return m;
}

void check_header(const Json& j, const char* kind) {
  if (!j.is_object()) {
    throw SerializeError(SerializeErrc::SchemaMismatch, "schema mismatch: top level is not an object");
  }
  const auto schema = j.find("schema");
  if (schema == j.end() || !schema->is_string() || schema->get<std::string>() != kSchema) {
    const std::string found = schema == j.end() ? "none" : schema->dump();
    throw SerializeError(SerializeErrc::SchemaMismatch,
                         std::string("schema mismatch: expected \"") + kSchema + "\", found " + found);
  }
  if (get_string(j, "kind") != kind) corrupted(std::string("expected kind '") + kind + "'");
}

}  // namespace

Json to_json(const BraidWord& word) {
  Json syllables = Json::array();
  for (const Syllable& s : word.syllables) syllables.push_back(pair(s.generator, s.exponent));
  Json j;
  j["strands"] = word.strands;
  j["syllables"] = std::move(syllables);
  return j;
}

BraidWord word_from_json(const Json& j) {
  BraidWord word;
  word.strands = get_int(j, "strands");
  if (word.strands < 2) corrupted("word.strands must be at least 2");
  for (const Json& s : get_array(j, "syllables")) {
    const auto pair = int_pair(s, "syllable");
    if (pair[0] < 1 || pair[0] >= word.strands) corrupted("word generator out of range");
    word.syllables.push_back({pair[0], pair[1]});
  }
  return word;
}

Json to_json(const MergeTree& tree) {
  Json nodes = Json::array();
  for (const TreeNode& n : tree.nodes()) {
    Json j;
    j["children"] = pair(n.children[0], n.children[1]);
    j["height"] = rational(n.height);
    j["parent"] = n.parent;
    j["tag"] = n.tag;
    nodes.push_back(std::move(j));
  }
  Json j;
  j["nodes"] = std::move(nodes);
  j["strands"] = tree.strands();
  return j;
}

MergeTree tree_from_json(const Json& j) {
  std::vector<TreeNode> nodes;
  for (const Json& v : get_array(j, "nodes")) {
    TreeNode n;
    n.children = int_pair(field(v, "children"), "tree node children");
    n.height = get_rational(v, "height");
    n.parent = get_int(v, "parent");
    n.tag = get_int(v, "tag");
    nodes.push_back(n);
  }
  try {
    return MergeTree::from_nodes(get_int(j, "strands"), std::move(nodes));
  } catch (const MorseError& e) {
    corrupted(std::string("invalid tree: ") + e.what());
  }
}

Json to_json(const SectorTrace& trace) {
  Json events = Json::array();
  for (const TraceEvent& e : trace.events) {
    Json j;
    j["a"] = e.a;
    j["b"] = e.b;
    j["kind"] = to_string(e.kind);
    j["sign"] = e.sign;
    j["time"] = rational(e.time);
    events.push_back(std::move(j));
  }
  Json states = Json::array();
  for (const MarkedState& s : trace.states) {
    Json j;
    j["name"] = s.name;
    j["time"] = rational(s.time);
    states.push_back(std::move(j));
  }
  Json j;
  j["end_tree"] = to_json(trace.end_tree);
  j["events"] = std::move(events);
  j["exponent"] = trace.exponent;
  j["generator"] = trace.generator;
  j["start_tree"] = to_json(trace.start_tree);
  j["states"] = std::move(states);
  return j;
}

SectorTrace sector_from_json(const Json& j) {
  SectorTrace t;
  t.end_tree = tree_from_json(field(j, "end_tree"));
  for (const Json& v : get_array(j, "events")) {
    TraceEvent e;
    e.a = get_int(v, "a");
    e.b = get_int(v, "b");
    e.kind = event_kind_from(get_string(v, "kind"));
    e.sign = get_int(v, "sign");
    e.time = get_rational(v, "time");
    t.events.push_back(e);
  }
  t.exponent = get_int(j, "exponent");
  t.generator = get_int(j, "generator");
  t.start_tree = tree_from_json(field(j, "start_tree"));
  for (const Json& v : get_array(j, "states")) t.states.push_back({get_string(v, "name"), get_rational(v, "time")});
  return t;
}

Json to_json(const StableMapModel& model) {
  Json j = stable_body(model);
  j["kind"] = "stable_map";
  j["schema"] = kSchema;
  return j;
}

Json to_json(const SurgeredMapModel& model) {
  Json cap;
  cap["annotation"] = model.cap.annotation;
  cap["label"] = model.cap.label;
  cap["region"] = model.cap.region;
  Json j;
  j["arcs"] = arcs_json(model.arcs);
  j["base"] = stable_body(model.base);
  j["cap"] = std::move(cap);
  j["coefficients"] = model.coefficients;
  j["counts"] = counts_json(model.counts);
  j["double_points"] = points_json(model.double_points);
  j["kind"] = "surgered_map";
  j["regions"] = regions_json(model.regions);
  j["schema"] = kSchema;
  return j;
}

StableMapModel stable_model_from_json(const Json& j) {
  check_header(j, "stable_map");
  return stable_body_from(j);
}

SurgeredMapModel surgered_model_from_json(const Json& j) {
  check_header(j, "surgered_map");
  SurgeredMapModel m;
  m.arcs = arcs_from(get_array(j, "arcs"));
  m.base = stable_body_from(field(j, "base"));
  const Json& cap = field(j, "cap");
  m.cap.annotation = get_string(cap, "annotation");
  m.cap.label = get_int(cap, "label");
  m.cap.region = get_int(cap, "region");
  for (const Json& c : get_array(j, "coefficients")) m.coefficients.push_back(as_int(c, "coefficient"));
  m.counts = counts_from(field(j, "counts"));
  m.double_points = points_from(get_array(j, "double_points"));
  m.regions = regions_from(get_array(j, "regions"));
  return m;
}

Json to_json(const ValidationReport& report) {
  Json checks = Json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back({{"detail", c.detail}, {"group", to_string(c.group)}, {"name", c.name}, {"passed", c.passed}});
  }
  Json j = {{"checks", checks},
            {"subject", report.subject},
            {"summary",
             {{"corollary2", report.corollary2()},
              {"labeling", report.labeling()},
              {"oracle_agreement", report.oracle_agreement()},
              {"passed", report.passed()},
              {"theorem1", report.theorem1()}}}};
  j["seed"] = report.seed ? Json(*report.seed) : Json(nullptr);
  return j;
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

std::string serialize(const StableMapModel& model) { return dump(to_json(model)); }
std::string serialize(const SurgeredMapModel& model) { return dump(to_json(model)); }

AnyModel parse_model(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    corrupted(std::string("not JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw SerializeError(SerializeErrc::SchemaMismatch, "schema mismatch: top level is not an object");
  }
  if (j.contains("schema") && j["schema"] == kSchema && j.contains("kind") && j["kind"] == "surgered_map") {
    return surgered_model_from_json(j);
  }
  if (j.contains("schema") && j["schema"] == kSchema && j.contains("kind") && j["kind"] != "stable_map") {
    corrupted("unknown model kind " + j["kind"].dump());
  }
  return stable_model_from_json(j);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SerializeError(SerializeErrc::Io, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

AnyModel read_model(const std::filesystem::path& path) { return parse_model(read_text(path)); }

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path target = path;
  if (target.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(target.parent_path(), ec);
  }
  std::filesystem::path temp = target;
  temp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw SerializeError(SerializeErrc::Io, "cannot open '" + temp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw SerializeError(SerializeErrc::Io, "failed writing '" + temp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(temp, target, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    throw SerializeError(SerializeErrc::Io, "cannot rename into '" + target.string() + "'");
  }
}

}  // namespace stablefold
