#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <regex>

#include "stablefold/assembly.hpp"
#include "stablefold/braid.hpp"
#include "stablefold/render.hpp"
#include "stablefold/serialize.hpp"
#include "stablefold/validate.hpp"
#include "support.hpp"

using namespace stablefold;

namespace {

StableMapModel build(const char* text, int strands) { return assemble(canonicalize(parse_braid(text, strands))); }

SerializeErrc parse_error(const std::string& text) {
  try {
    parse_model(text);
  } catch (const SerializeError& e) {
    return e.code();
  }
  FAIL("expected a SerializeError");
  return SerializeErrc::Io;
}

int occurrences(const std::string& text, const std::string& needle) {
  int n = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

// Object keys must appear in sorted order at every level.
bool keys_sorted(const Json& j) {
  if (j.is_array()) return std::all_of(j.begin(), j.end(), keys_sorted);
  if (!j.is_object()) return true;
  std::string previous;
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first && !(previous < it.key())) return false;
    previous = it.key();
    first = false;
    if (!keys_sorted(it.value())) return false;
  }
  return true;
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / ("stablefold_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("stable models round-trip byte for byte") {
  const StableMapModel m = build("s2^3", 3);
  const std::string text = serialize(m);
  CHECK(text.back() == '\n');
  CHECK(std::count(text.begin(), text.end(), '\n') == 1);
  const AnyModel back = parse_model(text);
  REQUIRE(std::holds_alternative<StableMapModel>(back));
  CHECK(std::get<StableMapModel>(back) == m);
  CHECK(serialize(std::get<StableMapModel>(back)) == text);

  const Json j = Json::parse(text);
  CHECK(j["schema"] == kSchema);
  CHECK(j["kind"] == "stable_map");
  CHECK(keys_sorted(j));
  CHECK(j["counts"]["ii2"] == 2);
  CHECK(j["word"]["syllables"] == Json::parse("[[2,3]]"));
  // Rationals are strings "p/q".
  const std::regex rational(R"(-?\d+/\d+)");
  for (const Json& point : j["arcs"][1]["points"]) {
    CHECK(std::regex_match(point[0].get<std::string>(), rational));
    CHECK(std::regex_match(point[1].get<std::string>(), rational));
  }
}

TEST_CASE("surgered models round-trip") {
  const SurgeredMapModel s = do_surgery(build("s2^3", 3), {3, -1});
  const std::string text = serialize(s);
  const AnyModel back = parse_model(text);
  REQUIRE(std::holds_alternative<SurgeredMapModel>(back));
  CHECK(std::get<SurgeredMapModel>(back) == s);
  CHECK(serialize(std::get<SurgeredMapModel>(back)) == text);
  const Json j = Json::parse(text);
  CHECK(j["kind"] == "surgered_map");
  CHECK(j["cap"]["annotation"] == "(3,-1)");
  CHECK(j["coefficients"] == Json::parse("[3,-1]"));
  CHECK_FALSE(j["base"].contains("schema"));
  CHECK(keys_sorted(j));
}

TEST_CASE("random models round-trip") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const StableMapModel m = assemble(testing::random_canonical_word(rng, 5, 6, 3));
    const std::string text = serialize(m);
    CHECK(std::get<StableMapModel>(parse_model(text)) == m);
    std::vector<int> coefficients(static_cast<std::size_t>(m.counts.s0_components), trial - 30);
    const SurgeredMapModel s = do_surgery(m, coefficients);
    CHECK(std::get<SurgeredMapModel>(parse_model(serialize(s))) == s);
  }
}

TEST_CASE("parse_model rejects foreign or damaged input") {
  Json j = Json::parse(serialize(build("s1^3", 2)));

  CHECK(parse_error("not json") == SerializeErrc::Corrupted);
  CHECK(parse_error("[]") == SerializeErrc::SchemaMismatch);

  Json other = j;
  other["schema"] = "stablefold/0";
  CHECK(parse_error(dump(other)) == SerializeErrc::SchemaMismatch);
  Json unschemed = j;
  unschemed.erase("schema");
  CHECK(parse_error(dump(unschemed)) == SerializeErrc::SchemaMismatch);

  Json kind = j;
  kind["kind"] = "torus";
  CHECK(parse_error(dump(kind)) == SerializeErrc::Corrupted);
  Json no_arcs = j;
  no_arcs.erase("arcs");
  CHECK(parse_error(dump(no_arcs)) == SerializeErrc::Corrupted);
  Json bad_rational = j;
  bad_rational["arcs"][0]["points"][0][0] = "1/0";
  CHECK(parse_error(dump(bad_rational)) == SerializeErrc::Corrupted);
  Json bad_tree = j;
  bad_tree["sectors"][0]["start_tree"]["nodes"][0]["tag"] = 7;
  CHECK(parse_error(dump(bad_tree)) == SerializeErrc::Corrupted);
  Json bad_word = j;
  bad_word["word"]["syllables"][0][0] = 4;
  CHECK(parse_error(dump(bad_word)) == SerializeErrc::Corrupted);

  try {
    parse_model(dump(no_arcs));
  } catch (const SerializeError& e) {
    CHECK(std::string(e.what()).find("arcs") != std::string::npos);
  }
}

TEST_CASE("reports serialize with a summary") {
  ValidationReport r = check_theorem1(build("s1^3", 2));
  Json j = to_json(r);
  CHECK(j["subject"] == "stable_map");
  CHECK(j["seed"].is_null());
  CHECK(j["summary"]["passed"] == true);
  CHECK(j["checks"].size() == r.checks.size());
  r.seed = 99;
  CHECK(to_json(r)["seed"] == 99);
  CHECK(keys_sorted(j));
}

TEST_CASE("files are written atomically and read back") {
  const auto dir = scratch_dir();
  const auto path = dir / "model.json";
  const StableMapModel m = build("s1 s2^-1", 3);
  write_atomic(path, serialize(m));
  write_atomic(path, serialize(m));
  CHECK(read_text(path) == serialize(m));
  CHECK(std::get<StableMapModel>(read_model(path)) == m);
  int entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++entries;
  CHECK(entries == 1);

  try {
    read_model(dir / "missing.json");
    FAIL("expected an Io error");
  } catch (const SerializeError& e) {
    CHECK(e.code() == SerializeErrc::Io);
  }
  try {
    write_atomic(path / "x.json", "{}");
    FAIL("expected an Io error");
  } catch (const SerializeError& e) {
    CHECK(e.code() == SerializeErrc::Io);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("render draws every arc and double point") {
  const StableMapModel m = build("s2^3", 3);
  const std::string svg = render_svg(m);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(occurrences(svg, "<path class=\"arc ") == static_cast<int>(m.arcs.size()));
  CHECK(occurrences(svg, "class=\"arc definite\"") == 2);
  CHECK(occurrences(svg, "class=\"arc indefinite\"") == 2);
  CHECK(occurrences(svg, "<circle class=\"ii2\"") == 2);
  CHECK(occurrences(svg, "<circle class=\"definite-cross\"") == 3);
  CHECK(occurrences(svg, "<text class=\"label\"") == static_cast<int>(m.regions.size()));
  CHECK(render_svg(m) == svg);

  RenderOptions plain;
  plain.show_labels = false;
  plain.show_definite_crossings = false;
  const std::string bare = render_svg(m, plain);
  CHECK(occurrences(bare, "class=\"label\"") == 0);
  CHECK(occurrences(bare, "class=\"definite-cross\"") == 0);
  CHECK(occurrences(bare, "<circle class=\"ii2\"") == 2);

  const SurgeredMapModel s = do_surgery(m, {3, -1});
  const std::string surgered = render_svg(s);
  CHECK(occurrences(surgered, "class=\"arc definite\"") == 0);
  CHECK(occurrences(surgered, "class=\"arc indefinite\"") == 2);
  CHECK(surgered.find("(3,-1)") != std::string::npos);
  CHECK(occurrences(surgered, "<text class=\"label\"") == static_cast<int>(s.regions.size()));
}

TEST_CASE("render options are validated") {
  const StableMapModel m = build("s1", 2);
  RenderOptions inverted;
  inverted.inner_radius = Rational(300);
  CHECK_THROWS_AS(render_svg(m, inverted), RenderError);
  RenderOptions zero_inner;
  zero_inner.inner_radius = Rational(0);
  CHECK_THROWS_AS(render_svg(m, zero_inner), RenderError);
  RenderOptions thin;
  thin.definite.width = 0;
  CHECK_THROWS_AS(render_svg(m, thin), RenderError);
}
