// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "stablefold/assembly.hpp"
#include "stablefold/braid.hpp"
#include "stablefold/render.hpp"
#include "stablefold/serialize.hpp"
#include "stablefold/validate.hpp"
#include "support.hpp"

using namespace stablefold;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool passed = true;
  std::string detail;
  int failures = 0;

  void fail(const std::string& why) {
    passed = false;
    if (failures++ < 3) detail += (detail.empty() ? "" : "; ") + why;
  }
};

int report(int number, const std::string& title, const Outcome& outcome, double elapsed, double budget) {
  const bool in_time = budget <= 0 || elapsed <= budget;
  const bool ok = outcome.passed && in_time;
  std::printf("[%s] %d. %s (%.1f s", ok ? "PASS" : "FAIL", number, title.c_str(), elapsed);
  if (budget > 0) std::printf(", budget %.0f s", budget);
  std::printf(")");
  if (!outcome.detail.empty()) std::printf(" - %s", outcome.detail.c_str());
  if (!in_time) std::printf(" - over time budget");
  std::printf("\n");
  std::fflush(stdout);
  return ok ? 0 : 1;
}

std::string describe(const BraidWord& w) {
  return "B" + std::to_string(w.strands) + " '" + format_braid(w) + "'";
}

std::vector<BraidWord> sweep_words() {
  std::vector<BraidWord> words;
  for (int n = 2; n <= 5; ++n) {
    testing::for_each_canonical_word(n, 4, 3, [&](const BraidWord& w) { words.push_back(w); });
  }
  return words;
}

int count_substr(const std::string& text, const std::string& needle) {
  int count = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++count;
  return count;
}

bool well_formed_xml(const std::string& text) {
  try {
    std::istringstream in(text);
    boost::property_tree::ptree tree;
    boost::property_tree::read_xml(in, tree);
    return tree.count("svg") == 1;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

int main() {
  int failed = 0;
  const auto words = sweep_words();
  std::printf("sweep: %zu canonical words (n = 2..5, l <= 4, |m| <= 3)\n", words.size());

  // 1 and 2 share one pass over the sweep; 3 checks the absences on it too.
  Outcome formula;
  Outcome components;
  Outcome absences;
  Outcome serial;
  std::vector<StableMapModel> sample;
  double sweep_time = 0;
  double serial_time = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto sweep_start = Clock::now();
    const BraidWord& w = words[i];
    const StableMapModel m = assemble(w);
    const int expected = predicted_counts(w).ii2;
    const int oracle = oracle_ii2(w);
    if (m.counts.ii2 != expected || oracle != expected) {
      formula.fail(describe(w) + ": ii2=" + std::to_string(m.counts.ii2) + " oracle=" + std::to_string(oracle) +
                   " formula=" + std::to_string(expected));
    }
    const int cycles = static_cast<int>(underlying_permutation(w).cycles().size());
    if (m.counts.s0_components != cycles) {
      components.fail(describe(w) + ": s0=" + std::to_string(m.counts.s0_components) + " cycles=" +
                      std::to_string(cycles));
    }
    if (m.counts.cusps != 0 || m.counts.ii3 != 0) absences.fail(describe(w) + " has cusps or II3 points");
    sweep_time += seconds_since(sweep_start);

    // 7. Round trip of the same model; timed separately.
    const auto serial_start = Clock::now();
    const std::string text = serialize(m);
    const AnyModel back = parse_model(text);
    if (!std::holds_alternative<StableMapModel>(back) || serialize(std::get<StableMapModel>(back)) != text ||
        !(std::get<StableMapModel>(back) == m)) {
      serial.fail(describe(w) + " does not round-trip");
    }
    serial_time += seconds_since(serial_start);
    if (i % 997 == 0) sample.push_back(m);
  }
  failed += report(1, "ii2 = 2(l-X) = oracle over the exhaustive sweep", formula, sweep_time, 60);
  failed += report(2, "s0 components = permutation cycles over the sweep", components, sweep_time, 60);

  // 3. Mutations: every deleted II2 point, arc or event must be caught.
  const auto mutation_start = Clock::now();
  int mutants = 0;
  for (const char* text : {"s1^3", "s2^3", "s1 s2^-1 s1 s2^-2", "s2 s3 s2"}) {
    sample.push_back(assemble(canonicalize(parse_braid(text))));
  }
  for (const StableMapModel& m : sample) {
    if (!check_theorem1(m).passed()) absences.fail(describe(m.word) + " fails validation unmutated");
    for (std::size_t k = 0; k < m.double_points.size(); ++k) {
      if (m.double_points[k].kind != DoublePointKind::II2) continue;
      StableMapModel mutant = m;
      mutant.double_points.erase(mutant.double_points.begin() + static_cast<long>(k));
      ++mutants;
      if (check_theorem1(mutant).passed()) {
        absences.fail(describe(m.word) + ": deleting II2 point " + std::to_string(k) + " went unnoticed");
      }
    }
    for (std::size_t k = 0; k < m.arcs.size(); ++k) {
      StableMapModel mutant = m;
      mutant.arcs.erase(mutant.arcs.begin() + static_cast<long>(k));
      ++mutants;
      if (check_theorem1(mutant).passed()) {
        absences.fail(describe(m.word) + ": deleting arc " + std::to_string(k) + " went unnoticed");
      }
    }
    for (std::size_t s = 0; s < m.sectors.size(); ++s) {
      for (std::size_t e = 0; e < m.sectors[s].events.size(); ++e) {
        StableMapModel mutant = m;
        auto& events = mutant.sectors[s].events;
        events.erase(events.begin() + static_cast<long>(e));
        ++mutants;
        if (check_theorem1(mutant).passed()) {
          absences.fail(describe(m.word) + ": deleting event " + std::to_string(e) + " of sector " +
                        std::to_string(s) + " went unnoticed");
        }
      }
    }
  }
  if (absences.passed) absences.detail = std::to_string(mutants) + " mutants all rejected";
  failed += report(3, "no cusps, no II3; deleting II2 points, arcs or events fails validation", absences,
                   seconds_since(mutation_start), 0);

  // 4. Labeling on seeded random words.
  {
    const std::uint64_t seed = 20240601;
    std::mt19937_64 rng(seed);
    Outcome labeling;
    const auto start = Clock::now();
    for (int i = 0; i < 200; ++i) {
      const BraidWord w = testing::random_canonical_word(rng, 6, 8, 4);
      const StableMapModel m = assemble(w);
      const ValidationReport r = check_theorem1(m);
      int zero = 0;
      bool outer_zero = false;
      bool cap_one = false;
      for (const Region& region : m.regions) {
        if (region.label == 0) {
          ++zero;
          outer_zero = region.has_marker("outer");
        }
        if (region.has_marker("E")) cap_one = region.label == 1;
      }
      if (!r.labeling() || zero != 1 || !outer_zero || !cap_one) {
        labeling.fail(describe(w) + " (seed " + std::to_string(seed) + ", case " + std::to_string(i) + ")");
      }
    }
    if (labeling.passed) labeling.detail = "seed " + std::to_string(seed);
    failed += report(4, "adjacent labels differ by 1, unique outer 0, E cap 1 (200 random words)", labeling,
                     seconds_since(start), 30);
  }

  // 5. Surgery on seeded random words with random integral coefficients.
  {
    const std::uint64_t seed = 20240602;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-9, 9);
    Outcome surgery;
    const auto start = Clock::now();
    for (int i = 0; i < 100; ++i) {
      const BraidWord w = testing::random_canonical_word(rng, 6, 8, 4);
      const StableMapModel base = assemble(w);
      std::vector<int> coefficients(static_cast<std::size_t>(base.counts.s0_components));
      for (int& p : coefficients) p = coeff(rng);
      const SurgeredMapModel s = do_surgery(base, coefficients);
      const ValidationReport r = check_corollary2(s);
      bool positive = true;
      for (const Region& region : s.regions) positive = positive && region.label >= 1;
      const bool counts = s.counts.s0_components == 0 && s.counts.cusps == 0 && s.counts.ii3 == 0 &&
                          s.counts.ii2 == base.counts.ii2;
      if (!r.passed() || !counts || !positive) {
        surgery.fail(describe(w) + " coefficients " + cap_annotation(coefficients));
      }
    }
    if (surgery.passed) surgery.detail = "seed " + std::to_string(seed);
    failed += report(5, "surgered maps: s0 = cusps = ii3 = 0, ii2 kept, labels >= 1 (100 random words)", surgery,
                     seconds_since(start), 30);
  }

  // 6. Named examples.
  {
    Outcome named;
    const auto start = Clock::now();
    const auto expect = [&](const std::string& text, std::optional<int> strands, int components, int ii2) {
      const BraidWord w = canonicalize(parse_braid(text, strands));
      const StableMapModel m = assemble(w);
      if (m.counts.s0_components != components || m.counts.ii2 != ii2 || m.counts.ii3 != 0 ||
          !check_theorem1(m).passed()) {
        named.fail(describe(w) + ": (components, ii2, ii3) = (" + std::to_string(m.counts.s0_components) + ", " +
                   std::to_string(m.counts.ii2) + ", " + std::to_string(m.counts.ii3) + ")");
      }
    };
    expect("s1^3", 2, 1, 0);
    expect("s2^3", 3, 2, 2);
    std::string whitehead;
    try {
      std::istringstream in(read_text(STABLEFOLD_WHITEHEAD_FILE));
      for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line[0] != '#') whitehead += line + " ";
      }
      const BraidWord w = canonicalize(parse_braid(whitehead));
      const PredictedCounts p = predicted_counts(w);
      expect(whitehead, std::nullopt, 2, 2 * (p.syllables - p.sigma1_syllables));
      if (named.passed) {
        named.detail = "Whitehead word '" + format_braid(w) + "': l=" + std::to_string(p.syllables) +
                       " X=" + std::to_string(p.sigma1_syllables) + " ii2=" + std::to_string(p.ii2);
      }
    } catch (const std::exception& e) {
      named.fail(std::string("Whitehead demo: ") + e.what());
    }
    failed += report(6, "named examples: trefoil (1,0), s2^3 (2,2), Whitehead link (2, 2(l-X)), no II3", named,
                     seconds_since(start), 0);
  }

  // 7. SVG for the sampled sweep models and their surgeries.
  {
    const auto start = Clock::now();
    int rendered = 0;
    for (const StableMapModel& m : sample) {
      ++rendered;
      const std::string svg = render_svg(m);
      if (!well_formed_xml(svg) || count_substr(svg, "<path class=\"arc ") != static_cast<int>(m.arcs.size())) {
        serial.fail(describe(m.word) + " renders badly");
      }
      const SurgeredMapModel s =
          do_surgery(m, std::vector<int>(static_cast<std::size_t>(m.counts.s0_components), 1));
      const std::string stext = serialize(s);
      const AnyModel sback = parse_model(stext);
      const std::string ssvg = render_svg(s);
      if (!std::holds_alternative<SurgeredMapModel>(sback) ||
          serialize(std::get<SurgeredMapModel>(sback)) != stext || !well_formed_xml(ssvg) ||
          count_substr(ssvg, "<path class=\"arc ") != static_cast<int>(s.arcs.size())) {
        serial.fail(describe(m.word) + " surgered model does not round-trip or render");
      }
    }
    if (serial.passed) {
      serial.detail = std::to_string(words.size()) + " models byte-identical, " + std::to_string(rendered) +
                      " rendered with their surgeries";
    }
    failed += report(7, "JSON round trip byte-identical over the sweep; SVG arc elements = model arcs", serial,
                     serial_time + seconds_since(start), 0);
  }

  std::printf("%s: %d criteria failed\n", failed == 0 ? "PASS" : "FAIL", failed);
  return failed == 0 ? 0 : 1;
}
