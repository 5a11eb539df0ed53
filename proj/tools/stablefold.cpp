// stablefold: build, check and draw stable maps from closed braids.
//
// Exit status: 0 success, 1 a check failed, 2 bad input (syntax, schema,
// corrupted file, I/O, coefficient count).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stablefold/assembly.hpp"
#include "stablefold/braid.hpp"
#include "stablefold/render.hpp"
#include "stablefold/serialize.hpp"
#include "stablefold/validate.hpp"

namespace fs = std::filesystem;
using namespace stablefold;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

fs::path default_output(const std::string& name) {
  if (const char* dir = std::getenv("STABLEFOLD_OUT_DIR"); dir && *dir) return fs::path(dir) / name;
  return fs::path(name);
}

// Braid files may carry '#' comment lines.
std::string braid_file_text(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  std::string text;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!text.empty()) text += ' ';
    text += line;
  }
  return text;
}

struct BraidInput {
  std::string text;
  std::string file;
  int strands = 0;

  void attach(CLI::App* cmd) {
    auto* braid = cmd->add_option("--braid", text, "Braid word, e.g. \"s1^3 s2^-1\" (s<k> or s<k>^<m>)");
    auto* path = cmd->add_option("--file", file, "File holding the braid word; '#' starts a comment line");
    braid->excludes(path);
    cmd->add_option("--strands", strands, "Strand count (default: 1 + largest generator)")
        ->check(CLI::PositiveNumber);
  }

  BraidWord word() const {
    if (text.empty() && file.empty()) throw CLI::ValidationError("one of --braid or --file is required");
    const std::string source = file.empty() ? text : braid_file_text(file);
    try {
      return canonicalize(parse_braid(source, strands > 0 ? std::optional<int>(strands) : std::nullopt));
    } catch (const BraidError& e) {
      std::ostringstream msg;
      msg << to_string(e.code()) << ": " << e.what();
      if (e.position()) {
        msg << "\n  " << source << "\n  " << std::string(*e.position(), ' ') << '^';
      }
      throw std::runtime_error(msg.str());
    }
  }
};

void print_counts(const BraidWord& word) {
  const PredictedCounts p = predicted_counts(word);
  std::cout << "word=" << (word.syllables.empty() ? "(empty)" : format_braid(word)) << '\n'
            << "n=" << word.strands << '\n'
            << "l=" << p.syllables << '\n'
            << "X=" << p.sigma1_syllables << '\n'
            << "components=" << closure_component_count(word) << '\n'
            << "ii2=" << p.ii2 << '\n';
}

void print_singular(const SingularCounts& c) {
  std::cout << "s0=" << c.s0_components << '\n'
            << "cusps=" << c.cusps << '\n'
            << "ii2=" << c.ii2 << '\n'
            << "ii3=" << c.ii3 << '\n'
            << "definite_crossings=" << c.definite_crossings << '\n';
}

std::vector<int> parse_coefficients(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(' ');
    const auto last = item.find_last_not_of(' ');
    if (first == std::string::npos) throw std::runtime_error("empty entry in coefficient list '" + text + "'");
    item = item.substr(first, last - first + 1);
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw std::runtime_error("coefficient '" + item + "' is not an integer");
    out.push_back(value);
  }
  return out;
}

Rational parse_radius(const std::string& text) {
  if (text.find('/') == std::string::npos) return parse_rational(text + "/1");
  return parse_rational(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable maps S^3 -> R^2 and M -> S^2 from closed braids"};
  app.require_subcommand(1);

  BraidInput build_in;
  std::string build_out;
  auto* build = app.add_subcommand("build", "Assemble the stable map of a braid closure and write its model");
  build_in.attach(build);
  build->add_option("--out", build_out, "Model path (default: $STABLEFOLD_OUT_DIR/model.json)");

  BraidInput predict_in;
  int expect_components = -1;
  auto* predict = app.add_subcommand("predict", "Print counts for a braid without building a model");
  predict_in.attach(predict);
  predict->add_option("--expect-components", expect_components, "Fail unless the closure has this many components");

  std::string validate_path;
  bool validate_json = false;
  auto* validate = app.add_subcommand("validate", "Check a model file; exit 0 iff every check passes");
  validate->add_option("model", validate_path, "Model JSON")->required();
  validate->add_flag("--json", validate_json, "Print the report as JSON");

  std::string render_path;
  std::string render_out;
  bool no_labels = false;
  bool no_definite_crossings = false;
  std::string inner_radius;
  std::string outer_radius;
  auto* render = app.add_subcommand("render", "Draw a model's singular value diagram as SVG");
  render->add_option("model", render_path, "Model JSON")->required();
  render->add_option("--out", render_out, "SVG path (default: $STABLEFOLD_OUT_DIR/diagram.svg)");
  render->add_flag("--no-labels", no_labels, "Omit region labels");
  render->add_flag("--no-definite-crossings", no_definite_crossings, "Omit markers on definite fold crossings");
  render->add_option("--inner-radius", inner_radius, "Inner annulus radius, integer or p/q");
  render->add_option("--outer-radius", outer_radius, "Outer annulus radius, integer or p/q");

  std::string surgery_path;
  std::string surgery_coeffs;
  std::string surgery_out;
  auto* surgery = app.add_subcommand("surgery", "Integral surgery along every link component");
  surgery->add_option("model", surgery_path, "Stable map model JSON")->required();
  surgery->add_option("--coeffs", surgery_coeffs, "Comma separated integers, one per component")->required();
  surgery->add_option("--out", surgery_out, "Model path (default: $STABLEFOLD_OUT_DIR/surgered.json)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) {
      const BraidWord word = build_in.word();
      const StableMapModel model = assemble(word);
      const fs::path out = build_out.empty() ? default_output("model.json") : fs::path(build_out);
      write_atomic(out, serialize(model));
      print_counts(word);
      std::cout << "model=" << out.string() << '\n';
      return kOk;
    }

    if (*predict) {
      const BraidWord word = predict_in.word();
      print_counts(word);
      if (expect_components >= 0 && closure_component_count(word) != expect_components) {
        std::cerr << "error: expected " << expect_components << " components, the closure has "
                  << closure_component_count(word) << '\n';
        return kCheckFailed;
      }
      return kOk;
    }

    if (*validate) {
      const AnyModel model = read_model(validate_path);
      const ValidationReport report = std::holds_alternative<StableMapModel>(model)
                                          ? check_theorem1(std::get<StableMapModel>(model))
                                          : check_corollary2(std::get<SurgeredMapModel>(model));
      std::cout << (validate_json ? dump(to_json(report)) : format_report(report));
      if (!report.passed()) {
        for (const auto& c : report.checks) {
          if (!c.passed) std::cerr << "failed: " << c.name << '\n';
        }
        return kCheckFailed;
      }
      return kOk;
    }

    if (*render) {
      RenderOptions options;
      options.show_labels = !no_labels;
      options.show_definite_crossings = !no_definite_crossings;
      if (!inner_radius.empty()) options.inner_radius = parse_radius(inner_radius);
      if (!outer_radius.empty()) options.outer_radius = parse_radius(outer_radius);
      options.validate();
      const AnyModel model = read_model(render_path);
      const std::string svg = std::visit([&](const auto& m) { return render_svg(m, options); }, model);
      const fs::path out = render_out.empty() ? default_output("diagram.svg") : fs::path(render_out);
      write_atomic(out, svg);
      std::cout << "svg=" << out.string() << '\n';
      return kOk;
    }

    if (*surgery) {
      const AnyModel model = read_model(surgery_path);
      if (!std::holds_alternative<StableMapModel>(model)) {
        std::cerr << "error: surgery needs a stable_map model\n";
        return kBadInput;
      }
      const SurgeredMapModel out_model =
          do_surgery(std::get<StableMapModel>(model), parse_coefficients(surgery_coeffs));
      const fs::path out = surgery_out.empty() ? default_output("surgered.json") : fs::path(surgery_out);
      write_atomic(out, serialize(out_model));
      print_singular(out_model.counts);
      std::cout << "cap=" << out_model.cap.annotation << '\n' << "model=" << out.string() << '\n';
      return kOk;
    }
  } catch (const SerializeError& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kBadInput;
  } catch (const AssemblyError& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kBadInput;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kOk;
}
