#include "stablefold/render.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace stablefold {

void RenderOptions::validate() const {
  if (inner_radius <= 0 || outer_radius <= 0) throw RenderError("annulus radii must be positive");
  if (!(inner_radius < outer_radius)) throw RenderError("inner radius must be smaller than outer radius");
  if (!(definite.width > 0) || !(indefinite.width > 0)) throw RenderError("stroke widths must be positive");
}

namespace {

constexpr double kMargin = 40.0;
constexpr int kStepsPerSector = 24;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

class Canvas {
 public:
  Canvas(const RenderOptions& options, int strands, int sectors)
      : inner_(to_double(options.inner_radius)),
        outer_(to_double(options.outer_radius)),
        top_level_(2.0 * strands),
        sectors_(sectors),
        centre_(outer_ + kMargin) {}

  double size() const { return 2 * centre_; }
  double centre() const { return centre_; }
  double inner() const { return inner_; }
  double outer() const { return outer_; }

  double radius(double level) const { return outer_ - (outer_ - inner_) * level / top_level_; }

  std::pair<double, double> at(double theta, double level) const {
    const double angle = 2 * std::numbers::pi * theta / sectors_ - std::numbers::pi / 2;
    const double r = radius(level);
    return {centre_ + r * std::cos(angle), centre_ + r * std::sin(angle)};
  }

  std::string point(double theta, double level) const {
    const auto [x, y] = at(theta, level);
    return num(x) + " " + num(y);
  }

  // Closed polyline in (theta, level), drawn along spirals so that constant
  // levels become circular arcs.
  std::string closed_path(const std::vector<ArcPoint>& points) const {
    std::string d;
    if (points.empty()) return d;
    double theta = to_double(points.front().theta);
    double level = to_double(points.front().level);
    d = "M" + point(theta, level);
    for (std::size_t i = 1; i <= points.size(); ++i) {
      const ArcPoint& p = points[i % points.size()];
      double next_theta = to_double(p.theta);
      const double next_level = to_double(p.level);
      while (next_theta - theta <= -sectors_ / 2.0) next_theta += sectors_;
      const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(next_theta - theta) * kStepsPerSector)));
      for (int k = 1; k <= steps; ++k) {
        const double f = static_cast<double>(k) / steps;
        d += " L" + point(theta + f * (next_theta - theta), level + f * (next_level - level));
      }
      theta = next_theta;
      level = next_level;
    }
    return d + " Z";
  }

 private:
  double inner_;
  double outer_;
  double top_level_;
  int sectors_;
  double centre_;
};

std::string style_of(const StrokeStyle& s) {
  std::string out = "fill:none;stroke:" + s.color + ";stroke-width:" + num(s.width);
  if (!s.dash.empty()) out += ";stroke-dasharray:" + s.dash;
  return out;
}

struct Scene {
  const std::vector<SectorTrace>* sectors;
  const std::vector<Arc>* arcs;
  const std::vector<DoublePoint>* points;
  const std::vector<Region>* regions;
  int strands;
  DiagramLayer layer;
  const CapDisk* cap;
};

std::string draw(const Scene& scene, const RenderOptions& options) {
  options.validate();
  const int sector_count = static_cast<int>(scene.sectors->size());
  if (sector_count == 0) throw RenderError("model has no sectors");
  const Canvas canvas(options, scene.strands, sector_count);
  const CellComplex complex(*scene.sectors, scene.layer);

  std::ostringstream svg;
  const std::string size = num(canvas.size());
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  svg << "<style>.arc.definite{" << style_of(options.definite) << "}.arc.indefinite{"
      << style_of(options.indefinite)
      << "}.boundary{fill:none;stroke:#999999;stroke-width:0.5}.sector{stroke:#cccccc;stroke-width:0.5}"
         ".ii2{fill:#b8312f}.definite-cross{fill:none;stroke:#1d4f91;stroke-width:1}"
         ".label{font-family:sans-serif;font-size:12px;text-anchor:middle;dominant-baseline:middle}"
         ".cap{font-family:sans-serif;font-size:14px;text-anchor:middle}</style>\n";

  const std::string c = num(canvas.centre());
  svg << "<g class=\"frame\">\n";
  svg << "<circle class=\"boundary\" cx=\"" << c << "\" cy=\"" << c << "\" r=\"" << num(canvas.outer()) << "\"/>\n";
  svg << "<circle class=\"boundary\" cx=\"" << c << "\" cy=\"" << c << "\" r=\"" << num(canvas.inner()) << "\"/>\n";
  for (int s = 0; s < sector_count; ++s) {
    const auto [x1, y1] = canvas.at(s, 0);
    const auto [x2, y2] = canvas.at(s, 2.0 * scene.strands);
    svg << "<line class=\"sector\" x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
        << "\" y2=\"" << num(y2) << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g class=\"arcs\">\n";
  for (const Arc& arc : *scene.arcs) {
    const char* kind = arc.kind == ArcKind::Definite ? "definite" : "indefinite";
    svg << "<path class=\"arc " << kind << "\" data-arc=\"" << arc.id << "\" d=\"" << canvas.closed_path(arc.points)
        << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g class=\"double-points\">\n";
  for (const DoublePoint& p : *scene.points) {
    if (p.kind == DoublePointKind::DefiniteCross && !options.show_definite_crossings) continue;
    const auto [x, y] = canvas.at(to_double(p.theta), to_double(p.level));
    const char* cls = p.kind == DoublePointKind::II2 ? "ii2" : (p.kind == DoublePointKind::II3 ? "ii3" : "definite-cross");
    svg << "<circle class=\"" << cls << "\" cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"4.000\"/>\n";
  }
  svg << "</g>\n";

  if (options.show_labels) {
    svg << "<g class=\"labels\">\n";
    const int top_gap = complex.gap_count() - 1;
    for (const Region& region : *scene.regions) {
      if (region.cells.empty()) continue;
      const CellRun& run = region.cells.front();
      double x = canvas.centre();
      double y = canvas.centre();
      if (run.gap != top_gap) {
        const int band = (run.band_from + run.band_to) / 2;
        const int bands = complex.band_count(run.sector);
        const double theta = run.sector + (2.0 * band + 1) / (2.0 * bands);
        std::tie(x, y) = canvas.at(theta, to_double(complex.gap_level(run.sector, band, run.gap)));
      }
      svg << "<text class=\"label\" data-region=\"" << region.id << "\" x=\"" << num(x) << "\" y=\"" << num(y)
          << "\">" << region.label << "</text>\n";
    }
    svg << "</g>\n";
  }

  if (scene.cap) {
    svg << "<text class=\"cap\" x=\"" << c << "\" y=\"" << num(kMargin / 2) << "\">" << escape(scene.cap->annotation)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

std::string render_svg(const StableMapModel& model, const RenderOptions& options) {
  const Scene scene{&model.sectors, &model.arcs,         &model.double_points, &model.regions,
                    model.word.strands, DiagramLayer::All, nullptr};
  return draw(scene, options);
}

std::string render_svg(const SurgeredMapModel& model, const RenderOptions& options) {
  const Scene scene{&model.base.sectors,      &model.arcs, &model.double_points, &model.regions,
                    model.base.word.strands, DiagramLayer::IndefiniteOnly, &model.cap};
  return draw(scene, options);
}

}  // namespace stablefold
