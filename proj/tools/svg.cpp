#include "svg.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

namespace hyperperc::cli {

std::string svg_number(double x) {
  if (std::fabs(x) < 5e-7) x = 0;  // no "-0.000000"
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 6);
  return std::string(buf, res.ptr);
}

namespace {

std::string xy(std::pair<double, double> p) { return svg_number(p.first) + " " + svg_number(p.second); }

// Colour of a cluster from its id; fixed palette, deterministic.
const char* cluster_colour(VertexId id) {
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                   "#17becf", "#8c564b", "#e377c2", "#bcbd22", "#7f7f7f"};
  std::uint64_t h = splitmix64_mix(id);
  return kPalette[h % std::size(kPalette)];
}

}  // namespace

std::string geodesic_path(const SvgFrame& f, Complex z1, Complex z2) {
  const double cross = z1.real() * z2.imag() - z1.imag() * z2.real();
  std::string d = "M " + xy(f.point(z1));
  if (std::fabs(cross) < 1e-9) return d + " L " + xy(f.point(z2));
  // Centre c of the orthogonal circle: 2 Re(z conj c) = |z|^2 + 1 for both.
  const double r1 = std::norm(z1) + 1, r2 = std::norm(z2) + 1;
  const double det = 2 * cross;
  const Complex c{(r1 * z2.imag() - r2 * z1.imag()) / det, (z1.real() * r2 - z2.real() * r1) / det};
  const double radius = std::sqrt(std::max(0.0, std::norm(c) - 1));
  const Complex a = z1 - c, b = z2 - c;
  const double turn = a.real() * b.imag() - a.imag() * b.real();
  // Counterclockwise in the disc is clockwise on the y-down canvas.
  const int sweep = turn > 0 ? 1 : 0;
  const std::string rr = svg_number(radius * f.scale);
  return d + " A " + rr + " " + rr + " 0 0 " + std::to_string(sweep) + " " + xy(f.point(z2));
}

std::string ideal_arc_path(const SvgFrame& f, double start, double end) {
  double span = wrap_angle(end - start);
  const std::string rr = svg_number(f.mark_radius);
  return "M " + xy(f.ideal(start, f.mark_radius)) + " A " + rr + " " + rr + " 0 " + (span > std::numbers::pi ? "1" : "0") + " 0 " +
         xy(f.ideal(end, f.mark_radius));
}

std::string render_svg(const RenderInput& in, const SvgFrame& f) {
  const double size = 2 * f.center;
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + svg_number(size) + "\" height=\"" + svg_number(size) +
         "\" viewBox=\"0 0 " + svg_number(size) + " " + svg_number(size) + "\">\n";
  out += "<circle class=\"ideal\" cx=\"" + svg_number(f.center) + "\" cy=\"" + svg_number(f.center) + "\" r=\"" +
         svg_number(f.scale) + "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  if (in.graph != nullptr && in.graph->edge_count() > 0) {
    const TilingGraph& g = *in.graph;
    out += "<g class=\"edges\" fill=\"none\">\n";
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      const std::string d = geodesic_path(f, g.position(ed.u), g.position(ed.v));
      if (in.sample == nullptr) {
        out += "<path d=\"" + d + "\" stroke=\"#444444\" stroke-width=\"0.6\"/>\n";
      } else if (in.sample->open.test(e)) {
        const char* colour = in.clusters != nullptr ? cluster_colour(in.clusters->labels[ed.u]) : "#d62728";
        out += "<path class=\"open\" d=\"" + d + "\" stroke=\"" + colour + "\" stroke-width=\"1.6\"/>\n";
      } else {
        out += "<path d=\"" + d + "\" stroke=\"#cccccc\" stroke-width=\"0.4\"/>\n";
      }
    }
    out += "</g>\n";
    if (in.clusters != nullptr) {
      out += "<g class=\"vertices\">\n";
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::uint32_t c = in.clusters->index[v];
        if (in.clusters->sizes[c] < 2) continue;
        auto [x, y] = f.point(g.position(v));
        out += "<circle cx=\"" + svg_number(x) + "\" cy=\"" + svg_number(y) + "\" r=\"1.2\" fill=\"" +
               cluster_colour(in.clusters->ids[c]) + "\"/>\n";
      }
      out += "</g>\n";
    }
  }
  if (!in.arcs.empty()) {
    out += "<g class=\"arcs\" fill=\"none\" stroke=\"#000000\" stroke-width=\"4\">\n";
    for (const ArcCover& cover : in.arcs) {
      for (auto [a, b] : cover.arcs) {
        const std::string attrs = " data-start=\"" + svg_number(a) + "\" data-end=\"" + svg_number(b) + "\"";
        if (cover.arc_count == 1 && cover.angular_diameter >= kTwoPi) {
          out += "<circle class=\"arc\"" + attrs + " cx=\"" + svg_number(f.center) + "\" cy=\"" + svg_number(f.center) +
                 "\" r=\"" + svg_number(f.mark_radius) + "\"/>\n";
        } else {
          out += "<path class=\"arc\"" + attrs + " d=\"" + ideal_arc_path(f, a, b) + "\"/>\n";
        }
      }
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace hyperperc::cli
