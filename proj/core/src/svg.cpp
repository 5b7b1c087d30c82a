#include "qhblow/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qhblow {

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

const char* termination_color(Termination t) {
  switch (t) {
    case Termination::ConvergedEquilibrium: return "#c03028";
    case Termination::ConvergedCycle: return "#7038a8";
    case Termination::LeftDomain: return "#909090";
    case Termination::StepFailure: return "#c0a020";
    case Termination::TauLimit: return "#3060c0";
  }
  return "#000000";
}

}  // namespace

SvgCanvas::SvgCanvas(double xmin, double xmax, double ymin, double ymax,
                     int width, int height)
    : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax),
      width_(width), height_(height) {}

double SvgCanvas::px(double x) const {
  return (x - xmin_) / (xmax_ - xmin_) * width_;
}

double SvgCanvas::py(double y) const {
  return (ymax_ - y) / (ymax_ - ymin_) * height_;
}

void SvgCanvas::polyline(const std::vector<Vec>& pts, const std::string& color,
                         double stroke_width) {
  if (pts.size() < 2) return;
  std::ostringstream os;
  os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
     << fmt(stroke_width) << "\" points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) os << ' ';
    os << fmt(px(pts[i][0])) << ',' << fmt(py(pts[i][1]));
  }
  os << "\"/>";
  elements_.push_back(os.str());
}

void SvgCanvas::circle(double x, double y, double radius_px,
                       const std::string& color, bool filled) {
  std::ostringstream os;
  os << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
     << "\" r=\"" << fmt(radius_px) << "\" ";
  if (filled)
    os << "fill=\"" << color << "\"";
  else
    os << "fill=\"none\" stroke=\"" << color << "\"";
  os << "/>";
  elements_.push_back(os.str());
}

void SvgCanvas::text(double x, double y, const std::string& label) {
  std::ostringstream os;
  os << "<text x=\"" << fmt(px(x)) << "\" y=\"" << fmt(py(y))
     << "\" font-size=\"12\" font-family=\"monospace\">" << label << "</text>";
  elements_.push_back(os.str());
}

std::string SvgCanvas::render() const {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 "
     << width_ << ' ' << height_ << "\">\n";
  os << "<rect width=\"" << width_ << "\" height=\"" << height_
     << "\" fill=\"#ffffff\"/>\n";
  for (const auto& e : elements_) os << e << '\n';
  os << "</svg>\n";
  return os.str();
}

std::string render_portrait(const DesingField& field,
                            const std::vector<Trajectory>& trajectories,
                            const std::vector<HorizonEquilibrium>& equilibria,
                            double xmin, double xmax, double ymin, double ymax) {
  SvgCanvas canvas(xmin, xmax, ymin, ymax);

  // horizon curve for planar global charts: x = (cos u, sin u) scaled onto
  // p(x) = 1 by the radial projection x_i = v_i / p(v)^{alpha_i}
  if (field.chart == DesingField::Chart::Global && field.scheme.dim() == 2) {
    const CompactScheme& sc = field.scheme;
    std::vector<Vec> pts;
    const int N = 720;
    for (int i = 0; i <= N; ++i) {
      double u = 2.0 * M_PI * i / N;
      Vec v{std::cos(u), std::sin(u)};
      double p = p_functional(sc, v);
      if (p <= 0.0) continue;
      pts.push_back({v[0] / std::pow(p, sc.alpha[0]),
                     v[1] / std::pow(p, sc.alpha[1])});
    }
    canvas.polyline(pts, "#202020", 1.5);
  }

  for (const auto& tr : trajectories) {
    std::vector<Vec> pts;
    pts.reserve(tr.samples.size());
    for (const auto& smp : tr.samples)
      if (smp.state.size() >= 2) pts.push_back({smp.state[0], smp.state[1]});
    canvas.polyline(pts, termination_color(tr.termination), 0.8);
  }

  for (const auto& eq : equilibria) {
    if (eq.x.size() < 2) continue;
    bool stable = eq.classification.cls == StabilityClass::Sink;
    canvas.circle(eq.x[0], eq.x[1], 4.0, stable ? "#c03028" : "#3060c0",
                  stable);
  }
  return canvas.render();
}

}  // namespace qhblow
