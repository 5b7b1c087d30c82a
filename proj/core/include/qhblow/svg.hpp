#pragma once

#include <string>
#include <vector>

#include "qhblow/flow.hpp"
#include "qhblow/scheme.hpp"

namespace qhblow {

// Minimal deterministic SVG writer for planar phase portraits: fixed
// viewBox, %.6f coordinates, no timestamps or random ids.
class SvgCanvas {
 public:
  SvgCanvas(double xmin, double xmax, double ymin, double ymax,
            int width = 720, int height = 720);

  void polyline(const std::vector<Vec>& pts, const std::string& color,
                double stroke_width = 1.0);
  void circle(double x, double y, double radius_px, const std::string& color,
              bool filled = true);
  void text(double x, double y, const std::string& label);

  std::string render() const;

 private:
  double px(double x) const;
  double py(double y) const;
  double xmin_, xmax_, ymin_, ymax_;
  int width_, height_;
  std::vector<std::string> elements_;
};

// Phase portrait of a planar desingularized field: trajectories colored by
// their termination, equilibria as dots, and (global chart) the horizon curve
// p(x) = 1 sampled parametrically.
std::string render_portrait(const DesingField& field,
                            const std::vector<Trajectory>& trajectories,
                            const std::vector<HorizonEquilibrium>& equilibria,
                            double xmin, double xmax, double ymin, double ymax);

}  // namespace qhblow
