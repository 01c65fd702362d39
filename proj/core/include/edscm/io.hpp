#pragma once

#include <map>
#include <string>

#include "edscm/curve.hpp"
#include "edscm/sequences.hpp"

namespace edscm {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "p/q" or "p"
Rat parse_rational(const std::string& s);

// "p/q+r/s*i" and the natural degenerate forms ("3", "-1/2", "i", "2-i", "3*i")
GaussianRat parse_gaussian_rational(const std::string& s);

// as above, restricted to Z[i]
GaussianInt parse_gaussian_int(const std::string& s);

// "x,y" (coordinates as Gaussian rationals) or "O"
Point parse_point(const std::string& s);

// Curve specification file: UTF-8 text with
//   field=Q|Qi
//   a=<a1,a2,a3,a4,a6>
//   cm=true            (optional)
//   point NAME=x,y     (optional named points)
// '#' starts a comment.
struct CurveSpec {
    Curve curve;
    std::map<std::string, Point> points;
};

CurveSpec parse_curve_spec(const std::string& text);
CurveSpec load_curve_file(const std::string& path);

std::string to_string(const Point& R);

}  // namespace edscm
