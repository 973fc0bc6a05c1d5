#pragma once

#include "jensen/shapes.hpp"

namespace jensen {

// Centroid-coincidence tolerance: a gap above this certifies (by the affine
// case) that the shape cannot satisfy the body-vs-boundary mean inequality.
constexpr double kCentroidTol = 1e-8;

struct CentroidReport {
  Vec body_centroid;
  Vec boundary_centroid;
  double gap = 0.0;  // euclidean distance between the two
  bool coincide = false;
};

double shape_volume(const Shape& s);
double shape_surface(const Shape& s);
Vec shape_body_centroid(const Shape& s);
Vec shape_boundary_centroid(const Shape& s);
CentroidReport centroid_report(const Shape& s);

double ball_volume(int n, double r);
// (n-1)-measure of the boundary sphere of an n-ball of radius r, computed
// independently of ball_volume so n*|B_n| = |S_{n-1}| stays a real check.
double sphere_measure(int n, double r);

// Relative residual of |G| = (1/n) * height * |base|.
double cone_volume_identity_residual(const Cone& c);
// Relative residual of |W| = (r/n) * |boundary W|.
double minkowski_identity_residual(const Polytope& P, double inradius);

}  // namespace jensen
