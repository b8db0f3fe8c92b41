#pragma once

#include <Eigen/Core>
#include <array>
#include <span>
#include <vector>

namespace screwtool {

/// Facet plane of a convex hull: outward unit normal n with n·x = offset on
/// the plane. For a hull containing the origin, offset is the origin-to-plane
/// distance.
struct HullFacet {
    Eigen::Vector3d normal;
    double offset;
};

struct Hull3 {
    int rank = 0;  // affine rank of the input (3 = full-dimensional)
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 3>> triangles;  // indices into vertices
    std::vector<HullFacet> facets;              // one plane per triangle
    bool full_dimensional() const { return rank == 3; }
};

/// Incremental 3D convex hull. Coplanarity and visibility decisions use
/// rel_eps scaled by the point cloud's extent, so the result is invariant
/// under uniform scaling. Degenerate inputs (rank < 3) return an empty facet
/// list with the detected rank.
Hull3 convex_hull_3d(std::span<const Eigen::Vector3d> points, double rel_eps = 1e-9);

}  // namespace screwtool
