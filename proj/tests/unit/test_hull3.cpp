#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "screwtool/hull3.hpp"

using namespace screwtool;

namespace {

double min_facet_offset(const Hull3& h) {
    double q = 1e18;
    for (const auto& f : h.facets) q = std::min(q, f.offset);
    return q;
}

// every input point must satisfy all facet half-spaces
void check_containment(const Hull3& h, const std::vector<Eigen::Vector3d>& pts,
                       double tol) {
    for (const auto& p : pts)
        for (const auto& f : h.facets) CHECK(f.normal.dot(p) <= f.offset + tol);
}

}  // namespace

TEST_CASE("cube hull") {
    std::vector<Eigen::Vector3d> pts;
    for (int i = 0; i < 8; ++i)
        pts.emplace_back(i & 1 ? 0.5 : -0.5, i & 2 ? 0.5 : -0.5, i & 4 ? 0.5 : -0.5);
    pts.emplace_back(0.0, 0.0, 0.0);
    pts.emplace_back(0.1, 0.2, -0.1);
    Hull3 h = convex_hull_3d(pts);
    CHECK(h.rank == 3);
    CHECK(h.vertices.size() == 8);
    CHECK(h.triangles.size() == 12);
    CHECK(min_facet_offset(h) == doctest::Approx(0.5).epsilon(1e-12));
    check_containment(h, pts, 1e-9);
}

TEST_CASE("unit octahedron: min facet distance is 1/sqrt(3)") {
    std::vector<Eigen::Vector3d> pts = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                                        {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};
    Hull3 h = convex_hull_3d(pts);
    CHECK(h.rank == 3);
    CHECK(h.triangles.size() == 8);
    CHECK(min_facet_offset(h) == doctest::Approx(0.5773502691896258).epsilon(1e-12));
}

TEST_CASE("degenerate inputs report their rank") {
    CHECK(convex_hull_3d(std::vector<Eigen::Vector3d>{{1, 1, 1}, {1, 1, 1}}).rank == 0);
    CHECK(convex_hull_3d(std::vector<Eigen::Vector3d>{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}})
              .rank == 1);
    std::vector<Eigen::Vector3d> planar = {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1},
                                           {0.3, 0.7, 1}};
    Hull3 flat = convex_hull_3d(planar);
    CHECK(flat.rank == 2);
    CHECK(flat.facets.empty());
}

TEST_CASE("random clouds: facets contain all points and touch three vertices") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Eigen::Vector3d> pts;
        int n = 10 + trial * 5;
        for (int i = 0; i < n; ++i) pts.emplace_back(u(rng), u(rng), u(rng));
        Hull3 h = convex_hull_3d(pts);
        REQUIRE(h.rank == 3);
        check_containment(h, pts, 1e-8);
        for (size_t t = 0; t < h.triangles.size(); ++t) {
            const auto& tri = h.triangles[t];
            const auto& f = h.facets[t];
            for (int k = 0; k < 3; ++k)
                CHECK(f.normal.dot(h.vertices[tri[k]]) ==
                      doctest::Approx(f.offset).epsilon(1e-9));
            CHECK(f.normal.norm() == doctest::Approx(1.0).epsilon(1e-12));
        }
        // support function over input points equals the facet offset
        for (size_t t = 0; t < h.facets.size(); t += 7) {
            double support = -1e18;
            for (const auto& p : pts) support = std::max(support, h.facets[t].normal.dot(p));
            CHECK(support == doctest::Approx(h.facets[t].offset).epsilon(1e-9));
        }
    }
}

TEST_CASE("coplanar-heavy input stays consistent") {
    // cube corners, face centers, edge midpoints: many exactly-coplanar points
    std::vector<Eigen::Vector3d> pts;
    for (double x : {-1.0, 0.0, 1.0})
        for (double y : {-1.0, 0.0, 1.0})
            for (double z : {-1.0, 0.0, 1.0}) pts.emplace_back(x, y, z);
    Hull3 h = convex_hull_3d(pts);
    CHECK(h.rank == 3);
    check_containment(h, pts, 1e-9);
    CHECK(min_facet_offset(h) == doctest::Approx(1.0).epsilon(1e-12));
}
