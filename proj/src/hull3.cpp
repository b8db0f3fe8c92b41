#include "screwtool/hull3.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

namespace screwtool {

namespace {

struct Face {
    int a, b, c;
    Eigen::Vector3d n;  // outward unit normal
    double off;         // n . x on the face plane
    bool alive = true;
};

Face make_face(int a, int b, int c, const std::vector<Eigen::Vector3d>& pts,
               const Eigen::Vector3d& interior) {
    Face f{a, b, c, Eigen::Vector3d::Zero(), 0.0, true};
    Eigen::Vector3d n = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
    double len = n.norm();
    if (len > 0.0) n /= len;
    double off = n.dot(pts[a]);
    if (n.dot(interior) > off) {  // flip to point away from the interior
        std::swap(f.b, f.c);
        n = -n;
        off = -off;
    }
    f.n = n;
    f.off = off;
    return f;
}

}  // namespace

Hull3 convex_hull_3d(std::span<const Eigen::Vector3d> points, double rel_eps) {
    Hull3 hull;
    if (points.empty()) return hull;

    std::vector<Eigen::Vector3d> pts(points.begin(), points.end());
    double scale = 0.0;
    for (const auto& p : pts) scale = std::max(scale, p.lpNorm<Eigen::Infinity>());
    if (scale == 0.0) scale = 1.0;
    const double eps = rel_eps * scale;

    const int n = static_cast<int>(pts.size());

    // initial simplex: the most spread points in each affine dimension
    int i0 = 0, i1 = -1;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
        double d = (pts[i] - pts[i0]).norm();
        if (d > best) {
            best = d;
            i1 = i;
        }
    }
    if (best <= eps) {
        hull.rank = 0;
        hull.vertices.push_back(pts[i0]);
        return hull;
    }
    Eigen::Vector3d dir = (pts[i1] - pts[i0]).normalized();
    int i2 = -1;
    best = -1.0;
    for (int i = 0; i < n; ++i) {
        Eigen::Vector3d v = pts[i] - pts[i0];
        double d = (v - v.dot(dir) * dir).norm();
        if (d > best) {
            best = d;
            i2 = i;
        }
    }
    if (best <= eps) {
        hull.rank = 1;
        hull.vertices = {pts[i0], pts[i1]};
        return hull;
    }
    Eigen::Vector3d plane_n = dir.cross((pts[i2] - pts[i0]).normalized()).normalized();
    int i3 = -1;
    best = -1.0;
    for (int i = 0; i < n; ++i) {
        double d = std::abs(plane_n.dot(pts[i] - pts[i0]));
        if (d > best) {
            best = d;
            i3 = i;
        }
    }
    if (best <= eps) {
        hull.rank = 2;
        hull.vertices = {pts[i0], pts[i1], pts[i2]};
        return hull;
    }
    hull.rank = 3;

    Eigen::Vector3d interior = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
    std::vector<Face> faces;
    faces.push_back(make_face(i0, i1, i2, pts, interior));
    faces.push_back(make_face(i0, i1, i3, pts, interior));
    faces.push_back(make_face(i0, i2, i3, pts, interior));
    faces.push_back(make_face(i1, i2, i3, pts, interior));

    for (int i = 0; i < n; ++i) {
        if (i == i0 || i == i1 || i == i2 || i == i3) continue;
        // faces visible from pts[i]
        std::vector<int> visible;
        for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi) {
            const Face& f = faces[fi];
            if (f.alive && f.n.dot(pts[i]) - f.off > eps) visible.push_back(fi);
        }
        if (visible.empty()) continue;  // interior (or on the surface) point

        std::set<std::pair<int, int>> vis_edges;
        for (int fi : visible) {
            const Face& f = faces[fi];
            vis_edges.insert({f.a, f.b});
            vis_edges.insert({f.b, f.c});
            vis_edges.insert({f.c, f.a});
        }
        // horizon: directed edges of visible faces whose twin face stays
        std::vector<std::pair<int, int>> horizon;
        for (const auto& e : vis_edges)
            if (!vis_edges.count({e.second, e.first})) horizon.push_back(e);
        for (int fi : visible) faces[fi].alive = false;
        for (const auto& [u, v] : horizon) faces.push_back(make_face(u, v, i, pts, interior));
    }

    std::vector<int> remap(n, -1);
    for (const Face& f : faces) {
        if (!f.alive) continue;
        for (int idx : {f.a, f.b, f.c})
            if (remap[idx] < 0) {
                remap[idx] = static_cast<int>(hull.vertices.size());
                hull.vertices.push_back(pts[idx]);
            }
        hull.triangles.push_back({remap[f.a], remap[f.b], remap[f.c]});
        hull.facets.push_back({f.n, f.off});
    }
    return hull;
}

}  // namespace screwtool
