#include <doctest.h>

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "screwtool/kinematics.hpp"
#include "screwtool/stability.hpp"

using namespace screwtool;

namespace {

double support(const std::vector<Eigen::Vector3d>& pts, const Eigen::Vector3d& u) {
    double h = -1e18;
    for (const auto& p : pts) h = std::max(h, u.dot(p));
    return h;
}

// Independent oracle for the stability index: min over directions of the
// support function of the raw point cloud (no hull involved). Coarse
// Fibonacci-sphere scan, then two local grid refinements around the best
// candidates.
double q_sampling_oracle(const std::vector<Eigen::Vector3d>& pts) {
    const int n = 4096;
    std::vector<std::pair<double, Eigen::Vector3d>> ranked;
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        double z = 1.0 - 2.0 * (i + 0.5) / n;
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double th = golden * i;
        Eigen::Vector3d u(r * std::cos(th), r * std::sin(th), z);
        ranked.emplace_back(support(pts, u), u);
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    double best = ranked.front().first;
    if (best <= 0.0) return 0.0;  // origin not interior
    for (int c = 0; c < 8 && c < static_cast<int>(ranked.size()); ++c) {
        Eigen::Vector3d u = ranked[c].second;
        for (double span : {4.0, 0.35}) {
            Eigen::Vector3d e1 = u.unitOrthogonal();
            Eigen::Vector3d e2 = u.cross(e1);
            Eigen::Vector3d local_best_u = u;
            double local_best = support(pts, u);
            int steps = 16;
            for (int i = -steps; i <= steps; ++i) {
                for (int j = -steps; j <= steps; ++j) {
                    double a1 = deg_to_rad(span * i / steps);
                    double a2 = deg_to_rad(span * j / steps);
                    Eigen::Vector3d v =
                        (u + std::tan(a1) * e1 + std::tan(a2) * e2).normalized();
                    double h = support(pts, v);
                    if (h < local_best) {
                        local_best = h;
                        local_best_u = v;
                    }
                }
            }
            u = local_best_u;
            best = std::min(best, local_best);
        }
    }
    return best;
}

}  // namespace

TEST_CASE("contact wrench generators") {
    SUBCASE("frictionless is a single generator along the normal") {
        WrenchContact c{{0.0, 0.0}, {0.0, 1.0}, std::nullopt, 1.0, false};
        auto g = contact_wrench_generators(c, 8);
        REQUIRE(g.size() == 1);
        CHECK(g[0].isApprox(Eigen::Vector3d(0, 1, 0), 1e-12));
    }
    SUBCASE("bilateral pin adds the opposite generator") {
        WrenchContact c{{0.0, 0.0}, {1.0, 0.0}, std::nullopt, 2.0, true};
        auto g = contact_wrench_generators(c, 8);
        REQUIRE(g.size() == 2);
        CHECK(g[0].isApprox(Eigen::Vector3d(2, 0, 0), 1e-12));
        CHECK(g[1].isApprox(Eigen::Vector3d(-2, 0, 0), 1e-12));
    }
    SUBCASE("two-edge cone with no moment coupling") {
        WrenchContact c{{0.0, 0.0}, {0.0, 1.0}, SoftFingerModel{0.5, 0.0}, 1.0, false};
        auto g = contact_wrench_generators(c, 2);
        REQUIRE(g.size() == 2);
        bool plus = false, minus = false;
        for (const auto& w : g) {
            CHECK(w.y() == doctest::Approx(1.0));
            CHECK(w.z() == doctest::Approx(0.0));
            plus = plus || std::abs(w.x() - 0.5) < 1e-12;
            minus = minus || std::abs(w.x() + 0.5) < 1e-12;
        }
        CHECK(plus);
        CHECK(minus);
    }
    SUBCASE("lever arm enters the torque row: p = (10, 0) gives tau = 10") {
        WrenchContact c{{10.0, 0.0}, {0.0, 1.0}, SoftFingerModel{0.5, 0.0}, 1.0, false};
        for (const auto& w : contact_wrench_generators(c, 4))
            CHECK(w.z() == doctest::Approx(10.0 * w.y()).epsilon(1e-12));
    }
    SUBCASE("ellipse sampling reaches the moment extremes") {
        WrenchContact c{{0.0, 0.0}, {0.0, 1.0}, SoftFingerModel{0.5, 5.0}, 2.0, false};
        auto g = contact_wrench_generators(c, 8);
        REQUIRE(g.size() == 8);
        double tau_max = 0.0;
        for (const auto& w : g) {
            // (f_t / (mu F))^2 + (tau_n / (e mu F))^2 = 1 on the boundary
            double ft = w.x() / (0.5 * 2.0);
            double tn = w.z() / (5.0 * 0.5 * 2.0);
            CHECK(ft * ft + tn * tn == doctest::Approx(1.0).epsilon(1e-12));
            tau_max = std::max(tau_max, std::abs(w.z()));
        }
        CHECK(tau_max == doctest::Approx(5.0 * 0.5 * 2.0).epsilon(1e-12));
    }
    SUBCASE("tau normalization divides the torque row") {
        WrenchContact c{{10.0, 0.0}, {0.0, 1.0}, std::nullopt, 1.0, false};
        auto g = contact_wrench_generators(c, 2, 27.0);
        CHECK(g[0].z() == doctest::Approx(10.0 / 27.0).epsilon(1e-12));
    }
    SUBCASE("error paths") {
        WrenchContact zero_n{{0.0, 0.0}, {0.0, 0.0}, std::nullopt, 1.0, false};
        CHECK_THROWS_AS(contact_wrench_generators(zero_n, 8), std::invalid_argument);
        WrenchContact fr{{0.0, 0.0}, {0.0, 1.0}, SoftFingerModel{0.5, 5.0}, 1.0, false};
        CHECK_THROWS_AS(contact_wrench_generators(fr, 1), std::invalid_argument);
    }
}

TEST_CASE("wrench set of two opposing frictionless contacts is rank-deficient") {
    std::vector<WrenchContact> cs = {
        {{1.0, 0.0}, {-1.0, 0.0}, std::nullopt, 1.0, false},
        {{-1.0, 0.0}, {1.0, 0.0}, std::nullopt, 1.0, false},
    };
    WrenchSet ws = grasp_wrench_set(cs, 8);
    CHECK(ws.hull.rank < 3);
    CHECK(stability_index(ws) == 0.0);
}

TEST_CASE("pad contact layout geometry") {
    ToolParams p;
    auto cs = pad_contact_layout(40.0, 10.0, 6.5, p);
    REQUIRE(cs.size() == 6);
    double hinge_x = 2.0 * p.r_drv * std::sin(deg_to_rad(40.0));
    CHECK(cs[0].p.x() == doctest::Approx(hinge_x + 6.5));
    CHECK(cs[0].p.y() == doctest::Approx(p.l_tool / 2.0));
    CHECK(cs[0].friction.has_value());
    CHECK(cs[1].p.y() == doctest::Approx(-p.l_tool / 2.0));
    CHECK_FALSE(cs[2].friction.has_value());
    CHECK(cs[4].bilateral);
    CHECK(cs[5].bilateral);
    CHECK(cs[4].p.x() == doctest::Approx(hinge_x));
    // wheel contacts mirror in y
    CHECK(cs[2].p.y() == doctest::Approx(-cs[3].p.y()));
    // wheel pushes the pad outward (+x in the tool frame)
    CHECK(cs[2].n.x() > 0.0);
    CHECK(cs[3].n.x() > 0.0);
}

TEST_CASE("stability index: positivity, homogeneity, contact monotonicity") {
    ToolParams p;
    auto cs = pad_contact_layout(40.0, 10.0, 6.5, p);
    WrenchSet ws = grasp_wrench_set(cs, 8, p.l_tool / 2.0);
    double q1 = stability_index(ws);
    CHECK(q1 > 0.0);

    SUBCASE("scaling all force limits by 2 scales Q exactly") {
        auto scaled = cs;
        for (auto& c : scaled) c.force_limit *= 2.0;
        double q2 = stability_index(grasp_wrench_set(scaled, 8, p.l_tool / 2.0));
        CHECK(q2 == doctest::Approx(2.0 * q1).epsilon(1e-12));
    }
    SUBCASE("scaling by a non-dyadic factor holds to 1e-9") {
        auto scaled = cs;
        for (auto& c : scaled) c.force_limit *= 3.7;
        double q2 = stability_index(grasp_wrench_set(scaled, 8, p.l_tool / 2.0));
        CHECK(q2 == doctest::Approx(3.7 * q1).epsilon(1e-9));
    }
    SUBCASE("adding a contact never decreases Q") {
        auto more = cs;
        more.push_back({{0.0, 10.0}, {0.0, -1.0}, std::nullopt, 0.5, false});
        double q2 = stability_index(grasp_wrench_set(more, 8, p.l_tool / 2.0));
        CHECK(q2 >= q1 - 1e-12);
    }
    SUBCASE("doubling the cone resolution moves Q only slightly") {
        double q16 = stability_index(grasp_wrench_set(cs, 16, p.l_tool / 2.0));
        CHECK(std::abs(q16 - q1) / q1 < 0.05);
    }
}

TEST_CASE("facet-distance Q matches the direction-sampling oracle within 2%") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> radius(0.5, 1.5);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int tested = 0;
    for (int trial = 0; tested < 10; ++trial) {
        std::vector<Eigen::Vector3d> pts;
        int n = 12 + (trial % 5) * 4;
        for (int i = 0; i < n; ++i) {
            Eigen::Vector3d d(gauss(rng), gauss(rng), gauss(rng));
            pts.push_back(radius(rng) * d.normalized());
        }
        WrenchSet ws;
        ws.wrenches = pts;
        ws.hull = convex_hull_3d(pts);
        double q_facet = stability_index(ws);
        if (q_facet <= 0.05) continue;  // origin too close to the boundary; resample
        double q_oracle = q_sampling_oracle(pts);
        CHECK(std::abs(q_facet - q_oracle) <= 0.02 * q_facet);
        ++tested;
    }
}

TEST_CASE("stability sweep: trends, infeasible cells, export") {
    ToolParams p;
    std::vector<double> rs = {8.0, 10.0, 12.0, 25.0};  // 25 is infeasible (>= r_drv)
    std::vector<double> alphas;
    for (int i = 0; i <= 8; ++i)
        alphas.push_back(alpha_min(p) + (alpha_init(p) - alpha_min(p)) * i / 8.0);
    StabilityGrid grid = sweep_stability(p, rs, alphas, 6.5);
    REQUIRE(grid.cells.size() == rs.size() * alphas.size());

    SUBCASE("Q >= 0 everywhere and infeasible cells are marked") {
        for (const auto& c : grid.cells) {
            if (c.r_sprt == 25.0)
                CHECK_FALSE(c.feasible);
            else {
                CHECK(c.feasible);
                CHECK(c.q >= 0.0);
            }
        }
    }
    SUBCASE("Q is monotonically non-increasing in alpha at each feasible r_sprt") {
        for (double r : {8.0, 10.0, 12.0}) {
            double prev = 1e18;
            for (const auto& c : grid.cells) {
                if (c.r_sprt != r) continue;
                CHECK(c.q <= prev + 1e-12);
                prev = c.q;
            }
        }
    }
    SUBCASE("CSV and notes") {
        std::ostringstream os;
        write_stability_csv(os, grid);
        CHECK(os.str().substr(0, 21) == "alpha_deg,r_sprt_mm,Q");
        CHECK(os.str().find("nan") != std::string::npos);  // infeasible cells
        CHECK_FALSE(grid.notes.empty());
    }
    CHECK_THROWS_AS(sweep_stability(p, {}, alphas, 6.5), std::invalid_argument);
}

TEST_CASE("contact layout JSON dump") {
    ToolParams p;
    auto cs = pad_contact_layout(30.0, 10.0, 6.5, p);
    std::string js = contact_layout_json(cs);
    CHECK(js.find("soft_finger") != std::string::npos);
    CHECK(js.find("frictionless") != std::string::npos);
    CHECK(js.find("bilateral") != std::string::npos);
}
