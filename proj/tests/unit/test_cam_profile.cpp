#include <doctest.h>

#include <cmath>
#include <sstream>

#include "screwtool/cam_profile.hpp"
#include "screwtool/kinematics.hpp"

using namespace screwtool;

TEST_CASE("wheel center: frozen and boundary values") {
    ToolParams p;  // r_drv = 20, r_sprt = 10
    Eigen::Vector2d c = wheel_center(30.0, p);
    CHECK(c.x() == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(c.y() == doctest::Approx(25.9807621).epsilon(1e-7));

    Eigen::Vector2d c0 = wheel_center(0.0, p);
    CHECK(c0.x() == doctest::Approx(0.0));
    CHECK(c0.y() == doctest::Approx(30.0));

    Eigen::Vector2d c90 = wheel_center(90.0, p);
    CHECK(c90.x() == doctest::Approx(10.0));
    CHECK(c90.y() == doctest::Approx(0.0).epsilon(1e-12));

    SUBCASE("degenerate geometry") {
        ToolParams q = p;
        q.r_sprt = 20.0;
        CHECK_THROWS_AS(wheel_center(30.0, q), std::domain_error);
        CHECK_THROWS_AS(wheel_center(-1.0, p), std::domain_error);
    }
}

TEST_CASE("profile offset: tangency holds exactly at every sample") {
    ToolParams p;
    for (int i = 0; i <= 500; ++i) {
        double a = 0.0 + 90.0 * i / 500.0;
        double d = (profile_point(a, p) - wheel_center(a, p)).norm();
        CHECK(d == doctest::Approx(p.r_whl).epsilon(1e-12));
    }
    SUBCASE("zero wheel radius collapses the offset") {
        ToolParams q = p;
        q.r_whl = 0.0;
        for (double a : {5.0, 30.0, 60.0, 85.0})
            CHECK((profile_point(a, q) - wheel_center(a, q)).norm() ==
                  doctest::Approx(0.0));
    }
}

TEST_CASE("analytic normal matches a finite-difference normal of the curve") {
    ToolParams p;
    const double h = 1e-4;  // deg
    for (int i = 1; i < 90; ++i) {
        double a = static_cast<double>(i);
        Eigen::Vector2d t = (wheel_center(a + h, p) - wheel_center(a - h, p)).normalized();
        Eigen::Vector2d fd_normal(-t.y(), t.x());  // either orientation
        Eigen::Vector2d n = profile_inward_normal(a, p);
        double cross = std::abs(fd_normal.x() * n.y() - fd_normal.y() * n.x());
        CHECK(std::asin(std::min(1.0, cross)) < 1e-6);  // angle between lines, rad
        CHECK(n.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("offset points into the pad (y-reducing normal)") {
    ToolParams p;
    for (double a : {1e-9, 10.0, 45.0, 80.0}) {
        Eigen::Vector2d n = profile_inward_normal(a, p);
        CHECK(n.y() < 0.0);
    }
    // limit normal at alpha -> 0 is straight down the pad axis
    Eigen::Vector2d n0 = profile_inward_normal(0.0, p);
    CHECK(n0.x() == doctest::Approx(0.0));
    CHECK(n0.y() == doctest::Approx(-1.0));
    // theta convention: offset direction equals (cos theta, -sin theta)
    double th = profile_normal_angle(30.0, p);
    Eigen::Vector2d n = profile_inward_normal(30.0, p);
    CHECK(std::cos(deg_to_rad(th)) == doctest::Approx(n.x()).epsilon(1e-12));
    CHECK(-std::sin(deg_to_rad(th)) == doctest::Approx(n.y()).epsilon(1e-12));
}

TEST_CASE("synthesized profile: sampling, monotonicity, extent") {
    ToolParams p;
    SUBCASE("two samples give the stroke endpoints") {
        CamProfile pr = synthesize_cam_profile(p, 2);
        REQUIRE(pr.points.size() == 2);
        CHECK(pr.points.front().alpha == doctest::Approx(alpha_min(p)));
        CHECK(pr.points.back().alpha == doctest::Approx(alpha_init(p)));
    }
    SUBCASE("x_sprt is strictly monotone over the stroke") {
        CamProfile pr = synthesize_cam_profile(p, 100);
        for (size_t i = 1; i < pr.points.size(); ++i)
            CHECK(pr.points[i].x_sprt > pr.points[i - 1].x_sprt);
    }
    SUBCASE("smaller r_sprt shrinks the profile's y extent") {
        auto extent = [&](double rs) {
            ToolParams q = p;
            q.r_sprt = rs;
            CamProfile pr = synthesize_cam_profile(q, 64);
            double lo = 1e18, hi = -1e18;
            for (const auto& pt : pr.points) {
                lo = std::min(lo, pt.y_sprt);
                hi = std::max(hi, pt.y_sprt);
            }
            return hi - lo;
        };
        CHECK(extent(8.0) < extent(10.0));
        CHECK(extent(10.0) < extent(12.0));
    }
    SUBCASE("degenerate arguments") {
        CHECK_THROWS_AS(synthesize_cam_profile(p, 1), std::invalid_argument);
        ToolParams q = p;
        q.r_sprt = q.r_drv;
        CHECK_THROWS_AS(synthesize_cam_profile(q, 10), std::domain_error);
    }
}

TEST_CASE("profile export formats") {
    ToolParams p;
    CamProfile pr = synthesize_cam_profile(p, 3);
    std::ostringstream csv;
    write_profile_csv(csv, pr);
    CHECK(csv.str().substr(0, 47) == "alpha_deg,x_whl_mm,y_whl_mm,x_sprt_mm,y_sprt_mm");
    std::ostringstream poly;
    write_profile_polyline(poly, pr);
    int lines = 0;
    for (char c : poly.str())
        if (c == '\n') ++lines;
    CHECK(lines == 3);
}
