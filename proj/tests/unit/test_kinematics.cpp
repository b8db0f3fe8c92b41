#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "screwtool/kinematics.hpp"

using namespace screwtool;

namespace {

// Independent oracle: invert the width relation w = 4 r sin(a) + 2 w_hldr by
// bisection on the inline forward formula.
double bisect_alpha(double w, const ToolParams& p) {
    auto fwd = [&](double a_deg) {
        return 4.0 * p.r_drv * std::sin(a_deg * kPi / 180.0) + 2.0 * p.w_hldr;
    };
    double lo = 0.0, hi = 90.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (fwd(mid) < w ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_CASE("width_to_alpha matches the bisection oracle and frozen values") {
    ToolParams p;
    CHECK(width_to_alpha(40.0, p) == doctest::Approx(bisect_alpha(40.0, p)).epsilon(1e-9));
    CHECK(width_to_alpha(83.0, p) == doctest::Approx(bisect_alpha(83.0, p)).epsilon(1e-9));
    CHECK(width_to_alpha(40.0, p) == doctest::Approx(19.7246336).epsilon(1e-6));
    CHECK(width_to_alpha(83.0, p) == doctest::Approx(61.0449756).epsilon(1e-6));
    CHECK(width_to_alpha(2.0 * p.w_hldr, p) == doctest::Approx(0.0));
    CHECK_THROWS_AS(width_to_alpha(12.9, p), std::domain_error);
    CHECK_THROWS_AS(width_to_alpha(93.1, p), std::domain_error);
}

TEST_CASE("alpha_to_width endpoints and inverse round trip") {
    ToolParams p;
    CHECK(alpha_to_width(0.0, p) == doctest::Approx(13.0));
    CHECK(alpha_to_width(90.0, p) == doctest::Approx(93.0));
    CHECK(alpha_to_width(19.7246336, p) == doctest::Approx(40.0).epsilon(1e-6));
    CHECK_THROWS_AS(alpha_to_width(-0.1, p), std::domain_error);

    for (int i = 0; i <= 50; ++i) {
        double w = 13.0 + (93.0 - 13.0) * i / 50.0;
        CHECK(rel_close(alpha_to_width(width_to_alpha(w, p), p), w, 1e-9));
    }
    for (int i = 0; i <= 50; ++i) {
        double a = 90.0 * i / 50.0;
        CHECK(rel_close(width_to_alpha(alpha_to_width(a, p), p), a, 1e-9));
    }
}

TEST_CASE("max_rotational_travel conventions and properties") {
    ToolParams p;
    // direct-evaluation oracle: 90 deg - asin(0.4625) = 62.4514540 deg
    CHECK(max_rotational_travel(p) == doctest::Approx(62.4514540).epsilon(1e-7));
    CHECK(max_rotational_travel(p, TravelConvention::HolderOffset) ==
          doctest::Approx(61.0449756 - 19.7246336).epsilon(1e-6));

    SUBCASE("zero stroke gives zero travel") {
        p.w_tool_max = p.w_tool_min = 60.0;
        CHECK(max_rotational_travel(p) == doctest::Approx(0.0));
    }
    SUBCASE("r_whl = 0 boundary case") {
        p.r_whl = 0.0;
        p.w_tool_max = 4.0 * p.r_drv;
        double expect = 90.0 - rad_to_deg(std::asin(p.w_tool_min / (4.0 * p.r_drv)));
        CHECK(max_rotational_travel(p) == doctest::Approx(expect).epsilon(1e-9));
    }
    SUBCASE("monotonically decreasing in r_drv") {
        double prev = max_rotational_travel(p);
        for (double r = 21.0; r <= 30.0; r += 1.0) {
            ToolParams q = p;
            q.r_drv = r;
            double cur = max_rotational_travel(q);
            CHECK(cur < prev);
            prev = cur;
        }
    }
    SUBCASE("arcsine domain error") {
        p.w_tool_max = 4.0 * p.r_drv + 2.0 * p.r_whl + 1.0;
        CHECK_THROWS_AS(max_rotational_travel(p), std::domain_error);
    }
}

TEST_CASE("min_pad_height at the closed state") {
    ToolParams p;
    CHECK(min_pad_height(p) == doctest::Approx(56.4795317).epsilon(1e-6));
    SUBCASE("r_sprt = 0 degenerates to the driving arms") {
        p.r_sprt = 0.0;
        double a = width_to_alpha(p.w_tool_min, p);
        CHECK(min_pad_height(p) ==
              doctest::Approx(2.0 * p.r_drv * std::cos(deg_to_rad(a))).epsilon(1e-12));
    }
    SUBCASE("open state at alpha = 90 gives zero") {
        p.w_tool_max = 4.0 * p.r_drv + 2.0 * p.w_hldr;  // sin(alpha_init) = 1
        CHECK(min_pad_height(p, PadHeightState::Open) == doctest::Approx(0.0));
    }
    SUBCASE("closed height exceeds open height") {
        CHECK(min_pad_height(p, PadHeightState::Closed) >
              min_pad_height(p, PadHeightState::Open));
    }
}

TEST_CASE("output_angle_squeeze frozen values and saturation") {
    ToolParams p;
    GripperParams g;
    CHECK(output_angle_squeeze(0.0, 20.0, p).delta_out == doctest::Approx(0.0));
    CHECK(output_angle_squeeze(1.0, 20.0, p).delta_out ==
          doctest::Approx(22.3627882).epsilon(1e-6));

    SUBCASE("closed form matches numeric integration of the rate") {
        // oracle: integrate d(delta)/dt = (v/4r)/sqrt(1 - (sin a_i - v t/4r)^2)
        double v = 20.0, t_end = 1.0;
        double sin_ai = 0.875;
        int n = 200000;
        double acc = 0.0, h = t_end / n;
        for (int i = 0; i < n; ++i) {
            double t = (i + 0.5) * h;
            double s = sin_ai - v * t / (4.0 * p.r_drv);
            acc += h * (v / (4.0 * p.r_drv)) / std::sqrt(1.0 - s * s);
        }
        CHECK(output_angle_squeeze(t_end, v, p).delta_out ==
              doctest::Approx(rad_to_deg(acc)).epsilon(1e-7));
    }
    SUBCASE("full stroke saturates at the travel bound") {
        double t_full = (p.w_tool_max - p.w_tool_min) / 20.0;
        AngleSample s = output_angle_squeeze(t_full * 1.5, 20.0, p);
        CHECK(s.saturated);
        CHECK(s.delta_out == doctest::Approx(41.3203421).epsilon(1e-6));
        CHECK_FALSE(output_angle_squeeze(t_full * 0.99, 20.0, p).saturated);
    }
    SUBCASE("monotone in t and v until saturation") {
        double prev = -1.0;
        for (double t = 0.0; t <= 2.0; t += 0.05) {
            double d = output_angle_squeeze(t, 20.0, p).delta_out;
            CHECK(d >= prev);
            prev = d;
        }
        prev = -1.0;
        for (double v = 5.0; v <= 40.0; v += 2.5) {
            double d = output_angle_squeeze(1.0, v, p).delta_out;
            CHECK(d >= prev);
            prev = d;
        }
    }
    SUBCASE("analytic rate matches finite differences away from saturation") {
        double v = 20.0;
        for (double t : {0.1, 0.5, 1.0, 1.5}) {
            double h = 1e-6;
            double fd = (output_angle_squeeze(t + h, v, p).delta_out -
                         output_angle_squeeze(t - h, v, p).delta_out) /
                        (2.0 * h);
            double s = 0.875 - v * t / (4.0 * p.r_drv);
            double analytic = rad_to_deg(v / (4.0 * p.r_drv) / std::sqrt(1.0 - s * s));
            CHECK(rel_close(fd, analytic, 1e-6));
        }
    }
    CHECK_THROWS_AS(output_angle_squeeze(-0.1, 20.0, p), std::invalid_argument);
}

TEST_CASE("cycle trajectory: continuity, monotonicity, frozen cycle totals") {
    ToolParams p;
    double v = 150.0;
    double stroke = p.w_tool_max - p.w_tool_min;
    double t_m = stroke / v;
    double t_cycle = 2.0 * t_m;

    SUBCASE("both branches agree at t_m") {
        double from_squeeze = output_angle_squeeze(t_m, v, p).delta_out;
        double from_stretch = output_angle_squeeze(t_m, v, p).delta_out +
                              output_angle_stretch(0.0, v, 19.7246336, p).delta_out;
        CHECK(rel_close(from_squeeze, from_stretch, 1e-9));
        CHECK(rel_close(output_angle_cycle(t_m - 1e-12, v, v, p).delta_out,
                        output_angle_cycle(t_m + 1e-12, v, v, p).delta_out, 1e-7));
    }
    SUBCASE("one full cycle advances 82.64 deg in 0.5733 s") {
        CycleSample s = output_angle_cycle(t_cycle, v, v, p);
        CHECK(s.delta_out == doctest::Approx(82.6406841).epsilon(1e-6));
        CHECK(t_cycle == doctest::Approx(0.57333333).epsilon(1e-8));
    }
    SUBCASE("non-decreasing and continuous across many cycles") {
        double prev = 0.0;
        double t_end = 20.0 * t_cycle;
        int n = 5000;
        for (int i = 0; i <= n; ++i) {
            double t = t_end * i / n;
            double d = output_angle_cycle(t, 150.0, 90.0, p).delta_out;
            CHECK(d >= prev - 1e-12);
            CHECK(d - prev < 1.0);  // no jumps at phase/cycle switches
            prev = d;
        }
    }
    SUBCASE("time to 360 deg at 150 mm/s is about 2.5 s ideal") {
        double t360 = time_to_rotate(360.0, 150.0, 150.0, p);
        // frozen from bisection on the (monotone) cycle model
        CHECK(t360 == doctest::Approx(2.4804797).epsilon(1e-6));
        CHECK(output_angle_cycle(t360, 150.0, 150.0, p).delta_out ==
              doctest::Approx(360.0).epsilon(1e-9));
        // speed ratio check from the closed form, pre-saturation regime
        double t10 = time_to_rotate(10.0, 10.0, 10.0, p);
        double t110 = time_to_rotate(10.0, 110.0, 110.0, p);
        CHECK(rel_close(t10 / t110, 11.0, 1e-9));
    }
    SUBCASE("phase tags follow the branches") {
        CHECK(output_angle_cycle(0.5 * t_m, v, v, p).phase == Phase::Squeezing);
        CHECK(output_angle_cycle(1.5 * t_m, v, v, p).phase == Phase::Stretching);
    }
}

TEST_CASE("trajectory sampling and CSV header") {
    ToolParams p;
    CycleTrajectory traj = sample_cycle_trajectory(1.0, 0.01, 150.0, 150.0, p);
    CHECK(traj.samples.size() == 101);
    CHECK(traj.t_m == doctest::Approx(43.0 / 150.0));
    std::ostringstream os;
    write_trajectory_csv(os, traj);
    CHECK(os.str().substr(0, 23) == "t_s,delta_out_deg,phase");
}
