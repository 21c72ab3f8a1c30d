#include "doctest.h"

#include <cmath>

#include "certpath/continuation.hpp"
#include "certpath/fixtures.hpp"
#include "test_util.hpp"

using namespace certpath;
using testutil::cd;
using Path = ParamPath<double>;

namespace {

UniPoly<double> up(std::initializer_list<cd> c) { return UniPoly<double>::exact(std::vector<cd>(c)); }

/// y^2 + y - x; single branch point at x = -1/4.
BivPoly<double> quad_curve() { return BivPoly<double>({up({0, -1}), up({1}), up({1})}); }

Path unit_loop(int turns = 1) { return Path::arc(cd(0), 1.0, 0.0, 2 * M_PI * turns); }

/// Structural invariants of a successful log.
void check_log(const BivPoly<double>& f, const Path& path, const TraceLog<double>& log) {
    REQUIRE(log.outcome == Outcome::Success);
    REQUIRE(log.steps.size() >= 2);
    CHECK(log.steps.front().T == 0.0);
    CHECK(log.steps.back().T == 1.0);
    CHECK(!log.steps.front().report.has_value());
    for (std::size_t i = 1; i < log.steps.size(); ++i) {
        const auto& prev = log.steps[i - 1];
        const auto& s = log.steps[i];
        CHECK(s.T > prev.T);
        REQUIRE(s.report.has_value());
        const auto& rep = *s.report;
        // Certified move: |x - x_prev| < delta and the matched value stayed
        // within epsilon.
        CHECK(std::abs(s.x - prev.x) < rep.delta);
        CHECK(std::abs(s.y - prev.y) < rep.epsilon);
        CHECK(std::abs(s.x - path.point(s.T)) < 1e-12 * std::max(1.0, std::abs(s.x)));
        double scale = 0;
        for (std::size_t k = 0; k < f.y_coeffs().size(); ++k)
            scale += std::abs(f.y_coeff(k)(s.x)) * std::pow(std::abs(s.y), static_cast<double>(k));
        CHECK(std::abs(f(s.x, s.y)) <= 1e-13 * std::max(1.0, scale));
    }
}

}  // namespace

TEST_CASE("square root monodromy") {
    const auto f = fixtures::sqrt_curve<double>();
    const auto log = trace_curve(f, unit_loop(), cd(1));
    check_log(f, unit_loop(), log);
    CHECK(std::abs(log.final_y() - cd(-1)) < 1e-10);
    CHECK(log.step_count() == log.steps.size() - 1);
}

TEST_CASE("two loops restore the branch") {
    const auto f = fixtures::sqrt_curve<double>();
    const auto log = trace_curve(f, unit_loop(2), cd(1));
    check_log(f, unit_loop(2), log);
    CHECK(std::abs(log.final_y() - cd(1)) < 1e-10);
    // The point after the first turn is the other branch.
    bool seen = false;
    for (const auto& s : log.steps)
        if (std::abs(s.T - 0.5) < 1e-15) {
            CHECK(std::abs(s.y - cd(-1)) < 1e-10);
            seen = true;
        }
    CHECK(seen);
}

TEST_CASE("real positive branch") {
    const auto f = fixtures::sqrt_curve<double>();
    const Path p = Path::segment(cd(1), cd(4));
    const auto log = trace_curve(f, p, cd(1));
    check_log(f, p, log);
    CHECK(std::abs(log.final_y() - cd(2)) < 1e-12);
}

TEST_CASE("Newton homotopy endpoint") {
    const auto f = fixtures::newton_curve<double>(10.0);
    const auto log = trace_curve(f, fixtures::newton_path<double>(), cd(1));
    check_log(f, fixtures::newton_path<double>(), log);
    CHECK(std::abs(log.final_y() - std::sqrt(11.0)) < 1e-12);
    CHECK(log.step_count() >= 1);
    CHECK(log.step_count() <= 45);
}

TEST_CASE("path invariance") {
    const auto f = quad_curve();
    const cd a(1), b(0, 2);
    const double r = 0.5 * (std::sqrt(5.0) - 1);  // a fiber value at x = 1
    const Path straight = Path::segment(a, b);
    Path bent = Path::segment(a, cd(3));
    bent.then_segment(b);
    Path around = Path::segment(a, cd(2, 2));
    around.then_segment(cd(1, 3)).then_segment(b);
    const cd y1 = trace_curve(f, straight, cd(r)).final_y();
    CHECK(std::abs(f(b, y1)) < 1e-12);
    CHECK(std::abs(trace_curve(f, bent, cd(r)).final_y() - y1) < 1e-8);
    CHECK(std::abs(trace_curve(f, around, cd(r)).final_y() - y1) < 1e-8);
    // A path on the other side of the branch point lands on the other branch.
    Path other = Path::segment(a, cd(0, -1));
    other.then_segment(cd(-1, 0)).then_segment(b);
    const cd y2 = trace_curve(f, other, cd(r)).final_y();
    CHECK(std::abs(y2 - y1) > 0.1);
    CHECK(std::abs(y1 + y2 + 1.0) < 1e-10);
}

TEST_CASE("reversibility") {
    const auto f = quad_curve();
    for (int trial = 0; trial < 10; ++trial) {
        Path p = Path::segment(cd(1), cd(2.5) + testutil::disc(2));
        p.then_segment(cd(2, 1) + testutil::disc(1));
        const double r = 0.5 * (std::sqrt(5.0) - 1);
        const auto fwd = trace_curve(f, p, cd(r));
        const auto back = trace_curve(f, p.reversed(), fwd.final_y());
        CHECK(std::abs(back.final_y() - cd(r)) < 1e-8);
    }
    const auto g = fixtures::sqrt_curve<double>();
    const auto fwd = trace_curve(g, unit_loop(), cd(1));
    const auto back = trace_curve(g, unit_loop().reversed(), fwd.final_y());
    CHECK(std::abs(back.final_y() - cd(1)) < 1e-8);
}

TEST_CASE("a path through the branch point fails") {
    const auto f = fixtures::sqrt_curve<double>();
    try {
        trace_curve(f, Path::segment(cd(1), cd(-1)), cd(1));
        FAIL("expected a failure");
    } catch (const TraceFailure<double>& e) {
        const bool kind_ok = e.kind() == ErrorKind::CriticalPointOnPath || e.kind() == ErrorKind::NoProgress;
        CHECK(kind_ok);
        CHECK(e.singular_on_path());
        CHECK(e.critical_distance() < 1e-8);
        CHECK(e.log().outcome == Outcome::Failure);
        CHECK(!e.log().steps.empty());
        CHECK(e.log().steps.back().T < 0.5);
    }
}

TEST_CASE("starting at a critical point") {
    try {
        trace_curve(fixtures::sqrt_curve<double>(), Path::segment(cd(0), cd(1)), cd(0));
        FAIL("expected a failure");
    } catch (const TraceFailure<double>& e) {
        CHECK(e.kind() == ErrorKind::CriticalPointOnPath);
        CHECK(e.singular_on_path());
    }
}

TEST_CASE("the start value must lie on the curve") {
    CHECK_THROWS_AS(trace_curve(fixtures::sqrt_curve<double>(), Path::segment(cd(1), cd(2)), cd(3)), Error);
    TraceOptions bad;
    bad.safety_factor = 1.0;
    CHECK_THROWS_AS(trace_curve(fixtures::sqrt_curve<double>(), Path::segment(cd(1), cd(2)), cd(1), bad), Error);
}

TEST_CASE("nearest match") {
    RootSet<double> rs;
    rs.roots = {cd(1), cd(-1), cd(0, 3)};
    CHECK(match_nearest(rs, cd(0.9, 0.1), 1e-12) == 0);
    CHECK(match_nearest(rs, cd(0, 2), 1e-12) == 2);
    try {
        match_nearest(rs, cd(0, 0), 1e-12);
        FAIL("expected AmbiguousMatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::AmbiguousMatch);
    }
}

TEST_CASE("path construction") {
    Path p = Path::segment(cd(0), cd(3, 4));
    CHECK(p.length() == doctest::Approx(5.0));
    p.then_arc(cd(0), 5.0, std::atan2(4.0, 3.0), std::atan2(4.0, 3.0) + M_PI);
    CHECK(p.length() == doctest::Approx(5.0 + 5 * M_PI));
    CHECK(std::abs(p.end() - cd(-3, -4)) < 1e-12);
    CHECK(std::abs(p.point(5.0 / (5.0 + 5 * M_PI)) - cd(3, 4)) < 1e-12);
    CHECK_THROWS_AS(p.then_arc(cd(1), 1.0, 0.0, 1.0), Error);
    CHECK_THROWS_AS(Path::segment(cd(1), cd(1)), Error);
    CHECK_THROWS_AS(Path::arc(cd(0), -1.0, 0.0, 1.0), Error);

    const Path r = p.reversed();
    for (double t : {0.0, 0.1, 0.5, 0.77, 1.0}) CHECK(std::abs(r.point(t) - p.point(1 - t)) < 1e-12);
}

TEST_CASE("windows are monotone") {
    for (const Path& p : {unit_loop(2), Path::arc(cd(0.3), 0.7, 1.0, -4.0), Path::segment(cd(0), cd(1))}) {
        const auto ws = p.windows();
        REQUIRE(!ws.empty());
        CHECK(ws.front().first == 0.0);
        CHECK(ws.back().second == 1.0);
        for (std::size_t i = 0; i < ws.size(); ++i) {
            if (i > 0) CHECK(ws[i].first == ws[i - 1].second);
            const auto [lo, hi] = ws[i];
            for (int j = 0; j < 10; ++j) {
                const double t0 = lo + (hi - lo) * j / 10.0;
                double prev = 0;
                for (int k = 1; k <= 20; ++k) {
                    const double t = t0 + (hi - t0) * k / 20.0;
                    const double d = std::abs(p.point(t) - p.point(t0));
                    CHECK(d >= prev - 1e-12);
                    prev = d;
                }
            }
        }
    }
    CHECK(unit_loop(2).windows().size() >= 4);
}

TEST_CASE("determinism") {
    const auto a = trace_curve(quad_curve(), unit_loop(), cd(0.5 * (std::sqrt(5.0) - 1)));
    const auto b = trace_curve(quad_curve(), unit_loop(), cd(0.5 * (std::sqrt(5.0) - 1)));
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t i = 0; i < a.steps.size(); ++i) {
        CHECK(a.steps[i].T == b.steps[i].T);
        CHECK(a.steps[i].y == b.steps[i].y);
    }
}

TEST_CASE("extended precision trace") {
    set_mp_precision_bits(128);
    using C = Complex<MpReal>;
    const auto f = fixtures::sqrt_curve<MpReal>();
    const auto log = trace_curve(f, ParamPath<MpReal>::arc(C(0), MpReal(1), MpReal(0), MpReal(2) * pi<MpReal>()), C(1));
    CHECK(abs(log.final_y() + C(1)) < MpReal("1e-30"));
}
