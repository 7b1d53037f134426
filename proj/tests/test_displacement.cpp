#include <doctest.h>

#include <cmath>

#include "gromolab/displacement.hpp"
#include "gromolab/graph_space.hpp"

using namespace gromolab;

namespace {
constexpr double kLn3 = 1.0986122886681098;
const HalfPlane kHp;

double disp_closed_form(double ell, double rho, std::int64_t n) {
    // d(x, g^n x) = 2 arcsinh(sinh(n ell / 2) cosh(rho)) on the half-plane
    return 2.0 * std::asinh(std::sinh(0.5 * ell * static_cast<double>(n)) * std::cosh(rho));
}
}  // namespace

TEST_CASE("bracket on the identity and on a tree generator") {
    Bracket id = stable_length_bracket(kHp, HIsometry{MobiusD{}, "e"}, hpoint(0, 1), 64, kLn3);
    CHECK(id.lo == 0.0);
    CHECK(id.hi == 0.0);

    CayleySpace f2(GroupDescriptor::parse("free:2"));
    Bracket tg = stable_length_bracket(f2, GraphIsometry{&f2, Word::letter(1), "a"}, Word(), 64,
                                       0.0);
    CHECK(tg.lo == 1.0);
    CHECK(tg.hi == 1.0);

    GraphIsometry ab{&f2, Word::from_letters({1, 2}), "ab"};
    Bracket tb = stable_length_bracket(f2, ab, Word(), 64, 0.0);
    CHECK(tb.lo == 2.0);
    CHECK(tb.hi == 2.0);

    CHECK_THROWS_AS(stable_length_bracket(kHp, HIsometry{MobiusD{}, "e"}, hpoint(0, 1), 1, kLn3),
                    domain_error);
}

TEST_CASE("bracket matches the closed-form displacement oracle") {
    // g = diag(2, 1/2) at x = 1 + i: rho = arcsinh(1), ell = 2 ln 2
    MobiusD g = mobius_normalized(2, 0, 0, 0.5);
    HPoint x = hpoint(1, 1);
    double ell = 2.0 * std::log(2.0);
    double rho = std::asinh(1.0);
    Bracket b = stable_length_bracket(kHp, HIsometry{g, "g"}, x, 1024, kLn3);
    CHECK(b.contains(ell, 1e-9));
    CHECK(b.width() <= 0.05);

    // expected endpoints from an independently derived displacement formula
    double d1 = disp_closed_form(ell, rho, 1);
    double d1024 = disp_closed_form(ell, rho, 1024);
    double lo_expect = (d1024 - d1 - 4.0 * kLn3 * 10.0) / 1023.0;
    CHECK(b.lo == doctest::Approx(lo_expect).epsilon(1e-9));
    double hi_expect = d1024 / 1024.0;
    CHECK(b.hi == doctest::Approx(hi_expect).epsilon(1e-9));
}

TEST_CASE("bracket contains the closed form for 100 seeded hyperbolics") {
    Rng rng(41);
    for (int i = 0; i < 100; ++i) {
        double u = rng.uniform(-3, 3);
        double v = u + rng.uniform(0.4, 3.0) * (rng.below(2) ? 1 : -1);
        double ell = rng.uniform(0.3, 4.0);
        MobiusD g = make_hyperbolic(ExtReal::finite(u), ExtReal::finite(v), ell);
        HPoint x = axis(g).offset_point(rng.uniform(-1, 1), rng.uniform(0, 2));
        Bracket b = stable_length_bracket(kHp, HIsometry{g, "g"}, x, 256, kLn3);
        CHECK(b.contains(translation_length(g), 1e-9));
    }
}

TEST_CASE("power displacements overflow cleanly far past the long double range") {
    MobiusD g = make_hyperbolic(ExtReal::finite(0), ExtReal::infinity(), 30.0);
    CHECK_THROWS_AS(
        power_displacements(kHp, HIsometry{g, "g"}, hpoint(0.5, 1.0), std::int64_t(1) << 28),
        domain_error);
}

TEST_CASE("displacement grows strictly when s(g) > 3 delta") {
    MobiusD g = make_hyperbolic(ExtReal::finite(-1), ExtReal::finite(2), 4.0);  // 4 > 3 ln 3
    Rng rng(42);
    for (int c = 0; c < 20; ++c) {
        HPoint x = axis(g).offset_point(rng.uniform(-1, 1), rng.uniform(0, 1.5));
        HPoint p = x;
        double prev = 0.0;
        for (int n = 1; n <= 32; ++n) {
            p = apply(g, p);
            double d = hdistance(x, p);
            CHECK(d > prev);
            prev = d;
        }
    }
}

TEST_CASE("min displacement") {
    MobiusD g = mobius_normalized(2, 0, 0, 0.5);
    HGeodesic ax = axis(g);
    std::vector<HPoint> grid;
    for (int i = -10; i <= 10; ++i) grid.push_back(ax.at(0.2 * i));
    for (int i = 0; i < 10; ++i) grid.push_back(ax.offset_point(0.1 * i, 0.3 + 0.1 * i));
    auto md = min_displacement(kHp, HIsometry{g, "g"}, grid);
    CHECK(md.value == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-6));

    // parabolic: decreasing toward zero along the ray
    MobiusD par = mobius_normalized(1, 1, 0, 1);
    std::vector<HPoint> ys;
    for (double y = 1.0; y <= 1e4; y *= 10.0) ys.push_back(hpoint(0, y));
    auto mp = min_displacement(kHp, HIsometry{par, "p"}, ys);
    CHECK(mp.value == doctest::Approx(std::acosh(1.0 + 1.0 / (2.0 * 1e8))).epsilon(1e-4));
    CHECK(mp.argmin.y == doctest::Approx(1e4));

    auto mi = min_displacement(kHp, HIsometry{MobiusD{}, "e"}, grid);
    CHECK(mi.value == 0.0);

    CHECK_THROWS_AS(min_displacement(kHp, HIsometry{g, "g"}, std::span<const HPoint>{}),
                    domain_error);
}

TEST_CASE("displacement radius and membership") {
    MobiusD g = mobius_normalized(2, 0, 0, 0.5);
    double ell = 2.0 * std::log(2.0);
    auto q1 = displacement_radius(kHp, HIsometry{g, "g"}, hpoint(0, 1), ell, 2.0);
    CHECK(q1.radius == doctest::Approx(ell).epsilon(1e-12));
    CHECK(q1.k_attaining == 1);
    CHECK(q1.member);

    auto q2 = displacement_radius(kHp, HIsometry{g, "g"}, hpoint(1, 1), ell, 2.0);
    CHECK(q2.radius == doctest::Approx(std::acosh(3.25)).epsilon(1e-12));
    CHECK(q2.k_attaining == 1);

    // R below the translation length: empty domain, never a member
    auto q3 = displacement_radius(kHp, HIsometry{g, "g"}, hpoint(0, 1), ell, 1.0);
    CHECK(!q3.member);
    CHECK(q3.k_max == 1);

    CHECK_THROWS_AS(displacement_radius(kHp, HIsometry{g, "g"}, hpoint(0, 1), 0.0, 2.0),
                    unsupported_error);

    // truncation is lossless: k_max covers every power that can stay under R
    auto q4 = displacement_radius(kHp, HIsometry{g, "g"}, hpoint(0, 1), ell, 10.0);
    CHECK(q4.k_max >= static_cast<std::int64_t>(10.0 / ell));
}

TEST_CASE("collar radius and the displacement-offset identity") {
    CHECK(collar_radius(1.0, 2.0) ==
          doctest::Approx(std::acosh(std::sinh(1.0) / std::sinh(0.5))).epsilon(1e-14));
    // round trip: a point at collar distance has displacement exactly R
    for (double ell : {0.5, 1.0, 2.0}) {
        for (double R : {1.5 * ell, 2.0 * ell, 5.0 * ell}) {
            double rho = collar_radius(ell, R);
            CHECK(displacement_at_offset(ell, rho) == doctest::Approx(R).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(collar_radius(1.0, 0.5), domain_error);
    CHECK_THROWS_AS(collar_radius(0.0, 2.0), domain_error);

    // offset points realize the closed-form displacement
    MobiusD g = make_hyperbolic(ExtReal::finite(-1), ExtReal::finite(1), 1.0);
    HGeodesic ax = axis(g);
    Rng rng(43);
    for (int i = 0; i < 50; ++i) {
        double rho = rng.uniform(0, 2.5);
        HPoint x = ax.offset_point(rng.uniform(-2, 2), rho, rng.below(2) ? 1 : -1);
        CHECK(hdistance(x, apply(g, x)) ==
              doctest::Approx(displacement_at_offset(1.0, rho)).epsilon(1e-9));
    }
}

TEST_CASE("tube check") {
    double lam = std::exp(0.5);
    MobiusD g = mobius_normalized(lam, 0, 0, 1.0 / lam);  // ell = 1
    auto tc = check_tube(g, 2.0, kLn3, 500, 99);
    CHECK(tc.bound.holds);
    CHECK(tc.band_disagreements == 0);
    CHECK(tc.members > 0);
    CHECK(tc.collar == doctest::Approx(std::acosh(std::sinh(1.0) / std::sinh(0.5))));
    CHECK(tc.bound.rhs == doctest::Approx(0.5 * (7.0 * kLn3 + 1.0) * 2.0 + 3.5 * kLn3));

    // axis points are members for any R >= ell
    auto q = displacement_radius(kHp, HIsometry{g, "g"}, axis(g).at(0.3), 1.0, 1.0);
    CHECK(q.member);

    // R below ell: empty domain, vacuous bound
    auto empty = check_tube(g, 0.5, kLn3, 100, 99);
    CHECK(empty.bound.holds);
    CHECK(!empty.bound.guard_met);
    CHECK(empty.members == 0);

    // a second (gamma, R) combination: membership still tracks the collar
    MobiusD g2 = make_hyperbolic(ExtReal::finite(-2), ExtReal::finite(1), 2.0);
    auto tc2 = check_tube(g2, 5.0, kLn3, 1000, 7);
    CHECK(tc2.bound.holds);
    CHECK(tc2.band_disagreements == 0);
    CHECK(tc2.members > 0);
}

TEST_CASE("distance-to-axis check") {
    // guard met: ell = 8 ln 3 > 3 ln 3
    MobiusD g = mobius_normalized(81, 0, 0, 1.0 / 81.0);
    CHECK(translation_length(g) == doctest::Approx(8.0 * kLn3).epsilon(1e-12));
    auto on = check_distance_to_axis(g, hpoint(0, 2), kLn3);
    CHECK(on.holds);
    CHECK(on.lhs <= 1e-9);
    auto off = check_distance_to_axis(g, hpoint(1, 1), kLn3);
    CHECK(off.guard_met);
    CHECK(off.holds);

    // guard not met for short translation lengths
    MobiusD s = mobius_normalized(std::exp(0.5), 0, 0, std::exp(-0.5));
    auto vac = check_distance_to_axis(s, hpoint(1, 1), kLn3);
    CHECK(!vac.guard_met);
    CHECK(vac.holds);
}

TEST_CASE("domain separation check") {
    double e1 = std::exp(1.0);
    MobiusD g = mobius_normalized(e1, 0, 0, 1.0 / e1);  // ell = 2
    double r = 2.0, R = 4.0;
    HGeodesic ax = axis(g);
    double rim = collar_radius(2.0, R);
    auto rep = check_domain_separation(g, r, R, ax.offset_point(0.0, rim));
    CHECK(rep.holds);
    // M_r at r = ell is the axis itself: the gap equals the R-collar radius
    CHECK(rep.lhs == doctest::Approx(rim).epsilon(1e-9));
    CHECK(rep.rhs == doctest::Approx(1.0));

    // nearly equal radii: rhs shrinks to zero, trivially holds
    auto close = check_domain_separation(g, R - 0.01, R, ax.offset_point(0.0, rim));
    CHECK(close.holds);

    // a deep outside point holds with slack
    auto deep = check_domain_separation(g, r, R, ax.offset_point(0.0, rim + 3.0));
    CHECK(deep.holds);
    CHECK(deep.lhs > deep.rhs + 1.0);

    CHECK_THROWS_AS(check_domain_separation(g, R, r, ax.offset_point(0, rim)), domain_error);
    CHECK_THROWS_AS(check_domain_separation(g, 1.0, R, ax.offset_point(0, rim)), domain_error);
    // a point inside M_R violates the precondition
    CHECK_THROWS_AS(check_domain_separation(g, r, R, ax.at(0.0)), domain_error);
}

TEST_CASE("margulis constant estimates") {
    MobiusD g = mobius_normalized(2, 0, 0, 0.5);
    std::vector<HPoint> dom{hpoint(0, 1)};
    auto same = margulis_constant(kHp, HIsometry{g, "a"}, HIsometry{g, "b"}, dom, 2);
    CHECK(same.value == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));

    // common axis: the pointwise value is the larger translation length
    MobiusD h = mobius_normalized(std::exp(1.0), 0, 0, std::exp(-1.0));  // ell = 2, same axis
    std::vector<HPoint> axpts;
    for (int i = -5; i <= 5; ++i) axpts.push_back(axis(g).at(0.4 * i));
    auto ca = margulis_constant(kHp, HIsometry{g, "a"}, HIsometry{h, "b"}, axpts, 2);
    CHECK(ca.value == doctest::Approx(2.0).epsilon(1e-9));

    // crossing axes with length 30: estimate lands in the margulis regime
    MobiusD a = make_hyperbolic(ExtReal::finite(0), ExtReal::infinity(), 30.0);
    MobiusD b = make_hyperbolic(ExtReal::finite(-1), ExtReal::finite(1), 30.0);
    std::vector<HPoint> dom2;
    HGeodesic axa = axis(a), axb = axis(b);
    for (int i = -6; i <= 6; ++i) {
        dom2.push_back(axa.offset_point(0.5 * i, 0));
        dom2.push_back(axb.offset_point(0.5 * i, 0));
    }
    auto cr = margulis_constant(kHp, HIsometry{a, "a"}, HIsometry{b, "b"}, dom2, 2);
    CHECK(cr.value >= 23.0 * kLn3);
    CHECK(cr.value == doctest::Approx(30.0).epsilon(1e-6));

    CHECK_THROWS_AS(margulis_constant(kHp, HIsometry{g, "a"}, HIsometry{g, "b"}, dom, 0),
                    domain_error);
}

TEST_CASE("midpoint displacement sandwich") {
    // x on the axis: d(m, gm) = ell and every part holds
    MobiusD g = mobius_normalized(2, 0, 0, 0.5);
    auto on = check_midpoint(g, hpoint(0, 1), kLn3);
    CHECK(on.holds());
    CHECK(on.lower.lhs == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-9));

    // parabolic branch (ell = 0)
    auto par = check_midpoint(mobius_normalized(1, 1, 0, 1), hpoint(0, 1), kLn3);
    CHECK(par.holds());

    // identity: 0 <= 0 <= delta <= 3 delta
    auto id = check_midpoint(MobiusD{}, hpoint(0, 1), kLn3);
    CHECK(id.holds());
    CHECK(id.lower.lhs == 0.0);

    // seeded hyperbolics off the axis
    Rng rng(44);
    for (int i = 0; i < 100; ++i) {
        double u = rng.uniform(-3, 3);
        MobiusD m = make_hyperbolic(ExtReal::finite(u),
                                    ExtReal::finite(u + rng.uniform(0.4, 2.0)),
                                    rng.uniform(0.3, 3.0));
        HPoint x = axis(m).offset_point(rng.uniform(-1, 1), rng.uniform(0, 1.5));
        CHECK(check_midpoint(m, x, kLn3).holds());
    }
}

TEST_CASE("length-displacement sandwich check") {
    Rng rng(45);
    for (int i = 0; i < 100; ++i) {
        double tr = rng.uniform(2.1, 10.0);
        double ell = 2.0 * std::acosh(tr / 2.0);
        double u = rng.uniform(-3, 3);
        MobiusD g = make_hyperbolic(ExtReal::finite(u),
                                    ExtReal::finite(u + rng.uniform(0.4, 2.0)), ell);
        std::vector<HPoint> samples{axis(g).at(0.0), axis(g).offset_point(0.5, 0.8)};
        auto qc = check_quasigeod(kHp, HIsometry{g, "g"}, samples, kLn3, ell, ell);
        CHECK(qc.lower.holds);
        CHECK(qc.upper.holds);
        CHECK(qc.s_est == doctest::Approx(ell).epsilon(1e-9));
    }

    // tree generator with delta = 0: 1 <= 1 <= 1
    CayleySpace f2(GroupDescriptor::parse("free:2"));
    std::vector<Word> pts{Word(), Word::letter(2)};
    auto tq = check_quasigeod(f2, GraphIsometry{&f2, Word::letter(1), "a"}, pts, 0.0, 1.0, 1.0);
    CHECK(tq.s_est == 1.0);
    CHECK(tq.lower.holds);
    CHECK(tq.upper.holds);

    // parabolic: 0 <= s_est needs samples reaching large heights
    MobiusD par = mobius_normalized(1, 1, 0, 1);
    std::vector<HPoint> highs{hpoint(0, 1), hpoint(0, 100), hpoint(0, 10000)};
    auto pq = check_quasigeod(kHp, HIsometry{par, "p"}, highs, kLn3, 0.0, 0.0);
    CHECK(pq.lower.holds);
    CHECK(pq.upper.holds);  // s_est tiny, below delta
}

TEST_CASE("power-growth inequality holds with the bracket upper bound") {
    Rng rng(46);
    for (int i = 0; i < 25; ++i) {
        double u = rng.uniform(-3, 3);
        MobiusD g = make_hyperbolic(ExtReal::finite(u),
                                    ExtReal::finite(u + rng.uniform(0.4, 2.5)),
                                    rng.uniform(0.3, 4.0));
        HPoint x = axis(g).offset_point(rng.uniform(-1, 1), rng.uniform(0, 2));
        Bracket b = stable_length_bracket(kHp, HIsometry{g, "g"}, x, 256, kLn3);
        double d1 = hdistance(x, apply(g, x));
        HPoint p = apply(g, x);
        for (int n = 2; n <= 64; ++n) {
            p = apply(g, p);
            double dn = hdistance(x, p);
            CHECK(dn <= d1 + (n - 1) * b.hi + 4.0 * kLn3 * std::log2(double(n)) + 1e-9);
        }
    }
}
