#include <doctest.h>

#include <cmath>

#include "gromolab/entropy_doubling.hpp"
#include "gromolab/freeness.hpp"
#include "gromolab/graph_space.hpp"

using namespace gromolab;

namespace {
constexpr double kLn3 = 1.0986122886681098;
const HalfPlane kHp;

Word relabel_ab(const Word& w) {
    std::vector<std::int32_t> ls;
    for (std::int32_t g : w.letters()) {
        std::int32_t i = std::abs(g) == 1 ? 2 : 1;
        ls.push_back(g > 0 ? i : -i);
    }
    return Word::from_letters(ls);
}
}  // namespace

TEST_CASE("ping-pong margins and index sets") {
    MobiusD g = mobius_normalized(2, 0, 0, 0.5);
    HPoint x = hpoint(0, 1);

    // a = b fails; the (1,-1) margin involves d(a x, a x) shifted cases
    auto same = schottky_test(kHp, HIsometry{g, "a"}, HIsometry{g, "b"}, x, kLn3, 2);
    CHECK(!same.pass_range);
    for (const auto& m : same.margins)
        if (m.p == 1 && m.q == -1) CHECK(m.margin < 0.0);

    // a = b^-1 fails demi at (1,1)
    auto inv = demi_schottky_test(kHp, HIsometry{g, "a"}, HIsometry{g.inverse(), "b"}, x, kLn3, 2);
    CHECK(!inv.pass_range);
    for (const auto& m : inv.margins)
        if (m.p == 1 && m.q == 1) CHECK(m.margin < 0.0);

    // index-set sizes: schottky (2P)^2, demi (2P)^2 - P^2
    auto s3 = schottky_test(kHp, HIsometry{g, "a"}, HIsometry{g, "b"}, x, kLn3, 3);
    CHECK(s3.margins.size() == 36);
    auto d3 = demi_schottky_test(kHp, HIsometry{g, "a"}, HIsometry{g, "b"}, x, kLn3, 3);
    CHECK(d3.margins.size() == 27);
    auto d1 = demi_schottky_test(kHp, HIsometry{g, "a"}, HIsometry{g, "b"}, x, kLn3, 1);
    CHECK(d1.margins.size() == 3);
    CHECK_THROWS_AS(schottky_test(kHp, HIsometry{g, "a"}, HIsometry{g, "b"}, x, kLn3, 0),
                    domain_error);
}

TEST_CASE("sanov margins: frozen values and the PASS/oracle consistency") {
    MobiusD a = mobius_normalized(1, 2, 0, 1), b = mobius_normalized(1, 0, 2, 1);
    HPoint x = hpoint(0, 1);

    // hand-derived margin at (1,1): arccosh 9 - arccosh 3 - 2 delta
    auto rep = demi_schottky_test(kHp, HIsometry{a, "a"}, HIsometry{b, "b"}, x, kLn3, 3);
    double m11 = 0.0;
    for (const auto& m : rep.margins)
        if (m.p == 1 && m.q == 1) m11 = m.margin;
    CHECK(m11 == doctest::Approx(std::acosh(9.0) - std::acosh(3.0) - 2.0 * kLn3).epsilon(1e-12));
    CHECK(m11 < 0.0);
    CHECK(!rep.pass_range);  // delta = ln 3 is too coarse for the Sanov pair at x = i

    // at delta = 0.1 the finite range passes, and the exact oracle finds no
    // relation between positive words, as the implication demands
    auto fine = demi_schottky_test(kHp, HIsometry{a, "a"}, HIsometry{b, "b"}, x, 0.1, 3);
    CHECK(fine.pass_range);
    auto rel = relation_oracle(mobius_exact(1, 2, 0, 1), mobius_exact(1, 0, 2, 1), 10,
                               OracleMode::Semigroup);
    CHECK(!rel.has_value());
}

TEST_CASE("relation oracle") {
    MobiusQ sa = mobius_exact(1, 2, 0, 1), sb = mobius_exact(1, 0, 2, 1);
    CHECK(!relation_oracle(sa, sb, 10, OracleMode::Group).has_value());

    MobiusQ ma = mobius_exact(1, 1, 0, 1), mb = mobius_exact(1, 0, 1, 1);
    auto rel = relation_oracle(ma, mb, 6, OracleMode::Group);
    REQUIRE(rel.has_value());
    CHECK(rel->w1 == Word::from_letters({1, -2, 1}));
    CHECK(rel->w2 == Word::from_letters({-1, 2, -1}));
    Word relation = rel->w2.inverse() * rel->w1;
    CHECK(relation == Word::from_letters({1, -2, 1, 1, -2, 1}));  // (a b^-1 a)^2

    // the identity word collides with nothing at max_len 0
    CHECK(!relation_oracle(ma, mb, 0, OracleMode::Group).has_value());

    // swapping the generators runs the mirror-image search: the letter
    // patterns coincide (letter 1 now names the other generator), so the
    // relabeled words are the swapped relation
    auto swapped = relation_oracle(mb, ma, 6, OracleMode::Group);
    REQUIRE(swapped.has_value());
    CHECK(swapped->w1 == rel->w1);
    CHECK(swapped->w2 == rel->w2);
    CHECK(relabel_ab(swapped->w1) == Word::from_letters({2, -1, 2}));  // b a^-1 b in old names

    // semigroup mode on the m=1 pair: positive words of (1,1),(0,1) and
    // (1,0),(1,1) are products of positive matrices, always distinct
    CHECK(!relation_oracle(ma, mb, 8, OracleMode::Semigroup).has_value());

    // an order-4 elliptic collides with the identity at length 4
    MobiusQ rot = mobius_exact(0, 1, -1, 0);
    auto tor = relation_oracle(rot, sb, 4, OracleMode::Semigroup);
    REQUIRE(tor.has_value());
    CHECK(tor->w1.empty());
    CHECK(tor->w2 == Word::letter(1).pow(2));  // rot^2 = -I = I up to sign

    CHECK_THROWS_AS(relation_oracle(sa, sb, 15, OracleMode::Group), domain_error);
}

TEST_CASE("displacement criterion certificates") {
    // crossing axes, both lengths 30: certified, selector picks {a, b}
    MobiusD a = make_hyperbolic(ExtReal::finite(0), ExtReal::infinity(), 30.0);
    MobiusD b = make_hyperbolic(ExtReal::finite(-1), ExtReal::finite(1), 30.0);
    auto cert = free_semigroup_by_displacement(a, b, kLn3);
    CHECK(cert.status == CertStatus::CertifiedFreeSemigroup);
    CHECK(cert.pair == "{a, b}");

    // short displacement: hypothesis fails
    MobiusD s1 = make_hyperbolic(ExtReal::finite(0), ExtReal::infinity(), 1.0);
    MobiusD s2 = make_hyperbolic(ExtReal::finite(-1), ExtReal::finite(1), 1.0);
    auto weak = free_semigroup_by_displacement(s1, s2, kLn3);
    CHECK(weak.status == CertStatus::RangeLimited);

    // identical fixed-point pair: elementary error
    MobiusD t1 = mobius_normalized(2, 0, 0, 0.5);
    MobiusD t2 = mobius_normalized(3, 0, 0, 1.0 / 3.0);
    CHECK_THROWS_AS(free_semigroup_by_displacement(t1, t2, kLn3), domain_error);

    // non-hyperbolic inputs rejected
    CHECK_THROWS_AS(free_semigroup_by_displacement(mobius_normalized(1, 1, 0, 1), b, kLn3),
                    domain_error);
}

TEST_CASE("power thresholds") {
    MobiusD a = make_hyperbolic(ExtReal::finite(0), ExtReal::infinity(), 30.0);
    MobiusD b = make_hyperbolic(ExtReal::finite(-1), ExtReal::finite(1), 30.0);

    auto p1 = free_semigroup_powers(a, b, std::acosh(2.0), kLn3);
    CHECK(p1.p_min == 11);  // floor(13 ln3 / arccosh 2) + 1
    CHECK(p1.certificate.status == CertStatus::CertifiedFreeSemigroup);

    auto p2 = free_semigroup_powers(a, b, 14.0 * kLn3, kLn3);
    CHECK(p2.p_min == 1);

    auto p3 = free_semigroup_powers(a, b, 13.0 * kLn3, kLn3);
    CHECK(p3.p_min == 2);  // strict inequality at the boundary

    CHECK_THROWS_AS(free_semigroup_powers(a, b, 0.0, kLn3), domain_error);
    CHECK_THROWS_AS(free_semigroup_powers(a, b, 31.0, kLn3), domain_error);  // eps1 above l

    // (p_min - 1) eps1 <= 13 delta < p_min eps1 on an eps1 grid
    for (double eps1 : {0.3, 0.7, 1.0, 2.5, 7.0, 13.0 * kLn3, 20.0}) {
        auto pc = free_semigroup_powers(a, b, eps1, kLn3);
        CHECK((pc.p_min - 1) * eps1 <= 13.0 * kLn3 + 1e-12);
        CHECK(13.0 * kLn3 < pc.p_min * eps1 + 1e-12);
    }
}

TEST_CASE("certified pairs satisfy the entropy-action conditions at the base") {
    // the half-plane has entropy 1; a certified free-semigroup pair's
    // displacements at the ping-pong base must be feasible under it
    MobiusD a = make_hyperbolic(ExtReal::finite(0), ExtReal::infinity(), 30.0);
    MobiusD b = make_hyperbolic(ExtReal::finite(-1), ExtReal::finite(1), 30.0);
    auto cert = free_semigroup_by_displacement(a, b, kLn3);
    REQUIRE(cert.status == CertStatus::CertifiedFreeSemigroup);
    HPoint base = pingpong_base(a, b);
    double l1 = hdistance(base, apply(a, base));
    double l2 = hdistance(base, apply(b, base));
    auto ea = check_entropy_action(l1, l2, 1.0);
    CHECK(ea.part_max.holds);
    CHECK(ea.part_min.holds);
}

TEST_CASE("margulis dispatch cases") {
    MobiusD long_a = make_hyperbolic(ExtReal::finite(0), ExtReal::infinity(), 30.0);
    MobiusD long_b = make_hyperbolic(ExtReal::finite(-1), ExtReal::finite(1), 30.0);
    MobiusD short_a = make_hyperbolic(ExtReal::finite(0), ExtReal::infinity(), 1.0);
    MobiusD short_b = make_hyperbolic(ExtReal::finite(-1), ExtReal::finite(1), 1.0);
    double L_big = 26.0 * kLn3;

    // inapplicable below 23 delta
    auto na = margulis_free_dispatch(long_a, long_b, kLn3, 20.0);
    CHECK(na.status == CertStatus::RangeLimited);

    // case both short: free-group candidate, range-limited by construction
    auto c1 = margulis_free_dispatch(short_a, short_b, kLn3, L_big);
    CHECK(c1.status == CertStatus::RangeLimited);
    CHECK(c1.pair == "{a, b}");

    // case both long: certified semigroup
    auto c2 = margulis_free_dispatch(long_a, long_b, kLn3, L_big);
    CHECK(c2.status == CertStatus::CertifiedFreeSemigroup);

    // mixed cases conjugate the long side
    auto c3 = margulis_free_dispatch(short_a, long_b, kLn3, L_big);
    CHECK(c3.status == CertStatus::CertifiedFreeSemigroup);
    CHECK(c3.pair.find("a b") != std::string::npos);  // {b, a b a^-1} family
    auto c4 = margulis_free_dispatch(long_a, short_b, kLn3, L_big);
    CHECK(c4.status == CertStatus::CertifiedFreeSemigroup);
    CHECK(c4.pair.find("b a") != std::string::npos);  // {a, b a b^-1} family
}

TEST_CASE("ping-pong base point") {
    // crossing axes: base converges to the crossing point
    MobiusD a = make_hyperbolic(ExtReal::finite(0), ExtReal::infinity(), 2.0);
    MobiusD b = make_hyperbolic(ExtReal::finite(-1), ExtReal::finite(1), 2.0);
    HPoint base = pingpong_base(a, b);
    CHECK(hdistance(base, hpoint(0, 1)) <= 1e-6);  // axes cross at i

    // disjoint axes: the base is equidistant from both
    MobiusD c = make_hyperbolic(ExtReal::finite(2), ExtReal::finite(4), 2.0);
    HPoint mid = pingpong_base(a, c);
    double da = axis(a).distance_to(mid);
    double dc = axis(c).distance_to(mid);
    CHECK(da == doctest::Approx(dc).epsilon(1e-9));
    CHECK(da > 0.0);
}

TEST_CASE("attraction membership") {
    MobiusD g = mobius_normalized(2, 0, 0, 0.5);
    HIsometry iso{g, "g"};
    HPoint x = hpoint(1, 1);

    auto hit = attraction_membership(kHp, iso, x, apply(g, x), 4);
    CHECK(hit.member);
    CHECK(hit.k == 1);
    CHECK(hit.best_distance <= 1e-12);

    auto self = attraction_membership(kHp, iso, x, x, 4);
    CHECK(!self.member);  // k = 0 wins strictly off the axis midpoint set

    HPoint back = apply(mobius_normalized(0.125, 0, 0, 8), x);  // g^-3 x
    auto neg = attraction_membership(kHp, iso, x, back, 4);
    CHECK(!neg.member);
    HIsometry inv{g.inverse(), "g^-1"};
    auto pos = attraction_membership(kHp, inv, x, back, 4);
    CHECK(pos.member);
    CHECK(pos.k == 3);

    CHECK_THROWS_AS(attraction_membership(kHp, iso, x, x, 0), domain_error);
}

TEST_CASE("graph ping-pong: tree translations pass at the identity") {
    CayleySpace f2(GroupDescriptor::parse("free:2"));
    GraphIsometry a{&f2, Word::letter(1), "a"};
    GraphIsometry b{&f2, Word::letter(2), "b"};
    // d(a^p e, b^q e) = |p| + |q| > max(|p|, |q|) = max displacement, delta 0
    auto rep = schottky_test(f2, a, b, Word(), 0.0, 3);
    CHECK(rep.pass_range);
}
