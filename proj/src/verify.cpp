#include "gromolab/verify.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "gromolab/bounds.hpp"
#include "gromolab/displacement.hpp"
#include "gromolab/entropy_doubling.hpp"
#include "gromolab/freeness.hpp"
#include "gromolab/metric_core.hpp"

namespace gromolab {
namespace {

using nlohmann::ordered_json;
constexpr double kLn3 = 1.0986122886681098;

// Seeded hyperbolic map with |trace| in [2.1, 10] plus a base point at
// controlled distance from its axis.
struct SeededCase {
    MobiusD g;
    HPoint x;
    double ell;
};

SeededCase seeded_case(Rng& rng) {
    double tr = rng.uniform(2.1, 10.0);
    double ell = 2.0 * std::acosh(tr / 2.0);
    double u = rng.uniform(-3.0, 3.0);
    double sep = rng.uniform(0.5, 3.0) * (rng.below(2) ? 1.0 : -1.0);
    MobiusD g = make_hyperbolic(ExtReal::finite(u), ExtReal::finite(u + sep), ell);
    HGeodesic ax = axis(g);
    HPoint x = ax.offset_point(rng.uniform(-1.0, 1.0), rng.uniform(0.0, 2.0),
                               rng.below(2) ? 1 : -1);
    return {g, x, ell};
}

CriterionResult crit1_tree_delta(std::uint64_t seed) {
    CriterionResult r{1, "tree-four-point-delta", false, 0.0, {}};
    CayleySpace tree(GroupDescriptor::parse("free:2"));
    auto vertices = tree.ball(tree.identity(), 8);
    auto factory = [&](std::uint64_t s) {
        return [&vertices, rng = Rng(s)]() mutable { return vertices[rng.below(vertices.size())]; };
    };
    auto est = four_point_delta(tree, factory, 1000, seed);
    r.pass = est.value == 0.0;
    r.details["quadruples"] = est.quadruple_count;
    r.details["value"] = est.value;
    return r;
}

CriterionResult crit2_hplane_delta(std::uint64_t seed) {
    CriterionResult r{2, "half-plane-four-point-delta", false, 0.0, {}};
    HalfPlane hp;
    auto factory = [](std::uint64_t s) { return HPointBoxSampler(-5.0, 5.0, 0.1, 10.0, s); };
    auto est = four_point_delta(hp, factory, 10000, seed);
    r.pass = est.value <= kLn3 + 1e-9;
    r.details["quadruples"] = est.quadruple_count;
    r.details["value"] = round_sig12(est.value);
    r.details["bound"] = round_sig12(kLn3);
    return r;
}

CriterionResult crit3_translation_length(std::uint64_t seed) {
    CriterionResult r{3, "translation-length-bracket", false, 0.0, {}};
    HalfPlane hp;
    Rng rng(mix_seed(seed, 3));
    bool ok = true;
    double worst_width = 0.0, worst_min_err = 0.0;
    for (int i = 0; i < 50; ++i) {
        SeededCase c = seeded_case(rng);
        double ell = translation_length(c.g);
        Bracket b = stable_length_bracket(hp, HIsometry{c.g, "g"}, c.x, 1024, kLn3);
        ok = ok && b.contains(ell, 1e-9) && b.width() <= 0.06;
        worst_width = std::max(worst_width, b.width());
        HGeodesic ax = axis(c.g);
        std::vector<HPoint> grid;
        for (int j = 0; j <= 40; ++j) grid.push_back(ax.at(-2.0 + 0.1 * j));
        for (int j = 0; j < 8; ++j)
            grid.push_back(ax.offset_point(rng.uniform(-2.0, 2.0), rng.uniform(0.0, 1.0)));
        double md = min_displacement(hp, HIsometry{c.g, "g"}, grid).value;
        worst_min_err = std::max(worst_min_err, std::abs(md - ell));
        ok = ok && std::abs(md - ell) <= 1e-6;
    }
    r.pass = ok;
    r.details["cases"] = 50;
    r.details["worst_bracket_width"] = round_sig12(worst_width);
    r.details["worst_min_displacement_error"] = round_sig12(worst_min_err);
    return r;
}

CriterionResult crit4_power_growth(std::uint64_t seed) {
    CriterionResult r{4, "power-growth-and-displacement-sandwich", false, 0.0, {}};
    HalfPlane hp;
    Rng rng(mix_seed(seed, 4));
    std::int64_t violations = 0;
    for (int i = 0; i < 50; ++i) {
        SeededCase c = seeded_case(rng);
        Bracket b = stable_length_bracket(hp, HIsometry{c.g, "g"}, c.x, 1024, kLn3);
        double d1 = hdistance(c.x, apply(c.g, c.x));
        MobiusD p = c.g;
        HPoint px = apply(c.g, c.x);
        for (int n = 2; n <= 64; ++n) {
            p = p * c.g;
            px = apply(c.g, px);
            double dn = hdistance(c.x, px);
            double rhs = d1 + (n - 1) * b.hi + 4.0 * kLn3 * std::log2(static_cast<double>(n));
            if (!(dn <= rhs + 1e-9)) ++violations;
        }
        HGeodesic ax = axis(c.g);
        std::vector<HPoint> samples{ax.at(0.0), c.x, ax.offset_point(0.5, 0.7)};
        auto qc = check_quasigeod(hp, HIsometry{c.g, "g"}, samples, kLn3, b.lo, b.hi);
        if (!qc.lower.holds || !qc.upper.holds) ++violations;
    }
    r.pass = violations == 0;
    r.details["cases"] = 50;
    r.details["violations"] = violations;
    return r;
}

CriterionResult crit5_growth_entropy(std::uint64_t) {
    CriterionResult r{5, "free-group-growth-entropy", false, 0.0, {}};
    CayleySpace tree(GroupDescriptor::parse("free:2"));
    bool counts_ok = true;
    std::int64_t pw = 1;  // 3^R
    for (std::int64_t R = 0; R <= 12; ++R) {
        counts_ok = counts_ok && tree.ball_count(tree.identity(), R) == 2 * pw - 1;
        pw *= 3;
    }
    std::vector<double> grid;
    for (int R = 0; R <= 12; ++R) grid.push_back(R);
    auto profile = growth_profile(
        [&](double rr) { return tree.ball_count(tree.identity(), static_cast<std::int64_t>(rr)); },
        grid);
    bool slope_ok = std::abs(profile.slope_estimate - kLn3) <= 1e-3;
    auto rep = bounds::check_named_bound("entropy-lower-group",
                                         {{"delta", 0.0}, {"entropy", profile.slope_estimate}});
    r.pass = counts_ok && slope_ok && rep.holds;
    r.details["counts_exact"] = counts_ok;
    r.details["slope"] = round_sig12(profile.slope_estimate);
    r.details["last_point"] = round_sig12(profile.last_point_estimate);
    r.details["entropy_floor_check"] = rep.to_json();
    return r;
}

CriterionResult crit6_doubling(std::uint64_t) {
    CriterionResult r{6, "doubling-packing-subgroup", false, 0.0, {}};
    CayleySpace tree(GroupDescriptor::parse("free:2"));
    CayleySpace line(GroupDescriptor::parse("abelian:1"));
    Word e;
    CountFn tree_counts = [&](double rr) {
        return count_closed(tree, e, rr);
    };
    bool cocompact_ok = true;
    for (int R = 10; R <= 14; ++R) {
        auto rep = check_cocompact_doubling(tree_counts, R, kLn3, 1.0, 0.0);
        cocompact_ok = cocompact_ok && rep.holds && rep.guard_met;
    }
    auto s1 = check_packing_doubling_sandwich(tree, e, 2.0, 5);
    auto s2 = check_packing_doubling_sandwich(line, e, 2.0, 5);
    std::vector<Word> sub{Word::letter(1)};
    double measured = check_subgroup_doubling(tree, e, sub, 2.0, 4.0, 1e18).full_orbit_C;
    auto sg = check_subgroup_doubling(tree, e, sub, 2.0, 4.0, measured);
    r.pass = cocompact_ok && s1.holds() && s2.holds() && sg.full_hypothesis.holds &&
             sg.sub_conclusion.holds;
    r.details["cocompact_R10_to_14"] = cocompact_ok;
    r.details["tree_sandwich"] = {{"packing", s1.packing},
                                  {"lower", s1.lower.to_json()},
                                  {"upper", s1.upper.to_json()}};
    r.details["line_sandwich"] = {{"packing", s2.packing},
                                  {"lower", s2.lower.to_json()},
                                  {"upper", s2.upper.to_json()}};
    r.details["subgroup_C"] = round_sig12(measured);
    r.details["subgroup_conclusion"] = sg.sub_conclusion.to_json();
    return r;
}

CriterionResult crit7_margulis_domains(std::uint64_t seed) {
    CriterionResult r{7, "margulis-domain-geometry", false, 0.0, {}};
    double lam = std::exp(0.5);
    MobiusD g = mobius_normalized(lam, 0.0, 0.0, 1.0 / lam);  // ell = 1
    double delta = kLn3, R = 2.0;
    auto tube = check_tube(g, R, delta, 1000, mix_seed(seed, 7));
    bool tube_ok = tube.bound.holds && tube.band_disagreements == 0 && tube.members > 0;

    HGeodesic ax = axis(g);
    HPoint x_probe = ax.offset_point(0.7, 0.9);
    auto dg = check_distance_to_axis(g, x_probe, delta);  // guard 1 > 3 delta fails: vacuous
    double rho_out = tube.collar + 0.2;
    HPoint x_out = ax.offset_point(0.3, rho_out);
    auto sep = check_domain_separation(g, 1.2, R, x_out);
    r.pass = tube_ok && dg.holds && sep.holds;
    r.details["collar"] = round_sig12(tube.collar);
    r.details["samples"] = tube.samples;
    r.details["members"] = tube.members;
    r.details["band_disagreements"] = tube.band_disagreements;
    r.details["tube_bound"] = tube.bound.to_json();
    r.details["axis_distance_check"] = dg.to_json();
    r.details["separation_check"] = sep.to_json();
    return r;
}

CriterionResult crit8_freeness(std::uint64_t) {
    CriterionResult r{8, "relation-oracle-and-ping-pong", false, 0.0, {}};
    MobiusQ sanov_a = mobius_exact(1, 2, 0, 1);
    MobiusQ sanov_b = mobius_exact(1, 0, 2, 1);
    auto rel2 = relation_oracle(sanov_a, sanov_b, 10, OracleMode::Group);
    bool sanov_free = !rel2.has_value();

    MobiusQ m1_a = mobius_exact(1, 1, 0, 1);
    MobiusQ m1_b = mobius_exact(1, 0, 1, 1);
    auto rel1 = relation_oracle(m1_a, m1_b, 6, OracleMode::Group);
    bool m1_found = rel1.has_value();
    bool m1_word_ok = false;
    if (m1_found) {
        Word relation = rel1->w2.inverse() * rel1->w1;  // acts as the identity
        Word expected = Word::from_letters({1, -2, 1, 1, -2, 1});  // (a b^-1 a)^2
        m1_word_ok = relation == expected || relation == expected.inverse();
    }

    // demi-Schottky margins vs an independent direct evaluation
    HalfPlane hp;
    MobiusD a = mobius_normalized(1, 2, 0, 1);
    MobiusD b = mobius_normalized(1, 0, 2, 1);
    HPoint base = hpoint(0.0, 1.0);
    auto rep = demi_schottky_test(hp, HIsometry{a, "a"}, HIsometry{b, "b"}, base, kLn3, 3);
    double worst_gap = 0.0;
    for (const auto& m : rep.margins) {
        // independent route: fresh integer matrix powers, direct distance formula
        auto ipow = [](MobiusD g, int n) {
            if (n < 0) {
                g = g.inverse();
                n = -n;
            }
            MobiusD acc;
            for (int i = 0; i < n; ++i) acc = acc * g;
            return acc;
        };
        HPoint axp = apply(ipow(a, m.p), base);
        HPoint bxq = apply(ipow(b, m.q), base);
        double direct = hdistance(axp, bxq) -
                        std::max(hdistance(base, axp), hdistance(base, bxq)) - 2.0 * kLn3;
        worst_gap = std::max(worst_gap, std::abs(direct - m.margin));
    }
    bool margins_ok = worst_gap <= 1e-9 && rep.margins.size() == 27;  // 36 - 9 both-negative

    r.pass = sanov_free && m1_found && m1_word_ok && margins_ok;
    r.details["sanov_len10_relation"] = !sanov_free;
    if (m1_found) {
        r.details["m1_relation_w1"] = rel1->w1.str();
        r.details["m1_relation_w2"] = rel1->w2.str();
    }
    r.details["m1_relation_is_squared_word"] = m1_word_ok;
    r.details["margin_pairs"] = rep.margins.size();
    r.details["worst_margin_gap"] = round_sig12(worst_gap);
    r.details["demi_pass_range"] = rep.pass_range;
    return r;
}

CriterionResult crit9_displacement_criterion(std::uint64_t) {
    CriterionResult r{9, "displacement-freeness-criterion", false, 0.0, {}};
    double lam = std::exp(15.0);  // 2 ln lambda = 30
    MobiusD a = mobius_normalized(lam, 0.0, 0.0, 1.0 / lam);
    MobiusD t = mobius_normalized(1.0, 1.0, 0.0, 1.0);
    MobiusD conj = t * a * t.inverse();
    MobiusD b = mobius_normalized(conj.a, conj.b, conj.c, conj.d);
    auto cert = free_semigroup_by_displacement(a, b, kLn3);
    bool cert_ok = cert.status == CertStatus::CertifiedFreeSemigroup;
    auto powers = free_semigroup_powers(a, b, std::acosh(2.0), kLn3);
    bool pmin_ok = powers.p_min == 11;
    r.pass = cert_ok && pmin_ok;
    r.details["status"] = cert.status_name();
    r.details["pair"] = cert.pair;
    r.details["trail"] = cert.trail;
    r.details["p_min"] = powers.p_min;
    return r;
}

CriterionResult crit10_entropy_coupling(std::uint64_t) {
    CriterionResult r{10, "entropy-freeness-coupling", false, 0.0, {}};
    double v1 = free_semigroup_entropy_lower(1.0, 1.0);
    bool ok = std::abs(v1 - std::numbers::ln2) <= 1e-6;
    for (double L : {0.1, 10.0}) {
        double v = free_semigroup_entropy_lower(L, L);
        ok = ok && std::abs(v - std::numbers::ln2 / L) <= 1e-6 / L;
    }
    auto c1 = check_entropy_action(1.0, 1.0, std::numbers::ln2);
    auto c2 = check_entropy_action(1.0, 1.0, 0.5);
    auto c3 = check_entropy_action(3.0, 0.001, 1.0);
    ok = ok && c1.holds() && !c2.part_max.holds && c3.part_max.holds && !c3.part_min.holds;
    r.pass = ok;
    r.details["value_1_1"] = round_sig12(v1);
    r.details["boundary_case_holds"] = c1.holds();
    r.details["low_entropy_flagged"] = !c2.part_max.holds;
    r.details["short_displacement_flagged"] = !c3.part_min.holds;
    return r;
}

CriterionResult crit11_bounds_catalog(std::uint64_t) {
    CriterionResult r{11, "bounds-catalog", false, 0.0, {}};
    double alpha = std::acosh(2.0);
    bool ok = true;

    // collar floor nonincreasing in sys
    double prev = std::numeric_limits<double>::infinity();
    for (double sys : {1e-6, 1e-4, 0.01, 0.5, 1.0, 10.0}) {
        double v = bounds::collar_lower(kLn3, alpha, 1.0, sys);
        ok = ok && v <= prev + 1e-15;
        prev = v;
    }
    // tube radius decreasing in eps, with R at eps0 equal to eps0 ln 2
    auto t0 = bounds::tube_radii(kLn3, alpha, 1.0, bounds::tube_radii(kLn3, alpha, 1.0, 0.01).eps0);
    ok = ok && std::abs(t0.r_eps - t0.eps0 * std::numbers::ln2) <= 1e-12;
    double prev_r = 0.0;
    for (double eps : {t0.eps0, t0.eps0 / 2.0, t0.eps0 / 8.0, t0.eps0 / 64.0}) {
        double v = bounds::tube_radii(kLn3, alpha, 1.0, eps).r_eps;
        ok = ok && v >= prev_r - 1e-15;
        prev_r = v;
    }
    // antitone in the BGT mock
    auto m50 = bounds::margulis_constants(1.0, 0.0, 1.0, bounds::BgtFunction::constant(50));
    auto m100 = bounds::margulis_constants(1.0, 0.0, 1.0, bounds::BgtFunction::constant(100));
    ok = ok && m50.eps0 >= m100.eps0 && m50.s0 >= m100.s0;

    // spot values
    double eps0 = t0.eps0;
    ok = ok && std::abs(eps0 - 0.042211) <= 1e-4;
    long n1 = 1L + static_cast<long>(std::floor(13.0 * kLn3 / alpha));
    ok = ok && n1 == 11;
    double collar01 = bounds::collar_lower(kLn3, alpha, 1.0, 0.01);
    ok = ok && std::abs(collar01 - 0.2007) <= 1e-4;
    double s0_expect = 2.0 * std::pow(3.0, -12.0) * std::exp(-165.0) * 60.0;
    ok = ok && m100.r0 == 60.0 && m100.n0 == 100 && std::abs(m100.eps0 - 0.6) <= 1e-12 &&
         std::abs(m100.s0 - s0_expect) <= 1e-9 * s0_expect;

    r.pass = ok;
    r.details["eps0"] = round_sig12(eps0);
    r.details["N1"] = n1;
    r.details["collar_sys_0.01"] = round_sig12(collar01);
    r.details["mock_eps0_50_vs_100"] = {round_sig12(m50.eps0), round_sig12(m100.eps0)};
    return r;
}

std::vector<CriterionResult> run_core(std::uint64_t seed) {
    using Clock = std::chrono::steady_clock;
    std::vector<CriterionResult (*)(std::uint64_t)> fns{
        crit1_tree_delta,       crit2_hplane_delta,     crit3_translation_length,
        crit4_power_growth,     crit5_growth_entropy,   crit6_doubling,
        crit7_margulis_domains, crit8_freeness,         crit9_displacement_criterion,
        crit10_entropy_coupling, crit11_bounds_catalog};
    std::vector<CriterionResult> out;
    out.reserve(fns.size());
    for (auto* fn : fns) {
        auto t0 = Clock::now();
        CriterionResult r = fn(seed);
        r.elapsed_ms =
            std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0).count() /
            1000.0;
        out.push_back(std::move(r));
    }
    return out;
}

ordered_json core_to_json(const std::vector<CriterionResult>& core) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : core) {
        ordered_json j;
        j["id"] = c.id;
        j["name"] = c.name;
        j["pass"] = c.pass;
        j["details"] = c.details;
        arr.push_back(j);
    }
    return arr;
}

}  // namespace

ordered_json AcceptanceReport::to_json() const {
    ordered_json j;
    j["suite"] = "gromolab-acceptance";
    j["seed"] = seed;
    j["criteria"] = core_to_json(criteria);
    j["all_pass"] = all_pass;
    return j;
}

AcceptanceReport run_acceptance(std::uint64_t seed) {
    using Clock = std::chrono::steady_clock;
    AcceptanceReport rep;
    rep.seed = seed;
    rep.criteria = run_core(seed);

    auto t0 = Clock::now();
    auto second = run_core(seed);
    CriterionResult det{12, "verify-determinism", false, 0.0, {}};
    det.pass = core_to_json(rep.criteria).dump() == core_to_json(second).dump();
    det.elapsed_ms =
        std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0).count() / 1000.0;
    det.details["byte_identical"] = det.pass;
    rep.criteria.push_back(std::move(det));

    rep.all_pass = true;
    for (const auto& c : rep.criteria) rep.all_pass = rep.all_pass && c.pass;
    return rep;
}

}  // namespace gromolab
