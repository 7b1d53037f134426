#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gromolab/displacement.hpp"
#include "gromolab/graph_space.hpp"
#include "gromolab/report.hpp"

namespace gromolab {

/// Ball-mass profile with the two growth estimators, reported side by side
/// and never conflated: the true entropy is a liminf that finite data cannot
/// certify.
struct GrowthProfile {
    std::vector<std::pair<double, std::int64_t>> counts;
    double slope_estimate = 0.0;       // least squares of ln count vs R, top half of the grid
    double last_point_estimate = 0.0;  // ln(count_max) / R_max
};

using CountFn = std::function<std::int64_t(double)>;

GrowthProfile growth_profile(const CountFn& count_at, const std::vector<double>& r_grid);

/// count(2R) / count(R).
double doubling_ratio(const CountFn& count_at, double R);

/// Orbit doubling for cocompact actions: ratio <= 3^4 e^{(13/2) H R} at
/// scales R >= 10 (D + 2 delta); vacuous below the scale guard.
BoundReport check_cocompact_doubling(const CountFn& count_at, double R, double H, double D,
                                     double delta);

// open/closed ball masses at real radii on an integer-metric graph
std::int64_t count_closed(const CayleySpace& space, const Word& x, double radius);
std::int64_t count_open(const CayleySpace& space, const Word& x, double radius);

/// Greedy maximal packing: centers on the enumerated vertex set inside
/// B-bar(x, (k-1) r0/2), scanned in BFS discovery order, accepted at mutual
/// distance >= r0 (balls of radius r0/2 stay disjoint and inside
/// B(x, k r0/2)). Greedy yields a non-extendable packing.
std::int64_t packing_number(const CayleySpace& space, const Word& x, double r0, int k);

struct SandwichCheck {
    std::int64_t packing = 0;
    BoundReport lower;  // mass(closed (k-1)r/2) / mass(open r) <= N
    BoundReport upper;  // N <= mass(open k r/2) / mass(open r/2)
    bool holds() const { return lower.holds && upper.holds; }
};

SandwichCheck check_packing_doubling_sandwich(const CayleySpace& space, const Word& x, double r,
                                              int k);

struct SubgroupDoublingCheck {
    double full_orbit_C = 0.0;  // worst full-orbit open-ball doubling ratio on [r0/2, 5 r1/4]
    BoundReport full_hypothesis;
    BoundReport sub_conclusion;  // worst sub-orbit closed/open ratio on [r0, r1] vs C^3
};

/// If the full orbit C-doubles on [r0/2, 5 r1/4], the sub-orbit C^3-doubles
/// on [r0, r1]; both sides measured with exact counting masses.
SubgroupDoublingCheck check_subgroup_doubling(const CayleySpace& space, const Word& x,
                                              const std::vector<Word>& sub_generators, double r0,
                                              double r1, double C);

/// Sub-orbit displacements d(x, h x) for h in the subgroup generated by the
/// given elements, complete up to the cutoff (safe prune: one step changes
/// the displacement by at most max gen displacement).
std::vector<double> sub_orbit_displacements(const CayleySpace& space, const Word& x,
                                            const std::vector<Word>& sub_generators,
                                            double cutoff, std::size_t budget = 10'000'000);

template <class Space, class Iso>
struct GroupAction {
    const Space* space = nullptr;
    std::vector<Iso> generators;
    std::vector<std::string> labels;
};

using HAction = GroupAction<HalfPlane, HIsometry>;
using TreeAction = GroupAction<CayleySpace, GraphIsometry>;

template <class Point>
struct OrbitEntry {
    Word word;
    Point point;
    double displacement = 0.0;
};

template <class Point>
struct OrbitEnumeration {
    std::vector<OrbitEntry<Point>> entries;  // length-lex order, identity first
    bool truncated = false;
    double max_generator_displacement = 0.0;

    std::int64_t count_within(double R) const {
        std::int64_t n = 0;
        for (const auto& e : entries)
            if (e.displacement <= R) ++n;
        return n;
    }
};

/// Enumerates reduced words of length <= W over the action's generators and
/// records every one with displacement <= R. The truncation flag reports a
/// visible undercount: it is set when the first uncounted level (length W+1)
/// still contains a word with displacement <= R. Deeper re-entries past a
/// level that cleared R cannot be excluded in general (one letter moves a
/// displacement by at most the largest generator displacement), so a clear
/// flag is proof of completeness only when displacement grows with word
/// length, as on trees. Words index the free cover of the action; for free
/// actions (trees, exact ping-pong pairs) the enumeration is exact.
template <class Space, class Iso>
OrbitEnumeration<typename Space::point_type> orbit_enumerate(const GroupAction<Space, Iso>& action,
                                                             const typename Space::point_type& x,
                                                             double R, int W,
                                                             std::size_t budget = 10'000'000) {
    using Point = typename Space::point_type;
    if (W < 1) throw domain_error("word-length cap W must be at least 1");
    if (action.generators.empty()) throw domain_error("action needs at least one generator");
    const Space& s = *action.space;
    int k = static_cast<int>(action.generators.size());

    std::vector<Iso> letter_iso;  // rank order: g1, g1^-1, g2, g2^-1, ...
    std::vector<std::int32_t> letter_code;
    for (int i = 0; i < k; ++i) {
        Iso inv = action.generators[static_cast<std::size_t>(i)];
        if constexpr (std::is_same_v<Iso, HIsometry>)
            inv.m = inv.m.inverse();
        else
            inv.g = s.inv(inv.g);
        letter_iso.push_back(action.generators[static_cast<std::size_t>(i)]);
        letter_code.push_back(i + 1);
        letter_iso.push_back(inv);
        letter_code.push_back(-(i + 1));
    }

    OrbitEnumeration<Point> out;
    double maxgen = 0.0;
    for (int j = 0; j < 2 * k; ++j)
        maxgen = std::max(maxgen, static_cast<double>(s.distance(x, letter_iso[static_cast<std::size_t>(j)].apply(x))));
    out.max_generator_displacement = maxgen;

    std::vector<OrbitEntry<Point>> level{{Word(), x, 0.0}};
    out.entries.push_back(level[0]);
    for (int len = 1; len <= W + 1; ++len) {
        bool probe = len == W + 1;  // first uncounted level, scanned for the flag only
        std::vector<OrbitEntry<Point>> next;
        // prepend letters sigma-major so each level stays in lex order;
        // (sigma w) x = sigma (w x) keeps points incremental
        for (int j = 0; j < 2 * k; ++j) {
            for (const auto& e : level) {
                if (!e.word.empty() && e.word.letters().front() == -letter_code[static_cast<std::size_t>(j)])
                    continue;  // not reduced
                OrbitEntry<Point> n;
                n.word = Word::letter(letter_code[static_cast<std::size_t>(j)]) * e.word;
                n.point = letter_iso[static_cast<std::size_t>(j)].apply(e.point);
                n.displacement = static_cast<double>(s.distance(x, n.point));
                if (probe) {
                    if (n.displacement <= R) {
                        out.truncated = true;
                        return out;
                    }
                    continue;
                }
                next.push_back(std::move(n));
                if (out.entries.size() + next.size() > budget)
                    throw resource_error("orbit enumeration exceeded its budget");
            }
        }
        if (probe) break;
        for (const auto& e : next)
            if (e.displacement <= R) out.entries.push_back(e);
        level = std::move(next);
    }
    return out;
}

template <class Point>
struct SystoleEstimate {
    double value = 0.0;
    Word witness;
};

/// Minimum displacement over nontrivial words of length <= W: an upper bound
/// on the pointwise systole; exact on tree actions.
template <class Space, class Iso>
SystoleEstimate<typename Space::point_type> systole_estimate(const GroupAction<Space, Iso>& action,
                                                             const typename Space::point_type& x,
                                                             int W) {
    auto en = orbit_enumerate(action, x, std::numeric_limits<double>::infinity(), W);
    SystoleEstimate<typename Space::point_type> best;
    bool have = false;
    for (const auto& e : en.entries) {
        if (e.word.empty()) continue;
        if (!have || e.displacement < best.value) {
            have = true;
            best.value = e.displacement;
            best.witness = e.word;
        }
    }
    if (!have) throw domain_error("no nontrivial words enumerated");
    return best;
}

/// Entropy floor of a free two-generator semigroup with generator lengths
/// l1, l2: sup over a > 0 of max(1/(l1 + a l2), 1/(l2 + a l1)) *
/// ((1+a) ln(1+a) - a ln a), to 1e-8.
double free_semigroup_entropy_lower(double l1, double l2);

struct EntropyActionCheck {
    BoundReport part_max;  // H * max(l1,l2) >= ln 2
    BoundReport part_min;  // min(l1,l2) > e^{-H max(l1,l2)} / H (strict)
    bool holds() const { return part_max.holds && part_min.holds; }
};

/// Necessary conditions on the displacements of a free semigroup pair under
/// an entropy bound H; a failing part signals that no free semigroup can
/// realize these displacements below that entropy.
EntropyActionCheck check_entropy_action(double l1, double l2, double H);

}  // namespace gromolab
