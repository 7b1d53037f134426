#include "gromolab/entropy_doubling.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_set>

namespace gromolab {

GrowthProfile growth_profile(const CountFn& count_at, const std::vector<double>& r_grid) {
    if (r_grid.size() < 2)
        throw domain_error("growth profile needs at least two grid radii (slope undefined)");
    for (std::size_t i = 1; i < r_grid.size(); ++i)
        if (!(r_grid[i] > r_grid[i - 1])) throw domain_error("R grid must be increasing");
    GrowthProfile p;
    p.counts.reserve(r_grid.size());
    std::int64_t prev = -1;
    for (double r : r_grid) {
        std::int64_t c = count_at(r);
        if (c < 1) throw domain_error("ball count must be positive");
        if (c < prev) throw domain_error("ball counts must be nondecreasing in R");
        prev = c;
        p.counts.emplace_back(r, c);
    }
    std::size_t n = p.counts.size();
    std::size_t from = n / 2;
    if (n - from < 2) from = n - 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double m = static_cast<double>(n - from);
    for (std::size_t i = from; i < n; ++i) {
        double x = p.counts[i].first;
        double y = std::log(static_cast<double>(p.counts[i].second));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = m * sxx - sx * sx;
    if (denom == 0.0) throw domain_error("degenerate R grid for the slope estimate");
    p.slope_estimate = (m * sxy - sx * sy) / denom;
    p.last_point_estimate =
        std::log(static_cast<double>(p.counts.back().second)) / p.counts.back().first;
    return p;
}

double doubling_ratio(const CountFn& count_at, double R) {
    std::int64_t denom = count_at(R);
    if (denom < 1) throw domain_error("ball count must be positive");
    return static_cast<double>(count_at(2.0 * R)) / static_cast<double>(denom);
}

BoundReport check_cocompact_doubling(const CountFn& count_at, double R, double H, double D,
                                     double delta) {
    double ratio = doubling_ratio(count_at, R);
    double rhs = 81.0 * std::exp(6.5 * H * R);
    auto rep = BoundReport::le("orbit-doubling-cocompact", ratio, rhs, "orbit-doubling-cocompact",
                               1e-9);
    rep.with_input("R", R).with_input("H", H).with_input("D", D).with_input("delta", delta);
    if (!(R >= 10.0 * (D + 2.0 * delta))) rep.vacuous();
    return rep;
}

std::int64_t count_closed(const CayleySpace& space, const Word& x, double radius) {
    if (radius < 0.0) return 0;
    return space.ball_count(x, static_cast<std::int64_t>(std::floor(radius + 1e-12)));
}

std::int64_t count_open(const CayleySpace& space, const Word& x, double radius) {
    // largest integer strictly below radius
    double up = std::ceil(radius - 1e-12) - 1.0;
    if (up < 0.0) return 0;
    return space.ball_count(x, static_cast<std::int64_t>(up));
}

std::int64_t packing_number(const CayleySpace& space, const Word& x, double r0, int k) {
    if (k < 5) throw domain_error("packing needs k >= 5");
    if (!(r0 > 0.0)) throw domain_error("packing needs r0 > 0");
    auto cand_radius = static_cast<std::int64_t>(std::floor((k - 1) * r0 / 2.0 + 1e-12));
    std::vector<Word> candidates = space.ball(x, cand_radius);
    std::vector<Word> chosen;
    for (const Word& c : candidates) {
        bool ok = true;
        for (const Word& ch : chosen) {
            if (static_cast<double>(space.distance(c, ch)) < r0 - 1e-12) {
                ok = false;
                break;
            }
        }
        if (ok) chosen.push_back(c);
    }
    return static_cast<std::int64_t>(chosen.size());
}

SandwichCheck check_packing_doubling_sandwich(const CayleySpace& space, const Word& x, double r,
                                              int k) {
    SandwichCheck out;
    out.packing = packing_number(space, x, r, k);
    double left = static_cast<double>(count_closed(space, x, (k - 1) * r / 2.0)) /
                  static_cast<double>(count_open(space, x, r));
    double right = static_cast<double>(count_open(space, x, k * r / 2.0)) /
                   static_cast<double>(count_open(space, x, r / 2.0));
    out.lower = BoundReport::le("packing-sandwich-lower", left,
                                static_cast<double>(out.packing), "packing-sandwich", 1e-9);
    out.upper = BoundReport::le("packing-sandwich-upper", static_cast<double>(out.packing), right,
                                "packing-sandwich", 1e-9);
    out.lower.with_input("r", r).with_input("k", k);
    out.upper.with_input("r", r).with_input("k", k);
    return out;
}

std::vector<double> sub_orbit_displacements(const CayleySpace& space, const Word& x,
                                            const std::vector<Word>& sub_generators, double cutoff,
                                            std::size_t budget) {
    if (sub_generators.empty()) throw domain_error("subgroup needs at least one generator");
    std::vector<Word> letters;
    double maxgen = 0.0;
    for (const Word& g : sub_generators) {
        letters.push_back(space.canonical(g));
        letters.push_back(space.inv(g));
    }
    for (const Word& g : letters)
        maxgen = std::max(maxgen, static_cast<double>(space.distance(x, space.mul(g, x))));
    double limit = cutoff + maxgen;  // one step changes displacement by <= maxgen

    std::unordered_set<std::string> seen;
    std::deque<Word> queue;
    std::vector<double> disp;
    Word id = space.identity();
    seen.insert(id.key());
    queue.push_back(id);
    disp.push_back(0.0);
    while (!queue.empty()) {
        Word h = queue.front();
        queue.pop_front();
        for (const Word& g : letters) {
            Word n = space.mul(h, g);
            if (!seen.insert(n.key()).second) continue;
            if (seen.size() > budget) throw resource_error("sub-orbit enumeration exceeded budget");
            double d = static_cast<double>(space.distance(x, space.mul(n, x)));
            if (d > limit) continue;  // safe prune: no return below cutoff through here
            disp.push_back(d);
            queue.push_back(n);
        }
    }
    std::sort(disp.begin(), disp.end());
    return disp;
}

SubgroupDoublingCheck check_subgroup_doubling(const CayleySpace& space, const Word& x,
                                              const std::vector<Word>& sub_generators, double r0,
                                              double r1, double C) {
    if (!(r0 > 0.0) || !(r1 >= r0)) throw domain_error("need 0 < r0 <= r1");
    SubgroupDoublingCheck out;

    auto grid = [](double lo, double hi) {
        std::vector<double> g;
        for (double r = lo; r <= hi + 1e-9; r += 0.25) g.push_back(r);
        return g;
    };

    CountFn full = [&](double r) { return count_open(space, x, r); };
    double worst_full = 0.0;
    for (double r : grid(r0 / 2.0, 5.0 * r1 / 4.0)) {
        std::int64_t denom = full(r);
        if (denom < 1) continue;
        worst_full = std::max(worst_full, static_cast<double>(full(2.0 * r)) / denom);
    }
    out.full_orbit_C = worst_full;
    out.full_hypothesis =
        BoundReport::le("subgroup-doubling-hypothesis", worst_full, C, "subgroup-doubling", 1e-9);
    out.full_hypothesis.with_input("r0", r0).with_input("r1", r1);

    auto disp = sub_orbit_displacements(space, x, sub_generators, 5.0 * r1 / 2.0 + 1.0);
    auto sub_closed = [&](double r) {
        return static_cast<std::int64_t>(
            std::upper_bound(disp.begin(), disp.end(), r + 1e-12) - disp.begin());
    };
    auto sub_open = [&](double r) {
        return static_cast<std::int64_t>(
            std::lower_bound(disp.begin(), disp.end(), r - 1e-12) - disp.begin());
    };
    double worst_sub = 0.0;
    for (double r : grid(r0, r1)) {
        std::int64_t denom = sub_open(r);
        if (denom < 1) continue;
        worst_sub = std::max(worst_sub, static_cast<double>(sub_closed(2.0 * r)) / denom);
    }
    out.sub_conclusion = BoundReport::le("subgroup-doubling-conclusion", worst_sub, C * C * C,
                                         "subgroup-doubling", 1e-9);
    out.sub_conclusion.with_input("r0", r0).with_input("r1", r1).with_input("C", C);
    if (!out.full_hypothesis.holds) out.sub_conclusion.vacuous();
    return out;
}

namespace {

double entropy_branch(double a, double lnum, double lden) {
    // ((1+a) ln(1+a) - a ln a) / (lnum + a * lden)
    double g = (1.0 + a) * std::log1p(a) - a * std::log(a);
    return g / (lnum + a * lden);
}

double maximize_branch(double lnum, double lden) {
    // coarse log grid, then golden refinement in log a
    double best = 0.0, best_u = 0.0;
    for (double u = -14.0; u <= 14.0 + 1e-9; u += 0.05) {
        double v = entropy_branch(std::exp(u), lnum, lden);
        if (v > best) {
            best = v;
            best_u = u;
        }
    }
    double a = best_u - 0.05, b = best_u + 0.05;
    constexpr double kInvPhi = 0.6180339887498949;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = entropy_branch(std::exp(c), lnum, lden);
    double fd = entropy_branch(std::exp(d), lnum, lden);
    while (b - a > 1e-12) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = entropy_branch(std::exp(c), lnum, lden);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = entropy_branch(std::exp(d), lnum, lden);
        }
    }
    return std::max(best, std::max(fc, fd));
}

}  // namespace

double free_semigroup_entropy_lower(double l1, double l2) {
    if (!(l1 > 0.0) || !(l2 > 0.0)) throw domain_error("generator lengths must be positive");
    return std::max(maximize_branch(l1, l2), maximize_branch(l2, l1));
}

EntropyActionCheck check_entropy_action(double l1, double l2, double H) {
    if (!(H > 0.0)) throw domain_error("entropy bound must be positive");
    double mx = std::max(l1, l2), mn = std::min(l1, l2);
    EntropyActionCheck out;
    out.part_max = BoundReport::ge("entropy-action-max", H * mx, std::numbers::ln2,
                                   "entropy-action", 1e-12);
    out.part_min = BoundReport::ge("entropy-action-min", mn, std::exp(-H * mx) / H,
                                   "entropy-action", 0.0, /*strict=*/true);
    out.part_max.with_input("H", H).with_input("l1", l1).with_input("l2", l2);
    out.part_min.with_input("H", H).with_input("l1", l1).with_input("l2", l2);
    return out;
}

}  // namespace gromolab
