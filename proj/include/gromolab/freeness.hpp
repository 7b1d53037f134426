#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gromolab/displacement.hpp"
#include "gromolab/word.hpp"

namespace gromolab {

enum class PingPongMode { Schottky, DemiSchottky };

struct MarginEntry {
    int p = 0, q = 0;
    double margin = 0.0;  // d(a^p x, b^q x) - max(d(x,a^p x), d(x,b^q x)) - 2 delta
};

/// Finite-range separation test for the attraction domains of a pair: the
/// verdict certifies the strict inequality on the examined power range only.
struct PingPongReport {
    PingPongMode mode = PingPongMode::Schottky;
    std::string base;  // printable base point
    int range = 0;
    double delta = 0.0;
    std::vector<MarginEntry> margins;
    bool pass_range = false;
    std::optional<std::pair<int, int>> fail_witness;
};

inline std::string describe_point(const HPoint& p) {
    return std::to_string(p.x) + "," + std::to_string(p.y);
}
inline std::string describe_point(const Word& w) { return w.str(); }

/// Margins over (p,q) in ([-P..P] \ {0})^2 (Schottky) or excluding the
/// both-negative quadrant (demi-Schottky). Positive margins everywhere give
/// PASS-range; this is a finite-range statement, never a full certificate on
/// its own.
template <class Space, class Iso>
PingPongReport ping_pong_test(const Space& s, const Iso& a, const Iso& b,
                              const typename Space::point_type& x, double delta, int P,
                              PingPongMode mode) {
    if (P < 1) throw domain_error("power range P must be at least 1");
    auto powers = [&](const Iso& iso) {
        std::vector<typename Space::point_type> pts(static_cast<std::size_t>(2 * P + 1), x);
        Iso inv = iso;
        if constexpr (std::is_same_v<Iso, HIsometry>)
            inv.m = iso.m.inverse();
        else
            inv.g = iso.space->inv(iso.g);
        for (int k = 1; k <= P; ++k) {
            pts[static_cast<std::size_t>(P + k)] = iso.apply(pts[static_cast<std::size_t>(P + k - 1)]);
            pts[static_cast<std::size_t>(P - k)] = inv.apply(pts[static_cast<std::size_t>(P - k + 1)]);
        }
        return pts;  // pts[P + k] = iso^k x
    };
    auto ap = powers(a);
    auto bq = powers(b);
    PingPongReport rep;
    rep.mode = mode;
    rep.base = describe_point(x);
    rep.range = P;
    rep.delta = delta;
    rep.pass_range = true;
    for (int p = -P; p <= P; ++p) {
        if (p == 0) continue;
        for (int q = -P; q <= P; ++q) {
            if (q == 0) continue;
            if (mode == PingPongMode::DemiSchottky && p < 0 && q < 0) continue;
            const auto& axp = ap[static_cast<std::size_t>(P + p)];
            const auto& bxq = bq[static_cast<std::size_t>(P + q)];
            double lhs = static_cast<double>(s.distance(axp, bxq));
            double mx = std::max(static_cast<double>(s.distance(x, axp)),
                                 static_cast<double>(s.distance(x, bxq)));
            MarginEntry e{p, q, lhs - mx - 2.0 * delta};
            if (e.margin <= 0.0 && rep.pass_range) {
                rep.pass_range = false;
                rep.fail_witness = {p, q};
            }
            rep.margins.push_back(e);
        }
    }
    return rep;
}

template <class Space, class Iso>
PingPongReport schottky_test(const Space& s, const Iso& a, const Iso& b,
                             const typename Space::point_type& x, double delta, int P) {
    return ping_pong_test(s, a, b, x, delta, P, PingPongMode::Schottky);
}

template <class Space, class Iso>
PingPongReport demi_schottky_test(const Space& s, const Iso& a, const Iso& b,
                                  const typename Space::point_type& x, double delta, int P) {
    return ping_pong_test(s, a, b, x, delta, P, PingPongMode::DemiSchottky);
}

enum class CertStatus { CertifiedFreeSemigroup, CertifiedFreeGroup, RangeLimited, RelationFound };

struct FreenessCertificate {
    CertStatus status = CertStatus::RangeLimited;
    std::string pair;  // generating pair the certificate talks about
    std::vector<std::string> trail;
    int range_limit = 0;
    std::optional<std::pair<Word, Word>> relation;

    const char* status_name() const;
};

/// Heuristic ping-pong base point: the midpoint of the common perpendicular
/// of the two axes (alternating closed-form projections), their crossing
/// point when they intersect, or the midpoint between the axis base points
/// when the axes are asymptotic.
HPoint pingpong_base(const MobiusD& a, const MobiusD& b);

/// Large-displacement criterion: both translation lengths above 13 delta
/// (exact on the half-plane, where minimal displacement equals translation
/// length) certify that {a,b} or {a,b^-1} generates a free semigroup. The
/// finite demi-Schottky test selects the pair when it can; the existence
/// statement carries no effective selector, and an inconclusive finite test
/// leaves the pair unresolved in the trail.
FreenessCertificate free_semigroup_by_displacement(const MobiusD& a, const MobiusD& b,
                                                   double delta, int selector_range = 3);

/// Smallest p with p * eps1 strictly above 13 delta, and the displacement
/// certificate for (a^p, b^p).
struct PowersCertificate {
    int p_min = 0;
    FreenessCertificate certificate;
};
PowersCertificate free_semigroup_powers(const MobiusD& a, const MobiusD& b, double eps1,
                                        double delta);

/// Case dispatch on (l(a), l(b)) vs 13 delta under a Margulis-constant
/// estimate above 23 delta; delegates to the displacement criterion on the
/// (possibly conjugated) candidate pair where that route applies.
FreenessCertificate margulis_free_dispatch(const MobiusD& a, const MobiusD& b, double delta,
                                           double L_estimate, int selector_range = 3);

enum class OracleMode { Group, Semigroup };

struct Relation {
    Word w1, w2;  // distinct words acting identically (matrices equal up to sign)
};

/// Exhaustive exact search for a relation between two rational matrices:
/// enumerates reduced words (group mode) or positive words (semigroup mode)
/// in length-lex order with a < a^-1 < b < b^-1 and returns the first
/// collision of sign-normalized matrices, or nothing.
std::optional<Relation> relation_oracle(const MobiusQ& a, const MobiusQ& b, int max_len,
                                        OracleMode mode);

struct AttractionResult {
    bool member = false;
    std::int64_t k = 0;  // attaining power (smallest positive one on membership)
    double best_distance = 0.0;
};

/// Range-limited membership of y in the forward attraction domain of iso at
/// x: does some positive power k minimize d(y, iso^k x) over |k| <= k_range?
template <class Space, class Iso>
AttractionResult attraction_membership(const Space& s, const Iso& iso,
                                       const typename Space::point_type& x,
                                       const typename Space::point_type& y,
                                       std::int64_t k_range) {
    if (k_range < 1) throw domain_error("k_range must be at least 1");
    Iso inv = iso;
    if constexpr (std::is_same_v<Iso, HIsometry>)
        inv.m = iso.m.inverse();
    else
        inv.g = iso.space->inv(iso.g);
    double best = static_cast<double>(s.distance(y, x));  // k = 0
    std::int64_t best_k = 0;
    auto fwd = x, bwd = x;
    std::vector<std::pair<std::int64_t, double>> all{{0, best}};
    for (std::int64_t k = 1; k <= k_range; ++k) {
        fwd = iso.apply(fwd);
        bwd = inv.apply(bwd);
        double df = static_cast<double>(s.distance(y, fwd));
        double db = static_cast<double>(s.distance(y, bwd));
        all.emplace_back(k, df);
        all.emplace_back(-k, db);
        if (df < best) {
            best = df;
            best_k = k;
        }
        if (db < best) {
            best = db;
            best_k = -k;
        }
    }
    AttractionResult r;
    r.best_distance = best;
    r.k = best_k;
    for (const auto& [k, d] : all) {
        if (k >= 1 && d <= best + 1e-12) {
            r.member = true;
            r.k = k;
            break;
        }
    }
    return r;
}

}  // namespace gromolab
