#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gromolab/graph_space.hpp"
#include "gromolab/metric_core.hpp"

namespace gromolab {

/// Half-plane isometry handle: a Mobius map acting on HPoints.
struct HIsometry {
    MobiusD m;
    std::string label;
    HPoint apply(const HPoint& p) const { return gromolab::apply(m, p); }
};

/// Graph isometry handle: a group element acting on its Cayley graph by left
/// translation.
struct GraphIsometry {
    const CayleySpace* space = nullptr;
    Word g;
    std::string label;
    Word apply(const Word& p) const { return space->mul(g, p); }
};

/// Two-sided bracket certified to contain the stable translation length:
/// hi from subadditivity (min of d(x,g^n x)/n), lo from the power-growth
/// inequality d(x,g^n x) <= d(x,gx) + (n-1) l(g) + 4 delta log2 n.
struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    std::int64_t n_used = 0;
    double delta_used = 0.0;
    double width() const { return hi - lo; }
    bool contains(double v, double slack = 0.0) const { return lo - slack <= v && v <= hi + slack; }
};

/// Displacements d(x, g^n x) at n = 1, 2, 4, ..., n_max (powers of two,
/// computed by repeated squaring). Overflow of the long double range raises
/// domain_error suggesting log-scale reruns.
std::vector<std::pair<std::int64_t, double>> power_displacements(const HalfPlane& s,
                                                                 const HIsometry& iso,
                                                                 const HPoint& x,
                                                                 std::int64_t n_max);
std::vector<std::pair<std::int64_t, double>> power_displacements(const CayleySpace& s,
                                                                 const GraphIsometry& iso,
                                                                 const Word& x, std::int64_t n_max);

Bracket bracket_from_displacements(const std::vector<std::pair<std::int64_t, double>>& seq,
                                   double delta);

template <class Space, class Iso>
Bracket stable_length_bracket(const Space& s, const Iso& iso,
                              const typename Space::point_type& x, std::int64_t n_max,
                              double delta) {
    if (n_max < 2) throw domain_error("n_max must be at least 2");
    if (delta < 0.0) throw domain_error("delta must be nonnegative");
    return bracket_from_displacements(power_displacements(s, iso, x, n_max), delta);
}

template <class Space>
struct MinDisplacement {
    double value = 0.0;
    typename Space::point_type argmin{};
};

/// Minimum of d(x, g x) over the supplied domain: an upper bound on the
/// minimal displacement s(g). First sample in scan order wins ties.
template <class Space, class Iso>
MinDisplacement<Space> min_displacement(const Space& s, const Iso& iso,
                                        std::span<const typename Space::point_type> domain) {
    if (domain.empty()) throw domain_error("min_displacement needs a nonempty domain");
    MinDisplacement<Space> best{static_cast<double>(s.distance(domain[0], iso.apply(domain[0]))),
                                domain[0]};
    for (std::size_t i = 1; i < domain.size(); ++i) {
        double d = static_cast<double>(s.distance(domain[i], iso.apply(domain[i])));
        if (d < best.value) best = {d, domain[i]};
    }
    return best;
}

struct MargulisQuery {
    double R = 0.0;
    std::int64_t k_max = 0;
    double radius = 0.0;  // R_gamma(x) truncated at k_max (lossless: M^k_R empty past R/l)
    std::int64_t k_attaining = 0;
    bool member = false;
};

/// Pointwise displacement radius min_{1<=k<=k_max} d(x, g^k x) with
/// k_max = floor(R / ell_lo) + 1; needs a certified positive lower bound on
/// the translation length (torsion or parabolic handles have none).
template <class Space, class Iso>
MargulisQuery displacement_radius(const Space& s, const Iso& iso,
                                  const typename Space::point_type& x, double ell_lo, double R) {
    if (!(ell_lo > 0.0))
        throw unsupported_error(
            "displacement radius needs a positive certified length lower bound "
            "(torsion and parabolic elements have displacement radius 0 or no truncation)");
    if (!(R > 0.0)) throw domain_error("R must be positive");
    MargulisQuery q;
    q.R = R;
    q.k_max = static_cast<std::int64_t>(R / ell_lo) + 1;
    auto p = x;
    for (std::int64_t k = 1; k <= q.k_max; ++k) {
        p = iso.apply(p);
        double d = static_cast<double>(s.distance(x, p));
        if (k == 1 || d < q.radius) {
            q.radius = d;
            q.k_attaining = k;
        }
    }
    q.member = q.radius <= R;
    return q;
}

// --- half-plane closed forms -------------------------------------------

/// Displacement of a point at distance rho from the axis of a hyperbolic
/// map with translation length ell: 2 arcsinh(sinh(ell/2) cosh(rho)).
double displacement_at_offset(double ell, double rho);

/// Width of the Margulis domain M_R around the axis:
/// arccosh(sinh(R/2)/sinh(ell/2)) for R >= ell (M_R is empty below ell).
double collar_radius(double ell, double R);

double axis_distance(const MobiusD& m, const HPoint& x);

struct TubeCheck {
    BoundReport bound;                     // max member axis-distance vs the tube bound
    double collar = 0.0;                   // closed-form collar radius
    std::int64_t samples = 0;
    std::int64_t members = 0;
    std::int64_t band_disagreements = 0;   // membership vs collar outside a 1e-7 band
};

/// Rejection-samples M_R(g) and checks that members stay within
/// (7 delta / ell + 1) R / 2 + 7 delta / 2 of the axis; cross-checks sampled
/// membership against the exact collar radius.
TubeCheck check_tube(const MobiusD& g, double R, double delta, std::int64_t n_samples,
                     std::uint64_t seed);

/// d(x, axis) <= (d(x,gx) - ell)/2 + 3 delta when ell > 3 delta (vacuous
/// otherwise).
BoundReport check_distance_to_axis(const MobiusD& g, const HPoint& x, double delta);

/// For x on the closure of the complement of M_R: d(x, M_r) >= (R - r)/2.
BoundReport check_domain_separation(const MobiusD& g, double r, double R, const HPoint& x);

template <class Space>
struct MargulisEstimate {
    double value = 0.0;  // upper bound on L(a,b)
    typename Space::point_type witness{};
    std::int64_t p = 0, q = 0;
};

/// min over sampled x and powers 1 <= |p|,|q| <= P of
/// max(d(x, a^p x), d(x, b^q x)); for each x the inner min over pairs is
/// max(min_p, min_q).
template <class Space, class Iso>
MargulisEstimate<Space> margulis_constant(const Space& s, const Iso& a, const Iso& b,
                                          std::span<const typename Space::point_type> domain,
                                          int P) {
    if (P < 1) throw domain_error("power range P must be at least 1");
    if (domain.empty()) throw domain_error("margulis_constant needs a nonempty domain");
    MargulisEstimate<Space> best;
    bool have = false;
    for (const auto& x : domain) {
        auto min_over_powers = [&](const Iso& iso, std::int64_t& arg) {
            double m = 0.0;
            bool first = true;
            auto fwd = x, bwd = x;
            Iso inv_iso = iso;
            if constexpr (std::is_same_v<Iso, HIsometry>)
                inv_iso.m = iso.m.inverse();
            else
                inv_iso.g = iso.space->inv(iso.g);
            for (int k = 1; k <= P; ++k) {
                fwd = iso.apply(fwd);
                bwd = inv_iso.apply(bwd);
                double df = static_cast<double>(s.distance(x, fwd));
                double db = static_cast<double>(s.distance(x, bwd));
                double dmin = std::min(df, db);
                if (first || dmin < m) {
                    m = dmin;
                    arg = df <= db ? k : -k;
                    first = false;
                }
            }
            return m;
        };
        std::int64_t pa = 0, qb = 0;
        double va = min_over_powers(a, pa);
        double vb = min_over_powers(b, qb);
        double v = std::max(va, vb);
        if (!have || v < best.value) {
            have = true;
            best.value = v;
            best.witness = x;
            best.p = pa;
            best.q = qb;
        }
    }
    return best;
}

struct MidpointCheck {
    BoundReport lower;         // max(0, d(x,g^2x) - d(x,gx)) <= d(m, gm)
    BoundReport upper;         // d(m, gm) <= that + delta
    BoundReport length_bound;  // that + delta <= l(g) + 3 delta
    bool holds() const { return lower.holds && upper.holds && length_bound.holds; }
};

/// Midpoint displacement sandwich for the midpoint m of [x, gx]; half-plane
/// backend (needs a continuous geodesic oracle).
MidpointCheck check_midpoint(const MobiusD& g, const HPoint& x, double delta);

struct QuasigeodCheck {
    double s_est = 0.0;
    BoundReport lower;  // ell_lo <= s_est
    BoundReport upper;  // s_est <= ell_hi + delta
};

/// l(g) <= s(g) <= l(g) + delta, checked through a displacement estimate
/// s_est = min over samples of d(x, gx) against a certified bracket.
template <class Space, class Iso>
QuasigeodCheck check_quasigeod(const Space& s, const Iso& iso,
                               std::span<const typename Space::point_type> samples, double delta,
                               double ell_lo, double ell_hi) {
    QuasigeodCheck out;
    out.s_est = min_displacement(s, iso, samples).value;
    out.lower = BoundReport::ge("displacement-vs-length-lower", out.s_est, ell_lo,
                                "length-displacement-sandwich", 1e-9);
    out.upper = BoundReport::le("displacement-vs-length-upper", out.s_est, ell_hi + delta,
                                "length-displacement-sandwich", 1e-9);
    out.lower.with_input("delta", delta);
    out.upper.with_input("delta", delta);
    return out;
}

}  // namespace gromolab
