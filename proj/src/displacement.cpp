#include "gromolab/displacement.hpp"

#include <cmath>

namespace gromolab {

namespace {

// Matrix with entries kept near 1 and the true magnitude in log_scale; the
// represented map is e^{log_scale} * m with determinant exactly 1 by
// construction, so the scale never has to be recovered from the entries
// (whose determinant is far below their rounding error at large powers).
struct ScaledMobius {
    MobiusL m;
    long double log_scale = 0.0L;

    void renormalize() {
        long double k = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
        if (!(k > 0.0L) || !std::isfinite(k))
            throw domain_error("matrix power degenerated; switch to log-scale arithmetic");
        m.a /= k;
        m.b /= k;
        m.c /= k;
        m.d /= k;
        log_scale += std::log(k);
    }

    HPt<long double> apply_unit_det(const HPt<long double>& z, std::int64_t n) const {
        long double u = m.c * z.x + m.d;
        long double v = m.c * z.y;
        long double n2 = u * u + v * v;
        long double ix = (m.a * z.x + m.b) * u + m.a * z.y * v;  // scale cancels in Re
        long double iy = z.y * std::exp(-2.0L * log_scale) / n2;
        if (!(iy > 0.0L) || !std::isfinite(ix / n2))
            throw domain_error("displacement at n=" + std::to_string(n) +
                               " exceeds the long double range; rerun with smaller n_max or "
                               "switch to log-scale arithmetic");
        return {ix / n2, iy};
    }
};

}  // namespace

std::vector<std::pair<std::int64_t, double>> power_displacements(const HalfPlane&,
                                                                 const HIsometry& iso,
                                                                 const HPoint& x,
                                                                 std::int64_t n_max) {
    std::vector<std::pair<std::int64_t, double>> seq;
    ScaledMobius p{widen(iso.m), 0.0L};
    HPt<long double> xl = widen(x);
    for (std::int64_t n = 1; n <= n_max; n *= 2) {
        p.renormalize();
        seq.emplace_back(n, static_cast<double>(hdistance_t(xl, p.apply_unit_det(xl, n))));
        if (n * 2 <= n_max) p.m = p.m * p.m, p.log_scale *= 2.0L;
    }
    return seq;
}

std::vector<std::pair<std::int64_t, double>> power_displacements(const CayleySpace& s,
                                                                 const GraphIsometry& iso,
                                                                 const Word& x,
                                                                 std::int64_t n_max) {
    std::vector<std::pair<std::int64_t, double>> seq;
    Word p = s.canonical(iso.g);
    for (std::int64_t n = 1; n <= n_max; n *= 2) {
        GraphIsometry pn{iso.space, p, ""};
        seq.emplace_back(n, static_cast<double>(s.distance(x, pn.apply(x))));
        if (n * 2 <= n_max) p = s.mul(p, p);
    }
    return seq;
}

Bracket bracket_from_displacements(const std::vector<std::pair<std::int64_t, double>>& seq,
                                   double delta) {
    if (seq.empty()) throw domain_error("empty displacement sequence");
    Bracket b;
    b.delta_used = delta;
    double d1 = seq.front().second;
    double hi = d1;
    double lo = 0.0;
    for (const auto& [n, dn] : seq) {
        b.n_used = n;
        hi = std::min(hi, dn / static_cast<double>(n));
        if (n >= 2) {
            double cand = (dn - d1 - 4.0 * delta * std::log2(static_cast<double>(n))) /
                          static_cast<double>(n - 1);
            lo = std::max(lo, cand);
        }
    }
    b.lo = lo;
    b.hi = hi;
    return b;
}

double displacement_at_offset(double ell, double rho) {
    if (!(ell > 0.0)) throw domain_error("translation length must be positive");
    return 2.0 * std::asinh(std::sinh(ell / 2.0) * std::cosh(rho));
}

double collar_radius(double ell, double R) {
    if (!(ell > 0.0)) throw domain_error("translation length must be positive");
    if (R < ell) throw domain_error("M_R is empty for R below the translation length");
    return std::acosh(std::sinh(R / 2.0) / std::sinh(ell / 2.0));
}

double axis_distance(const MobiusD& m, const HPoint& x) { return axis(m).distance_to(x); }

TubeCheck check_tube(const MobiusD& g, double R, double delta, std::int64_t n_samples,
                     std::uint64_t seed) {
    double ell = translation_length(g);
    TubeCheck out;
    double rhs = 0.5 * (7.0 * delta / ell + 1.0) * R + 3.5 * delta;
    if (R < ell) {
        // M_R empty: nothing to sample, bound vacuous
        out.bound = BoundReport::le("tube-width", 0.0, rhs, "tube-width", 1e-9).vacuous();
        out.bound.with_input("ell", ell).with_input("R", R).with_input("delta", delta);
        return out;
    }
    out.collar = collar_radius(ell, R);
    HGeodesic ax = axis(g);
    Rng rng(seed);
    double max_member_dist = 0.0;
    for (std::int64_t i = 0; i < n_samples; ++i) {
        double t = rng.uniform(-3.0, 3.0);
        double rho = rng.uniform(0.0, out.collar + 0.5);
        int side = rng.below(2) ? 1 : -1;
        HPoint x = ax.offset_point(t, rho, side);
        auto q = displacement_radius(HalfPlane{}, HIsometry{g, ""}, x, ell, R);
        ++out.samples;
        if (q.member) {
            ++out.members;
            max_member_dist = std::max(max_member_dist, ax.distance_to(x));
        }
        bool collar_says = rho <= out.collar;
        if (q.member != collar_says && std::abs(rho - out.collar) > 1e-7)
            ++out.band_disagreements;
    }
    out.bound = BoundReport::le("tube-width", max_member_dist, rhs, "tube-width", 1e-9);
    out.bound.with_input("ell", ell)
        .with_input("R", R)
        .with_input("delta", delta)
        .with_input("collar", out.collar);
    return out;
}

BoundReport check_distance_to_axis(const MobiusD& g, const HPoint& x, double delta) {
    double ell = translation_length(g);
    double disp = hdistance(x, apply(g, x));
    double lhs = axis_distance(g, x);
    double rhs = 0.5 * (disp - ell) + 3.0 * delta;
    auto rep = BoundReport::le("axis-distance", lhs, rhs, "axis-distance-bound", 1e-9);
    rep.with_input("ell", ell).with_input("delta", delta).with_input("displacement", disp);
    if (!(ell > 3.0 * delta)) rep.vacuous();
    return rep;
}

BoundReport check_domain_separation(const MobiusD& g, double r, double R, const HPoint& x) {
    if (!(r < R)) throw domain_error("need r < R");
    double ell = translation_length(g);
    if (r < ell) throw domain_error("M_r is empty (r below the translation length)");
    auto q = displacement_radius(HalfPlane{}, HIsometry{g, ""}, x, ell, R);
    if (q.radius < R - 1e-12)
        throw domain_error("x lies inside M_R; separation needs a point of the complement");
    double lhs = std::max(0.0, axis_distance(g, x) - collar_radius(ell, r));
    double rhs = 0.5 * (R - r);
    auto rep = BoundReport::ge("domain-separation", lhs, rhs, "domain-separation", 1e-9);
    rep.with_input("ell", ell).with_input("r", r).with_input("R", R);
    return rep;
}

MidpointCheck check_midpoint(const MobiusD& g, const HPoint& x, double delta) {
    HalfPlane hp;
    HPoint gx = apply(g, x);
    double d1 = hdistance(x, gx);
    HPoint mid = d1 == 0.0 ? x : hp.geodesic_point(x, gx, d1 / 2.0);
    double d2 = hdistance(x, apply(g, gx));
    double a = std::max(0.0, d2 - d1);
    double lhs = hdistance(mid, apply(g, mid));
    IsometryClass cls = classify(g);
    double ell = cls.type == IsoType::Hyperbolic ? translation_length(g) : 0.0;
    MidpointCheck out{
        BoundReport::ge("midpoint-lower", lhs, a, "midpoint-displacement", 1e-9),
        BoundReport::le("midpoint-upper", lhs, a + delta, "midpoint-displacement", 1e-9),
        BoundReport::le("midpoint-length", a + delta, ell + 3.0 * delta, "midpoint-displacement",
                        1e-9)};
    out.lower.with_input("delta", delta);
    out.upper.with_input("delta", delta);
    out.length_bound.with_input("delta", delta).with_input("ell", ell);
    return out;
}

}  // namespace gromolab
