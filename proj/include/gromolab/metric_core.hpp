#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gromolab/common.hpp"
#include "gromolab/hplane.hpp"
#include "gromolab/report.hpp"

namespace gromolab {

/// Half-plane handle satisfying the space interface used by the generic
/// operations: distance oracle plus a continuous geodesic oracle.
struct HalfPlane {
    using point_type = HPoint;
    using dist_type = double;
    static constexpr bool has_geodesic = true;

    double distance(const HPoint& p, const HPoint& q) const { return hdistance(p, q); }

    HPoint geodesic_point(const HPoint& p, const HPoint& q, double t) const {
        return HGeodesic::through(p, q).at(t);
    }
};

// Doubled Gromov product d(base,x) + d(base,y) - d(x,y); stays in the
// space's native scalar, so it is exact on integer-metric graphs.
template <class Space>
typename Space::dist_type gromov_product2(const Space& s, const typename Space::point_type& x,
                                          const typename Space::point_type& y,
                                          const typename Space::point_type& base) {
    return s.distance(base, x) + s.distance(base, y) - s.distance(x, y);
}

template <class Space>
double gromov_product(const Space& s, const typename Space::point_type& x,
                      const typename Space::point_type& y,
                      const typename Space::point_type& base) {
    return static_cast<double>(gromov_product2(s, x, y, base)) / 2.0;
}

// Largest four-point defect of one quadruple over the three labelings with
// the fourth point as base: min((x|y)_w, (y|z)_w) - (x|z)_w, doubled.
template <class Space>
typename Space::dist_type quadruple_defect2(const Space& s, const typename Space::point_type& x,
                                            const typename Space::point_type& y,
                                            const typename Space::point_type& z,
                                            const typename Space::point_type& w) {
    auto u = gromov_product2(s, x, y, w);
    auto v = gromov_product2(s, y, z, w);
    auto t = gromov_product2(s, x, z, w);
    auto d1 = std::min(u, v) - t;
    auto d2 = std::min(u, t) - v;
    auto d3 = std::min(v, t) - u;
    return std::max({d1, d2, d3});
}

template <class Point>
struct DeltaEstimate {
    double value = 0.0;
    std::int64_t quadruple_count = 0;
    std::array<Point, 4> witness{};
    std::uint64_t seed = 0;
};

/// Empirical lower bound on the four-point constant: the maximum quadruple
/// defect over n seeded quadruples, clamped at 0. Sampling is sharded with a
/// fixed shard count, so the result is one function of (seed, n) no matter
/// how many threads run.
template <class Space, class SamplerFactory>
DeltaEstimate<typename Space::point_type> four_point_delta(const Space& s,
                                                           const SamplerFactory& make_sampler,
                                                           std::int64_t n_quadruples,
                                                           std::uint64_t seed) {
    using Point = typename Space::point_type;
    if (n_quadruples < 1) throw domain_error("need at least one quadruple");
    constexpr int kShards = 16;
    struct ShardResult {
        bool have = false;
        typename Space::dist_type best2{};
        std::array<Point, 4> witness{};
    };
    std::array<ShardResult, kShards> results;
    run_sharded(kShards, [&](int shard) {
        std::int64_t n = n_quadruples / kShards + (shard < n_quadruples % kShards ? 1 : 0);
        if (n == 0) return;
        auto sample = make_sampler(mix_seed(seed, static_cast<std::uint64_t>(shard)));
        ShardResult r;
        for (std::int64_t i = 0; i < n; ++i) {
            std::array<Point, 4> q{sample(), sample(), sample(), sample()};
            auto d2 = quadruple_defect2(s, q[0], q[1], q[2], q[3]);
            if (!r.have || d2 > r.best2) {
                r.have = true;
                r.best2 = d2;
                r.witness = q;
            }
        }
        results[static_cast<std::size_t>(shard)] = std::move(r);
    });
    DeltaEstimate<Point> est;
    est.quadruple_count = n_quadruples;
    est.seed = seed;
    bool have = false;
    typename Space::dist_type best2{};
    for (const auto& r : results) {
        if (!r.have) continue;
        if (!have || r.best2 > best2) {
            have = true;
            best2 = r.best2;
            est.witness = r.witness;
        }
    }
    est.value = std::max(0.0, static_cast<double>(best2) / 2.0);
    return est;
}

template <class Point>
struct TripodData {
    double alpha = 0.0;  // (y|z)_x
    double beta = 0.0;   // (x|z)_y
    double gamma = 0.0;  // (x|y)_z
    Point c_x{};         // on [y,z], at distance beta from y
    Point c_y{};         // on [x,z], at distance alpha from x
    Point c_z{};         // on [x,y], at distance alpha from x
};

/// Branch lengths are the three Gromov products; the internal points are the
/// geodesic-oracle points at those arclengths. Needs a continuous geodesic
/// oracle (half-plane); graph backends raise unsupported_error.
template <class Space>
TripodData<typename Space::point_type> tripod_map(const Space& s,
                                                  const typename Space::point_type& x,
                                                  const typename Space::point_type& y,
                                                  const typename Space::point_type& z) {
    if constexpr (!Space::has_geodesic) {
        throw unsupported_error("tripod map needs a geodesic oracle on this backend");
    } else {
        TripodData<typename Space::point_type> t;
        t.alpha = gromov_product(s, y, z, x);
        t.beta = gromov_product(s, x, z, y);
        t.gamma = gromov_product(s, x, y, z);
        auto safe_point = [&](const auto& p, const auto& q, double arc) {
            return s.distance(p, q) == 0 ? p : s.geodesic_point(p, q, arc);
        };
        t.c_z = safe_point(x, y, t.alpha);
        t.c_y = safe_point(x, z, t.alpha);
        t.c_x = safe_point(y, z, t.beta);
        return t;
    }
}

/// Foot of x on a parameterized complete geodesic by golden-section search;
/// the distance-to-point function along a geodesic is unimodal here. The
/// closed-form projection exists independently (HGeodesic::foot_param) and
/// cross-checks this in the tests.
struct GeodesicProjection {
    double t = 0.0;
    HPoint foot{0.0, 1.0};
    double dist = 0.0;
};

GeodesicProjection project_golden(const HGeodesic& geod, const HPoint& x, double tol = 1e-10);

/// Exhaustive scan over a vertex path (graph backends); exact.
template <class Space>
struct PathProjection {
    std::size_t index = 0;
    typename Space::point_type foot{};
    typename Space::dist_type dist{};
};

template <class Space>
PathProjection<Space> project_scan(const Space& s,
                                   const std::vector<typename Space::point_type>& path,
                                   const typename Space::point_type& x) {
    if (path.empty()) throw domain_error("cannot project onto an empty geodesic");
    PathProjection<Space> best{0, path[0], s.distance(x, path[0])};
    for (std::size_t i = 1; i < path.size(); ++i) {
        auto d = s.distance(x, path[i]);
        if (d < best.dist) best = {i, path[i], d};
    }
    return best;
}

/// d(x,y) >= d(x,foot) + d(foot,y) - 2 delta for y on the geodesic and foot
/// a projection of x onto it.
template <class Space>
BoundReport check_projection_inequality(const Space& s, const typename Space::point_type& x,
                                        const typename Space::point_type& y,
                                        const typename Space::point_type& foot, double delta,
                                        double tol = 1e-9) {
    double lhs = static_cast<double>(s.distance(x, y));
    double rhs = static_cast<double>(s.distance(x, foot)) +
                 static_cast<double>(s.distance(foot, y)) - 2.0 * delta;
    auto rep = BoundReport::ge("projection-defect", lhs, rhs, "projection-lower-bound", tol);
    rep.with_input("delta", delta);
    return rep;
}

/// d(x,z) + d(y,w) - max(d(x,y) + d(z,w), d(x,w) + d(y,z)) <= 2 delta.
template <class Space>
BoundReport check_quadrilateral(const Space& s, const typename Space::point_type& x,
                                const typename Space::point_type& y,
                                const typename Space::point_type& z,
                                const typename Space::point_type& w, double delta,
                                double tol = 1e-9) {
    double s1 = static_cast<double>(s.distance(x, z)) + static_cast<double>(s.distance(y, w));
    double s2 = static_cast<double>(s.distance(x, y)) + static_cast<double>(s.distance(z, w));
    double s3 = static_cast<double>(s.distance(x, w)) + static_cast<double>(s.distance(y, z));
    double defect = s1 - std::max(s2, s3);
    auto rep = BoundReport::le("quadrilateral-defect", defect, 2.0 * delta, "quadrilateral", tol);
    rep.with_input("delta", delta);
    return rep;
}

/// If the two feet are more than 3 delta apart, the path through them is
/// taut up to 6 delta: d(x,y) >= d(x,fx) + d(fx,fy) + d(fy,y) - 6 delta.
/// The guard not holding makes the report vacuous.
template <class Space>
BoundReport check_ecartement(const Space& s, const typename Space::point_type& x,
                             const typename Space::point_type& y,
                             const typename Space::point_type& foot_x,
                             const typename Space::point_type& foot_y, double delta,
                             double tol = 1e-9) {
    double gap = static_cast<double>(s.distance(foot_x, foot_y));
    if (!(gap > 3.0 * delta)) {
        auto rep = BoundReport::ge("separated-feet-defect", 0.0, 0.0, "separated-feet", tol);
        rep.with_input("delta", delta).with_input("foot_gap", gap);
        return rep.vacuous();
    }
    double lhs = static_cast<double>(s.distance(x, y));
    double rhs = static_cast<double>(s.distance(x, foot_x)) + gap +
                 static_cast<double>(s.distance(foot_y, y)) - 6.0 * delta;
    auto rep = BoundReport::ge("separated-feet-defect", lhs, rhs, "separated-feet", tol);
    rep.with_input("delta", delta).with_input("foot_gap", gap);
    return rep;
}

/// Seeded uniform sampler over a half-plane box.
class HPointBoxSampler {
public:
    HPointBoxSampler(double x0, double x1, double y0, double y1, std::uint64_t seed)
        : rng_(seed), x0_(x0), x1_(x1), y0_(y0), y1_(y1) {
        if (!(y0 > 0.0) || !(y1 >= y0) || !(x1 >= x0)) throw domain_error("bad sampling box");
    }
    HPoint operator()() { return HPoint{rng_.uniform(x0_, x1_), rng_.uniform(y0_, y1_)}; }

private:
    Rng rng_;
    double x0_, x1_, y0_, y1_;
};

}  // namespace gromolab
