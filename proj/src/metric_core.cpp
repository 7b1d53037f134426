#include "gromolab/metric_core.hpp"

namespace gromolab {

GeodesicProjection project_golden(const HGeodesic& geod, const HPoint& x, double tol) {
    double d0 = hdistance(x, geod.at(0.0));
    // the foot lies within 2 d0 of c(0): |t*| = d(c(0), c(t*)) <= d0 + d(x, c(t*)) <= 2 d0
    double lo = -2.0 * d0 - 1.0;
    double hi = 2.0 * d0 + 1.0;
    auto f = [&](double t) { return hdistance(x, geod.at(t)); };
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    double t = 0.5 * (a + b);
    GeodesicProjection p;
    p.t = t;
    p.foot = geod.at(t);
    p.dist = hdistance(x, p.foot);
    return p;
}

}  // namespace gromolab
