#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "gromolab/common.hpp"
#include "gromolab/rational.hpp"
#include "gromolab/report.hpp"

namespace gromolab {

template <class T>
struct HPt {
    T x;
    T y;  // > 0
};

using HPoint = HPt<double>;

inline HPoint hpoint(double x, double y) {
    if (!(y > 0.0)) throw domain_error("half-plane point needs positive imaginary part");
    return HPoint{x, y};
}

/// arccosh(1 + (|p-q|^2) / (2 y_p y_q)), computed through log1p so that both
/// nearby and far apart pairs keep full precision.
template <class T>
T hdistance_t(const HPt<T>& p, const HPt<T>& q) {
    T dx = p.x - q.x;
    T dy = p.y - q.y;
    T quot = (dx * dx + dy * dy) / (T(2) * p.y * q.y);
    // sqrt(q) * sqrt(q+2) keeps the argument representable out to the far
    // range where q*q would already overflow
    return std::log1p(quot + std::sqrt(quot) * std::sqrt(quot + T(2)));
}

inline double hdistance(const HPoint& p, const HPoint& q) { return hdistance_t(p, q); }

/// Boundary point of the half-plane: a real number or the point at infinity.
struct ExtReal {
    double value = 0.0;
    bool infinite = false;

    static ExtReal finite(double v) { return {v, false}; }
    static ExtReal infinity() { return {0.0, true}; }
    bool near(const ExtReal& o, double tol = 1e-9) const {
        if (infinite || o.infinite) return infinite == o.infinite;
        return std::abs(value - o.value) <= tol;
    }
    std::string str() const;
};

/// 2x2 real matrix of determinant one acting on the half-plane, identified
/// up to global sign. Scalar is double for geometry, Rational for the exact
/// relation oracle, long double inside power/displacement chains.
template <class Scalar>
struct Mobius {
    Scalar a{1}, b{0}, c{0}, d{1};

    Mobius operator*(const Mobius& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mobius inverse() const { return {d, -b, -c, a}; }
    Scalar trace() const { return a + d; }

    // first nonzero of (a, b, c, d) made positive; exact for Rational
    void sign_normalize() {
        bool flip = false;
        if (!is_zero(a))
            flip = is_neg(a);
        else if (!is_zero(b))
            flip = is_neg(b);
        else if (!is_zero(c))
            flip = is_neg(c);
        else
            flip = is_neg(d);
        if (flip) {
            a = -a;
            b = -b;
            c = -c;
            d = -d;
        }
    }

private:
    static bool is_zero(const Scalar& v) {
        if constexpr (std::is_same_v<Scalar, Rational>)
            return v.is_zero();
        else
            return v == Scalar(0);
    }
    static bool is_neg(const Scalar& v) {
        if constexpr (std::is_same_v<Scalar, Rational>)
            return v.negative();
        else
            return v < Scalar(0);
    }
};

using MobiusD = Mobius<double>;
using MobiusQ = Mobius<Rational>;
using MobiusL = Mobius<long double>;

/// Scales entries so that det = 1; rejects det <= 0 (orientation-reversing
/// or singular input).
MobiusD mobius_normalized(double a, double b, double c, double d);

/// Exact mode refuses matrices whose determinant is not exactly 1 (rational
/// square roots are not available, and the relation oracle needs det 1 so
/// inverses stay rational).
MobiusQ mobius_exact(Rational a, Rational b, Rational c, Rational d);

/// Parses "a,b;c,d" with decimal or p/q entries; sign-normalized. The exact
/// matrix is present whenever all entries parsed exactly and det == 1.
struct ParsedMobius {
    MobiusD numeric;
    std::optional<MobiusQ> exact;
};
ParsedMobius parse_mobius(const std::string& text);

template <class T>
HPt<T> apply(const Mobius<T>& m, const HPt<T>& p) {
    // z -> (az+b)/(cz+d) on z = x + iy
    T u = m.c * p.x + m.d;
    T v = m.c * p.y;
    T n2 = u * u + v * v;
    if (!(n2 > T(0)) || !std::isfinite(n2))
        throw domain_error("Mobius image degenerated (boundary blow-up or overflow)");
    T ax = m.a * p.x + m.b;
    T ay = m.a * p.y;
    return {(ax * u + ay * v) / n2, p.y / n2};  // det = 1
}

inline HPt<long double> widen(const HPoint& p) { return {p.x, p.y}; }
inline MobiusL widen(const MobiusD& m) { return {m.a, m.b, m.c, m.d}; }

enum class IsoType { Identity, Elliptic, Parabolic, Hyperbolic };

struct IsometryClass {
    IsoType type = IsoType::Identity;
    ExtReal fixed_minus;  // repelling (hyperbolic only)
    ExtReal fixed_plus;   // attracting (hyperbolic), or the unique fixed point (parabolic)
    const char* name() const;
};

/// Trace trichotomy with a +-1e-9 band around |trace| = 2; maps inside the
/// band classify Parabolic, so near-parabolic hyperbolics are deliberately
/// absorbed by the band (documented limitation of floating classification).
IsometryClass classify(const MobiusD& m, double trace_band = 1e-9);

/// 2 arccosh(|trace|/2); hyperbolic maps only.
double translation_length(const MobiusD& m);

/// Oriented complete geodesic, unit-speed parameterized. Either a vertical
/// line or a half-circle centered on the real axis.
class HGeodesic {
public:
    static HGeodesic through(const HPoint& p, const HPoint& q);       // c(0) = p, oriented toward q
    static HGeodesic from_boundary(const ExtReal& u, const ExtReal& v);  // backward u, forward v

    HPoint at(double t) const;
    HGeodesic shifted(double s) const;  // same line, c'(t) = c(t + s)

    ExtReal backward() const;
    ExtReal forward() const;

    /// Mobius chart sending this geodesic to the standard axis: backward
    /// endpoint to 0, forward to infinity, orientation preserved.
    MobiusD chart() const;

    double foot_param(const HPoint& z) const;  // closed form
    double distance_to(const HPoint& z) const;  // closed form: arcsinh(|Re w| / Im w) in the chart

    /// Point at axis parameter t displaced to exact distance rho from the
    /// line (side = +-1).
    HPoint offset_point(double t, double rho, int side = 1) const;

private:
    enum class Kind { Vertical, Circle } kind_ = Kind::Vertical;
    double x0_ = 0.0;            // vertical
    double cx_ = 0.0, r_ = 1.0;  // circle
    double dir_ = 1.0;
    double t0_ = 0.0;

    HPoint natural(double s) const;
    double natural_param(const HPoint& p) const;
};

/// Invariant axis of a hyperbolic map, oriented from the repelling to the
/// attracting fixed point, so m translates it by +translation_length(m).
HGeodesic axis(const MobiusD& m);

/// Hyperbolic map with prescribed axis endpoints and translation length.
MobiusD make_hyperbolic(const ExtReal& repelling, const ExtReal& attracting, double ell);

/// Displacement of a parabolic map along a ray into its fixed point is at
/// most 7 delta past the ray's own first-displacement mark; samples
/// t in [T, T+10].
BoundReport check_busemann_displacement(const MobiusD& m, const HGeodesic& ray, double T,
                                        double delta, int n_samples = 256);

}  // namespace gromolab
