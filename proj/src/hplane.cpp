#include "gromolab/hplane.hpp"

#include <algorithm>
#include <complex>
#include <sstream>

namespace gromolab {

std::string ExtReal::str() const { return infinite ? "inf" : std::to_string(value); }

const char* IsometryClass::name() const {
    switch (type) {
        case IsoType::Identity: return "Identity";
        case IsoType::Elliptic: return "Elliptic";
        case IsoType::Parabolic: return "Parabolic";
        case IsoType::Hyperbolic: return "Hyperbolic";
    }
    return "?";
}

MobiusD mobius_normalized(double a, double b, double c, double d) {
    double det = a * d - b * c;
    if (!(det > 0.0)) throw domain_error("matrix must have positive determinant");
    double s = 1.0 / std::sqrt(det);
    MobiusD m{a * s, b * s, c * s, d * s};
    m.sign_normalize();
    return m;
}

MobiusQ mobius_exact(Rational a, Rational b, Rational c, Rational d) {
    Rational det = a * d - b * c;
    if (det != Rational(1))
        throw domain_error("exact mode needs determinant exactly 1 (got " + det.str() + ")");
    MobiusQ m{a, b, c, d};
    m.sign_normalize();
    return m;
}

ParsedMobius parse_mobius(const std::string& text) {
    std::string t = text;
    std::replace(t.begin(), t.end(), ';', ',');
    std::stringstream ss(t);
    std::string item;
    std::vector<std::string> parts;
    while (std::getline(ss, item, ',')) {
        // trim
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        parts.push_back(item.substr(b, e - b + 1));
    }
    if (parts.size() != 4) throw domain_error("matrix format is \"a,b;c,d\": " + text);

    bool exact_ok = true;
    Rational q[4];
    double v[4];
    for (int i = 0; i < 4; ++i) {
        try {
            q[i] = Rational::parse(parts[i]);
            v[i] = q[i].to_double();
        } catch (const std::exception&) {
            exact_ok = false;
            char* end = nullptr;
            v[i] = std::strtod(parts[i].c_str(), &end);
            if (end == parts[i].c_str() || *end != '\0')
                throw domain_error("bad matrix entry: " + parts[i]);
        }
    }
    ParsedMobius out;
    out.numeric = mobius_normalized(v[0], v[1], v[2], v[3]);
    if (exact_ok) {
        try {
            Rational det = q[0] * q[3] - q[1] * q[2];
            if (det == Rational(1)) {
                MobiusQ m{q[0], q[1], q[2], q[3]};
                m.sign_normalize();
                out.exact = m;
            }
        } catch (const std::exception&) {
            // entries too large to certify exactness; numeric mode only
        }
    }
    return out;
}

IsometryClass classify(const MobiusD& m, double trace_band) {
    IsometryClass cls;
    double tr = std::abs(m.trace());
    bool diag_id = std::abs(m.b) <= trace_band && std::abs(m.c) <= trace_band &&
                   std::abs(m.a - m.d) <= trace_band;
    if (diag_id && std::abs(tr - 2.0) <= trace_band) {
        cls.type = IsoType::Identity;
        return cls;
    }
    if (std::abs(tr - 2.0) <= trace_band) {
        cls.type = IsoType::Parabolic;
        if (std::abs(m.c) > trace_band)
            cls.fixed_plus = ExtReal::finite((m.a - m.d) / (2.0 * m.c));
        else
            cls.fixed_plus = ExtReal::infinity();
        return cls;
    }
    if (tr < 2.0) {
        cls.type = IsoType::Elliptic;
        return cls;
    }
    cls.type = IsoType::Hyperbolic;
    // boundary fixed points: roots of c z^2 + (d-a) z - b = 0
    double disc = m.trace() * m.trace() - 4.0;  // = (d-a)^2 + 4bc for det 1
    double sq = std::sqrt(disc);
    if (std::abs(m.c) > 1e-300) {
        double z1 = ((m.a - m.d) + sq) / (2.0 * m.c);
        double z2 = ((m.a - m.d) - sq) / (2.0 * m.c);
        // multiplier at a fixed point z is (cz + d); attracting iff |cz+d| > 1
        double m1 = std::abs(m.c * z1 + m.d);
        if (m1 > 1.0) {
            cls.fixed_plus = ExtReal::finite(z1);
            cls.fixed_minus = ExtReal::finite(z2);
        } else {
            cls.fixed_plus = ExtReal::finite(z2);
            cls.fixed_minus = ExtReal::finite(z1);
        }
    } else {
        double z0 = m.b / (m.d - m.a);
        if (std::abs(m.a) > std::abs(m.d)) {
            cls.fixed_plus = ExtReal::infinity();
            cls.fixed_minus = ExtReal::finite(z0);
        } else {
            cls.fixed_plus = ExtReal::finite(z0);
            cls.fixed_minus = ExtReal::infinity();
        }
    }
    return cls;
}

double translation_length(const MobiusD& m) {
    IsometryClass cls = classify(m);
    if (cls.type != IsoType::Hyperbolic)
        throw domain_error(std::string("translation length requires a hyperbolic map, got ") +
                           cls.name());
    return 2.0 * std::acosh(std::abs(m.trace()) / 2.0);
}

HPoint HGeodesic::natural(double s) const {
    if (kind_ == Kind::Vertical) return {x0_, std::exp(s)};
    double th = std::tanh(s);
    double sech = 1.0 / std::cosh(s);
    return {cx_ + r_ * th, r_ * sech};
}

double HGeodesic::natural_param(const HPoint& p) const {
    if (kind_ == Kind::Vertical) return std::log(p.y);
    return std::atanh(std::clamp((p.x - cx_) / r_, -1.0 + 1e-300, 1.0 - 1e-300));
}

HPoint HGeodesic::at(double t) const { return natural(dir_ * t + t0_); }

HGeodesic HGeodesic::shifted(double s) const {
    HGeodesic g = *this;
    g.t0_ = t0_ + dir_ * s;
    return g;
}

HGeodesic HGeodesic::through(const HPoint& p, const HPoint& q) {
    HGeodesic g;
    double scale = std::max({1.0, std::abs(p.x), std::abs(q.x)});
    if (std::abs(p.x - q.x) <= 1e-13 * scale) {
        if (p.y == q.y) throw domain_error("geodesic through coincident points is undefined");
        g.kind_ = Kind::Vertical;
        g.x0_ = p.x;
        g.dir_ = q.y > p.y ? 1.0 : -1.0;
        g.t0_ = std::log(p.y);
        return g;
    }
    g.kind_ = Kind::Circle;
    g.cx_ = (q.x * q.x + q.y * q.y - p.x * p.x - p.y * p.y) / (2.0 * (q.x - p.x));
    g.r_ = std::hypot(p.x - g.cx_, p.y);
    double sp = g.natural_param(p);
    double sq = g.natural_param(q);
    g.dir_ = sq > sp ? 1.0 : -1.0;
    g.t0_ = sp;
    return g;
}

HGeodesic HGeodesic::from_boundary(const ExtReal& u, const ExtReal& v) {
    HGeodesic g;
    if (u.infinite && v.infinite) throw domain_error("geodesic endpoints coincide at infinity");
    if (u.infinite || v.infinite) {
        g.kind_ = Kind::Vertical;
        g.x0_ = u.infinite ? v.value : u.value;
        g.dir_ = v.infinite ? 1.0 : -1.0;
        g.t0_ = 0.0;
        return g;
    }
    if (u.value == v.value) throw domain_error("geodesic endpoints coincide");
    g.kind_ = Kind::Circle;
    g.cx_ = 0.5 * (u.value + v.value);
    g.r_ = 0.5 * std::abs(v.value - u.value);
    g.dir_ = v.value > u.value ? 1.0 : -1.0;
    g.t0_ = 0.0;
    return g;
}

ExtReal HGeodesic::backward() const {
    if (kind_ == Kind::Vertical)
        return dir_ > 0 ? ExtReal::finite(x0_) : ExtReal::infinity();
    return ExtReal::finite(dir_ > 0 ? cx_ - r_ : cx_ + r_);
}

ExtReal HGeodesic::forward() const {
    if (kind_ == Kind::Vertical)
        return dir_ > 0 ? ExtReal::infinity() : ExtReal::finite(x0_);
    return ExtReal::finite(dir_ > 0 ? cx_ + r_ : cx_ - r_);
}

MobiusD HGeodesic::chart() const {
    ExtReal u = backward(), v = forward();
    if (v.infinite) return mobius_normalized(1.0, -u.value, 0.0, 1.0);   // z - u
    if (u.infinite) return mobius_normalized(0.0, 1.0, -1.0, v.value);   // 1/(v - z)
    if (v.value > u.value)
        return mobius_normalized(1.0, -u.value, -1.0, v.value);          // (z-u)/(v-z)
    return mobius_normalized(1.0, -u.value, 1.0, -v.value);              // (z-u)/(z-v)
}

double HGeodesic::foot_param(const HPoint& z) const {
    MobiusD T = chart();
    HPoint w = apply(T, z);
    HPoint base = apply(T, at(0.0));
    return 0.5 * std::log((w.x * w.x + w.y * w.y) / (base.x * base.x + base.y * base.y));
}

double HGeodesic::distance_to(const HPoint& z) const {
    MobiusD T = chart();
    HPoint w = apply(T, z);
    return std::asinh(std::abs(w.x) / w.y);
}

HPoint HGeodesic::offset_point(double t, double rho, int side) const {
    // in the chart the point at parameter t and distance rho is
    // e^{t'} (sign * tanh rho, sech rho); pull it back
    MobiusD T = chart();
    HPoint base = apply(T, at(t));
    double h = std::hypot(base.x, base.y);
    double th = std::tanh(rho) * (side >= 0 ? 1.0 : -1.0);
    double sech = 1.0 / std::cosh(rho);
    return apply(T.inverse(), HPoint{h * th, h * sech});
}

HGeodesic axis(const MobiusD& m) {
    IsometryClass cls = classify(m);
    if (cls.type != IsoType::Hyperbolic)
        throw domain_error(std::string("axis requires a hyperbolic map, got ") + cls.name());
    return HGeodesic::from_boundary(cls.fixed_minus, cls.fixed_plus);
}

MobiusD make_hyperbolic(const ExtReal& repelling, const ExtReal& attracting, double ell) {
    if (!(ell > 0.0)) throw domain_error("translation length must be positive");
    if (repelling.near(attracting, 0.0)) throw domain_error("axis endpoints coincide");
    MobiusD T = HGeodesic::from_boundary(repelling, attracting).chart();
    double lam = std::exp(ell / 2.0);
    MobiusD D{lam, 0.0, 0.0, 1.0 / lam};
    MobiusD g = T.inverse() * D * T;
    return mobius_normalized(g.a, g.b, g.c, g.d);
}

BoundReport check_busemann_displacement(const MobiusD& m, const HGeodesic& ray, double T,
                                        double delta, int n_samples) {
    IsometryClass cls = classify(m);
    if (cls.type != IsoType::Parabolic)
        throw domain_error(std::string("Busemann displacement check needs a parabolic map, got ") +
                           cls.name());
    if (!ray.forward().near(cls.fixed_plus))
        throw domain_error("ray endpoint does not match the parabolic fixed point");
    HPoint c0 = ray.at(0.0);
    double d0 = hdistance(c0, apply(m, c0));
    if (T < d0 - 1e-12)
        throw domain_error("sampling start T must be at least d(c(0), m c(0))");
    double worst = 0.0;
    double worst_t = T;
    for (int i = 0; i < n_samples; ++i) {
        double t = T + 10.0 * static_cast<double>(i) / (n_samples - 1);
        HPoint p = ray.at(t);
        double disp = hdistance(p, apply(m, p));
        if (disp > worst) {
            worst = disp;
            worst_t = t;
        }
    }
    auto rep = BoundReport::le("busemann-displacement", worst, 7.0 * delta,
                               "busemann-displacement", 1e-9);
    rep.with_input("delta", delta).with_input("T", T).with_input("worst_t", worst_t);
    return rep;
}

}  // namespace gromolab
