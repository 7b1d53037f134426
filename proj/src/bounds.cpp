#include "gromolab/bounds.hpp"

#include <cmath>
#include <numbers>

#include <mpfr.h>

#include "gromolab/common.hpp"

namespace gromolab::bounds {

BgtFunction::BgtFunction(std::function<mpz_class(const mpz_class&)> f, std::string name)
    : f_(std::move(f)), name_(std::move(name)) {}

mpz_class BgtFunction::operator()(const mpz_class& p) const {
    if (p < 1) throw domain_error("BGT function argument must be positive");
    mpz_class v = f_(p);
    if (v < 1) throw domain_error("BGT function value must be at least 1 (" + name_ + ")");
    for (const auto& [q, w] : queried_) {
        if ((p <= q && v > w) || (p >= q && v < w))
            throw domain_error("BGT function is not monotone on queried values (" + name_ + ")");
    }
    queried_.emplace_back(p, v);
    return v;
}

BgtFunction BgtFunction::constant(unsigned long v) {
    return BgtFunction([v](const mpz_class&) { return mpz_class(v); },
                       "const:" + std::to_string(v));
}

BgtFunction BgtFunction::parse(const std::string& text) {
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    if (head == "const" && colon != std::string::npos) {
        unsigned long v = std::stoul(text.substr(colon + 1));
        if (v < 1) throw domain_error("BGT constant must be at least 1");
        return constant(v);
    }
    throw domain_error("unknown BGT function spec (use const:<n>): " + text);
}

mpz_class bgt_argument(double delta, double H, double D) {
    if (delta < 0.0 || H < 0.0 || D < 0.0) throw domain_error("delta, H, D must be nonnegative");
    double y = 490.0 * H * (D + 2.0 * delta);
    if (!std::isfinite(y)) throw domain_error("BGT argument exponent is not finite");
    if (y > 1e5)
        throw resource_error("BGT argument needs more than 1e5 nats of precision; aborting");
    if (y == 0.0) return mpz_class(531441) + 1;  // 3^12 + 1
    auto prec = static_cast<mpfr_prec_t>(y / std::numbers::ln2) + 192;
    mpfr_t e;
    mpfr_init2(e, prec);
    mpfr_set_d(e, y, MPFR_RNDN);
    mpfr_exp(e, e, MPFR_RNDN);
    mpfr_mul_ui(e, e, 531441, MPFR_RNDN);  // 3^12
    mpfr_floor(e, e);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), e, MPFR_RNDZ);
    mpfr_clear(e);
    return z + 1;
}

EntropyLowerCocompact entropy_lower_cocompact(double delta, double D, double L) {
    if (delta < 0.0 || D < 0.0 || L < 0.0) throw domain_error("delta, D, L must be nonnegative");
    double d1 = L + 14.0 * delta + 4.0 * D;
    double d2 = 16.0 * D + 26.0 * delta;
    if (!(d1 > 0.0) || !(d2 > 0.0)) throw domain_error("zero denominator in the entropy floor");
    return {std::numbers::ln2 / d1, std::numbers::ln2 / d2};
}

double entropy_lower_group(double delta) {
    if (delta < 0.0) throw domain_error("delta must be nonnegative");
    return std::numbers::ln2 / (26.0 * delta + 16.0);
}

TitsThresholds tits_dichotomy(double delta, double D) {
    if (!(delta > 0.0)) throw domain_error("delta must be positive");
    if (D < 0.0) throw domain_error("D must be nonnegative");
    TitsThresholds t;
    t.m0 = std::max(20.0 * (D / delta + 2.0), 720.0);
    t.entropy_threshold = 1.0 / (750.0 * delta);
    t.length_threshold = std::pow(3.0, -34.0) * delta * t.m0 * std::exp(-4.0 * t.m0 / 29.0);
    return t;
}

MargulisConstants margulis_constants(double delta, double H, double D, const BgtFunction& N) {
    MargulisConstants out;
    out.r0 = 20.0 * (D + 2.0 * delta);
    if (!(out.r0 > 0.0)) throw domain_error("degenerate geometry: R0 = 20 (D + 2 delta) is zero");
    out.n0 = N(bgt_argument(delta, H, D));

    // logs survive big N0; linear values may underflow to 0
    mpfr_t n0f;
    mpfr_init2(n0f, 128);
    mpfr_set_z(n0f, out.n0.get_mpz_t(), MPFR_RNDN);
    mpfr_log(n0f, n0f, MPFR_RNDN);
    double ln_n0 = mpfr_get_d(n0f, MPFR_RNDN);
    mpfr_clear(n0f);

    out.log_eps0 = std::log(out.r0) - ln_n0;
    out.eps0 = std::exp(out.log_eps0);
    double n0_d = out.n0.get_d();  // +inf when enormous
    double expo = 0.5 * (n0_d + 10.0) * (13.0 * H * out.r0 + 3.0);
    out.log_s0 = std::numbers::ln2 - 12.0 * std::log(3.0) + std::log(out.r0) - expo;
    out.s0 = std::exp(out.log_s0);
    return out;
}

namespace {

long n1_of(double delta, double alpha) {
    if (!(alpha > 0.0)) throw domain_error("alpha must be positive");
    if (delta < 0.0) throw domain_error("delta must be nonnegative");
    return 1L + static_cast<long>(std::floor(13.0 * delta / alpha));
}

}  // namespace

double collar_lower(double delta, double alpha, double H, double sys) {
    if (!(H > 0.0) || !(sys > 0.0)) throw domain_error("H and sys must be positive");
    double n1 = static_cast<double>(n1_of(delta, alpha));
    return std::max(std::numbers::ln2, std::log(1.0 / (n1 * H * sys))) / (n1 * H);
}

double systole_global_lower(double delta, double alpha, double H, double D) {
    if (!(H > 0.0) || D < 0.0) throw domain_error("need H > 0 and D >= 0");
    double n1 = static_cast<double>(n1_of(delta, alpha));
    return std::exp(-2.0 * n1 * H * D) / (n1 * H);
}

double diastole_lower(double delta, double alpha, double H) {
    if (!(H > 0.0)) throw domain_error("H must be positive");
    double n1 = static_cast<double>(n1_of(delta, alpha));
    return std::numbers::ln2 / (H * n1);
}

TubeRadii tube_radii(double delta, double alpha, double H, double eps) {
    if (!(alpha > 0.0) || !(H > 0.0) || delta < 0.0)
        throw domain_error("need alpha, H > 0 and delta >= 0");
    TubeRadii t;
    t.eps0 = alpha / (2.0 * H * (13.0 * delta + alpha));
    if (!(eps > 0.0) || eps > t.eps0 + 1e-15)
        throw domain_error("need 0 < eps <= eps0 = " + std::to_string(t.eps0));
    t.r_eps = t.eps0 * std::log(2.0 * t.eps0 / eps);
    return t;
}

double ht_constant_from_acylindrical(double delta, double n_at_20delta) {
    if (delta < 0.0 || !(n_at_20delta >= 1.0))
        throw domain_error("need delta >= 0 and N(20 delta) >= 1");
    return 21.0 * delta / (n_at_20delta + 2.0);
}

namespace {

double need(const std::map<std::string, double>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw domain_error("missing parameter: " + key);
    return it->second;
}

}  // namespace

BoundReport check_named_bound(const std::string& name,
                              const std::map<std::string, double>& params) {
    auto echo = [&](BoundReport r) {
        for (const auto& [k, v] : params) r.with_input(k, v);
        return r;
    };
    if (name == "entropy-lower-group") {
        double delta = need(params, "delta"), ent = need(params, "entropy");
        return echo(BoundReport::ge(name, ent, entropy_lower_group(delta), name));
    }
    if (name == "entropy-lower-cocompact") {
        double delta = need(params, "delta"), D = need(params, "D"), L = need(params, "L");
        return echo(BoundReport::ge(name, need(params, "entropy"),
                                    entropy_lower_cocompact(delta, D, L).with_length, name));
    }
    if (name == "orbit-doubling-cocompact") {
        double delta = need(params, "delta"), D = need(params, "D"), H = need(params, "H");
        double R = need(params, "R");
        auto rep = BoundReport::le(name, need(params, "ratio"), 81.0 * std::exp(6.5 * H * R), name);
        if (!(R >= 10.0 * (D + 2.0 * delta))) rep.vacuous();
        return echo(rep);
    }
    if (name == "tits-alternative-consistency") {
        // at least one branch of the dichotomy visible in the measurements;
        // a single instance can witness consistency only
        auto t = tits_dichotomy(need(params, "delta"), need(params, "D"));
        double ratio = std::max(need(params, "entropy") / t.entropy_threshold,
                                need(params, "ell") / t.length_threshold);
        auto rep = BoundReport::ge(name, ratio, 1.0, name, 0.0, /*strict=*/true);
        rep.with_input("entropy_threshold", t.entropy_threshold)
            .with_input("length_threshold", t.length_threshold);
        return echo(rep);
    }
    if (name == "displacement-threshold") {
        double delta = need(params, "delta");
        double s = std::min(need(params, "s_a"), need(params, "s_b"));
        return echo(BoundReport::ge(name, s, 13.0 * delta, name, 0.0, /*strict=*/true));
    }
    if (name == "margulis-constant-threshold") {
        double delta = need(params, "delta");
        return echo(BoundReport::ge(name, need(params, "L"), 23.0 * delta, name, 0.0, true));
    }
    if (name == "power-growth") {
        double delta = need(params, "delta"), n = need(params, "n");
        double rhs = need(params, "d1") + (n - 1.0) * need(params, "ell_hi") +
                     4.0 * delta * std::log2(n);
        return echo(BoundReport::le(name, need(params, "dn"), rhs, name, 1e-9));
    }
    if (name == "length-displacement-lower")
        return echo(BoundReport::ge(name, need(params, "s"), need(params, "ell_lo"), name, 1e-9));
    if (name == "length-displacement-upper") {
        double rhs = need(params, "ell_hi") + need(params, "delta");
        return echo(BoundReport::le(name, need(params, "s"), rhs, name, 1e-9));
    }
    if (name == "collar-lower") {
        double v = collar_lower(need(params, "delta"), need(params, "alpha"), need(params, "H"),
                                need(params, "sys"));
        return echo(BoundReport::ge(name, need(params, "gap"), v, name, 0.0, /*strict=*/true));
    }
    if (name == "global-systole-lower") {
        double v = systole_global_lower(need(params, "delta"), need(params, "alpha"),
                                        need(params, "H"), need(params, "D"));
        return echo(BoundReport::ge(name, need(params, "sys"), v, name));
    }
    if (name == "diastole-lower") {
        double v = diastole_lower(need(params, "delta"), need(params, "alpha"), need(params, "H"));
        return echo(BoundReport::ge(name, need(params, "dias"), v, name));
    }
    if (name == "cat-systole-floor") {
        double delta = need(params, "delta"), H = need(params, "H"), D = need(params, "D");
        double n0 = need(params, "N0");
        double r0 = 20.0 * (D + 2.0 * delta);
        if (!(r0 > 0.0)) throw domain_error("degenerate geometry: R0 = 0");
        double s0 = 2.0 * std::pow(3.0, -12.0) *
                    std::exp(-0.5 * (n0 + 10.0) * (13.0 * H * r0 + 3.0)) * r0;
        return echo(BoundReport::ge(name, need(params, "ell"), s0, name, 0.0, /*strict=*/true));
    }
    if (name == "acylindrical-ht") {
        double v = ht_constant_from_acylindrical(need(params, "delta"), need(params, "N20"));
        return echo(BoundReport::ge(name, need(params, "ell"), v, name));
    }
    if (name == "entropy-action-max") {
        double H = need(params, "H");
        double mx = std::max(need(params, "l1"), need(params, "l2"));
        return echo(BoundReport::ge(name, H * mx, std::numbers::ln2, name));
    }
    if (name == "entropy-action-min") {
        double H = need(params, "H");
        double mx = std::max(need(params, "l1"), need(params, "l2"));
        double mn = std::min(need(params, "l1"), need(params, "l2"));
        return echo(BoundReport::ge(name, mn, std::exp(-H * mx) / H, name, 0.0, /*strict=*/true));
    }
    throw domain_error("unknown bound name: " + name + " (see `gromolab bounds --list`)");
}

std::vector<std::string> named_bounds() {
    return {"entropy-lower-group",    "entropy-lower-cocompact",
            "orbit-doubling-cocompact", "tits-alternative-consistency",
            "displacement-threshold", "margulis-constant-threshold",
            "power-growth",           "length-displacement-lower",
            "length-displacement-upper", "collar-lower",
            "global-systole-lower",   "diastole-lower",
            "cat-systole-floor",      "acylindrical-ht",
            "entropy-action-max",     "entropy-action-min"};
}

}  // namespace gromolab::bounds
