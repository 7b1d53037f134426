#include "gromolab/freeness.hpp"

#include <array>
#include <cmath>
#include <unordered_map>

namespace gromolab {

const char* FreenessCertificate::status_name() const {
    switch (status) {
        case CertStatus::CertifiedFreeSemigroup: return "CertifiedFreeSemigroup";
        case CertStatus::CertifiedFreeGroup: return "CertifiedFreeGroup";
        case CertStatus::RangeLimited: return "RangeLimited";
        case CertStatus::RelationFound: return "RelationFound";
    }
    return "?";
}

HPoint pingpong_base(const MobiusD& a, const MobiusD& b) {
    HGeodesic ga = axis(a), gb = axis(b);
    HPoint p = gb.at(0.0);
    HPoint q = ga.at(0.0);
    for (int i = 0; i < 64; ++i) {
        q = ga.at(ga.foot_param(p));
        p = gb.at(gb.foot_param(q));
    }
    double d = hdistance(p, q);
    if (d < 1e-12) return p;
    return HalfPlane{}.geodesic_point(q, p, d / 2.0);
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

bool same_fixed_pair(const IsometryClass& ca, const IsometryClass& cb) {
    return (ca.fixed_minus.near(cb.fixed_minus) && ca.fixed_plus.near(cb.fixed_plus)) ||
           (ca.fixed_minus.near(cb.fixed_plus) && ca.fixed_plus.near(cb.fixed_minus));
}

bool share_endpoint(const IsometryClass& ca, const IsometryClass& cb) {
    return ca.fixed_minus.near(cb.fixed_minus) || ca.fixed_minus.near(cb.fixed_plus) ||
           ca.fixed_plus.near(cb.fixed_minus) || ca.fixed_plus.near(cb.fixed_plus);
}

MobiusD mobius_power(MobiusD m, int n) {
    // det stays 1 up to rounding drift; recomputing it from large entries
    // would cancel catastrophically, so no renormalization here
    MobiusD acc;  // identity
    while (n > 0) {
        if (n & 1) acc = acc * m;
        n >>= 1;
        if (n) m = m * m;
    }
    if (!(std::isfinite(acc.a) && std::isfinite(acc.b) && std::isfinite(acc.c) &&
          std::isfinite(acc.d)))
        throw domain_error("matrix power left the double range");
    acc.sign_normalize();
    return acc;
}

}  // namespace

FreenessCertificate free_semigroup_by_displacement(const MobiusD& a, const MobiusD& b,
                                                   double delta, int selector_range) {
    IsometryClass ca = classify(a), cb = classify(b);
    if (ca.type != IsoType::Hyperbolic || cb.type != IsoType::Hyperbolic)
        throw domain_error("displacement criterion needs two hyperbolic maps");
    if (same_fixed_pair(ca, cb))
        throw domain_error("elementary pair: identical fixed-point sets share one axis");

    FreenessCertificate cert;
    double la = translation_length(a), lb = translation_length(b);
    double threshold = 13.0 * delta;
    cert.trail.push_back("l(a)=" + fmt(la) + ", l(b)=" + fmt(lb) + ", threshold 13*delta=" +
                         fmt(threshold) + " (minimal displacement equals translation length here)");
    if (!(std::min(la, lb) > threshold)) {
        cert.status = CertStatus::RangeLimited;
        cert.range_limit = 0;
        cert.pair = "{a, b}";
        cert.trail.push_back("displacement hypothesis fails: min(l) <= 13*delta");
        return cert;
    }
    if (share_endpoint(ca, cb))
        cert.trail.push_back(
            "warning: axes share one boundary endpoint; discreteness of <a,b> is not verifiable "
            "by this toolkit");

    cert.status = CertStatus::CertifiedFreeSemigroup;
    cert.range_limit = selector_range;
    HalfPlane hp;
    HPoint base = pingpong_base(a, b);
    HIsometry ia{a, "a"}, ib{b, "b"};
    HIsometry ib_inv{b.inverse(), "b^-1"};
    auto r1 = demi_schottky_test(hp, ia, ib, base, delta, selector_range);
    auto r2 = demi_schottky_test(hp, ia, ib_inv, base, delta, selector_range);
    if (r1.pass_range) {
        cert.pair = "{a, b}";
        cert.trail.push_back("selector: demi-Schottky PASS-range for {a, b} at P=" +
                             std::to_string(selector_range));
    } else if (r2.pass_range) {
        cert.pair = "{a, b^-1}";
        cert.trail.push_back("selector: demi-Schottky PASS-range for {a, b^-1} at P=" +
                             std::to_string(selector_range));
    } else {
        cert.pair = "one of {a, b}, {a, b^-1} (selector inconclusive)";
        cert.trail.push_back(
            "selector: neither finite demi-Schottky test passed at P=" +
            std::to_string(selector_range) +
            "; the displacement criterion asserts one of the two pairs generates a free "
            "semigroup without an effective selector");
    }
    return cert;
}

PowersCertificate free_semigroup_powers(const MobiusD& a, const MobiusD& b, double eps1,
                                        double delta) {
    if (!(eps1 > 0.0)) throw domain_error("eps1 must be positive");
    double la = translation_length(a), lb = translation_length(b);
    if (la < eps1 - 1e-12 || lb < eps1 - 1e-12)
        throw domain_error("eps1 must lower-bound both translation lengths");
    IsometryClass ca = classify(a), cb = classify(b);
    if (same_fixed_pair(ca, cb))
        throw domain_error("elementary pair: identical fixed-point sets share one axis");
    double bound = 13.0 * delta / eps1;
    int p_min = static_cast<int>(std::floor(bound)) + 1;  // smallest integer strictly above

    PowersCertificate out;
    out.p_min = p_min;
    FreenessCertificate& cert = out.certificate;
    // powers share the axes and fixed points of the base maps, and
    // l(g^p) = p l(g) exactly, so the threshold fires analytically
    cert.status = CertStatus::CertifiedFreeSemigroup;
    cert.trail.push_back("powers p=q=" + std::to_string(p_min) + " from 13*delta/eps1=" +
                         fmt(bound) + " (strict)");
    cert.trail.push_back("l(a^p)=" + fmt(p_min * la) + ", l(b^p)=" + fmt(p_min * lb) +
                         " both above 13*delta=" + fmt(13.0 * delta));
    if (share_endpoint(ca, cb))
        cert.trail.push_back(
            "warning: axes share one boundary endpoint; discreteness of <a,b> is not verifiable "
            "by this toolkit");
    constexpr int kSelectorRange = 3;
    cert.range_limit = kSelectorRange;
    try {
        MobiusD ap = mobius_power(a, p_min);
        MobiusD bp = mobius_power(b, p_min);
        HalfPlane hp;
        HPoint base = pingpong_base(a, b);  // powers have the same axes
        auto r1 = demi_schottky_test(hp, HIsometry{ap, "a^p"}, HIsometry{bp, "b^p"}, base, delta,
                                     kSelectorRange);
        auto r2 = demi_schottky_test(hp, HIsometry{ap, "a^p"}, HIsometry{bp.inverse(), "b^-p"},
                                     base, delta, kSelectorRange);
        if (r1.pass_range) {
            cert.pair = "{a^p, b^p}";
            cert.trail.push_back("selector: demi-Schottky PASS-range for {a^p, b^p}");
        } else if (r2.pass_range) {
            cert.pair = "{a^p, b^-p}";
            cert.trail.push_back("selector: demi-Schottky PASS-range for {a^p, b^-p}");
        } else {
            cert.pair = "one of {a^p, b^p}, {a^p, b^-p} (selector inconclusive)";
            cert.trail.push_back("selector: neither finite demi-Schottky test passed");
        }
    } catch (const std::exception& e) {
        cert.pair = "one of {a^p, b^p}, {a^p, b^-p} (selector skipped)";
        cert.trail.push_back(std::string("selector skipped: ") + e.what());
    }
    return out;
}

FreenessCertificate margulis_free_dispatch(const MobiusD& a, const MobiusD& b, double delta,
                                           double L_estimate, int selector_range) {
    double la = translation_length(a), lb = translation_length(b);
    double t = 13.0 * delta;
    FreenessCertificate cert;
    cert.trail.push_back("L estimate " + fmt(L_estimate) + " vs 23*delta=" + fmt(23.0 * delta));
    if (!(L_estimate > 23.0 * delta)) {
        cert.status = CertStatus::RangeLimited;
        cert.pair = "{a, b}";
        cert.trail.push_back("inapplicable: the Margulis-constant estimate is not above 23*delta");
        return cert;
    }
    if (la <= t && lb <= t) {
        // short-short: free-group candidate; a finite test cannot upgrade this
        // to a full certificate (the true constant is only upper-estimated)
        HalfPlane hp;
        HPoint base = pingpong_base(a, b);
        auto rep = schottky_test(hp, HIsometry{a, "a"}, HIsometry{b, "b"}, base, delta,
                                 selector_range);
        cert.status = CertStatus::RangeLimited;
        cert.pair = "{a, b}";
        cert.range_limit = selector_range;
        cert.trail.push_back("case: both lengths <= 13*delta; free-group candidate {a, b}");
        cert.trail.push_back(std::string("finite Schottky test at P=") +
                             std::to_string(selector_range) + ": " +
                             (rep.pass_range ? "PASS-range" : "FAIL"));
        return cert;
    }
    if (la > t && lb > t) {
        cert = free_semigroup_by_displacement(a, b, delta, selector_range);
        cert.trail.insert(cert.trail.begin(), "case: both lengths > 13*delta; pair {a, b}");
        return cert;
    }
    if (la <= t) {
        // conjugate the long one by the short one: candidates {b, a b a^-1}
        MobiusD conj = a * b * a.inverse();
        cert = free_semigroup_by_displacement(b, mobius_normalized(conj.a, conj.b, conj.c, conj.d),
                                              delta, selector_range);
        cert.trail.insert(cert.trail.begin(),
                          "case: l(a) <= 13*delta < l(b); candidate pair {b, a b a^-1}");
        cert.pair = cert.pair == "{a, b}"        ? "{b, a b a^-1}"
                    : cert.pair == "{a, b^-1}"   ? "{b, a b^-1 a^-1}"
                                                 : cert.pair;
        return cert;
    }
    MobiusD conj = b * a * b.inverse();
    cert = free_semigroup_by_displacement(a, mobius_normalized(conj.a, conj.b, conj.c, conj.d),
                                          delta, selector_range);
    cert.trail.insert(cert.trail.begin(),
                      "case: l(b) <= 13*delta < l(a); candidate pair {a, b a b^-1}");
    cert.pair = cert.pair == "{a, b}"      ? "{a, b a b^-1}"
                : cert.pair == "{a, b^-1}" ? "{a, b a^-1 b^-1}"
                                           : cert.pair;
    return cert;
}

namespace {

struct MatKey {
    std::array<std::int64_t, 8> v;
    bool operator==(const MatKey& o) const { return v == o.v; }
};

struct MatKeyHash {
    std::size_t operator()(const MatKey& k) const {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (std::int64_t x : k.v)
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

MatKey key_of(MobiusQ m) {
    m.sign_normalize();
    return MatKey{{m.a.num(), m.a.den(), m.b.num(), m.b.den(), m.c.num(), m.c.den(), m.d.num(),
                   m.d.den()}};
}

}  // namespace

std::optional<Relation> relation_oracle(const MobiusQ& a, const MobiusQ& b, int max_len,
                                        OracleMode mode) {
    if (max_len < 0) throw domain_error("max_len must be nonnegative");
    if (max_len > 14) throw domain_error("relation oracle budget: max_len <= 14");
    constexpr std::size_t kWordBudget = 20'000'000;

    // letters in rank order a < a^-1 < b < b^-1; semigroup mode uses a, b only
    std::vector<std::pair<std::int32_t, MobiusQ>> letters;
    letters.emplace_back(1, a);
    if (mode == OracleMode::Group) letters.emplace_back(-1, a.inverse());
    letters.emplace_back(2, b);
    if (mode == OracleMode::Group) letters.emplace_back(-2, b.inverse());

    std::unordered_map<MatKey, Word, MatKeyHash> seen;
    struct Item {
        Word w;
        MobiusQ m;
    };
    std::vector<Item> level{{Word(), MobiusQ{}}};
    seen.emplace(key_of(MobiusQ{}), Word());
    std::size_t total = 1;
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Item> next;
        for (const Item& it : level) {
            for (const auto& [code, lm] : letters) {
                if (mode == OracleMode::Group && !it.w.empty() &&
                    it.w.letters().back() == -code)
                    continue;
                Item n{it.w * Word::letter(code), it.m * lm};
                if (++total > kWordBudget)
                    throw resource_error("relation oracle exceeded its word budget");
                auto [pos, fresh] = seen.emplace(key_of(n.m), n.w);
                if (!fresh) return Relation{pos->second, n.w};
                next.push_back(std::move(n));
            }
        }
        level = std::move(next);
    }
    return std::nullopt;
}

}  // namespace gromolab
