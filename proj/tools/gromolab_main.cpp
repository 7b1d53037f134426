#include <cstdio>
#include <iostream>
#include <fstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gromolab/bounds.hpp"
#include "gromolab/displacement.hpp"
#include "gromolab/entropy_doubling.hpp"
#include "gromolab/freeness.hpp"
#include "gromolab/metric_core.hpp"
#include "gromolab/verify.hpp"

namespace {

using nlohmann::ordered_json;
using namespace gromolab;

double jnum(double v) { return round_sig12(v); }

ordered_json point_json(const HPoint& p) { return ordered_json::array({jnum(p.x), jnum(p.y)}); }

HPoint parse_point(const std::string& text) {
    double x = 0, y = 0;
    if (std::sscanf(text.c_str(), "%lf,%lf", &x, &y) != 2)
        throw domain_error("point format is \"x,y\": " + text);
    return hpoint(x, y);
}

void emit(const ordered_json& j, const std::string& output) {
    std::string body = j.dump(2);
    if (output.empty()) {
        std::cout << body << "\n";
    } else {
        std::ofstream out(output);
        if (!out) throw domain_error("cannot open output file: " + output);
        out << body << "\n";
        std::cerr << "wrote " << output << "\n";
    }
}

std::map<std::string, double> parse_params(const std::string& text) {
    std::map<std::string, double> params;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw domain_error("params are k=v,...: " + item);
        params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    return params;
}

// The measured four-point value is an empirical estimate; feeding it into
// certificates needs the explicit opt-in flag.
double resolve_delta(const CLI::Option* delta_opt, double delta_value, int empirical_samples,
                     bool accept_empirical, std::uint64_t seed) {
    if (delta_opt->count() > 0) return delta_value;
    if (empirical_samples > 0) {
        if (!accept_empirical)
            throw domain_error(
                "refusing to use a sampled four-point estimate as a certified delta without "
                "--accept-empirical-delta");
        HalfPlane hp;
        auto factory = [](std::uint64_t s) { return HPointBoxSampler(-5.0, 5.0, 0.1, 10.0, s); };
        return four_point_delta(hp, factory, empirical_samples, seed).value;
    }
    throw domain_error("provide --delta or --empirical-delta-samples");
}

int cmd_delta(const std::string& space, std::int64_t samples, std::uint64_t seed,
              const std::string& box, std::int64_t radius, const std::string& output) {
    ordered_json j;
    j["command"] = "delta";
    j["config"] = {{"space", space}, {"samples", samples}, {"seed", seed}};
    if (space == "hplane") {
        double x0 = -5, x1 = 5, y0 = 0.1, y1 = 10;
        if (!box.empty() &&
            std::sscanf(box.c_str(), "%lf,%lf,%lf,%lf", &x0, &x1, &y0, &y1) != 4)
            throw domain_error("box format is x0,x1,y0,y1");
        j["config"]["box"] = {jnum(x0), jnum(x1), jnum(y0), jnum(y1)};
        HalfPlane hp;
        auto factory = [&](std::uint64_t s) { return HPointBoxSampler(x0, x1, y0, y1, s); };
        auto est = four_point_delta(hp, factory, samples, seed);
        j["value"] = jnum(est.value);
        j["quadruple_count"] = est.quadruple_count;
        ordered_json w = ordered_json::array();
        for (const auto& p : est.witness) w.push_back(point_json(p));
        j["witness"] = w;
    } else if (space.rfind("tree:", 0) == 0) {
        CayleySpace g(GroupDescriptor::parse(space.substr(5)));
        j["config"]["radius"] = radius;
        auto vertices = g.ball(g.identity(), radius);
        auto factory = [&](std::uint64_t s) {
            return [&vertices, rng = Rng(s)]() mutable {
                return vertices[rng.below(vertices.size())];
            };
        };
        auto est = four_point_delta(g, factory, samples, seed);
        j["value"] = jnum(est.value);
        j["quadruple_count"] = est.quadruple_count;
        ordered_json w = ordered_json::array();
        for (const auto& p : est.witness) w.push_back(p.str());
        j["witness"] = w;
    } else {
        throw domain_error("space must be hplane or tree:<group>: " + space);
    }
    j["note"] = "empirical lower bound on the four-point constant";
    emit(j, output);
    return 0;
}

int cmd_growth(const std::string& group, std::int64_t rmax, const std::string& format,
               const std::string& output) {
    CayleySpace g(GroupDescriptor::parse(group));
    if (rmax < 1) throw domain_error("--rmax must be at least 1");
    std::vector<double> grid;
    for (std::int64_t R = 0; R <= rmax; ++R) grid.push_back(static_cast<double>(R));
    auto profile = growth_profile(
        [&](double rr) { return g.ball_count(g.identity(), static_cast<std::int64_t>(rr)); }, grid);
    if (format == "csv") {
        std::string body = "R,count\n";
        for (const auto& [rr, c] : profile.counts)
            body += std::to_string(static_cast<std::int64_t>(rr)) + "," + std::to_string(c) + "\n";
        if (output.empty()) {
            std::cout << body;
        } else {
            std::ofstream out(output);
            if (!out) throw domain_error("cannot open output file: " + output);
            out << body;
            std::cerr << "wrote " << output << "\n";
        }
        return 0;
    }
    ordered_json j;
    j["command"] = "growth";
    j["config"] = {{"group", group}, {"rmax", rmax}};
    ordered_json counts = ordered_json::array();
    for (const auto& [rr, c] : profile.counts)
        counts.push_back({{"R", static_cast<std::int64_t>(rr)}, {"count", c}});
    j["counts"] = counts;
    j["slope_estimate"] = jnum(profile.slope_estimate);
    j["last_point_estimate"] = jnum(profile.last_point_estimate);
    j["note"] = "finite-range growth estimates, not certified limits";
    emit(j, output);
    return 0;
}

int cmd_classify(const std::string& matrix, const std::string& output) {
    MobiusD m = parse_mobius(matrix).numeric;
    IsometryClass cls = classify(m);
    ordered_json j;
    j["command"] = "classify";
    j["config"] = {{"matrix", matrix}};
    j["class"] = cls.name();
    if (cls.type == IsoType::Hyperbolic) {
        j["fixed"] = {cls.fixed_minus.infinite ? ordered_json("inf")
                                               : ordered_json(jnum(cls.fixed_minus.value)),
                      cls.fixed_plus.infinite ? ordered_json("inf")
                                              : ordered_json(jnum(cls.fixed_plus.value))};
        j["length"] = jnum(translation_length(m));
    } else if (cls.type == IsoType::Parabolic) {
        j["fixed"] = {cls.fixed_plus.infinite ? ordered_json("inf")
                                              : ordered_json(jnum(cls.fixed_plus.value))};
    } else {
        j["fixed"] = ordered_json::array();
    }
    emit(j, output);
    return 0;
}

int cmd_length(const std::string& matrix, const std::string& base, std::int64_t nmax, double delta,
               const std::string& output) {
    MobiusD m = parse_mobius(matrix).numeric;
    HPoint x = parse_point(base);
    HalfPlane hp;
    Bracket b = stable_length_bracket(hp, HIsometry{m, "g"}, x, nmax, delta);
    ordered_json j;
    j["command"] = "length";
    j["config"] = {{"matrix", matrix}, {"base", base}, {"nmax", nmax}, {"delta", jnum(delta)}};
    j["bracket"] = {{"lo", jnum(b.lo)}, {"hi", jnum(b.hi)}, {"n_used", b.n_used},
                    {"delta_used", jnum(b.delta_used)}};
    IsometryClass cls = classify(m);
    j["class"] = cls.name();
    if (cls.type == IsoType::Hyperbolic) j["closed_form_length"] = jnum(translation_length(m));
    emit(j, output);
    return 0;
}

int cmd_margulis(const std::string& matrix, double R, double delta, const std::string& grid,
                 std::int64_t samples, std::uint64_t seed, const std::string& output) {
    MobiusD m = parse_mobius(matrix).numeric;
    double ell = translation_length(m);
    HGeodesic ax = axis(m);
    ordered_json j;
    j["command"] = "margulis";
    j["config"] = {{"matrix", matrix}, {"R", jnum(R)}, {"delta", jnum(delta)},
                   {"samples", samples}, {"seed", seed}};
    j["length"] = jnum(ell);
    double t0 = -2, t1 = 2, rho0 = 0, rho1 = 2;
    int nt = 3, nrho = 3;
    if (!grid.empty()) {
        if (std::sscanf(grid.c_str(), "%lf:%lf:%d,%lf:%lf:%d", &t0, &t1, &nt, &rho0, &rho1,
                        &nrho) != 6)
            throw domain_error("grid format is t0:t1:nt,rho0:rho1:nrho");
        if (nt < 1 || nrho < 1) throw domain_error("grid counts must be positive");
    }
    ordered_json pts = ordered_json::array();
    for (int i = 0; i < nt; ++i) {
        for (int k = 0; k < nrho; ++k) {
            double t = nt == 1 ? t0 : t0 + (t1 - t0) * i / (nt - 1);
            double rho = nrho == 1 ? rho0 : rho0 + (rho1 - rho0) * k / (nrho - 1);
            HPoint x = ax.offset_point(t, rho);
            auto q = displacement_radius(HalfPlane{}, HIsometry{m, "g"}, x, ell, R);
            pts.push_back({{"point", point_json(x)},
                           {"radius", jnum(q.radius)},
                           {"k", q.k_attaining},
                           {"member", q.member}});
        }
    }
    j["grid"] = pts;
    auto tube = check_tube(m, R, delta, samples, seed);
    j["collar_radius"] = R >= ell ? ordered_json(jnum(tube.collar)) : ordered_json(nullptr);
    j["tube_check"] = tube.bound.to_json();
    j["band_disagreements"] = tube.band_disagreements;
    HPoint probe = ax.offset_point(0.5, 1.0);
    j["axis_distance_check"] = check_distance_to_axis(m, probe, delta).to_json();
    bool ok = tube.bound.holds && tube.band_disagreements == 0;
    if (R / 2.0 >= ell) {
        HPoint outside = ax.offset_point(0.0, tube.collar + 0.3);
        auto sep = check_domain_separation(m, R / 2.0, R, outside);
        j["separation_check"] = sep.to_json();
        ok = ok && sep.holds;
    }
    emit(j, output);
    return ok ? 0 : 1;
}

int cmd_pingpong(const std::string& ma, const std::string& mb, int range, double delta,
                 const std::string& mode, const std::string& base, const std::string& output) {
    MobiusD a = parse_mobius(ma).numeric;
    MobiusD b = parse_mobius(mb).numeric;
    HalfPlane hp;
    ordered_json j;
    j["command"] = "pingpong";
    j["config"] = {{"a", ma}, {"b", mb}, {"range", range}, {"delta", jnum(delta)},
                   {"mode", mode}};
    if (mode == "dispatch") {
        std::vector<HPoint> domain;
        HGeodesic axa = axis(a), axb = axis(b);
        for (int i = -4; i <= 4; ++i) {
            domain.push_back(axa.offset_point(i * 0.5, 0.0));
            domain.push_back(axb.offset_point(i * 0.5, 0.0));
        }
        domain.push_back(pingpong_base(a, b));
        auto L = margulis_constant(hp, HIsometry{a, "a"}, HIsometry{b, "b"}, domain, range);
        auto cert = margulis_free_dispatch(a, b, delta, L.value, range);
        j["margulis_constant_estimate"] = jnum(L.value);
        j["status"] = cert.status_name();
        j["pair"] = cert.pair;
        j["trail"] = cert.trail;
        emit(j, output);
        return 0;
    }
    HPoint x = base.empty() ? pingpong_base(a, b) : parse_point(base);
    j["config"]["base"] = point_json(x);
    PingPongMode pm = mode == "schottky" ? PingPongMode::Schottky : PingPongMode::DemiSchottky;
    if (mode != "schottky" && mode != "demi")
        throw domain_error("mode must be schottky, demi, or dispatch");
    auto rep = ping_pong_test(hp, HIsometry{a, "a"}, HIsometry{b, "b"}, x, delta, range, pm);
    ordered_json margins = ordered_json::array();
    for (const auto& me : rep.margins)
        margins.push_back({{"p", me.p}, {"q", me.q}, {"margin", jnum(me.margin)}});
    j["margins"] = margins;
    j["verdict"] = rep.pass_range ? "PASS-range" : "FAIL";
    if (rep.fail_witness)
        j["fail_witness"] = {{"p", rep.fail_witness->first}, {"q", rep.fail_witness->second}};
    j["note"] = "PASS-range certifies the examined power range only";
    emit(j, output);
    return rep.pass_range ? 0 : 1;
}

int cmd_oracle(const std::string& ma, const std::string& mb, int maxlen, const std::string& mode,
               const std::string& output) {
    auto pa = parse_mobius(ma), pb = parse_mobius(mb);
    if (!pa.exact || !pb.exact)
        throw domain_error(
            "the relation oracle needs exact rational matrices with determinant exactly 1");
    OracleMode om = mode == "group" ? OracleMode::Group
                    : mode == "semigroup"
                        ? OracleMode::Semigroup
                        : throw domain_error("mode must be group or semigroup");
    auto rel = relation_oracle(*pa.exact, *pb.exact, maxlen, om);
    ordered_json j;
    j["command"] = "oracle";
    j["config"] = {{"a", ma}, {"b", mb}, {"maxlen", maxlen}, {"mode", mode}};
    if (rel) {
        j["result"] = "RelationFound";
        j["w1"] = rel->w1.str();
        j["w2"] = rel->w2.str();
        j["relation_word"] = (rel->w2.inverse() * rel->w1).str();
    } else {
        j["result"] = "None";
    }
    emit(j, output);
    return rel ? 3 : 0;
}

int cmd_bounds(const std::string& name, const std::string& params_text, const std::string& bgt,
               bool list, const std::string& output) {
    ordered_json j;
    j["command"] = "bounds";
    if (list) {
        j["names"] = bounds::named_bounds();
        for (const char* n : {"tits-thresholds", "tube-radii", "margulis-constants",
                              "free-semigroup-entropy", "entropy-lower-values"})
            j["names"].push_back(n);
        emit(j, output);
        return 0;
    }
    auto params = parse_params(params_text);
    auto need = [&](const char* k) {
        auto it = params.find(k);
        if (it == params.end()) throw domain_error(std::string("missing parameter: ") + k);
        return it->second;
    };
    j["config"] = {{"name", name}, {"params", params_text}};
    // value-producing formulas first, then the check catalog
    if (name == "tits-thresholds") {
        auto t = bounds::tits_dichotomy(need("delta"), need("D"));
        j["entropy_threshold"] = jnum(t.entropy_threshold);
        j["length_threshold"] = jnum(t.length_threshold);
        j["M0"] = jnum(t.m0);
        emit(j, output);
        return 0;
    }
    if (name == "tube-radii") {
        auto t = bounds::tube_radii(need("delta"), need("alpha"), need("H"), need("eps"));
        j["eps0"] = jnum(t.eps0);
        j["R_eps"] = jnum(t.r_eps);
        emit(j, output);
        return 0;
    }
    if (name == "margulis-constants") {
        auto c = bounds::margulis_constants(need("delta"), need("H"), need("D"),
                                            bounds::BgtFunction::parse(bgt));
        j["R0"] = jnum(c.r0);
        j["N0"] = c.n0.get_str();
        j["eps0"] = jnum(c.eps0);
        j["s0"] = jnum(c.s0);
        j["log_eps0"] = jnum(c.log_eps0);
        j["log_s0"] = jnum(c.log_s0);
        emit(j, output);
        return 0;
    }
    if (name == "free-semigroup-entropy") {
        j["value"] = jnum(free_semigroup_entropy_lower(need("l1"), need("l2")));
        emit(j, output);
        return 0;
    }
    if (name == "entropy-lower-values") {
        auto v = bounds::entropy_lower_cocompact(need("delta"), need("D"), need("L"));
        j["with_length"] = jnum(v.with_length);
        j["simplified"] = jnum(v.simplified);
        j["group"] = jnum(bounds::entropy_lower_group(need("delta")));
        emit(j, output);
        return 0;
    }
    auto rep = bounds::check_named_bound(name, params);
    j["report"] = rep.to_json();
    emit(j, output);
    return rep.holds ? 0 : 1;
}

int cmd_verify(std::uint64_t seed, const std::string& output) {
    auto rep = run_acceptance(seed);
    for (const auto& c : rep.criteria) {
        std::fprintf(stderr, "[%s] %2d %-40s %8.1f ms\n", c.pass ? "PASS" : "FAIL", c.id,
                     c.name.c_str(), c.elapsed_ms);
    }
    emit(rep.to_json(), output);
    return rep.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperbolic-geometry toolkit: delta estimates, growth, displacement, "
                 "Margulis domains, ping-pong freeness, and the bound catalog"};
    app.require_subcommand(1);

    std::string space = "hplane", box, group = "free:2", matrix, base = "0,1", ma, mb;
    std::string mode = "schottky", params, bgt = "const:100", name, format = "json", output;
    std::string grid;
    std::int64_t samples = 1000, rmax = 8, nmax = 1024, radius = 8;
    std::uint64_t seed = 0;
    double delta = 0.0, R = 2.0;
    int range = 3, maxlen = 8;
    bool accept_empirical = false, list = false;
    int empirical_samples = 0;

    auto* cdelta = app.add_subcommand("delta", "four-point delta estimate");
    cdelta->add_option("--space", space, "hplane or tree:<group>");
    cdelta->add_option("--samples", samples);
    cdelta->add_option("--seed", seed);
    cdelta->add_option("--box", box, "x0,x1,y0,y1 (hplane)");
    cdelta->add_option("--radius", radius, "sampling ball radius (tree)");
    cdelta->add_option("--output", output);

    auto* cgrowth = app.add_subcommand("growth", "ball counts and growth estimators");
    cgrowth->add_option("--group", group)->required();
    cgrowth->add_option("--rmax", rmax)->required();
    cgrowth->add_option("--format", format, "json or csv");
    cgrowth->add_option("--output", output);

    auto* cclassify = app.add_subcommand("classify", "Mobius classification");
    cclassify->add_option("--matrix", matrix)->required();
    cclassify->add_option("--output", output);

    auto* clength = app.add_subcommand("length", "stable translation-length bracket");
    clength->add_option("--matrix", matrix)->required();
    clength->add_option("--base", base, "base point x,y");
    clength->add_option("--nmax", nmax);
    auto* ldelta = clength->add_option("--delta", delta);
    clength->add_option("--empirical-delta-samples", empirical_samples);
    clength->add_flag("--accept-empirical-delta", accept_empirical);
    clength->add_option("--output", output);

    auto* cmarg = app.add_subcommand("margulis", "displacement radius and domain checks");
    cmarg->add_option("--matrix", matrix)->required();
    cmarg->add_option("--R", R)->required();
    auto* mdelta = cmarg->add_option("--delta", delta);
    cmarg->add_option("--empirical-delta-samples", empirical_samples);
    cmarg->add_flag("--accept-empirical-delta", accept_empirical);
    cmarg->add_option("--grid", grid, "t0:t1:nt,rho0:rho1:nrho");
    cmarg->add_option("--samples", samples);
    cmarg->add_option("--seed", seed);
    cmarg->add_option("--output", output);

    auto* cping = app.add_subcommand("pingpong", "Schottky and demi-Schottky position tests");
    cping->add_option("--a", ma)->required();
    cping->add_option("--b", mb)->required();
    cping->add_option("--range", range);
    auto* pdelta = cping->add_option("--delta", delta);
    cping->add_option("--empirical-delta-samples", empirical_samples);
    cping->add_flag("--accept-empirical-delta", accept_empirical);
    cping->add_option("--mode", mode, "schottky | demi | dispatch");
    cping->add_option("--base", base, "base point x,y (default: perpendicular midpoint)");
    cping->add_option("--seed", seed);
    cping->add_option("--output", output);

    auto* coracle = app.add_subcommand("oracle", "exact relation search");
    coracle->add_option("--a", ma)->required();
    coracle->add_option("--b", mb)->required();
    coracle->add_option("--maxlen", maxlen)->required();
    coracle->add_option("--mode", mode, "group | semigroup")->required();
    coracle->add_option("--output", output);

    auto* cbounds = app.add_subcommand("bounds", "formula catalog and named checks");
    cbounds->add_option("--name", name);
    cbounds->add_option("--params", params, "k=v,k=v,...");
    cbounds->add_option("--bgt", bgt, "BGT mock, e.g. const:100");
    cbounds->add_flag("--list", list);
    cbounds->add_option("--output", output);

    auto* cverify = app.add_subcommand("verify", "run the acceptance suite");
    cverify->add_option("--seed", seed);
    cverify->add_option("--output", output);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cdelta->parsed()) return cmd_delta(space, samples, seed, box, radius, output);
        if (cgrowth->parsed()) return cmd_growth(group, rmax, format, output);
        if (cclassify->parsed()) return cmd_classify(matrix, output);
        if (clength->parsed()) {
            double d = resolve_delta(ldelta, delta, empirical_samples, accept_empirical, seed);
            return cmd_length(matrix, base, nmax, d, output);
        }
        if (cmarg->parsed()) {
            double d = resolve_delta(mdelta, delta, empirical_samples, accept_empirical, seed);
            return cmd_margulis(matrix, R, d, grid, samples, seed, output);
        }
        if (cping->parsed()) {
            double d = resolve_delta(pdelta, delta, empirical_samples, accept_empirical, seed);
            std::string b = cping->count("--base") ? base : "";
            return cmd_pingpong(ma, mb, range, d, mode, b, output);
        }
        if (coracle->parsed()) return cmd_oracle(ma, mb, maxlen, mode, output);
        if (cbounds->parsed()) {
            if (!list && name.empty()) throw domain_error("provide --name or --list");
            return cmd_bounds(name, params, bgt, list, output);
        }
        if (cverify->parsed()) return cmd_verify(seed, output);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
