#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gromolab/report.hpp"

namespace gromolab::bounds {

/// Opaque monotone map p -> N(p) on positive integers. The argument the
/// catalog feeds it can be astronomically large, so it travels as an exact
/// big integer; value >= 1 and monotonicity are checked on the queried
/// values.
class BgtFunction {
public:
    BgtFunction(std::function<mpz_class(const mpz_class&)> f, std::string name);

    mpz_class operator()(const mpz_class& p) const;
    const std::string& name() const { return name_; }

    static BgtFunction constant(unsigned long v);
    // "const:100" (mocks; the map itself is not explicit in the literature)
    static BgtFunction parse(const std::string& text);

private:
    std::function<mpz_class(const mpz_class&)> f_;
    std::string name_;
    mutable std::vector<std::pair<mpz_class, mpz_class>> queried_;
};

/// Exact floor(3^12 e^{490 H (D + 2 delta)}) + 1 via MPFR at sufficient
/// precision.
mpz_class bgt_argument(double delta, double H, double D);

struct EntropyLowerCocompact {
    double with_length;  // ln 2 / (L + 14 delta + 4 D)
    double simplified;   // ln 2 / (16 D + 26 delta)
};
EntropyLowerCocompact entropy_lower_cocompact(double delta, double D, double L);

double entropy_lower_group(double delta);  // ln 2 / (26 delta + 16)

struct TitsThresholds {
    double entropy_threshold;  // 1 / (750 delta)
    double length_threshold;   // 3^-34 delta M0 e^{-4 M0 / 29}
    double m0;                 // max(20 (D/delta + 2), 720)
};
TitsThresholds tits_dichotomy(double delta, double D);

struct MargulisConstants {
    double r0 = 0.0;      // 20 (D + 2 delta)
    mpz_class n0;         // N(floor(3^12 e^{490 H (D+2 delta)}) + 1)
    double eps0 = 0.0;    // R0 / N0
    double s0 = 0.0;      // 2 * 3^-12 e^{-(N0+10)(13 H R0 + 3)/2} R0
    double log_eps0 = 0.0;
    double log_s0 = 0.0;  // natural logs survive underflow of the linear values
};
MargulisConstants margulis_constants(double delta, double H, double D, const BgtFunction& N);

/// (1/(N1 H)) max(ln 2, ln(1/(N1 H sys))) with N1 = 1 + floor(13 delta/alpha).
double collar_lower(double delta, double alpha, double H, double sys);

/// (1/(N1 H)) e^{-2 N1 H D}.
double systole_global_lower(double delta, double alpha, double H, double D);

/// ln 2 / (H (floor(13 delta/alpha) + 1)).
double diastole_lower(double delta, double alpha, double H);

struct TubeRadii {
    double eps0;   // alpha / (2 H (13 delta + alpha))
    double r_eps;  // eps0 ln(2 eps0 / eps), for eps <= eps0
};
TubeRadii tube_radii(double delta, double alpha, double H, double eps);

/// 21 delta / (N(20 delta) + 2).
double ht_constant_from_acylindrical(double delta, double n_at_20delta);

/// Catalog dispatcher pairing measured quantities with the formulas; throws
/// domain_error for unknown names or missing parameters.
BoundReport check_named_bound(const std::string& name,
                              const std::map<std::string, double>& params);

std::vector<std::string> named_bounds();

}  // namespace gromolab::bounds
