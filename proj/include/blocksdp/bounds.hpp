#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace blocksdp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// k^(floor((n-1)/d) + 1), the cap on val for atoms once a k-uniform covering
/// exists at depth d. Requires n >= d >= 1 and k >= 1.
BigInt rho_upper_exact(int n, int d, std::uint64_t k);
double rho_upper(int n, int d, std::uint64_t k);

/// 3^n / (3^d - 1)^(floor((n-1)/d) + 1).
Rational lift_lower_exact(int n, int d);
double lift_lower(int n, int d);

/// kappa(d) = (3^d - 1)^-(1 - 1/d), c(d) = (1 - 3^-d)^(-1/d), t(d) = (3^d - 1)^(1/d).
struct TheoremConstants {
    double kappa = 0.0;
    double c = 0.0;
    double t = 0.0;
};
TheoremConstants theorem_constants(int d);

/// Constants from the seven-rectangle analysis at d = 2: 1/sqrt(7), sqrt(9/7).
struct RefinedConstants {
    double kappa = 0.0;
    double c = 0.0;
};
RefinedConstants refined_d2_constants();

/// (1/sqrt 7) * (9/7)^(n/2), n >= 2.
double refined_d2_lower(int n);
/// 3^n / 7^(floor((n-1)/2) + 1), the bound the closed form above relaxes.
Rational refined_d2_floor_bound(int n);

struct BoundReport {
    int n = 0;
    int d = 0;
    std::uint64_t k = 0;  // 3^d - 1
    BigInt rho_upper;
    Rational lift_lower;
    double lift_lower_value = 0.0;
    TheoremConstants general;
    double general_closed_form = 0.0;  // kappa * c^n
    std::optional<RefinedConstants> refined;
    std::optional<double> refined_lower;
};

BoundReport make_bound_report(int n, int d);
std::string bound_report_to_json(const BoundReport& r);
std::string bound_report_to_text(const BoundReport& r);

std::string to_string(const Rational& q);

}  // namespace blocksdp
