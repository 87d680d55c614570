#include "blocksdp/bounds.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "blocksdp/errors.hpp"

namespace blocksdp {

namespace {

constexpr int kMaxBoundN = 4096;

void require_nd(int n, int d) {
    if (d < 1) throw InvalidArgument("d must be at least 1");
    if (n < d) throw InvalidArgument("n must be at least d");
    if (n > kMaxBoundN) throw InvalidArgument("n is too large for exact bound arithmetic");
}

unsigned exponent(int n, int d) { return static_cast<unsigned>((n - 1) / d + 1); }

BigInt big_pow(std::uint64_t base, unsigned e) { return boost::multiprecision::pow(BigInt(base), e); }

std::string fixed(double v, int digits) {
    std::ostringstream s;
    s << std::setprecision(digits) << v;
    return s.str();
}

}  // namespace

BigInt rho_upper_exact(int n, int d, std::uint64_t k) {
    require_nd(n, d);
    if (k < 1) throw InvalidArgument("k must be at least 1");
    return big_pow(k, exponent(n, d));
}

double rho_upper(int n, int d, std::uint64_t k) { return rho_upper_exact(n, d, k).convert_to<double>(); }

Rational lift_lower_exact(int n, int d) {
    require_nd(n, d);
    if (d > 40) throw InvalidArgument("d is too large");
    const std::uint64_t k = static_cast<std::uint64_t>(big_pow(3, static_cast<unsigned>(d)) - 1);
    return Rational(big_pow(3, static_cast<unsigned>(n)), rho_upper_exact(n, d, k));
}

double lift_lower(int n, int d) { return lift_lower_exact(n, d).convert_to<double>(); }

TheoremConstants theorem_constants(int d) {
    if (d < 1) throw InvalidArgument("d must be at least 1");
    const double dd = static_cast<double>(d);
    const double three_d = std::pow(3.0, dd);
    TheoremConstants out;
    out.kappa = std::pow(three_d - 1.0, -(1.0 - 1.0 / dd));
    out.c = std::pow(1.0 - 1.0 / three_d, -1.0 / dd);
    out.t = std::pow(three_d - 1.0, 1.0 / dd);
    return out;
}

RefinedConstants refined_d2_constants() { return {1.0 / std::sqrt(7.0), std::sqrt(9.0 / 7.0)}; }

double refined_d2_lower(int n) {
    if (n < 2) throw InvalidArgument("refined d = 2 bound needs n >= 2");
    const auto rc = refined_d2_constants();
    return rc.kappa * std::pow(9.0 / 7.0, n / 2.0);
}

Rational refined_d2_floor_bound(int n) {
    if (n < 2) throw InvalidArgument("refined d = 2 bound needs n >= 2");
    return Rational(big_pow(3, static_cast<unsigned>(n)), rho_upper_exact(n, 2, 7));
}

BoundReport make_bound_report(int n, int d) {
    require_nd(n, d);
    BoundReport r;
    r.n = n;
    r.d = d;
    r.k = static_cast<std::uint64_t>(big_pow(3, static_cast<unsigned>(d)) - 1);
    r.rho_upper = rho_upper_exact(n, d, r.k);
    r.lift_lower = lift_lower_exact(n, d);
    r.lift_lower_value = r.lift_lower.convert_to<double>();
    r.general = theorem_constants(d);
    r.general_closed_form = r.general.kappa * std::pow(r.general.c, static_cast<double>(n));
    if (d == 2) {
        r.refined = refined_d2_constants();
        r.refined_lower = refined_d2_lower(n);
    }
    return r;
}

std::string to_string(const Rational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string bound_report_to_json(const BoundReport& r) {
    nlohmann::ordered_json doc;
    doc["n"] = r.n;
    doc["d"] = r.d;
    doc["k"] = r.k;
    doc["rho_upper"] = r.rho_upper.str();
    doc["rho_upper_value"] = r.rho_upper.convert_to<double>();
    doc["lift_lower"] = to_string(r.lift_lower);
    doc["lift_lower_value"] = r.lift_lower_value;
    doc["general"] = {{"kappa", r.general.kappa}, {"c", r.general.c}, {"t", r.general.t},
                      {"kappa_c_pow_n", r.general_closed_form}};
    if (r.refined) {
        doc["refined_d2"] = {{"kappa", r.refined->kappa}, {"c", r.refined->c}, {"lower", *r.refined_lower}};
    } else {
        doc["refined_d2"] = nullptr;
    }
    return doc.dump();
}

std::string bound_report_to_text(const BoundReport& r) {
    std::ostringstream out;
    auto row = [&](const std::string& key, const std::string& value) {
        out << std::left << std::setw(26) << key << value << '\n';
    };
    row("n", std::to_string(r.n));
    row("d", std::to_string(r.d));
    row("k = 3^d - 1", std::to_string(r.k));
    row("rho upper", r.rho_upper.str());
    row("lift lower (exact)", to_string(r.lift_lower));
    row("lift lower", fixed(r.lift_lower_value, 17));
    row("general kappa(d)", fixed(r.general.kappa, 17));
    row("general c(d)", fixed(r.general.c, 17));
    row("t(d)", fixed(r.general.t, 17));
    row("kappa * c^n", fixed(r.general_closed_form, 17));
    if (r.refined) {
        row("refined d=2 kappa", fixed(r.refined->kappa, 17));
        row("refined d=2 c", fixed(r.refined->c, 17));
        row("refined d=2 lower", fixed(*r.refined_lower, 17));
    }
    return out.str();
}

}  // namespace blocksdp
