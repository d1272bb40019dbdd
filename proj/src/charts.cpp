#include "cohlim/charts.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cohlim/error.hpp"

namespace cohlim {

using cd = std::complex<double>;

Chart parse_chart(std::string_view name) {
    static constexpr std::pair<std::string_view, Chart> table[] = {
        {"xi", Chart::Xi},       {"zeta", Chart::Zeta},           {"tau", Chart::Tau},
        {"polar", Chart::Polar}, {"halfplane", Chart::HalfPlane}, {"canonical", Chart::Canonical},
    };
    for (const auto& [n, c] : table) {
        if (n == name) return c;
    }
    throw DomainError("unknown chart '" + std::string(name) + "'");
}

std::string_view chart_name(Chart c) {
    switch (c) {
        case Chart::Xi: return "xi";
        case Chart::Zeta: return "zeta";
        case Chart::Tau: return "tau";
        case Chart::Polar: return "polar";
        case Chart::HalfPlane: return "halfplane";
        case Chart::Canonical: return "canonical";
    }
    return "?";
}

void validate(const ChartPoint& p) {
    if (!std::isfinite(p.coords[0]) || !std::isfinite(p.coords[1])) {
        throw DomainError("coordinates must be finite");
    }
    switch (p.chart) {
        case Chart::Tau:
            if (!(std::abs(p.as_complex()) < 1.0)) throw DomainError("tau modulus must be < 1");
            break;
        case Chart::Polar:
            if (p.coords[0] < 0.0) throw DomainError("polar rho must be >= 0");
            break;
        case Chart::HalfPlane:
            if (!(p.coords[0] > 0.0)) throw DomainError("halfplane rho must be > 0");
            break;
        case Chart::Canonical:
            if (!(p.coords[1] > 0.0)) throw DomainError("canonical w must be > 0");
            break;
        case Chart::Xi:
        case Chart::Zeta:
            break;
    }
}

namespace {

double require_k(std::optional<double> k) {
    if (!k) throw DomainError("k is required for the canonical chart");
    if (!(*k > 0.0)) throw DomainError("k must be > 0");
    return *k;
}

// 1 - |τ|² without cancellation near the boundary.
double one_minus_abs2(cd tau) {
    double r = std::abs(tau);
    return (1.0 - r) * (1.0 + r);
}

cd half_plane_to_tau(double varrho, double v) {
    const cd i{0.0, 1.0};
    cd z{varrho, -v};
    return i * (z - 1.0) / (z + 1.0);
}

cd to_tau(const ChartPoint& p, std::optional<double> k) {
    const double a = p.coords[0];
    const double b = p.coords[1];
    switch (p.chart) {
        case Chart::Tau: return {a, b};
        case Chart::Xi: {
            cd xi{a, b};
            double m = std::abs(xi);
            if (m == 0.0) return {0.0, 0.0};
            // iξ = (ρ/2) e^{-iφ}, ρ = 2|ξ|
            return std::tanh(m) * (cd{0.0, 1.0} * xi / m);
        }
        case Chart::Zeta: {
            cd zeta{a, b};
            return zeta / std::sqrt(1.0 + std::norm(zeta));
        }
        case Chart::Polar: return std::tanh(a / 2.0) * std::polar(1.0, -b);
        case Chart::HalfPlane: return half_plane_to_tau(a, b);
        case Chart::Canonical: return half_plane_to_tau(require_k(k) / b, a);
    }
    throw DomainError("unknown chart");
}

ChartPoint from_tau(cd tau, Chart target, std::optional<double> k) {
    const cd i{0.0, 1.0};
    switch (target) {
        case Chart::Tau: return ChartPoint::tau(tau);
        case Chart::Zeta: {
            cd zeta = tau / std::sqrt(one_minus_abs2(tau));
            return {Chart::Zeta, {zeta.real(), zeta.imag()}};
        }
        case Chart::Polar: {
            double r = std::abs(tau);
            double rho = 2.0 * std::atanh(r);
            double phi = r == 0.0 ? 0.0 : -std::arg(tau);
            if (phi < 0.0) phi += 2.0 * std::numbers::pi;
            if (phi >= 2.0 * std::numbers::pi) phi -= 2.0 * std::numbers::pi;
            return {Chart::Polar, {rho, phi}};
        }
        case Chart::HalfPlane:
        case Chart::Canonical: {
            double denom = std::norm(i - tau);
            double varrho = one_minus_abs2(tau) / denom;
            double v = 2.0 * tau.real() / denom;
            if (target == Chart::HalfPlane) return {Chart::HalfPlane, {varrho, v}};
            double kk = require_k(k);
            return ChartPoint::canonical(v, kk * denom / one_minus_abs2(tau));
        }
        case Chart::Xi: throw DomainError("the xi chart is accepted as input only");
    }
    throw DomainError("unknown chart");
}

}  // namespace

ChartPoint convert(const ChartPoint& p, Chart target, std::optional<double> k) {
    validate(p);
    if (p.chart == Chart::Canonical || target == Chart::Canonical) require_k(k);
    if (target == Chart::Xi) throw DomainError("the xi chart is accepted as input only");
    if (p.chart == target && target != Chart::Polar) return p;
    cd tau = to_tau(p, k);
    if (!(std::abs(tau) < 1.0)) throw DomainError("point maps outside the unit disk");
    return from_tau(tau, target, k);
}

double metric_coefficient(const ChartPoint& p, double k) {
    validate(p);
    if (!(k > 0.0)) throw DomainError("k must be > 0");
    switch (p.chart) {
        case Chart::Tau: {
            double d = one_minus_abs2(p.as_complex());
            return 2.0 * k / (d * d);
        }
        case Chart::HalfPlane: return (k / 2.0) / (p.coords[0] * p.coords[0]);
        default: throw DomainError("metric_coefficient supports the tau and halfplane charts only");
    }
}

double measure_density(cd tau, double J) {
    if (!(J > 0.5)) throw DomainError("J must be > 1/2");
    if (!(std::abs(tau) < 1.0)) throw DomainError("tau modulus must be < 1");
    double d = one_minus_abs2(tau);
    return (2.0 * J - 1.0) / std::numbers::pi / (d * d);
}

double kahler_potential(cd tau, double k) {
    if (!(std::abs(tau) < 1.0)) throw DomainError("tau modulus must be < 1");
    return -2.0 * k * std::log(one_minus_abs2(tau));
}

cd zeta_from_xi(cd xi, Branch branch) {
    double m = std::abs(xi);
    if (m == 0.0) return xi;
    return xi * (branch == Branch::Compact ? std::sin(m) : std::sinh(m)) / m;
}

cd tau_from_zeta(cd zeta, Branch branch) {
    double s = std::norm(zeta);
    if (branch == Branch::Compact) {
        if (!(s < 1.0)) throw DomainError("compact branch requires |zeta| < 1");
        return zeta / std::sqrt(1.0 - s);
    }
    return zeta / std::sqrt(1.0 + s);
}

}  // namespace cohlim
