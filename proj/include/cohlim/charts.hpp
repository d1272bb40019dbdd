#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>

namespace cohlim {

/// Coordinate charts on the pseudosphere PS² and the Poincaré half plane.
///  Xi        (Re ξ, Im ξ), input only, with iξ = (ρ/2) e^{-iφ}
///  Zeta      (Re ζ, Im ζ), ζ = sinh(ρ/2) e^{-iφ}
///  Tau       (Re τ, Im τ), τ = tanh(ρ/2) e^{-iφ}, |τ| < 1
///  Polar     (ρ >= 0, φ in [0, 2π))
///  HalfPlane (ϱ > 0, v), z = ϱ - i v = (i + τ)/(i - τ)
///  Canonical (v, w > 0), w = k/ϱ
enum class Chart { Xi, Zeta, Tau, Polar, HalfPlane, Canonical };

Chart parse_chart(std::string_view name);
std::string_view chart_name(Chart c);

struct ChartPoint {
    Chart chart = Chart::Tau;
    std::array<double, 2> coords{0.0, 0.0};

    std::complex<double> as_complex() const { return {coords[0], coords[1]}; }

    static ChartPoint tau(std::complex<double> t) { return {Chart::Tau, {t.real(), t.imag()}}; }
    static ChartPoint canonical(double v, double w) { return {Chart::Canonical, {v, w}}; }
};

/// Throws DomainError when the point violates its chart's domain.
void validate(const ChartPoint& p);

/// Same geometric point in `target`. `k` is required when either chart is
/// Canonical. Xi is not a valid target.
ChartPoint convert(const ChartPoint& p, Chart target, std::optional<double> k = std::nullopt);

/// Conformal factor of the natural metric: 2k/(1-|τ|²)² in the Tau chart
/// (ds² = g dτ dτ*), R²/ϱ² with R² = k/2 in the HalfPlane chart.
double metric_coefficient(const ChartPoint& p, double k);

/// Density of dμ_J with respect to d(Re τ) d(Im τ): (2J-1)/π / (1-|τ|²)².
double measure_density(std::complex<double> tau, double J);

/// Kähler potential F(τ, τ*) = -2k log(1 - |τ|²) of the natural metric.
double kahler_potential(std::complex<double> tau, double k);

/// Generic coset coordinate formulas. Compact branches are kept for
/// completeness only.
enum class Branch { Compact, Noncompact };
std::complex<double> zeta_from_xi(std::complex<double> xi, Branch branch);
std::complex<double> tau_from_zeta(std::complex<double> zeta, Branch branch);

}  // namespace cohlim
