#include "cohlim/coherent.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "cohlim/charts.hpp"
#include "cohlim/error.hpp"
#include "cohlim/quadrature.hpp"

namespace cohlim {

double log_expansion_weight(int n, double J) {
    return std::lgamma(2.0 * J + n) - std::lgamma(n + 1.0) - std::lgamma(2.0 * J);
}

cplx coherent_amplitude(int n, cplx tau, double J) {
    double r = std::abs(tau);
    if (r == 0.0) return n == 0 ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
    double log_mag = J * std::log1p(-r * r) + 0.5 * log_expansion_weight(n, J) + n * std::log(r);
    return std::polar(std::exp(log_mag), n * std::arg(tau));
}

double tail_bound(int cutoff, double abs_tau, double J) {
    if (abs_tau == 0.0) return 0.0;
    double r2 = abs_tau * abs_tau;
    // p_m / p_{m-1} = r² (2J + m - 1)/m, monotone in m; bound it for all m > cutoff.
    double ratio = r2 * std::max(1.0, (2.0 * J + cutoff) / (cutoff + 1.0));
    if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
    double log_p = 2.0 * J * std::log1p(-r2) + log_expansion_weight(cutoff, J) + 2.0 * cutoff * std::log(abs_tau);
    return std::exp(log_p) * ratio / (1.0 - ratio);
}

int tail_cutoff(double abs_tau, double J, double tail_tol) {
    if (!(abs_tau < 1.0)) throw DomainError("tau modulus must be < 1");
    constexpr int kMaxCutoff = 1 << 20;
    for (int n = 0; n < kMaxCutoff; ++n) {
        if (tail_bound(n, abs_tau, J) <= tail_tol) return n;
    }
    throw TruncationError("no cutoff below 2^20 satisfies the tail tolerance");
}

RepParams rep_for_state(int n_particles, double k, cplx tau, int extra, double tail_tol) {
    RepParams rep{n_particles, k, 0};
    rep.validate();
    rep.cutoff = tail_cutoff(std::abs(tau), rep.J(), tail_tol) + extra;
    return rep;
}

FockVector coherent_vector(const CoherentSpec& spec, double tail_tol) {
    spec.rep.validate();
    const double r = std::abs(spec.tau);
    if (!(r < 1.0)) throw DomainError("tau modulus must be < 1");
    const double J = spec.rep.J();
    const double bound = tail_bound(spec.rep.cutoff, r, J);
    if (!(bound <= tail_tol)) {
        throw TruncationError("|tau| = " + std::to_string(r) + " too close to 1 for cutoff " +
                              std::to_string(spec.rep.cutoff) + " (tail bound " + std::to_string(bound) + ")");
    }
    FockVector out;
    out.rep = spec.rep;
    out.coefficients.resize(spec.rep.dim());
    for (int n = 0; n < spec.rep.dim(); ++n) out.coefficients(n) = coherent_amplitude(n, spec.tau, J);
    out.norm_deficit = 1.0 - out.coefficients.squaredNorm();
    return out;
}

cplx overlap_closed(cplx tau, cplx tau2, double J) {
    if (!(std::abs(tau) < 1.0) || !(std::abs(tau2) < 1.0)) throw DomainError("tau modulus must be < 1");
    cplx log_value = J * (std::log1p(-std::norm(tau)) + std::log1p(-std::norm(tau2))) -
                     2.0 * J * std::log(1.0 - tau2 * std::conj(tau));
    return std::exp(log_value);
}

cplx delta_exponent(cplx tau, cplx tau2, double k) {
    if (!(std::abs(tau) < 1.0) || !(std::abs(tau2) < 1.0)) throw DomainError("tau modulus must be < 1");
    return -k * (std::log1p(-std::norm(tau2)) + std::log1p(-std::norm(tau)) -
                 2.0 * std::log(1.0 - tau2 * std::conj(tau)));
}

cplx symbol(const OperatorMatrix& x, const FockVector& state) {
    if (!(x.rep() == state.rep)) throw DomainError("operator and state belong to different representations");
    return state.coefficients.dot(x.entries() * state.coefficients);
}

cplx symbol(const OperatorMatrix& x, const CoherentSpec& spec) {
    if (!(x.rep() == spec.rep)) throw DomainError("operator and state belong to different representations");
    return symbol(x, coherent_vector(spec));
}

cplx matrix_element_closed(Generator name, cplx tau, cplx tau2, double k) {
    if (!(std::abs(tau) < 1.0) || !(std::abs(tau2) < 1.0)) throw DomainError("tau modulus must be < 1");
    const cplx i{0.0, 1.0};
    const cplx tc = std::conj(tau);
    const cplx den = 1.0 - tau2 * tc;
    const cplx k0 = k * (1.0 + tau2 * tc) / den;
    const cplx k1 = k * (tau2 + tc) / den;
    const cplx k2 = i * k * (tau2 - tc) / den;
    switch (name) {
        case Generator::K0: return k0;
        case Generator::K1: return k1;
        case Generator::K2: return k2;
        case Generator::Kplus: return 2.0 * k * tc / den;
        case Generator::Kminus: return 2.0 * k * tau2 / den;
        case Generator::A: return k0 + k2;
        case Generator::B: return 2.0 * k1;
        case Generator::C: return k0 - k2;
        case Generator::Casimir: break;
    }
    throw DomainError("no closed-form matrix element for '" + std::string(generator_name(name)) + "'");
}

double identity_resolution_check(const RepParams& rep, int max_n, const QuadratureParams& quadrature) {
    rep.validate_normalizable();
    if (max_n < 0 || max_n > rep.cutoff) throw DomainError("max_n must lie in [0, cutoff]");
    const double J = rep.J();
    const bool jacobi = quadrature.rule == QuadratureRule::GaussJacobi;
    const GaussRule radial = jacobi ? gauss_jacobi_unit(quadrature.order, 2.0 * J - 2.0)
                                    : gauss_legendre_unit(quadrature.order);
    // Trapezoid in φ with more points than the largest |n - n'| is exact.
    const int angles = 2 * max_n + 2;
    const int dim = max_n + 1;
    Matrix integral = Matrix::Zero(dim, dim);
    std::vector<cplx> amp(dim);
    for (std::size_t q = 0; q < radial.nodes.size(); ++q) {
        const double x = radial.nodes[q];
        const double r = std::sqrt(x);
        // d(Re τ) d(Im τ) = (1/2) dx dφ
        const double radial_weight = 0.5 * radial.weights[q] * (2.0 * std::numbers::pi / angles);
        for (int j = 0; j < angles; ++j) {
            const cplx tau = std::polar(r, 2.0 * std::numbers::pi * j / angles);
            double density;
            if (jacobi) {
                // (1-x)^{2J-2} is carried by the rule; amplitudes without their (1-x)^J prefactor.
                density = (2.0 * J - 1.0) / std::numbers::pi;
                for (int n = 0; n < dim; ++n) {
                    double log_mag = 0.5 * log_expansion_weight(n, J) + (r > 0.0 ? n * std::log(r) : 0.0);
                    amp[n] = (r == 0.0 && n > 0) ? cplx{} : std::polar(std::exp(log_mag), n * std::arg(tau));
                }
            } else {
                density = measure_density(tau, J);
                for (int n = 0; n < dim; ++n) amp[n] = coherent_amplitude(n, tau, J);
            }
            const double w = radial_weight * density;
            for (int n = 0; n < dim; ++n) {
                for (int m = 0; m < dim; ++m) integral(n, m) += w * amp[n] * std::conj(amp[m]);
            }
        }
    }
    return (integral - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

}  // namespace cohlim
