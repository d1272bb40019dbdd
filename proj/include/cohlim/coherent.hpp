#pragma once

#include <complex>

#include "cohlim/rep.hpp"

namespace cohlim {

/// Pseudo-spin coherent state |τ> of a representation.
struct CoherentSpec {
    RepParams rep;
    cplx tau;
};

/// Default bound on the probability mass discarded by truncation.
inline constexpr double kTailTolerance = 1e-12;

/// log[Γ(2J+n) / (n! Γ(2J))], the log of |<n|τ>|² / ((1-|τ|²)^{2J} |τ|^{2n}).
double log_expansion_weight(int n, double J);

/// <n|τ> = (1-|τ|²)^J sqrt(Γ(2J+n)/(n! Γ(2J))) τ^n, evaluated in log domain.
cplx coherent_amplitude(int n, cplx tau, double J);

/// Geometric upper bound on Σ_{m > cutoff} |<m|τ>|².
double tail_bound(int cutoff, double abs_tau, double J);

/// Smallest cutoff whose tail bound is below `tail_tol`.
int tail_cutoff(double abs_tau, double J, double tail_tol = kTailTolerance);

/// Representation with the cutoff chosen by the tail rule plus `extra` rows.
RepParams rep_for_state(int n_particles, double k, cplx tau, int extra = 0,
                        double tail_tol = kTailTolerance);

/// Truncated coherent vector. Throws TruncationError when the tail bound at the
/// rep's cutoff exceeds `tail_tol`.
FockVector coherent_vector(const CoherentSpec& spec, double tail_tol = kTailTolerance);

/// <τ|τ'> = (1-|τ|²)^J (1-|τ'|²)^J / (1 - τ' τ*)^{2J}.
cplx overlap_closed(cplx tau, cplx tau2, double J);

/// Δ(τ, τ') = -k [ln(1-|τ'|²) + ln(1-|τ|²) - 2 ln(1 - τ' τ*)], so that
/// <τ|τ'>_N = exp(-N Δ) at J = N k.
cplx delta_exponent(cplx tau, cplx tau2, double k);

/// <ψ|X|ψ>.
cplx symbol(const OperatorMatrix& x, const FockVector& state);
cplx symbol(const OperatorMatrix& x, const CoherentSpec& spec);

/// <τ|K|τ'> / <τ|τ'> for K in {K0, K1, K2} (also Kplus, Kminus):
///   K0: k (1 + τ' τ*)/(1 - τ' τ*)
///   K1: k (τ' + τ*)/(1 - τ' τ*)
///   K2: i k (τ' - τ*)/(1 - τ' τ*)
cplx matrix_element_closed(Generator name, cplx tau, cplx tau2, double k);

enum class QuadratureRule { GaussLegendre, GaussJacobi };

struct QuadratureParams {
    int order = 64;
    QuadratureRule rule = QuadratureRule::GaussLegendre;
};

/// max_{n,n' <= max_n} | ∫ dμ_J <n|τ><τ|n'> - δ_{nn'} |, radial Gauss rule in
/// x = |τ|² and an angular trapezoid rule that is exact for the integrand.
double identity_resolution_check(const RepParams& rep, int max_n, const QuadratureParams& quadrature = {});

}  // namespace cohlim
