#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cohlim/coherent.hpp"
#include "cohlim/hamiltonian.hpp"
#include "cohlim/observable.hpp"
#include "cohlim/rep.hpp"

namespace cohlim {

/// Least-squares line through (x, y); residual is the RMS deviation.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};

/// Fits log y against log N. Needs at least 4 points with y > 0.
LineFit fit_loglog(std::span<const int> n_values, std::span<const double> y);
/// Fits log y against N.
LineFit fit_semilog(std::span<const int> n_values, std::span<const double> y);

/// One study over an increasing ladder of N.
struct SweepReport {
    std::string study;
    std::vector<int> n_values;
    std::vector<double> values;
    std::vector<double> references;
    std::vector<double> abs_errors;
    bool fitted = false;  ///< false when the data is exact (nothing to fit)
    LineFit fit;
    double slope_low = 0.0;
    double slope_high = 0.0;
    bool pass = false;
    std::string note;
};

/// Sets pass/fit on a report whose abs_errors should vanish: exact when all
/// errors are <= exact_tol, otherwise the log-log slope must lie in [low, high].
void finalize_decay_report(SweepReport& report, double exact_tol, double low, double high);

/// Generator name or polynomial p(A, B, C) (no factor N).
using OperatorSpec = std::variant<Generator, HamiltonianPolynomial>;

OperatorMatrix operator_matrix(const RepParams& rep, const OperatorSpec& spec);
PhaseObservable classical_symbol(const OperatorSpec& spec, double k);
int operator_degree(const OperatorSpec& spec);

/// Representation used for symbol studies at (N, k, τ): tail-rule cutoff at
/// 1e-15 plus a margin for operators of the given degree.
RepParams study_rep(int n_particles, double k, cplx tau, int degree);

/// Overlap decay: |<τ|τ'>_N| against exp(-N Re Δ); semilog slope is -Re Δ.
SweepReport overlap_decay_study(cplx tau, cplx tau2, double k, const std::vector<int>& n_values);

/// Large-N factorization: |(XY)(Ω) - X(Ω) Y(Ω)| per N, expected
/// to vanish like 1/N (slope band [-1.15, -0.85]) or be identically zero.
SweepReport factorization_defect(const OperatorSpec& x, const OperatorSpec& y, cplx tau, double k,
                                 const std::vector<int>& n_values);

/// symbol(iN[X, Y]) against {x, y}(v, w). Exact for the basic triple,
/// O(1/N) for composite operators.
SweepReport commutator_correspondence(const OperatorSpec& x, const OperatorSpec& y, cplx tau, double k,
                                      const std::vector<int>& n_values);

struct InjectivityReport {
    int rank = 0;
    std::vector<double> singular_values;
    std::vector<std::pair<int, int>> duplicate_pairs;  ///< grid indices with equal symbol triples
    bool pass = false;
};

/// Injectivity proxy: symbols of {I, K0, K1, K2} sampled on the grid have rank 4,
/// and distinct τ give distinct (K0, K1, K2) triples.
InjectivityReport symbol_injectivity_check(std::span<const cplx> grid, const RepParams& rep);

/// True when every sampled symbol of z vanishes (within tol) on the grid.
bool is_zero_symbol(const OperatorMatrix& z, std::span<const cplx> grid, double tol = 1e-12);

/// h_cl(v, w) = h(w, 2vw, v²w + k²/w), exact.
PhaseObservable classical_hamiltonian(const HamiltonianPolynomial& h, double k);

/// Classical Hamiltonian limit: (1/N) H_N(Ω) against h_cl(v, w).
SweepReport hamiltonian_limit_check(const HamiltonianPolynomial& h, cplx tau, double k,
                                    const std::vector<int>& n_values);

}  // namespace cohlim
