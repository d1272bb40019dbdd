#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "cohlim/rep.hpp"

namespace cohlim::nbody {

using SparseOp = Eigen::SparseMatrix<cplx>;

/// N explicit one-dimensional modes, each truncated to d Fock levels.
struct MultiOscRep {
    int n_particles = 1;
    int per_mode_cutoff = 12;
    std::size_t memory_ceiling = 20736;

    std::size_t dimension() const;
    /// Largest total excitation of the safe subspace: d - 4.
    int safe_level() const { return per_mode_cutoff - 4; }
    /// Throws DomainError unless 1 <= N <= 3, d >= 5 and d^N <= ceiling.
    void validate() const;
};

/// Mode operators with [a_i, a_j†] = δ_ij / N, q = (a† + a)/√2, p = i(a† - a)/√2.
struct ModeOperators {
    std::vector<SparseOp> a;
    std::vector<SparseOp> a_dag;
    std::vector<SparseOp> q;
    std::vector<SparseOp> p;
};

ModeOperators build_mode_operators(const MultiOscRep& rep);

struct InvariantSet {
    SparseOp A, B, C;
    SparseOp K0, K1, K2;
    SparseOp casimir;  ///< K0² - K1² - K2²
    SparseOp l_squared;  ///< (1/2) Σ_ij L_ij², L_ij = q_i p_j - q_j p_i
    SparseOp number;  ///< Σ a_i† a_i
};

InvariantSet build_invariants(const MultiOscRep& rep, const ModeOperators& modes);

/// Total excitation of every basis state (mixed radix d, mode 0 fastest).
std::vector<int> total_excitation(const MultiOscRep& rep);

/// Basis indices with total excitation <= level.
std::vector<int> subspace_indices(const MultiOscRep& rep, int level);

/// Dense block op(idx, idx).
Matrix restrict_to(const SparseOp& op, const std::vector<int>& idx);

/// Spectral norm of the Hermitian safe-subspace block of
/// K² - (1/4)(L² + 1/4 - 1/N).
double casimir_identity_check(const MultiOscRep& rep, const InvariantSet& inv);

/// One L² eigenvalue in the block of total excitation n̄.
struct LSector {
    int total_excitation = 0;  ///< n̄
    int ell = 0;               ///< N·l, integer
    double l = 0.0;            ///< rescaled label ell / N
    double eigenvalue = 0.0;
    double predicted = 0.0;    ///< l (l + 1 - 2/N)
    double k = 0.0;            ///< (l + 1/2)/2
    int multiplicity = 0;
};

struct LSpectrumReport {
    std::vector<LSector> sectors;
    double max_error = 0.0;
    bool pass = false;
};

/// Diagonalizes L² on each total-excitation block of the safe subspace and
/// matches every eigenvalue to l(l + 1 - 2/N) with N·l ≡ n̄ (mod 2), N·l <= n̄.
LSpectrumReport l_spectrum_check(const MultiOscRep& rep, const InvariantSet& inv, double tol = 1e-8);

/// Max |K0 - (n̄/N + 1/2)/2| over safe basis states, off-diagonal entries included.
double k0_spectrum_residual(const MultiOscRep& rep, const InvariantSet& inv);

/// Max entry of the safe-level block of [X, Y] - z·Z.
double relation_residual(const MultiOscRep& rep, const SparseOp& x, const SparseOp& y, cplx z, const SparseOp& zop,
                         int level);

}  // namespace cohlim::nbody
