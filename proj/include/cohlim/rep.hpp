#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

#include "cohlim/hamiltonian.hpp"

namespace cohlim {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Finite-N representation of su(1,1): N particles, rescaled Bargmann index k,
/// basis |n>, n = 0..cutoff. The unscaled index is J = N k.
struct RepParams {
    int n_particles = 1;
    double k = 1.0;
    int cutoff = 0;

    double J() const { return n_particles * k; }
    int dim() const { return cutoff + 1; }

    /// Throws DomainError unless N >= 1, k > 0, cutoff >= 0.
    void validate() const;
    /// Additionally requires J > 1/2.
    void validate_normalizable() const;

    bool operator==(const RepParams&) const = default;
};

struct FockVector {
    Vector coefficients;
    RepParams rep;
    /// 1 - |psi|^2 after truncation (0 for exactly normalized states).
    double norm_deficit = 0.0;

    double norm() const { return coefficients.norm(); }
};

/// Dense operator on the truncated |n> basis of a representation.
class OperatorMatrix {
public:
    OperatorMatrix(Matrix entries, RepParams rep, bool hermitian);

    const Matrix& entries() const { return entries_; }
    const RepParams& rep() const { return rep_; }
    bool hermitian() const { return hermitian_; }
    int dim() const { return static_cast<int>(entries_.rows()); }

    OperatorMatrix operator+(const OperatorMatrix& other) const;
    OperatorMatrix operator-(const OperatorMatrix& other) const;
    OperatorMatrix operator*(const OperatorMatrix& other) const;
    OperatorMatrix scaled(cplx s) const;
    OperatorMatrix adjoint() const;

private:
    Matrix entries_;
    RepParams rep_;
    bool hermitian_;
};

enum class Generator { K0, K1, K2, Kplus, Kminus, Casimir, A, B, C };

Generator parse_generator(std::string_view name);
std::string_view generator_name(Generator g);

/// Rescaled generators: K0|n> = (k + n/N)|n>,
/// K±|n> = (1/N) sqrt((J+n)(J+n±1) - J(J-1)) |n±1>, truncated at the cutoff.
OperatorMatrix build_generator(const RepParams& rep, Generator which);

/// XY - YX. Throws DomainError for operands of different representations.
OperatorMatrix commutator(const OperatorMatrix& x, const OperatorMatrix& y);

enum class Ordering {
    Literal,     ///< A^a B^b C^c left to right
    Symmetrized  ///< average over all distinct orderings of the factors
};

/// h(Â, B̂, Ĉ) without the factor N. Monomials are formed on a basis padded
/// by the polynomial degree and cropped, so every entry equals the matrix
/// element of the untruncated operator.
OperatorMatrix polynomial_matrix(const RepParams& rep, const HamiltonianPolynomial& h,
                                 Ordering ordering = Ordering::Literal);

/// Ĥ_N = N h(Â, B̂, Ĉ).
OperatorMatrix hamiltonian_matrix(const RepParams& rep, const HamiltonianPolynomial& h,
                                  Ordering ordering = Ordering::Literal);

bool is_hermitian(const Matrix& m, double rel_tol = 1e-12);

}  // namespace cohlim
