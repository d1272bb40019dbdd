#include "cohlim/quadrature.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "cohlim/error.hpp"

namespace cohlim {

namespace {

// Golub–Welsch: nodes are eigenvalues of the Jacobi matrix, weights are
// mu0 * (first eigenvector component)².
GaussRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag, double mu0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, offdiag, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw DomainError("Gauss rule construction failed");
    GaussRule rule;
    const auto n = diag.size();
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        rule.nodes[i] = solver.eigenvalues()(i);
        double v0 = solver.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

}  // namespace

GaussRule gauss_legendre_unit(int n) {
    return gauss_jacobi_unit(n, 0.0);
}

GaussRule gauss_jacobi_unit(int n, double alpha) {
    if (n < 1) throw DomainError("quadrature order must be >= 1");
    if (!(alpha > -1.0)) throw DomainError("Jacobi exponent must be > -1");
    const double beta = 0.0;
    const double ab = alpha + beta;
    Eigen::VectorXd diag(n);
    Eigen::VectorXd off(n > 1 ? n - 1 : 0);
    diag(0) = (beta - alpha) / (ab + 2.0);
    for (int j = 1; j < n; ++j) {
        double s = 2.0 * j + ab;
        diag(j) = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    }
    for (int j = 1; j < n; ++j) {
        double s = 2.0 * j + ab;
        double num;
        double den;
        if (j == 1) {
            num = 4.0 * (1.0 + alpha) * (1.0 + beta);
            den = (2.0 + ab) * (2.0 + ab) * (3.0 + ab);
        } else {
            num = 4.0 * j * (j + alpha) * (j + beta) * (j + ab);
            den = s * s * (s + 1.0) * (s - 1.0);
        }
        off(j - 1) = std::sqrt(num / den);
    }
    // ∫_{-1}^{1} (1-t)^alpha dt = 2^{alpha+1}/(alpha+1)
    double mu0 = std::pow(2.0, alpha + 1.0) / (alpha + 1.0);
    GaussRule rule = golub_welsch(diag, off, mu0);
    // x = (t+1)/2: (1-x)^alpha dx = (1-t)^alpha dt / 2^{alpha+1}
    const double scale = std::pow(2.0, -(alpha + 1.0));
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = 0.5 * (rule.nodes[i] + 1.0);
        rule.weights[i] *= scale;
    }
    return rule;
}

}  // namespace cohlim
