#include "cohlim/rep.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cohlim/error.hpp"

namespace cohlim {

void RepParams::validate() const {
    if (n_particles < 1) throw DomainError("N must be >= 1");
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("k must be > 0");
    if (cutoff < 0) throw DomainError("cutoff must be >= 0");
}

void RepParams::validate_normalizable() const {
    validate();
    if (!(J() > 0.5)) throw DomainError("J = N*k must be > 1/2 for the resolution of identity");
}

OperatorMatrix::OperatorMatrix(Matrix entries, RepParams rep, bool hermitian)
    : entries_(std::move(entries)), rep_(rep), hermitian_(hermitian) {
    if (entries_.rows() != rep_.dim() || entries_.cols() != rep_.dim()) {
        throw DomainError("operator matrix dimension does not match its representation");
    }
}

namespace {

void require_same_rep(const OperatorMatrix& x, const OperatorMatrix& y) {
    if (!(x.rep() == y.rep())) throw DomainError("operators belong to different representations");
}

}  // namespace

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& other) const {
    require_same_rep(*this, other);
    return {entries_ + other.entries_, rep_, hermitian_ && other.hermitian_};
}

OperatorMatrix OperatorMatrix::operator-(const OperatorMatrix& other) const {
    require_same_rep(*this, other);
    return {entries_ - other.entries_, rep_, hermitian_ && other.hermitian_};
}

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix& other) const {
    require_same_rep(*this, other);
    Matrix p = entries_ * other.entries_;
    bool h = is_hermitian(p);
    return {std::move(p), rep_, h};
}

OperatorMatrix OperatorMatrix::scaled(cplx s) const {
    return {entries_ * s, rep_, hermitian_ && s.imag() == 0.0};
}

OperatorMatrix OperatorMatrix::adjoint() const {
    return {entries_.adjoint(), rep_, hermitian_};
}

bool is_hermitian(const Matrix& m, double rel_tol) {
    if (m.rows() != m.cols()) return false;
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

Generator parse_generator(std::string_view name) {
    static constexpr std::pair<std::string_view, Generator> table[] = {
        {"K0", Generator::K0},         {"K1", Generator::K1}, {"K2", Generator::K2},
        {"Kplus", Generator::Kplus},   {"Kminus", Generator::Kminus},
        {"Casimir", Generator::Casimir}, {"A", Generator::A}, {"B", Generator::B},
        {"C", Generator::C},
    };
    for (const auto& [n, g] : table) {
        if (n == name) return g;
    }
    throw DomainError("unknown generator '" + std::string(name) + "'");
}

std::string_view generator_name(Generator g) {
    switch (g) {
        case Generator::K0: return "K0";
        case Generator::K1: return "K1";
        case Generator::K2: return "K2";
        case Generator::Kplus: return "Kplus";
        case Generator::Kminus: return "Kminus";
        case Generator::Casimir: return "Casimir";
        case Generator::A: return "A";
        case Generator::B: return "B";
        case Generator::C: return "C";
    }
    return "?";
}

namespace {

// (1/N) sqrt((J+n)(J+n+1) - J(J-1)) = (1/N) sqrt((n+1)(n+2J)), the K+ entry <n+1|K+|n>.
double raise_coefficient(const RepParams& rep, int n) {
    return std::sqrt((n + 1.0) * (n + 2.0 * rep.J())) / rep.n_particles;
}

Matrix k0_entries(const RepParams& rep) {
    Matrix m = Matrix::Zero(rep.dim(), rep.dim());
    for (int n = 0; n < rep.dim(); ++n) m(n, n) = rep.k + static_cast<double>(n) / rep.n_particles;
    return m;
}

Matrix kplus_entries(const RepParams& rep) {
    Matrix m = Matrix::Zero(rep.dim(), rep.dim());
    for (int n = 0; n + 1 < rep.dim(); ++n) m(n + 1, n) = raise_coefficient(rep, n);
    return m;
}

}  // namespace

OperatorMatrix build_generator(const RepParams& rep, Generator which) {
    rep.validate();
    const cplx i{0.0, 1.0};
    Matrix k0 = k0_entries(rep);
    Matrix kp = kplus_entries(rep);
    Matrix km = kp.adjoint();
    Matrix k1 = (kp + km) / 2.0;
    Matrix k2 = (kp - km) / (2.0 * i);
    switch (which) {
        case Generator::K0: return {k0, rep, true};
        case Generator::K1: return {k1, rep, true};
        case Generator::K2: return {k2, rep, true};
        case Generator::Kplus: return {kp, rep, false};
        case Generator::Kminus: return {km, rep, false};
        case Generator::Casimir: return {k0 * k0 - k1 * k1 - k2 * k2, rep, true};
        case Generator::A: return {k0 + k2, rep, true};
        case Generator::B: return {2.0 * k1, rep, true};
        case Generator::C: return {k0 - k2, rep, true};
    }
    throw DomainError("unknown generator");
}

OperatorMatrix commutator(const OperatorMatrix& x, const OperatorMatrix& y) {
    require_same_rep(x, y);
    return {x.entries() * y.entries() - y.entries() * x.entries(), x.rep(), false};
}

OperatorMatrix polynomial_matrix(const RepParams& rep, const HamiltonianPolynomial& h, Ordering ordering) {
    rep.validate();
    const int dim = rep.dim();
    RepParams padded = rep;
    padded.cutoff = rep.cutoff + h.degree();
    const Matrix basis[3] = {build_generator(padded, Generator::A).entries(),
                             build_generator(padded, Generator::B).entries(),
                             build_generator(padded, Generator::C).entries()};
    const int pdim = padded.dim();
    Matrix total = Matrix::Zero(pdim, pdim);

    auto product = [&](const std::vector<int>& factors) {
        Matrix m = Matrix::Identity(pdim, pdim);
        for (int f : factors) m = m * basis[f];
        return m;
    };

    for (const auto& [e, coeff] : h.terms()) {
        std::vector<int> factors;
        for (int which = 0; which < 3; ++which) factors.insert(factors.end(), e[which], which);
        if (ordering == Ordering::Literal || factors.size() < 2) {
            total += coeff * product(factors);
            continue;
        }
        Matrix sum = Matrix::Zero(pdim, pdim);
        int count = 0;
        std::sort(factors.begin(), factors.end());
        do {
            sum += product(factors);
            ++count;
        } while (std::next_permutation(factors.begin(), factors.end()));
        total += (coeff / count) * sum;
    }

    Matrix cropped = total.topLeftCorner(dim, dim);
    if (!cropped.allFinite()) {
        throw DomainError("polynomial matrix overflow: reduce cutoff or J");
    }
    bool herm = is_hermitian(cropped);
    return {std::move(cropped), rep, herm};
}

OperatorMatrix hamiltonian_matrix(const RepParams& rep, const HamiltonianPolynomial& h, Ordering ordering) {
    OperatorMatrix p = polynomial_matrix(rep, h, ordering);
    return {p.entries() * static_cast<double>(rep.n_particles), rep, p.hermitian()};
}

}  // namespace cohlim
