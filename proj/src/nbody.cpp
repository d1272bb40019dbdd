#include "cohlim/nbody.hpp"

#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Eigenvalues>

#include "cohlim/error.hpp"

namespace cohlim::nbody {

std::size_t MultiOscRep::dimension() const {
    std::size_t dim = 1;
    for (int i = 0; i < n_particles; ++i) {
        if (dim > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(per_mode_cutoff)) {
            return std::numeric_limits<std::size_t>::max();
        }
        dim *= static_cast<std::size_t>(per_mode_cutoff);
    }
    return dim;
}

void MultiOscRep::validate() const {
    if (n_particles < 1) throw DomainError("N must be >= 1");
    if (n_particles > 3) throw DomainError("N must be <= 3");
    if (per_mode_cutoff < 5) throw DomainError("d must be >= 5 (safe subspace is total excitation <= d - 4)");
    if (dimension() > memory_ceiling) {
        throw DomainError("dimension d^N = " + std::to_string(dimension()) + " exceeds the memory ceiling " +
                          std::to_string(memory_ceiling));
    }
}

namespace {

SparseOp identity(std::size_t dim) {
    SparseOp id(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    id.setIdentity();
    return id;
}

}  // namespace

std::vector<int> total_excitation(const MultiOscRep& rep) {
    const std::size_t dim = rep.dimension();
    std::vector<int> out(dim);
    for (std::size_t s = 0; s < dim; ++s) {
        std::size_t rest = s;
        int total = 0;
        for (int i = 0; i < rep.n_particles; ++i) {
            total += static_cast<int>(rest % rep.per_mode_cutoff);
            rest /= rep.per_mode_cutoff;
        }
        out[s] = total;
    }
    return out;
}

std::vector<int> subspace_indices(const MultiOscRep& rep, int level) {
    const std::vector<int> exc = total_excitation(rep);
    std::vector<int> idx;
    for (std::size_t s = 0; s < exc.size(); ++s) {
        if (exc[s] <= level) idx.push_back(static_cast<int>(s));
    }
    return idx;
}

ModeOperators build_mode_operators(const MultiOscRep& rep) {
    rep.validate();
    const std::size_t dim = rep.dimension();
    const int d = rep.per_mode_cutoff;
    const double scale = 1.0 / std::sqrt(static_cast<double>(rep.n_particles));
    const cplx i_unit{0.0, 1.0};
    ModeOperators modes;
    std::size_t stride = 1;
    for (int mode = 0; mode < rep.n_particles; ++mode) {
        std::vector<Eigen::Triplet<cplx>> triplets;
        for (std::size_t s = 0; s < dim; ++s) {
            const int n = static_cast<int>((s / stride) % d);
            if (n > 0) {
                triplets.emplace_back(static_cast<int>(s - stride), static_cast<int>(s), scale * std::sqrt(double(n)));
            }
        }
        SparseOp a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        a.setFromTriplets(triplets.begin(), triplets.end());
        SparseOp a_dag = a.adjoint();
        SparseOp q = (a_dag + a) * cplx(1.0 / std::sqrt(2.0));
        SparseOp p = (a_dag - a) * (i_unit / std::sqrt(2.0));
        modes.a.push_back(std::move(a));
        modes.a_dag.push_back(std::move(a_dag));
        modes.q.push_back(std::move(q));
        modes.p.push_back(std::move(p));
        stride *= static_cast<std::size_t>(d);
    }
    return modes;
}

InvariantSet build_invariants(const MultiOscRep& rep, const ModeOperators& modes) {
    rep.validate();
    const auto dim = static_cast<Eigen::Index>(rep.dimension());
    InvariantSet inv;
    inv.A = SparseOp(dim, dim);
    inv.B = SparseOp(dim, dim);
    inv.C = SparseOp(dim, dim);
    inv.number = SparseOp(dim, dim);
    inv.l_squared = SparseOp(dim, dim);
    const int n = rep.n_particles;
    for (int i = 0; i < n; ++i) {
        inv.A += SparseOp(modes.q[i] * modes.q[i]) * cplx(0.5);
        inv.B += SparseOp(modes.q[i] * modes.p[i] + modes.p[i] * modes.q[i]) * cplx(0.5);
        inv.C += SparseOp(modes.p[i] * modes.p[i]) * cplx(0.5);
        inv.number += SparseOp(modes.a_dag[i] * modes.a[i]);
    }
    // (1/2) Σ_ij L_ij² = Σ_{i<j} L_ij²
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            SparseOp l = modes.q[i] * modes.p[j] - modes.q[j] * modes.p[i];
            inv.l_squared += SparseOp(l * l);
        }
    }
    inv.K0 = (inv.A + inv.C) * cplx(0.5);
    inv.K1 = inv.B * cplx(0.5);
    inv.K2 = (inv.A - inv.C) * cplx(0.5);
    inv.casimir = SparseOp(inv.K0 * inv.K0) - SparseOp(inv.K1 * inv.K1) - SparseOp(inv.K2 * inv.K2);
    for (SparseOp* op : {&inv.A, &inv.B, &inv.C, &inv.K0, &inv.K1, &inv.K2, &inv.casimir, &inv.l_squared, &inv.number}) {
        op->prune(cplx(0.0));
    }
    return inv;
}

Matrix restrict_to(const SparseOp& op, const std::vector<int>& idx) {
    const auto m = static_cast<Eigen::Index>(idx.size());
    Matrix block = Matrix::Zero(m, m);
    // Column-major sparse: walk each selected column, keep selected rows.
    std::vector<int> position(static_cast<std::size_t>(op.rows()), -1);
    for (Eigen::Index r = 0; r < m; ++r) position[idx[r]] = static_cast<int>(r);
    for (Eigen::Index c = 0; c < m; ++c) {
        for (SparseOp::InnerIterator it(op, idx[c]); it; ++it) {
            const int r = position[it.row()];
            if (r >= 0) block(r, c) = it.value();
        }
    }
    return block;
}

double casimir_identity_check(const MultiOscRep& rep, const InvariantSet& inv) {
    const auto dim = static_cast<Eigen::Index>(rep.dimension());
    const double shift = 0.25 - 1.0 / rep.n_particles;
    SparseOp residual = inv.casimir - (inv.l_squared + identity(dim) * cplx(shift)) * cplx(0.25);
    const Matrix block = restrict_to(residual, subspace_indices(rep, rep.safe_level()));
    Eigen::SelfAdjointEigenSolver<Matrix> eig(block, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseAbs().maxCoeff();
}

LSpectrumReport l_spectrum_check(const MultiOscRep& rep, const InvariantSet& inv, double tol) {
    const int n = rep.n_particles;
    const std::vector<int> exc = total_excitation(rep);
    LSpectrumReport report;
    auto predicted = [n](int ell) {
        const double l = static_cast<double>(ell) / n;
        return l * (l + 1.0 - 2.0 / n);
    };
    for (int level = 0; level <= rep.safe_level(); ++level) {
        std::vector<int> idx;
        for (std::size_t s = 0; s < exc.size(); ++s) {
            if (exc[s] == level) idx.push_back(static_cast<int>(s));
        }
        Eigen::SelfAdjointEigenSolver<Matrix> eig(restrict_to(inv.l_squared, idx), Eigen::EigenvaluesOnly);
        std::map<int, LSector> by_ell;
        for (Eigen::Index e = 0; e < eig.eigenvalues().size(); ++e) {
            const double lambda = eig.eigenvalues()(e);
            int best = level % 2;
            for (int ell = level % 2; ell <= level; ell += 2) {
                if (std::abs(predicted(ell) - lambda) < std::abs(predicted(best) - lambda)) best = ell;
            }
            const double err = std::abs(predicted(best) - lambda);
            report.max_error = std::max(report.max_error, err);
            LSector& sector = by_ell[best];
            if (sector.multiplicity == 0) {
                sector.total_excitation = level;
                sector.ell = best;
                sector.l = static_cast<double>(best) / n;
                sector.predicted = predicted(best);
                sector.k = (sector.l + 0.5) / 2.0;
            }
            sector.eigenvalue += (lambda - sector.eigenvalue) / (sector.multiplicity + 1);
            ++sector.multiplicity;
        }
        for (auto& [ell, sector] : by_ell) report.sectors.push_back(sector);
    }
    report.pass = report.max_error <= tol;
    return report;
}

double k0_spectrum_residual(const MultiOscRep& rep, const InvariantSet& inv) {
    const std::vector<int> idx = subspace_indices(rep, rep.safe_level());
    const std::vector<int> exc = total_excitation(rep);
    Matrix block = restrict_to(inv.K0, idx);
    for (std::size_t r = 0; r < idx.size(); ++r) {
        block(r, r) -= 0.5 * (static_cast<double>(exc[idx[r]]) / rep.n_particles + 0.5);
    }
    return block.cwiseAbs().maxCoeff();
}

double relation_residual(const MultiOscRep& rep, const SparseOp& x, const SparseOp& y, cplx z, const SparseOp& zop,
                         int level) {
    SparseOp r = SparseOp(x * y) - SparseOp(y * x) - zop * z;
    return restrict_to(r, subspace_indices(rep, level)).cwiseAbs().maxCoeff();
}

}  // namespace cohlim::nbody
