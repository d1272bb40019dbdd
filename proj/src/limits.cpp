#include "cohlim/limits.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "cohlim/charts.hpp"
#include "cohlim/error.hpp"
#include "cohlim/parallel.hpp"

namespace cohlim {

namespace {

constexpr double kSlopeLow = -1.15;
constexpr double kSlopeHigh = -0.85;
constexpr double kExactTol = 1e-10;
constexpr double kStudyTailTol = 1e-15;

void validate_ladder(const std::vector<int>& n_values) {
    if (n_values.empty()) throw DomainError("N ladder is empty");
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 1) throw DomainError("N values must be >= 1");
        if (i > 0 && n_values[i] <= n_values[i - 1]) throw DomainError("N values must be strictly increasing");
    }
}

void require_disk(cplx tau) {
    if (!(std::abs(tau) < 1.0)) throw DomainError("tau modulus must be < 1");
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit fit;
    const double det = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

}  // namespace

void finalize_decay_report(SweepReport& report, double exact_tol, double low, double high) {
    report.slope_low = low;
    report.slope_high = high;
    const double max_err = *std::max_element(report.abs_errors.begin(), report.abs_errors.end());
    if (max_err <= exact_tol) {
        report.fitted = false;
        report.pass = true;
        report.note = "exact at every N";
        return;
    }
    if (report.n_values.size() < 4) {
        report.pass = false;
        report.note = "slope fit needs at least 4 N values";
        return;
    }
    if (std::any_of(report.abs_errors.begin(), report.abs_errors.end(), [](double e) { return !(e > 0.0); })) {
        report.pass = false;
        report.note = "error column has zeros mixed with nonzero values";
        return;
    }
    report.fit = fit_loglog(report.n_values, report.abs_errors);
    report.fitted = true;
    report.pass = report.fit.slope >= low && report.fit.slope <= high;
    report.note = report.pass ? "decays within slope band" : "slope outside band";
}

LineFit fit_loglog(std::span<const int> n_values, std::span<const double> y) {
    if (n_values.size() != y.size() || n_values.size() < 4) throw DomainError("log-log fit needs >= 4 points");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0)) throw DomainError("log-log fit needs positive values");
        lx.push_back(std::log(static_cast<double>(n_values[i])));
        ly.push_back(std::log(y[i]));
    }
    return fit_line(lx, ly);
}

LineFit fit_semilog(std::span<const int> n_values, std::span<const double> y) {
    if (n_values.size() != y.size() || n_values.size() < 4) throw DomainError("semilog fit needs >= 4 points");
    std::vector<double> x, ly;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0)) throw DomainError("semilog fit needs positive values");
        x.push_back(static_cast<double>(n_values[i]));
        ly.push_back(std::log(y[i]));
    }
    return fit_line(x, ly);
}

OperatorMatrix operator_matrix(const RepParams& rep, const OperatorSpec& spec) {
    if (const auto* g = std::get_if<Generator>(&spec)) return build_generator(rep, *g);
    return polynomial_matrix(rep, std::get<HamiltonianPolynomial>(spec));
}

PhaseObservable classical_symbol(const OperatorSpec& spec, double k) {
    if (const auto* g = std::get_if<Generator>(&spec)) return basic_symbol(*g, k);
    return classical_hamiltonian(std::get<HamiltonianPolynomial>(spec), k);
}

int operator_degree(const OperatorSpec& spec) {
    if (const auto* g = std::get_if<Generator>(&spec)) return *g == Generator::Casimir ? 2 : 1;
    return std::get<HamiltonianPolynomial>(spec).degree();
}

RepParams study_rep(int n_particles, double k, cplx tau, int degree) {
    return rep_for_state(n_particles, k, tau, 4 * (degree + 1), kStudyTailTol);
}

SweepReport overlap_decay_study(cplx tau, cplx tau2, double k, const std::vector<int>& n_values) {
    validate_ladder(n_values);
    require_disk(tau);
    require_disk(tau2);
    if (!(k > 0.0)) throw DomainError("k must be > 0");
    SweepReport report;
    report.study = "overlap_decay";
    report.n_values = n_values;
    const cplx delta = delta_exponent(tau, tau2, k);
    double max_rel = 0.0;
    for (int n : n_values) {
        const double value = std::abs(overlap_closed(tau, tau2, n * k));
        const double reference = std::exp(-n * delta.real());
        report.values.push_back(value);
        report.references.push_back(reference);
        report.abs_errors.push_back(std::abs(value - reference));
        if (reference > 0.0) max_rel = std::max(max_rel, std::abs(value - reference) / reference);
    }
    const bool same = tau == tau2;
    const bool sign_ok = same ? std::abs(delta.real()) <= 1e-14 : delta.real() > 0.0;
    report.slope_low = report.slope_high = -delta.real();
    bool slope_ok = true;
    if (!same && n_values.size() >= 4 &&
        std::all_of(report.values.begin(), report.values.end(), [](double v) { return v > 0.0; })) {
        report.fit = fit_semilog(n_values, report.values);
        report.fitted = true;
        const double tol = 1e-8 * std::max(1.0, delta.real());
        report.slope_low = -delta.real() - tol;
        report.slope_high = -delta.real() + tol;
        slope_ok = report.fit.slope >= report.slope_low && report.fit.slope <= report.slope_high;
    }
    report.pass = max_rel <= 1e-10 && sign_ok && slope_ok;
    report.note = same ? "identical states: Re Delta = 0" : "Re Delta = " + std::to_string(delta.real());
    return report;
}

SweepReport factorization_defect(const OperatorSpec& x, const OperatorSpec& y, cplx tau, double k,
                                 const std::vector<int>& n_values) {
    validate_ladder(n_values);
    require_disk(tau);
    SweepReport report;
    report.study = "factorization";
    report.n_values = n_values;
    const std::size_t count = n_values.size();
    report.values.resize(count);
    report.references.assign(count, 0.0);
    report.abs_errors.resize(count);
    const int degree = operator_degree(x) + operator_degree(y);
    parallel_for(count, [&](std::size_t i) {
        const RepParams rep = study_rep(n_values[i], k, tau, degree);
        const FockVector psi = coherent_vector({rep, tau});
        const OperatorMatrix xop = operator_matrix(rep, x);
        const OperatorMatrix yop = operator_matrix(rep, y);
        const Matrix& xm = xop.entries();
        const Matrix& ym = yop.entries();
        const Vector y_psi = ym * psi.coefficients;
        const cplx xy = psi.coefficients.dot(xm * y_psi);
        const cplx xs = psi.coefficients.dot(xm * psi.coefficients);
        const cplx ys = psi.coefficients.dot(y_psi);
        const double defect = std::abs(xy - xs * ys);
        report.values[i] = defect;
        report.abs_errors[i] = defect;
    });
    finalize_decay_report(report, 1e-12, kSlopeLow, kSlopeHigh);
    return report;
}

SweepReport commutator_correspondence(const OperatorSpec& x, const OperatorSpec& y, cplx tau, double k,
                                      const std::vector<int>& n_values) {
    validate_ladder(n_values);
    require_disk(tau);
    SweepReport report;
    report.study = "commutator";
    report.n_values = n_values;
    const PhaseObservable bracket = poisson_bracket(classical_symbol(x, k), classical_symbol(y, k));
    const ChartPoint vw = convert(ChartPoint::tau(tau), Chart::Canonical, k);
    const double classical = bracket.evaluate(vw.coords[0], vw.coords[1]);
    const std::size_t count = n_values.size();
    report.values.resize(count);
    report.references.assign(count, classical);
    report.abs_errors.resize(count);
    const int degree = operator_degree(x) + operator_degree(y);
    parallel_for(count, [&](std::size_t i) {
        const RepParams rep = study_rep(n_values[i], k, tau, degree);
        const FockVector psi = coherent_vector({rep, tau});
        const OperatorMatrix xm = operator_matrix(rep, x);
        const OperatorMatrix ym = operator_matrix(rep, y);
        const cplx s = cplx{0.0, static_cast<double>(n_values[i])} * symbol(commutator(xm, ym), psi);
        report.values[i] = s.real();
        report.abs_errors[i] = std::abs(s - classical);
    });
    finalize_decay_report(report, kExactTol, kSlopeLow, kSlopeHigh);
    return report;
}

InjectivityReport symbol_injectivity_check(std::span<const cplx> grid, const RepParams& rep) {
    if (grid.size() < 4) throw DomainError("injectivity check needs at least 4 grid points");
    rep.validate();
    const OperatorMatrix k0 = build_generator(rep, Generator::K0);
    const OperatorMatrix k1 = build_generator(rep, Generator::K1);
    const OperatorMatrix k2 = build_generator(rep, Generator::K2);
    const auto g = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXd samples(g, 4);
    for (Eigen::Index i = 0; i < g; ++i) {
        const FockVector psi = coherent_vector({rep, grid[i]});
        samples(i, 0) = 1.0;
        samples(i, 1) = symbol(k0, psi).real();
        samples(i, 2) = symbol(k1, psi).real();
        samples(i, 3) = symbol(k2, psi).real();
    }
    InjectivityReport report;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(samples);
    const Eigen::VectorXd sv = svd.singularValues();
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        report.singular_values.push_back(sv(i));
        if (sv(i) > 1e-10 * sv(0)) ++report.rank;
    }
    for (Eigen::Index i = 0; i < g; ++i) {
        for (Eigen::Index j = i + 1; j < g; ++j) {
            const double diff = (samples.row(i).tail(3) - samples.row(j).tail(3)).cwiseAbs().maxCoeff();
            const double scale = std::max(1.0, samples.row(i).tail(3).cwiseAbs().maxCoeff());
            if (diff <= 1e-12 * scale) report.duplicate_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
    report.pass = report.rank == 4 && report.duplicate_pairs.empty();
    return report;
}

bool is_zero_symbol(const OperatorMatrix& z, std::span<const cplx> grid, double tol) {
    for (const cplx& tau : grid) {
        if (std::abs(symbol(z, CoherentSpec{z.rep(), tau})) > tol) return false;
    }
    return true;
}

PhaseObservable classical_hamiltonian(const HamiltonianPolynomial& h, double k) {
    const PhaseObservable a = basic_symbol(Generator::A, k);
    const PhaseObservable b = basic_symbol(Generator::B, k);
    const PhaseObservable c = basic_symbol(Generator::C, k);
    PhaseObservable out;
    for (const auto& [e, coeff] : h.terms()) out = out + a.pow(e[0]) * b.pow(e[1]) * c.pow(e[2]) * coeff;
    return out;
}

SweepReport hamiltonian_limit_check(const HamiltonianPolynomial& h, cplx tau, double k,
                                    const std::vector<int>& n_values) {
    validate_ladder(n_values);
    require_disk(tau);
    SweepReport report;
    report.study = "hamiltonian_limit";
    report.n_values = n_values;
    const ChartPoint vw = convert(ChartPoint::tau(tau), Chart::Canonical, k);
    const double classical = classical_hamiltonian(h, k).evaluate(vw.coords[0], vw.coords[1]);
    const std::size_t count = n_values.size();
    report.values.resize(count);
    report.references.assign(count, classical);
    report.abs_errors.resize(count);
    parallel_for(count, [&](std::size_t i) {
        const RepParams rep = study_rep(n_values[i], k, tau, h.degree());
        const cplx s = symbol(hamiltonian_matrix(rep, h), CoherentSpec{rep, tau}) / static_cast<double>(n_values[i]);
        report.values[i] = s.real();
        report.abs_errors[i] = std::abs(s - classical);
    });
    finalize_decay_report(report, kExactTol, kSlopeLow, kSlopeHigh);
    if (h.degree() <= 1 && report.fitted) {
        report.pass = false;
        report.note = "linear Hamiltonian symbol is not exact";
    }
    return report;
}

}  // namespace cohlim
