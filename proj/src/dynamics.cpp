#include "cohlim/dynamics.hpp"

#include <array>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <boost/numeric/odeint.hpp>

#include "cohlim/charts.hpp"
#include "cohlim/error.hpp"
#include "cohlim/parallel.hpp"

namespace cohlim {

namespace odeint = boost::numeric::odeint;

namespace {

using PhasePoint = std::array<double, 2>;  // (v, w)

void validate_grid(const std::vector<double>& t_grid, double t0) {
    if (t_grid.empty()) throw DomainError("time grid is empty");
    if (!(t_grid.front() >= t0)) throw DomainError("time grid starts before the initial time");
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) throw DomainError("time grid must be strictly increasing");
    }
}

std::map<std::string, double> classical_observables(const PhaseObservable& h_cl, double k, double v, double w) {
    return {{"A", w}, {"B", 2.0 * v * w}, {"C", v * v * w + k * k / w}, {"energy", h_cl.evaluate(v, w)}};
}

}  // namespace

Trajectory classical_evolve(const PhaseObservable& h_cl, double k, const ClassicalState& start,
                            const std::vector<double>& t_grid, double tol) {
    if (!(start.w > 0.0)) throw DomainError("initial w must be > 0");
    if (!(k > 0.0)) throw DomainError("k must be > 0");
    if (!(tol > 0.0)) throw DomainError("tolerance must be > 0");
    validate_grid(t_grid, start.t);

    const PhaseObservable dh_dv = h_cl.d_dv();
    const PhaseObservable dh_dw = h_cl.d_dw();
    // Trial stages may leave the half plane; evaluate without the domain check
    // so the stepper sees finite values and rejects the step.
    auto raw = [](const PhaseObservable& f, double v, double w) {
        double sum = 0.0;
        for (const auto& [e, c] : f.terms()) sum += c * std::pow(v, e.first) * std::pow(w, e.second);
        return sum;
    };
    auto rhs = [&](const PhasePoint& x, PhasePoint& dxdt, double) {
        dxdt[0] = -raw(dh_dw, x[0], x[1]);
        dxdt[1] = raw(dh_dv, x[0], x[1]);
    };

    Trajectory traj;
    traj.kind = Trajectory::Kind::Classical;
    traj.metadata = "h_cl = " + h_cl.to_string();

    std::vector<double> times;
    const bool prepend = t_grid.front() > start.t;
    if (prepend) times.push_back(start.t);
    times.insert(times.end(), t_grid.begin(), t_grid.end());

    PhasePoint x{start.v, start.w};
    if (times.size() == 1) {
        traj.samples.push_back({start.t, start, classical_observables(h_cl, k, start.v, start.w)});
        return traj;
    }

    auto observer = [&](const PhasePoint& s, double t) {
        if (!(s[1] > 0.0) || !std::isfinite(s[0]) || !std::isfinite(s[1])) {
            throw DomainError("trajectory reached the w = 0 barrier at t = " + std::to_string(t));
        }
        if (prepend && t == start.t) return;
        traj.samples.push_back({t, ClassicalState{s[0], s[1], t}, classical_observables(h_cl, k, s[0], s[1])});
    };

    const double span = times.back() - times.front();
    const double dt0 = std::min(1e-3, span / 100.0);
    try {
        odeint::integrate_times(odeint::make_controlled<odeint::runge_kutta_fehlberg78<PhasePoint>>(tol, tol), rhs,
                                x, times.begin(), times.end(), dt0, observer);
    } catch (const odeint::step_adjustment_error& e) {
        throw DomainError(std::string("classical integration failed near the w = 0 barrier: ") + e.what());
    }
    return traj;
}

ClassicalState free_particle_analytic(const ClassicalState& start, double k, double t) {
    if (!(start.w > 0.0)) throw DomainError("initial w must be > 0");
    const double dt = t - start.t;
    const double h = start.v * start.v * start.w + k * k / start.w;
    const double w = start.w + 2.0 * start.v * start.w * dt + h * dt * dt;
    const double v = (start.v * start.w + h * dt) / w;
    return {v, w, t};
}

RadialState to_radial(const ClassicalState& s) {
    if (!(s.w > 0.0)) throw DomainError("w must be > 0");
    const double r = std::sqrt(2.0 * s.w);
    return {r, s.v * r};
}

double radial_free_hamiltonian(const RadialState& s, double l_tilde) {
    return 0.5 * s.p * s.p + l_tilde * l_tilde / (2.0 * s.r * s.r);
}

Trajectory quantum_evolve(const OperatorMatrix& h, const FockVector& start, const std::vector<double>& t_grid,
                          const QuantumEvolveOptions& options) {
    if (!(h.rep() == start.rep)) throw DomainError("Hamiltonian and state belong to different representations");
    if (!is_hermitian(h.entries())) throw DomainError("Hamiltonian matrix is not Hermitian");
    if (std::abs(start.norm() - 1.0) > options.norm_tol) throw DomainError("initial state is not normalized");
    validate_grid(t_grid, 0.0);

    const RepParams& rep = start.rep;
    const OperatorMatrix a = build_generator(rep, Generator::A);
    const OperatorMatrix b = build_generator(rep, Generator::B);
    const OperatorMatrix c = build_generator(rep, Generator::C);

    Eigen::SelfAdjointEigenSolver<Matrix> eig(h.entries());
    if (eig.info() != Eigen::Success) throw DomainError("eigendecomposition of the Hamiltonian failed");
    const Matrix& vecs = eig.eigenvectors();
    const Eigen::VectorXd& energies = eig.eigenvalues();
    const Vector amplitudes = vecs.adjoint() * start.coefficients;

    const int levels = std::min(options.guard_levels, rep.dim());
    auto traj = std::make_shared<Trajectory>();
    traj->kind = Trajectory::Kind::Quantum;
    traj->metadata = "N=" + std::to_string(rep.n_particles) + " k=" + std::to_string(rep.k) +
                     " cutoff=" + std::to_string(rep.cutoff);
    double last_valid = t_grid.front();
    for (double t : t_grid) {
        Vector phased(amplitudes.size());
        for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
            phased(i) = amplitudes(i) * std::polar(1.0, -energies(i) * t);
        }
        FockVector psi{vecs * phased, rep, 0.0};
        const double top = psi.coefficients.tail(levels).squaredNorm();
        if (top > options.guard_threshold) {
            throw TruncationGuardError("truncation guard tripped at t = " + std::to_string(t) +
                                           " (top-level population " + std::to_string(top) + ")",
                                       last_valid, traj);
        }
        const double norm = psi.norm();
        psi.norm_deficit = 1.0 - norm * norm;
        TrajectorySample sample{t, psi.coefficients, {}};
        sample.observables = {{"A", symbol(a, psi).real()},
                              {"B", symbol(b, psi).real()},
                              {"C", symbol(c, psi).real()},
                              {"norm", norm},
                              {"top_population", top}};
        traj->samples.push_back(std::move(sample));
        last_valid = t;
    }
    return *traj;
}

RepParams evolution_rep(const HamiltonianPolynomial& h, cplx tau0, double k, int n_particles,
                        const std::vector<double>& t_grid) {
    validate_grid(t_grid, 0.0);
    const ChartPoint start = convert(ChartPoint::tau(tau0), Chart::Canonical, k);
    // Dense probe of the classical path for the largest |τ| reached.
    constexpr int kProbe = 256;
    std::vector<double> probe;
    const double t_max = t_grid.back();
    for (int i = 0; i <= kProbe; ++i) probe.push_back(t_max * i / kProbe);
    if (t_max == 0.0) probe = {0.0};
    const Trajectory path =
        classical_evolve(classical_hamiltonian(h, k), k, {start.coords[0], start.coords[1], 0.0}, probe, 1e-10);
    double max_tau = std::abs(tau0);
    for (const auto& s : path.samples) {
        const auto& cs = std::get<ClassicalState>(s.state);
        const ChartPoint p = convert(ChartPoint::canonical(cs.v, cs.w), Chart::Tau, k);
        max_tau = std::max(max_tau, std::abs(p.as_complex()));
    }
    RepParams rep{n_particles, k, 0};
    rep.validate();
    const int base = tail_cutoff(max_tau, rep.J(), 1e-16);
    rep.cutoff = base + base / 4 + 24 + 4 * h.degree();
    return rep;
}

SweepReport correspondence_compare(const HamiltonianPolynomial& h, cplx tau0, double k,
                                   const std::vector<int>& n_values, const std::vector<double>& t_grid,
                                   double slope_low, double slope_high) {
    if (n_values.empty()) throw DomainError("N ladder is empty");
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 1 || (i > 0 && n_values[i] <= n_values[i - 1])) {
            throw DomainError("N values must be >= 1 and strictly increasing");
        }
    }
    validate_grid(t_grid, 0.0);
    const ChartPoint start = convert(ChartPoint::tau(tau0), Chart::Canonical, k);
    const Trajectory classical = classical_evolve(classical_hamiltonian(h, k), k,
                                                  {start.coords[0], start.coords[1], 0.0}, t_grid, 1e-12);

    SweepReport report;
    report.study = "correspondence";
    report.n_values = n_values;
    const std::size_t count = n_values.size();
    report.values.resize(count);
    report.references.assign(count, 0.0);
    report.abs_errors.resize(count);
    parallel_for(count, [&](std::size_t i) {
        const RepParams rep = evolution_rep(h, tau0, k, n_values[i], t_grid);
        const OperatorMatrix hn = hamiltonian_matrix(rep, h, Ordering::Symmetrized);
        const Trajectory quantum = quantum_evolve(hn, coherent_vector({rep, tau0}), t_grid);
        double worst = 0.0;
        for (std::size_t s = 0; s < t_grid.size(); ++s) {
            for (const char* name : {"A", "B", "C"}) {
                worst = std::max(worst, std::abs(quantum.samples[s].observables.at(name) -
                                                 classical.samples[s].observables.at(name)));
            }
        }
        report.values[i] = worst;
        report.abs_errors[i] = worst;
    });
    finalize_decay_report(report, 1e-8, slope_low, slope_high);
    return report;
}

}  // namespace cohlim
