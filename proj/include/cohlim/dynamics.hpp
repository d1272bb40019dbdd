#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cohlim/coherent.hpp"
#include "cohlim/hamiltonian.hpp"
#include "cohlim/limits.hpp"
#include "cohlim/observable.hpp"
#include "cohlim/rep.hpp"

namespace cohlim {

/// Point (v, w) of the classical phase space at time t (w > 0).
struct ClassicalState {
    double v = 0.0;
    double w = 1.0;
    double t = 0.0;
};

struct TrajectorySample {
    double t = 0.0;
    std::variant<ClassicalState, Vector> state;
    std::map<std::string, double> observables;
};

struct Trajectory {
    enum class Kind { Quantum, Classical };
    Kind kind = Kind::Classical;
    std::vector<TrajectorySample> samples;
    std::string metadata;
};

/// The quantum state reached the top basis levels; holds the samples taken
/// before the trip.
class TruncationGuardError : public std::runtime_error {
public:
    TruncationGuardError(const std::string& what, double last_valid_time, std::shared_ptr<const Trajectory> partial)
        : std::runtime_error(what), last_valid_time_(last_valid_time), partial_(std::move(partial)) {}

    double last_valid_time() const { return last_valid_time_; }
    const Trajectory& partial() const { return *partial_; }

private:
    double last_valid_time_;
    std::shared_ptr<const Trajectory> partial_;
};

/// Hamilton's equations v' = -∂h/∂w, w' = ∂h/∂v with an adaptive 7(8)
/// Runge–Kutta–Fehlberg stepper (absolute and relative tolerance `tol`).
/// Samples at every t in `t_grid` (strictly increasing, first >= start.t) with
/// observables A, B, C (C needs k) and energy. Throws DomainError if w reaches 0.
Trajectory classical_evolve(const PhaseObservable& h_cl, double k, const ClassicalState& start,
                            const std::vector<double>& t_grid, double tol = 1e-10);

/// Free Hamiltonian v²w + k²/w in closed form:
/// w(t) = w0 + 2 v0 w0 t + h t², v(t) = w'(t) / (2 w(t)).
ClassicalState free_particle_analytic(const ClassicalState& start, double k, double t);

/// Radial relabeling w = r²/2, v = p/r.
struct RadialState {
    double r = 0.0;
    double p = 0.0;
};
RadialState to_radial(const ClassicalState& s);
/// p²/2 + l̃²/(2r²).
double radial_free_hamiltonian(const RadialState& s, double l_tilde);

struct QuantumEvolveOptions {
    double guard_threshold = 1e-8;  ///< max population allowed in the top levels
    int guard_levels = 5;
    double norm_tol = 1e-8;
};

/// Solves i dψ/dt = Ĥ ψ with the exact propagator from the eigendecomposition
/// of the Hermitian Ĥ. Records the symbols of A, B, C, the norm and the
/// top-level population at each time in `t_grid` (t measured from 0).
/// Throws TruncationGuardError when the top levels exceed the guard threshold.
Trajectory quantum_evolve(const OperatorMatrix& h, const FockVector& start, const std::vector<double>& t_grid,
                          const QuantumEvolveOptions& options = {});

/// Evolves coherent(τ0) under Ĥ_N and its classical image under h_cl for each
/// N; value = max over t and {A, B, C} of |quantum symbol - classical value|.
/// Ĥ_N uses the symmetrized ordering so that it is Hermitian for any h.
/// Passes when the deviation is below 1e-8 everywhere or decays with slope in
/// [slope_low, slope_high].
SweepReport correspondence_compare(const HamiltonianPolynomial& h, cplx tau0, double k,
                                   const std::vector<int>& n_values, const std::vector<double>& t_grid,
                                   double slope_low = -1.2, double slope_high = -0.8);

/// Representation large enough to carry coherent(τ0) along the classical
/// trajectory of h over t_grid.
RepParams evolution_rep(const HamiltonianPolynomial& h, cplx tau0, double k, int n_particles,
                        const std::vector<double>& t_grid);

}  // namespace cohlim
