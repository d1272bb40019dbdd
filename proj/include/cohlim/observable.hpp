#pragma once

#include <map>
#include <string>
#include <utility>

#include "cohlim/rep.hpp"

namespace cohlim {

/// Laurent polynomial in the canonical variables (v, w): a finite sum of
/// c · v^a w^b with a >= 0 and b any integer. Zero coefficients are never
/// stored, so equality is exact coefficient equality.
class PhaseObservable {
public:
    using Exponents = std::pair<int, int>;

    PhaseObservable() = default;

    static PhaseObservable constant(double c);
    static PhaseObservable term(int v_power, int w_power, double coefficient = 1.0);

    const std::map<Exponents, double>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    double coefficient(int v_power, int w_power) const;

    void add_term(int v_power, int w_power, double coefficient);

    PhaseObservable operator+(const PhaseObservable& o) const;
    PhaseObservable operator-(const PhaseObservable& o) const;
    PhaseObservable operator*(const PhaseObservable& o) const;
    PhaseObservable operator*(double s) const;
    PhaseObservable pow(int exponent) const;

    PhaseObservable d_dv() const;
    PhaseObservable d_dw() const;

    /// Throws DomainError for w <= 0.
    double evaluate(double v, double w) const;

    std::string to_string() const;

    bool operator==(const PhaseObservable& o) const = default;

private:
    std::map<Exponents, double> terms_;
};

/// {f, g} = ∂f/∂v ∂g/∂w - ∂g/∂v ∂f/∂w.
PhaseObservable poisson_bracket(const PhaseObservable& f, const PhaseObservable& g);

/// Classical symbols: A = w, B = 2vw, C = v²w + k²/w, K0 = (A+C)/2, K1 = B/2,
/// K2 = (A-C)/2, Casimir = k². Kplus/Kminus have no real symbol and throw.
PhaseObservable basic_symbol(Generator name, double k);

inline double evaluate(const PhaseObservable& f, double v, double w) { return f.evaluate(v, w); }

}  // namespace cohlim
