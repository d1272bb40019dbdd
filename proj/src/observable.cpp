#include "cohlim/observable.hpp"

#include <cmath>
#include <cstdio>

#include "cohlim/error.hpp"

namespace cohlim {

PhaseObservable PhaseObservable::constant(double c) { return term(0, 0, c); }

PhaseObservable PhaseObservable::term(int v_power, int w_power, double coefficient) {
    PhaseObservable f;
    f.add_term(v_power, w_power, coefficient);
    return f;
}

double PhaseObservable::coefficient(int v_power, int w_power) const {
    auto it = terms_.find({v_power, w_power});
    return it == terms_.end() ? 0.0 : it->second;
}

void PhaseObservable::add_term(int v_power, int w_power, double coefficient) {
    if (v_power < 0) throw DomainError("v exponent must be non-negative");
    if (coefficient == 0.0) return;
    Exponents key{v_power, w_power};
    double& slot = terms_[key];
    slot += coefficient;
    if (slot == 0.0) terms_.erase(key);
}

PhaseObservable PhaseObservable::operator+(const PhaseObservable& o) const {
    PhaseObservable r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e.first, e.second, c);
    return r;
}

PhaseObservable PhaseObservable::operator-(const PhaseObservable& o) const { return *this + o * -1.0; }

PhaseObservable PhaseObservable::operator*(const PhaseObservable& o) const {
    PhaseObservable r;
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) r.add_term(e1.first + e2.first, e1.second + e2.second, c1 * c2);
    }
    return r;
}

PhaseObservable PhaseObservable::operator*(double s) const {
    PhaseObservable r;
    for (const auto& [e, c] : terms_) r.add_term(e.first, e.second, c * s);
    return r;
}

PhaseObservable PhaseObservable::pow(int exponent) const {
    if (exponent < 0) throw DomainError("negative powers of observables are not polynomial");
    PhaseObservable r = constant(1.0);
    for (int i = 0; i < exponent; ++i) r = r * *this;
    return r;
}

PhaseObservable PhaseObservable::d_dv() const {
    PhaseObservable r;
    for (const auto& [e, c] : terms_) {
        if (e.first > 0) r.add_term(e.first - 1, e.second, c * e.first);
    }
    return r;
}

PhaseObservable PhaseObservable::d_dw() const {
    PhaseObservable r;
    for (const auto& [e, c] : terms_) {
        if (e.second != 0) r.add_term(e.first, e.second - 1, c * e.second);
    }
    return r;
}

double PhaseObservable::evaluate(double v, double w) const {
    if (!(w > 0.0)) throw DomainError("w must be > 0");
    double sum = 0.0;
    for (const auto& [e, c] : terms_) sum += c * std::pow(v, e.first) * std::pow(w, e.second);
    return sum;
}

std::string PhaseObservable::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s%.12g*v^%d*w^%d", out.empty() ? "" : " + ", c, e.first, e.second);
        out += buf;
    }
    return out;
}

PhaseObservable poisson_bracket(const PhaseObservable& f, const PhaseObservable& g) {
    return f.d_dv() * g.d_dw() - g.d_dv() * f.d_dw();
}

PhaseObservable basic_symbol(Generator name, double k) {
    if (!(k > 0.0)) throw DomainError("k must be > 0");
    const PhaseObservable a = PhaseObservable::term(0, 1);
    const PhaseObservable b = PhaseObservable::term(1, 1, 2.0);
    const PhaseObservable c = PhaseObservable::term(2, 1) + PhaseObservable::term(0, -1, k * k);
    switch (name) {
        case Generator::A: return a;
        case Generator::B: return b;
        case Generator::C: return c;
        case Generator::K0: return (a + c) * 0.5;
        case Generator::K1: return b * 0.5;
        case Generator::K2: return (a - c) * 0.5;
        case Generator::Casimir: return PhaseObservable::constant(k * k);
        case Generator::Kplus:
        case Generator::Kminus: break;
    }
    throw DomainError("no real classical symbol for '" + std::string(generator_name(name)) + "'");
}

}  // namespace cohlim
