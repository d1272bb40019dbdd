#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>

namespace cohlim {

/// Exponents (a, b, c) of the ordered monomial A^a B^b C^c.
using Monomial = std::array<int, 3>;

/// A real polynomial h(A, B, C) in the basic O(N) invariants. Coefficients are
/// N-independent; the quantum Hamiltonian is N * h(Â, B̂, Ĉ).
class HamiltonianPolynomial {
public:
    HamiltonianPolynomial() = default;

    static HamiltonianPolynomial constant(double c);
    static HamiltonianPolynomial monomial(int a, int b, int c, double coefficient = 1.0);

    /// Parses expressions such as "C + A^2/2", "0.5*A*B - 2 C", "0".
    static HamiltonianPolynomial parse(std::string_view text);

    void add_term(const Monomial& exponents, double coefficient);

    const std::map<Monomial, double>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    int degree() const;

    std::string to_string() const;

    HamiltonianPolynomial operator+(const HamiltonianPolynomial& other) const;
    HamiltonianPolynomial operator*(double s) const;
    bool operator==(const HamiltonianPolynomial& other) const = default;

private:
    std::map<Monomial, double> terms_;
};

}  // namespace cohlim
