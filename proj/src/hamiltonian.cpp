#include "cohlim/hamiltonian.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "cohlim/error.hpp"

namespace cohlim {

HamiltonianPolynomial HamiltonianPolynomial::constant(double c) {
    HamiltonianPolynomial h;
    h.add_term({0, 0, 0}, c);
    return h;
}

HamiltonianPolynomial HamiltonianPolynomial::monomial(int a, int b, int c, double coefficient) {
    HamiltonianPolynomial h;
    h.add_term({a, b, c}, coefficient);
    return h;
}

void HamiltonianPolynomial::add_term(const Monomial& exponents, double coefficient) {
    for (int e : exponents) {
        if (e < 0) throw DomainError("polynomial exponents must be non-negative");
    }
    if (!std::isfinite(coefficient)) throw DomainError("polynomial coefficient must be finite");
    double& slot = terms_[exponents];
    slot += coefficient;
    if (slot == 0.0) terms_.erase(exponents);
}

int HamiltonianPolynomial::degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
}

std::string HamiltonianPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    constexpr char names[3] = {'A', 'B', 'C'};
    for (const auto& [e, c] : terms_) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", std::abs(c));
        if (!out.empty()) out += c < 0 ? " - " : " + ";
        else if (c < 0) out += "-";
        out += buf;
        for (int i = 0; i < 3; ++i) {
            if (e[i] == 0) continue;
            out += '*';
            out += names[i];
            if (e[i] > 1) out += "^" + std::to_string(e[i]);
        }
    }
    return out;
}

HamiltonianPolynomial HamiltonianPolynomial::operator+(const HamiltonianPolynomial& other) const {
    HamiltonianPolynomial r = *this;
    for (const auto& [e, c] : other.terms_) r.add_term(e, c);
    return r;
}

HamiltonianPolynomial HamiltonianPolynomial::operator*(double s) const {
    HamiltonianPolynomial r;
    for (const auto& [e, c] : terms_) r.add_term(e, c * s);
    return r;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    HamiltonianPolynomial parse() {
        HamiltonianPolynomial h;
        skip_ws();
        if (pos_ == text_.size()) throw DomainError("empty polynomial expression");
        double sign = 1.0;
        if (peek() == '+' || peek() == '-') {
            sign = get() == '-' ? -1.0 : 1.0;
        }
        parse_term(h, sign);
        while (true) {
            skip_ws();
            if (pos_ == text_.size()) break;
            char op = get();
            if (op != '+' && op != '-') fail("expected '+' or '-'");
            parse_term(h, op == '-' ? -1.0 : 1.0);
        }
        return h;
    }

private:
    void parse_term(HamiltonianPolynomial& h, double sign) {
        Monomial e{0, 0, 0};
        double coeff = sign;
        bool have_factor = false;
        bool divide = false;
        while (true) {
            skip_ws();
            if (pos_ == text_.size()) break;
            char c = peek();
            if (c == '+' || c == '-') break;
            if (c == '*' || c == '/') {
                if (!have_factor) fail("operator without left operand");
                divide = get() == '/';
                skip_ws();
                c = pos_ < text_.size() ? peek() : '\0';
                if (c == '\0') fail("dangling operator");
            }
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                double value = number();
                coeff = divide ? coeff / value : coeff * value;
            } else if (c == 'A' || c == 'B' || c == 'C') {
                if (divide) fail("division by an operator");
                get();
                int power = 1;
                skip_ws();
                if (pos_ < text_.size() && peek() == '^') {
                    get();
                    skip_ws();
                    double p = number();
                    if (p != std::floor(p) || p < 0) fail("exponent must be a non-negative integer");
                    power = static_cast<int>(p);
                }
                e[c - 'A'] += power;
            } else {
                fail(std::string("unexpected character '") + c + "'");
            }
            have_factor = true;
            divide = false;
        }
        if (!have_factor) fail("empty term");
        h.add_term(e, coeff);
    }

    double number() {
        const char* begin = text_.data() + pos_;
        std::string buf(begin, text_.size() - pos_);
        char* end = nullptr;
        double v = std::strtod(buf.c_str(), &end);
        if (end == buf.c_str()) fail("expected a number");
        pos_ += static_cast<std::size_t>(end - buf.c_str());
        return v;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw DomainError("cannot parse polynomial '" + std::string(text_) + "': " + what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return text_[pos_]; }
    char get() { return text_[pos_++]; }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

HamiltonianPolynomial HamiltonianPolynomial::parse(std::string_view text) {
    return Parser(text).parse();
}

}  // namespace cohlim
