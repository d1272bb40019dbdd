#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cohlim/charts.hpp"
#include "cohlim/coherent.hpp"
#include "cohlim/dynamics.hpp"
#include "cohlim/error.hpp"
#include "cohlim/limits.hpp"
#include "cohlim/nbody.hpp"
#include "cohlim/observable.hpp"

#ifndef COHLIM_CLI_PATH
#error "COHLIM_CLI_PATH must point at the cohlim executable"
#endif

namespace fs = std::filesystem;
using namespace cohlim;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

std::mt19937_64 rng(7);

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

cplx disk_point(double radius) { return std::polar(radius * std::sqrt(uniform(0, 1)), uniform(0, 2 * std::numbers::pi)); }

std::vector<int> powers_of_two(int lo, int hi) {
    std::vector<int> out;
    for (int n = lo; n <= hi; n *= 2) out.push_back(n);
    return out;
}

std::string read_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

int run_cli(const std::string& args, const fs::path& stdout_file) {
    const std::string cmd = std::string(COHLIM_CLI_PATH) + " " + args + " > " + stdout_file.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch_dir() {
    static const fs::path dir = fs::temp_directory_path() / ("cohlim_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

// 1
Outcome overlap_brute_force() {
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const cplx t1 = disk_point(0.8), t2 = disk_point(0.8);
        const double J = uniform(0.75, 50.0);
        const RepParams rep{1, J, tail_cutoff(std::max(std::abs(t1), std::abs(t2)), J, 1e-16)};
        const cplx brute = coherent_vector({rep, t1}).coefficients.dot(coherent_vector({rep, t2}).coefficients);
        worst = std::max(worst, std::abs(brute - overlap_closed(t1, t2, J)));
    }
    return {worst <= 1e-8, "200 random cases, max abs error " + sci(worst)};
}

// 2
Outcome overlap_decay() {
    std::vector<int> n_values;
    for (int n = 1; n <= 256; ++n) n_values.push_back(n);
    bool pass = true;
    double worst_rel = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const cplx t1 = disk_point(0.8), t2 = disk_point(0.8);
        const auto report = overlap_decay_study(t1, t2, uniform(0.2, 2.0), n_values);
        pass = pass && report.pass;
        for (std::size_t i = 0; i < report.values.size(); ++i) {
            if (report.references[i] > 0.0)
                worst_rel = std::max(worst_rel, report.abs_errors[i] / report.references[i]);
        }
    }
    pass = pass && worst_rel <= 1e-10;
    return {pass, "20 pairs, N = 1..256, max rel error " + sci(worst_rel)};
}

// 3
Outcome resolution_of_identity() {
    double worst = 0.0;
    for (double J : {1.0, 3.0, 10.0}) worst = std::max(worst, identity_resolution_check({1, J, 10}, 10, {64}));
    bool rejected = false;
    try {
        identity_resolution_check({1, 0.4, 10}, 10);
    } catch (const DomainError&) {
        rejected = true;
    }
    return {worst <= 1e-8 && rejected,
            "J in {1,3,10}, n <= 10, max deviation " + sci(worst) + (rejected ? ", J = 0.4 rejected" : ", J = 0.4 accepted")};
}

// 4
Outcome symbol_closed_forms() {
    double worst = 0.0;
    const double k = 1.3;
    const int n = 3;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const cplx tau = std::polar(0.08 * (i + 0.5), 2 * std::numbers::pi * j / 10);
            const RepParams rep = rep_for_state(n, k, tau, 4, 1e-16);
            const FockVector psi = coherent_vector({rep, tau});
            const double p = std::norm(tau);
            const double expected[3] = {k * (1 + p) / (1 - p), 2 * k * tau.real() / (1 - p), -2 * k * tau.imag() / (1 - p)};
            const Generator gens[3] = {Generator::K0, Generator::K1, Generator::K2};
            for (int g = 0; g < 3; ++g) {
                worst = std::max(worst, std::abs(symbol(build_generator(rep, gens[g]), psi) - expected[g]));
            }
        }
    }
    const RepParams rep = rep_for_state(1, 1.0, 0.5, 4, 1e-16);
    const FockVector psi = coherent_vector({rep, 0.5});
    const ChartPoint vw = convert(ChartPoint::tau(0.5), Chart::Canonical, 1.0);
    const double targets[3] = {5.0 / 3.0, 8.0 / 3.0, 5.0 / 3.0};
    const Generator abc[3] = {Generator::A, Generator::B, Generator::C};
    double cross = 0.0;
    for (int g = 0; g < 3; ++g) {
        cross = std::max(cross, std::abs(symbol(build_generator(rep, abc[g]), psi) - targets[g]));
        cross = std::max(cross, std::abs(basic_symbol(abc[g], 1.0).evaluate(vw.coords[0], vw.coords[1]) - targets[g]));
    }
    return {worst <= 1e-8 && cross <= 1e-12,
            "100-point grid max error " + sci(worst) + "; A, B, C at tau = 0.5 via both routes within " + sci(cross)};
}

// 5
Outcome factorization() {
    const auto decay = factorization_defect(Generator::K0, Generator::K0, 0.5, 1.0, powers_of_two(2, 256));
    const auto vacuum = factorization_defect(Generator::K0, Generator::K0, 0.0, 1.0, powers_of_two(2, 256));
    bool zero = true;
    for (double v : vacuum.values) zero = zero && v <= 1e-12;
    const bool in_band = decay.fitted && decay.fit.slope >= -1.15 && decay.fit.slope <= -0.85;
    return {decay.pass && in_band && vacuum.pass && zero,
            "slope " + sci(decay.fit.slope) + " at tau = 0.5; tau = 0 defect " + (zero ? "zero" : "nonzero")};
}

// 6
Outcome bracket_correspondence() {
    const Generator triple[3] = {Generator::A, Generator::B, Generator::C};
    bool exact = true;
    double worst = 0.0;
    const std::vector<int> n_values{1, 2, 3, 5, 8, 16, 32, 64};
    for (int trial = 0; trial < 3; ++trial) {
        const cplx tau = disk_point(0.7);
        const double k = uniform(0.3, 2.0);
        for (Generator x : triple) {
            for (Generator y : triple) {
                const auto r = commutator_correspondence(x, y, tau, k, n_values);
                exact = exact && r.pass && !r.fitted;
                for (double e : r.abs_errors) worst = std::max(worst, e);
            }
        }
    }
    const auto composite =
        commutator_correspondence(HamiltonianPolynomial::parse("A^2"), Generator::C, 0.3, 1.0, powers_of_two(2, 128));
    const bool slope_ok = composite.pass && composite.fitted;
    return {exact && worst <= 1e-10 && slope_ok,
            "basic triple max error " + sci(worst) + "; (A^2, C) slope " + sci(composite.fit.slope)};
}

// 7
Outcome hamiltonian_extraction() {
    bool exact = true;
    double worst = 0.0;
    for (double k : {0.25, 1.0, 1.7}) {
        const auto h = classical_hamiltonian(HamiltonianPolynomial::parse("C"), k);
        exact = exact && h == PhaseObservable::term(2, 1) + PhaseObservable::term(0, -1, k * k);
        for (int i = 0; i < 20; ++i) {
            const ClassicalState s{uniform(-3, 3), uniform(0.05, 10), 0.0};
            const RadialState r = to_radial(s);
            const double l2 = 4 * k * k;
            const double radial = r.p * r.p / 2 + l2 / (2 * r.r * r.r);
            const double direct = h.evaluate(s.v, s.w);
            worst = std::max(worst, std::abs(radial - direct) / std::max(1.0, std::abs(direct)));
            worst = std::max(worst, std::abs(radial_free_hamiltonian(r, 2 * k) - direct) / std::max(1.0, std::abs(direct)));
        }
    }
    return {exact && worst <= 1e-12,
            std::string(exact ? "h_cl = v^2 w + k^2/w exactly" : "h_cl mismatch") + "; radial form within " + sci(worst)};
}

// 8
Outcome free_particle() {
    const double k = 1.0;
    const ClassicalState start{0.0, 1.0, 0.0};
    std::vector<double> grid;
    for (int i = 0; i <= 50; ++i) grid.push_back(0.1 * i);
    const auto traj = classical_evolve(basic_symbol(Generator::C, k), k, start, grid, 1e-10);
    double classical_err = 0.0;
    for (const auto& s : traj.samples) {
        const auto& cs = std::get<ClassicalState>(s.state);
        const double h = 1.0;
        classical_err = std::max(classical_err, std::abs(cs.w - (start.w + 2 * start.v * start.w * s.t + h * s.t * s.t)));
    }

    double quantum_err = 0.0;
    std::vector<double> qgrid;
    for (int i = 0; i <= 20; ++i) qgrid.push_back(0.1 * i);
    for (int n : {1, 2, 4, 8, 16, 32}) {
        const auto h = HamiltonianPolynomial::parse("C");
        const RepParams rep = evolution_rep(h, 0.0, k, n, qgrid);
        const auto q = quantum_evolve(hamiltonian_matrix(rep, h), coherent_vector({rep, 0.0}), qgrid);
        for (const auto& s : q.samples) quantum_err = std::max(quantum_err, std::abs(s.observables.at("A") - (1 + s.t * s.t)));
    }

    const fs::path csv = scratch_dir() / "evolve_both.csv";
    const int code = run_cli("evolve --mode both --h C --tau0 0,0 --k 1 --N 8 --tmax 2", csv);
    double cli_dev = 0.0;
    bool parsed = false;
    std::istringstream lines(read_file(csv));
    std::string line;
    std::getline(lines, line);
    const bool header_ok = line == "t,A,B,C,norm,energy,dev_A,dev_B,dev_C";
    while (std::getline(lines, line)) {
        std::vector<double> cells;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) cells.push_back(std::stod(cell));
        if (cells.size() != 9) break;
        parsed = true;
        for (int c = 6; c < 9; ++c) cli_dev = std::max(cli_dev, cells[c]);
    }
    const bool pass = classical_err <= 1e-8 && quantum_err <= 1e-8 && code == 0 && header_ok && parsed && cli_dev < 1e-8;
    return {pass, "classical " + sci(classical_err) + ", quantum <A> " + sci(quantum_err) + ", CLI deviation " +
                      sci(cli_dev) + " (exit " + std::to_string(code) + ")"};
}

// 9
Outcome anharmonic_correspondence() {
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(0.1 * i);
    const auto r = correspondence_compare(HamiltonianPolynomial::parse("C + A^2/2"), 0.3, 1.0, powers_of_two(4, 128), grid);
    bool decreasing = true;
    for (std::size_t i = 1; i < r.values.size(); ++i) decreasing = decreasing && r.values[i] < r.values[i - 1];
    return {r.pass && r.fitted && decreasing,
            "slope " + sci(r.fit.slope) + " over N = 4..128, deviation at N = 128 " + sci(r.values.back())};
}

// 10
Outcome casimir_identity() {
    struct Case {
        int n, d;
        double tol;
    };
    bool pass = true;
    std::string detail;
    for (const Case& c : {Case{1, 30, 1e-10}, Case{2, 12, 1e-10}, Case{3, 8, 1e-9}}) {
        const nbody::MultiOscRep rep{c.n, c.d};
        const auto modes = nbody::build_mode_operators(rep);
        const auto inv = nbody::build_invariants(rep, modes);
        const double residual = nbody::casimir_identity_check(rep, inv);
        const auto spectrum = nbody::l_spectrum_check(rep, inv, 1e-8);
        bool k_ok = true;
        for (const auto& s : spectrum.sectors) {
            k_ok = k_ok && std::abs(s.k - (s.l + 0.5) / 2) < 1e-15 && std::abs(s.l - double(s.ell) / c.n) < 1e-15 &&
                   std::abs(s.eigenvalue - s.l * (s.l + 1 - 2.0 / c.n)) <= 1e-8;
            // K² = k(k - 1/N) on the sector
            const double from_l = 0.25 * (s.predicted + 0.25 - 1.0 / c.n);
            k_ok = k_ok && std::abs(from_l - s.k * (s.k - 1.0 / c.n)) < 1e-12;
        }
        pass = pass && residual <= c.tol && spectrum.pass && k_ok;
        detail += (detail.empty() ? "" : "; ") + std::string("N=") + std::to_string(c.n) + " d=" + std::to_string(c.d) +
                  " residual " + sci(residual);
    }
    return {pass, detail};
}

// 11
Outcome metric_checks() {
    double fd_worst = 0.0, pull_worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const double k = uniform(0.3, 3.0);
        const cplx t = disk_point(0.8);
        const double h = 1e-4;
        auto f = [&](double dx, double dy) { return kahler_potential(t + cplx(dx, dy), k); };
        // ∂τ ∂τ* F = (1/4)(∂x² + ∂y²) F
        const double lap = (f(h, 0) + f(-h, 0) + f(0, h) + f(0, -h) - 4 * f(0, 0)) / (h * h);
        const double g = metric_coefficient(ChartPoint::tau(t), k);
        fd_worst = std::max(fd_worst, std::abs(lap / 4 - g) / g);

        const double e = 1e-5;
        auto hp = [&](cplx d) { return convert(ChartPoint::tau(t + d), Chart::HalfPlane).coords; };
        const auto px = hp({e, 0}), mx = hp({-e, 0}), py = hp({0, e}), my = hp({0, -e});
        const double j00 = (px[0] - mx[0]) / (2 * e), j01 = (py[0] - my[0]) / (2 * e);
        const double j10 = (px[1] - mx[1]) / (2 * e), j11 = (py[1] - my[1]) / (2 * e);
        const double ghp = metric_coefficient(convert(ChartPoint::tau(t), Chart::HalfPlane), k);
        const double gxx = ghp * (j00 * j00 + j10 * j10), gyy = ghp * (j01 * j01 + j11 * j11);
        const double gxy = ghp * (j00 * j01 + j10 * j11);
        pull_worst = std::max({pull_worst, std::abs(gxx - g) / g, std::abs(gyy - g) / g, std::abs(gxy) / g});
    }
    return {fd_worst <= 1e-6 && pull_worst <= 1e-8,
            "Kahler second derivative rel error " + sci(fd_worst) + ", half-plane pullback " + sci(pull_worst)};
}

// 12
Outcome determinism() {
    const std::vector<std::string> suite{
        "transform --chart tau --coords 0.5,0 --k 1 --to canonical --to halfplane --to polar --to zeta",
        "symbols --N 3 --k 1.2 --tau 0.3,-0.2",
        "overlap --N 1,2,4,8,16 --k 1 --tau 0.2,0.1 --tau2 -0.3,0.4",
        "resolution-check --N 2 --k 1.5 --max-n 10",
        "limit-check",
        "--json limit-check --study commutator --x A^2 --y C --tau 0.3,0",
        "evolve --mode both --h C+A^2/2 --tau0 0.3,0 --k 1 --N 16 --tmax 1",
        "evolve --mode classical --h C --start 0,1 --k 1",
        "freeparticle --start 0,1 --tmax 5",
        "casimir-check --N 2 --d 12",
    };
    const fs::path root = scratch_dir() / "determinism";
    std::vector<std::string> mismatches;
    std::size_t files = 0;
    for (int run = 0; run < 2; ++run) {
        for (std::size_t i = 0; i < suite.size(); ++i) {
            const fs::path dir = root / ("run" + std::to_string(run)) / ("cmd" + std::to_string(i));
            fs::create_directories(dir);
            run_cli(suite[i], dir / "stdout.txt");
            const fs::path outdir = dir / "out";
            run_cli("--out " + outdir.string() + " " + suite[i], dir / "summary.txt");
        }
    }
    const fs::path a = root / "run0", b = root / "run1";
    for (const auto& entry : fs::recursive_directory_iterator(a)) {
        if (!entry.is_regular_file()) continue;
        const fs::path rel = fs::relative(entry.path(), a);
        ++files;
        if (!fs::exists(b / rel) || read_file(entry.path()) != read_file(b / rel)) mismatches.push_back(rel.string());
    }
    std::size_t files_b = 0;
    for (const auto& entry : fs::recursive_directory_iterator(b)) files_b += entry.is_regular_file();
    const bool pass = mismatches.empty() && files == files_b && files > suite.size() * 2;
    return {pass, std::to_string(files) + " output files compared, " + std::to_string(mismatches.size()) + " differ" +
                      (mismatches.empty() ? "" : " (first: " + mismatches.front() + ")")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"closed-form overlap vs brute force", overlap_brute_force},
        {"overlap decay identity", overlap_decay},
        {"resolution of identity", resolution_of_identity},
        {"symbol closed forms and chart consistency", symbol_closed_forms},
        {"large-N factorization", factorization},
        {"commutator / Poisson bracket correspondence", bracket_correspondence},
        {"classical Hamiltonian extraction", hamiltonian_extraction},
        {"free-particle dynamics", free_particle},
        {"anharmonic quantum-classical correspondence", anharmonic_correspondence},
        {"brute-force Casimir identity and L^2 spectrum", casimir_identity},
        {"metric checks", metric_checks},
        {"CLI determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1 < 10 ? " " : "") << i + 1 << "  "
                  << criteria[i].first << ": " << o.detail << std::endl;
    }
    std::error_code ec;
    fs::remove_all(scratch_dir(), ec);
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
