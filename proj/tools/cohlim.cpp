#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cohlim/charts.hpp"
#include "cohlim/coherent.hpp"
#include "cohlim/dynamics.hpp"
#include "cohlim/error.hpp"
#include "cohlim/hamiltonian.hpp"
#include "cohlim/limits.hpp"
#include "cohlim/nbody.hpp"
#include "cohlim/observable.hpp"
#include "cohlim/rep.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace cohlim;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    std::string s(buf);
    if (s == "-0") s = "0";
    return s;
}

using Cell = std::variant<std::string, double>;

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    std::string csv() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
        os << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) os << ',';
                if (const auto* s = std::get_if<std::string>(&row[i])) os << csv_field(*s);
                else os << fmt(std::get<double>(row[i]));
            }
            os << '\n';
        }
        return os.str();
    }

    json to_json() const {
        json out = json::array();
        for (const auto& row : rows) {
            json obj = json::object();
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (const auto* s = std::get_if<std::string>(&row[i])) obj[header[i]] = *s;
                else obj[header[i]] = std::stod(fmt(std::get<double>(row[i])));
            }
            out.push_back(obj);
        }
        return out;
    }
};

struct Output {
    bool json_summary = false;
    std::string out_dir;

    bool to_dir() const { return !out_dir.empty(); }

    void write_file(const std::string& name, const std::string& text) const {
        fs::create_directories(out_dir);
        std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
        if (!f) throw DomainError("cannot write " + (fs::path(out_dir) / name).string());
        f << text;
    }

    std::string render_summary(const json& summary) const {
        if (json_summary) return summary.dump(2) + "\n";
        std::ostringstream os;
        for (const auto& [key, value] : summary.items()) {
            os << key << ": ";
            if (value.is_number_float()) os << fmt(value.get<double>());
            else if (value.is_string()) os << value.get<std::string>();
            else os << value.dump();
            os << '\n';
        }
        return os.str();
    }

    /// Single-table commands: the table goes to stdout unless an output
    /// directory is set, in which case the summary is printed instead.
    void emit(const std::string& name, const Table& table, const json& summary) const {
        if (to_dir()) {
            write_file(name + ".csv", table.csv());
            write_file(name + ".summary.json", summary.dump(2) + "\n");
            std::cout << render_summary(summary);
        } else if (json_summary) {
            json doc = summary;
            doc["rows"] = table.to_json();
            std::cout << doc.dump(2) << "\n";
        } else {
            std::cout << table.csv();
        }
    }
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, sep)) parts.push_back(item);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw DomainError("not a number: '" + s + "'");
    }
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used != s.size()) throw DomainError("not a number: '" + s + "'");
    return v;
}

std::array<double, 2> parse_pair(const std::string& text, const std::string& what) {
    const auto parts = split(text, ',');
    if (parts.size() != 2) throw DomainError(what + " expects two comma-separated numbers, got '" + text + "'");
    return {parse_double(parts[0]), parse_double(parts[1])};
}

cplx parse_complex(const std::string& text, const std::string& what) {
    const auto p = parse_pair(text, what);
    return {p[0], p[1]};
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& part : split(text, ',')) {
        const double v = parse_double(part);
        if (v != std::floor(v) || v < 1 || v > 1e6) throw DomainError("N values must be positive integers");
        out.push_back(static_cast<int>(v));
    }
    if (out.empty()) throw DomainError("N list is empty");
    return out;
}

OperatorSpec parse_operator(const std::string& text) {
    try {
        return parse_generator(text);
    } catch (const DomainError&) {
        return HamiltonianPolynomial::parse(text);
    }
}

std::vector<double> time_grid(double t_max, int steps) {
    if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw DomainError("tmax must be >= 0");
    if (t_max == 0.0) return {0.0};
    if (steps < 1) throw DomainError("steps must be >= 1");
    std::vector<double> grid;
    for (int i = 0; i <= steps; ++i) grid.push_back(t_max * i / steps);
    return grid;
}

json number_or_null(bool present, double x) { return present ? json(std::stod(fmt(x))) : json(nullptr); }

// ---------------------------------------------------------------- transform

struct TransformArgs {
    std::string chart = "tau";
    std::string coords;
    std::optional<double> k;
    std::vector<std::string> to;
};

int run_transform(const TransformArgs& a, const Output& out) {
    const Chart from = parse_chart(a.chart);
    const auto c = parse_pair(a.coords, "--coords");
    const ChartPoint p{from, c};
    validate(p);
    std::vector<std::string> targets = a.to;
    if (targets.empty()) {
        targets = {"zeta", "tau", "polar", "halfplane"};
        if (a.k) targets.push_back("canonical");
    }
    Table table{{"chart", "c1", "c2"}, {}};
    for (const auto& name : targets) {
        const Chart target = parse_chart(name);
        const ChartPoint q = convert(p, target, a.k);
        table.rows.push_back({std::string(chart_name(target)), q.coords[0], q.coords[1]});
    }
    out.emit("transform", table, json{{"chart", chart_name(from)}, {"targets", targets.size()}, {"pass", true}});
    return kExitPass;
}

// ---------------------------------------------------------------- symbols

struct SymbolsArgs {
    int n = 1;
    double k = 1.0;
    std::string tau = "0,0";
    std::optional<int> cutoff;
};

int run_symbols(const SymbolsArgs& a, const Output& out) {
    const cplx tau = parse_complex(a.tau, "--tau");
    validate(ChartPoint::tau(tau));
    RepParams rep = rep_for_state(a.n, a.k, tau, 8, 1e-15);
    if (a.cutoff) rep.cutoff = *a.cutoff;
    const ChartPoint vw = convert(ChartPoint::tau(tau), Chart::Canonical, a.k);
    const CoherentSpec spec{rep, tau};
    const FockVector psi = coherent_vector(spec);
    Table table{{"operator", "matrix", "closed_form", "vw_route", "abs_error"}, {}};
    double worst = 0.0;
    for (Generator g : {Generator::K0, Generator::K1, Generator::K2, Generator::A, Generator::B, Generator::C,
                        Generator::Casimir}) {
        const double matrix = symbol(build_generator(rep, g), psi).real();
        const double closed =
            g == Generator::Casimir ? a.k * (a.k - 1.0 / a.n) : matrix_element_closed(g, tau, tau, a.k).real();
        const double classical = basic_symbol(g, a.k).evaluate(vw.coords[0], vw.coords[1]);
        const double err = std::abs(matrix - closed);
        worst = std::max(worst, err);
        table.rows.push_back({std::string(generator_name(g)), matrix, closed, classical, err});
    }
    const bool pass = worst <= 1e-8;
    out.emit("symbols", table,
             json{{"N", a.n}, {"k", a.k}, {"cutoff", rep.cutoff}, {"max_abs_error", std::stod(fmt(worst))},
                  {"pass", pass}});
    return pass ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------- overlap

struct OverlapArgs {
    std::string n = "1";
    double k = 1.0;
    std::string tau = "0,0";
    std::string tau2 = "0.5,0";
};

int run_overlap(const OverlapArgs& a, const Output& out) {
    const cplx t1 = parse_complex(a.tau, "--tau"), t2 = parse_complex(a.tau2, "--tau2");
    validate(ChartPoint::tau(t1));
    validate(ChartPoint::tau(t2));
    const cplx delta = delta_exponent(t1, t2, a.k);
    Table table{{"N", "J", "overlap_re", "overlap_im", "overlap_abs", "exp_minus_N_re_delta", "brute_abs_error"}, {}};
    bool pass = true;
    for (int n : parse_int_list(a.n)) {
        RepParams rep{n, a.k, 0};
        rep.validate();
        rep.cutoff = tail_cutoff(std::max(std::abs(t1), std::abs(t2)), rep.J(), 1e-15);
        const cplx closed = overlap_closed(t1, t2, rep.J());
        const cplx brute = coherent_vector({rep, t1}).coefficients.dot(coherent_vector({rep, t2}).coefficients);
        const double decay = std::exp(-n * delta.real());
        const double err = std::abs(brute - closed);
        pass = pass && err <= 1e-8 && std::abs(std::abs(closed) - decay) <= 1e-10 * decay;
        table.rows.push_back({double(n), rep.J(), closed.real(), closed.imag(), std::abs(closed), decay, err});
    }
    out.emit("overlap", table,
             json{{"delta_re", std::stod(fmt(delta.real()))}, {"delta_im", std::stod(fmt(delta.imag()))},
                  {"pass", pass}});
    return pass ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------- resolution-check

struct ResolutionArgs {
    int n = 1;
    double k = 1.0;
    int max_n = 10;
    int order = 64;
    std::string rule = "auto";
    double tol = 1e-8;
};

int run_resolution(const ResolutionArgs& a, const Output& out) {
    const RepParams rep{a.n, a.k, a.max_n};
    rep.validate_normalizable();
    QuadratureParams q{a.order, QuadratureRule::GaussLegendre};
    if (a.rule == "jacobi") {
        q.rule = QuadratureRule::GaussJacobi;
    } else if (a.rule == "auto") {
        // Legendre is exact when (1 - x)^{2J-2} is a polynomial.
        const double e = 2.0 * rep.J() - 2.0;
        if (!(e >= 0.0 && e == std::floor(e))) q.rule = QuadratureRule::GaussJacobi;
    } else if (a.rule != "legendre") {
        throw DomainError("rule must be legendre, jacobi or auto");
    }
    const double dev = identity_resolution_check(rep, a.max_n, q);
    const bool pass = dev <= a.tol;
    const std::string rule = q.rule == QuadratureRule::GaussJacobi ? "jacobi" : "legendre";
    Table table{{"J", "max_n", "order", "rule", "deviation"}, {{rep.J(), double(a.max_n), double(a.order), rule, dev}}};
    out.emit("resolution", table, json{{"J", rep.J()}, {"deviation", std::stod(fmt(dev))}, {"pass", pass}});
    return pass ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------- limit-check

struct LimitArgs {
    std::string study = "all";
    std::string n = "2,4,8,16,32,64,128,256";
    double k = 1.0;
    std::string tau = "0.5,0";
    std::string tau2 = "0,0";
    std::string x = "K0";
    std::string y = "K0";
    std::string h = "C + A^2/2";
    int grid = 5;
    double radius = 0.6;
};

Table report_table(const SweepReport& r) {
    Table t{{"N", "value", "reference", "abs_error"}, {}};
    for (std::size_t i = 0; i < r.n_values.size(); ++i)
        t.rows.push_back({double(r.n_values[i]), r.values[i], r.references[i], r.abs_errors[i]});
    return t;
}

json report_summary(const SweepReport& r) {
    return json{{"study", r.study},
                {"slope", number_or_null(r.fitted, r.fit.slope)},
                {"intercept", number_or_null(r.fitted, r.fit.intercept)},
                {"residual", number_or_null(r.fitted, r.fit.residual)},
                {"pass", r.pass},
                {"note", r.note}};
}

int run_limit_check(const LimitArgs& a, const Output& out) {
    const std::vector<std::string> known{"overlap-decay", "factorization", "commutator", "hamiltonian", "injectivity"};
    std::vector<std::string> studies;
    if (a.study == "all") {
        studies = known;
    } else {
        for (const auto& s : split(a.study, ',')) {
            if (std::find(known.begin(), known.end(), s) == known.end())
                throw DomainError("unknown study '" + s + "'");
            studies.push_back(s);
        }
    }
    const std::vector<int> n_values = parse_int_list(a.n);
    const cplx tau = parse_complex(a.tau, "--tau");
    const cplx tau2 = parse_complex(a.tau2, "--tau2");
    validate(ChartPoint::tau(tau));
    validate(ChartPoint::tau(tau2));
    const OperatorSpec x = parse_operator(a.x), y = parse_operator(a.y);
    const HamiltonianPolynomial h = HamiltonianPolynomial::parse(a.h);

    json results = json::array();
    bool all_pass = true;
    for (const auto& study : studies) {
        SweepReport report;
        if (study == "overlap-decay") {
            report = overlap_decay_study(tau2, tau, a.k, n_values);
        } else if (study == "factorization") {
            report = factorization_defect(x, y, tau, a.k, n_values);
        } else if (study == "commutator") {
            report = commutator_correspondence(x, y, tau, a.k, n_values);
        } else if (study == "hamiltonian") {
            report = hamiltonian_limit_check(h, tau, a.k, n_values);
        } else {
            if (a.grid < 2) throw DomainError("grid must be >= 2");
            std::vector<cplx> grid;
            for (int i = 0; i < a.grid; ++i) {
                for (int j = 0; j < a.grid; ++j) {
                    const cplx t{-a.radius + 2 * a.radius * i / (a.grid - 1), -a.radius + 2 * a.radius * j / (a.grid - 1)};
                    if (std::abs(t) < 1.0) grid.push_back(t);
                }
            }
            double r_max = 0.0;
            for (const cplx& t : grid) r_max = std::max(r_max, std::abs(t));
            report.study = "injectivity";
            report.n_values = n_values;
            report.pass = true;
            for (int n : n_values) {
                const RepParams rep = rep_for_state(n, a.k, r_max, 4);
                const InjectivityReport inj = symbol_injectivity_check(grid, rep);
                report.values.push_back(inj.rank);
                report.references.push_back(4.0);
                report.abs_errors.push_back(std::abs(inj.rank - 4.0) + inj.duplicate_pairs.size());
                report.pass = report.pass && inj.pass;
            }
            report.note = report.pass ? "rank 4, no duplicate symbols" : "rank deficit or duplicate symbols";
        }
        all_pass = all_pass && report.pass;
        results.push_back(report_summary(report));
        if (out.to_dir()) out.write_file(study + ".csv", report_table(report).csv());
    }
    if (out.json_summary) {
        std::cout << json{{"pass", all_pass}, {"studies", results}}.dump(2) << "\n";
    } else {
        Table summary{{"study", "pass", "slope", "intercept", "residual", "note"}, {}};
        for (const auto& r : results) {
            auto cell = [&](const char* key) -> Cell {
                return r[key].is_null() ? Cell{std::string("")} : Cell{r[key].get<double>()};
            };
            summary.rows.push_back({r["study"].get<std::string>(), std::string(r["pass"].get<bool>() ? "true" : "false"),
                                    cell("slope"), cell("intercept"), cell("residual"), r["note"].get<std::string>()});
        }
        std::cout << summary.csv();
    }
    if (out.to_dir()) out.write_file("summary.json", json{{"pass", all_pass}, {"studies", results}}.dump(2) + "\n");
    return all_pass ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------- evolve

struct EvolveArgs {
    std::string mode = "both";
    std::string h = "C";
    double k = 1.0;
    std::optional<std::string> tau0;
    std::optional<std::string> start;
    int n = 8;
    double tmax = 1.0;
    int steps = 10;
    double tol = 1e-12;
    std::optional<int> cutoff;
};

int run_evolve(const EvolveArgs& a, const Output& out) {
    if (a.mode != "classical" && a.mode != "quantum" && a.mode != "both")
        throw DomainError("mode must be classical, quantum or both");
    if (a.tau0 && a.start) throw DomainError("give either --tau0 or --start, not both");
    if (!(a.k > 0.0)) throw DomainError("k must be > 0");
    const HamiltonianPolynomial h = HamiltonianPolynomial::parse(a.h);
    const std::vector<double> grid = time_grid(a.tmax, a.steps);

    cplx tau0 = 0.0;
    ClassicalState start{0.0, a.k, 0.0};
    if (a.start) {
        const auto vw = parse_pair(*a.start, "--start");
        const ChartPoint p = ChartPoint::canonical(vw[0], vw[1]);
        validate(p);
        start = {vw[0], vw[1], 0.0};
        tau0 = convert(p, Chart::Tau, a.k).as_complex();
    } else {
        tau0 = parse_complex(a.tau0.value_or("0,0"), "--tau0");
        const ChartPoint p = convert(ChartPoint::tau(tau0), Chart::Canonical, a.k);
        start = {p.coords[0], p.coords[1], 0.0};
    }

    const bool want_classical = a.mode != "quantum";
    const bool want_quantum = a.mode != "classical";

    std::optional<Trajectory> classical;
    if (want_classical) classical = classical_evolve(classical_hamiltonian(h, a.k), a.k, start, grid, a.tol);

    std::optional<Trajectory> quantum;
    std::optional<double> guard_time;
    std::string guard_message;
    RepParams rep;
    if (want_quantum) {
        rep = evolution_rep(h, tau0, a.k, a.n, grid);
        if (a.cutoff) rep.cutoff = *a.cutoff;
        const OperatorMatrix hn = hamiltonian_matrix(rep, h, Ordering::Symmetrized);
        try {
            quantum = quantum_evolve(hn, coherent_vector({rep, tau0}), grid);
        } catch (const TruncationGuardError& e) {
            quantum = e.partial();
            guard_time = e.last_valid_time();
            guard_message = e.what();
        }
    }

    Table table;
    if (a.mode == "classical") table.header = {"t", "A", "B", "C", "energy"};
    else if (a.mode == "quantum") table.header = {"t", "A", "B", "C", "norm"};
    else table.header = {"t", "A", "B", "C", "norm", "energy", "dev_A", "dev_B", "dev_C"};

    const std::size_t rows = want_quantum ? quantum->samples.size() : classical->samples.size();
    double max_dev = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        if (a.mode == "classical") {
            const auto& s = classical->samples[i].observables;
            table.rows.push_back({classical->samples[i].t, s.at("A"), s.at("B"), s.at("C"), s.at("energy")});
        } else if (a.mode == "quantum") {
            const auto& s = quantum->samples[i].observables;
            table.rows.push_back({quantum->samples[i].t, s.at("A"), s.at("B"), s.at("C"), s.at("norm")});
        } else {
            const auto& q = quantum->samples[i].observables;
            const auto& c = classical->samples[i].observables;
            const double da = std::abs(q.at("A") - c.at("A"));
            const double db = std::abs(q.at("B") - c.at("B"));
            const double dc = std::abs(q.at("C") - c.at("C"));
            max_dev = std::max({max_dev, da, db, dc});
            table.rows.push_back(
                {quantum->samples[i].t, q.at("A"), q.at("B"), q.at("C"), q.at("norm"), c.at("energy"), da, db, dc});
        }
    }

    json summary{{"mode", a.mode}, {"h", h.to_string()}, {"rows", rows}};
    if (want_quantum) summary["cutoff"] = rep.cutoff;
    if (a.mode == "both") summary["max_deviation"] = std::stod(fmt(max_dev));
    summary["pass"] = !guard_time.has_value();
    if (guard_time) summary["last_valid_time"] = std::stod(fmt(*guard_time));
    out.emit("evolve", table, summary);
    if (guard_time) {
        std::cerr << "error: " << guard_message << "; last valid time " << fmt(*guard_time) << "\n";
        return kExitFail;
    }
    return kExitPass;
}

// ---------------------------------------------------------------- freeparticle

struct FreeArgs {
    double k = 1.0;
    std::optional<std::string> tau0;
    std::optional<std::string> start;
    double tmax = 5.0;
    int steps = 50;
    double tol = 1e-10;
    double check_tol = 1e-8;
};

int run_freeparticle(const FreeArgs& a, const Output& out) {
    if (a.tau0 && a.start) throw DomainError("give either --tau0 or --start, not both");
    if (!(a.k > 0.0)) throw DomainError("k must be > 0");
    ClassicalState start{0.0, a.k, 0.0};
    if (a.start) {
        const auto vw = parse_pair(*a.start, "--start");
        validate(ChartPoint::canonical(vw[0], vw[1]));
        start = {vw[0], vw[1], 0.0};
    } else if (a.tau0) {
        const ChartPoint p = convert(ChartPoint::tau(parse_complex(*a.tau0, "--tau0")), Chart::Canonical, a.k);
        start = {p.coords[0], p.coords[1], 0.0};
    }
    const std::vector<double> grid = time_grid(a.tmax, a.steps);
    const Trajectory traj = classical_evolve(basic_symbol(Generator::C, a.k), a.k, start, grid, a.tol);
    Table table{{"t", "v", "w", "v_exact", "w_exact", "abs_error", "r", "p", "h_radial"}, {}};
    double worst = 0.0;
    for (const auto& s : traj.samples) {
        const auto& cs = std::get<ClassicalState>(s.state);
        const ClassicalState exact = free_particle_analytic(start, a.k, s.t);
        const double err = std::max(std::abs(cs.v - exact.v), std::abs(cs.w - exact.w));
        worst = std::max(worst, err);
        const RadialState rs = to_radial(cs);
        table.rows.push_back({s.t, cs.v, cs.w, exact.v, exact.w, err, rs.r, rs.p, radial_free_hamiltonian(rs, 2 * a.k)});
    }
    const bool pass = worst <= a.check_tol;
    out.emit("freeparticle", table,
             json{{"h", std::stod(fmt(basic_symbol(Generator::C, a.k).evaluate(start.v, start.w)))},
                  {"max_abs_error", std::stod(fmt(worst))},
                  {"pass", pass}});
    return pass ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------- casimir-check

struct CasimirArgs {
    int n = 2;
    int d = 12;
    double tol = 1e-9;
};

int run_casimir(const CasimirArgs& a, const Output& out) {
    const nbody::MultiOscRep rep{a.n, a.d};
    rep.validate();
    const auto modes = nbody::build_mode_operators(rep);
    const auto inv = nbody::build_invariants(rep, modes);
    const double residual = nbody::casimir_identity_check(rep, inv);
    const double k0_residual = nbody::k0_spectrum_residual(rep, inv);
    const auto spectrum = nbody::l_spectrum_check(rep, inv, a.tol);
    const bool pass = residual <= a.tol && k0_residual <= a.tol && spectrum.pass;
    json sectors = json::array();
    for (const auto& s : spectrum.sectors) {
        sectors.push_back(json{{"n_bar", s.total_excitation},
                               {"ell", s.ell},
                               {"l", std::stod(fmt(s.l))},
                               {"eigenvalue", std::stod(fmt(s.eigenvalue))},
                               {"predicted", std::stod(fmt(s.predicted))},
                               {"k", std::stod(fmt(s.k))},
                               {"multiplicity", s.multiplicity}});
    }
    const json report{{"N", a.n},
                      {"d", a.d},
                      {"dimension", rep.dimension()},
                      {"safe_level", rep.safe_level()},
                      {"residual", std::stod(fmt(residual))},
                      {"k0_residual", std::stod(fmt(k0_residual))},
                      {"l_spectrum_max_error", std::stod(fmt(spectrum.max_error))},
                      {"pass", pass},
                      {"sectors", sectors}};
    const std::string text = report.dump(2) + "\n";
    if (out.to_dir()) out.write_file("casimir.json", text);
    std::cout << text;
    return pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-N checks of the SU(1,1) coherent-state classical limit"};
    app.name("cohlim");
    app.set_help_flag("--help", "Print this help message and exit");
    app.set_config("--config", "", "INI file; one section per subcommand, flags win");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);

    Output out;
    app.add_flag("--json", out.json_summary, "JSON summaries")->configurable(false);
    app.add_option("--out", out.out_dir, "Output directory for CSV/JSON files");

    auto strict = [](CLI::App* sub) {
        sub->set_help_flag("--help", "Print this help message and exit");
        sub->fallthrough();
        sub->allow_config_extras(CLI::config_extras_mode::error);
        return sub;
    };

    TransformArgs ta;
    auto* transform = strict(app.add_subcommand("transform", "Convert a point between charts"));
    transform->add_option("--chart", ta.chart, "Source chart: xi, zeta, tau, polar, halfplane, canonical");
    transform->add_option("--coords", ta.coords, "Two comma-separated coordinates")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join)->required();
    transform->add_option("--k", ta.k, "Bargmann index (canonical chart)");
    transform->add_option("--to", ta.to, "Target chart (repeatable)");

    SymbolsArgs sa;
    auto* symbols = strict(app.add_subcommand("symbols", "Coherent-state symbols of the generators"));
    symbols->add_option("--N", sa.n);
    symbols->add_option("--k", sa.k);
    symbols->add_option("--tau", sa.tau, "re,im")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    symbols->add_option("--cutoff", sa.cutoff);

    OverlapArgs oa;
    auto* overlap = strict(app.add_subcommand("overlap", "Coherent-state overlaps, closed form and brute force"));
    overlap->add_option("--N", oa.n, "Comma-separated N values")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    overlap->add_option("--k", oa.k);
    overlap->add_option("--tau", oa.tau, "re,im")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    overlap->add_option("--tau2", oa.tau2, "re,im")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);

    ResolutionArgs ra;
    auto* resolution = strict(app.add_subcommand("resolution-check", "Quadrature check of the resolution of identity"));
    resolution->add_option("--N", ra.n);
    resolution->add_option("--k", ra.k);
    resolution->add_option("--max-n", ra.max_n);
    resolution->add_option("--order", ra.order);
    resolution->add_option("--rule", ra.rule, "legendre, jacobi or auto");
    resolution->add_option("--tol", ra.tol);

    LimitArgs la;
    auto* limit = strict(app.add_subcommand("limit-check", "Large-N sweeps of the classical-limit conditions"));
    limit->add_option("--study", la.study,
                      "overlap-decay, factorization, commutator, hamiltonian, injectivity or all")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    limit->add_option("--N", la.n, "Comma-separated increasing N values")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    limit->add_option("--k", la.k);
    limit->add_option("--tau", la.tau, "re,im")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    limit->add_option("--tau2", la.tau2, "re,im (overlap partner)")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    limit->add_option("--x", la.x, "Generator name or polynomial in A, B, C");
    limit->add_option("--y", la.y, "Generator name or polynomial in A, B, C");
    limit->add_option("--h", la.h, "Hamiltonian polynomial");
    limit->add_option("--grid", la.grid, "Injectivity grid points per side");
    limit->add_option("--radius", la.radius, "Injectivity grid half-width");

    EvolveArgs ea;
    auto* evolve = strict(app.add_subcommand("evolve", "Quantum and classical time evolution"));
    evolve->add_option("--mode", ea.mode, "classical, quantum or both");
    evolve->add_option("--h", ea.h, "Hamiltonian polynomial");
    evolve->add_option("--k", ea.k);
    evolve->add_option("--tau0", ea.tau0, "Initial tau as re,im")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    evolve->add_option("--start", ea.start, "Initial canonical point v,w")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    evolve->add_option("--N", ea.n);
    evolve->add_option("--tmax", ea.tmax);
    evolve->add_option("--steps", ea.steps);
    evolve->add_option("--tol", ea.tol, "Classical integrator tolerance");
    evolve->add_option("--cutoff", ea.cutoff);

    FreeArgs fa;
    auto* free = strict(app.add_subcommand("freeparticle", "Free particle: integrator against the closed form"));
    free->add_option("--k", fa.k);
    free->add_option("--tau0", fa.tau0, "Initial tau as re,im")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    free->add_option("--start", fa.start, "Initial canonical point v,w")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    free->add_option("--tmax", fa.tmax);
    free->add_option("--steps", fa.steps);
    free->add_option("--tol", fa.tol, "Integrator tolerance");
    free->add_option("--check-tol", fa.check_tol, "Pass threshold on the deviation");

    CasimirArgs ca;
    auto* casimir = strict(app.add_subcommand("casimir-check", "Brute-force oscillator Casimir and L^2 checks"));
    casimir->add_option("--N", ca.n);
    casimir->add_option("--d", ca.d, "Levels per mode");
    casimir->add_option("--tol", ca.tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitConfig;
    }

    try {
        if (*transform) return run_transform(ta, out);
        if (*symbols) return run_symbols(sa, out);
        if (*overlap) return run_overlap(oa, out);
        if (*resolution) return run_resolution(ra, out);
        if (*limit) return run_limit_check(la, out);
        if (*evolve) return run_evolve(ea, out);
        if (*free) return run_freeparticle(fa, out);
        if (*casimir) return run_casimir(ca, out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
