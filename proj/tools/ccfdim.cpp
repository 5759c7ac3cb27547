#include "CLI11.hpp"
#include "json.hpp"

#include "ccf/assembly.hpp"
#include "ccf/errors.hpp"
#include "ccf/geometry.hpp"
#include "ccf/ifs.hpp"
#include "ccf/matrix_io.hpp"
#include "ccf/solver.hpp"
#include "ccf/spectral.hpp"
#include "ccf/tail_bounds.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace ccf;

namespace {

// emit doubles as JSON numbers with 15 significant digits
json num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return json::parse(buf);
}

json num_array(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v)
        a.push_back(num(x));
    return a;
}

struct SetChoice {
    Alphabet alphabet;
    WeightFamily weights = WeightFamily::MobiusDerivative;
    std::string name;
};

std::vector<cplx> read_digit_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open digit file " + path);
    std::vector<cplx> out;
    std::string line;
    while (std::getline(in, line)) {
        for (char& c : line)
            if (c == ',')
                c = ' ';
        std::istringstream ss(line);
        double re, im;
        if (ss >> re >> im) {
            out.emplace_back(re, im);
            continue;
        }
        std::istringstream probe(line);
        std::string word;
        if (probe >> word && word[0] != '#')
            throw std::invalid_argument("bad digit line: " + line);
    }
    return out;
}

SetChoice parse_set(const std::string& s) {
    if (s == "I1")
        return {Alphabet::i1(), WeightFamily::MobiusDerivative, "I1"};
    if (s == "I2")
        return {Alphabet::i2(), WeightFamily::MobiusDerivative, "I2"};
    if (s == "I3")
        return {Alphabet::i3(), WeightFamily::MobiusDerivative, "I3"};
    if (s == "special")
        return {Alphabet::special_example(), WeightFamily::SpecialExample, "special"};
    if (s.rfind("custom:", 0) == 0)
        return {Alphabet::custom_finite(read_digit_file(s.substr(7))),
                WeightFamily::MobiusDerivative, "custom"};
    throw std::invalid_argument("unknown digit set '" + s +
                                "'; expected I1, I2, I3, special, or custom:<file>");
}

Alphabet alphabet_from_json(const json& j) {
    const std::string set = j.at("set").get<std::string>();
    if (set == "custom") {
        std::vector<cplx> digits;
        for (const auto& d : j.at("digits"))
            digits.emplace_back(d.at(0).get<double>(), d.at(1).get<double>());
        return Alphabet::custom_finite(std::move(digits));
    }
    return parse_set(set).alphabet;
}

// shared flags; n is resolved from --h when that spelling is used
struct CommonOpts {
    std::string set = "I1";
    int n = 50;
    double h = 0.0;
    double radius = 100.0;
    int threads = 0;
    double tol_eig = 1e-10;
    double tol_root = 1e-5;
    std::string out;
};

void add_mesh_opts(CLI::App* sub, CommonOpts& o) {
    sub->set_help_flag("--help", "print this help and exit"); // frees -h for the mesh width
    auto* n_opt = sub->add_option("--n", o.n, "mesh squares per unit length, even");
    auto* h_opt = sub->add_option("--h", o.h, "mesh width, the reciprocal of an even count");
    n_opt->excludes(h_opt);
    h_opt->excludes(n_opt);
}

void add_set_opts(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--set", o.set, "digit set: I1, I2, I3, special, or custom:<file>");
    sub->add_option("--r", o.radius, "digit truncation radius")->check(CLI::PositiveNumber);
    sub->add_option("--threads", o.threads, "OpenMP thread count")->check(CLI::PositiveNumber);
}

int resolve_n(const CLI::App* sub, CommonOpts& o) {
    if (sub->count("--h")) {
        if (!(o.h > 0.0))
            throw std::invalid_argument("--h must be positive");
        const long n = std::lround(1.0 / o.h);
        if (n < 2 || n % 2 != 0 || std::abs(n * o.h - 1.0) > 0.01)
            throw std::invalid_argument("--h must be the reciprocal of an even mesh count");
        o.n = static_cast<int>(n);
    }
    if (o.n < 2 || o.n % 2 != 0)
        throw std::invalid_argument("--n must be even and at least 2");
    if (o.threads > 0)
        omp_set_num_threads(o.threads);
    return o.n;
}

void emit(const json& j, const std::string& out, const std::string& summary) {
    if (out.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream f(out);
    f << j.dump(2) << '\n';
    if (!f)
        throw std::runtime_error("cannot write " + out);
    std::cout << summary;
}

json base_json(const char* command, const SetChoice& c, const CommonOpts& o) {
    json j;
    j["command"] = command;
    j["set"] = c.name;
    if (c.name == "custom") {
        json d = json::array();
        for (cplx b : c.alphabet.members)
            d.push_back(json::array({num(b.real()), num(b.imag())}));
        j["digits"] = d;
    }
    j["n"] = o.n;
    j["h"] = num(1.0 / o.n);
    j["radius"] = num(o.radius);
    j["weights"] = c.weights == WeightFamily::SpecialExample ? "special" : "mobius";
    return j;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified bounds for Hausdorff dimensions of complex continued fraction sets"};
    app.require_subcommand(1);
    int exit_code = 0;

    CommonOpts o;
    double s_arg = 1.5;
    int degree = 2;
    std::string dump_prefix, cert_file;

    auto* dim = app.add_subcommand("dimension", "certified dimension bracket");
    add_set_opts(dim, o);
    add_mesh_opts(dim, o);
    dim->add_option("--tol-eig", o.tol_eig, "eigenvalue tolerance")->check(CLI::PositiveNumber);
    dim->add_option("--tol-root", o.tol_root, "landing zone width for log r")
        ->check(CLI::PositiveNumber);
    dim->add_option("--out", o.out, "write JSON here instead of stdout");
    dim->callback([&] {
        const SetChoice c = parse_set(o.set);
        resolve_n(dim, o);
        SolveConfig cfg{c.alphabet, o.n, o.radius, c.weights, o.tol_eig, o.tol_root};
        const auto t0 = std::chrono::steady_clock::now();
        const DimensionBracket b = bracket_dimension(cfg);
        json j = base_json("dimension", c, o);
        j["tol_eig"] = num(o.tol_eig);
        j["tol_root"] = num(o.tol_root);
        j["dof"] = b.dof;
        j["s_lower"] = num(b.s_lower);
        j["s_upper"] = num(b.s_upper);
        j["r_at_lower"] = num(b.r_at_lower);
        j["r_at_upper"] = num(b.r_at_upper);
        j["alpha_lower"] = num(b.alpha_lower);
        j["alpha_upper"] = num(b.alpha_upper);
        j["evals_lower"] = b.evals_lower;
        j["evals_upper"] = b.evals_upper;
        j["runtime_s"] = num(seconds_since(t0));
        j["certificate_lower"] = num_array(b.cert_lower);
        j["certificate_upper"] = num_array(b.cert_upper);
        char line[256];
        std::snprintf(line, sizeof line, "dof %zu\ndimension in [%.15g, %.15g], width %.3g\n",
                      b.dof, b.s_lower, b.s_upper, b.s_upper - b.s_lower);
        emit(j, o.out, line);
    });

    auto* rad = app.add_subcommand("radius", "spectral radii of both corrected families at s");
    add_set_opts(rad, o);
    add_mesh_opts(rad, o);
    rad->add_option("--s", s_arg, "parameter s")->required();
    rad->add_option("--tol-eig", o.tol_eig, "eigenvalue tolerance")->check(CLI::PositiveNumber);
    rad->add_option("--dump-matrix", dump_prefix, "write both matrices as <prefix>.a, <prefix>.b");
    rad->add_option("--out", o.out, "write JSON here instead of stdout");
    rad->callback([&] {
        const SetChoice c = parse_set(o.set);
        resolve_n(rad, o);
        SolveConfig cfg{c.alphabet, o.n, o.radius, c.weights, o.tol_eig, o.tol_root};
        const auto t0 = std::chrono::steady_clock::now();
        const RadiusPair rp = radius_bounds(cfg, s_arg);
        json j = base_json("radius", c, o);
        j["tol_eig"] = num(o.tol_eig);
        j["s"] = num(s_arg);
        j["dof"] = rp.dof;
        j["alpha_a"] = num(rp.alpha_a);
        j["alpha_b"] = num(rp.alpha_b);
        j["r_a"] = num(rp.r_a);
        j["r_b"] = num(rp.r_b);
        j["cw_lower_a"] = num(rp.eig_a.cw_lower);
        j["cw_upper_a"] = num(rp.eig_a.cw_upper);
        j["cw_lower_b"] = num(rp.eig_b.cw_lower);
        j["cw_upper_b"] = num(rp.eig_b.cw_upper);
        j["iterations_a"] = rp.eig_a.iterations;
        j["iterations_b"] = rp.eig_b.iterations;
        if (!dump_prefix.empty()) {
            const MeshDomain mesh = build_mesh_domain(o.n, Region::HalfDisk);
            dump_matrix(assemble({&mesh, c.alphabet, s_arg, o.radius, rp.alpha_a,
                                  Correction::Lower, c.weights}),
                        dump_prefix + ".a");
            dump_matrix(assemble({&mesh, c.alphabet, s_arg, o.radius, rp.alpha_b,
                                  Correction::Upper, c.weights}),
                        dump_prefix + ".b");
            j["matrix_a"] = dump_prefix + ".a";
            j["matrix_b"] = dump_prefix + ".b";
        }
        j["runtime_s"] = num(seconds_since(t0));
        char line[256];
        std::snprintf(line, sizeof line, "s %.15g  r_a %.15g  r_b %.15g  dof %zu\n", s_arg,
                      rp.r_a, rp.r_b, rp.dof);
        emit(j, o.out, line);
    });

    auto* tail = app.add_subcommand("tail", "closed-form truncation bounds delta and eta");
    tail->add_option("--set", o.set, "digit set: I1 or I2");
    tail->add_option("--s", s_arg, "parameter s, above 1")->required();
    tail->add_option("--r", o.radius, "digit truncation radius, above 2")
        ->check(CLI::PositiveNumber);
    tail->add_option("--out", o.out, "write JSON here instead of stdout");
    tail->callback([&] {
        if (o.set != "I1" && o.set != "I2")
            throw std::invalid_argument("tail bounds are defined for the infinite sets I1, I2");
        const TailFamily f = o.set == "I2" ? TailFamily::I2 : TailFamily::I1;
        const double d = delta_upper(f, s_arg, o.radius);
        const double e = eta_lower(f, s_arg, o.radius);
        json j;
        j["command"] = "tail";
        j["set"] = o.set;
        j["s"] = num(s_arg);
        j["radius"] = num(o.radius);
        j["delta_upper"] = num(d);
        j["eta_lower"] = num(e);
        char line[128];
        std::snprintf(line, sizeof line, "delta %.15g  eta %.15g\n", d, e);
        emit(j, o.out, line);
    });

    auto* ho = app.add_subcommand("higher-order", "uncertified root of the degree-d collocation");
    add_set_opts(ho, o);
    add_mesh_opts(ho, o);
    ho->add_option("--degree", degree, "tensor Lagrange degree")->check(CLI::Range(1, 4));
    ho->add_option("--out", o.out, "write JSON here instead of stdout");
    ho->callback([&] {
        const SetChoice c = parse_set(o.set);
        resolve_n(ho, o);
        SolveConfig cfg{c.alphabet, o.n, o.radius, c.weights, o.tol_eig, o.tol_root};
        const auto t0 = std::chrono::steady_clock::now();
        const double root = solve_uncorrected(cfg, degree);
        const MeshDomain mesh = build_mesh_domain(o.n, Region::HalfDisk);
        json j = base_json("higher-order", c, o);
        j["degree"] = degree;
        j["dof"] = higher_order_nodes(mesh, degree).size();
        j["s_root"] = num(root);
        j["runtime_s"] = num(seconds_since(t0));
        char line[128];
        std::snprintf(line, sizeof line, "degree %d  s_root %.15g\n", degree, root);
        emit(j, o.out, line);
    });

    auto* dump = app.add_subcommand("dump-eigenfunction",
                                    "eigenvector of the uncorrected operator at s as CSV");
    add_set_opts(dump, o);
    add_mesh_opts(dump, o);
    dump->add_option("--s", s_arg, "parameter s")->required();
    dump->add_option("--out", o.out, "write CSV here instead of stdout");
    dump->callback([&] {
        const SetChoice c = parse_set(o.set);
        resolve_n(dump, o);
        const MeshDomain mesh = build_mesh_domain(o.n, Region::HalfDisk);
        const SparseRowMatrix M =
            assemble({&mesh, c.alphabet, s_arg, o.radius, 0.0, Correction::None, c.weights});
        const GeneralEigenResult ge = dominant_eigen_general(M, 1e-12, 500000);
        std::ostringstream csv;
        csv << "x,y,value\n";
        char line[128];
        for (size_t i = 0; i < mesh.size(); ++i) {
            std::snprintf(line, sizeof line, "%.15g,%.15g,%.15g\n", mesh.px(i), mesh.py(i),
                          ge.vec[i]);
            csv << line;
        }
        if (o.out.empty()) {
            std::cout << csv.str();
        } else {
            std::ofstream f(o.out);
            f << csv.str();
            if (!f)
                throw std::runtime_error("cannot write " + o.out);
            std::printf("lambda %.15g  %zu points  wrote %s\n", ge.lambda, mesh.size(),
                        o.out.c_str());
        }
    });

    auto* verify = app.add_subcommand("verify-from", "recheck the certificates of a stored run");
    verify->add_option("file", cert_file, "JSON produced by the dimension command")->required();
    verify->add_option("--threads", o.threads, "OpenMP thread count")->check(CLI::PositiveNumber);
    verify->callback([&] {
        try {
            if (o.threads > 0)
                omp_set_num_threads(o.threads);
            std::ifstream in(cert_file);
            if (!in)
                throw std::runtime_error("cannot open " + cert_file);
            const json j = json::parse(in);
            const Alphabet a = alphabet_from_json(j);
            const WeightFamily wf = j.at("weights").get<std::string>() == "special"
                                        ? WeightFamily::SpecialExample
                                        : WeightFamily::MobiusDerivative;
            const int n = j.at("n").get<int>();
            const double radius = j.at("radius").get<double>();
            const MeshDomain mesh = build_mesh_domain(n, Region::HalfDisk);
            auto check = [&](const char* side, const char* skey, const char* akey,
                             const char* ckey, Correction corr, Dominance dom) {
                const double s = j.at(skey).get<double>();
                const double alpha = j.at(akey).get<double>();
                const auto v = j.at(ckey).get<std::vector<double>>();
                const SparseRowMatrix M = assemble({&mesh, a, s, radius, alpha, corr, wf});
                const bool ok = verify_certificate(M, v, dom, 0.0);
                std::printf("%s certificate at s %.15g: %s\n", side, s, ok ? "PASS" : "FAIL");
                return ok;
            };
            const bool okA = check("lower", "s_lower", "alpha_lower", "certificate_lower",
                                   Correction::Lower, Dominance::LowerDominates);
            const bool okB = check("upper", "s_upper", "alpha_upper", "certificate_upper",
                                   Correction::Upper, Dominance::UpperDominates);
            if (!okA || !okB)
                exit_code = 1;
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(e.what()); // stored data problems are run errors, not usage
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}
