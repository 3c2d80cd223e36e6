#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oscibath/kernels.hpp"
#include "oscibath/network.hpp"
#include "oscibath/oracles.hpp"
#include "oscibath/report.hpp"
#include "oscibath/run_config.hpp"
#include "oscibath/verify.hpp"
#include "oscibath/white_noise.hpp"

namespace {

using namespace oscibath;

struct CliState {
    RunConfig cfg;
    int exit_code = 0;
};

nlohmann::json amplitude_to_json(const ComplexAmplitude& k) {
    return {{"re", k.re}, {"im", k.im}, {"magnitude", k.magnitude()}, {"phase", k.phase()}};
}

// ---- modes ------------------------------------------------------------------

struct ModesCli {
    int n = 4;
    double mass = 1.0, omega = 1.0, coupling = 0.0, hbar = 1.0;
    std::string format;
};

void run_modes(const ModesCli& p, CliState& state) {
    net::OscillatorNetwork network{p.n, p.mass, p.omega, p.coupling, p.hbar};
    const net::ModeSpectrum spectrum = net::mode_spectrum(network);
    const OutputFormat fmt = parse_format(p.format);

    if (fmt == OutputFormat::json) {
        std::cout << net::spectrum_to_json(spectrum, 2) << '\n';
    } else if (fmt == OutputFormat::csv) {
        std::ostringstream out;
        out.precision(17);
        out << "index,eigenvalue\n";
        const auto values = spectrum.all_eigenvalues();
        for (std::size_t i = 0; i < values.size(); ++i) out << i << ',' << values[i] << '\n';
        std::cout << out.str();
    } else {
        std::ostringstream out;
        out.precision(12);
        out << "star network: n = " << spectrum.n << ", C = " << spectrum.coupling << '\n';
        if (spectrum.all_degenerate) {
            out << "  all eigenvalues zero (C = 0), multiplicity " << spectrum.n << '\n';
        } else {
            out << "  lambda_+ = " << spectrum.lambda_plus << '\n'
                << "  lambda_- = " << spectrum.lambda_minus << '\n'
                << "  degenerate value " << spectrum.degenerate_value << " (multiplicity "
                << spectrum.degenerate_multiplicity << ")\n";
        }
        std::cout << out.str();
    }
    (void)state;
}

// ---- table1 -----------------------------------------------------------------

struct TableCli {
    double coupling = 1.0;
    double perturbation = 0.0;
    std::string format;
};

void run_table(const TableCli& p, CliState& state) {
    const OutputFormat fmt = parse_format(p.format);
    struct Row {
        int n;
        double closed_plus, closed_minus, brute_plus, brute_minus, max_abs_diff;
    };
    std::vector<Row> rows;
    bool pass = true;

    for (int n = 2; n <= 10; ++n) {
        net::OscillatorNetwork network{n, 1.0, 1.0, p.coupling, 1.0};
        const net::ModeSpectrum spectrum = net::mode_spectrum(network);
        std::vector<double> closed = spectrum.all_eigenvalues();
        // test hook: shift lambda_+ to demonstrate the failure path
        for (double& v : closed)
            if (v == spectrum.lambda_plus) v += p.perturbation;
        std::sort(closed.begin(), closed.end());

        const auto brute = oracles::dense_eigensolve(net::characteristic_matrix(network));
        std::vector<double> brute_real(brute.size());
        for (std::size_t i = 0; i < brute.size(); ++i) brute_real[i] = brute[i].real();
        std::sort(brute_real.begin(), brute_real.end());

        double diff = 0.0;
        for (std::size_t i = 0; i < closed.size(); ++i)
            diff = std::max(diff, std::abs(closed[i] - brute_real[i]));
        pass = pass && diff < 1e-10;
        rows.push_back({n, spectrum.lambda_plus + p.perturbation, spectrum.lambda_minus,
                        brute_real.back(), brute_real.front(), diff});
    }

    if (fmt == OutputFormat::json) {
        auto arr = nlohmann::json::array();
        for (const Row& r : rows)
            arr.push_back({{"n", r.n},
                           {"closed_plus", r.closed_plus},
                           {"closed_minus", r.closed_minus},
                           {"brute_plus", r.brute_plus},
                           {"brute_minus", r.brute_minus},
                           {"max_abs_diff", r.max_abs_diff}});
        std::cout << nlohmann::json{{"coupling", p.coupling}, {"rows", arr}, {"pass", pass}}
                         .dump(2)
                  << '\n';
    } else if (fmt == OutputFormat::csv) {
        std::ostringstream out;
        out.precision(17);
        out << "n,closed_plus,closed_minus,brute_plus,brute_minus,max_abs_diff\n";
        for (const Row& r : rows)
            out << r.n << ',' << r.closed_plus << ',' << r.closed_minus << ','
                << r.brute_plus << ',' << r.brute_minus << ',' << r.max_abs_diff << '\n';
        std::cout << out.str();
    } else {
        std::ostringstream out;
        out.precision(12);
        out << "nondegenerate eigenvalues at C = " << p.coupling << "\n"
            << "   n      lambda_+          lambda_-          max |closed - brute|\n";
        for (const Row& r : rows)
            out << "  " << std::setw(2) << r.n << "   " << std::setw(16) << r.closed_plus
                << "  " << std::setw(16) << r.closed_minus << "  " << std::scientific
                << r.max_abs_diff << std::defaultfloat << '\n';
        out << (pass ? "PASS" : "FAIL") << " (every row within 1e-10 of brute force)\n";
        std::cout << out.str();
    }
    if (!pass) state.exit_code = 1;
}

// ---- kernel / sweep ---------------------------------------------------------

struct KernelCli {
    std::string kind;
    int n = 4;
    double mass = 1.0, omega = 1.0, coupling = 0.0, hbar = 1.0;
    double t = 1.0, x = 0.0, x0 = 0.0, x1 = 0.0, x2 = 0.0;
    std::vector<double> coords;
    std::string form = "standard";
    int branch = 0;
    std::string sweep;  // "t0:t1:steps"
    std::string format;
};

kernels::KernelForm parse_form(const std::string& name) {
    if (name == "standard") return kernels::KernelForm::standard;
    if (name == "paper_literal") return kernels::KernelForm::paper_literal;
    throw InvalidInput("unknown kernel form '" + name +
                       "' (expected standard or paper_literal)");
}

ComplexAmplitude eval_kernel(const KernelCli& p, double t) {
    const kernels::KernelForm form = parse_form(p.form);
    if (p.kind == "sho") {
        return kernels::sho_kernel({p.mass, p.omega, p.hbar, t, form}, p.x, p.x0);
    }
    if (p.kind == "pair") {
        kernels::PairSpec spec{p.n,    p.mass, p.omega,  p.coupling,
                               p.hbar, t,      p.branch, form};
        return kernels::pair_kernel(spec, p.x1, p.x2);
    }
    net::OscillatorNetwork network{p.n, p.mass, p.omega, p.coupling, p.hbar};
    return kernels::full_propagator(network, p.coords, t, form);
}

void run_kernel(const KernelCli& p, CliState& state, bool sweep_required) {
    if (sweep_required && p.sweep.empty())
        throw InvalidInput("sweep: --range t0:t1:steps is required");
    const OutputFormat fmt = parse_format(p.format);

    if (!p.sweep.empty()) {
        double t0 = 0.0, t1 = 0.0;
        int steps = 0;
        if (std::sscanf(p.sweep.c_str(), "%lf:%lf:%d", &t0, &t1, &steps) != 3)
            throw InvalidInput("sweep range must be t0:t1:steps");
        if (!(t0 > 0.0) || !(t1 > t0) || steps < 2)
            throw InvalidInput("sweep range needs 0 < t0 < t1 and steps >= 2");
        std::ostringstream out;
        out.precision(17);
        out << "t,re,im,magnitude,phase\n";
        for (int i = 0; i < steps; ++i) {
            const double t = t0 + (t1 - t0) * i / (steps - 1);
            const ComplexAmplitude k = eval_kernel(p, t);
            out << t << ',' << k.re << ',' << k.im << ',' << k.magnitude() << ','
                << k.phase() << '\n';
        }
        std::cout << out.str();
        return;
    }

    const ComplexAmplitude k = eval_kernel(p, p.t);
    if (fmt == OutputFormat::json) {
        std::cout << amplitude_to_json(k).dump(2) << '\n';
    } else if (fmt == OutputFormat::csv) {
        std::ostringstream out;
        out.precision(17);
        out << "re,im,magnitude,phase\n"
            << k.re << ',' << k.im << ',' << k.magnitude() << ',' << k.phase() << '\n';
        std::cout << out.str();
    } else {
        std::ostringstream out;
        out.precision(12);
        out << "K = " << k.re << (k.im < 0 ? " - " : " + ") << std::abs(k.im)
            << " i   (|K| = " << k.magnitude() << ", arg = " << k.phase() << ")\n";
        std::cout << out.str();
    }
    (void)state;
}

void add_kernel_options(CLI::App* cmd, KernelCli& p, const CliState& state,
                        bool sweep_required) {
    cmd->add_option("kind", p.kind, "kernel family")
        ->required()
        ->check(CLI::IsMember({"sho", "pair", "full"}));
    cmd->add_option("--m,--mass", p.mass, "mode/node mass");
    cmd->add_option("--omega", p.omega, "mode/node frequency");
    cmd->add_option("--n", p.n, "network node count (pair, full)");
    cmd->add_option("--coupling", p.coupling, "bilinear coupling C (pair, full)");
    cmd->add_option("--hbar", p.hbar, "Planck constant")->default_val(state.cfg.hbar);
    cmd->add_option("--t", p.t, "propagation time");
    cmd->add_option("--x", p.x, "endpoint coordinate (sho)");
    cmd->add_option("--x0", p.x0, "initial coordinate (sho, standard form)");
    cmd->add_option("--x1", p.x1, "system coordinate (pair)");
    cmd->add_option("--x2", p.x2, "symmetric bath coordinate (pair)");
    cmd->add_option("--coords", p.coords, "endpoint coordinates, comma separated (full)")
        ->delimiter(',');
    cmd->add_option("--form", p.form, "standard or paper_literal")
        ->check(CLI::IsMember({"standard", "paper_literal"}));
    cmd->add_option("--branch", p.branch, "rotation branch n' in phi = (2n'+1) pi/4");
    cmd->add_option(sweep_required ? "--range" : "--sweep", p.sweep,
                    "time sweep t0:t1:steps, emits CSV");
    cmd->add_option("--format", p.format, "json, csv or human")
        ->default_val(to_string(state.cfg.format));
}

// ---- verify -----------------------------------------------------------------

struct VerifyCli {
    std::string suite = "all";
    int steps = 2000;
    std::uint64_t seed = 0;
    std::string format;
    std::string convergence;
    std::string dump_wavefield;
    bool no_timing = false;
};

void run_verify(const VerifyCli& p, CliState& state) {
    const OutputFormat fmt = parse_format(p.format);

    if (!p.convergence.empty()) {
        verify::ConvergenceStudy study;
        if (p.convergence == "det")
            study = verify::ConvergenceStudy::det;
        else if (p.convergence == "qform")
            study = verify::ConvergenceStudy::qform;
        else
            throw InvalidInput("unknown convergence study '" + p.convergence +
                               "' (expected det or qform)");
        const auto rows = verify::wn_convergence(study, 1.0, 1.0, state.cfg.hbar,
                                                 {250, 500, 1000, 2000});
        std::cout << verify::convergence_to_csv(rows);
        return;
    }

    if (!p.dump_wavefield.empty()) {
        const oracles::Harmonic1D ham{1.0, 1.0, state.cfg.hbar};
        const oracles::EvolutionGrid grid{10.0, 1024, 1e-3, 0.0};
        const oracles::GaussianPacket packet{{1.0}, {0.5}, 1.0};
        const oracles::WaveField field = oracles::evolve_wavepacket(ham, packet, grid, 0.5);
        std::ofstream out(p.dump_wavefield);
        if (!out) throw InvalidInput("cannot open '" + p.dump_wavefield + "' for writing");
        out << oracles::field_to_csv(field);
    }

    verify::VerifyOptions opts;
    opts.seed = p.seed;
    opts.wn_steps = p.steps;
    opts.config = state.cfg;
    const auto results = verify::run_acceptance(verify::parse_suite(p.suite), opts);

    std::vector<verify::VerificationReport> reports;
    for (const auto& criterion : results)
        for (const auto& r : criterion.details) reports.push_back(r);

    if (fmt == OutputFormat::json) {
        std::cout << verify::reports_to_json(reports, 2, p.no_timing) << '\n';
    } else if (fmt == OutputFormat::csv) {
        std::cout << verify::reports_to_csv(reports, p.no_timing);
    } else {
        std::cout << verify::criteria_summary(results) << '\n'
                  << verify::reports_to_human(reports);
    }
    if (!verify::all_pass(results)) state.exit_code = 1;
}

}  // namespace

int main(int argc, char** argv) {
    CliState state;
    try {
        if (auto cfg = RunConfig::from_environment()) state.cfg = *cfg;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    }

    CLI::App app{"normal-mode spectra, closed-form propagator kernels and white-noise"
                 " functional checks for a star-coupled oscillator network"};
    app.require_subcommand(1);

    ModesCli modes_p;
    auto* modes = app.add_subcommand("modes", "closed-form mode spectrum");
    modes->add_option("--n", modes_p.n, "node count (system + bath)")->required();
    modes->add_option("--coupling", modes_p.coupling, "bilinear coupling C")->required();
    modes->add_option("--m,--mass", modes_p.mass, "node mass");
    modes->add_option("--omega", modes_p.omega, "node frequency");
    modes->add_option("--hbar", modes_p.hbar, "Planck constant")->default_val(state.cfg.hbar);
    modes->add_option("--format", modes_p.format, "json, csv or human")
        ->default_val(to_string(state.cfg.format));
    modes->callback([&] { run_modes(modes_p, state); });

    TableCli table_p;
    auto* table = app.add_subcommand("table1",
                                     "closed form vs brute force for n = 2..10");
    table->add_option("--coupling", table_p.coupling, "bilinear coupling C");
    table->add_option("--inject-perturbation", table_p.perturbation,
                      "shift lambda_+ to exercise the failure path")
        ->group("");  // hidden test hook
    table->add_option("--format", table_p.format, "json, csv or human")
        ->default_val(to_string(state.cfg.format));
    table->callback([&] { run_table(table_p, state); });

    KernelCli kernel_p;
    auto* kernel = app.add_subcommand("kernel", "evaluate a propagator kernel");
    add_kernel_options(kernel, kernel_p, state, false);
    kernel->callback([&] { run_kernel(kernel_p, state, false); });

    KernelCli sweep_p;
    auto* sweep = app.add_subcommand("sweep", "kernel values over a time range (CSV)");
    add_kernel_options(sweep, sweep_p, state, true);
    sweep->callback([&] { run_kernel(sweep_p, state, true); });

    VerifyCli verify_p;
    verify_p.seed = state.cfg.seed;
    auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
    verify_cmd->add_option("suite", verify_p.suite, "spectrum, wn, kernels, pde or all")
        ->check(CLI::IsMember({"spectrum", "wn", "kernels", "pde", "all"}));
    verify_cmd->add_option("--steps", verify_p.steps, "finest white-noise grid")
        ->check(CLI::Range(10, 20000));
    verify_cmd->add_option("--seed", verify_p.seed, "random seed");
    verify_cmd->add_option("--convergence", verify_p.convergence,
                           "emit a det|qform convergence study as CSV and exit");
    verify_cmd->add_option("--dump-wavefield", verify_p.dump_wavefield,
                           "write the evolved 1D reference wavefield as CSV");
    verify_cmd->add_flag("--no-timing", verify_p.no_timing,
                         "zero runtime fields (byte-identical reruns)");
    verify_cmd->add_option("--format", verify_p.format, "json, csv or human")
        ->default_val(to_string(state.cfg.format));
    verify_cmd->callback([&] { run_verify(verify_p, state); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return 2;
    } catch (const InvalidInput& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const DomainError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const CausticError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 3;
    } catch (const SingularOperatorError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 3;
    } catch (const InvertedModeError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 4;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return state.exit_code;
}
