#include "oscibath/white_noise.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/LU>

#include "oscibath/rng.hpp"

namespace oscibath::wn {

namespace {
constexpr double kSingularTol = 1e-6;
constexpr long kMcBlock = 8192;
}  // namespace

void WhiteNoiseGrid::validate() const {
    if (!(time > 0.0)) throw InvalidInput("white-noise grid: time must be > 0");
    if (steps < 2) throw InvalidInput("white-noise grid: steps must be >= 2");
}

std::vector<double> WhiteNoiseGrid::nodes() const {
    validate();
    std::vector<double> taus(steps);
    const double d = dtau();
    for (int i = 0; i < steps; ++i) taus[i] = (i + 0.5) * d;
    return taus;
}

SppMatrix build_spp_matrix(const WhiteNoiseGrid& grid, double omega, double hbar) {
    grid.validate();
    if (!(omega >= 0.0)) throw InvalidInput("spp matrix: omega must be >= 0");
    if (!(hbar > 0.0)) throw InvalidInput("spp matrix: hbar must be > 0");

    const std::vector<double> taus = grid.nodes();
    const double d = grid.dtau();
    SppMatrix spp;
    spp.omega = omega;
    spp.hbar = hbar;
    spp.dtau = d;
    spp.entries.resize(grid.steps, grid.steps);
    const double scale = hbar * omega * omega * d;
    for (int i = 0; i < grid.steps; ++i)
        for (int j = 0; j < grid.steps; ++j)
            spp.entries(i, j) = scale * (grid.time - std::max(taus[i], taus[j]));
    return spp;
}

namespace {

Eigen::MatrixXd fredholm_operator(const SppMatrix& spp) {
    const auto n = spp.entries.rows();
    return Eigen::MatrixXd::Identity(n, n) - spp.entries / spp.hbar;
}

}  // namespace

double fredholm_det(const SppMatrix& spp) {
    return fredholm_operator(spp).partialPivLu().determinant();
}

double fredholm_det(const WhiteNoiseGrid& grid, double omega, double hbar) {
    return fredholm_det(build_spp_matrix(grid, omega, hbar));
}

double inverse_quadratic_form(const SppMatrix& spp, const WhiteNoiseGrid& grid) {
    grid.validate();
    if (spp.entries.rows() != grid.steps)
        throw InvalidInput("inverse_quadratic_form: matrix/grid size mismatch");

    const Eigen::MatrixXd op = fredholm_operator(spp);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(op);
    const double det = lu.determinant();
    if (std::abs(det) < kSingularTol) {
        std::ostringstream msg;
        msg << "singular operator: |det(I - S''/hbar)| = " << std::abs(det)
            << " < " << kSingularTol << " (tan-pole at Omega t = pi/2 + k pi)";
        throw SingularOperatorError(msg.str());
    }

    const double e = 1.0 / std::sqrt(grid.time);
    const Eigen::VectorXd rhs = Eigen::VectorXd::Constant(grid.steps, e);
    const Eigen::VectorXd u = lu.solve(rhs);
    return e * u.sum() * grid.dtau();
}

double inverse_quadratic_form(const WhiteNoiseGrid& grid, double omega, double hbar) {
    return inverse_quadratic_form(build_spp_matrix(grid, omega, hbar), grid);
}

double direct_quadratic_form(const SppMatrix& spp, const WhiteNoiseGrid& grid) {
    grid.validate();
    if (spp.entries.rows() != grid.steps)
        throw InvalidInput("direct_quadratic_form: matrix/grid size mismatch");
    const double e = 1.0 / std::sqrt(grid.time);
    const Eigen::VectorXd rhs = Eigen::VectorXd::Constant(grid.steps, e);
    const Eigen::VectorXd v = fredholm_operator(spp) * rhs;
    return e * v.sum() * grid.dtau();
}

double direct_quadratic_form(const WhiteNoiseGrid& grid, double omega, double hbar) {
    return direct_quadratic_form(build_spp_matrix(grid, omega, hbar), grid);
}

ComplexAmplitude assemble_sho_kernel(const WhiteNoiseGrid& grid, double mass,
                                     double omega, double hbar, double x) {
    if (!(mass > 0.0)) throw InvalidInput("assemble: mass must be > 0");
    const SppMatrix spp = build_spp_matrix(grid, omega, hbar);

    const Eigen::MatrixXd op = fredholm_operator(spp);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(op);
    const double det = lu.determinant();
    if (std::abs(det) < kSingularTol) {
        std::ostringstream msg;
        msg << "singular operator: |det(I - S''/hbar)| = " << std::abs(det)
            << " < " << kSingularTol;
        throw SingularOperatorError(msg.str());
    }

    const double e = 1.0 / std::sqrt(grid.time);
    const Eigen::VectorXd rhs = Eigen::VectorXd::Constant(grid.steps, e);
    const Eigen::VectorXd u = lu.solve(rhs);
    const double q = e * u.sum() * grid.dtau();
    if (std::abs(q) < kSingularTol) {
        std::ostringstream msg;
        msg << "caustic: inverse quadratic form " << q
            << " vanishes (tan(Omega t) = 0 branch) at Omega t = " << omega * grid.time;
        throw CausticError(msg.str(), omega, grid.time,
                           omega > 0.0 ? std::round(omega * grid.time / pi) * pi / omega
                                       : 0.0);
    }

    const Complex det_factor = 1.0 / std::sqrt(Complex(det, 0.0));
    const double tq = grid.time * q;
    const Complex root =
        std::sqrt(Complex(2.0 * pi * mass, 0.0) / Complex(0.0, hbar * tq));
    const Complex phase = std::exp(Complex(0.0, mass * x * x / (2.0 * hbar * tq)));
    return checked_amplitude(det_factor * root * phase / (2.0 * pi),
                             "assemble_sho_kernel");
}

double McEstimate::stderr_total() const {
    return std::sqrt(stderr_re * stderr_re + stderr_im * stderr_im);
}

McEstimate characteristic_functional_mc(const WhiteNoiseGrid& grid,
                                        const std::vector<double>& xi_nodes,
                                        long samples, std::uint64_t seed) {
    grid.validate();
    if (samples < 1000)
        throw InvalidInput("characteristic_functional_mc: samples must be >= 1000");
    if (static_cast<int>(xi_nodes.size()) != grid.steps)
        throw InvalidInput("characteristic_functional_mc: xi_nodes size mismatch");

    // <omega, xi> = sum_j z_j xi_j dtau with node variance 1/dtau, i.e.
    // z_j = g_j / sqrt(dtau): weight each node by xi_j sqrt(dtau).
    const double root_d = std::sqrt(grid.dtau());
    std::vector<double> weights(xi_nodes.size());
    for (std::size_t j = 0; j < xi_nodes.size(); ++j) {
        if (!std::isfinite(xi_nodes[j]))
            throw InvalidInput("characteristic_functional_mc: xi must be finite");
        weights[j] = xi_nodes[j] * root_d;
    }

    double sum_re = 0.0, sum_im = 0.0, sumsq_re = 0.0, sumsq_im = 0.0;
    long done = 0;
    for (std::uint64_t block = 0; done < samples; ++block) {
        GaussianSampler normals(substream_seed(seed, block));
        const long count = std::min<long>(kMcBlock, samples - done);
        double bre = 0.0, bim = 0.0, bre2 = 0.0, bim2 = 0.0;
        for (long s = 0; s < count; ++s) {
            double phase = 0.0;
            for (double w : weights) phase += w * normals.next();
            const double re = std::cos(phase);
            const double im = std::sin(phase);
            bre += re;
            bim += im;
            bre2 += re * re;
            bim2 += im * im;
        }
        sum_re += bre;
        sum_im += bim;
        sumsq_re += bre2;
        sumsq_im += bim2;
        done += count;
    }

    const double n = static_cast<double>(samples);
    const double mean_re = sum_re / n;
    const double mean_im = sum_im / n;
    const double var_re = std::max(0.0, (sumsq_re - n * mean_re * mean_re) / (n - 1.0));
    const double var_im = std::max(0.0, (sumsq_im - n * mean_im * mean_im) / (n - 1.0));

    McEstimate est;
    est.value = Complex(mean_re, mean_im);
    est.stderr_re = std::sqrt(var_re / n);
    est.stderr_im = std::sqrt(var_im / n);
    est.samples = samples;
    return est;
}

McEstimate characteristic_functional_mc(const WhiteNoiseGrid& grid,
                                        const std::function<double(double)>& xi,
                                        long samples, std::uint64_t seed) {
    std::vector<double> xi_nodes;
    for (double tau : grid.nodes()) xi_nodes.push_back(xi(tau));
    return characteristic_functional_mc(grid, xi_nodes, samples, seed);
}

}  // namespace oscibath::wn
