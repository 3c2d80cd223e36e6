#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "oscibath/common.hpp"

namespace oscibath::wn {

/// Midpoint discretization of [0, t]: node i sits at (i + 1/2) t / steps.
struct WhiteNoiseGrid {
    double time = 1.0;  // > 0
    int steps = 250;    // >= 2

    void validate() const;
    double dtau() const { return time / steps; }
    std::vector<double> nodes() const;
};

/// Discretized second functional derivative of the harmonic action,
///   S''(tau1, tau2) = hbar Omega^2 (t - max(tau1, tau2)),
/// sampled at the grid nodes with one factor of dtau absorbed, so that
/// I - hbar^-1 * entries is the Fredholm discretization directly.
struct SppMatrix {
    Eigen::MatrixXd entries;
    double omega = 0.0;
    double hbar = 1.0;
    double dtau = 0.0;
};

SppMatrix build_spp_matrix(const WhiteNoiseGrid& grid, double omega, double hbar);

/// det(I - hbar^-1 S'') on the grid; converges to cos(Omega t) as steps grow
/// (hbar cancels between S'' and the inverse power).
double fredholm_det(const SppMatrix& spp);
double fredholm_det(const WhiteNoiseGrid& grid, double omega, double hbar);

/// <e, (I - hbar^-1 S'')^{-1} e> with e the normalized constant vector
/// (e_i = t^{-1/2}, inner products carrying dtau weights, so <e, e> = 1).
/// Converges to tan(Omega t) / (Omega t). Throws SingularOperatorError when
/// |det| < 1e-6 (the tan-pole at Omega t = pi/2).
double inverse_quadratic_form(const SppMatrix& spp, const WhiteNoiseGrid& grid);
double inverse_quadratic_form(const WhiteNoiseGrid& grid, double omega, double hbar);

/// The non-inverted form <e, (I - hbar^-1 S'') e>: converges to
/// 1 - (Omega t)^2 / 3 instead, which is what discriminates the operator
/// inverse from a plain matrix element.
double direct_quadratic_form(const SppMatrix& spp, const WhiteNoiseGrid& grid);
double direct_quadratic_form(const WhiteNoiseGrid& grid, double omega, double hbar);

/// Assembles the endpoint oscillator kernel from the white-noise data:
///   K(x, 0; t) = (1/2pi) det^{-1/2} sqrt(2 pi m / (i hbar t q)) exp(i m x^2 / (2 hbar t q))
/// with q the inverse quadratic form. Converges to the standard-form
/// sho_kernel (not the paper_literal one). Principal branches throughout.
ComplexAmplitude assemble_sho_kernel(const WhiteNoiseGrid& grid, double mass,
                                     double omega, double hbar, double x);

/// Monte Carlo estimate of the white-noise characteristic functional.
struct McEstimate {
    Complex value{0.0, 0.0};
    double stderr_re = 0.0;
    double stderr_im = 0.0;
    long samples = 0;

    double stderr_total() const;
};

/// Estimates E[exp(i <omega, xi>)] by sampling i.i.d. node Gaussians of
/// variance 1/dtau; converges to exp(-1/2 integral xi^2 dtau) as steps and
/// samples grow. xi_nodes holds xi sampled at grid.nodes(). Requires
/// samples >= 1000 and finite node values. Fixed seed gives bit-identical
/// results (block substreams, deterministic merge order).
McEstimate characteristic_functional_mc(const WhiteNoiseGrid& grid,
                                        const std::vector<double>& xi_nodes,
                                        long samples, std::uint64_t seed);

McEstimate characteristic_functional_mc(const WhiteNoiseGrid& grid,
                                        const std::function<double(double)>& xi,
                                        long samples, std::uint64_t seed);

}  // namespace oscibath::wn
