#pragma once

#include <complex>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "oscibath/common.hpp"

namespace oscibath::oracles {

/// Eigenvalues of a dense real (generally non-symmetric) matrix, sorted by
/// (real, imag) for deterministic comparison. Rejects n > 256; throws
/// EigensolverError when the QR iteration fails to converge.
std::vector<Complex> dense_eigensolve(const Eigen::MatrixXd& matrix);

/// Discretized-path propagator for a single harmonic mode: composes `slices`
/// short-time Gaussian kernels analytically (trapezoid-in-time potential
/// weights, second-order accurate, slices >= 10). omega = 0 reproduces the
/// free kernel exactly at any admitted slice count. Independent of the
/// closed-form kernels.
ComplexAmplitude time_sliced_propagator(double mass, double omega, double hbar,
                                        double time, double x, double x0,
                                        int slices);

/// Analytic midpoint integral of two Gaussian forms:
///   (later o earlier)(x, x0) = integral dy later(x, y) earlier(y, x0).
GaussianForm gaussian_compose(const GaussianForm& later, const GaussianForm& earlier);

/// Semigroup harness: composes two kernels through the midpoint integral and
/// compares against the single-step kernel at the summed time.
struct CompositionCheck {
    Complex composed{0.0, 0.0};
    Complex direct{0.0, 0.0};
    double rel_error = 0.0;
};

CompositionCheck compose_kernels(const GaussianForm& later, const GaussianForm& earlier,
                                 const GaussianForm& whole, double x, double x0);

// --- Crank-Nicolson wavepacket evolution ------------------------------------

struct FreeParticle1D {
    double mass = 1.0;
    double hbar = 1.0;
};

struct Harmonic1D {
    double mass = 1.0;
    double omega = 1.0;
    double hbar = 1.0;
};

/// Two coordinates with distinct masses, harmonic confinement of common
/// frequency, and a bilinear coupling term lambda * x * y.
struct CoupledPair2D {
    double mass1 = 1.0;
    double mass2 = 1.0;
    double omega = 1.0;
    double lambda = 0.0;
    double hbar = 1.0;
};

using HamiltonianSpec = std::variant<FreeParticle1D, Harmonic1D, CoupledPair2D>;

/// Uniform grid [-extent, extent] per axis, `points` nodes inclusive of the
/// endpoints. absorbing_margin > 0 switches on a soft quartic damper over
/// that outer fraction of the box (norm checks are then skipped).
struct EvolutionGrid {
    double extent = 10.0;      // > 0
    int points = 256;          // >= 64
    double dt = 1e-3;          // > 0
    double absorbing_margin = 0.0;  // in [0, 0.5)

    void validate() const;
    double dx() const { return 2.0 * extent / (points - 1); }
    std::vector<double> axis() const;
};

/// Gaussian wavepacket exp(-(x-c)^2 / (2 w^2) + i p x / hbar), normalized on
/// the grid. center/momentum have one entry per dimension.
struct GaussianPacket {
    std::vector<double> center;
    std::vector<double> momentum;
    double width = 1.0;  // > 0
};

/// Discretized complex field. dims is 1 or 2; values are row-major in 2D
/// (x index slow, y index fast).
struct WaveField {
    int dims = 1;
    int nx = 0;
    int ny = 1;
    double extent = 0.0;
    std::vector<Complex> values;

    double dx() const { return 2.0 * extent / (nx - 1); }
    double norm() const;       // sqrt(sum |psi|^2 dV)
    double boundary_mass() const;  // probability in the outermost grid band
};

/// Samples the packet on the grid, unit-normalized (norm() == 1 to 1e-12).
WaveField sample_packet(const HamiltonianSpec& ham, const GaussianPacket& packet,
                        const EvolutionGrid& grid);

/// Evolves the packet to `time` with a Cayley (Crank-Nicolson) scheme that
/// is exactly unitary in 1D; 2D uses Strang splitting of the two coordinate
/// sweeps around the pointwise coupling phase, each factor unitary.
/// Asserts norm conservation (drift < 1e-6, else StabilityError) and
/// boundary mass < 1e-8 (else BoundaryError) unless an absorbing margin is
/// active.
WaveField evolve_wavepacket(const HamiltonianSpec& ham, const GaussianPacket& packet,
                            const EvolutionGrid& grid, double time);

/// L2 distance sqrt(sum |a - b|^2 dV); fields must share the grid.
double field_distance(const WaveField& a, const WaveField& b);

/// CSV dump with columns x[, y], re, im.
std::string field_to_csv(const WaveField& field);

}  // namespace oscibath::oracles
