#pragma once

#include <span>

#include "oscibath/common.hpp"
#include "oscibath/network.hpp"

namespace oscibath::kernels {

/// Which prefactor convention a closed-form kernel uses.
///
/// `standard` is the textbook harmonic-oscillator kernel,
///   sqrt(m Omega / (2 pi i hbar sin(Omega t))).
/// `paper_literal` carries an extra factor of t under the square root,
///   sqrt(m Omega / (2 pi i hbar t sin(Omega t))),
/// and is kept verbatim so the two conventions can be discriminated
/// numerically. Its printed form is an endpoint kernel (x0 = 0 only); the
/// two differ by exactly t^(-1/2).
enum class KernelForm { standard, paper_literal };

inline const char* to_string(KernelForm f) {
    return f == KernelForm::standard ? "standard" : "paper_literal";
}

/// Parameters of a single harmonic mode propagated for a fixed time.
struct KernelSpec {
    double mass = 1.0;       // > 0
    double frequency = 1.0;  // mode frequency Omega, > 0 for sho_kernel
    double hbar = 1.0;       // > 0
    double time = 0.0;       // > 0
    KernelForm form = KernelForm::standard;

    void validate() const;
};

/// Parameters of the rotated nondegenerate mode pair of the star network:
/// masses (m, (n-1) m), rotation angle phi = (2 branch + 1) pi / 4, mode
/// frequencies Omega_{1,2}^2 = omega^2 -+ sqrt(n-1) C / m.
struct PairSpec {
    int n = 4;               // node count of the parent network, >= 4
    double mass = 1.0;       // common node mass m
    double omega = 1.0;      // common node frequency
    double coupling = 0.0;   // bilinear coupling C
    double hbar = 1.0;
    double time = 0.0;       // > 0
    int rotation_branch = 0; // n' in phi = (2 n' + 1) pi / 4
    KernelForm form = KernelForm::standard;

    void validate() const;
    double phi() const { return (2 * rotation_branch + 1) * pi / 4.0; }
    double omega1_sq() const;  // omega^2 - sqrt(n-1) C / m
    double omega2_sq() const;  // omega^2 + sqrt(n-1) C / m
    /// Coupling at which Omega_1^2 crosses zero: C* = m omega^2 / sqrt(n-1).
    double critical_coupling() const;
};

/// Harmonic-oscillator propagator amplitude <x| e^{-i H t / hbar} |x0>.
/// The paper_literal form only admits x0 = 0 (InvalidInput otherwise).
/// Throws CausticError when |sin(Omega t)| < 1e-12.
ComplexAmplitude sho_kernel(const KernelSpec& spec, double x, double x0);

/// Free-particle propagator amplitude (the Omega -> 0 limit).
ComplexAmplitude free_kernel(double mass, double hbar, double time, double x, double x0);

/// Two evaluations of the single-mode kernel against the origin, multiplied:
/// the contribution of one degenerate bath pair, exp carries
/// (i m Omega / 2 hbar) (xa^2 + xb^2) cot(Omega t).
ComplexAmplitude degenerate_pair_kernel(const KernelSpec& spec, double xa, double xb);

/// Endpoint propagator of the rotated pair: J * K_{Omega1}(y1, 0) * K_{Omega2}(y2, 0)
/// with Jacobian J = sqrt(n-1) and y_{1,2} the rotated coordinates of
/// (x1, x2). Throws InvertedModeError (with the critical coupling in the
/// message) when Omega_1^2 <= 0.
ComplexAmplitude pair_kernel(const PairSpec& spec, double x1, double x2);

/// Two-point generalization J * K_{Omega1}(y1, y1_0) * K_{Omega2}(y2, y2_0);
/// reduces to pair_kernel at x1_0 = x2_0 = 0. standard form only.
ComplexAmplitude pair_kernel_two_point(const PairSpec& spec, double x1, double x2,
                                       double x1_0, double x2_0);

/// Full n-coordinate endpoint propagator of the star network (n >= 4):
/// the pair kernel for (x1, x2) times the degenerate-pair kernel for
/// (x2, xj), j = 3..n. coords.size() must equal net.n.
ComplexAmplitude full_propagator(const net::OscillatorNetwork& net,
                                 std::span<const double> coords, double time,
                                 KernelForm form = KernelForm::standard);

/// Quadratic-coefficient representation of the two-point kernel. For
/// paper_literal the amplitude carries the extra t^(-1/2); the x0 = 0 slice
/// then matches the printed endpoint kernel.
GaussianForm sho_form(const KernelSpec& spec);
GaussianForm free_form(double mass, double hbar, double time);

}  // namespace oscibath::kernels
