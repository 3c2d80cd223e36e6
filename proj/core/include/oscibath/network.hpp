#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "oscibath/common.hpp"

namespace oscibath::net {

/// One distinguished oscillator coupled bilinearly to n-1 identical bath
/// oscillators, all sharing mass and frequency (the star topology).
struct OscillatorNetwork {
    int n = 2;              // total node count (system + bath), n >= 2
    double mass = 1.0;      // > 0
    double omega = 1.0;     // common frequency, > 0
    double coupling = 0.0;  // bilinear coupling strength C
    double hbar = 1.0;      // > 0

    void validate() const;
};

/// Eigenvalues and eigenvectors of the characteristic matrix, organised by
/// the closed-form structure: an (n-2)-fold degenerate value -C plus the
/// nondegenerate pair lambda_+/-.
struct ModeSpectrum {
    int n = 0;
    double coupling = 0.0;
    double degenerate_value = 0.0;  // exactly -C
    int degenerate_multiplicity = 0;
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    bool all_degenerate = false;  // C == 0: every eigenvalue is zero
    /// Degenerate vectors first (bath support {2,k}, k = 3..n), then the
    /// vectors for lambda_+ and lambda_-.
    std::vector<Eigen::VectorXd> eigenvectors;

    /// Full eigenvalue multiset, degenerate copies included, in eigenvector
    /// order.
    std::vector<double> all_eigenvalues() const;
};

/// The characteristic matrix of the coupled system, as an explicit dense
/// matrix (it is not symmetric). Entries:
///   M[0][0] = n C,  M[0][j] = C (j >= 1),
///   M[i][0] = -C,   M[i][i] = -C (i >= 1),  all else 0.
Eigen::MatrixXd characteristic_matrix(const OscillatorNetwork& net);

/// Closed-form spectrum:
///   lambda_+- = C [ (n-1) +- sqrt((n-1)^2 + 4) ] / 2,
///   -C with multiplicity n-2 (n >= 3).
/// For C = 0 returns the all-zero spectrum flagged all_degenerate, with the
/// standard basis as eigenvectors.
ModeSpectrum mode_spectrum(const OscillatorNetwork& net);

/// Nondegenerate eigenvector first component a = -(n-1) C / (n C - lambda);
/// remaining components are 1.
double nondegenerate_first_component(const OscillatorNetwork& net, double lambda);

/// JSON document with keys n, coupling, all_degenerate, degenerate
/// {value, multiplicity}, nondegenerate [lambda_+, lambda_-], eigenvectors.
/// indent < 0 emits the compact single-line form.
std::string spectrum_to_json(const ModeSpectrum& spectrum, int indent = -1);

/// Result of one closed-form-vs-brute-force comparison.
struct SpectrumCheck {
    int n = 0;
    double coupling = 0.0;
    double max_abs_error = 0.0;       // multiset distance, sorted pairing
    double max_imag = 0.0;            // largest |Im| returned by the solver
    double max_residual = 0.0;        // max ||M v - lambda v||_inf over eigenpairs
    bool pass = false;
};

/// Compares mode_spectrum against a dense eigensolve of the characteristic
/// matrix. Passes when the sorted multiset distance is within
/// tol * max(1, |C|), imaginary parts are below 1e-10 and every closed-form
/// eigenpair has residual ||M v - lambda v||_inf <= 1e-10 * max(1, |C|).
SpectrumCheck closed_form_matches_bruteforce(const OscillatorNetwork& net, double tol = 1e-9);

}  // namespace oscibath::net
