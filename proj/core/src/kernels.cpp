#include "oscibath/kernels.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace oscibath::kernels {

namespace {

constexpr double kCausticTol = 1e-12;

/// Throws when sin(Omega t) is numerically zero, reporting the nearest
/// exact caustic time k pi / Omega.
void check_caustic(double omega, double time, double s) {
    if (std::abs(s) >= kCausticTol) return;
    double nearest = 0.0;
    if (omega > 0.0) nearest = std::round(omega * time / pi) * pi / omega;
    std::ostringstream msg;
    msg << "caustic: sin(Omega t) vanishes at Omega = " << omega << ", t = " << time
        << " (nearest caustic t = " << nearest << ")";
    throw CausticError(msg.str(), omega, time, nearest);
}

}  // namespace

void KernelSpec::validate() const {
    if (!(mass > 0.0)) throw InvalidInput("kernel: mass must be > 0");
    if (!(frequency >= 0.0)) throw InvalidInput("kernel: frequency must be >= 0");
    if (!(hbar > 0.0)) throw InvalidInput("kernel: hbar must be > 0");
    if (!(time > 0.0)) throw InvalidInput("kernel: time must be > 0");
}

GaussianForm sho_form(const KernelSpec& spec) {
    spec.validate();
    const double s = std::sin(spec.frequency * spec.time);
    const double c = std::cos(spec.frequency * spec.time);
    check_caustic(spec.frequency, spec.time, s);

    const double m = spec.mass, om = spec.frequency, hb = spec.hbar;
    GaussianForm form;
    form.a = form.c = Complex(m * om * c / (2.0 * hb * s), 0.0);
    form.b = Complex(-m * om / (hb * s), 0.0);
    double under_root = m * om / (2.0 * pi * hb * s);
    if (spec.form == KernelForm::paper_literal) under_root /= spec.time;
    // principal branch of sqrt(r / i): the i sits in the denominator of the
    // printed prefactor.
    form.amplitude = std::sqrt(Complex(under_root, 0.0) / Complex(0.0, 1.0));
    return form;
}

GaussianForm free_form(double mass, double hbar, double time) {
    if (!(mass > 0.0)) throw InvalidInput("free kernel: mass must be > 0");
    if (!(hbar > 0.0)) throw InvalidInput("free kernel: hbar must be > 0");
    if (!(time > 0.0)) throw InvalidInput("free kernel: time must be > 0");
    GaussianForm form;
    form.a = form.c = Complex(mass / (2.0 * hbar * time), 0.0);
    form.b = Complex(-mass / (hbar * time), 0.0);
    form.amplitude =
        std::sqrt(Complex(mass / (2.0 * pi * hbar * time), 0.0) / Complex(0.0, 1.0));
    return form;
}

ComplexAmplitude sho_kernel(const KernelSpec& spec, double x, double x0) {
    if (spec.form == KernelForm::paper_literal && x0 != 0.0)
        throw DomainError("paper_literal kernel is an endpoint form: x0 must be 0");
    return checked_amplitude(sho_form(spec).eval(x, x0), "sho_kernel");
}

ComplexAmplitude free_kernel(double mass, double hbar, double time, double x, double x0) {
    return checked_amplitude(free_form(mass, hbar, time).eval(x, x0), "free_kernel");
}

ComplexAmplitude degenerate_pair_kernel(const KernelSpec& spec, double xa, double xb) {
    const GaussianForm form = sho_form(spec);
    return checked_amplitude(form.eval(xa, 0.0) * form.eval(xb, 0.0),
                             "degenerate_pair_kernel");
}

void PairSpec::validate() const {
    if (n < 4) throw InvalidInput("pair: n must be >= 4");
    if (!(mass > 0.0)) throw InvalidInput("pair: mass must be > 0");
    if (!(omega > 0.0)) throw InvalidInput("pair: omega must be > 0");
    if (!(hbar > 0.0)) throw InvalidInput("pair: hbar must be > 0");
    if (!(time > 0.0)) throw InvalidInput("pair: time must be > 0");
    if (!std::isfinite(coupling)) throw InvalidInput("pair: coupling must be finite");
}

double PairSpec::omega1_sq() const {
    return omega * omega - std::sqrt(double(n - 1)) * coupling / mass;
}

double PairSpec::omega2_sq() const {
    return omega * omega + std::sqrt(double(n - 1)) * coupling / mass;
}

double PairSpec::critical_coupling() const {
    return mass * omega * omega / std::sqrt(double(n - 1));
}

namespace {

/// Shared two-point evaluation: rotate, propagate each mode, multiply by the
/// mass-rescaling Jacobian.
Complex pair_eval(const PairSpec& spec, double x1, double x2, double x1_0, double x2_0) {
    spec.validate();
    const double w1sq = spec.omega1_sq();
    const double w2sq = spec.omega2_sq();
    if (w1sq <= 0.0 || w2sq <= 0.0) {
        const int which = w1sq <= 0.0 ? 1 : 2;
        std::ostringstream msg;
        msg << "inverted mode: Omega_" << which << "^2 = " << (which == 1 ? w1sq : w2sq)
            << " <= 0 at C = " << spec.coupling
            << "; stable range needs |C| < C* = " << spec.critical_coupling();
        throw InvertedModeError(msg.str(), spec.critical_coupling());
    }

    const double r1 = 1.0;                          // sqrt(m1 / m)
    const double r2 = std::sqrt(double(spec.n - 1));  // sqrt(m2 / m)
    const double cp = std::cos(spec.phi());
    const double sp = std::sin(spec.phi());
    double y1 = r1 * cp * x1 - r2 * sp * x2;
    double y2 = r1 * sp * x1 + r2 * cp * x2;
    double y1_0 = r1 * cp * x1_0 - r2 * sp * x2_0;
    double y2_0 = r1 * sp * x1_0 + r2 * cp * x2_0;
    const double jacobian = r2;  // sqrt(m1 m2) / m

    // the soft mode follows the rotation: for sin(2 phi) < 0 (every other odd
    // multiple of pi/4) the rotated axes trade places, so the kernel is the
    // same for every valid branch
    if (std::sin(2.0 * spec.phi()) < 0.0) {
        std::swap(y1, y2);
        std::swap(y1_0, y2_0);
    }

    KernelSpec mode1{spec.mass, std::sqrt(w1sq), spec.hbar, spec.time, spec.form};
    KernelSpec mode2{spec.mass, std::sqrt(w2sq), spec.hbar, spec.time, spec.form};
    return jacobian * sho_form(mode1).eval(y1, y1_0) * sho_form(mode2).eval(y2, y2_0);
}

}  // namespace

ComplexAmplitude pair_kernel(const PairSpec& spec, double x1, double x2) {
    return checked_amplitude(pair_eval(spec, x1, x2, 0.0, 0.0), "pair_kernel");
}

ComplexAmplitude pair_kernel_two_point(const PairSpec& spec, double x1, double x2,
                                       double x1_0, double x2_0) {
    if (spec.form != KernelForm::standard)
        throw DomainError("pair_kernel_two_point: only the standard form extends to x0 != 0");
    return checked_amplitude(pair_eval(spec, x1, x2, x1_0, x2_0), "pair_kernel_two_point");
}

ComplexAmplitude full_propagator(const net::OscillatorNetwork& net,
                                 std::span<const double> coords, double time,
                                 KernelForm form) {
    net.validate();
    if (net.n < 4)
        throw InvalidInput("full_propagator: the assembled form is stated for n >= 4");
    if (static_cast<int>(coords.size()) != net.n)
        throw InvalidInput("full_propagator: coords.size() must equal n");
    if (!(time > 0.0)) throw InvalidInput("full_propagator: time must be > 0");

    KernelSpec deg{net.mass, net.omega, net.hbar, time, form};
    const GaussianForm deg_form = sho_form(deg);
    Complex acc(1.0, 0.0);
    for (int j = 2; j < net.n; ++j)
        acc *= deg_form.eval(coords[1], 0.0) * deg_form.eval(coords[j], 0.0);

    PairSpec ps{net.n, net.mass, net.omega, net.coupling, net.hbar, time, 0, form};
    acc *= pair_eval(ps, coords[0], coords[1], 0.0, 0.0);
    return checked_amplitude(acc, "full_propagator");
}

}  // namespace oscibath::kernels
