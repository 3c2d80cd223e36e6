#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace oscibath {

inline constexpr double pi = 3.14159265358979323846;

using Complex = std::complex<double>;

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Rejected parameters or malformed input (CLI exit code 2).
class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& msg) : Error(msg) {}
};

/// Arguments outside the stated domain of a closed form (for instance the
/// endpoint-only literal kernel evaluated at x0 != 0). CLI exit code 2.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// sin(Omega t) vanished: the Gaussian kernel prefactor diverges (exit code 3).
class CausticError : public Error {
public:
    CausticError(const std::string& msg, double omega, double time, double nearest_caustic)
        : Error(msg), omega(omega), time(time), nearest_caustic(nearest_caustic) {}
    double omega;
    double time;
    double nearest_caustic;  // nearest k*pi/Omega, or 0 when Omega = 0
};

/// A normal mode acquired a negative squared frequency (exit code 4).
class InvertedModeError : public Error {
public:
    InvertedModeError(const std::string& msg, double critical_coupling)
        : Error(msg), critical_coupling(critical_coupling) {}
    double critical_coupling;  // C* = m omega^2 / sqrt(n-1)
};

/// The discretized operator I - hbar^-1 S'' is (numerically) singular: the
/// tan-pole of the white-noise representation.
class SingularOperatorError : public Error {
public:
    explicit SingularOperatorError(const std::string& msg) : Error(msg) {}
};

/// Dense eigensolver failed to converge.
class EigensolverError : public Error {
public:
    explicit EigensolverError(const std::string& msg) : Error(msg) {}
};

/// Norm drift of a wavepacket evolution exceeded tolerance.
class StabilityError : public Error {
public:
    explicit StabilityError(const std::string& msg) : Error(msg) {}
};

/// Too much probability mass reached the grid boundary.
class BoundaryError : public Error {
public:
    explicit BoundaryError(const std::string& msg) : Error(msg) {}
};

/// Evaluated value of a propagator kernel.
struct ComplexAmplitude {
    double re = 0.0;
    double im = 0.0;

    ComplexAmplitude() = default;
    ComplexAmplitude(double re, double im) : re(re), im(im) {}
    explicit ComplexAmplitude(Complex z) : re(z.real()), im(z.imag()) {}

    Complex value() const { return {re, im}; }
    double magnitude() const { return std::abs(value()); }
    double phase() const { return std::arg(value()); }
};

/// Wraps a complex value, rejecting NaN/Inf so they never escape an operation.
inline ComplexAmplitude checked_amplitude(Complex z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw Error(std::string(what) + ": non-finite kernel value");
    return ComplexAmplitude(z);
}

/// Complex Gaussian kernel in quadratic-coefficient representation:
///   K(x, x0) = amplitude * exp(i (a x^2 + b x x0 + c x0^2)).
/// The composition integral over the shared midpoint is exact on this data,
/// which is what the time-sliced and semigroup harnesses exploit.
struct GaussianForm {
    Complex amplitude{1.0, 0.0};
    Complex a{0.0, 0.0};
    Complex b{0.0, 0.0};
    Complex c{0.0, 0.0};

    Complex eval(double x, double x0) const {
        const Complex i(0.0, 1.0);
        return amplitude * std::exp(i * (a * x * x + b * x * x0 + c * x0 * x0));
    }
};

/// SplitMix64: used to derive independent substream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    return splitmix64(s);
}

}  // namespace oscibath
