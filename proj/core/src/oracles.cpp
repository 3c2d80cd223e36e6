#include "oscibath/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace oscibath::oracles {

std::vector<Complex> dense_eigensolve(const Eigen::MatrixXd& matrix) {
    if (matrix.rows() != matrix.cols())
        throw InvalidInput("dense_eigensolve: matrix must be square");
    if (matrix.rows() < 1 || matrix.rows() > 256)
        throw InvalidInput("dense_eigensolve: brute-force reference limited to 1 <= n <= 256");

    Eigen::EigenSolver<Eigen::MatrixXd> solver(matrix, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw EigensolverError("dense_eigensolve: QR iteration did not converge");

    std::vector<Complex> values(matrix.rows());
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) values[i] = solver.eigenvalues()(i);
    std::sort(values.begin(), values.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return values;
}

GaussianForm gaussian_compose(const GaussianForm& later, const GaussianForm& earlier) {
    // integral dy exp(i q y^2 + i p y) = sqrt(i pi / q) exp(-i p^2 / (4 q))
    // with q = later.c + earlier.a and p collecting the x / x0 cross terms.
    const Complex q = later.c + earlier.a;
    if (std::abs(q) < 1e-14)
        throw CausticError("gaussian_compose: stationary midpoint integral (q = 0)", 0.0,
                           0.0, 0.0);
    GaussianForm out;
    out.amplitude =
        later.amplitude * earlier.amplitude * std::sqrt(Complex(0.0, pi) / q);
    out.a = later.a - later.b * later.b / (4.0 * q);
    out.c = earlier.c - earlier.b * earlier.b / (4.0 * q);
    out.b = -later.b * earlier.b / (2.0 * q);
    return out;
}

CompositionCheck compose_kernels(const GaussianForm& later, const GaussianForm& earlier,
                                 const GaussianForm& whole, double x, double x0) {
    CompositionCheck check;
    check.composed = gaussian_compose(later, earlier).eval(x, x0);
    check.direct = whole.eval(x, x0);
    const double scale = std::abs(check.direct);
    check.rel_error = scale > 0.0 ? std::abs(check.composed - check.direct) / scale
                                  : std::abs(check.composed);
    return check;
}

ComplexAmplitude time_sliced_propagator(double mass, double omega, double hbar,
                                        double time, double x, double x0, int slices) {
    if (!(mass > 0.0)) throw InvalidInput("time_sliced: mass must be > 0");
    if (!(omega >= 0.0)) throw InvalidInput("time_sliced: omega must be >= 0");
    if (!(hbar > 0.0)) throw InvalidInput("time_sliced: hbar must be > 0");
    if (!(time > 0.0)) throw InvalidInput("time_sliced: time must be > 0");
    if (slices < 10) throw InvalidInput("time_sliced: slices must be >= 10");

    // Short-time Gaussian slice with the potential sampled at both slice
    // endpoints (trapezoid weights): second-order accurate for rough paths.
    const double eps = time / slices;
    GaussianForm slice;
    const double kinetic = mass / (2.0 * hbar * eps);
    const double potential = eps * mass * omega * omega / (4.0 * hbar);
    slice.a = slice.c = Complex(kinetic - potential, 0.0);
    slice.b = Complex(-mass / (hbar * eps), 0.0);
    slice.amplitude =
        std::sqrt(Complex(mass / (2.0 * pi * hbar * eps), 0.0) / Complex(0.0, 1.0));

    GaussianForm acc = slice;
    for (int k = 1; k < slices; ++k) acc = gaussian_compose(slice, acc);
    return checked_amplitude(acc.eval(x, x0), "time_sliced_propagator");
}

// --- Crank-Nicolson ----------------------------------------------------------

void EvolutionGrid::validate() const {
    if (!(extent > 0.0)) throw InvalidInput("evolution grid: extent must be > 0");
    if (points < 64) throw InvalidInput("evolution grid: points must be >= 64");
    if (!(dt > 0.0)) throw InvalidInput("evolution grid: dt must be > 0");
    if (!(absorbing_margin >= 0.0 && absorbing_margin < 0.5))
        throw InvalidInput("evolution grid: absorbing_margin must lie in [0, 0.5)");
}

std::vector<double> EvolutionGrid::axis() const {
    validate();
    std::vector<double> xs(points);
    const double d = dx();
    for (int i = 0; i < points; ++i) xs[i] = -extent + i * d;
    return xs;
}

namespace {

int band_width(int points) { return std::max(4, points / 256); }

struct HamiltonianInfo {
    int dims = 1;
    double hbar = 1.0;
};

HamiltonianInfo info_of(const HamiltonianSpec& ham) {
    return std::visit(
        [](const auto& h) -> HamiltonianInfo {
            using T = std::decay_t<decltype(h)>;
            if constexpr (std::is_same_v<T, CoupledPair2D>)
                return {2, h.hbar};
            else
                return {1, h.hbar};
        },
        ham);
}

/// One Cayley half of a Crank-Nicolson line update for a fixed 1D
/// Hamiltonian: solves (I + i tau H / 2 hbar) psi' = (I - i tau H / 2 hbar) psi
/// along a strided line. The tridiagonal factorization is precomputed once.
class CayleyLine {
public:
    void init(const std::vector<double>& potential, double mass, double hbar,
              double dx, double tau) {
        const int n = static_cast<int>(potential.size());
        const double hop = hbar * hbar / (2.0 * mass * dx * dx);
        const Complex i(0.0, 1.0);
        const double r = tau / (2.0 * hbar);

        off_a_ = -i * r * hop;
        off_b_ = i * r * hop;
        diag_a_.resize(n);
        diag_b_.resize(n);
        denom_.resize(n);
        cp_.resize(n);
        for (int k = 0; k < n; ++k) {
            const double hdiag = 2.0 * hop + potential[k];
            diag_a_[k] = 1.0 + i * r * hdiag;
            diag_b_[k] = 1.0 - i * r * hdiag;
        }
        denom_[0] = diag_a_[0];
        cp_[0] = off_a_ / denom_[0];
        for (int k = 1; k < n; ++k) {
            denom_[k] = diag_a_[k] - off_a_ * cp_[k - 1];
            cp_[k] = off_a_ / denom_[k];
        }
    }

    void apply(Complex* psi, int stride, std::vector<Complex>& scratch) const {
        const int n = static_cast<int>(diag_a_.size());
        scratch.resize(n);
        for (int k = 0; k < n; ++k) {
            Complex rhs = diag_b_[k] * psi[k * stride];
            if (k > 0) rhs += off_b_ * psi[(k - 1) * stride];
            if (k + 1 < n) rhs += off_b_ * psi[(k + 1) * stride];
            scratch[k] = rhs;
        }
        scratch[0] /= denom_[0];
        for (int k = 1; k < n; ++k)
            scratch[k] = (scratch[k] - off_a_ * scratch[k - 1]) / denom_[k];
        psi[(n - 1) * stride] = scratch[n - 1];
        for (int k = n - 2; k >= 0; --k)
            psi[k * stride] = scratch[k] - cp_[k] * psi[(k + 1) * stride];
    }

private:
    std::vector<Complex> diag_a_, diag_b_, denom_, cp_;
    Complex off_a_{0.0, 0.0}, off_b_{0.0, 0.0};
};

void check_packet(const GaussianPacket& packet, int dims) {
    if (static_cast<int>(packet.center.size()) != dims ||
        static_cast<int>(packet.momentum.size()) != dims)
        throw InvalidInput("packet: center/momentum must have one entry per dimension");
    if (!(packet.width > 0.0)) throw InvalidInput("packet: width must be > 0");
}

void apply_absorber(WaveField& field, const EvolutionGrid& grid,
                    const std::vector<double>& axis, double tau) {
    const double inner = (1.0 - grid.absorbing_margin) * grid.extent;
    const double ramp = grid.absorbing_margin * grid.extent;
    auto damp = [&](double coord) {
        const double over = std::abs(coord) - inner;
        if (over <= 0.0) return 1.0;
        const double u = over / ramp;
        return std::exp(-10.0 * tau * u * u * u * u);
    };
    if (field.dims == 1) {
        for (int i = 0; i < field.nx; ++i) field.values[i] *= damp(axis[i]);
    } else {
        for (int i = 0; i < field.nx; ++i)
            for (int j = 0; j < field.ny; ++j)
                field.values[i * field.ny + j] *= damp(axis[i]) * damp(axis[j]);
    }
}

void check_health(const WaveField& field, bool absorbing) {
    if (absorbing) return;
    const double drift = std::abs(field.norm() - 1.0);
    if (drift > 1e-6) {
        std::ostringstream msg;
        msg << "norm drift " << drift << " exceeds 1e-6";
        throw StabilityError(msg.str());
    }
    const double edge = field.boundary_mass();
    if (edge >= 1e-8) {
        std::ostringstream msg;
        msg << "boundary mass " << edge
            << " >= 1e-8: packet reached the box edge, enlarge the grid";
        throw BoundaryError(msg.str());
    }
}

}  // namespace

double WaveField::norm() const {
    double sum = 0.0;
    for (const Complex& z : values) sum += std::norm(z);
    const double dv = dims == 1 ? dx() : dx() * dx();
    return std::sqrt(sum * dv);
}

double WaveField::boundary_mass() const {
    const int band = band_width(nx);
    double edge = 0.0, total = 0.0;
    if (dims == 1) {
        for (int i = 0; i < nx; ++i) {
            const double p = std::norm(values[i]);
            total += p;
            if (i < band || i >= nx - band) edge += p;
        }
    } else {
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j) {
                const double p = std::norm(values[i * ny + j]);
                total += p;
                if (i < band || i >= nx - band || j < band || j >= ny - band) edge += p;
            }
    }
    return total > 0.0 ? edge / total : 0.0;
}

WaveField sample_packet(const HamiltonianSpec& ham, const GaussianPacket& packet,
                        const EvolutionGrid& grid) {
    grid.validate();
    const HamiltonianInfo info = info_of(ham);
    check_packet(packet, info.dims);
    const std::vector<double> axis = grid.axis();

    WaveField field;
    field.dims = info.dims;
    field.nx = grid.points;
    field.ny = info.dims == 2 ? grid.points : 1;
    field.extent = grid.extent;
    field.values.resize(static_cast<std::size_t>(field.nx) * field.ny);

    auto envelope = [&](double coord, int d) {
        const double u = (coord - packet.center[d]) / packet.width;
        return std::exp(Complex(-0.5 * u * u, packet.momentum[d] * coord / info.hbar));
    };
    if (info.dims == 1) {
        for (int i = 0; i < field.nx; ++i) field.values[i] = envelope(axis[i], 0);
    } else {
        for (int i = 0; i < field.nx; ++i)
            for (int j = 0; j < field.ny; ++j)
                field.values[i * field.ny + j] = envelope(axis[i], 0) * envelope(axis[j], 1);
    }
    const double scale = 1.0 / field.norm();
    for (Complex& z : field.values) z *= scale;
    return field;
}

WaveField evolve_wavepacket(const HamiltonianSpec& ham, const GaussianPacket& packet,
                            const EvolutionGrid& grid, double time) {
    if (!(time > 0.0)) throw InvalidInput("evolve_wavepacket: time must be > 0");
    WaveField field = sample_packet(ham, packet, grid);
    const std::vector<double> axis = grid.axis();
    const long steps = std::max<long>(1, std::llround(time / grid.dt));
    const double tau = time / static_cast<double>(steps);
    const bool absorbing = grid.absorbing_margin > 0.0;
    std::vector<Complex> scratch;

    if (field.dims == 1) {
        std::vector<double> potential(grid.points, 0.0);
        double mass = 1.0, hbar = 1.0;
        if (const auto* free = std::get_if<FreeParticle1D>(&ham)) {
            mass = free->mass;
            hbar = free->hbar;
        } else if (const auto* sho = std::get_if<Harmonic1D>(&ham)) {
            mass = sho->mass;
            hbar = sho->hbar;
            for (int i = 0; i < grid.points; ++i)
                potential[i] = 0.5 * sho->mass * sho->omega * sho->omega * axis[i] * axis[i];
        }
        if (!(mass > 0.0) || !(hbar > 0.0))
            throw InvalidInput("evolve_wavepacket: mass and hbar must be > 0");

        CayleyLine line;
        line.init(potential, mass, hbar, grid.dx(), tau);
        for (long s = 0; s < steps; ++s) {
            line.apply(field.values.data(), 1, scratch);
            if (absorbing) apply_absorber(field, grid, axis, tau);
        }
        check_health(field, absorbing);
        return field;
    }

    const auto& pair = std::get<CoupledPair2D>(ham);
    if (!(pair.mass1 > 0.0) || !(pair.mass2 > 0.0) || !(pair.hbar > 0.0))
        throw InvalidInput("evolve_wavepacket: masses and hbar must be > 0");

    std::vector<double> vx(grid.points), vy(grid.points);
    for (int i = 0; i < grid.points; ++i) {
        vx[i] = 0.5 * pair.mass1 * pair.omega * pair.omega * axis[i] * axis[i];
        vy[i] = 0.5 * pair.mass2 * pair.omega * pair.omega * axis[i] * axis[i];
    }
    CayleyLine x_half, y_full;
    x_half.init(vx, pair.mass1, pair.hbar, grid.dx(), tau / 2.0);
    y_full.init(vy, pair.mass2, pair.hbar, grid.dx(), tau);

    // Pointwise coupling phase over half a step: exp(-i lambda x y tau / 2 hbar).
    const int n = grid.points;
    std::vector<Complex> half_phase(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            half_phase[i * n + j] =
                std::exp(Complex(0.0, -pair.lambda * axis[i] * axis[j] * tau /
                                          (2.0 * pair.hbar)));

    for (long s = 0; s < steps; ++s) {
        for (std::size_t k = 0; k < field.values.size(); ++k)
            field.values[k] *= half_phase[k];
        for (int j = 0; j < n; ++j) x_half.apply(field.values.data() + j, n, scratch);
        for (int i = 0; i < n; ++i)
            y_full.apply(field.values.data() + static_cast<std::size_t>(i) * n, 1, scratch);
        for (int j = 0; j < n; ++j) x_half.apply(field.values.data() + j, n, scratch);
        for (std::size_t k = 0; k < field.values.size(); ++k)
            field.values[k] *= half_phase[k];
        if (absorbing) apply_absorber(field, grid, axis, tau);
    }
    check_health(field, absorbing);
    return field;
}

double field_distance(const WaveField& a, const WaveField& b) {
    if (a.dims != b.dims || a.nx != b.nx || a.ny != b.ny || a.extent != b.extent)
        throw InvalidInput("field_distance: fields live on different grids");
    double sum = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k)
        sum += std::norm(a.values[k] - b.values[k]);
    const double dv = a.dims == 1 ? a.dx() : a.dx() * a.dx();
    return std::sqrt(sum * dv);
}

std::string field_to_csv(const WaveField& field) {
    std::ostringstream out;
    out.precision(17);
    const double d = field.dx();
    if (field.dims == 1) {
        out << "x,re,im\n";
        for (int i = 0; i < field.nx; ++i) {
            const Complex z = field.values[i];
            out << (-field.extent + i * d) << ',' << z.real() << ',' << z.imag() << '\n';
        }
    } else {
        out << "x,y,re,im\n";
        for (int i = 0; i < field.nx; ++i)
            for (int j = 0; j < field.ny; ++j) {
                const Complex z = field.values[i * field.ny + j];
                out << (-field.extent + i * d) << ',' << (-field.extent + j * d) << ','
                    << z.real() << ',' << z.imag() << '\n';
            }
    }
    return out.str();
}

}  // namespace oscibath::oracles
