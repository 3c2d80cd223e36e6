#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "oscibath/kernels.hpp"

using namespace oscibath;
using kernels::KernelForm;
using kernels::KernelSpec;
using kernels::PairSpec;

namespace {
const double kRoot2Pi = std::sqrt(2.0 * pi);
}

TEST_CASE("single-mode kernel, standard form") {
    SUBCASE("quarter period at the origin") {
        // K(0, 0; pi/2) = sqrt(1 / 2 pi i) = e^{-i pi/4} / sqrt(2 pi)
        const auto k = kernels::sho_kernel({1.0, 1.0, 1.0, pi / 2.0}, 0.0, 0.0);
        CHECK(k.re == doctest::Approx(std::cos(pi / 4.0) / kRoot2Pi).epsilon(1e-14));
        CHECK(k.im == doctest::Approx(-std::sin(pi / 4.0) / kRoot2Pi).epsilon(1e-14));
    }
    SUBCASE("endpoint magnitude and phase at t = 1") {
        const auto k = kernels::sho_kernel({1.0, 1.0, 1.0, 1.0}, 1.0, 0.0);
        CHECK(k.magnitude() ==
              doctest::Approx(std::sqrt(1.0 / (2.0 * pi * std::sin(1.0)))).epsilon(1e-14));
        CHECK(k.phase() ==
              doctest::Approx(-pi / 4.0 + std::cos(1.0) / (2.0 * std::sin(1.0)))
                  .epsilon(1e-12));
    }
    SUBCASE("symmetric in endpoint exchange") {
        const auto a = kernels::sho_kernel({1.3, 0.9, 1.0, 0.8}, 1.1, -0.4);
        const auto b = kernels::sho_kernel({1.3, 0.9, 1.0, 0.8}, -0.4, 1.1);
        CHECK(a.re == doctest::Approx(b.re).epsilon(1e-15));
        CHECK(a.im == doctest::Approx(b.im).epsilon(1e-15));
    }
    SUBCASE("quadratic form reproduces the direct evaluation") {
        const KernelSpec spec{0.8, 1.4, 1.0, 0.6};
        const auto form = kernels::sho_form(spec);
        for (double x : {-1.0, 0.3, 2.0})
            for (double x0 : {-0.5, 0.0, 1.2}) {
                const auto k = kernels::sho_kernel(spec, x, x0);
                const Complex direct = form.eval(x, x0);
                CHECK(std::abs(k.value() - direct) <= 1e-15);
            }
    }
    SUBCASE("small-frequency limit approaches the free kernel") {
        const auto free = kernels::free_kernel(1.0, 1.0, 1.0, 0.7, -0.2);
        const auto tiny = kernels::sho_kernel({1.0, 1e-8, 1.0, 1.0}, 0.7, -0.2);
        CHECK(std::abs(tiny.value() - free.value()) / std::abs(free.value()) <= 1e-7);
        const auto small = kernels::sho_kernel({1.0, 1e-4, 1.0, 1.0}, 0.7, -0.2);
        CHECK(std::abs(small.value() - free.value()) / std::abs(free.value()) <= 1e-7);
    }
}

TEST_CASE("free kernel") {
    // K_free(1, 0; 2) = sqrt(1 / 4 pi i) e^{i/4}
    const auto k = kernels::free_kernel(1.0, 1.0, 2.0, 1.0, 0.0);
    const Complex expected =
        std::sqrt(Complex(1.0 / (4.0 * pi), 0.0) / Complex(0.0, 1.0)) *
        std::exp(Complex(0.0, 0.25));
    CHECK(std::abs(k.value() - expected) <= 1e-15);
    CHECK_THROWS_AS(kernels::free_kernel(1.0, 1.0, 0.0, 1.0, 0.0), InvalidInput);
}

TEST_CASE("literal form differs from standard by t^(-1/2)") {
    for (double t : {0.3, 1.0, 2.5}) {
        const auto standard =
            kernels::sho_kernel({1.0, 1.0, 1.0, t, KernelForm::standard}, 0.8, 0.0);
        const auto literal =
            kernels::sho_kernel({1.0, 1.0, 1.0, t, KernelForm::paper_literal}, 0.8, 0.0);
        const Complex ratio = literal.value() / standard.value();
        CHECK(ratio.real() == doctest::Approx(1.0 / std::sqrt(t)).epsilon(1e-13));
        CHECK(std::abs(ratio.imag()) <= 1e-14);
    }
    CHECK_THROWS_AS(
        kernels::sho_kernel({1.0, 1.0, 1.0, 1.0, KernelForm::paper_literal}, 0.8, 0.5),
        DomainError);
}

TEST_CASE("caustic detection") {
    try {
        kernels::sho_kernel({1.0, 1.0, 1.0, pi}, 0.5, 0.0);
        FAIL("expected CausticError");
    } catch (const CausticError& err) {
        CHECK(err.omega == 1.0);
        CHECK(err.time == pi);
        CHECK(err.nearest_caustic == doctest::Approx(pi).epsilon(1e-12));
        CHECK(std::string(err.what()).find("caustic") != std::string::npos);
    }
    CHECK_THROWS_AS(kernels::sho_kernel({1.0, 2.0, 1.0, pi}, 0.0, 0.0), CausticError);
    // Omega = 0 hits sin = 0 immediately; the free kernel covers that limit
    CHECK_THROWS_AS(kernels::sho_kernel({1.0, 0.0, 1.0, 1.0}, 0.0, 0.0), CausticError);
}

TEST_CASE("degenerate pair kernel is a product against the origin") {
    const KernelSpec spec{1.0, 1.0, 1.0, 0.9};
    const auto pair = kernels::degenerate_pair_kernel(spec, 0.7, -1.1);
    const Complex product = kernels::sho_kernel(spec, 0.7, 0.0).value() *
                            kernels::sho_kernel(spec, -1.1, 0.0).value();
    CHECK(std::abs(pair.value() - product) <= 1e-15);

    // exponent carries (i m Omega / 2 hbar)(xa^2 + xb^2) cot(Omega t)
    const auto origin = kernels::degenerate_pair_kernel(spec, 0.0, 0.0);
    const Complex ratio = pair.value() / origin.value();
    const double cot = std::cos(0.9) / std::sin(0.9);
    const Complex expected =
        std::exp(Complex(0.0, 0.5 * (0.7 * 0.7 + 1.1 * 1.1) * cot));
    CHECK(std::abs(ratio - expected) <= 1e-13);
}

TEST_CASE("pair kernel") {
    SUBCASE("mode frequencies and rotation angle") {
        PairSpec spec{4, 1.0, 1.0, 0.3, 1.0, 1.0, 0, KernelForm::standard};
        CHECK(spec.omega1_sq() ==
              doctest::Approx(1.0 - std::sqrt(3.0) * 0.3).epsilon(1e-15));
        CHECK(spec.omega2_sq() ==
              doctest::Approx(1.0 + std::sqrt(3.0) * 0.3).epsilon(1e-15));
        CHECK(spec.phi() == doctest::Approx(pi / 4.0));
        CHECK(spec.critical_coupling() == doctest::Approx(1.0 / std::sqrt(3.0)));
        PairSpec other = spec;
        other.rotation_branch = 1;
        CHECK(other.phi() == doctest::Approx(3.0 * pi / 4.0));

        PairSpec stiff{4, 1.0, 2.0, 1.0, 1.0, 1.0, 0, KernelForm::standard};
        CHECK(std::sqrt(stiff.omega1_sq()) == doctest::Approx(1.505973).epsilon(1e-6));
        CHECK(std::sqrt(stiff.omega2_sq()) == doctest::Approx(2.394171).epsilon(1e-6));
    }
    SUBCASE("decouples exactly at C = 0") {
        PairSpec spec{5, 1.2, 0.9, 0.0, 1.0, 0.8, 0, KernelForm::standard};
        const auto pair = kernels::pair_kernel(spec, 0.6, -0.4);
        const Complex product =
            kernels::sho_kernel({1.2, 0.9, 1.0, 0.8}, 0.6, 0.0).value() *
            kernels::sho_kernel({4.0 * 1.2, 0.9, 1.0, 0.8}, -0.4, 0.0).value();
        CHECK(std::abs(pair.value() - product) / std::abs(product) <= 1e-14);
    }
    SUBCASE("alternate rotation branches leave the kernel unchanged") {
        // phi -> phi + k pi/2 only flips signs of the rotated coordinates
        // (and trades the axes for odd k); the kernel must not notice
        PairSpec spec{4, 1.0, 1.0, 0.2, 1.0, 0.7, 0, KernelForm::standard};
        const auto a = kernels::pair_kernel(spec, 0.4, 0.3);
        for (int branch : {1, 2, 3}) {
            PairSpec other = spec;
            other.rotation_branch = branch;
            const auto b = kernels::pair_kernel(other, 0.4, 0.3);
            CAPTURE(branch);
            CHECK(std::abs(a.value() - b.value()) <= 1e-13);
        }
        // the invariance also holds for the two-point form
        const auto a2 = kernels::pair_kernel_two_point(spec, 0.4, 0.3, -0.2, 0.5);
        PairSpec other = spec;
        other.rotation_branch = 1;
        const auto b2 = kernels::pair_kernel_two_point(other, 0.4, 0.3, -0.2, 0.5);
        CHECK(std::abs(a2.value() - b2.value()) <= 1e-13);
    }
    SUBCASE("inverted mode reports the critical coupling") {
        PairSpec spec{4, 1.0, 1.0, 0.6, 1.0, 1.0, 0, KernelForm::standard};
        try {
            kernels::pair_kernel(spec, 0.0, 0.0);
            FAIL("expected InvertedModeError");
        } catch (const InvertedModeError& err) {
            CHECK(err.critical_coupling == doctest::Approx(1.0 / std::sqrt(3.0)));
            CHECK(std::string(err.what()).find("C*") != std::string::npos);
        }
        // strongly negative coupling inverts the second mode instead
        spec.coupling = -0.7;
        CHECK_THROWS_AS(kernels::pair_kernel(spec, 0.0, 0.0), InvertedModeError);
    }
    SUBCASE("caustic of a rotated mode propagates") {
        PairSpec spec{4, 1.0, 1.0, 0.0, 1.0, pi, 0, KernelForm::standard};
        CHECK_THROWS_AS(kernels::pair_kernel(spec, 0.1, 0.1), CausticError);
    }
    SUBCASE("two-point form reduces to the endpoint kernel at the origin") {
        PairSpec spec{4, 1.0, 1.0, 0.25, 1.0, 0.9, 0, KernelForm::standard};
        const auto endpoint = kernels::pair_kernel(spec, 0.5, -0.2);
        const auto two_point = kernels::pair_kernel_two_point(spec, 0.5, -0.2, 0.0, 0.0);
        CHECK(std::abs(endpoint.value() - two_point.value()) <= 1e-15);
        PairSpec literal = spec;
        literal.form = KernelForm::paper_literal;
        CHECK_THROWS_AS(kernels::pair_kernel_two_point(literal, 0.5, -0.2, 0.1, 0.0),
                        DomainError);
    }
}

TEST_CASE("assembled propagator") {
    const net::OscillatorNetwork net4{4, 1.0, 1.0, 0.3, 1.0};

    SUBCASE("literal form at the origin matches the printed closed form") {
        // (m / 2 pi i hbar t)^3 (omega / sin omega t)^2
        //   [3 Omega1 Omega2 / (sin Omega1 t sin Omega2 t)]^(1/2)
        const double t = 1.0;
        const std::vector<double> origin(4, 0.0);
        const auto k = kernels::full_propagator(net4, origin, t, KernelForm::paper_literal);

        const double w1 = std::sqrt(1.0 - std::sqrt(3.0) * 0.3);
        const double w2 = std::sqrt(1.0 + std::sqrt(3.0) * 0.3);
        const Complex base = Complex(1.0, 0.0) / Complex(0.0, 2.0 * pi * t);
        const Complex expected =
            base * base * base * std::pow(1.0 / std::sin(t), 2.0) *
            std::sqrt(Complex(3.0 * w1 * w2 / (std::sin(w1 * t) * std::sin(w2 * t)), 0.0));
        CHECK(std::abs(k.value() - expected) / std::abs(expected) <= 1e-13);
    }
    SUBCASE("forms differ by t^(-(n-1)) at the origin") {
        const double t = 0.7;
        const std::vector<double> origin(4, 0.0);
        const auto standard = kernels::full_propagator(net4, origin, t);
        const auto literal =
            kernels::full_propagator(net4, origin, t, KernelForm::paper_literal);
        const Complex ratio = literal.value() / standard.value();
        CHECK(ratio.real() == doctest::Approx(std::pow(t, -3.0)).epsilon(1e-12));
        CHECK(std::abs(ratio.imag()) <= 1e-12);
    }
    SUBCASE("degenerate block carries (n-2) x2^2 + sum xj^2") {
        const net::OscillatorNetwork net5{5, 1.0, 1.0, 0.3, 1.0};
        const double t = 0.9;
        const std::vector<double> coords{0.0, 0.0, 1.0, 1.0, 1.0};
        const std::vector<double> origin(5, 0.0);
        const Complex ratio = kernels::full_propagator(net5, coords, t).value() /
                              kernels::full_propagator(net5, origin, t).value();
        const double cot = std::cos(t) / std::sin(t);
        CHECK(std::abs(ratio - std::exp(Complex(0.0, 1.5 * cot))) <= 1e-13);
    }
    SUBCASE("factorizes over coordinates at C = 0") {
        const net::OscillatorNetwork free{4, 1.0, 1.0, 0.0, 1.0};
        const std::vector<double> coords{0.4, -0.7, 1.1, 0.2};
        const auto assembled = kernels::full_propagator(free, coords, 0.8);
        const KernelSpec one{1.0, 1.0, 1.0, 0.8};
        const KernelSpec heavy{3.0, 1.0, 1.0, 0.8};
        Complex product = kernels::sho_kernel(one, coords[0], 0.0).value() *
                          kernels::sho_kernel(heavy, coords[1], 0.0).value();
        for (int j = 2; j < 4; ++j)
            product *= kernels::sho_kernel(one, coords[1], 0.0).value() *
                       kernels::sho_kernel(one, coords[j], 0.0).value();
        CHECK(std::abs(assembled.value() - product) / std::abs(product) <= 1e-13);
    }
    SUBCASE("rejects small networks and mismatched coordinates") {
        const std::vector<double> three(3, 0.0);
        CHECK_THROWS_AS(
            kernels::full_propagator({3, 1.0, 1.0, 0.1, 1.0}, three, 1.0),
            InvalidInput);
        const std::vector<double> wrong(5, 0.0);
        CHECK_THROWS_AS(kernels::full_propagator(net4, wrong, 1.0), InvalidInput);
        const std::vector<double> four(4, 0.0);
        CHECK_THROWS_AS(kernels::full_propagator(net4, four, -1.0), InvalidInput);
    }
    SUBCASE("inverted network mode surfaces through the assembly") {
        const net::OscillatorNetwork strong{4, 1.0, 1.0, 0.8, 1.0};
        const std::vector<double> origin(4, 0.0);
        CHECK_THROWS_AS(kernels::full_propagator(strong, origin, 1.0),
                        InvertedModeError);
    }
}

TEST_CASE("kernel parameter validation") {
    CHECK_THROWS_AS(kernels::sho_kernel({-1.0, 1.0, 1.0, 1.0}, 0.0, 0.0), InvalidInput);
    CHECK_THROWS_AS(kernels::sho_kernel({1.0, -1.0, 1.0, 1.0}, 0.0, 0.0), InvalidInput);
    CHECK_THROWS_AS(kernels::sho_kernel({1.0, 1.0, 0.0, 1.0}, 0.0, 0.0), InvalidInput);
    CHECK_THROWS_AS(kernels::sho_kernel({1.0, 1.0, 1.0, -0.5}, 0.0, 0.0), InvalidInput);
    PairSpec bad{1, 1.0, 1.0, 0.1, 1.0, 1.0, 0, KernelForm::standard};
    CHECK_THROWS_AS(kernels::pair_kernel(bad, 0.0, 0.0), InvalidInput);
}
