#include "oscibath/network.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "oscibath/oracles.hpp"

namespace oscibath::net {

void OscillatorNetwork::validate() const {
    if (n < 2) throw InvalidInput("network: n must be >= 2");
    if (!(mass > 0.0)) throw InvalidInput("network: mass must be > 0");
    if (!(omega > 0.0)) throw InvalidInput("network: omega must be > 0");
    if (!(hbar > 0.0)) throw InvalidInput("network: hbar must be > 0");
    if (!std::isfinite(coupling)) throw InvalidInput("network: coupling must be finite");
}

Eigen::MatrixXd characteristic_matrix(const OscillatorNetwork& net) {
    net.validate();
    const int n = net.n;
    const double c = net.coupling;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    m(0, 0) = n * c;
    for (int j = 1; j < n; ++j) m(0, j) = c;
    for (int i = 1; i < n; ++i) {
        m(i, 0) = -c;
        m(i, i) = -c;
    }
    return m;
}

double nondegenerate_first_component(const OscillatorNetwork& net, double lambda) {
    net.validate();
    const double c = net.coupling;
    if (c == 0.0) throw InvalidInput("nondegenerate_first_component: undefined at C = 0");
    const double denom = net.n * c - lambda;
    if (denom == 0.0)
        throw InvalidInput("nondegenerate_first_component: lambda coincides with n C");
    return -(net.n - 1) * c / denom;
}

ModeSpectrum mode_spectrum(const OscillatorNetwork& net) {
    net.validate();
    const int n = net.n;
    const double c = net.coupling;

    ModeSpectrum s;
    s.n = n;
    s.coupling = c;

    if (c == 0.0) {
        s.all_degenerate = true;
        s.degenerate_value = 0.0;
        s.degenerate_multiplicity = n;
        s.lambda_plus = 0.0;
        s.lambda_minus = 0.0;
        for (int k = 0; k < n; ++k) {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
            v(k) = 1.0;
            s.eigenvectors.push_back(std::move(v));
        }
        return s;
    }

    const double root = std::sqrt(double(n - 1) * (n - 1) + 4.0);
    s.lambda_plus = c * ((n - 1) + root) / 2.0;
    s.lambda_minus = c * ((n - 1) - root) / 2.0;
    s.degenerate_value = -c;
    s.degenerate_multiplicity = n - 2;
    s.all_degenerate = false;

    for (int k = 3; k <= n; ++k) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
        v(1) = -1.0;
        v(k - 1) = 1.0;
        s.eigenvectors.push_back(std::move(v));
    }
    for (double lambda : {s.lambda_plus, s.lambda_minus}) {
        Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
        v(0) = nondegenerate_first_component(net, lambda);
        s.eigenvectors.push_back(std::move(v));
    }
    return s;
}

std::vector<double> ModeSpectrum::all_eigenvalues() const {
    std::vector<double> values;
    values.reserve(n);
    if (all_degenerate) {
        values.assign(n, 0.0);
        return values;
    }
    values.assign(degenerate_multiplicity, degenerate_value);
    values.push_back(lambda_plus);
    values.push_back(lambda_minus);
    return values;
}

std::string spectrum_to_json(const ModeSpectrum& spectrum, int indent) {
    nlohmann::json doc;
    doc["n"] = spectrum.n;
    doc["coupling"] = spectrum.coupling;
    doc["all_degenerate"] = spectrum.all_degenerate;
    doc["degenerate"] = {{"value", spectrum.degenerate_value},
                         {"multiplicity", spectrum.degenerate_multiplicity}};
    doc["nondegenerate"] = {spectrum.lambda_plus, spectrum.lambda_minus};
    auto vectors = nlohmann::json::array();
    for (const auto& v : spectrum.eigenvectors) {
        auto entry = nlohmann::json::array();
        for (int i = 0; i < v.size(); ++i) entry.push_back(v(i));
        vectors.push_back(std::move(entry));
    }
    doc["eigenvectors"] = std::move(vectors);
    return doc.dump(indent);
}

SpectrumCheck closed_form_matches_bruteforce(const OscillatorNetwork& net, double tol) {
    const Eigen::MatrixXd m = characteristic_matrix(net);
    const std::vector<Complex> brute = oracles::dense_eigensolve(m);
    const ModeSpectrum closed = mode_spectrum(net);

    std::vector<double> closed_values = closed.all_eigenvalues();
    std::sort(closed_values.begin(), closed_values.end());

    SpectrumCheck check;
    check.n = net.n;
    check.coupling = net.coupling;

    for (const Complex& z : brute)
        check.max_imag = std::max(check.max_imag, std::abs(z.imag()));

    std::vector<double> brute_real(brute.size());
    for (std::size_t i = 0; i < brute.size(); ++i) brute_real[i] = brute[i].real();
    std::sort(brute_real.begin(), brute_real.end());
    for (std::size_t i = 0; i < brute_real.size(); ++i)
        check.max_abs_error =
            std::max(check.max_abs_error, std::abs(brute_real[i] - closed_values[i]));

    const std::vector<double> values = closed.all_eigenvalues();
    for (std::size_t k = 0; k < closed.eigenvectors.size(); ++k) {
        const Eigen::VectorXd& v = closed.eigenvectors[k];
        const Eigen::VectorXd residual = m * v - values[k] * v;
        check.max_residual =
            std::max(check.max_residual, residual.cwiseAbs().maxCoeff());
    }

    const double scale = std::max(1.0, std::abs(net.coupling));
    check.pass = check.max_abs_error <= tol * scale && check.max_imag <= 1e-10 &&
                 check.max_residual <= 1e-10 * scale;
    return check;
}

}  // namespace oscibath::net
