#include "pdti/sampler.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace pdti {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t state = base;
    std::uint64_t a = splitmix64(state);
    state = a ^ (stream * 0xda942042e4dd58b5ULL);
    std::uint64_t b = splitmix64(state);
    state = b ^ (index * 0x2545f4914f6cdd1dULL);
    return splitmix64(state);
}

SamplerConfig with_trial_seed(const SamplerConfig& cfg, std::uint64_t stream,
                              std::uint64_t index) {
    SamplerConfig out = cfg;
    out.seed = derive_seed(cfg.seed, stream, index);
    return out;
}

namespace {

class PinnedRng {
  public:
    explicit PinnedRng(std::uint64_t seed) : engine_(seed) {}

    // 53-bit mantissa uniform in [0, 1).
    double uniform01() { return (engine_() >> 11) * 0x1.0p-53; }

    double normal() {
        // Box-Muller, one value per pair consumed (the spare is kept).
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01(), u2 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    Complex standard_complex_gaussian() {
        const double re = normal();
        const double im = normal();
        return Complex(re, im) / std::sqrt(2.0);
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace

DenseTensor sample_hermitian(const SamplerConfig& cfg) {
    if (cfg.ensemble != Ensemble::gaussian_hermitian)
        throw ParameterError("sample_hermitian: config selects a different ensemble");
    PinnedRng rng(cfg.seed);
    const std::size_t n = cfg.shape.total();
    DenseTensor g(cfg.shape);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) g.at(r, c) = rng.standard_complex_gaussian();
    // (G + G^H)/2, exactly Hermitian.
    DenseTensor h(cfg.shape);
    for (std::size_t r = 0; r < n; ++r) {
        h.at(r, r) = Complex(g.at(r, r).real(), 0.0);
        for (std::size_t c = r + 1; c < n; ++c) {
            const Complex v = 0.5 * (g.at(r, c) + std::conj(g.at(c, r)));
            h.at(r, c) = v;
            h.at(c, r) = std::conj(v);
        }
    }
    return h;
}

DenseTensor sample_positive_definite(const SamplerConfig& cfg) {
    if (cfg.ensemble != Ensemble::positive_definite)
        throw ParameterError("sample_positive_definite: config selects a different ensemble");
    if (!(cfg.lambda_min > 0.0) || cfg.lambda_max < cfg.lambda_min)
        throw ParameterError("sample_positive_definite: need 0 < lambda_min <= lambda_max");
    PinnedRng rng(cfg.seed);
    const std::size_t n = cfg.shape.total();

    // Spectrum first, then the Gaussian for Q — the draw order is part of
    // the determinism contract.
    Eigen::VectorXd lambda(n);
    for (std::size_t i = 0; i < n; ++i)
        lambda(i) = cfg.lambda_min + (cfg.lambda_max - cfg.lambda_min) * rng.uniform01();

    Eigen::MatrixXcd g(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) g(r, c) = rng.standard_complex_gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (std::size_t i = 0; i < n; ++i) {
        const Complex d = r(i, i);
        const Complex phase = std::abs(d) > 0.0 ? d / std::abs(d) : Complex(1.0, 0.0);
        q.col(i) *= phase;
    }

    Eigen::MatrixXcd h = q * lambda.asDiagonal() * q.adjoint();
    h = 0.5 * (h + h.adjoint().eval());  // scrub rounding asymmetry
    return fold(h, cfg.shape);
}

DenseTensor sample(const SamplerConfig& cfg) {
    return cfg.ensemble == Ensemble::gaussian_hermitian ? sample_hermitian(cfg)
                                                        : sample_positive_definite(cfg);
}

}  // namespace pdti
