#pragma once

#include <cstdint>

#include "pdti/tensor.hpp"

namespace pdti {

enum class Ensemble { gaussian_hermitian, positive_definite };

/// Seeded random-tensor configuration. Identical configs produce bitwise
/// identical samples: the generator consumes a pinned uniform stream
/// (mt19937_64 words mapped to [0,1) explicitly) and Box-Muller normals,
/// so the draws do not depend on library distribution internals.
struct SamplerConfig {
    Shape shape;
    std::uint64_t seed = 0;
    Ensemble ensemble = Ensemble::gaussian_hermitian;
    double lambda_min = 0.5;  // positive-definite ensemble only
    double lambda_max = 2.0;
};

/// SplitMix64 step; used to decorrelate per-trial streams from a base seed.
std::uint64_t splitmix64(std::uint64_t& state);

/// Stream seed for (base seed, stream, index) — the counter-based scheme
/// that makes trial streams independent of worker count.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index);

/// Config with the seed rebased for one trial of one stream.
SamplerConfig with_trial_seed(const SamplerConfig& cfg, std::uint64_t stream,
                              std::uint64_t index);

/// H = (G + G^H)/2 with iid standard complex Gaussian entries in G.
DenseTensor sample_hermitian(const SamplerConfig& cfg);

/// Q diag(lambda) Q^H with a Haar unitary Q (QR of a Gaussian, phases fixed)
/// and lambda_i iid uniform on [lambda_min, lambda_max].
DenseTensor sample_positive_definite(const SamplerConfig& cfg);

/// Dispatch on cfg.ensemble.
DenseTensor sample(const SamplerConfig& cfg);

}  // namespace pdti
