// Timing comparison of the OpenMP kernels against their serial reference
// implementations, at a few unfolding sizes.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pdti/bounds.hpp"
#include "pdti/pdti_op.hpp"
#include "pdti/sampler.hpp"

using namespace pdti;

namespace {

template <typename F>
double time_ms(F&& fn, int reps) {
    // One warmup, then best-of-reps.
    fn();
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void bench_shape(std::size_t mode, int reps, bool with_pdti_ref) {
    const Shape shape({mode, mode});
    SamplerConfig herm{shape, 42, Ensemble::gaussian_hermitian, 0.5, 2.0};
    const DenseTensor a = sample_hermitian(herm);
    const DenseTensor b = sample_hermitian(with_trial_seed(herm, 1, 0));
    const DenseTensor x = sample_hermitian(with_trial_seed(herm, 2, 0));

    const double t_par = time_ms([&] { einstein_product(a, b); }, reps);
    const double t_ref = time_ms([&] { reference::einstein_product_loops(a, b); }, reps);

    const EigenDecomposition da = eigendecompose(a);
    const EigenDecomposition db = eigendecompose(b);
    BivariateSymbol psi([](double p, double q) { return Complex(p * q + 1.0, 0.0); });
    const double t_pdti = time_ms([&] { pdti_apply_spectral(psi, da, db, x); }, reps);
    if (with_pdti_ref) {
        // The literal projection double sum is O(total^5); only feasible small.
        const double t_pdti_ref =
            time_ms([&] { reference::pdti_double_sum(psi, da, db, x); }, reps);
        std::printf("%8zu | %12.3f %12.3f %8.2fx | %12.3f %12.3f %8.2fx\n", shape.total(),
                    t_ref, t_par, t_ref / t_par, t_pdti_ref, t_pdti, t_pdti_ref / t_pdti);
    } else {
        std::printf("%8zu | %12.3f %12.3f %8.2fx | %12s %12.3f %8s\n", shape.total(), t_ref,
                    t_par, t_ref / t_par, "-", t_pdti, "-");
    }
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif
    std::printf("%8s | %12s %12s %8s | %12s %12s %8s\n", "total", "star ref ms", "star omp ms",
                "speedup", "pdti ref ms", "pdti fast ms", "speedup");
    bench_shape(4, 5, true);    // total 16
    bench_shape(8, 3, true);    // total 64
    bench_shape(16, 3, false);  // total 256
    bench_shape(32, 3, false);  // total 1024
    return 0;
}
