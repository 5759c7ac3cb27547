// Timing of the OpenMP assembly and matvec kernels against the serial reference
// implementations. The parallel results are required to match bitwise, so the
// speedup table is the only thing that varies between machines.

#include "ccf/assembly.hpp"
#include "ccf/geometry.hpp"

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <vector>

using namespace ccf;

namespace {

template <class F> double best_of(int runs, F&& f) {
    double best = 1e300;
    for (int i = 0; i < runs; ++i) {
        const double t0 = omp_get_wtime();
        f();
        best = std::min(best, omp_get_wtime() - t0);
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 50;
    const double radius = argc > 2 ? std::atof(argv[2]) : 100.0;

    const MeshDomain mesh = build_mesh_domain(n, Region::HalfDisk);
    OperatorSpec spec;
    spec.mesh = &mesh;
    spec.alphabet = Alphabet::i1();
    spec.radius = radius;
    spec.s = 1.86;
    spec.alpha = 0.0007;
    spec.correction = Correction::Lower;

    std::printf("mesh n=%d (%zu points), digit radius %g\n", n, mesh.size(), radius);

    const SparseRowMatrix ref = assemble_reference(spec);
    const double t_ref = best_of(3, [&] { assemble_reference(spec); });
    std::printf("%-22s %8.3fs\n", "assemble serial", t_ref);

    const int max_threads = omp_get_max_threads();
    for (int threads : {1, 2, 4, max_threads}) {
        omp_set_num_threads(threads);
        const SparseRowMatrix m = assemble(spec);
        if (!(m == ref)) {
            std::printf("FAIL: parallel assembly at %d threads differs from the reference\n",
                        threads);
            return 1;
        }
        const double t = best_of(3, [&] { assemble(spec); });
        std::printf("assemble %2d threads    %8.3fs  speedup %.2f\n", threads, t, t_ref / t);
    }
    omp_set_num_threads(max_threads);

    const int reps = 50;
    std::vector<double> x(ref.n, 1.0), y(ref.n), ys(ref.n);
    ref.apply_serial(x.data(), ys.data());
    const double t_mv_ref = best_of(3, [&] {
        for (int i = 0; i < reps; ++i)
            ref.apply_serial(x.data(), ys.data());
    });
    std::printf("%-22s %8.4fs per %d matvecs\n", "matvec serial", t_mv_ref, reps);

    for (int threads : {1, 2, 4, max_threads}) {
        omp_set_num_threads(threads);
        ref.apply(x.data(), y.data());
        if (y != ys) {
            std::printf("FAIL: parallel matvec at %d threads differs from the reference\n",
                        threads);
            return 1;
        }
        const double t = best_of(3, [&] {
            for (int i = 0; i < reps; ++i)
                ref.apply(x.data(), y.data());
        });
        std::printf("matvec %2d threads      %8.4fs  speedup %.2f\n", threads, t, t_mv_ref / t);
    }

    std::printf("all parallel kernels match the serial reference bitwise\n");
    return 0;
}
