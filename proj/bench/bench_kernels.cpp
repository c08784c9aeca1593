// Elimination kernel benchmark. The production kernels are timed at one
// thread and at the full thread count (same algorithm, so the ratio is the
// OpenMP effect), and their output is checked bitwise against the serial
// reference implementation.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "homcat/matrix.hpp"
#include "homcat/rng.hpp"
#include "homcat/verify.hpp"

using namespace homcat;

namespace {

void set_threads(int n)
{
#ifdef _OPENMP
    omp_set_num_threads(n);
#else
    (void)n;
#endif
}

int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

template <typename F>
double time_ms(F&& f, int reps)
{
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i)
        f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
               .count() /
           reps;
}

void bench_rref(const std::string& label, const Matrix& m, int reps, int threads)
{
    set_threads(1);
    double t1 = time_ms([&] { (void)rref(m); }, reps);
    set_threads(threads);
    double tn = time_ms([&] { (void)rref(m); }, reps);
    Echelon par = rref(m);
    Echelon ser = ref::rref(m);
    bool equal = par.rref == ser.rref && par.pivots == ser.pivots;
    std::printf("%-26s %4zux%-4zu rank %-4zu 1 thr %8.2f ms  %d thr %8.2f ms  x%.2f  ref %s\n",
                label.c_str(), m.rows(), m.cols(), par.rank, t1, threads, tn, t1 / tn,
                equal ? "identical" : "MISMATCH");
}

void bench_mul(const std::string& label, const Matrix& a, const Matrix& b, int reps, int threads)
{
    set_threads(1);
    double t1 = time_ms([&] { (void)(a * b); }, reps);
    set_threads(threads);
    double tn = time_ms([&] { (void)(a * b); }, reps);
    bool equal = (a * b) == ref::multiply(a, b);
    std::printf("%-26s %4zux%-4zu           1 thr %8.2f ms  %d thr %8.2f ms  x%.2f  ref %s\n",
                label.c_str(), a.rows(), b.cols(), t1, threads, tn, t1 / tn,
                equal ? "identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv)
{
    int scale = argc > 1 ? std::atoi(argv[1]) : 1;
    int threads = max_threads();
    std::printf("threads: %d\n", threads);
    Rng rng(42);
    const Field Q = Field::rationals();
    const Field Fp = Field::prime_field(1009);

    bench_rref("rref rationals (dense)", gen::random_matrix(Q, rng, 60 * scale, 60 * scale, 4), 3,
               threads);
    bench_rref("rref rationals (wide)", gen::random_matrix(Q, rng, 40 * scale, 120 * scale, 4), 3,
               threads);
    bench_rref("rref F_1009", gen::random_matrix(Fp, rng, 160 * scale, 160 * scale, 0), 3,
               threads);
    bench_mul("multiply rationals", gen::random_matrix(Q, rng, 80 * scale, 80 * scale, 4),
              gen::random_matrix(Q, rng, 80 * scale, 80 * scale, 4), 3, threads);
    bench_mul("multiply F_1009", gen::random_matrix(Fp, rng, 200 * scale, 200 * scale, 0),
              gen::random_matrix(Fp, rng, 200 * scale, 200 * scale, 0), 3, threads);
    return 0;
}
