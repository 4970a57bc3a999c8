// Benchmark: OpenMP kernels against their serial reference implementations.
// Also cross-checks that both paths produce identical results.

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "opdiff/operator.hpp"
#include "opdiff/spectral.hpp"

using namespace opdiff;

namespace {

kernels::Matrix random_matrix(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  kernels::Matrix A(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) A(i, j) = cxd(unit(rng), unit(rng)) / static_cast<double>(n);
  return A;
}

template <typename F>
double time_best_of(F&& f, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = omp_get_wtime();
    f();
    best = std::min(best, omp_get_wtime() - t0);
  }
  return best;
}

void row(const char* name, int n, double serial_s, double parallel_s, double max_diff) {
  std::printf("%-18s n=%-5d serial %9.3f ms   parallel %9.3f ms   speedup %5.2fx   max|diff| %.2e\n",
              name, n, serial_s * 1e3, parallel_s * 1e3,
              parallel_s > 0 ? serial_s / parallel_s : 0.0, max_diff);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> sizes = {256, 512};
  if (argc > 1) {
    sizes.clear();
    for (int i = 1; i < argc; ++i) sizes.push_back(std::atoi(argv[i]));
  }
  std::printf("threads: %d\n", omp_get_max_threads());

  for (int n : sizes) {
    const kernels::Matrix A = random_matrix(n, 1u);
    const kernels::Matrix B = random_matrix(n, 2u);
    kernels::Vector x = kernels::Vector::Ones(n), y1(n), y2(n);

    const int reps = n <= 512 ? 5 : 2;

    {
      const double ts = time_best_of([&] { kernels::matvec_serial(A, x, y1); }, reps * 20);
      const double tp = time_best_of([&] { kernels::matvec(A, x, y2); }, reps * 20);
      row("matvec", n, ts, tp, (y1 - y2).cwiseAbs().maxCoeff());
    }
    {
      const double ts = time_best_of([&] { kernels::adjoint_matvec_serial(A, x, y1); }, reps * 20);
      const double tp = time_best_of([&] { kernels::adjoint_matvec(A, x, y2); }, reps * 20);
      row("adjoint_matvec", n, ts, tp, (y1 - y2).cwiseAbs().maxCoeff());
    }
    {
      kernels::Matrix C1, C2;
      const double ts = time_best_of([&] { C1 = kernels::matmul_serial(A, B); }, reps);
      const double tp = time_best_of([&] { C2 = kernels::matmul(A, B); }, reps);
      row("matmul", n, ts, tp, (C1 - C2).cwiseAbs().maxCoeff());
    }
    {
      kernels::Matrix G1, G2;
      const double ts = time_best_of([&] { G1 = kernels::gram_serial(A); }, reps);
      const double tp = time_best_of([&] { G2 = kernels::gram(A); }, reps);
      row("gram", n, ts, tp, (G1 - G2).cwiseAbs().maxCoeff());
    }
    {
      // Operator-matrix construction, thread-capped vs full team.
      OperatorSpec spec;
      spec.comp = OperatorSpec::CompPart{TruncatedSeries({1.0, 0.5}),
                                         TruncatedSeries({0.0, 0.5, 0.2})};
      spec.diff = OperatorSpec::DiffPart{TruncatedSeries::monomial(1),
                                         TruncatedSeries({0.0, 0.4, 0.1}), 1};
      const int max_threads = omp_get_max_threads();
      kernels::Matrix M1, M2;
      omp_set_num_threads(1);
      const double ts = time_best_of([&] { M1 = build_matrix(spec, -1.0, n - 1).entries; }, reps);
      omp_set_num_threads(max_threads);
      const double tp = time_best_of([&] { M2 = build_matrix(spec, -1.0, n - 1).entries; }, reps);
      row("build_matrix", n, ts, tp, (M1 - M2).cwiseAbs().maxCoeff());

      omp_set_num_threads(1);
      double norm1 = 0, norm2 = 0;
      const double ns = time_best_of([&] { norm1 = operator_norm(M1); }, reps);
      omp_set_num_threads(max_threads);
      const double np = time_best_of([&] { norm2 = operator_norm(M2); }, reps);
      row("operator_norm", n, ns, np, std::abs(norm1 - norm2));
    }
    std::printf("\n");
  }
  return 0;
}
