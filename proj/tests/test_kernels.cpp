#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "opdiff/kernels.hpp"

using namespace opdiff;

namespace {

kernels::Matrix random_matrix(int rows, int cols, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  kernels::Matrix A(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) A(i, j) = cxd(unit(rng), unit(rng));
  return A;
}

}  // namespace

TEST_CASE("parallel kernels are bit-identical to the serial references") {
  for (int n : {1, 7, 33, 128}) {
    const kernels::Matrix A = random_matrix(n, n, 1u + static_cast<unsigned>(n));
    const kernels::Matrix B = random_matrix(n, n, 2u + static_cast<unsigned>(n));
    kernels::Vector x = random_matrix(n, 1, 3u).col(0);

    kernels::Vector y1, y2;
    kernels::matvec_serial(A, x, y1);
    kernels::matvec(A, x, y2);
    CHECK((y1 - y2).cwiseAbs().maxCoeff() == 0.0);

    kernels::adjoint_matvec_serial(A, x, y1);
    kernels::adjoint_matvec(A, x, y2);
    CHECK((y1 - y2).cwiseAbs().maxCoeff() == 0.0);

    CHECK((kernels::matmul_serial(A, B) - kernels::matmul(A, B)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((kernels::gram_serial(A) - kernels::gram(A)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((kernels::cogram_serial(A) - kernels::cogram(A)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("kernels agree with the Eigen expressions") {
  const int n = 64;
  const kernels::Matrix A = random_matrix(n, n, 10u);
  const kernels::Matrix B = random_matrix(n, n, 11u);
  const kernels::Vector x = random_matrix(n, 1, 12u).col(0);

  kernels::Vector y;
  kernels::matvec(A, x, y);
  CHECK((y - A * x).cwiseAbs().maxCoeff() < 1e-12);

  kernels::adjoint_matvec(A, x, y);
  CHECK((y - A.adjoint() * x).cwiseAbs().maxCoeff() < 1e-12);

  CHECK((kernels::matmul(A, B) - A * B).cwiseAbs().maxCoeff() < 1e-11);
  CHECK((kernels::gram(A) - A.adjoint() * A).cwiseAbs().maxCoeff() < 1e-11);
  CHECK((kernels::cogram(A) - A * A.adjoint()).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("gram matrices are hermitian") {
  const kernels::Matrix A = random_matrix(32, 32, 20u);
  const kernels::Matrix G = kernels::gram(A);
  CHECK((G - G.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
}
