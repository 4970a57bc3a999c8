#include "opdiff/kernels.hpp"

namespace opdiff::kernels {

namespace {

// Accumulate y[r0:r1) += sum_j A(r0:r1, j) x_j, column-major friendly.
void matvec_rows(const Matrix& A, const Vector& x, Vector& y, Eigen::Index r0, Eigen::Index r1) {
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    const cxd xj = x(j);
    if (xj == cxd(0.0)) continue;
    for (Eigen::Index i = r0; i < r1; ++i) y(i) += A(i, j) * xj;
  }
}

}  // namespace

void matvec_serial(const Matrix& A, const Vector& x, Vector& y) {
  y.setZero(A.rows());
  matvec_rows(A, x, y, 0, A.rows());
}

void matvec(const Matrix& A, const Vector& x, Vector& y) {
  y.setZero(A.rows());
  const Eigen::Index n = A.rows();
#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (int chunk = 0; chunk < 16; ++chunk) {
      const Eigen::Index r0 = n * chunk / 16;
      const Eigen::Index r1 = n * (chunk + 1) / 16;
      matvec_rows(A, x, y, r0, r1);
    }
  }
}

void adjoint_matvec_serial(const Matrix& A, const Vector& x, Vector& y) {
  y.resize(A.cols());
  for (Eigen::Index j = 0; j < A.cols(); ++j) y(j) = A.col(j).dot(x);  // conj(A(:,j)) . x
}

void adjoint_matvec(const Matrix& A, const Vector& x, Vector& y) {
  y.resize(A.cols());
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < A.cols(); ++j) y(j) = A.col(j).dot(x);
}

namespace {

void product_column(const Matrix& A, const Matrix& B, Matrix& C, Eigen::Index j) {
  C.col(j).setZero();
  for (Eigen::Index k = 0; k < A.cols(); ++k) {
    const cxd bkj = B(k, j);
    if (bkj == cxd(0.0)) continue;
    C.col(j) += A.col(k) * bkj;
  }
}

}  // namespace

Matrix matmul_serial(const Matrix& A, const Matrix& B) {
  Matrix C(A.rows(), B.cols());
  for (Eigen::Index j = 0; j < B.cols(); ++j) product_column(A, B, C, j);
  return C;
}

Matrix matmul(const Matrix& A, const Matrix& B) {
  Matrix C(A.rows(), B.cols());
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < B.cols(); ++j) product_column(A, B, C, j);
  return C;
}

Matrix gram_serial(const Matrix& A) {
  Matrix G(A.cols(), A.cols());
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.cols(); ++i) G(i, j) = A.col(i).dot(A.col(j));
  return G;
}

Matrix gram(const Matrix& A) {
  Matrix G(A.cols(), A.cols());
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.cols(); ++i) G(i, j) = A.col(i).dot(A.col(j));
  return G;
}

Matrix cogram_serial(const Matrix& A) {
  return matmul_serial(A, A.adjoint());
}

Matrix cogram(const Matrix& A) {
  const Matrix AH = A.adjoint();
  return matmul(A, AH);
}

}  // namespace opdiff::kernels
