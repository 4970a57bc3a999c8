#ifndef OPDIFF_KERNELS_HPP
#define OPDIFF_KERNELS_HPP

#include <Eigen/Dense>

#include "opdiff/types.hpp"

// Dense complex linear-algebra kernels. Each kernel has an OpenMP-parallel
// entry point (the production path) and a serial reference implementation the
// tests compare against. All parallel variants accumulate in a fixed order,
// so results are bit-identical to the serial ones for any thread count.
namespace opdiff::kernels {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// y = A x
void matvec_serial(const Matrix& A, const Vector& x, Vector& y);
void matvec(const Matrix& A, const Vector& x, Vector& y);

// y = A^H x
void adjoint_matvec_serial(const Matrix& A, const Vector& x, Vector& y);
void adjoint_matvec(const Matrix& A, const Vector& x, Vector& y);

// A B
Matrix matmul_serial(const Matrix& A, const Matrix& B);
Matrix matmul(const Matrix& A, const Matrix& B);

// A^H A and A A^H
Matrix gram_serial(const Matrix& A);
Matrix gram(const Matrix& A);
Matrix cogram_serial(const Matrix& A);
Matrix cogram(const Matrix& A);

}  // namespace opdiff::kernels

#endif
