#pragma once

#include <Eigen/Dense>
#include <functional>

#include "dtclab/state_vector.hpp"

namespace dtc {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Dense matrix of a state-vector operation, built column by column from
// basis states. Intended for L small enough that 4^L entries are cheap.
CMat matrix_of(int num_qubits, const std::function<void(StateVector&)>& op);

// Largest singular value (power iteration on M^dag M, deterministic start).
double spectral_norm(const CMat& m);

// min_gamma ||A - e^{i gamma} B||_2 with gamma chosen analytically from the
// trace inner product Tr(B^dag A).
double phase_aligned_distance(const CMat& a, const CMat& b);

// exp(i tau H) for Hermitian H, via eigendecomposition.
CMat expi_hermitian(const CMat& h, double tau);

}  // namespace dtc
