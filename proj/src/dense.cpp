#include "dtclab/dense.hpp"

#include <cmath>
#include <stdexcept>

namespace dtc {

CMat matrix_of(int num_qubits, const std::function<void(StateVector&)>& op) {
    const auto d = static_cast<Eigen::Index>(std::uint64_t{1} << num_qubits);
    CMat m(d, d);
    for (Eigen::Index col = 0; col < d; ++col) {
        StateVector s(num_qubits);
        s.amps_mut()[0] = 0.0;
        s.amps_mut()[static_cast<std::uint64_t>(col)] = 1.0;
        op(s);
        for (Eigen::Index row = 0; row < d; ++row) m(row, col) = s.amp(static_cast<std::uint64_t>(row));
    }
    return m;
}

double spectral_norm(const CMat& m) {
    if (m.size() == 0) return 0.0;
    CVec v = CVec::Zero(m.cols());
    // deterministic, unlikely-to-be-orthogonal start
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = cplx(std::cos(0.7 * static_cast<double>(i) + 0.3), std::sin(1.3 * static_cast<double>(i) + 0.1));
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < 500; ++it) {
        CVec w = m.adjoint() * (m * v);
        const double nl = w.norm();
        if (nl == 0.0) return 0.0;
        w /= nl;
        if (std::abs(nl - lambda) <= 1e-15 * std::max(1.0, nl) && it > 4) {
            lambda = nl;
            break;
        }
        lambda = nl;
        v = w;
    }
    return std::sqrt(lambda);
}

double phase_aligned_distance(const CMat& a, const CMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("phase_aligned_distance: shape mismatch");
    cplx t = (b.adjoint() * a).trace();
    const cplx phase = (std::abs(t) < 1e-300) ? cplx(1.0, 0.0) : t / std::abs(t);
    return spectral_norm(a - phase * b);
}

CMat expi_hermitian(const CMat& h, double tau) {
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("expi_hermitian: eigendecomposition failed");
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    CVec phases(vals.size());
    for (Eigen::Index i = 0; i < vals.size(); ++i) phases(i) = std::polar(1.0, tau * vals(i));
    return vecs * phases.asDiagonal() * vecs.adjoint();
}

}  // namespace dtc
