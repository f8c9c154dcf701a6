#include "dtclab/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace dtc {

GateMatrix GateMatrix::adjoint() const {
    GateMatrix out;
    out.arity = arity;
    const int n = dim();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out.at(r, c) = std::conj(at(c, r));
    return out;
}

double GateMatrix::unitarity_error() const {
    const int n = dim();
    double err = 0.0;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            cplx s = 0.0;
            for (int k = 0; k < n; ++k) s += std::conj(at(k, r)) * at(k, c);
            if (r == c) s -= 1.0;
            err = std::max(err, std::abs(s));
        }
    }
    return err;
}

GateMatrix make_gate1(const std::array<cplx, 4>& entries) {
    GateMatrix g;
    g.arity = 1;
    for (int i = 0; i < 4; ++i) g.m[static_cast<std::size_t>(i)] = entries[static_cast<std::size_t>(i)];
    return g;
}

GateMatrix make_gate2(const std::array<cplx, 16>& entries) {
    GateMatrix g;
    g.arity = 2;
    g.m = entries;
    return g;
}

GateMatrix kron(const GateMatrix& a, const GateMatrix& b) {
    if (a.arity != 1 || b.arity != 1) throw std::invalid_argument("kron: expects two one-qubit gates");
    GateMatrix g;
    g.arity = 2;
    for (int r1 = 0; r1 < 2; ++r1)
        for (int c1 = 0; c1 < 2; ++c1)
            for (int r2 = 0; r2 < 2; ++r2)
                for (int c2 = 0; c2 < 2; ++c2) g.at(2 * r1 + r2, 2 * c1 + c2) = a.at(r1, c1) * b.at(r2, c2);
    return g;
}

GateMatrix identity1() { return make_gate1({1.0, 0.0, 0.0, 1.0}); }
GateMatrix pauli_x() { return make_gate1({0.0, 1.0, 1.0, 0.0}); }
GateMatrix pauli_y() { return make_gate1({0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0}); }
GateMatrix pauli_z() { return make_gate1({1.0, 0.0, 0.0, -1.0}); }

GateMatrix hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return make_gate1({s, s, s, -s});
}

GateMatrix x_rotation(double angle) {
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    return make_gate1({c, cplx(0, -s), cplx(0, -s), c});
}

GateMatrix y_rotation(double angle) {
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    return make_gate1({c, -s, s, c});
}

GateMatrix z_rotation(double angle) {
    return make_gate1({std::polar(1.0, -angle / 2), 0.0, 0.0, std::polar(1.0, angle / 2)});
}

GateMatrix equatorial_rotation(double axis, double angle) {
    // exp(-i angle n.sigma / 2), n = (cos axis, sin axis, 0)
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    const cplx off01 = cplx(0, -s) * std::polar(1.0, -axis);
    const cplx off10 = cplx(0, -s) * std::polar(1.0, axis);
    return make_gate1({c, off01, off10, c});
}

GateMatrix pi_rotation(double axis) { return equatorial_rotation(axis, 3.14159265358979323846); }

GateMatrix cz_gate() {
    GateMatrix g;
    g.arity = 2;
    g.at(0, 0) = 1.0;
    g.at(1, 1) = 1.0;
    g.at(2, 2) = 1.0;
    g.at(3, 3) = -1.0;
    return g;
}

double KrausChannel::completeness_error() const {
    if (operators.empty()) return 1.0;
    const int n = operators.front().dim();
    double err = 0.0;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            cplx s = 0.0;
            for (const auto& k : operators)
                for (int j = 0; j < n; ++j) s += std::conj(k.at(j, r)) * k.at(j, c);
            if (r == c) s -= 1.0;
            err = std::max(err, std::abs(s));
        }
    }
    return err;
}

KrausChannel identity_channel() { return KrausChannel{{identity1()}}; }

KrausChannel depolarizing_channel(double p) {
    if (p < 0.0 || p > 0.75) throw std::domain_error("depolarizing_channel: p must lie in [0, 0.75]");
    const double a = std::sqrt(1.0 - p), b = std::sqrt(p / 3.0);
    auto scale = [](GateMatrix g, double f) {
        for (auto& e : g.m) e *= f;
        return g;
    };
    return KrausChannel{{scale(identity1(), a), scale(pauli_x(), b), scale(pauli_y(), b), scale(pauli_z(), b)}};
}

}  // namespace dtc
