#include "qsim/gates.hpp"

#include <cmath>

namespace qsim::gates {

ComplexMatrix pauli_x() {
    return ComplexMatrix(2, 2, {0, 1, 1, 0});
}

ComplexMatrix pauli_y() {
    return ComplexMatrix(2, 2, {0, cplx(0, -1), cplx(0, 1), 0});
}

ComplexMatrix pauli_z() {
    return ComplexMatrix(2, 2, {1, 0, 0, -1});
}

ComplexMatrix hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return ComplexMatrix(2, 2, {s, s, s, -s});
}

ComplexMatrix cz() {
    ComplexMatrix m = ComplexMatrix::identity(4);
    m(3, 3) = -1.0;
    return m;
}

ComplexMatrix cnot() {
    ComplexMatrix m(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return m;
}

ComplexMatrix rz_diag(double theta) {
    ComplexMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = std::polar(1.0, -theta);
    return m;
}

ComplexMatrix exp_iz_half(double xi) {
    ComplexMatrix m(2, 2);
    m(0, 0) = std::polar(1.0, xi / 2.0);
    m(1, 1) = std::polar(1.0, -xi / 2.0);
    return m;
}

ComplexMatrix pauli_xz(int x, int z) {
    ComplexMatrix m = ComplexMatrix::identity(2);
    if (z) m = matmul(pauli_z(), m);
    if (x) m = matmul(pauli_x(), m);
    return m;
}

std::vector<cplx> bell_vector(int x, int z) {
    const double s = 1.0 / std::sqrt(2.0);
    const ComplexMatrix p = pauli_xz(x, z);
    // (I (x) p) applied to (|00> + |11>)/sqrt(2)
    std::vector<cplx> v(4, 0.0);
    // |0>(p|0>) component
    v[0] += s * p(0, 0);
    v[1] += s * p(1, 0);
    // |1>(p|1>) component
    v[2] += s * p(0, 1);
    v[3] += s * p(1, 1);
    return v;
}

ComplexMatrix bell_basis_unitary() {
    ComplexMatrix b(4, 4);
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z) {
            const auto v = bell_vector(x, z);
            const int col = 2 * x + z;
            for (int r = 0; r < 4; ++r) b(r, col) = v[r];
        }
    return b;
}

}  // namespace qsim::gates
