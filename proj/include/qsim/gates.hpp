#pragma once

#include "qsim/matrix.hpp"

namespace qsim::gates {

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix hadamard();
ComplexMatrix cz();
ComplexMatrix cnot();

/// diag(1, e^{-i*theta}); measuring in the |±_theta> basis implements
/// X^s H rz_diag(theta) on the logical wire.
ComplexMatrix rz_diag(double theta);

/// e^{i*xi/2 * Z} = diag(e^{i*xi/2}, e^{-i*xi/2}).
ComplexMatrix exp_iz_half(double xi);

/// X^x Z^z on a single qubit.
ComplexMatrix pauli_xz(int x, int z);

/// |beta_{x,z}> = (I (x) X^x Z^z)|Phi+>, as a 4-entry column.
std::vector<cplx> bell_vector(int x, int z);

/// Unitary mapping |x z> -> |beta_{x,z}>.
ComplexMatrix bell_basis_unitary();

}  // namespace qsim::gates
