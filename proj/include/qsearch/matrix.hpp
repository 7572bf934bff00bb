#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qsearch/circuit.hpp"

namespace qsearch {

using Amplitude = std::complex<double>;

/// Largest register width accepted by the dense matrix routines.
inline constexpr std::size_t kMatrixQubitCap = 12;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    static ComplexMatrix identity(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }
    Amplitude &operator()(std::size_t row, std::size_t col) {
        return data_[row * dim_ + col];
    }
    const Amplitude &operator()(std::size_t row, std::size_t col) const {
        return data_[row * dim_ + col];
    }

    ComplexMatrix operator*(const ComplexMatrix &rhs) const;
    std::vector<Amplitude> apply(const std::vector<Amplitude> &v) const;

  private:
    std::size_t dim_ = 0;
    std::vector<Amplitude> data_;
};

/// Largest entrywise modulus of a - b. Throws DimensionMismatch.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
double frobenius_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// Ordered product of the gate unitaries; column j is the image of |j>.
///
/// Built from the textbook definition of each gate, row by row, and
/// deliberately shares no code with the statevector kernels so it can be
/// used to cross-check them. Throws MatrixCapExceeded above 12 qubits.
ComplexMatrix to_unitary(const Circuit &circuit);

/// max |(U^dagger U - I)_ij|. Exploits sparsity of permutation-heavy
/// circuits, so it stays cheap at the 12-qubit cap.
double unitarity_deviation(const ComplexMatrix &u);
double unitarity_check(const Circuit &circuit);

} // namespace qsearch
