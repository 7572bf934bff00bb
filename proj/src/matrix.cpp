#include "qsearch/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "qsearch/error.hpp"

namespace qsearch {

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix &rhs) const {
    if (rhs.dim_ != dim_) {
        throw Error(ErrorKind::DimensionMismatch, "matrix product dimensions");
    }
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t k = 0; k < dim_; ++k) {
            const Amplitude a = (*this)(i, k);
            if (a == Amplitude{}) {
                continue;
            }
            for (std::size_t j = 0; j < dim_; ++j) {
                out(i, j) += a * rhs(k, j);
            }
        }
    }
    return out;
}

std::vector<Amplitude> ComplexMatrix::apply(const std::vector<Amplitude> &v) const {
    if (v.size() != dim_) {
        throw Error(ErrorKind::DimensionMismatch, "matrix-vector dimensions");
    }
    std::vector<Amplitude> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        Amplitude acc{};
        for (std::size_t j = 0; j < dim_; ++j) {
            acc += (*this)(i, j) * v[j];
        }
        out[i] = acc;
    }
    return out;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "matrix dimensions differ");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
        }
    }
    return worst;
}

double frobenius_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "matrix dimensions differ");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            acc += std::norm(a(i, j) - b(i, j));
        }
    }
    return std::sqrt(acc);
}

namespace {

bool bit(std::size_t index, Qubit q) { return ((index >> q) & 1U) != 0; }

bool controls_fire(std::size_t row, const std::vector<Control> &controls) {
    for (const auto &c : controls) {
        if (bit(row, c.qubit) != (c.polarity == Polarity::Positive)) {
            return false;
        }
    }
    return true;
}

void swap_rows(ComplexMatrix &u, std::size_t a, std::size_t b) {
    for (std::size_t col = 0; col < u.dim(); ++col) {
        std::swap(u(a, col), u(b, col));
    }
}

// Left-multiplies `u` by the unitary of `gate`.
void left_multiply(ComplexMatrix &u, const Gate &gate) {
    const std::size_t dim = u.dim();
    switch (gate.kind()) {
    case GateKind::Hadamard: {
        const Qubit t = gate.targets().front();
        const double s = 1.0 / std::numbers::sqrt2;
        for (std::size_t row = 0; row < dim; ++row) {
            if (bit(row, t)) {
                continue;
            }
            const std::size_t partner = row | (std::size_t{1} << t);
            for (std::size_t col = 0; col < dim; ++col) {
                const Amplitude a = u(row, col);
                const Amplitude b = u(partner, col);
                u(row, col) = s * (a + b);
                u(partner, col) = s * (a - b);
            }
        }
        break;
    }
    case GateKind::PauliX:
    case GateKind::MultiControlledX: {
        std::size_t flip = 0;
        for (Qubit t : gate.targets()) {
            flip |= std::size_t{1} << t;
        }
        for (std::size_t row = 0; row < dim; ++row) {
            const std::size_t partner = row ^ flip;
            if (partner > row && controls_fire(row, gate.controls())) {
                swap_rows(u, row, partner);
            }
        }
        break;
    }
    }
}

} // namespace

ComplexMatrix to_unitary(const Circuit &circuit) {
    if (circuit.qubit_count() > kMatrixQubitCap) {
        throw Error(ErrorKind::MatrixCapExceeded,
                    std::to_string(circuit.qubit_count()) +
                        " qubits exceeds the dense matrix cap of " +
                        std::to_string(kMatrixQubitCap));
    }
    ComplexMatrix u = ComplexMatrix::identity(std::size_t{1} << circuit.qubit_count());
    for (const auto &g : circuit.gates()) {
        left_multiply(u, g);
    }
    return u;
}

double unitarity_deviation(const ComplexMatrix &u) {
    const std::size_t dim = u.dim();
    struct Entry {
        std::size_t index;
        Amplitude value;
    };
    std::vector<std::vector<Entry>> by_col(dim);
    std::vector<std::vector<Entry>> by_row(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            const Amplitude v = u(i, j);
            if (v != Amplitude{}) {
                by_col[j].push_back({i, v});
                by_row[i].push_back({j, v});
            }
        }
    }
    // Column a of U^dagger U is sum_k conj(U_ka) * row k of U.
    std::vector<Amplitude> scratch(dim);
    std::vector<char> touched(dim, 0);
    std::vector<std::size_t> touched_list;
    double worst = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
        touched_list.clear();
        for (const auto &[k, uka] : by_col[a]) {
            const Amplitude w = std::conj(uka);
            for (const auto &[b, ukb] : by_row[k]) {
                if (!touched[b]) {
                    touched[b] = 1;
                    touched_list.push_back(b);
                }
                scratch[b] += w * ukb;
            }
        }
        if (!touched[a]) {
            worst = std::max(worst, 1.0);
        }
        for (std::size_t b : touched_list) {
            const Amplitude expected = (a == b) ? Amplitude{1.0} : Amplitude{};
            worst = std::max(worst, std::abs(scratch[b] - expected));
            scratch[b] = Amplitude{};
            touched[b] = 0;
        }
    }
    return worst;
}

double unitarity_check(const Circuit &circuit) {
    return unitarity_deviation(to_unitary(circuit));
}

} // namespace qsearch
