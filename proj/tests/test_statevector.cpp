#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "qsearch/error.hpp"
#include "qsearch/matrix.hpp"
#include "qsearch/statevector.hpp"
#include "support/oracles.hpp"

using namespace qsearch;

namespace {

ErrorKind kind_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorKind::InvariantViolation;
}

Gate random_gate(std::mt19937_64 &rng, std::size_t qubits) {
    std::vector<Qubit> order(qubits);
    for (std::size_t i = 0; i < qubits; ++i) {
        order[i] = i;
    }
    std::shuffle(order.begin(), order.end(), rng);
    switch (rng() % 3) {
    case 0:
        return Gate::h(order[0]);
    case 1:
        return Gate::x(order[0]);
    default: {
        const std::size_t n_targets = 1 + rng() % std::min<std::size_t>(2, qubits);
        const std::size_t n_controls = rng() % (qubits - n_targets + 1);
        std::vector<Qubit> targets(order.begin(), order.begin() + n_targets);
        std::vector<Control> controls;
        for (std::size_t i = 0; i < n_controls; ++i) {
            controls.push_back({order[n_targets + i],
                                rng() % 2 ? Polarity::Positive : Polarity::Negative});
        }
        return Gate::mcx(controls, targets);
    }
    }
}

} // namespace

TEST(StateVector, BasisStates) {
    auto s = StateVector::basis(1, 0);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0], Amplitude(1.0));
    EXPECT_EQ(s[1], Amplitude(0.0));

    auto t = StateVector::basis(2, 3);
    ASSERT_EQ(t.size(), 4u);
    EXPECT_EQ(t[3], Amplitude(1.0));
    EXPECT_EQ(t[0] + t[1] + t[2], Amplitude(0.0));
}

TEST(StateVector, BasisErrors) {
    EXPECT_EQ(kind_of([] { StateVector::basis(1, 2); }), ErrorKind::IndexOutOfRange);
    EXPECT_EQ(kind_of([] { StateVector::basis(27, 0); }), ErrorKind::QubitCapExceeded);
    EXPECT_EQ(kind_of([] { StateVector::basis(5, 0, 4); }), ErrorKind::QubitCapExceeded);
}

TEST(StateVector, HadamardOnZero) {
    auto s = apply_gate(StateVector::basis(1, 0), Gate::h(0));
    EXPECT_NEAR(s[0].real(), 1.0 / std::numbers::sqrt2, 1e-15);
    EXPECT_NEAR(s[1].real(), 1.0 / std::numbers::sqrt2, 1e-15);
}

TEST(StateVector, XFlips) {
    auto s = apply_gate(StateVector::basis(1, 0), Gate::x(0));
    EXPECT_EQ(s[1], Amplitude(1.0));
}

TEST(StateVector, ControlledFlipFires) {
    // q1 = 1, q0 = 0 is index 2; CNOT(q1 -> q0) gives index 3.
    auto s = apply_gate(StateVector::basis(2, 2), Gate::mcx({pos(1)}, {0}));
    EXPECT_EQ(s[3], Amplitude(1.0));
    auto t = apply_gate(StateVector::basis(2, 0), Gate::mcx({pos(1)}, {0}));
    EXPECT_EQ(t[0], Amplitude(1.0));
    auto u = apply_gate(StateVector::basis(2, 0), Gate::mcx({neg(1)}, {0}));
    EXPECT_EQ(u[1], Amplitude(1.0));
}

TEST(StateVector, GateErrors) {
    auto s = StateVector::basis(2, 0);
    EXPECT_EQ(kind_of([&] { s.apply(Gate::x(2)); }), ErrorKind::QubitOutOfRange);
    EXPECT_EQ(kind_of([] { (void)Gate::mcx({pos(0)}, {0}); }),
              ErrorKind::OverlappingControlTarget);
    EXPECT_EQ(kind_of([&] { s.apply(Circuit(3)); }), ErrorKind::DimensionMismatch);
}

TEST(StateVector, CircuitBasics) {
    const auto zero = StateVector::basis(2, 1);
    EXPECT_EQ(apply_circuit(zero, Circuit(2)), zero);

    Circuit hh(1);
    hh.add(Gate::h(0)).add(Gate::h(0));
    auto s = apply_circuit(StateVector::basis(1, 0), hh);
    EXPECT_NEAR(std::abs(s[0] - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s[1]), 0.0, 1e-12);
}

TEST(StateVector, Marginals) {
    Circuit hh(2);
    hh.add(Gate::h(0)).add(Gate::h(1));
    auto s = apply_circuit(StateVector::basis(2, 0), hh);
    EXPECT_NEAR(marginal_probability(s, {0, 1}, 0), 0.5, 1e-15);

    std::mt19937_64 rng(3);
    auto r = StateVector::from_amplitudes(reference::random_amplitudes(3, rng));
    for (BasisIndex v = 0; v < 8; ++v) {
        EXPECT_NEAR(marginal_probability(r, {0, 3}, v), std::norm(r[v]), 1e-15);
    }
    EXPECT_EQ(kind_of([&] { marginal_probability(r, {0, 1}, 2); }),
              ErrorKind::ValueOutOfRange);
}

TEST(StateVector, MarginalMatchesDistribution) {
    std::mt19937_64 rng(11);
    auto s = StateVector::from_amplitudes(reference::random_amplitudes(6, rng));
    const RegisterSlice reg{2, 3};
    const auto dist = marginal_distribution(s, reg);
    double total = 0.0;
    for (BasisIndex v = 0; v < 8; ++v) {
        EXPECT_NEAR(marginal_probability(s, reg, v), dist[v], 1e-14);
        total += dist[v];
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(StateVector, SamplingContract) {
    Circuit hh(2);
    hh.add(Gate::h(0)).add(Gate::h(1));
    auto s = apply_circuit(StateVector::basis(2, 0), hh);
    EXPECT_TRUE(sample_register(s, {0, 2}, 0, 5).empty());

    const auto a = sample_register(s, {0, 2}, 10000, 42);
    const auto b = sample_register(s, {0, 2}, 10000, 42);
    EXPECT_EQ(a, b);

    // Binomial(10000, 0.25): sigma = sqrt(10000 * 0.25 * 0.75) ~ 43.3.
    const double sigma = std::sqrt(10000 * 0.25 * 0.75);
    std::uint64_t total = 0;
    for (BasisIndex v = 0; v < 4; ++v) {
        ASSERT_TRUE(a.contains(v));
        EXPECT_LE(std::abs(static_cast<double>(a.at(v)) - 2500.0), 3 * sigma);
        total += a.at(v);
    }
    EXPECT_EQ(total, 10000u);
}

TEST(StateVector, SamplingNeverDrawsZeroProbability) {
    auto s = apply_gate(StateVector::basis(3, 0), Gate::h(1));
    const auto hist = sample_register(s, {0, 3}, 5000, 9);
    for (const auto &[value, count] : hist) {
        EXPECT_TRUE(value == 0 || value == 2) << value;
    }
}

TEST(StateVector, NormDriftIsReported) {
    std::vector<Amplitude> amps = {1.0, 1e-3};
    EXPECT_EQ(kind_of([&] { StateVector::from_amplitudes(amps); }),
              ErrorKind::InvariantViolation);
}

// The optimized kernel and the reference matrix builder share no code.
TEST(StateVectorProperty, KernelMatchesReferenceUnitary) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t q = 1 + rng() % 6;
        const Gate g = random_gate(rng, q);
        Circuit c(q);
        c.add(g);
        const auto u = to_unitary(c);
        const auto input = reference::random_amplitudes(q, rng);
        auto state = apply_gate(StateVector::from_amplitudes(input), g);
        const auto expected = u.apply(input);
        for (std::size_t i = 0; i < expected.size(); ++i) {
            ASSERT_NEAR(std::abs(state[i] - expected[i]), 0.0, 1e-12) << to_string(g);
        }
    }
}

TEST(StateVectorProperty, NormPreservedAndUntouchedBitsExact) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t q = 2 + rng() % 7;
        const auto input = StateVector::from_amplitudes(reference::random_amplitudes(q, rng));
        const Gate g = random_gate(rng, q);
        const auto out = apply_gate(input, g);
        EXPECT_LE(std::abs(out.norm_squared() - 1.0), 1e-10);
        if (g.kind() == GateKind::MultiControlledX) {
            for (BasisIndex i = 0; i < input.size(); ++i) {
                bool fire = true;
                for (const auto &c : g.controls()) {
                    fire = fire && (((i >> c.qubit) & 1U) == (c.polarity == Polarity::Positive));
                }
                if (!fire) {
                    EXPECT_EQ(std::memcmp(&out[i], &input[i], sizeof(Amplitude)), 0);
                }
            }
        }
    }
}

TEST(StateVectorProperty, LocalityOfMarginals) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t q = 4 + rng() % 4;
        const auto input = StateVector::from_amplitudes(reference::random_amplitudes(q, rng));
        // Gate on the low half, register on the high half.
        const std::size_t split = q / 2;
        Gate g = random_gate(rng, split);
        const RegisterSlice high{split, q - split};
        const auto before = marginal_distribution(input, high);
        const auto after = marginal_distribution(apply_gate(input, g), high);
        for (std::size_t v = 0; v < before.size(); ++v) {
            EXPECT_NEAR(before[v], after[v], 1e-12);
        }
    }
}

TEST(StateVectorProperty, CompositionIsBitwise) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t q = 2 + rng() % 5;
        Circuit a(q);
        Circuit b(q);
        for (int i = 0; i < 6; ++i) {
            a.add(random_gate(rng, q));
            b.add(random_gate(rng, q));
        }
        Circuit ab = a;
        ab.append(b);
        const auto input = StateVector::from_amplitudes(reference::random_amplitudes(q, rng));
        EXPECT_EQ(apply_circuit(input, ab), apply_circuit(apply_circuit(input, a), b));
    }
}

TEST(StateVectorProperty, SamplingConvergesToMarginal) {
    std::mt19937_64 rng(17);
    auto s = StateVector::from_amplitudes(reference::random_amplitudes(4, rng));
    const RegisterSlice reg{1, 2};
    const std::uint64_t shots = 10000;
    const auto hist = sample_register(s, reg, shots, 123);
    for (BasisIndex v = 0; v < 4; ++v) {
        const double p = marginal_probability(s, reg, v);
        const double sigma = std::sqrt(shots * p * (1 - p));
        const double count = hist.contains(v) ? static_cast<double>(hist.at(v)) : 0.0;
        EXPECT_LE(std::abs(count - shots * p), 3 * sigma + 1.0);
    }
}

TEST(StateVector, ParallelSizedKernelMatchesReference) {
    // Large enough to cross the OpenMP threshold.
    const std::size_t q = 16;
    std::mt19937_64 rng(1);
    const auto input = reference::random_amplitudes(q, rng);
    auto state = StateVector::from_amplitudes(input);
    state.apply(Gate::h(7));
    state.apply(Gate::mcx({pos(0), neg(15)}, {3, 9}));
    const double s = 1.0 / std::numbers::sqrt2;
    for (BasisIndex i = 0; i < input.size(); ++i) {
        // Undo the MCX by looking up the pre-image, then apply H by hand.
        const bool fire = (i & 1U) && !((i >> 15) & 1U);
        const BasisIndex pre = fire ? i ^ ((1U << 3) | (1U << 9)) : i;
        const BasisIndex lo = pre & ~(BasisIndex{1} << 7);
        const BasisIndex hi = lo | (BasisIndex{1} << 7);
        const Amplitude expected =
            ((pre >> 7) & 1U) ? s * (input[lo] - input[hi]) : s * (input[lo] + input[hi]);
        ASSERT_NEAR(std::abs(state[i] - expected), 0.0, 1e-14) << i;
    }
}
