#include "qsearch/gate.hpp"

#include <algorithm>
#include <sstream>

#include "qsearch/error.hpp"

namespace qsearch {

namespace {
const std::vector<Control> kNoControls;

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};
} // namespace

Gate Gate::h(Qubit target) { return Gate(Hadamard{target}); }

Gate Gate::x(Qubit target) { return Gate(PauliX{target}); }

Gate Gate::mcx(std::vector<Control> controls, std::vector<Qubit> targets) {
    if (targets.empty()) {
        throw Error(ErrorKind::InvalidGate,
                    "multi-controlled X needs at least one target");
    }
    std::vector<Qubit> all;
    all.reserve(controls.size() + targets.size());
    for (const auto &c : controls) {
        all.push_back(c.qubit);
    }
    all.insert(all.end(), targets.begin(), targets.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        throw Error(ErrorKind::OverlappingControlTarget,
                    "qubit " + std::to_string(*std::adjacent_find(
                                   all.begin(), all.end())) +
                        " appears more than once in a gate");
    }
    return Gate(MultiControlledX{std::move(controls), std::move(targets)});
}

const std::vector<Control> &Gate::controls() const noexcept {
    if (const auto *g = std::get_if<MultiControlledX>(&op_)) {
        return g->controls;
    }
    return kNoControls;
}

std::vector<Qubit> Gate::targets() const {
    return std::visit(
        overloaded{
            [](const Hadamard &g) { return std::vector<Qubit>{g.target}; },
            [](const PauliX &g) { return std::vector<Qubit>{g.target}; },
            [](const MultiControlledX &g) { return g.targets; },
        },
        op_);
}

std::vector<Qubit> Gate::qubits() const {
    std::vector<Qubit> out;
    for (const auto &c : controls()) {
        out.push_back(c.qubit);
    }
    for (Qubit t : targets()) {
        out.push_back(t);
    }
    return out;
}

std::size_t Gate::arity() const noexcept {
    if (const auto *g = std::get_if<MultiControlledX>(&op_)) {
        return g->controls.size() + g->targets.size();
    }
    return 1;
}

Qubit Gate::max_qubit() const noexcept {
    return std::visit(
        overloaded{
            [](const Hadamard &g) { return g.target; },
            [](const PauliX &g) { return g.target; },
            [](const MultiControlledX &g) {
                Qubit q = *std::max_element(g.targets.begin(), g.targets.end());
                for (const auto &c : g.controls) {
                    q = std::max(q, c.qubit);
                }
                return q;
            },
        },
        op_);
}

std::string to_string(const Gate &gate) {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const Hadamard &g) { os << "H(" << g.target << ")"; },
                   [&](const PauliX &g) { os << "X(" << g.target << ")"; },
                   [&](const MultiControlledX &g) {
                       os << "MCX(";
                       for (const auto &c : g.controls) {
                           os << (c.polarity == Polarity::Positive ? "+" : "-")
                              << c.qubit << " ";
                       }
                       os << "->";
                       for (Qubit t : g.targets) {
                           os << " " << t;
                       }
                       os << ")";
                   },
               },
               gate.op());
    return os.str();
}

} // namespace qsearch
