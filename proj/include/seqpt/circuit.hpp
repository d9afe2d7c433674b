// Copyright 2026 The SEQPT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "seqpt/dense.hpp"
#include "seqpt/gf2.hpp"
#include "seqpt/pauli.hpp"
#include "seqpt/stabilizer_basis.hpp"

namespace seqpt {

/// Ordered gate list; the first gate is applied first.
class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(std::size_t qubit_count) : qubit_count_(qubit_count) {}
    Circuit(std::size_t qubit_count, std::vector<GateAction> gates) : qubit_count_(qubit_count) {
        for (const auto& g : gates) append(g);
    }

    void append(const GateAction& g) {
        g.validate(qubit_count_);
        gates_.push_back(g);
    }

    /// Runs `other` after this circuit.
    void extend(const Circuit& other) {
        if (other.qubit_count_ != qubit_count_) {
            throw std::invalid_argument("cannot concatenate circuits of different widths");
        }
        for (const auto& g : other.gates_) gates_.push_back(g);
    }

    Circuit inverse() const {
        Circuit out(qubit_count_);
        for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.gates_.push_back(it->inverse());
        return out;
    }

    std::size_t qubit_count() const { return qubit_count_; }
    const std::vector<GateAction>& gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }

    friend bool operator==(const Circuit&, const Circuit&) = default;

   private:
    std::size_t qubit_count_ = 0;
    std::vector<GateAction> gates_;
};

/// U·p·U† for the unitary U implemented by `c`.
inline PauliOperator conjugate_by_circuit(PauliOperator p, const Circuit& c) {
    for (const auto& g : c.gates()) p = conjugate_by_gate(std::move(p), g);
    return p;
}

struct SynthesisResult {
    /// Maps basis states to computational states: U G_j U† = (-1)^{s_j} Z_{j+1}.
    Circuit circuit;
    /// s_j per generator.
    BitVector generator_signs;
    /// Generator images after each iteration of the main loop (before the final clean-up CNOTs).
    std::vector<std::vector<PauliOperator>> iteration_images;
};

namespace detail {

inline void push_gate(Circuit& c, std::vector<PauliOperator>& images, const GateAction& g) {
    c.append(g);
    for (auto& p : images) p = conjugate_by_gate(std::move(p), g);
}

}  // namespace detail

/// Builds a circuit conjugating each generator of a commuting, independent set into ±Z on its own qubit.
///
/// Iteration t turns generator t into Z_t: single-qubit rotations (X -> H, Y -> Phase† then H) on the
/// qubits t..n-1 where it has an X part, then CNOTs from each remaining Z qubit onto qubit t. If qubit t
/// is left as identity, one CNOT from t onto the first Z qubit moves a Z there first. Later generators may
/// keep a Z on already-finished qubits; a final pass of CNOTs (finished qubit -> own qubit) removes it.
inline SynthesisResult synthesize_from_generators(std::vector<PauliOperator> gens) {
    const std::size_t n = gens.size();
    SynthesisResult result;
    result.circuit = Circuit(n);
    for (const auto& g : gens) {
        if (g.size() != n) {
            throw std::invalid_argument("need exactly n generators on n qubits");
        }
    }

    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t q = t; q < n; ++q) {
            const PauliOperator& g = gens[t];
            if (!g.x_bit(q)) continue;
            if (g.z_bit(q)) {
                detail::push_gate(result.circuit, gens, GateAction::phase_dagger(q));
            }
            detail::push_gate(result.circuit, gens, GateAction::h(q));
        }
        if (!gens[t].z_bit(t)) {
            std::size_t pivot = t + 1;
            while (pivot < n && !gens[t].z_bit(pivot)) ++pivot;
            if (pivot == n) {
                throw std::invalid_argument("generators are not independent");
            }
            detail::push_gate(result.circuit, gens, GateAction::cnot(t, pivot));
        }
        for (std::size_t q = t + 1; q < n; ++q) {
            if (gens[t].z_bit(q)) {
                detail::push_gate(result.circuit, gens, GateAction::cnot(q, t));
            }
        }
        result.iteration_images.push_back(gens);
    }

    for (std::size_t r = 1; r < n; ++r) {
        for (std::size_t s = 0; s < r; ++s) {
            if (gens[r].z_bit(s)) {
                detail::push_gate(result.circuit, gens, GateAction::cnot(s, r));
            }
        }
    }

    result.generator_signs = BitVector(n);
    for (std::size_t j = 0; j < n; ++j) {
        const PauliOperator& g = gens[j];
        if (g.x().word() != 0 || g.z().word() != (std::uint64_t{1} << j) || (g.phase() & 1) != 0) {
            throw std::logic_error("basis-change synthesis failed to reach Z on qubit " + std::to_string(j + 1) +
                                   ": got " + g.to_string());
        }
        result.generator_signs.set(j, g.phase() == 2);
    }
    return result;
}

/// Change-of-basis circuit for the basis labelled by b under field matrix M.
inline SynthesisResult synthesize_change_of_basis(const BitVector& b, const BitMatrix& field) {
    if (b.size() == 0) {
        throw std::invalid_argument("synthesize_change_of_basis: empty b");
    }
    if (field.size() != b.size()) {
        throw std::invalid_argument("synthesize_change_of_basis: b has length " + std::to_string(b.size()) +
                                    " but field matrix is " + std::to_string(field.size()) + "x" +
                                    std::to_string(field.size()));
    }
    return synthesize_from_generators(canonical_generators(BasisId::mub(b), field));
}

/// Measurement in basis J = this circuit followed by a computational readout. Empty for the Z basis.
inline Circuit measurement_circuit(const BasisId& basis, const BitMatrix& field) {
    if (basis.is_computational()) {
        return Circuit(basis.size());
    }
    return synthesize_change_of_basis(basis.b(), field).circuit;
}

/// Prepares |psi_k^J> = U_J† |k> from |0...0>: X on each set bit of k, then the inverse basis change.
inline Circuit preparation_circuit(const StateIndex& s, const BitMatrix& field) {
    const std::size_t n = s.basis.size();
    s.k.require_same_size(s.basis.b());
    Circuit c(n);
    for (std::size_t q = 0; q < n; ++q) {
        if (s.k.get(q)) c.append(GateAction::x(q));
    }
    c.extend(measurement_circuit(s.basis, field).inverse());
    return c;
}

// ---------------------------------------------------------------------------------------------------------
// Dense simulation

inline void apply_gate(CVector& psi, const GateAction& g, std::size_t n) {
    const std::size_t dim = dense_dim(n);
    if (static_cast<std::size_t>(psi.size()) != dim) {
        throw std::invalid_argument("state vector dimension does not match register");
    }
    g.validate(n);
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - g.qubit);
    const Complex i_unit(0.0, 1.0);
    switch (g.kind) {
        case GateKind::kH: {
            const double r = 1.0 / std::sqrt(2.0);
            for (std::uint64_t j = 0; j < dim; ++j) {
                if (j & bit) continue;
                const Complex a = psi[static_cast<Eigen::Index>(j)];
                const Complex b = psi[static_cast<Eigen::Index>(j | bit)];
                psi[static_cast<Eigen::Index>(j)] = r * (a + b);
                psi[static_cast<Eigen::Index>(j | bit)] = r * (a - b);
            }
            break;
        }
        case GateKind::kPhase:
        case GateKind::kPhaseDagger: {
            const Complex f = g.kind == GateKind::kPhase ? i_unit : -i_unit;
            for (std::uint64_t j = 0; j < dim; ++j) {
                if (j & bit) psi[static_cast<Eigen::Index>(j)] *= f;
            }
            break;
        }
        case GateKind::kX:
            for (std::uint64_t j = 0; j < dim; ++j) {
                if (!(j & bit)) std::swap(psi[static_cast<Eigen::Index>(j)], psi[static_cast<Eigen::Index>(j | bit)]);
            }
            break;
        case GateKind::kCnot: {
            const std::uint64_t tbit = std::uint64_t{1} << (n - 1 - g.target);
            for (std::uint64_t j = 0; j < dim; ++j) {
                if ((j & bit) && !(j & tbit)) {
                    std::swap(psi[static_cast<Eigen::Index>(j)], psi[static_cast<Eigen::Index>(j | tbit)]);
                }
            }
            break;
        }
    }
}

inline void apply_circuit(CVector& psi, const Circuit& c) {
    for (const auto& g : c.gates()) apply_gate(psi, g, c.qubit_count());
}

inline CMatrix circuit_unitary(const Circuit& c) {
    const auto dim = static_cast<Eigen::Index>(dense_dim(c.qubit_count()));
    CMatrix u(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        CVector e = CVector::Zero(dim);
        e[col] = 1.0;
        apply_circuit(e, c);
        u.col(col) = e;
    }
    return u;
}

// ---------------------------------------------------------------------------------------------------------
// Text formats
//
// plain: first line "QUBITS <n>", then one gate per line with 1-based qubits:
//   H q | S q | SDG q | X q | CNOT control target
// qasm:  OPENQASM 2.0 header, qreg q[n], then h/s/sdg/x/cx with 0-based indices.

enum class CircuitFormat { kPlain, kQasm };

inline CircuitFormat parse_circuit_format(std::string_view name) {
    if (name == "plain") return CircuitFormat::kPlain;
    if (name == "qasm") return CircuitFormat::kQasm;
    throw std::invalid_argument("unknown circuit format \"" + std::string(name) + "\" (expected plain or qasm)");
}

inline std::string export_circuit(const Circuit& c, CircuitFormat format) {
    std::ostringstream out;
    if (format == CircuitFormat::kPlain) {
        out << "QUBITS " << c.qubit_count() << '\n';
        for (const auto& g : c.gates()) {
            switch (g.kind) {
                case GateKind::kH:
                    out << "H " << g.qubit + 1;
                    break;
                case GateKind::kPhase:
                    out << "S " << g.qubit + 1;
                    break;
                case GateKind::kPhaseDagger:
                    out << "SDG " << g.qubit + 1;
                    break;
                case GateKind::kX:
                    out << "X " << g.qubit + 1;
                    break;
                case GateKind::kCnot:
                    out << "CNOT " << g.qubit + 1 << ' ' << g.target + 1;
                    break;
            }
            out << '\n';
        }
    } else {
        out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << c.qubit_count() << "];\n";
        for (const auto& g : c.gates()) {
            switch (g.kind) {
                case GateKind::kH:
                    out << "h q[" << g.qubit << "];";
                    break;
                case GateKind::kPhase:
                    out << "s q[" << g.qubit << "];";
                    break;
                case GateKind::kPhaseDagger:
                    out << "sdg q[" << g.qubit << "];";
                    break;
                case GateKind::kX:
                    out << "x q[" << g.qubit << "];";
                    break;
                case GateKind::kCnot:
                    out << "cx q[" << g.qubit << "],q[" << g.target << "];";
                    break;
            }
            out << '\n';
        }
    }
    return out.str();
}

namespace detail {

inline std::size_t parse_qasm_qubit(std::string_view tok) {
    const auto open = tok.find('[');
    const auto close = tok.find(']');
    if (open == std::string_view::npos || close == std::string_view::npos || close <= open + 1) {
        throw std::invalid_argument("malformed qubit reference \"" + std::string(tok) + "\"");
    }
    return std::stoul(std::string(tok.substr(open + 1, close - open - 1)));
}

inline Circuit parse_plain(std::istringstream& in) {
    std::string word;
    std::size_t n = 0;
    if (!(in >> word >> n) || word != "QUBITS") {
        throw std::invalid_argument("plain circuit must start with \"QUBITS <n>\"");
    }
    Circuit c(n);
    std::size_t a = 0;
    std::size_t b = 0;
    while (in >> word) {
        if (!(in >> a) || a == 0) throw std::invalid_argument("missing qubit after " + word);
        if (word == "H") {
            c.append(GateAction::h(a - 1));
        } else if (word == "S") {
            c.append(GateAction::phase(a - 1));
        } else if (word == "SDG") {
            c.append(GateAction::phase_dagger(a - 1));
        } else if (word == "X") {
            c.append(GateAction::x(a - 1));
        } else if (word == "CNOT") {
            if (!(in >> b) || b == 0) throw std::invalid_argument("CNOT needs a target qubit");
            c.append(GateAction::cnot(a - 1, b - 1));
        } else {
            throw std::invalid_argument("unknown gate \"" + word + "\"");
        }
    }
    return c;
}

inline Circuit parse_qasm(std::istringstream& in) {
    std::string line;
    Circuit c;
    bool have_reg = false;
    while (std::getline(in, line)) {
        if (line.empty() || line.starts_with("OPENQASM") || line.starts_with("include")) continue;
        if (!line.empty() && line.back() == ';') line.pop_back();
        std::istringstream ls(line);
        std::string op;
        std::string args;
        ls >> op >> args;
        if (op == "qreg") {
            c = Circuit(parse_qasm_qubit(args));
            have_reg = true;
            continue;
        }
        if (!have_reg) throw std::invalid_argument("qasm gate before qreg declaration");
        if (op == "cx") {
            const auto comma = args.find(',');
            if (comma == std::string::npos) throw std::invalid_argument("cx needs two operands");
            c.append(GateAction::cnot(parse_qasm_qubit(std::string_view(args).substr(0, comma)),
                                      parse_qasm_qubit(std::string_view(args).substr(comma + 1))));
        } else if (op == "h") {
            c.append(GateAction::h(parse_qasm_qubit(args)));
        } else if (op == "s") {
            c.append(GateAction::phase(parse_qasm_qubit(args)));
        } else if (op == "sdg") {
            c.append(GateAction::phase_dagger(parse_qasm_qubit(args)));
        } else if (op == "x") {
            c.append(GateAction::x(parse_qasm_qubit(args)));
        } else {
            throw std::invalid_argument("unknown qasm instruction \"" + op + "\"");
        }
    }
    if (!have_reg) throw std::invalid_argument("qasm text has no qreg declaration");
    return c;
}

}  // namespace detail

/// Inverse of export_circuit for either format.
inline Circuit parse_circuit(const std::string& text, CircuitFormat format) {
    std::istringstream in(text);
    return format == CircuitFormat::kPlain ? detail::parse_plain(in) : detail::parse_qasm(in);
}

}  // namespace seqpt
