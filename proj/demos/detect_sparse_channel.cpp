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


// Detects the dominant Pauli errors of an unknown 4-qubit Pauli channel from a single set of randomized
// stabilizer experiments, then refines one off-diagonal element of a small coherent error.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "seqpt/seqpt.hpp"

int main() {
    using namespace seqpt;

    const MubDesign design(4);
    const QuantumChannel noise =
        QuantumChannel::pauli(4, {{"IIII", 0.90}, {"XIII", 0.05}, {"IZZI", 0.03}, {"YIIX", 0.02}});
    const ChannelSimulator device(design, noise);

    const std::size_t shots = samples_for_full_diag(0.02, 0.1, 0.9, design.dimension());
    std::printf("running %zu experiments over %llu stabilizer states\n", shots,
                static_cast<unsigned long long>(design.state_count()));
    const auto records = collect_scan(device, shots, {.seed = 2026, .jobs = 4});

    const DetectionResult result = detect_large_coefficients(records, design);
    std::printf("%zu candidates from %zu record-class pairs%s\n", result.candidate_count, result.pairs_processed,
                result.unreliable ? " (unreliable)" : "");
    for (std::size_t i = 0; i < result.detected.size() && i < 6; ++i) {
        const auto& d = result.detected[i];
        std::printf("  %s  chi = %.4f +- %.4f\n", d.op.label().c_str(), d.estimate.value, d.estimate.stderr_);
    }

    // A coherent over-rotation has an imaginary chi_{I,X} that no diagonal estimate can see.
    const MubDesign one(1);
    const double theta = std::numbers::pi / 16;
    CMatrix u(2, 2);
    u << std::cos(theta), Complex(0, -std::sin(theta)), Complex(0, -std::sin(theta)), std::cos(theta);
    const ChannelSimulator rotated(one, QuantumChannel::unitary(1, u));
    const auto e = estimate_offdiag(rotated, PauliOperator::identity(1), PauliOperator::from_label("X"), 40000,
                                    {.seed = 7});
    std::printf("chi_{I,X} = %.4f%+.4fi (exact %.4fi)\n", e.re, e.im, std::sin(theta) * std::cos(theta));
    return 0;
}
