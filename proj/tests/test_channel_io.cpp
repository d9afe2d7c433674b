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


#include <catch_amalgamated.hpp>
#include <string>

#include "seqpt/channel_io.hpp"

using Catch::Matchers::ContainsSubstring;
using seqpt::ChannelError;

namespace {

std::string error_of(const std::string& text) {
    try {
        seqpt::channel_from_json_text(text);
    } catch (const ChannelError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("valid documents", "[channel_io]") {
    const auto pauli = seqpt::channel_from_json_text(
        R"({"n": 2, "channel": {"type": "pauli", "probs": {"II": 0.85, "XI": 0.1, "ZZ": 0.05}}})");
    CHECK(pauli.is_pauli());
    CHECK(pauli.qubits() == 2);

    const auto kraus = seqpt::channel_from_json_text(R"({"n": 1, "channel": {"type": "kraus", "matrices": [
        [[0.8660254037844386, 0], [0, 0.8660254037844386]],
        [[0, 0.5], [0.5, 0]]]}})");
    CHECK_FALSE(kraus.is_pauli());
    CHECK(kraus.kraus_operators().size() == 2);

    const auto unitary = seqpt::channel_from_json_text(
        R"({"n": 1, "channel": {"type": "unitary", "matrix": [[[0.9238795325112867, 0], [0, -0.3826834323650898]],
                                                                 [[0, -0.3826834323650898], [0.9238795325112867, 0]]]}})");
    CHECK(unitary.kraus_operators().size() == 1);

    const auto chi = seqpt::channel_from_json_text(
        R"({"n": 1, "channel": {"type": "chi", "matrix": [[0.5,0,0,0],[0,0.5,0,0],[0,0,0,0],[0,0,0,0]]}})");
    CHECK(chi.qubits() == 1);
}

TEST_CASE("errors name the offending field", "[channel_io]") {
    CHECK_THAT(error_of("{"), ContainsSubstring("document"));
    CHECK_THAT(error_of(R"({"channel": {}})"), ContainsSubstring("n:"));
    CHECK_THAT(error_of(R"({"n": 0, "channel": {}})"), ContainsSubstring("n:"));
    CHECK_THAT(error_of(R"({"n": 1})"), ContainsSubstring("channel:"));
    CHECK_THAT(error_of(R"({"n": 1, "channel": {"type": "magic"}})"), ContainsSubstring("channel.type"));
    CHECK_THAT(error_of(R"({"n": 2, "channel": {"type": "pauli", "probs": {"II": 0.5, "XI": 0.4}}})"),
               ContainsSubstring("channel.probs"));
    CHECK_THAT(error_of(R"({"n": 2, "channel": {"type": "pauli", "probs": {"II": 0.5, "XJ": 0.5}}})"),
               ContainsSubstring("channel.probs.XJ"));
    CHECK_THAT(error_of(R"({"n": 2, "channel": {"type": "pauli", "probs": {"II": "half"}}})"),
               ContainsSubstring("channel.probs.II"));
    CHECK_THAT(error_of(R"({"n": 1, "channel": {"type": "kraus", "matrices": [[[1, 0], [0, 1], [0, 0]]]}})"),
               ContainsSubstring("channel.matrices[0][0]"));
    CHECK_THAT(error_of(R"({"n": 1, "channel": {"type": "kraus", "matrices": [[[1, 0], [0, "x"]]]}})"),
               ContainsSubstring("channel.matrices[0][1][1]"));
    CHECK_THAT(error_of(R"({"n": 1, "channel": {"type": "kraus", "matrices": [[[1, 0], [0, 0.5]]]}})"),
               ContainsSubstring("channel.matrices"));
    CHECK_THAT(error_of(R"({"n": 2, "channel": {"type": "unitary", "matrix": [[1, 0], [0, 1]]}})"),
               ContainsSubstring("channel.matrix"));
    CHECK_THAT(error_of(R"({"n": 1, "channel": {"type": "unitary", "matrix": [[1, 1], [0, 1]]}})"),
               ContainsSubstring("channel.matrix"));
    CHECK_THROWS_AS(seqpt::load_channel_file("/nonexistent/channel.json"), ChannelError);
}
