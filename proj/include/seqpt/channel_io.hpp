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

// Channel specification documents:
//
//   {"n": 2, "channel": {"type": "pauli", "probs": {"II": 0.85, "XI": 0.1, "ZZ": 0.05}}}
//   {"n": 1, "channel": {"type": "kraus", "matrices": [M0, M1, ...]}}
//   {"n": 1, "channel": {"type": "unitary", "matrix": M}}
//   {"n": 1, "channel": {"type": "chi", "matrix": M}}
//
// A matrix M is a list of rows; each entry is a real number or a [re, im] pair.

#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "seqpt/channel.hpp"
#include "seqpt/dense.hpp"

namespace seqpt {

namespace detail {

inline Complex parse_complex_entry(const nlohmann::json& v, const std::string& where) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw ChannelError(where + ": expected a number or a [re, im] pair");
}

inline CMatrix parse_complex_matrix(const nlohmann::json& rows, const std::string& where) {
    if (!rows.is_array() || rows.empty()) throw ChannelError(where + ": expected a non-empty list of rows");
    const auto n_rows = static_cast<Eigen::Index>(rows.size());
    CMatrix out(n_rows, n_rows);
    for (Eigen::Index r = 0; r < n_rows; ++r) {
        const auto& row = rows[static_cast<std::size_t>(r)];
        const std::string row_where = where + "[" + std::to_string(r) + "]";
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n_rows) {
            throw ChannelError(row_where + ": expected a row of " + std::to_string(n_rows) + " entries");
        }
        for (Eigen::Index c = 0; c < n_rows; ++c) {
            out(r, c) = parse_complex_entry(row[static_cast<std::size_t>(c)],
                                            row_where + "[" + std::to_string(c) + "]");
        }
    }
    return out;
}

inline void require_dim(const CMatrix& m, Eigen::Index dim, const std::string& where) {
    if (m.rows() != dim) {
        throw ChannelError(where + ": expected " + std::to_string(dim) + "x" + std::to_string(dim) + ", got " +
                           std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

}  // namespace detail

/// Builds a channel from a parsed specification document. Errors are ChannelError naming the field.
inline QuantumChannel channel_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ChannelError("document: expected a JSON object");
    if (!doc.contains("n")) throw ChannelError("n: missing");
    if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
        throw ChannelError("n: expected a positive integer");
    }
    const auto n = static_cast<std::size_t>(doc["n"].get<long long>());
    if (!doc.contains("channel") || !doc["channel"].is_object()) throw ChannelError("channel: missing or not an object");
    const auto& ch = doc["channel"];
    if (!ch.contains("type") || !ch["type"].is_string()) throw ChannelError("channel.type: missing or not a string");
    const std::string type = ch["type"].get<std::string>();

    if (type != "pauli" && n > kMaxDenseQubits) {
        throw ChannelError("n: dense channel types support at most " + std::to_string(kMaxDenseQubits) + " qubits");
    }

    try {
        if (type == "pauli") {
            if (!ch.contains("probs") || !ch["probs"].is_object()) {
                throw ChannelError("probs: missing or not an object");
            }
            std::map<std::string, double> probs;
            for (const auto& [label, p] : ch["probs"].items()) {
                if (!p.is_number()) throw ChannelError("probs." + label + ": expected a number");
                probs[label] = p.get<double>();
            }
            return QuantumChannel::pauli(n, probs);
        }
        const auto dim = static_cast<Eigen::Index>(dense_dim(n));
        if (type == "kraus") {
            if (!ch.contains("matrices") || !ch["matrices"].is_array()) {
                throw ChannelError("matrices: missing or not a list");
            }
            std::vector<CMatrix> ops;
            for (std::size_t i = 0; i < ch["matrices"].size(); ++i) {
                const std::string where = "matrices[" + std::to_string(i) + "]";
                ops.push_back(detail::parse_complex_matrix(ch["matrices"][i], where));
                detail::require_dim(ops.back(), dim, where);
            }
            return QuantumChannel::kraus(n, std::move(ops));
        }
        if (type == "unitary" || type == "chi") {
            if (!ch.contains("matrix")) throw ChannelError("matrix: missing");
            CMatrix m = detail::parse_complex_matrix(ch["matrix"], "matrix");
            if (type == "unitary") {
                detail::require_dim(m, dim, "matrix");
                return QuantumChannel::unitary(n, std::move(m));
            }
            detail::require_dim(m, dim * dim, "matrix");
            return QuantumChannel::chi(n, std::move(m));
        }
    } catch (const ChannelError& e) {
        throw ChannelError(std::string("channel.") + e.what());
    }
    throw ChannelError("channel.type: unknown type \"" + type + "\" (expected pauli, kraus, unitary or chi)");
}

inline QuantumChannel channel_from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ChannelError(std::string("document: invalid JSON: ") + e.what());
    }
    return channel_from_json(doc);
}

inline QuantumChannel load_channel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ChannelError("file: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return channel_from_json_text(buf.str());
}

}  // namespace seqpt
