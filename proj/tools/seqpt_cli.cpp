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

// seqpt: command-line front end for selective process tomography campaigns.

#include <openssl/evp.h>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "seqpt/channel_io.hpp"
#include "seqpt/seqpt.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string channel_path;
    std::string targets;
    std::optional<std::size_t> samples;
    std::optional<double> eps;
    std::optional<double> p;
    std::optional<double> delta;
    std::optional<double> big_p;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
    std::string out;
    std::string report;
    std::string records;
    std::string format = "plain";
    bool detect = false;
    bool trajectory = false;
    std::size_t n = 0;
    std::string b;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
    return "sha256:" + hex.str();
}

/// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

std::uint64_t resolve_seed(const Config& cfg) {
    if (cfg.seed) return *cfg.seed;
    if (const char* env = std::getenv("SEQPT_SEED"); env != nullptr && *env != '\0') {
        try {
            std::size_t used = 0;
            const std::uint64_t v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw UsageError("SEQPT_SEED must be an unsigned integer");
    }
    return 0;
}

struct LoadedChannel {
    seqpt::QuantumChannel channel;
    std::string digest;
};

LoadedChannel load_channel(const Config& cfg) {
    if (cfg.channel_path.empty()) throw UsageError("--channel is required");
    const std::string text = read_file(cfg.channel_path);
    return {seqpt::channel_from_json_text(text), sha256_hex(text)};
}

enum class BudgetUse { kDiagonal, kOffDiagonal };

/// Exactly one budget form: --samples, --eps with --p, or --eps with --delta and --bigp.
std::size_t resolve_budget(const Config& cfg, std::uint64_t dimension, BudgetUse use) {
    const bool chernoff = cfg.p.has_value();
    const bool full = cfg.delta.has_value() || cfg.big_p.has_value();
    const int forms = int{cfg.samples.has_value()} + int{chernoff} + int{full};
    if (forms != 1) {
        throw UsageError("give exactly one budget: --samples M, or --eps with --p, or --eps with --delta and --bigp");
    }
    if (cfg.samples) {
        if (*cfg.samples == 0) throw UsageError("--samples must be positive");
        if (cfg.eps) throw UsageError("--eps cannot be combined with --samples");
        return *cfg.samples;
    }
    if (!cfg.eps) throw UsageError("--eps is required with --p or --delta/--bigp");
    try {
        if (chernoff) {
            const std::size_t m = seqpt::chernoff_samples(*cfg.eps, *cfg.p);
            return use == BudgetUse::kOffDiagonal ? 4 * m : m;
        }
        if (!cfg.delta || !cfg.big_p) throw UsageError("--delta and --bigp must be given together");
        return seqpt::samples_for_full_diag(*cfg.eps, *cfg.delta, *cfg.big_p, dimension);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::vector<seqpt::PauliOperator> parse_targets(const std::string& spec, std::size_t n) {
    std::vector<seqpt::PauliOperator> out;
    if (spec == "all-weight-1") {
        for (std::size_t q = 0; q < n; ++q)
            for (char kind : {'X', 'Y', 'Z'}) out.push_back(seqpt::PauliOperator::single(n, q, kind));
        return out;
    }
    if (spec == "all") {
        if (n > 8) throw UsageError("--targets all is limited to 8 qubits");
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << (2 * n)); ++m) out.push_back(seqpt::pauli_from_index(n, m));
        return out;
    }
    std::stringstream ss(spec);
    std::string label;
    while (std::getline(ss, label, ',')) {
        seqpt::PauliOperator op;
        try {
            op = seqpt::PauliOperator::from_label(label);
        } catch (const std::invalid_argument& e) {
            throw UsageError("--targets: " + std::string(e.what()));
        }
        if (op.size() != n) {
            throw UsageError("--targets: label " + label + " has " + std::to_string(op.size()) +
                             " qubits, channel has " + std::to_string(n));
        }
        out.push_back(op);
    }
    if (out.empty()) throw UsageError("--targets: no Pauli labels given");
    return out;
}

Json header(const std::string& command, std::uint64_t seed, const std::string& digest) {
    Json j;
    j["tool"] = "seqpt";
    j["version"] = SEQPT_VERSION;
    j["command"] = command;
    j["seed"] = seed;
    j["channel_digest"] = digest.empty() ? Json(nullptr) : Json(digest);
    return j;
}

Json estimate_json(const seqpt::PauliOperator& op, const seqpt::Estimate& e, std::uint64_t seed) {
    Json j;
    j["pauli_label"] = op.label();
    j["value"] = e.value;
    j["stderr"] = e.stderr_;
    j["n_samples"] = e.n_samples;
    j["raw_count"] = e.raw_count;
    j["seed"] = seed;
    return j;
}

seqpt::SimulationMode mode_of(const Config& cfg) {
    return cfg.trajectory ? seqpt::SimulationMode::kTrajectory : seqpt::SimulationMode::kExact;
}

int cmd_estimate_diag(const Config& cfg) {
    const auto loaded = load_channel(cfg);
    const std::size_t n = loaded.channel.qubits();
    const seqpt::MubDesign design(n);
    const std::size_t shots = resolve_budget(cfg, design.dimension(), BudgetUse::kDiagonal);
    const auto targets = parse_targets(cfg.targets.empty() ? std::string(n, 'I') : cfg.targets, n);
    const std::uint64_t seed = resolve_seed(cfg);
    const seqpt::ChannelSimulator sim(design, loaded.channel, mode_of(cfg));
    // One shot stream serves every target; per target this equals an independent estimate_diag run.
    const auto records = seqpt::collect_scan(sim, shots, {.seed = seed, .jobs = cfg.jobs});
    Json report = header("estimate-diag", seed, loaded.digest);
    report["n"] = n;
    report["n_samples"] = shots;
    Json estimates = Json::array();
    for (const auto& op : targets) {
        estimates.push_back(estimate_json(op, seqpt::estimate_diag_from_records(records, design, op), seed));
    }
    report["estimates"] = estimates;
    emit(cfg.out, report.dump(2) + "\n");
    return kExitOk;
}

int cmd_estimate_offdiag(const Config& cfg) {
    const auto loaded = load_channel(cfg);
    const std::size_t n = loaded.channel.qubits();
    const seqpt::MubDesign design(n);
    const auto targets = parse_targets(cfg.targets, n);
    if (targets.size() != 2) throw UsageError("--targets needs exactly two labels m,m'");
    std::size_t shots = resolve_budget(cfg, design.dimension(), BudgetUse::kOffDiagonal);
    if (shots < 2) shots = 2;
    if (shots % 2 != 0) {
        ++shots;
        std::cerr << "warning: sample count must be even (half sigma_x, half sigma_y); using " << shots << "\n";
    }
    const std::uint64_t seed = resolve_seed(cfg);
    const seqpt::ChannelSimulator sim(design, loaded.channel);
    const auto e = seqpt::estimate_offdiag(sim, targets[0], targets[1], shots, {.seed = seed, .jobs = cfg.jobs});
    Json report = header("estimate-offdiag", seed, loaded.digest);
    report["n"] = n;
    Json est;
    est["pauli_label"] = targets[0].label();
    est["pauli_label_prime"] = targets[1].label();
    est["re"] = e.re;
    est["im"] = e.im;
    est["stderr_re"] = e.stderr_re;
    est["stderr_im"] = e.stderr_im;
    est["n_samples"] = e.n_samples;
    est["raw_sum_x"] = e.raw_sum_x;
    est["raw_sum_y"] = e.raw_sum_y;
    est["diagonal_offset_applied"] = targets[0] == targets[1];
    est["seed"] = seed;
    report["estimate"] = est;
    emit(cfg.out, report.dump(2) + "\n");
    return kExitOk;
}

Json detection_json(const seqpt::DetectionResult& result, std::uint64_t seed) {
    Json j;
    j["record_count"] = nullptr;
    j["candidate_count"] = result.candidate_count;
    j["pairs_processed"] = result.pairs_processed;
    j["unreliable"] = result.unreliable;
    Json detected = Json::array();
    for (const auto& d : result.detected) detected.push_back(estimate_json(d.op, d.estimate, seed));
    j["detected"] = detected;
    return j;
}

int cmd_scan(const Config& cfg) {
    const auto loaded = load_channel(cfg);
    const std::size_t n = loaded.channel.qubits();
    const seqpt::MubDesign design(n);
    const std::size_t shots = resolve_budget(cfg, design.dimension(), BudgetUse::kDiagonal);
    const std::uint64_t seed = resolve_seed(cfg);
    const seqpt::ChannelSimulator sim(design, loaded.channel, mode_of(cfg));
    const auto records = seqpt::collect_scan(sim, shots, {.seed = seed, .jobs = cfg.jobs});

    std::string lines;
    for (const auto& r : records) lines += seqpt::format_record(r) + '\n';
    emit(cfg.out, lines);

    if (cfg.targets.empty() && !cfg.detect) return kExitOk;
    if ((cfg.out.empty() || cfg.out == "-") && (cfg.report.empty() || cfg.report == "-")) {
        throw UsageError("scan with --targets or --detect needs --out or --report so records and report do not mix");
    }
    Json report = header("scan", seed, loaded.digest);
    report["n"] = n;
    report["n_samples"] = shots;
    if (!cfg.targets.empty()) {
        Json estimates = Json::array();
        for (const auto& op : parse_targets(cfg.targets, n)) {
            estimates.push_back(estimate_json(op, seqpt::estimate_diag_from_records(records, design, op), seed));
        }
        report["estimates"] = estimates;
    }
    if (cfg.detect) {
        Json det = detection_json(seqpt::detect_large_coefficients(records, design), seed);
        det["record_count"] = records.size();
        report["detection"] = det;
    }
    emit(cfg.report, report.dump(2) + "\n");
    return kExitOk;
}

int cmd_detect(const Config& cfg) {
    std::vector<seqpt::ExperimentRecord> records;
    std::string digest;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    if (!cfg.records.empty()) {
        if (!cfg.channel_path.empty() || cfg.samples || cfg.eps) {
            throw UsageError("--records cannot be combined with --channel or a sample budget");
        }
        const std::string text = read_file(cfg.records);
        std::istringstream in(text);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            try {
                records.push_back(seqpt::parse_record(line));
            } catch (const std::invalid_argument& e) {
                throw UsageError(cfg.records + ":" + std::to_string(line_no) + ": " + e.what());
            }
            if (records.size() > 1 && records.back().k_in.size() != records.front().k_in.size()) {
                throw UsageError(cfg.records + ":" + std::to_string(line_no) + ": qubit count differs from line 1");
            }
        }
        if (records.size() < 2) throw UsageError("detection needs at least two records");
        n = records.front().k_in.size();
        seed = resolve_seed(cfg);
        digest = "";
    } else {
        const auto loaded = load_channel(cfg);
        n = loaded.channel.qubits();
        const seqpt::MubDesign design(n);
        const std::size_t shots = resolve_budget(cfg, design.dimension(), BudgetUse::kDiagonal);
        seed = resolve_seed(cfg);
        const seqpt::ChannelSimulator sim(design, loaded.channel, mode_of(cfg));
        records = seqpt::collect_scan(sim, shots, {.seed = seed, .jobs = cfg.jobs});
        digest = loaded.digest;
    }
    const seqpt::MubDesign design(n);
    Json report = header("detect", seed, digest);
    if (!cfg.records.empty()) report["records_digest"] = sha256_hex(read_file(cfg.records));
    report["n"] = n;
    Json det = detection_json(seqpt::detect_large_coefficients(records, design), seed);
    det["record_count"] = records.size();
    report["detection"] = det;
    emit(cfg.out, report.dump(2) + "\n");
    return kExitOk;
}

int cmd_synth_basis(const Config& cfg) {
    if (cfg.n == 0 || cfg.n > seqpt::kMaxTabulatedDegree) {
        throw UsageError("--n must be in [1, " + std::to_string(seqpt::kMaxTabulatedDegree) + "]");
    }
    seqpt::BasisId basis;
    seqpt::CircuitFormat format{};
    try {
        basis = seqpt::BasisId::parse(cfg.b, cfg.n);
        format = seqpt::parse_circuit_format(cfg.format);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const seqpt::MubDesign design(cfg.n);
    emit(cfg.out, seqpt::export_circuit(design.measurement_circuit(basis), format));
    return kExitOk;
}

int cmd_chi_oracle(const Config& cfg) {
    const auto loaded = load_channel(cfg);
    const std::size_t n = loaded.channel.qubits();
    if (n > seqpt::kMaxChiQubits) {
        throw UsageError("chi-oracle supports at most " + std::to_string(seqpt::kMaxChiQubits) + " qubits");
    }
    const seqpt::CMatrix chi = seqpt::chi_from_kraus(loaded.channel);
    Json report = header("chi-oracle", 0, loaded.digest);
    report.erase("seed");
    report["n"] = n;
    Json diag = Json::object();
    Json entries = Json::array();
    for (Eigen::Index a = 0; a < chi.rows(); ++a) {
        const std::string la = seqpt::pauli_from_index(n, static_cast<std::uint64_t>(a)).label();
        diag[la] = chi(a, a).real();
        for (Eigen::Index b = 0; b < chi.cols(); ++b) {
            if (std::abs(chi(a, b)) < 1e-14) continue;
            Json e;
            e["m"] = la;
            e["m_prime"] = seqpt::pauli_from_index(n, static_cast<std::uint64_t>(b)).label();
            e["re"] = chi(a, b).real();
            e["im"] = chi(a, b).imag();
            entries.push_back(e);
        }
    }
    report["diagonal"] = diag;
    report["entries"] = entries;
    emit(cfg.out, report.dump(2) + "\n");
    return kExitOk;
}

void add_channel_options(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--channel", cfg.channel_path, "Channel specification (JSON)");
}

void add_run_options(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--samples,-M", cfg.samples, "Number of experiments M");
    cmd->add_option("--eps", cfg.eps, "Target accuracy epsilon");
    cmd->add_option("--p", cfg.p, "Confidence p; Chernoff budget M >= ln(2/(1-p)) / (2 eps^2)");
    cmd->add_option("--delta", cfg.delta,
                    "Relative accuracy delta; full-diagonal budget M >= 2(D + 1/eps)(D + 1) / (D^2 delta^2 (1 - P))");
    cmd->add_option("--bigp", cfg.big_p, "Success probability P for the full-diagonal budget");
    cmd->add_option("--seed", cfg.seed, "Master seed (default: $SEQPT_SEED, else 0)");
    cmd->add_option("--jobs,-j", cfg.jobs, "Worker threads; results do not depend on this")->check(CLI::Range(1, 1024));
    cmd->add_option("--out,-o", cfg.out, "Output path (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"seqpt: selective estimation of quantum process matrix elements with stabilizer 2-designs"};
    app.set_version_flag("--version", std::string(SEQPT_VERSION));
    app.require_subcommand(1);
    Config cfg;

    auto* diag = app.add_subcommand("estimate-diag", "Estimate diagonal chi_mm for the given Pauli targets");
    add_channel_options(diag, cfg);
    add_run_options(diag, cfg);
    diag->add_option("--targets", cfg.targets, "Comma-separated Pauli labels, 'all-weight-1' or 'all'");
    diag->add_flag("--trajectory", cfg.trajectory, "Sample one Pauli error per shot (Pauli channels only)");

    auto* off = app.add_subcommand("estimate-offdiag",
                                   "Estimate chi_{m m'} with the ancilla circuit; the auto budget is 4x the Chernoff count");
    add_channel_options(off, cfg);
    add_run_options(off, cfg);
    off->add_option("--targets", cfg.targets, "Two comma-separated Pauli labels m,m'")->required();

    auto* scan = app.add_subcommand("scan", "Record every transition of M random experiments");
    add_channel_options(scan, cfg);
    add_run_options(scan, cfg);
    scan->add_option("--targets", cfg.targets, "Estimate these targets from the scan ('all-weight-1', 'all' or labels)");
    scan->add_flag("--detect", cfg.detect, "Run large-coefficient detection on the scan");
    scan->add_option("--report", cfg.report, "Report path for --targets/--detect (default: stdout)");
    scan->add_flag("--trajectory", cfg.trajectory, "Sample one Pauli error per shot (Pauli channels only)");

    auto* detect = app.add_subcommand("detect", "Find Paulis with large chi_mm from one set of experiments");
    add_channel_options(detect, cfg);
    add_run_options(detect, cfg);
    detect->add_option("--records", cfg.records, "Use records written by 'scan' instead of running experiments");
    detect->add_flag("--trajectory", cfg.trajectory, "Sample one Pauli error per shot (Pauli channels only)");

    auto* synth = app.add_subcommand("synth-basis", "Print the Clifford circuit rotating basis b onto the Z basis");
    synth->add_option("--n", cfg.n, "Number of qubits")->required();
    synth->add_option("--b", cfg.b, "Basis label: a bitstring of length n, or Z")->required();
    synth->add_option("--format", cfg.format, "plain or qasm");
    synth->add_option("--out,-o", cfg.out, "Output path (default: stdout)");

    auto* oracle = app.add_subcommand("chi-oracle", "Dump the exact chi matrix of a channel (n <= 3)");
    add_channel_options(oracle, cfg);
    oracle->add_option("--out,-o", cfg.out, "Output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (diag->parsed()) return cmd_estimate_diag(cfg);
        if (off->parsed()) return cmd_estimate_offdiag(cfg);
        if (scan->parsed()) return cmd_scan(cfg);
        if (detect->parsed()) return cmd_detect(cfg);
        if (synth->parsed()) return cmd_synth_basis(cfg);
        if (oracle->parsed()) return cmd_chi_oracle(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const seqpt::ChannelError& e) {
        std::cerr << "error: invalid channel: " << e.what() << "\n";
        return kExitUsage;
    } catch (const seqpt::InvariantViolation& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
