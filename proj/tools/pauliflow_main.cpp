// Copyright 2026 The pauliflow Authors
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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pauliflow/circuit.hpp"
#include "pauliflow/counterexample.hpp"
#include "pauliflow/exact_oracle.hpp"
#include "pauliflow/ising.hpp"
#include "pauliflow/log.hpp"
#include "pauliflow/noise_polynomial.hpp"
#include "pauliflow/path_engine.hpp"
#include "pauliflow/qaoa.hpp"
#include "pauliflow/random_model.hpp"
#include "pauliflow/sparseness.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace pauliflow;

constexpr const char *kVersion = "0.1.0";

uint64_t fnv1a64(const std::string &s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

json meta_block(const json &config, uint64_t seed) {
    json meta;
    meta["version"] = kVersion;
    meta["seed"] = seed;
    meta["config_hash"] = hex64(fnv1a64(config.dump()));
    return meta;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json load_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    json j;
    in >> j;
    return j;
}

void emit(const std::string &text, const std::string &out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + out_path);
    }
    out << text;
}

Circuit load_circuit(const std::string &path) {
    Circuit c = circuit_from_json(load_json_file(path));
    auto violations = validate(c);
    if (!violations.empty()) {
        throw std::runtime_error("circuit invalid: layer " +
                                 std::to_string(violations.front().layer) + ": " +
                                 violations.front().message);
    }
    return c;
}

/// Inline Pauli spec: "Z(0,0)" or products "Z(0,0)*X(1,0)".
PauliString parse_inline_pauli(const std::string &spec, const Circuit &circuit) {
    PauliString s(static_cast<uint32_t>(circuit.n_qubits()));
    std::size_t pos = 0;
    while (pos < spec.size()) {
        char letter = spec[pos];
        if (pos + 1 >= spec.size() || spec[pos + 1] != '(') {
            throw std::runtime_error("bad observable spec near '" + spec.substr(pos) + "'");
        }
        std::size_t close = spec.find(')', pos);
        if (close == std::string::npos) {
            throw std::runtime_error("unterminated coordinate in observable spec");
        }
        std::string coords = spec.substr(pos + 2, close - pos - 2);
        std::size_t comma = coords.find(',');
        if (comma == std::string::npos) {
            throw std::runtime_error("coordinate needs x,y");
        }
        Coord c{std::stoi(coords.substr(0, comma)), std::stoi(coords.substr(comma + 1))};
        if (!circuit.in_lattice(c)) {
            throw std::runtime_error("observable coordinate outside lattice");
        }
        s.set_letter(circuit.qubit_index(c), pauli_from_char(letter));
        pos = close + 1;
        if (pos < spec.size()) {
            if (spec[pos] != '*') {
                throw std::runtime_error("expected '*' between factors");
            }
            ++pos;
        }
    }
    if (s.is_identity()) {
        throw std::runtime_error("observable must be non-identity");
    }
    return s;
}

Observable parse_observable(const std::string &spec, const Circuit &circuit) {
    std::ifstream probe(spec);
    if (!probe.good()) {
        return Observable::single(parse_inline_pauli(spec, circuit));
    }
    json j = load_json_file(spec);
    Observable obs;
    for (const auto &t : j.at("terms")) {
        PauliString s(static_cast<uint32_t>(circuit.n_qubits()));
        for (const auto &factor : t.at("paulis")) {
            std::string letter = factor.at(0).get<std::string>();
            Coord c{factor.at(1).at(0).get<int>(), factor.at(1).at(1).get<int>()};
            s.set_letter(circuit.qubit_index(c), pauli_from_char(letter.at(0)));
        }
        obs.terms.push_back(Observable::Term{t.at("a").get<double>(), s});
    }
    obs.validate();
    return obs;
}

ProductState parse_state(const std::string &spec, uint32_t n) {
    if (spec.empty() || spec == "zero") {
        return ProductState::all_zero(n);
    }
    if (spec == "plus") {
        return ProductState::all_plus(n);
    }
    json j = load_json_file(spec);
    ProductState s;
    for (const auto &b : j.at("bloch")) {
        s.qubits.push_back(BlochVector{b.at(0).get<double>(), b.at(1).get<double>(),
                                       b.at(2).get<double>()});
    }
    if (s.n() != n) {
        throw std::runtime_error("state qubit count does not match circuit");
    }
    return s;
}

std::string fw_csv(const json &meta, const WeightPolynomial &poly, const PathStats &stats) {
    std::ostringstream out;
    out << "# version=" << meta.at("version").get<std::string>()
        << " config_hash=" << meta.at("config_hash").get<std::string>() << "\n";
    out << "w,F_w,N_w\n";
    std::map<int, std::pair<double, uint64_t>> rows;
    for (const auto &[w, c] : poly.coeffs) {
        rows[w].first = c;
    }
    for (const auto &[w, c] : stats.paths_by_weight) {
        rows[w].second = c;
    }
    for (const auto &[w, row] : rows) {
        out << w << "," << format_double(row.first) << "," << row.second << "\n";
    }
    return out.str();
}

int run_simulate(const std::string &circuit_path, const std::string &obs_spec,
                 const std::string &state_spec, double p, std::optional<int> ell,
                 std::optional<double> epsilon, std::optional<double> q_assert, double a,
                 bool oracle, const std::string &fw_csv_path, int threads, uint64_t seed,
                 const std::string &out_path) {
    Circuit circuit = load_circuit(circuit_path);
    CompiledCircuit compiled(circuit);
    Observable obs = parse_observable(obs_spec, circuit);
    ProductState state = parse_state(state_spec, static_cast<uint32_t>(circuit.n_qubits()));

    json config;
    config["command"] = "simulate";
    config["circuit"] = circuit_path;
    config["obs"] = obs_spec;
    config["state"] = state_spec.empty() ? "zero" : state_spec;
    config["p"] = p;
    config["threads"] = threads;

    int max_weight = circuit.n_qubits() * (circuit.depth() + 1);
    int cutoff;
    bool auto_cutoff = false;
    if (ell.has_value() == epsilon.has_value()) {
        throw std::runtime_error("provide exactly one of --ell or --epsilon (auto cutoff)");
    }
    if (ell) {
        cutoff = *ell;
        config["ell"] = cutoff;
    } else {
        if (!q_assert) {
            throw std::runtime_error("auto cutoff needs --Q (certified or asserted)");
        }
        cutoff = choose_cutoff(circuit.n_qubits(), std::max(1, circuit.depth()), *epsilon, p,
                               *q_assert, a);
        cutoff = std::min(cutoff, max_weight);
        auto_cutoff = true;
        config["epsilon"] = *epsilon;
        config["Q"] = *q_assert;
        config["a"] = a;
    }

    json meta = meta_block(config, seed);

    EnumerateOptions options;
    options.cutoff = cutoff;
    options.threads = threads;
    TruncatedExpectation result = expectation_truncated(compiled, obs, state, p, options,
                                                        q_assert);

    json out;
    out["meta"] = meta;
    out["value"] = result.value;
    out["ell"] = cutoff;
    out["p"] = p;
    if (auto_cutoff) {
        out["cutoff_mode"] = "auto (Q user-asserted, unverified)";
    }
    if (result.per_term_bound) {
        out["bound"] = *result.per_term_bound;
    } else if (result.log_per_term_bound) {
        out["log_bound"] = *result.log_per_term_bound;
    }
    out["paths"] = result.stats.total_paths;
    out["pruned"] = result.stats.pruned;

    if (oracle) {
        double exact = exact_noisy_expectation(circuit, state, obs, p);
        out["oracle"] = exact;
        out["oracle_delta"] = result.value - exact;
    }

    if (!fw_csv_path.empty()) {
        if (obs.terms.size() != 1) {
            throw std::runtime_error("F_w table output needs a single-term observable");
        }
        FwTable fw = accumulate_fw(compiled, obs.terms.front().string, state, options);
        emit(fw_csv(meta, fw.poly, fw.stats), fw_csv_path);
    }

    emit(out.dump(2) + "\n", out_path);
    return 0;
}

int run_paths(const std::string &circuit_path, const std::string &obs_spec,
              std::optional<int> ell, std::optional<double> sparse_q, int sparse_k,
              int sparse_cap, int threads, uint64_t seed, const std::string &format,
              const std::string &out_path) {
    Circuit circuit = load_circuit(circuit_path);
    CompiledCircuit compiled(circuit);
    PauliString obs = parse_inline_pauli(obs_spec, circuit);

    json config;
    config["command"] = "paths";
    config["circuit"] = circuit_path;
    config["obs"] = obs_spec;
    if (ell) config["ell"] = *ell;
    json meta = meta_block(config, seed);

    EnumerateOptions options;
    options.cutoff = ell.value_or(kUnboundedCutoff);
    options.threads = threads;
    options.max_paths = uint64_t{1} << 24;
    PathStats stats = count_paths(compiled, obs, options);

    if (format == "csv") {
        std::ostringstream csv;
        csv << "# version=" << kVersion
            << " config_hash=" << meta.at("config_hash").get<std::string>() << "\n";
        csv << "w,N_w\n";
        for (const auto &[w, c] : stats.paths_by_weight) {
            csv << w << "," << c << "\n";
        }
        emit(csv.str(), out_path);
        return 0;
    }

    json out;
    out["meta"] = meta;
    json hist;
    for (const auto &[w, c] : stats.paths_by_weight) {
        hist[std::to_string(w)] = c;
    }
    out["paths_by_weight"] = hist;
    out["total_paths"] = stats.total_paths;
    out["max_weight"] = stats.max_weight;
    out["pruned"] = stats.pruned;
    out["magic_encounters_total"] = stats.magic_encounters_total;

    if (sparse_q) {
        SparsenessReport report = check_sparseness(circuit, *sparse_q, sparse_k, sparse_cap);
        json sj;
        sj["Q"] = report.q;
        sj["k"] = report.k;
        sj["status"] = report.status == SparsenessStatus::certified   ? "certified"
                       : report.status == SparsenessStatus::refuted   ? "refuted"
                                                                      : "inconclusive";
        sj["max_size_checked"] = report.max_size_checked;
        sj["point_count"] = report.point_count;
        if (report.witness) {
            json w = json::array();
            for (const auto &pt : *report.witness) {
                w.push_back({pt.x, pt.y, pt.t});
            }
            sj["witness"] = w;
            sj["witness_fraction"] = report.witness_fraction;
        }
        if (!report.note.empty()) {
            sj["note"] = report.note;
        }
        out["sparseness"] = sj;
    }
    emit(out.dump(2) + "\n", out_path);
    return 0;
}

int run_random_model(int lx, int ly, int depth, double q, int trials, int ell,
                     const std::string &policy_name, const std::string &obs_spec,
                     uint64_t seed, const std::string &out_path) {
    SlotSkeleton skeleton = SlotSkeleton::brickwork(lx, ly, depth);
    Circuit probe(lx, ly);
    PauliString obs = obs_spec.empty()
                          ? PauliString::single(static_cast<uint32_t>(lx * ly), 0, Pauli::Z)
                          : parse_inline_pauli(obs_spec, probe);
    GatePolicy policy = gate_policy_from_name(policy_name);

    json config;
    config["command"] = "random-model";
    config["lx"] = lx;
    config["ly"] = ly;
    config["depth"] = depth;
    config["Q"] = q;
    config["trials"] = trials;
    config["ell"] = ell;
    config["policy"] = policy_name;
    json meta = meta_block(config, seed);

    RandomModelStats stats = random_model_statistics(skeleton, q, policy, obs, trials, ell, seed);

    json out;
    out["meta"] = meta;
    out["mean_paths"] = stats.mean;
    out["stddev"] = stats.stddev;
    out["sigma_mean"] = stats.sigma_mean;
    out["bound"] = stats.bound;
    out["within_bound_3sigma"] = stats.within_bound_3sigma;
    emit(out.dump(2) + "\n", out_path);
    return 0;
}

std::vector<double> parse_list(const std::string &csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(std::stod(item));
    }
    return out;
}

int run_qaoa(const std::string &ising_path, const std::string &gammas_csv,
             const std::string &alphas_csv, const std::string &embedding_name, double p,
             double epsilon, double lambda_threshold, int ell_fallback, int threads,
             uint64_t seed, const std::string &out_path) {
    IsingModel model = ising_from_json(load_json_file(ising_path));
    QaoaParams params;
    params.gammas = parse_list(gammas_csv);
    params.alphas = parse_list(alphas_csv);

    Embedding embedding = (embedding_name == "native") ? Embedding::native(model)
                                                       : Embedding::linear_swap_network(model);
    QaoaBuild build = build_qaoa(model, params, embedding);

    json config;
    config["command"] = "qaoa";
    config["ising"] = ising_path;
    config["gammas"] = gammas_csv;
    config["alphas"] = alphas_csv;
    config["embedding"] = embedding_name;
    config["p"] = p;
    config["epsilon"] = epsilon;
    config["lambda_threshold"] = lambda_threshold;
    json meta = meta_block(config, seed);

    DispatchOptions options;
    options.lambda_threshold = lambda_threshold;
    options.p = p;
    options.epsilon = epsilon;
    options.ell_fallback = ell_fallback;
    options.threads = threads;
    DispatchReport report = dispatch_energy_estimate(model, build, options);

    json out;
    out["meta"] = meta;
    out["branch"] = std::string(1, report.branch);
    out["lambda"] = report.lambda;
    out["energy"] = report.estimate;
    out["bound"] = report.bound;
    if (report.branch == 'b') {
        out["Q"] = report.q;
        out["p_threshold"] = report.p_threshold;
        out["guaranteed"] = report.guaranteed;
        out["ell"] = report.cutoff;
        if (report.log_bound) {
            out["log_bound"] = *report.log_bound;
        }
    }
    if (!report.note.empty()) {
        out["note"] = report.note;
    }
    emit(out.dump(2) + "\n", out_path);
    return 0;
}

int run_ising(const std::string &ising_path, bool exact, std::optional<double> epsilon,
              std::optional<int> block_size, uint64_t seed, const std::string &out_path) {
    IsingModel model = ising_from_json(load_json_file(ising_path));

    json config;
    config["command"] = "ising";
    config["ising"] = ising_path;
    config["exact"] = exact;
    if (epsilon) config["epsilon"] = *epsilon;
    if (block_size) config["block_size"] = *block_size;
    json meta = meta_block(config, seed);

    json out;
    out["meta"] = meta;
    if (exact) {
        GroundState g = exact_ground_energy(model);
        out["energy"] = g.energy;
        json spins = json::array();
        for (int s : g.spins) {
            spins.push_back(s);
        }
        out["spins"] = spins;
    } else {
        ApproxGroundEnergy approx;
        if (block_size) {
            approx = approx_ground_energy_blocks(model, *block_size);
        } else if (epsilon) {
            approx = approx_ground_energy(model, *epsilon);
        } else {
            throw std::runtime_error("ising needs --exact, --epsilon, or --block-size");
        }
        out["energy"] = approx.energy;
        out["block_size"] = approx.block_size;
        out["error_bound"] = approx.error_bound;
        out["dropped_edges"] = approx.dropped_edge_count;
    }
    emit(out.dump(2) + "\n", out_path);
    return 0;
}

int run_counterexample(int n, double p, int ell_min, int ell_max, std::optional<int> g_override,
                       uint64_t seed, const std::string &format, const std::string &out_path) {
    json config;
    config["command"] = "counterexample";
    config["n"] = n;
    config["p"] = p;
    config["ell_min"] = ell_min;
    config["ell_max"] = ell_max;
    if (g_override) config["g"] = *g_override;
    json meta = meta_block(config, seed);

    std::vector<MixedObservableError> rows;
    for (int ell = ell_min; ell <= ell_max; ++ell) {
        rows.push_back(mixed_observable_error(n, ell, p, g_override));
    }

    if (format == "json") {
        json out;
        out["meta"] = meta;
        json jrows = json::array();
        for (const auto &r : rows) {
            json jr;
            jr["ell"] = r.ell;
            jr["abs_error"] = std::abs(r.error);
            if (r.witness_k) {
                jr["witness_k"] = *r.witness_k;
                jr["witness_value"] = r.witness_value;
            }
            jrows.push_back(jr);
        }
        out["g"] = rows.empty() ? 0 : rows.front().g;
        out["sweep"] = jrows;
        emit(out.dump(2) + "\n", out_path);
        return 0;
    }

    std::ostringstream csv;
    csv << "# version=" << kVersion
        << " config_hash=" << meta.at("config_hash").get<std::string>() << "\n";
    csv << "ell,abs_error,witness_k\n";
    for (const auto &r : rows) {
        csv << r.ell << "," << format_double(std::abs(r.error)) << ",";
        if (r.witness_k) {
            csv << *r.witness_k;
        }
        csv << "\n";
    }
    emit(csv.str(), out_path);
    return 0;
}

int run_roots(const std::string &circuit_path, const std::string &obs_spec,
              std::optional<int> ell, double frag_r, double frag_eps, int frag_g, int threads,
              uint64_t seed, const std::string &out_path) {
    Circuit circuit = load_circuit(circuit_path);
    CompiledCircuit compiled(circuit);
    PauliString obs = parse_inline_pauli(obs_spec, circuit);

    json config;
    config["command"] = "roots";
    config["circuit"] = circuit_path;
    config["obs"] = obs_spec;
    if (ell) config["ell"] = *ell;
    config["R"] = frag_r;
    config["eps_interval"] = frag_eps;
    config["g_threshold"] = frag_g;
    json meta = meta_block(config, seed);

    EnumerateOptions options;
    options.cutoff = ell.value_or(kUnboundedCutoff);
    options.threads = threads;
    options.max_paths = uint64_t{1} << 24;
    FwTable fw = accumulate_fw(compiled, obs, ProductState::all_zero(compiled.n()), options);
    WeightPolynomial poly = fw.poly.cleaned(1e-13);

    RootProfile profile = find_roots(poly);
    FragilityOptions fopt;
    fopt.radius = frag_r;
    fopt.interval = frag_eps;
    fopt.g_threshold = frag_g;
    FragilityCertificate cert = fragility_certificate(poly, fopt);

    json out;
    out["meta"] = meta;
    json body = root_report_json(poly, profile, cert);
    for (auto &[key, value] : body.items()) {
        out[key] = value;
    }
    emit(out.dump(2) + "\n", out_path);
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Pauli-path expectation values for noisy circuits"};
    app.require_subcommand(1);
    app.fallthrough();

    uint64_t seed = 1;
    int threads = 0;
    std::string out_path;
    std::string format = "json";
    app.add_option("--seed", seed, "PRNG seed echoed into outputs");
    app.add_option("--threads", threads, "worker threads (0 = hardware)");
    app.add_option("--out", out_path, "output path (default stdout)");
    app.add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

    // simulate
    auto *sim = app.add_subcommand("simulate", "truncated expectation value of an observable");
    std::string circuit_path, obs_spec, state_spec, fw_csv_path;
    double p = 0.0, a = 2.0;
    std::optional<int> ell;
    std::optional<double> epsilon, q_assert;
    bool oracle = false;
    sim->add_option("--circuit", circuit_path, "circuit JSON")->required();
    sim->add_option("--obs", obs_spec, "observable: inline 'Z(x,y)[*...]' or JSON file")
        ->required();
    sim->add_option("--state", state_spec, "zero|plus|bloch JSON file");
    sim->add_option("--p", p, "depolarizing rate")->required();
    sim->add_option("--ell", ell, "weight cutoff");
    sim->add_option("--epsilon", epsilon, "precision for auto cutoff");
    sim->add_option("--Q", q_assert, "sparseness Q (user-asserted unless certified)");
    sim->add_option("--a", a, "sparseness constant a (cutoff floor a ln n)");
    sim->add_flag("--oracle", oracle, "also run the density-matrix oracle (n <= 10)");
    sim->add_option("--fw-csv", fw_csv_path, "write the w,F_w,N_w table here");

    // paths
    auto *paths = app.add_subcommand("paths", "path histogram and sparseness report");
    std::string p_circuit, p_obs;
    std::optional<int> p_ell;
    std::optional<double> sparse_q;
    int sparse_k = 1, sparse_cap = 16;
    paths->add_option("--circuit", p_circuit)->required();
    paths->add_option("--obs", p_obs)->required();
    paths->add_option("--ell", p_ell, "weight cutoff");
    paths->add_option("--sparse-Q", sparse_q, "check (Q,k)-sparseness with this Q");
    paths->add_option("--sparse-k", sparse_k, "sparseness k");
    paths->add_option("--sparse-cap", sparse_cap, "subset size cap");

    // random-model
    auto *rm = app.add_subcommand("random-model", "ensemble path statistics vs (1+Q)^ell");
    int rm_lx = 2, rm_ly = 2, rm_depth = 3, rm_trials = 100, rm_ell = 6;
    double rm_q = 0.1;
    std::string rm_policy = "always-t", rm_obs;
    rm->add_option("--lx", rm_lx);
    rm->add_option("--ly", rm_ly);
    rm->add_option("--depth", rm_depth);
    rm->add_option("--Q", rm_q)->required();
    rm->add_option("--trials", rm_trials);
    rm->add_option("--ell", rm_ell);
    rm->add_option("--policy", rm_policy, "always-t|uniform");
    rm->add_option("--obs", rm_obs, "observable (default Z(0,0))");

    // qaoa
    auto *qa = app.add_subcommand("qaoa", "build a variational circuit and dispatch");
    std::string qa_ising, qa_gammas = "0.7", qa_alphas = "0.4", qa_embedding = "line";
    double qa_p = 0.1, qa_eps = 0.5, qa_lambda_threshold = 4.0;
    int qa_ell_fallback = 8;
    qa->add_option("--ising", qa_ising)->required();
    qa->add_option("--gammas", qa_gammas, "comma-separated");
    qa->add_option("--alphas", qa_alphas, "comma-separated");
    qa->add_option("--embedding", qa_embedding, "native|line")
        ->check(CLI::IsMember({"native", "line"}));
    qa->add_option("--p", qa_p);
    qa->add_option("--epsilon", qa_eps);
    qa->add_option("--lambda-threshold", qa_lambda_threshold);
    qa->add_option("--ell", qa_ell_fallback, "fallback cutoff when below threshold");

    // ising
    auto *is = app.add_subcommand("ising", "exact or block-approximate ground energy");
    std::string is_path;
    bool is_exact = false;
    std::optional<double> is_eps;
    std::optional<int> is_block;
    is->add_option("--ising", is_path)->required();
    is->add_flag("--exact", is_exact);
    is->add_option("--epsilon", is_eps);
    is->add_option("--block-size", is_block);

    // counterexample
    auto *ce = app.add_subcommand("counterexample", "worst-case truncation error sweep");
    int ce_n = 49152, ce_ell_min = 32, ce_ell_max = 96;
    double ce_p = 0.1;
    std::optional<int> ce_g;
    ce->add_option("--n", ce_n);
    ce->add_option("--p", ce_p);
    ce->add_option("--ell-min", ce_ell_min);
    ce->add_option("--ell-max", ce_ell_max);
    ce->add_option("--g", ce_g, "override g(n)");

    // roots
    auto *rt = app.add_subcommand("roots", "weight polynomial roots and fragility");
    std::string rt_circuit, rt_obs;
    std::optional<int> rt_ell;
    double rt_r = 1.0, rt_eps = 0.1;
    int rt_g = 1;
    rt->add_option("--circuit", rt_circuit)->required();
    rt->add_option("--obs", rt_obs)->required();
    rt->add_option("--ell", rt_ell);
    rt->add_option("--R", rt_r, "fragility radius");
    rt->add_option("--eps-interval", rt_eps, "fragility interval width");
    rt->add_option("--g-threshold", rt_g, "required roots within R");

    CLI11_PARSE(app, argc, argv);

    if (threads <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : static_cast<int>(hw);
    }
    PF_INFO("seed=%llu threads=%d", static_cast<unsigned long long>(seed), threads);
    if (format == "csv" && !ce->parsed() && !paths->parsed()) {
        std::cerr << "{\"error\": \"csv format is only available for counterexample/paths\"}\n";
        return 2;
    }

    try {
        if (sim->parsed()) {
            return run_simulate(circuit_path, obs_spec, state_spec, p, ell, epsilon, q_assert, a,
                                oracle, fw_csv_path, threads, seed, out_path);
        }
        if (paths->parsed()) {
            return run_paths(p_circuit, p_obs, p_ell, sparse_q, sparse_k, sparse_cap, threads,
                             seed, format, out_path);
        }
        if (rm->parsed()) {
            return run_random_model(rm_lx, rm_ly, rm_depth, rm_q, rm_trials, rm_ell, rm_policy,
                                    rm_obs, seed, out_path);
        }
        if (qa->parsed()) {
            return run_qaoa(qa_ising, qa_gammas, qa_alphas, qa_embedding, qa_p, qa_eps,
                            qa_lambda_threshold, qa_ell_fallback, threads, seed, out_path);
        }
        if (is->parsed()) {
            return run_ising(is_path, is_exact, is_eps, is_block, seed, out_path);
        }
        if (ce->parsed()) {
            return run_counterexample(ce_n, ce_p, ce_ell_min, ce_ell_max, ce_g, seed, format,
                                      out_path);
        }
        if (rt->parsed()) {
            return run_roots(rt_circuit, rt_obs, rt_ell, rt_r, rt_eps, rt_g, threads, seed,
                             out_path);
        }
    } catch (const std::exception &e) {
        json err;
        err["error"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}
