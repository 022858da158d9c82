#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "iolb/annotation_io.hpp"
#include "iolb/balance.hpp"
#include "iolb/bound_report.hpp"
#include "iolb/bounds.hpp"
#include "iolb/cdag.hpp"
#include "iolb/cdag_io.hpp"
#include "iolb/error.hpp"
#include "iolb/games.hpp"
#include "iolb/generators.hpp"
#include "iolb/heuristic.hpp"
#include "iolb/machine.hpp"
#include "iolb/oracle.hpp"
#include "iolb/prbw.hpp"
#include "iolb/record.hpp"
#include "iolb/spart.hpp"

#ifndef IOLB_DATA_DIR
#define IOLB_DATA_DIR "data"
#endif

namespace iolb::cli {

enum Exit { ok = 0, domain_failure = 1, usage = 2, budget = 3 };

// Bad flag values that only the library can detect (unknown algorithm, ...).
class UsageError : public Error {
  public:
    using Error::Error;
};

// Collects both output streams; only one is printed.
class Output {
  public:
    void kv(const std::string& key, const std::string& value) { kv_.emplace_back(key, value); }
    void kv(const std::string& key, std::int64_t value) { kv(key, std::to_string(value)); }
    void value(const std::string& key, const BoundValue& v) {
        kv(key, v.str());
        kv(key + ".decimal", v.decimal());
    }
    void value(const std::string& key, const Rational& r) { value(key, BoundValue(r)); }
    void human(const std::string& line) { human_.push_back(line); }

    [[nodiscard]] std::vector<std::string> kv_lines() const {
        std::vector<std::string> out;
        out.reserve(kv_.size());
        for (const auto& [k, v] : kv_) out.push_back(k + "=" + v);
        return out;
    }
    [[nodiscard]] const std::vector<std::string>& human_lines() const { return human_; }

  private:
    std::vector<std::pair<std::string, std::string>> kv_;
    std::vector<std::string> human_;
};

struct Common {
    bool kv = false;
    std::string record;
};

namespace detail {

inline std::string value_text(const BoundValue& v) {
    return v.exact && !v.exact->is_integer() ? v.str() + " (" + v.decimal() + ")" : v.str();
}

inline void emit_report(Output& o, const BoundReport& r, const std::string& prefix = "bound") {
    o.kv(prefix + ".kind", to_string(r.kind));
    o.kv(prefix + ".method", to_string(r.method));
    o.value(prefix + ".value", r.value);
    if (!r.symbolic.empty()) o.kv(prefix + ".symbolic", r.symbolic);
    for (const auto& [k, v] : r.params) o.kv(prefix + ".param." + k, v);
    for (std::size_t i = 0; i < r.provenance.size(); ++i) o.kv(prefix + ".provenance." + std::to_string(i), r.provenance[i]);
    for (std::size_t i = 0; i < r.notes.size(); ++i) o.kv(prefix + ".note." + std::to_string(i), r.notes[i]);
    if (r.asymptotic) {
        o.value(prefix + ".asymptotic", *r.asymptotic);
        o.kv(prefix + ".asymptotic.symbolic", r.asymptotic_symbolic);
        o.kv(prefix + ".asymptotic.condition", r.asymptotic_condition);
    }

    o.human(std::string(to_string(r.kind)) + " bound (" + to_string(r.method) + "): " + value_text(r.value));
    if (!r.symbolic.empty()) o.human("  form: " + r.symbolic);
    if (r.asymptotic)
        o.human("  asymptotic: " + value_text(*r.asymptotic) + " = " + r.asymptotic_symbolic + " when " +
                r.asymptotic_condition);
    if (!r.params.empty()) {
        std::string line = "  params:";
        for (const auto& [k, v] : r.params) line += " " + k + "=" + v;
        o.human(line);
    }
    for (const auto& p : r.provenance) o.human("  via " + p);
    for (const auto& n : r.notes) o.human("  note: " + n);
}

inline void emit_tally(Output& o, const IoTally& t) {
    o.kv("loads", t.loads);
    o.kv("stores", t.stores);
    o.kv("computes", t.computes);
    o.kv("deletes", t.deletes);
    o.kv("io", t.io());
    o.human("I/O " + std::to_string(t.io()) + " (loads " + std::to_string(t.loads) + ", stores " +
            std::to_string(t.stores) + "), computes " + std::to_string(t.computes) + ", deletes " +
            std::to_string(t.deletes));
}

inline std::string unit_key(const UnitKey& k) { return std::to_string(k.first) + ":" + std::to_string(k.second); }

inline void emit_prbw_tally(Output& o, const PrbwTally& t, const HierarchyConfig& c) {
    for (const auto& [u, n] : t.loads) o.kv("loads[" + std::to_string(u) + "]", n);
    for (const auto& [u, n] : t.stores) o.kv("stores[" + std::to_string(u) + "]", n);
    for (const auto& [u, n] : t.computes) o.kv("computes[" + std::to_string(u) + "]", n);
    for (const auto& [k, n] : t.vertical_up) o.kv("vertical_up[" + unit_key(k) + "]", n);
    for (const auto& [k, n] : t.vertical_down) o.kv("vertical_down[" + unit_key(k) + "]", n);
    for (const auto& [k, n] : t.r5_by_parent(c)) o.kv("vertical_down_by_parent[" + unit_key(k) + "]", n);
    for (const auto& [u, n] : t.horizontal) o.kv("horizontal[" + std::to_string(u) + "]", n);
    o.kv("loads", PrbwTally::total(t.loads));
    o.kv("stores", PrbwTally::total(t.stores));
    o.kv("computes", PrbwTally::total(t.computes));
    o.kv("deletes", t.deletes);
    o.kv("io", t.io_blue());
    o.kv("horizontal", t.horizontal_total());

    o.human("blue I/O " + std::to_string(t.io_blue()) + " (loads " + std::to_string(PrbwTally::total(t.loads)) +
            ", stores " + std::to_string(PrbwTally::total(t.stores)) + "), horizontal " +
            std::to_string(t.horizontal_total()) + ", computes " + std::to_string(PrbwTally::total(t.computes)));
    for (const auto& [k, n] : t.vertical_up)
        o.human("  level " + std::to_string(k.first) + " unit " + std::to_string(k.second) + ": " + std::to_string(n) +
                " moved up into it");
    for (const auto& [k, n] : t.vertical_down)
        o.human("  level " + std::to_string(k.first) + " unit " + std::to_string(k.second) + ": " + std::to_string(n) +
                " moved down into it");
    for (const auto& [u, n] : t.horizontal)
        o.human("  main memory " + std::to_string(u) + ": " + std::to_string(n) + " remote gets");
}

inline std::string slurp(const std::string& path, RunRecord& rec) {
    std::string text = read_file(path);
    rec.inputs.emplace_back(path, sha256_hex(text));
    return text;
}

inline Cdag load_cdag(const std::string& path, RunRecord& rec) { return cdag_from_text(slurp(path, rec)); }

inline std::string data_dir() {
    if (const char* env = std::getenv("IOLB_DATA_DIR")) return env;
    return IOLB_DATA_DIR;
}

// A path, or a name under the data directory ("bgq" -> data/machines/bgq.machine).
inline MachineSpec load_machine(const std::string& spec, RunRecord& rec) {
    std::string path = spec;
    if (!std::filesystem::exists(path)) {
        const auto candidate = std::filesystem::path(data_dir()) / "machines" / (spec + ".machine");
        if (!std::filesystem::exists(candidate)) throw UsageError("no machine file or known machine '" + spec + "'");
        path = candidate.string();
    }
    return machine_from_text(slurp(path, rec));
}

inline Algorithm algorithm_arg(const std::string& s) {
    try {
        return parse_algorithm(s);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

inline Game game_arg(const std::string& s) {
    try {
        return parse_game(s);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

// Slab records become blocks; overlapping slabs make the partition
// non-disjoint and uncovered vertices form a final block "rest".
inline Partition partition_from(const Annotations& a, const Cdag& g) {
    Partition p;
    std::vector<int> seen(g.size(), 0);
    for (const auto& s : a.slabs) {
        p.names.push_back(s.name);
        p.blocks.push_back(s.vertices);
        for (VertexId v : s.vertices) {
            if (!g.contains(v)) throw Error("partition names unknown vertex " + std::to_string(v));
            ++seen[static_cast<std::size_t>(v)];
        }
    }
    VertexSet rest;
    bool overlap = false;
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (seen[v] == 0) rest.insert(static_cast<VertexId>(v));
        if (seen[v] > 1) overlap = true;
    }
    if (!rest.empty()) {
        p.names.emplace_back("rest");
        p.blocks.push_back(std::move(rest));
    }
    p.mode = overlap ? PartitionKind::non_disjoint : PartitionKind::disjoint;
    return p;
}

inline bool is_prbw_trace(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (iolb::detail::is_blank_or_comment(line)) continue;
        auto tok = iolb::detail::split_ws(line);
        return tok.size() >= 2 && tok[0] == "trace" && tok[1] == "prbw";
    }
    return false;
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
}

inline void emit_verdict(Output& o, const BalanceVerdict& v, const std::string& prefix) {
    o.value(prefix + ".intensity", v.intensity);
    o.value(prefix + ".balance", v.machine_balance);
    o.kv(prefix + ".verdict", to_string(v.verdict));
    o.human(prefix + " (" + v.level + "): intensity " + value_text(v.intensity) + " vs balance " +
            v.machine_balance.decimal_str() + " -> " + to_string(v.verdict));
}

inline void emit_analysis(Output& o, const Analysis& a, const std::string& prefix) {
    const auto& p = a.params;
    o.kv(prefix + ".alg", to_string(p.algorithm));
    o.kv(prefix + ".n", p.n);
    o.kv(prefix + ".d", p.d);
    if (p.algorithm == Algorithm::gmres) o.kv(prefix + ".m", p.m);
    else o.kv(prefix + ".T", p.T);
    o.kv(prefix + ".machine", a.machine);
    o.kv(prefix + ".level", a.level);
    o.kv(prefix + ".S", a.S);
    o.kv(prefix + ".N_nodes", a.vertical.N_nodes);
    o.kv(prefix + ".V_model", a.V_model);
    o.value(prefix + ".V", a.V_size);
    o.human(std::string(to_string(p.algorithm)) + " n=" + std::to_string(p.n) + " d=" + std::to_string(p.d) +
            (p.algorithm == Algorithm::gmres ? " m=" + std::to_string(p.m) : " T=" + std::to_string(p.T)) + " on " +
            a.machine + " (" + a.level + ", S=" + std::to_string(a.S) + " words, " +
            std::to_string(a.vertical.N_nodes) + " nodes)");
    o.human("  |V| = " + a.V_model + " = " + value_text(a.V_size));
    emit_report(o, a.lb, prefix + ".lb");
    emit_report(o, a.ub, prefix + ".ub");
    emit_verdict(o, a.vertical, prefix + ".vertical");
    if (a.vertical_exact_intensity) {
        o.value(prefix + ".vertical.exact_intensity", *a.vertical_exact_intensity);
        o.human("  pre-asymptotic vertical intensity " + value_text(*a.vertical_exact_intensity));
    }
    if (a.vertical_closed_intensity) {
        o.value(prefix + ".vertical.closed_intensity", *a.vertical_closed_intensity);
        o.kv(prefix + ".vertical.closed_form", a.vertical_closed_form);
        o.human("  per-update vertical intensity " + a.vertical_closed_form + " = " +
                value_text(*a.vertical_closed_intensity));
    }
    emit_verdict(o, a.horizontal, prefix + ".horizontal");
    if (a.horizontal_closed_intensity) {
        o.value(prefix + ".horizontal.closed_intensity", *a.horizontal_closed_intensity);
        o.kv(prefix + ".horizontal.closed_form", a.horizontal_closed_form);
        o.human("  closed-form horizontal intensity " + a.horizontal_closed_form + " = " +
                value_text(*a.horizontal_closed_intensity));
    }
    if (a.threshold) {
        if (a.threshold->exact) {
            o.value(prefix + ".threshold.exact", BoundValue::real(*a.threshold->exact));
            o.human("  bandwidth-bound for every d up to " + BoundValue::real(*a.threshold->exact).decimal() +
                    " (exact)");
        } else {
            o.kv(prefix + ".threshold.exact", "unbounded");
            o.human("  bandwidth-bound for every d");
        }
        o.value(prefix + ".threshold.linearized", BoundValue::real(a.threshold->linearized));
        o.human("  linearized threshold 4*balance*log2(2S) = " +
                BoundValue::real(a.threshold->linearized).decimal());
    }
    for (std::size_t i = 0; i < a.notes.size(); ++i) {
        o.kv(prefix + ".note." + std::to_string(i), a.notes[i]);
        o.human("  note: " + a.notes[i]);
    }
}

}  // namespace detail

// The whole command line; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    RunRecord rec;
    for (int i = 0; i < argc; ++i) rec.argv.emplace_back(argv[i]);
    Output o;
    Common common;

    CLI::App app{"I/O lower bounds for computational DAGs", "iolb"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);
    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--kv", common.kv, "machine-parsable key=value output");
        sub->add_option("--record", common.record, "append a run record to this file");
    };
    auto add_alg = [](CLI::App* sub, std::string& alg, AlgorithmParams& p, bool required) {
        auto* opt = sub->add_option("--alg", alg, "outer_product, matmul, composite, cg, gmres, jacobi, chain");
        if (required) opt->required();
        sub->add_option("--n", p.n, "grid extent, matrix size or chain length")->check(CLI::PositiveNumber);
        sub->add_option("--d", p.d, "grid dimension")->check(CLI::PositiveNumber);
        sub->add_option("--T", p.T, "outer iterations")->check(CLI::PositiveNumber);
        sub->add_option("--m", p.m, "GMRES iterations")->check(CLI::PositiveNumber);
        sub->add_option("--points", p.stencil_points, "jacobi stencil points (default 3^d)")->check(CLI::NonNegativeNumber);
    };

    // generate
    std::string g_alg, g_out;
    AlgorithmParams g_p;
    auto* gen = app.add_subcommand("generate", "build a CDAG and its annotation sidecar");
    add_alg(gen, g_alg, g_p, true);
    gen->add_option("--out", g_out, "write <out>.cdag and <out>.ann (default: CDAG to stdout)");
    add_common(gen);

    // validate
    std::string v_cdag, v_trace, v_hier, v_game = "rbw", v_conv;
    std::int64_t v_S = 0;
    auto* val = app.add_subcommand("validate", "check a CDAG, or replay a trace and tally it");
    val->add_option("cdag", v_cdag, "CDAG file")->required()->check(CLI::ExistingFile);
    val->add_option("trace", v_trace, "trace file (rbw or prbw)")->check(CLI::ExistingFile);
    val->add_option("--S", v_S, "red pebbles (sequential games)")->check(CLI::PositiveNumber);
    val->add_option("--hier", v_hier, "hierarchy file (P-RBW traces)")->check(CLI::ExistingFile);
    val->add_option("--game", v_game, "rb or rbw");
    val->add_option("--convention", v_conv, "structure check only: hk or rbw");
    add_common(val);

    // play
    std::string p_cdag, p_trace_out, p_game = "rbw";
    std::int64_t p_S = 0;
    auto* play = app.add_subcommand("play", "heuristic game (greedy order, furthest-next-use eviction)");
    play->add_option("cdag", p_cdag, "CDAG file")->required()->check(CLI::ExistingFile);
    play->add_option("--S", p_S, "red pebbles")->required()->check(CLI::PositiveNumber);
    play->add_option("--game", p_game, "rb or rbw");
    play->add_option("--trace-out", p_trace_out, "write the trace here");
    add_common(play);

    // oracle
    std::string o_cdag, o_trace_out, o_game = "rbw";
    std::int64_t o_S = 0;
    std::size_t o_budget = default_oracle_budget;
    auto* orc = app.add_subcommand("oracle", "exact optimum by exhaustive search (<= 64 vertices)");
    orc->add_option("cdag", o_cdag, "CDAG file")->required()->check(CLI::ExistingFile);
    orc->add_option("--S", o_S, "red pebbles")->required()->check(CLI::PositiveNumber);
    orc->add_option("--game", o_game, "rb or rbw");
    orc->add_option("--budget", o_budget, "state budget")->check(CLI::PositiveNumber);
    orc->add_option("--trace-out", o_trace_out, "write an optimal trace here");
    add_common(orc);

    // bound
    std::string b_cdag, b_method, b_game = "rbw", b_anchors, b_partition, b_alg;
    std::int64_t b_S = 0, b_umax = 0, b_P = 1;
    std::uint64_t b_budget = default_umax_budget;
    AlgorithmParams b_p;
    auto* bnd = app.add_subcommand("bound", "lower bound on I/O");
    bnd->add_option("cdag", b_cdag, "CDAG file (not needed for analytic)")->check(CLI::ExistingFile);
    bnd->add_option("--method", b_method, "spart, mincut, mincut-divide, analytic, oracle")
        ->required()
        ->check(CLI::IsMember({"spart", "mincut", "mincut-divide", "analytic", "oracle"}));
    bnd->add_option("--game", b_game, "rb or rbw");
    bnd->add_option("--S", b_S, "red pebbles / fast memory words")->required()->check(CLI::PositiveNumber);
    bnd->add_option("--umax", b_umax, "known U(C,2S); brute-forced when absent")->check(CLI::PositiveNumber);
    bnd->add_option("--budget", b_budget, "search budget (umax subsets or oracle states)")->check(CLI::PositiveNumber);
    bnd->add_option("--anchors", b_anchors, "annotation file whose anchor records pick wavefront anchors")
        ->check(CLI::ExistingFile);
    bnd->add_option("--partition", b_partition, "annotation file whose slab records give the blocks")
        ->check(CLI::ExistingFile);
    bnd->add_option("--P", b_P, "processors (analytic)")->check(CLI::PositiveNumber);
    add_alg(bnd, b_alg, b_p, false);
    add_common(bnd);

    // analyze
    std::string a_alg, a_machine, a_level;
    AlgorithmParams a_p;
    auto* ana = app.add_subcommand("analyze", "machine-balance verdicts for a solver on a machine");
    add_alg(ana, a_alg, a_p, true);
    ana->add_option("--machine", a_machine, "machine file or name (bgq, xt5)")->required();
    ana->add_option("--level", a_level, "cache level name (default: first listed)");
    add_common(ana);

    // report
    std::vector<std::string> r_machines{"bgq", "xt5"};
    auto* rep = app.add_subcommand("report", "balance numbers for the solver families on the listed machines");
    rep->add_option("--machine", r_machines, "machine files or names");
    add_common(rep);

    int code = ok;
    bool payload = false;  // stdout already carries a CDAG
    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e, out, err);
        } catch (const CLI::CallForAllHelp& e) {
            return app.exit(e, out, err);
        } catch (const CLI::CallForVersion& e) {
            return app.exit(e, out, err);
        } catch (const CLI::ParseError& e) {
            app.exit(e, out, err);
            return usage;
        }

        if (gen->parsed()) {
            g_p.algorithm = detail::algorithm_arg(g_alg);
            const auto a = generate(g_p);
            o.kv("alg", to_string(g_p.algorithm));
            o.kv("vertices", static_cast<std::int64_t>(a.cdag.size()));
            o.kv("edges", static_cast<std::int64_t>(a.cdag.edge_count()));
            o.kv("inputs", static_cast<std::int64_t>(a.cdag.input_count()));
            o.kv("outputs", static_cast<std::int64_t>(a.cdag.output_count()));
            o.kv("slabs", static_cast<std::int64_t>(a.slabs.size()));
            std::string anchors;
            for (VertexId v : a.anchors) anchors += (anchors.empty() ? "" : " ") + std::to_string(v);
            o.kv("anchors", anchors);
            o.human(std::string(to_string(g_p.algorithm)) + ": " + std::to_string(a.cdag.size()) + " vertices, " +
                    std::to_string(a.cdag.edge_count()) + " edges, " + std::to_string(a.cdag.input_count()) +
                    " inputs, " + std::to_string(a.cdag.output_count()) + " outputs");
            if (!a.anchors.empty()) o.human("anchors: " + anchors);
            if (g_out.empty()) {
                out << to_text(a.cdag);
                if (common.kv)
                    for (const auto& line : o.kv_lines()) err << line << '\n';
                o = Output{};
                payload = true;
            } else {
                std::ostringstream ann;
                write_annotations(ann, a);
                detail::write_file(g_out + ".cdag", to_text(a.cdag));
                detail::write_file(g_out + ".ann", ann.str());
                o.kv("cdag_file", g_out + ".cdag");
                o.kv("annotation_file", g_out + ".ann");
                o.human("wrote " + g_out + ".cdag and " + g_out + ".ann");
            }
        } else if (val->parsed()) {
            const Cdag g = detail::load_cdag(v_cdag, rec);
            if (v_trace.empty()) {
                const Convention conv = v_conv == "hk" ? Convention::hk : Convention::rbw;
                if (!v_conv.empty() && v_conv != "hk" && v_conv != "rbw")
                    throw UsageError("unknown convention '" + v_conv + "' (hk, rbw)");
                const auto problems = validate(g, conv);
                o.kv("vertices", static_cast<std::int64_t>(g.size()));
                o.kv("violations", static_cast<std::int64_t>(problems.size()));
                for (std::size_t i = 0; i < problems.size(); ++i)
                    o.kv("violation." + std::to_string(i), problems[i].kind + ": " + problems[i].message);
                o.human(problems.empty() ? "valid" : std::to_string(problems.size()) + " violation(s)");
                for (const auto& p : problems) o.human("  " + p.kind + ": " + p.message);
                if (!problems.empty()) code = domain_failure;
            } else {
                const std::string text = detail::slurp(v_trace, rec);
                if (detail::is_prbw_trace(text) || !v_hier.empty()) {
                    HierarchyConfig c;
                    if (!v_hier.empty()) c = hierarchy_from_text(detail::slurp(v_hier, rec));
                    else if (v_S > 0) c = HierarchyConfig::sequential(v_S);
                    else throw UsageError("P-RBW trace needs --hier or --S");
                    const auto trace = detail::is_prbw_trace(text) ? prbw_trace_from_text(text)
                                                                   : to_prbw(trace_from_text(text));
                    detail::emit_prbw_tally(o, validate_prbw(g, c, trace), c);
                } else {
                    if (v_S <= 0) throw UsageError("sequential trace needs --S");
                    const Game game = detail::game_arg(v_game);
                    o.kv("game", to_string(game));
                    o.kv("S", v_S);
                    detail::emit_tally(o, validate_game(g, v_S, game, trace_from_text(text)));
                }
            }
        } else if (play->parsed()) {
            const Cdag g = detail::load_cdag(p_cdag, rec);
            const Game game = detail::game_arg(p_game);
            const auto hg = heuristic_game(g, p_S);
            const IoTally t = validate_game(g, p_S, game, hg.trace);
            o.kv("game", to_string(game));
            o.kv("S", p_S);
            detail::emit_tally(o, t);
            if (!p_trace_out.empty()) {
                detail::write_file(p_trace_out, trace_to_text(hg.trace));
                o.kv("trace_file", p_trace_out);
            }
        } else if (orc->parsed()) {
            const Cdag g = detail::load_cdag(o_cdag, rec);
            const Game game = detail::game_arg(o_game);
            const auto res = optimal_io(g, o_S, game, o_budget);
            o.kv("game", to_string(game));
            o.kv("S", o_S);
            o.kv("optimum", res.optimum);
            o.kv("states", static_cast<std::int64_t>(res.states));
            o.human("optimal I/O " + std::to_string(res.optimum) + " (" + to_string(game) + ", S=" +
                    std::to_string(o_S) + ", " + std::to_string(res.states) + " states)");
            if (!o_trace_out.empty()) {
                detail::write_file(o_trace_out, trace_to_text(res.trace));
                o.kv("trace_file", o_trace_out);
            }
        } else if (bnd->parsed()) {
            const Game game = detail::game_arg(b_game);
            if (b_method == "analytic") {
                if (b_alg.empty()) throw UsageError("analytic bound needs --alg");
                b_p.algorithm = detail::algorithm_arg(b_alg);
                detail::emit_report(o, analytic_lb(b_p, b_P, b_S));
            } else {
                if (b_cdag.empty()) throw UsageError("--method " + b_method + " needs a CDAG file");
                const Cdag g = detail::load_cdag(b_cdag, rec);
                require_valid(g, game == Game::rb ? Convention::hk : Convention::rbw);
                std::optional<std::vector<VertexId>> anchors;
                if (!b_anchors.empty()) anchors = annotations_from_text(detail::slurp(b_anchors, rec)).anchors;
                BoundReport r;
                if (b_method == "spart") {
                    std::int64_t umax = b_umax;
                    if (umax == 0) {
                        const auto u = umax_bruteforce(g, 2 * b_S, b_budget);
                        umax = u.umax;
                        o.kv("umax.examined", static_cast<std::int64_t>(u.examined));
                    }
                    r = spart_lower_bound(g, b_S, umax);
                } else if (b_method == "mincut") {
                    VertexSet inner;
                    for (std::size_t v = 0; v < g.size(); ++v) {
                        const auto id = static_cast<VertexId>(v);
                        if (!g.is_input(id) && !g.is_output(id)) inner.insert(id);
                    }
                    const auto sub = induced_subcdag(g, inner);
                    std::optional<std::vector<VertexId>> local;
                    if (anchors) {
                        local.emplace();
                        for (VertexId a : *anchors)
                            if (const VertexId l = sub.local_of(a); l >= 0) local->push_back(l);
                        if (local->empty()) local.reset();
                    }
                    r = transfer_bound(mincut_lower_bound(sub.cdag, b_S, local), TransferRule::deletion,
                                       static_cast<std::int64_t>(g.input_count()), outputs_not_inputs(g));
                } else if (b_method == "mincut-divide") {
                    if (b_partition.empty()) throw UsageError("mincut-divide needs --partition");
                    const auto part = detail::partition_from(annotations_from_text(detail::slurp(b_partition, rec)), g);
                    r = mincut_divide_bound(g, part, b_S, anchors.value_or(std::vector<VertexId>{}));
                } else {
                    const auto res = optimal_io(g, b_S, game, b_budget == default_umax_budget ? default_oracle_budget
                                                                                              : b_budget);
                    r = res.report(game, b_S);
                }
                if (r.find_param("game").empty()) r.param("game", to_string(game));
                detail::emit_report(o, r);
            }
        } else if (ana->parsed()) {
            a_p.algorithm = detail::algorithm_arg(a_alg);
            const MachineSpec m = detail::load_machine(a_machine, rec);
            if (!a_level.empty() && !m.cache(a_level))
                throw UsageError("machine '" + m.name + "' has no cache level '" + a_level + "'");
            detail::emit_analysis(o, analyze(a_p, m, a_level), "analysis");
        } else if (rep->parsed()) {
            for (const auto& spec : r_machines) {
                const MachineSpec m = detail::load_machine(spec, rec);
                std::vector<std::pair<std::string, AlgorithmParams>> runs;
                runs.push_back({"cg", {Algorithm::cg, 1000, 3, 1, 1, 0}});
                for (std::int64_t mm : {1, 10, 100})
                    runs.push_back({"gmres_m" + std::to_string(mm), {Algorithm::gmres, 1000, 3, 1, mm, 0}});
                runs.push_back({"jacobi", {Algorithm::jacobi, 1000, 3, 1, 1, 0}});
                for (const auto& [name, params] : runs) {
                    detail::emit_analysis(o, analyze(params, m), m.name + "." + name);
                    o.human("");
                }
            }
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        code = usage;
    } catch (const BudgetExhausted& e) {
        o.kv("budget_exhausted", e.what());
        if (e.best_upper()) o.kv("best_upper", *e.best_upper());
        if (e.best_lower()) o.kv("best_lower", *e.best_lower());
        err << "budget exhausted: " << e.what() << '\n';
        code = budget;
    } catch (const Error& e) {
        o.kv("error", e.what());
        err << "error: " << e.what() << '\n';
        code = domain_failure;
    }

    if (common.kv)
        for (const auto& line : o.kv_lines()) out << line << '\n';
    else
        for (const auto& line : o.human_lines()) out << line << '\n';
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (!common.kv && !payload && code != usage) out << "wall time " << BoundValue::real(ms).decimal() << " ms\n";

    if (!common.record.empty()) {
        rec.outputs = o.kv_lines();
        rec.exit_code = code;
        rec.wall_ms = ms;
        try {
            rec.append_to(common.record);
        } catch (const Error& e) {
            err << "error: " << e.what() << '\n';
            if (code == ok) code = domain_failure;
        }
    }
    return code;
}

}  // namespace iolb::cli
