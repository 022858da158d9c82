#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "iolb/cdag_io.hpp"
#include "iolb/error.hpp"
#include "iolb/rational.hpp"

namespace iolb {

struct CacheLevel {
    std::string name;
    std::int64_t words = 0;
    std::int64_t shared_by = 1;
};

struct MachineSpec {
    std::string name;
    std::int64_t nodes = 0;
    std::int64_t cores = 0;  // per node
    std::int64_t mem_words = 0;
    std::vector<CacheLevel> caches;
    Rational vertical_balance{0};    // words/FLOP
    Rational horizontal_balance{0};  // words/FLOP
    // Optional raw figures: vertical bandwidth (words/s per node) and FLOP/s per core.
    std::optional<double> raw_bandwidth;
    std::optional<double> raw_flops;

    [[nodiscard]] const CacheLevel* cache(const std::string& level) const {
        for (const auto& c : caches)
            if (c.name == level) return &c;
        return nullptr;
    }
};

// machine 1 / name <s> / nodes <int> / cores <int> / mem_words <int>
// / cache <name> <words> shared <int> / vbal <dec> / hbal <dec> / raw <bw> <flops>
inline MachineSpec read_machine(std::istream& is) {
    MachineSpec m;
    std::string line;
    std::size_t lineno = 0;
    bool header = false, have_v = false, have_h = false;
    while (std::getline(is, line)) {
        ++lineno;
        if (detail::is_blank_or_comment(line)) continue;
        auto tok = detail::split_ws(line);
        if (!header) {
            if (tok.size() != 2 || tok[0] != "machine" || tok[1] != "1")
                throw ParseError("expected header 'machine 1'", lineno);
            header = true;
            continue;
        }
        auto num = [&](std::size_t k) { return detail::parse_int_token(tok[k], lineno); };
        auto rat = [&](std::size_t k) {
            try {
                return Rational::parse(tok[k]);
            } catch (const Error& e) {
                throw ParseError(e.what(), lineno);
            }
        };
        auto real = [&](std::size_t k) {
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(tok[k], &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok[k].size() || !(v > 0)) throw ParseError("expected a positive number, got '" + tok[k] + "'", lineno);
            return v;
        };
        const auto& k = tok[0];
        if (k == "name" && tok.size() == 2) m.name = tok[1];
        else if (k == "nodes" && tok.size() == 2) m.nodes = num(1);
        else if (k == "cores" && tok.size() == 2) m.cores = num(1);
        else if (k == "mem_words" && tok.size() == 2) m.mem_words = num(1);
        else if (k == "cache" && tok.size() == 5 && tok[3] == "shared") m.caches.push_back({tok[1], num(2), num(4)});
        else if (k == "vbal" && tok.size() == 2) m.vertical_balance = rat(1), have_v = true;
        else if (k == "hbal" && tok.size() == 2) m.horizontal_balance = rat(1), have_h = true;
        else if (k == "raw" && tok.size() == 3) m.raw_bandwidth = real(1), m.raw_flops = real(2);
        else throw ParseError("unknown or malformed record '" + k + "'", lineno);
    }
    if (!header) throw ParseError("missing header 'machine 1'", lineno);
    if (m.name.empty()) throw ParseError("machine needs a name", lineno);
    if (m.nodes < 1 || m.cores < 1) throw ParseError("nodes and cores must be >= 1", lineno);
    if (!have_v || !have_h) throw ParseError("machine needs both vbal and hbal", lineno);
    if (m.vertical_balance <= Rational(0) || m.horizontal_balance <= Rational(0))
        throw ParseError("balances must be > 0", lineno);
    for (const auto& c : m.caches)
        if (c.words < 1 || c.shared_by < 1) throw ParseError("cache " + c.name + " needs words and shared >= 1", lineno);
    if (m.raw_bandwidth) {
        const double derived = *m.raw_bandwidth / (static_cast<double>(m.cores) * *m.raw_flops);
        const double stated = m.vertical_balance.to_double();
        if (std::abs(derived - stated) > 0.01 * stated)
            throw ParseError("raw bandwidth/FLOP gives balance " + std::to_string(derived) + ", stated " +
                                 m.vertical_balance.decimal_str(),
                             lineno);
    }
    return m;
}

inline MachineSpec machine_from_text(const std::string& text) {
    std::istringstream is(text);
    return read_machine(is);
}

inline MachineSpec read_machine_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open machine file " + path);
    return read_machine(is);
}

inline void write_machine(std::ostream& os, const MachineSpec& m) {
    os << "machine 1\nname " << m.name << "\nnodes " << m.nodes << "\ncores " << m.cores << "\nmem_words "
       << m.mem_words << '\n';
    for (const auto& c : m.caches) os << "cache " << c.name << ' ' << c.words << " shared " << c.shared_by << '\n';
    os << "vbal " << m.vertical_balance.decimal_str() << "\nhbal " << m.horizontal_balance.decimal_str() << '\n';
    if (m.raw_bandwidth) os << "raw " << *m.raw_bandwidth << ' ' << *m.raw_flops << '\n';
}

}  // namespace iolb
