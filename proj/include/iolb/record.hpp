#pragma once

#include <openssl/evp.h>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "iolb/error.hpp"

namespace iolb {

inline constexpr const char* tool_version = "0.1.0";

inline std::string sha256_hex(const std::string& data) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
        throw Error("sha256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// One reproducible run: what was asked, which bytes went in, what came out.
struct RunRecord {
    std::vector<std::string> argv;
    std::vector<std::pair<std::string, std::string>> inputs;  // path, sha256
    std::vector<std::string> outputs;                         // key=value lines
    double wall_ms = 0;
    int exit_code = 0;

    void add_input(const std::string& path) { inputs.emplace_back(path, sha256_hex(read_file(path))); }

    [[nodiscard]] std::string str() const {
        std::ostringstream os;
        os << "record 1\nversion " << tool_version << "\ncommand";
        for (const auto& a : argv) os << ' ' << a;
        os << '\n';
        for (const auto& [path, digest] : inputs) os << "input " << path << " sha256=" << digest << '\n';
        for (const auto& o : outputs) os << "output " << o << '\n';
        os << "exit " << exit_code << "\nwall_ms " << std::fixed << std::setprecision(3) << wall_ms << "\nend\n";
        return os.str();
    }

    // Records only ever append.
    void append_to(const std::string& path) const {
        std::ofstream out(path, std::ios::app);
        if (!out) throw Error("cannot open record file '" + path + "'");
        out << str();
    }
};

}  // namespace iolb
