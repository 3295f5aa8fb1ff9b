#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtmm/group.hpp"

namespace gtmm {

inline constexpr const char* kToolVersion = "0.1.0";

// 12 significant digits, fixed across platforms; "inf" for infinities.
std::string format_real(double v);

// FNV-1a 64 over the canonical input description, rendered as hex.
std::string hex_digest(const std::string& payload);

// One line-delimited record per command invocation. Rendering is
// deterministic: identical inputs, seed and version give identical bytes.
struct ResultRecord {
    std::string command;
    std::string subject;            // group spec or construction name
    std::string inputs_digest;
    std::optional<uint64_t> seed;
    std::string version = kToolVersion;
    std::vector<std::pair<std::string, std::string>> outputs;

    std::string render() const;
    static ResultRecord parse(const std::string& line);
};

// Set files: first line is the group spec, then blocks "S:", "T:", "U:" with
// one comma-separated element encoding per line.
struct SetsFile {
    GroupSpec spec;
    std::array<std::vector<Element>, 3> sets;
};

SetsFile parse_sets_file(std::istream& in);
SetsFile load_sets_file(const std::string& path);

std::string render_element(const Element& e);
Element parse_element(const std::string& line);

}  // namespace gtmm
