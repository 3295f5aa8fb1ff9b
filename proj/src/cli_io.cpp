#include "gtmm/cli_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gtmm {

std::string format_real(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string hex_digest(const std::string& payload) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : payload) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string ResultRecord::render() const {
    std::ostringstream os;
    os << "command=" << command << "|subject=" << subject << "|digest=" << inputs_digest;
    if (seed) os << "|seed=" << *seed;
    os << "|version=" << version;
    for (const auto& [k, v] : outputs) os << "|" << k << "=" << v;
    return os.str();
}

ResultRecord ResultRecord::parse(const std::string& line) {
    ResultRecord r;
    r.version.clear();
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '|')) {
        size_t eq = field.find('=');
        if (eq == std::string::npos) throw InvalidSpec("bad record field: " + field);
        std::string k = field.substr(0, eq), v = field.substr(eq + 1);
        if (k == "command")
            r.command = v;
        else if (k == "subject")
            r.subject = v;
        else if (k == "digest")
            r.inputs_digest = v;
        else if (k == "seed")
            r.seed = std::stoull(v);
        else if (k == "version")
            r.version = v;
        else
            r.outputs.emplace_back(k, v);
    }
    return r;
}

std::string render_element(const Element& e) {
    std::ostringstream os;
    for (size_t i = 0; i < e.size(); i++) os << (i ? "," : "") << e[i];
    return os.str();
}

Element parse_element(const std::string& line) {
    Element e;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            e.push_back(static_cast<int32_t>(std::stol(tok)));
        } catch (const std::exception&) {
            throw InvalidSpec("bad element literal: " + line);
        }
    }
    if (e.empty()) throw InvalidSpec("empty element literal");
    return e;
}

SetsFile parse_sets_file(std::istream& in) {
    SetsFile f;
    std::string line;
    bool have_spec = false;
    int block = -1;
    while (std::getline(in, line)) {
        // strip comments and whitespace
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        if (!have_spec) {
            f.spec = GroupSpec::parse(line);
            have_spec = true;
        } else if (line == "S:") {
            block = 0;
        } else if (line == "T:") {
            block = 1;
        } else if (line == "U:") {
            block = 2;
        } else {
            if (block < 0) throw InvalidSpec("element before S:/T:/U: header: " + line);
            f.sets[static_cast<size_t>(block)].push_back(parse_element(line));
        }
    }
    if (!have_spec) throw InvalidSpec("sets file missing group spec line");
    for (const auto& s : f.sets)
        if (s.empty()) throw InvalidSpec("sets file: all of S, T, U must be nonempty");
    return f;
}

SetsFile load_sets_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidSpec("cannot open sets file: " + path);
    return parse_sets_file(in);
}

}  // namespace gtmm
