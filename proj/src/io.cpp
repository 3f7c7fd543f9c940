#include "echosculpt/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace echosculpt {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const char* what) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ParseError(std::string("malformed JSON in ") + what);
    return doc;
}

double require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw ParseError(std::string("non-finite value in ") + what);
    return v;
}

}  // namespace

SpinSystem parse_spin_system(const std::string& json_text) {
    json doc = parse_json(json_text, "spin-system file");
    if (!doc.is_object() || !doc.contains("spins") || !doc.contains("offsets_hz"))
        throw ParseError("spin-system file must contain 'spins' and 'offsets_hz'");
    if (!doc["spins"].is_number_integer())
        throw ParseError("'spins' must be an integer");
    const int q = doc["spins"].get<int>();
    if (q < 1) throw ParseError("'spins' must be at least 1");

    const auto& offs = doc["offsets_hz"];
    if (!offs.is_array() || static_cast<int>(offs.size()) != q)
        throw ParseError("'offsets_hz' must be an array of length 'spins'");
    std::vector<double> offsets(q);
    for (int i = 0; i < q; ++i)
        offsets[i] = kTwoPi * require_finite(offs[i].get<double>(), "offsets_hz");

    std::map<std::pair<int, int>, double> couplings;
    if (doc.contains("couplings_hz")) {
        const auto& cpl = doc["couplings_hz"];
        if (!cpl.is_array()) throw ParseError("'couplings_hz' must be an array");
        for (const auto& entry : cpl) {
            if (!entry.is_array() || entry.size() != 3)
                throw ParseError("each coupling must be [i, j, hz]");
            int i = entry[0].get<int>();
            int j = entry[1].get<int>();
            if (i > j) std::swap(i, j);
            if (i < 0 || i == j || j >= q)
                throw ParseError("coupling indices out of range: (" + std::to_string(i) +
                                 "," + std::to_string(j) + ")");
            if (couplings.count({i, j}))
                throw ParseError("duplicate coupling (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
            couplings[{i, j}] = kTwoPi * require_finite(entry[2].get<double>(), "couplings_hz");
        }
    }
    return SpinSystem(q, std::move(offsets), std::move(couplings));
}

SpinSystem load_spin_system(const std::string& path) {
    return parse_spin_system(read_text_file(path));
}

std::string serialize_spin_system(const SpinSystem& sys) {
    std::string out = "{\n  \"spins\": " + std::to_string(sys.spin_count()) +
                      ",\n  \"offsets_hz\": [";
    for (int i = 0; i < sys.spin_count(); ++i) {
        if (i) out += ", ";
        out += format_double(sys.offset(i) / kTwoPi);
    }
    out += "],\n  \"couplings_hz\": [";
    bool first = true;
    for (const auto& [key, w] : sys.couplings()) {
        if (!first) out += ", ";
        first = false;
        out += "[" + std::to_string(key.first) + ", " + std::to_string(key.second) + ", " +
               format_double(w / kTwoPi) + "]";
    }
    out += "]\n}\n";
    return out;
}

double parse_phase_literal(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(c));
    if (s.empty()) throw ParseError("empty phase literal");

    double sign = 1.0;
    std::size_t pos = 0;
    if (s[0] == '+' || s[0] == '-') {
        if (s[0] == '-') sign = -1.0;
        pos = 1;
    }
    const std::size_t pi_pos = s.find("pi", pos);
    if (pi_pos == std::string::npos) {
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(s.substr(pos), &used);
        } catch (const std::exception&) {
            throw ParseError("bad phase literal '" + text + "'");
        }
        if (pos + used != s.size()) throw ParseError("bad phase literal '" + text + "'");
        return sign * v;
    }

    double numer = 1.0;
    if (pi_pos > pos) {
        std::size_t used = 0;
        try {
            numer = std::stod(s.substr(pos, pi_pos - pos), &used);
        } catch (const std::exception&) {
            throw ParseError("bad phase literal '" + text + "'");
        }
        if (used != pi_pos - pos) throw ParseError("bad phase literal '" + text + "'");
    }
    double denom = 1.0;
    std::size_t rest = pi_pos + 2;
    if (rest < s.size()) {
        if (s[rest] != '/') throw ParseError("bad phase literal '" + text + "'");
        std::size_t used = 0;
        try {
            denom = std::stod(s.substr(rest + 1), &used);
        } catch (const std::exception&) {
            throw ParseError("bad phase literal '" + text + "'");
        }
        if (rest + 1 + used != s.size() || denom == 0.0)
            throw ParseError("bad phase literal '" + text + "'");
    }
    return sign * numer * kPi / denom;
}

namespace {

std::optional<double> parse_target_value(const nlohmann::json& v, const char* what) {
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "free" || s == "Free" || s == "FREE") return std::nullopt;
        return parse_phase_literal(s);
    }
    if (v.is_number()) return require_finite(v.get<double>(), what);
    throw ParseError(std::string("phase entries must be numbers or strings in ") + what);
}

}  // namespace

PhaseTarget parse_phase_target(const std::string& json_text, int q) {
    json doc = parse_json(json_text, "target file");
    if (!doc.is_object() || !doc.contains("one_spin"))
        throw ParseError("target file must contain 'one_spin'");
    const auto& ones = doc["one_spin"];
    if (!ones.is_array() || static_cast<int>(ones.size()) != q)
        throw ParseError("'one_spin' must be an array of length 'spins'");

    PhaseTarget tgt;
    tgt.one_spin.resize(q);
    for (int i = 0; i < q; ++i) tgt.one_spin[i] = parse_target_value(ones[i], "one_spin");

    if (doc.contains("two_spin")) {
        const auto& twos = doc["two_spin"];
        if (!twos.is_array()) throw ParseError("'two_spin' must be an array");
        for (const auto& entry : twos) {
            if (!entry.is_array() || entry.size() != 3)
                throw ParseError("each two_spin entry must be [i, j, phase]");
            int i = entry[0].get<int>();
            int j = entry[1].get<int>();
            if (i > j) std::swap(i, j);
            if (i < 0 || i == j || j >= q)
                throw ParseError("two_spin indices out of range: (" + std::to_string(i) +
                                 "," + std::to_string(j) + ")");
            if (tgt.two_spin.count({i, j}))
                throw ParseError("duplicate two_spin entry (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
            tgt.two_spin[{i, j}] = parse_target_value(entry[2], "two_spin");
        }
    }
    return tgt;
}

PhaseTarget load_phase_target(const std::string& path, int q) {
    return parse_phase_target(read_text_file(path), q);
}

std::string serialize_phase_target(const PhaseTarget& tgt) {
    std::string out = "{\n  \"one_spin\": [";
    for (std::size_t i = 0; i < tgt.one_spin.size(); ++i) {
        if (i) out += ", ";
        out += tgt.one_spin[i] ? format_double(*tgt.one_spin[i]) : std::string("\"free\"");
    }
    out += "],\n  \"two_spin\": [";
    bool first = true;
    for (const auto& [key, v] : tgt.two_spin) {
        if (!first) out += ", ";
        first = false;
        out += "[" + std::to_string(key.first) + ", " + std::to_string(key.second) + ", " +
               (v ? format_double(*v) : std::string("\"free\"")) + "]";
    }
    out += "]\n}\n";
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_csv(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::uint64_t fnv1a_hash(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace echosculpt
