#include "echosculpt/pulse_sequence.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "echosculpt/exact_sum.hpp"
#include "echosculpt/io.hpp"

namespace echosculpt {

double PulseSequence::total_time() const {
    double t = 0.0;
    for (const auto& s : segments) t += s.delay_s;
    return t;
}

int PulseSequence::pulse_count() const {
    int n = 0;
    for (const auto& s : segments) n += static_cast<int>(s.pulses_after.size());
    return n;
}

std::vector<int> PulseSequence::per_spin_pulse_count() const {
    std::vector<int> counts(q, 0);
    for (const auto& s : segments)
        for (int spin : s.pulses_after) ++counts.at(spin);
    return counts;
}

PulseSequence emit_pulses(const Schedule& schedule) {
    const int q = schedule.q;
    PulseSequence seq;
    seq.q = q;
    seq.metadata.subset_optimal_only = schedule.subset_optimal_only;
    if (schedule.columns.empty()) return seq;

    // Pulses demanded before the first delay go into a zero-delay segment.
    std::vector<int> leading;
    for (int i = 0; i < q; ++i)
        if (schedule.columns.front()[i] != 1) leading.push_back(i);
    if (!leading.empty()) seq.segments.push_back({0.0, std::move(leading)});

    const int n = schedule.column_count();
    for (int m = 0; m < n; ++m) {
        PulseSegment seg;
        seg.delay_s = schedule.times[m];
        for (int i = 0; i < q; ++i) {
            const std::int8_t next = m + 1 < n ? schedule.columns[m + 1][i] : std::int8_t{1};
            if (schedule.columns[m][i] != next) seg.pulses_after.push_back(i);
        }
        seq.segments.push_back(std::move(seg));
    }
    return seq;
}

std::vector<double> simulate_phases(const SpinSystem& sys, const PulseSequence& seq) {
    const int q = sys.spin_count();
    if (seq.q != q)
        throw std::invalid_argument("simulate_phases: sequence spin count mismatch");
    for (int c : seq.per_spin_pulse_count())
        if (c % 2 != 0)
            throw std::invalid_argument(
                "simulate_phases: odd pulse parity, not a valid echo network");

    const int r = sys.interaction_count();
    std::vector<ExactSum> acc(r);
    std::vector<int> sign(q, 1);
    for (const auto& seg : seq.segments) {
        if (!(seg.delay_s >= 0.0) || !std::isfinite(seg.delay_s))
            throw std::invalid_argument("simulate_phases: delays must be nonnegative");
        if (seg.delay_s != 0.0) {
            for (int i = 0; i < q; ++i)
                acc[i].add(sign[i] > 0 ? seg.delay_s : -seg.delay_s);
            int row = q;
            for (int i = 0; i < q; ++i)
                for (int j = i + 1; j < q; ++j, ++row)
                    acc[row].add(sign[i] * sign[j] > 0 ? seg.delay_s : -seg.delay_s);
        }
        for (int spin : seg.pulses_after) {
            if (spin < 0 || spin >= q)
                throw std::invalid_argument("simulate_phases: pulse spin out of range");
            sign[spin] = -sign[spin];
        }
    }

    std::vector<double> phases(r);
    for (int row = 0; row < r; ++row)
        phases[row] = interaction_frequency(sys, row_interaction(q, row)) * acc[row].value();
    return phases;
}

PulseSequence round_times(PulseSequence seq, double resolution_s) {
    if (!(resolution_s > 0.0))
        throw std::invalid_argument("round_times: resolution must be positive");
    for (auto& seg : seq.segments)
        seg.delay_s = resolution_s * std::round(seg.delay_s / resolution_s);
    return seq;
}

std::string serialize_sequence(const PulseSequence& seq) {
    std::string out = "{\n";
    out += "  \"total_time_s\": " + format_double(seq.total_time()) + ",\n";
    out += "  \"segments\": [";
    for (std::size_t m = 0; m < seq.segments.size(); ++m) {
        if (m) out += ",";
        out += "\n    {\"delay_s\": " + format_double(seq.segments[m].delay_s) +
               ", \"pulses_after\": [";
        for (std::size_t p = 0; p < seq.segments[m].pulses_after.size(); ++p) {
            if (p) out += ", ";
            out += std::to_string(seq.segments[m].pulses_after[p]);
        }
        out += "]}";
    }
    out += seq.segments.empty() ? "],\n" : "\n  ],\n";
    out += "  \"metadata\": {\"spins\": " + std::to_string(seq.q) + ", \"mode\": \"" +
           seq.metadata.mode + "\", \"provenance\": \"" + seq.metadata.provenance +
           "\", \"subset_optimal_only\": " +
           (seq.metadata.subset_optimal_only ? "true" : "false");
    if (!seq.metadata.z_phase_post_rotations.empty()) {
        out += ", \"z_phase_post_rotations\": [";
        for (std::size_t i = 0; i < seq.metadata.z_phase_post_rotations.size(); ++i) {
            if (i) out += ", ";
            out += "[" + std::to_string(seq.metadata.z_phase_post_rotations[i].first) + ", " +
                   format_double(seq.metadata.z_phase_post_rotations[i].second) + "]";
        }
        out += "]";
    }
    out += "}\n}\n";
    return out;
}

PulseSequence parse_sequence(const std::string& json_text) {
    nlohmann::json doc = nlohmann::json::parse(json_text, nullptr, false);
    if (doc.is_discarded()) throw ParseError("malformed JSON in sequence file");
    if (!doc.is_object() || !doc.contains("segments") || !doc.contains("metadata") ||
        !doc["metadata"].contains("spins"))
        throw ParseError("sequence file must contain 'segments' and metadata 'spins'");

    PulseSequence seq;
    seq.q = doc["metadata"]["spins"].get<int>();
    if (seq.q < 1) throw ParseError("sequence 'spins' must be at least 1");
    for (const auto& s : doc["segments"]) {
        PulseSegment seg;
        seg.delay_s = s.at("delay_s").get<double>();
        if (!std::isfinite(seg.delay_s) || seg.delay_s < 0.0)
            throw ParseError("sequence delays must be finite and nonnegative");
        if (s.contains("pulses_after"))
            for (const auto& p : s["pulses_after"]) {
                const int spin = p.get<int>();
                if (spin < 0 || spin >= seq.q)
                    throw ParseError("pulse spin index out of range");
                seg.pulses_after.push_back(spin);
            }
        seq.segments.push_back(std::move(seg));
    }
    if (doc.contains("metadata")) {
        const auto& md = doc["metadata"];
        seq.metadata.mode = md.value("mode", "");
        seq.metadata.provenance = md.value("provenance", "");
        seq.metadata.subset_optimal_only = md.value("subset_optimal_only", false);
        if (md.contains("z_phase_post_rotations"))
            for (const auto& z : md["z_phase_post_rotations"])
                seq.metadata.z_phase_post_rotations.emplace_back(z.at(0).get<int>(),
                                                                 z.at(1).get<double>());
    }
    return seq;
}

PulseSequence load_sequence(const std::string& path) {
    return parse_sequence(read_text_file(path));
}

void save_sequence(const std::string& path, const PulseSequence& seq) {
    write_text_file(path, serialize_sequence(seq));
}

}  // namespace echosculpt
