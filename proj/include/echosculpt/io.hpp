#pragma once

#include <string>

#include "echosculpt/model.hpp"

namespace echosculpt {

// Spin-system file: {"spins": q, "offsets_hz": [...], "couplings_hz": [[i,j,hz],...]}
// Frequencies are given in Hz on disk and stored as angular rad/s (factor 2*pi).
SpinSystem parse_spin_system(const std::string& json_text);
SpinSystem load_spin_system(const std::string& path);
std::string serialize_spin_system(const SpinSystem& sys);

// Target file: {"one_spin": [phase-or-"free" x q], "two_spin": [[i,j,phase-or-"free"],...]}
// Couplings not listed default to a constrained phase of zero. Phase literals
// accept plain numbers or "pi" with a rational multiplier: "pi/2", "-3pi/4", "2pi".
PhaseTarget parse_phase_target(const std::string& json_text, int q);
PhaseTarget load_phase_target(const std::string& path, int q);
std::string serialize_phase_target(const PhaseTarget& tgt);

double parse_phase_literal(const std::string& text);

// Shortest text that round-trips the exact double (17 significant digits).
std::string format_double(double v);
// 12 significant digits, scientific; the fixed format of every CSV column.
std::string format_csv(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

std::uint64_t fnv1a_hash(const std::string& data);

}  // namespace echosculpt
