#pragma once

#include <string>
#include <vector>

#include "oscat/geometry.hpp"

namespace oscat {

/// One batch run: every field mirrors a CLI flag and a JSON config key.
struct RunConfig {
    std::string domain = "square";  // built-in name or path to a JSON file
    std::vector<int> sizes = {64, 128, 256};
    double margin = 4.0;
    double theta = 0.5;
    std::vector<cplx> wave_numbers = {cplx(2, 1)};
    std::vector<double> k_moduli = {2, 4, 8, 16, 32};
    double k_phase = 0.7853981633974483;  // pi/4
    double p = 4.0;
    double epsilon = 0.5;
    int trials = 16;
    unsigned seed = 0;
    std::string out_dir = ".";
    std::string u_kind = "gaussian";  // gaussian | bump | noise
    double tol_identity = 0.02;
    double slope_min = -1.3;
    double slope_max = -0.8;
};

/// "a+bi" with a required sign before the imaginary part, e.g. "2+1i",
/// "-0.5-2e3i", "0+0i".
cplx parse_complex(const std::string& text);

std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

/// Built-in name, or a JSON file {"vertices": [[x, y], ...]}.
DomainSpec resolve_domain(const std::string& source);

/// Overlay the keys present in a JSON config file onto defaults.
RunConfig load_config_json(const std::string& path,
                           const RunConfig& base = {});

/// Throws std::invalid_argument on any out-of-contract field.
void validate_config(const RunConfig& cfg);

}  // namespace oscat
