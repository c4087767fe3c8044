#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace jonq::cli {

/// Everything that determines an output file. The output path and format
/// selection are included; the path is ignored on replay unless --out is
/// given again.
struct RunConfig {
    std::string subcommand;

    // cocycle experiments
    std::string kind = "JonquieresB";
    double alpha_angle = 0.41421356237309503;
    double freq = 0.6180339887498949;
    std::vector<double> rho;  ///< explicit radii; empty means the s-grid
    double s_min = -2.0;
    double s_max = 2.0;
    int s_steps = 41;
    std::uint64_t n = 20000;
    std::uint64_t samples = 64;
    std::uint64_t seed = 1;
    double h = 0.02;
    double energy = 0.0;
    double coupling = 0.0;               ///< Schrodinger potential 2 lambda cos(2 pi theta)
    std::vector<double> matrix{2.0, 0.0, 0.0, 0.5};  ///< Constant kind, real entries row-major
    unsigned threads = 1;

    // orbits
    std::string system = "f";  ///< f, g or linear
    double x_re = 1e-3 * 0.955336489125606;
    double x_im = 1e-3 * 0.29552020666133955;
    double y_re = 1e-3 * 0.4535961214255773;
    double y_im = 1e-3 * 0.8912073600614354;
    double dist_tol = 1e-8;

    // linearize
    int order = 12;
    double divisor_floor = 1e-8;
    double y_radius = 0.01;
    double x_radius = 0.25;

    // degree
    std::string map = "jonquieres";
    std::string specialize;  ///< "a,b" with rationals p or p/q; empty for random
    int degree_n = 8;

    std::string out;
    std::string format = "csv";

    nlohmann::ordered_json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);
};

/// Output text for a config; throws the library's errors.
std::string render(const RunConfig& config);

/// Reads the config embedded in a previously written output.
RunConfig config_from_output(const std::string& text);

/// Parses argv, runs, writes to --out or `out`, reports errors on `err`.
/// Exit code 0 on success, 2 on configuration errors, 3 on numeric or
/// domain errors.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jonq::cli
