#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "subriem/hypo/hypo.hpp"
#include "subriem/spectra/spectrum.hpp"

namespace subriem::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kFailure = 2, kExpectation = 3 };

struct JobConfig {
    std::string command;  // validate compose spectrum hypo ccdist ccprops clifford dimfit
    std::vector<std::string> inputs;

    int cutoff_tau = 10;
    int cutoff_kappa = 10;
    double cutoff_alpha = 10.0;
    std::optional<double> cutoff_gamma;  // defaults to cutoff_alpha
    double tol = 1e-9;
    std::string out;                     // empty: write to the output stream
    std::uint64_t seed = 0;
    std::string expect;                  // "hypoelliptic" or empty

    // hypo
    bool dirac = false;
    std::optional<double> theta;
    // compose / ccdist
    std::vector<double> x;
    std::vector<double> y;
    int segments = 32;
    int multistart = 8;
    // ccprops
    int samples = 4;
    // clifford
    int d = 0;
    std::vector<double> lambdas;
    // spectrum / dimfit
    std::string svg;
    double t_lo = 5.0;
    double t_hi = 40.0;
    bool torus_only = false;
    std::vector<double> zeta;
};

/// Runs one job. Artifacts go to config.out (written atomically) or to `out`;
/// diagnostics go to `err`. Returns an ExitCode.
int run(const JobConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a JobConfig and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// {"m":..,"lambdas":[..],"d":..,"delta":[..]}; delta defaults to all +1.
spectra::NilmanifoldSpec parse_nilmanifold(const std::string& json_text);

/// {"algebra": <path or inline object>, "p": .., "A": [{"j","k","re","im"}]}, indices 1-based.
/// Relative algebra paths resolve against base_dir.
hypo::LaplacianSpec parse_laplacian(const std::string& json_text, const std::filesystem::path& base_dir);

/// Nilmanifold spec from a step-2 algebra file: uses the Levi form of layer-2 index nu.
spectra::NilmanifoldSpec nilmanifold_from_algebra(const carnot::GradedLieAlgebra& alg, int nu = 0);

/// Writes text to path via a temporary file and rename.
void write_atomic(const std::filesystem::path& path, const std::string& text);

} // namespace subriem::cli
