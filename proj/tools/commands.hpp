#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "report.hpp"

namespace strichartz::cli {

enum ExitCode { kPass = 0, kCheckFailed = 1, kUsage = 2 };

struct VerifyConfig {
    std::vector<std::string> cases{"schr1", "schr2", "wave3", "wave2"};
    double tol = -1.0;  // < 0 keeps the per-case tolerance
    bool fft_check = false;
    std::string out;
};

struct MeasureConfig {
    std::vector<std::string> cases{"parabolic_pair", "parabolic_triple", "cone3_pair", "cone2_pair", "cone2_triple"};
    /// "tau,xi_1,...,xi_n"; needs exactly one case.
    std::vector<std::string> points;
    bool sweep = false;
    int sweep_points = 20;
    std::uint64_t seed = 7;
    double tol = 2e-2;
    std::string out;
};

struct MaximizeConfig {
    std::vector<std::string> cases{"schr1"};
    std::vector<std::uint64_t> seeds{1, 2, 3};
    int iters = 500;
    std::string method = "lens";
    int degree = 0;
    double tol = 5e-3;
    double fit_tol = 1e-3;
    std::string out_dir = ".";
    int workers = 1;
};

struct FeqConfig {
    std::vector<std::string> kinds{"schr1", "schr2", "wave2", "wave3"};
    std::vector<std::string> fixtures{"exponential", "nonmember", "line_pair", "maps"};
    int samples = 10000;
    std::uint64_t seed = 11;
    std::string out;
};

struct OrbitConfig {
    std::string equation = "schrodinger";
    int dim = 1;
    std::string a;  // JSON params; empty selects a default pair of related maximizers
    std::string b;
    double tol = 1e-8;
    std::string out;
};

struct QuotientConfig {
    std::string equation = "schrodinger";
    int dim = 1;
    int points = 2048;
    double extent = 20.0;
    int slices = 512;
    double half_width = 6.0;
    std::string data = "maximizer";
    std::uint64_t seed = 1;
    double boundary = 1e-3;
    std::string out;
};

int cmd_verify_constants(const VerifyConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_measure_conv(const MeasureConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_maximize(const MaximizeConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_feq_check(const FeqConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_orbit(const OrbitConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_quotient(const QuotientConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line (argv[0] included) to exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace strichartz::cli
