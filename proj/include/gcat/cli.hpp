#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gcat::cli {

enum ExitCode : int { kOk = 0, kSuiteFailure = 1, kConfigError = 2 };

struct RunConfig {
    std::string family;  // family key, or "all" for verify/report
    std::optional<double> mu, nu;
    std::optional<std::array<int, 2>> grid;
    std::optional<double> tol;
    std::string mode = "dual";  // dual | central
    std::string out;
    bool json = false;
    bool markers = false;
    std::optional<std::array<int, 3>> proj;
    std::string suite;    // empty: every applicable suite
    std::string fixture;  // lift only
};

// Throws ConfigError naming the offending field.
void validate(const RunConfig& cfg, const std::string& command);

std::array<int, 2> parse_grid(const std::string& s);
std::array<int, 3> parse_proj(const std::string& s);

// Stable text identifying everything that affects output; hashed into headers.
std::string canonical(const RunConfig& cfg, const std::string& command);

int cmd_list(const RunConfig& cfg, std::ostream& out);
int cmd_sample(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_lift(const RunConfig& cfg, std::ostream& out);
int cmd_report(const RunConfig& cfg, std::ostream& out);

// Full command line entry point; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gcat::cli
