#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace amte::cli {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kFormatVersion = "1";

enum ExitCode { ok = 0, usage_error = 1, verification_failed = 2 };

/// Exit 0 on pass, 2 on verification failure, 1 on usage or configuration errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Whitespace-separated columns with a leading '#' header line.
/// kind: phase (eta zeta), profile (r v u), bounds (eta zeta rho(eta-1) eps0 eta^2),
/// residual (histogram of log10 relative phase residuals). Unknown kinds throw UnknownKind.
void emit_plot_data(const std::string& artifact, const std::string& kind, std::ostream& os,
                    int n = 2, double theta = 0.55);

}  // namespace amte::cli
