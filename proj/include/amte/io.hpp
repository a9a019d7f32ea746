#pragma once

#include "amte/types.hpp"

#include <iosfwd>
#include <string>

namespace amte {

void write_profile_csv(std::ostream& os, const RadialProfile& p);
void write_profile_csv(const std::string& path, const RadialProfile& p);
RadialProfile read_profile_csv(std::istream& is, int n = 1);
RadialProfile read_profile_csv(const std::string& path, int n = 1);

void write_curve_csv(std::ostream& os, const PhaseCurve& c);
void write_curve_csv(const std::string& path, const PhaseCurve& c);
/// Parameters are not stored in the file; the caller fills them in if known.
PhaseCurve read_curve_csv(std::istream& is);
PhaseCurve read_curve_csv(const std::string& path);

/// Shortest decimal form that round-trips a double.
std::string format_double(double x);

}  // namespace amte
