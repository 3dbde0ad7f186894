#pragma once

#include <iosfwd>
#include <string>

#include "caprise/trajectory.hpp"

namespace caprise {

/// `t,h,hdot` header, one sample per line, 17 significant digits, LF endings.
void write_csv(std::ostream& out, const Trajectory& traj);
void write_csv(const std::string& path, const Trajectory& traj);

/// Parses the CSV written by write_csv. Throws Io on malformed input.
Trajectory read_csv(std::istream& in);
Trajectory read_csv(const std::string& path);

/// Shortest-form double formatting used by every text export ("%.17g").
std::string format_double(double x);

}  // namespace caprise
