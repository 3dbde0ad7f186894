#include "caprise/trajectory_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "caprise/error.hpp"

namespace caprise {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,h,hdot\n";
  for (const auto& s : traj.samples) {
    out << format_double(s.t) << ',' << format_double(s.h) << ',' << format_double(s.v) << '\n';
  }
}

void write_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  write_csv(out, traj);
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

Trajectory read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Io, "empty trajectory file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,h,hdot") throw Error(ErrorKind::Io, "expected header 't,h,hdot', got '" + line + "'");
  Trajectory traj;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    double v[3];
    char sep;
    if (!(row >> v[0] >> sep) || sep != ',' || !(row >> v[1] >> sep) || sep != ',' || !(row >> v[2])) {
      throw Error(ErrorKind::Io, "malformed row at line " + std::to_string(lineno));
    }
    if (!traj.samples.empty() && !(v[0] > traj.samples.back().t)) {
      throw Error(ErrorKind::Io, "time not strictly increasing at line " + std::to_string(lineno));
    }
    traj.samples.push_back({v[0], v[1], v[2]});
  }
  return traj;
}

Trajectory read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  return read_csv(in);
}

}  // namespace caprise
