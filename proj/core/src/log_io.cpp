#include "robnav/log_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace robnav {

namespace {

std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("save_log: cannot write " + path.string());
  }
  return out;
}

class CsvReader {
 public:
  CsvReader(const std::filesystem::path& path, const std::string& expected_header,
            std::size_t n_fields)
      : path_(path.string()), n_fields_(n_fields), in_(path) {
    if (!in_) {
      throw std::runtime_error("load_log: cannot open " + path_);
    }
    std::string header;
    if (!std::getline(in_, header)) {
      throw std::runtime_error("load_log: " + path_ + " is empty (header row is mandatory)");
    }
    if (header != expected_header) {
      throw std::runtime_error("load_log: " + path_ + " line 1: expected header '" +
                               expected_header + "'");
    }
    line_no_ = 1;
  }

  /// Reads the next row into `fields`; returns false at end of file.
  bool next(std::vector<double>& fields) {
    std::string line;
    if (!std::getline(in_, line)) {
      return false;
    }
    ++line_no_;
    if (line.empty()) {
      fail("empty row");
    }
    fields.clear();
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      const std::string cell =
          line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      const char* begin = cell.c_str();
      char* end = nullptr;
      const double value = std::strtod(begin, &end);
      if (end == begin || *end != '\0') {
        fail("cannot parse number '" + cell + "'");
      }
      fields.push_back(value);
      if (comma == std::string::npos) {
        break;
      }
      pos = comma + 1;
    }
    if (fields.size() != n_fields_) {
      fail("expected " + std::to_string(n_fields_) + " fields, found " +
           std::to_string(fields.size()));
    }
    return true;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw std::runtime_error("load_log: " + path_ + " line " + std::to_string(line_no_) +
                             ": " + why);
  }

 private:
  std::string path_;
  std::size_t n_fields_;
  std::ifstream in_;
  std::size_t line_no_ = 0;
};

void check_increasing(double prev, double t, const CsvReader& reader) {
  if (t <= prev) {
    reader.fail("timestamps must be strictly increasing");
  }
}

}  // namespace

void save_log(const FlightLog& log, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  {
    std::ofstream out = open_out(dir / "imu.csv");
    out << "t,wx,wy,wz,ax,ay,az\n";
    for (const ImuSample& s : log.imu) {
      out << format_full(s.t) << ',' << format_full(s.omega_m(0)) << ','
          << format_full(s.omega_m(1)) << ',' << format_full(s.omega_m(2)) << ','
          << format_full(s.a_m(0)) << ',' << format_full(s.a_m(1)) << ','
          << format_full(s.a_m(2)) << '\n';
    }
  }
  {
    std::ofstream out = open_out(dir / "fix.csv");
    out << "t,pn,pe,pd,vn,ve,vd,held\n";
    for (const FixSample& s : log.fixes) {
      out << format_full(s.t) << ',' << format_full(s.pos(0)) << ',' << format_full(s.pos(1))
          << ',' << format_full(s.pos(2)) << ',' << format_full(s.vel(0)) << ','
          << format_full(s.vel(1)) << ',' << format_full(s.vel(2)) << ','
          << (s.held ? 1 : 0) << '\n';
    }
  }
  {
    std::ofstream out = open_out(dir / "truth.csv");
    out << "t,q0,q1,q2,q3,vn,ve,vd,pn,pe,pd\n";
    for (const TruthSample& s : log.truth) {
      out << format_full(s.t) << ',' << format_full(s.q(0)) << ',' << format_full(s.q(1))
          << ',' << format_full(s.q(2)) << ',' << format_full(s.q(3)) << ','
          << format_full(s.v(0)) << ',' << format_full(s.v(1)) << ',' << format_full(s.v(2))
          << ',' << format_full(s.p(0)) << ',' << format_full(s.p(1)) << ','
          << format_full(s.p(2)) << '\n';
    }
  }
}

FlightLog load_log(const std::filesystem::path& dir) {
  FlightLog log;
  std::vector<double> f;

  {
    CsvReader reader(dir / "imu.csv", "t,wx,wy,wz,ax,ay,az", 7);
    double prev = -std::numeric_limits<double>::infinity();
    while (reader.next(f)) {
      check_increasing(prev, f[0], reader);
      prev = f[0];
      ImuSample s;
      s.t = f[0];
      s.omega_m = Eigen::Vector3d(f[1], f[2], f[3]);
      s.a_m = Eigen::Vector3d(f[4], f[5], f[6]);
      log.imu.push_back(s);
    }
  }
  {
    CsvReader reader(dir / "fix.csv", "t,pn,pe,pd,vn,ve,vd,held", 8);
    double prev = -std::numeric_limits<double>::infinity();
    while (reader.next(f)) {
      check_increasing(prev, f[0], reader);
      prev = f[0];
      if (f[7] != 0.0 && f[7] != 1.0) {
        reader.fail("held flag must be 0 or 1");
      }
      FixSample s;
      s.t = f[0];
      s.pos = Eigen::Vector3d(f[1], f[2], f[3]);
      s.vel = Eigen::Vector3d(f[4], f[5], f[6]);
      s.held = f[7] == 1.0;
      log.fixes.push_back(s);
    }
  }
  {
    CsvReader reader(dir / "truth.csv", "t,q0,q1,q2,q3,vn,ve,vd,pn,pe,pd", 11);
    double prev = -std::numeric_limits<double>::infinity();
    while (reader.next(f)) {
      check_increasing(prev, f[0], reader);
      prev = f[0];
      TruthSample s;
      s.t = f[0];
      s.q = Eigen::Vector4d(f[1], f[2], f[3], f[4]);
      s.v = Eigen::Vector3d(f[5], f[6], f[7]);
      s.p = Eigen::Vector3d(f[8], f[9], f[10]);
      log.truth.push_back(s);
    }
  }
  return log;
}

}  // namespace robnav
