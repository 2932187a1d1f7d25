/// @file log_io.hpp CSV persistence for flight logs.
///
/// A log directory holds three files, all with mandatory header rows and
/// full-precision decimal values:
///   imu.csv    t,wx,wy,wz,ax,ay,az
///   fix.csv    t,pn,pe,pd,vn,ve,vd,held
///   truth.csv  t,q0,q1,q2,q3,vn,ve,vd,pn,pe,pd
/// save followed by load is bit-exact on every numeric field.

#pragma once

#include <filesystem>

#include "robnav/simulator.hpp"

namespace robnav {

/// Writes imu.csv, fix.csv and truth.csv under dir (created if missing).
/// Throws std::runtime_error when a file cannot be written.
void save_log(const FlightLog& log, const std::filesystem::path& dir);

/// Reads a directory written by save_log. Malformed rows and non-increasing
/// timestamps are rejected with the file name and line number.
FlightLog load_log(const std::filesystem::path& dir);

}  // namespace robnav
