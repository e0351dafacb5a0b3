#pragma once

#include <string>

namespace plotbench {

struct SunPosition {
    double elevation_deg = 0.0;  // [-90, 90], refraction-corrected above the horizon
    double azimuth_deg = 0.0;    // [0, 360), clockwise from north
};

// Civil UTC time; no timezone handling here. Local-time conversion is the
// caller's job via an explicit offset.
struct UtcTime {
    int year = 2000;
    int month = 1;
    int day = 1;
    int hour = 0;
    int minute = 0;
    double second = 0.0;
};

// Julian day number for the given UTC instant.
double julian_day(const UtcTime& t);

// Parses "YYYY-MM-DDThh:mm:ss[.fff]Z" (trailing Z optional, treated as UTC).
UtcTime parse_utc_iso8601(const std::string& text);

// Solar elevation and azimuth from geographic position and UTC time.
// Throws std::out_of_range for |lat| > 90, |lon| > 180, or years outside
// 1950..2100 (the range the accuracy claim was checked over).
SunPosition sun_position(double lat_deg, double lon_deg, const UtcTime& t);

}  // namespace plotbench
