#include "plotbench/solar.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace plotbench {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;
constexpr double kRadToDeg = 180.0 / kPi;

double normalize_deg(double deg) {
    deg = std::fmod(deg, 360.0);
    if (deg < 0.0) deg += 360.0;
    return deg;
}

// NOAA atmospheric refraction correction (degrees) for a geometric elevation.
// Applied only when the sun is above the -0.8333 deg horizon threshold, so
// below-horizon elevations stay geometric.
double refraction_deg(double elev_deg) {
    if (elev_deg < -0.8333 || elev_deg > 85.0) return 0.0;
    const double te = std::tan(elev_deg * kDegToRad);
    double arcsec = 0.0;
    if (elev_deg > 5.0) {
        arcsec = 58.1 / te - 0.07 / (te * te * te) + 0.000086 / std::pow(te, 5);
    } else {
        arcsec = 1735.0 +
                 elev_deg * (-518.2 + elev_deg * (103.4 + elev_deg * (-12.79 + 0.711 * elev_deg)));
    }
    return arcsec / 3600.0;
}

}  // namespace

double julian_day(const UtcTime& t) {
    // days-from-civil, then anchor at the Unix epoch's JD
    const int y = t.year - (t.month <= 2 ? 1 : 0);
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (t.month + (t.month > 2 ? -3 : 9)) + 2u) / 5u + t.day - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    const long long days = static_cast<long long>(era) * 146097 + static_cast<long long>(doe) - 719468;
    const double day_fraction = (t.hour + (t.minute + t.second / 60.0) / 60.0) / 24.0;
    return static_cast<double>(days) + 2440587.5 + day_fraction;
}

UtcTime parse_utc_iso8601(const std::string& text) {
    UtcTime t;
    double sec = 0.0;
    const int n = std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%lf", &t.year, &t.month, &t.day,
                              &t.hour, &t.minute, &sec);
    if (n != 6) throw std::invalid_argument("timestamp: expected YYYY-MM-DDThh:mm:ss[Z]: " + text);
    t.second = sec;
    return t;
}

SunPosition sun_position(double lat_deg, double lon_deg, const UtcTime& t) {
    if (std::fabs(lat_deg) > 90.0) throw std::out_of_range("sun_position: |latitude| > 90");
    if (std::fabs(lon_deg) > 180.0) throw std::out_of_range("sun_position: |longitude| > 180");
    if (t.year < 1950 || t.year > 2100) throw std::out_of_range("sun_position: year outside 1950..2100");
    if (t.month < 1 || t.month > 12 || t.day < 1 || t.day > 31) {
        throw std::out_of_range("sun_position: invalid calendar date");
    }

    const double jd = julian_day(t);
    const double jc = (jd - 2451545.0) / 36525.0;  // Julian centuries from J2000

    const double mean_lon = normalize_deg(280.46646 + jc * (36000.76983 + 0.0003032 * jc));
    const double mean_anom = 357.52911 + jc * (35999.05029 - 0.0001537 * jc);
    const double eccent = 0.016708634 - jc * (0.000042037 + 0.0000001267 * jc);

    const double ma_rad = mean_anom * kDegToRad;
    const double eq_center = std::sin(ma_rad) * (1.914602 - jc * (0.004817 + 0.000014 * jc)) +
                             std::sin(2.0 * ma_rad) * (0.019993 - 0.000101 * jc) +
                             std::sin(3.0 * ma_rad) * 0.000289;

    const double true_lon = mean_lon + eq_center;
    const double omega = 125.04 - 1934.136 * jc;
    const double apparent_lon = true_lon - 0.00569 - 0.00478 * std::sin(omega * kDegToRad);

    const double mean_obliq = 23.0 + (26.0 + (21.448 - jc * (46.815 + jc * (0.00059 - jc * 0.001813))) / 60.0) / 60.0;
    const double obliq = mean_obliq + 0.00256 * std::cos(omega * kDegToRad);

    const double obliq_rad = obliq * kDegToRad;
    const double app_lon_rad = apparent_lon * kDegToRad;
    const double decl = std::asin(std::sin(obliq_rad) * std::sin(app_lon_rad));

    // equation of time, minutes
    const double y2 = std::tan(obliq_rad / 2.0) * std::tan(obliq_rad / 2.0);
    const double ml_rad = mean_lon * kDegToRad;
    const double eot = 4.0 * kRadToDeg *
                       (y2 * std::sin(2.0 * ml_rad) - 2.0 * eccent * std::sin(ma_rad) +
                        4.0 * eccent * y2 * std::sin(ma_rad) * std::cos(2.0 * ml_rad) -
                        0.5 * y2 * y2 * std::sin(4.0 * ml_rad) -
                        1.25 * eccent * eccent * std::sin(2.0 * ma_rad));

    const double minutes_utc = t.hour * 60.0 + t.minute + t.second / 60.0;
    double true_solar_min = std::fmod(minutes_utc + eot + 4.0 * lon_deg, 1440.0);
    if (true_solar_min < 0.0) true_solar_min += 1440.0;

    double hour_angle_deg = true_solar_min / 4.0 - 180.0;
    if (hour_angle_deg < -180.0) hour_angle_deg += 360.0;

    const double lat_rad = lat_deg * kDegToRad;
    const double ha_rad = hour_angle_deg * kDegToRad;
    const double cos_zenith = std::sin(lat_rad) * std::sin(decl) +
                              std::cos(lat_rad) * std::cos(decl) * std::cos(ha_rad);
    const double zenith = std::acos(std::clamp(cos_zenith, -1.0, 1.0));
    const double elevation = 90.0 - zenith * kRadToDeg;

    // azimuth clockwise from north, via the south-referenced hour-angle form
    const double az_south = std::atan2(std::sin(ha_rad),
                                       std::cos(ha_rad) * std::sin(lat_rad) -
                                           std::tan(decl) * std::cos(lat_rad));
    const double azimuth = normalize_deg(az_south * kRadToDeg + 180.0);

    SunPosition out;
    out.elevation_deg = elevation + refraction_deg(elevation);
    out.azimuth_deg = azimuth;
    return out;
}

}  // namespace plotbench
