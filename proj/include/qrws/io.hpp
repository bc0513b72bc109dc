#pragma once
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qrws/analysis.hpp"
#include "qrws/sweep.hpp"
#include "qrws/walk.hpp"

namespace qrws {

inline constexpr const char* kVersion = "0.1.0";

// All emitted numbers use 9 significant digits (17 for raw state dumps),
// locale-independent.
std::string format_sig(double value, int sig = 9);

// Angle literals: decimal radians ("1.5") or pi fractions ("pi", "-pi/2",
// "2pi/3", "233pi/360"). Throws std::invalid_argument on anything else.
double parse_angle(const std::string& text);

// ---------------------------------------------------------------------------
// Config: plain-text sections of key = value pairs; CLI flags override
// config keys. Unknown sections/keys are reported by name (fail-fast).

struct RunConfig {
    // [walk]
    int m = 4;
    std::vector<std::uint64_t> marked{0};
    int iterations = 0;  // 0 = automatic ceil((pi/2) sqrt(2^(m-1)))
    // [sweep]
    SequenceKind kind = SequenceKind::PM;
    int resolution = 181;
    double theta = kThetaBestRef;
    int omega_points = 201;
    double omega_max = 0.0;  // 0 = full omega_bound(theta)
    // [fit]
    bool fix_center = false;
    bool strict_nk = false;
    double omega_threshold = 0.9;
    // [scan]
    int theta_step = 1;  // grid step in pi/360 units
    int m_min = 4;
    int m_max = 9;
    std::vector<int> exclusions;  // m values dropped from k-trend fits
    unsigned workers = 0;
    // [output]
    std::string directory = ".";
    std::vector<std::string> formats{"csv"};  // subset of {csv, json, ppm}
};

// Parses "[section]\nkey = value" text into dotted keys ("walk.m").
std::map<std::string, std::string> parse_config_text(std::istream& is);

// Applies dotted keys onto the config; throws on unknown keys or bad values,
// naming the offending key.
void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv);

// Downstream-precondition validation before any computation starts.
void validate_config(const RunConfig& cfg);

// ---------------------------------------------------------------------------
// CSV. Every emitter stamps "# qrws <version>" and "# config: <payload>"
// comment lines (no timestamps; outputs stay byte-reproducible).

std::string build_stamp(const std::vector<std::pair<std::string, std::string>>& kv);

void write_grid_csv(std::ostream& os, const Grid2D& grid, const std::string& config);
void write_cross_section_csv(std::ostream& os, const CrossSection& cs, const std::string& config);
void write_state_csv(std::ostream& os, const WalkState& state, const std::string& config);
void write_scan_csv(std::ostream& os, const ThetaScanResult& scan, const std::string& config);
void write_trend_csv(std::ostream& os, const KTrend& trend, const std::string& config);

// Readers for command chaining (fit-hill, heatmap). The cross-section reader
// restores m/kind/theta from the config stamp; the grid reader only needs the
// axes and probabilities.
Grid2D read_grid_csv(std::istream& is);
CrossSection read_cross_section_csv(std::istream& is);

// ---------------------------------------------------------------------------
// Fit records: flat human-readable/machine-parsable JSON, one record per fit.

struct FitRecord {
    std::string sequence;
    int m = 0;
    double theta = 0.0;
    HillParams params;
    double omega_max = 0.0;  // omega of the sampled peak
    double epsilon = 0.0;
    double omega_threshold = 0.9;
};

std::string fit_record_json(const FitRecord& rec);
void write_fit_records_json(std::ostream& os, const std::vector<FitRecord>& recs,
                            const std::string& config);

// ---------------------------------------------------------------------------
// Binary PPM heatmap. Piecewise-linear colormap with fixed control points
// p=0 -> (0,0,128) dark blue, p=0.25 -> (0,128,0) green, p=0.5 -> (255,255,0)
// yellow; p clamped into [0, 0.5]. Row order: descending zeta.

void color_at(double p, unsigned char rgb[3]);
void write_heatmap_ppm(std::ostream& os, const Grid2D& grid);

}  // namespace qrws
