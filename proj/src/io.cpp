#include "qrws/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qrws {
namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double_strict(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": not a number: '" + text + "'");
    }
    if (used != t.size()) throw std::invalid_argument(what + ": trailing junk in '" + text + "'");
    return v;
}

long long parse_int_strict(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(t, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": not an integer: '" + text + "'");
    }
    if (used != t.size()) throw std::invalid_argument(what + ": trailing junk in '" + text + "'");
    return v;
}

bool parse_bool_strict(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "on" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "off" || t == "no") return false;
    throw std::invalid_argument(what + ": not a boolean: '" + text + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

void stamp(std::ostream& os, const std::string& config) {
    os << "# qrws " << kVersion << "\n";
    os << "# config: " << config << "\n";
}

// Pulls "key=value" tokens out of a "# config: ..." stamp line.
std::map<std::string, std::string> stamp_tokens(const std::string& line) {
    std::map<std::string, std::string> out;
    std::istringstream is(line);
    std::string token;
    while (is >> token) {
        const auto eq = token.find('=');
        if (eq != std::string::npos) out[token.substr(0, eq)] = token.substr(eq + 1);
    }
    return out;
}

struct CsvBody {
    std::map<std::string, std::string> meta;  // from the config stamp
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvBody read_csv(std::istream& is) {
    CsvBody body;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            const std::string prefix = "# config:";
            if (t.rfind(prefix, 0) == 0) body.meta = stamp_tokens(t.substr(prefix.size()));
            continue;
        }
        if (!have_header) {
            for (const std::string& h : split(t, ',')) body.header.push_back(trim(h));
            have_header = true;
            continue;
        }
        std::vector<double> row;
        for (const std::string& cell : split(t, ','))
            row.push_back(parse_double_strict(cell, "csv cell"));
        if (row.size() != body.header.size())
            throw std::invalid_argument("csv row has " + std::to_string(row.size()) +
                                        " cells, header has " + std::to_string(body.header.size()));
        body.rows.push_back(std::move(row));
    }
    if (!have_header) throw std::invalid_argument("csv: missing header row");
    return body;
}

std::size_t column_of(const CsvBody& body, const std::string& name) {
    const auto it = std::find(body.header.begin(), body.header.end(), name);
    if (it == body.header.end())
        throw std::invalid_argument("csv: missing column '" + name + "'");
    return static_cast<std::size_t>(it - body.header.begin());
}

}  // namespace

std::string format_sig(double value, int sig) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", sig, value);
    return buf;
}

double parse_angle(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw std::invalid_argument("angle: empty string");
    const auto pos = t.find("pi");
    if (pos == std::string::npos) return parse_double_strict(t, "angle");
    const std::string prefix = t.substr(0, pos);
    const std::string suffix = t.substr(pos + 2);
    double coef = 1.0;
    if (prefix == "-") {
        coef = -1.0;
    } else if (prefix == "+" || prefix.empty()) {
        coef = 1.0;
    } else {
        coef = parse_double_strict(prefix, "angle coefficient");
    }
    double div = 1.0;
    if (!suffix.empty()) {
        if (suffix[0] != '/')
            throw std::invalid_argument("angle: expected '/denominator' after pi in '" + t + "'");
        div = parse_double_strict(suffix.substr(1), "angle denominator");
        if (div == 0.0) throw std::invalid_argument("angle: zero denominator");
    }
    return coef * kPi / div;
}

std::map<std::string, std::string> parse_config_text(std::istream& is) {
    std::map<std::string, std::string> out;
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": empty section name");
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        if (section.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": key outside any [section]");
        out[section + "." + key] = trim(t.substr(eq + 1));
    }
    return out;
}

void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
        if (key == "walk.m") {
            cfg.m = static_cast<int>(parse_int_strict(value, key));
        } else if (key == "walk.marked") {
            cfg.marked.clear();
            for (const std::string& item : split(value, ','))
                cfg.marked.push_back(static_cast<std::uint64_t>(parse_int_strict(item, key)));
        } else if (key == "walk.iterations") {
            cfg.iterations = static_cast<int>(parse_int_strict(value, key));
        } else if (key == "sweep.kind") {
            cfg.kind = kind_from_name(trim(value));
        } else if (key == "sweep.resolution") {
            cfg.resolution = static_cast<int>(parse_int_strict(value, key));
        } else if (key == "sweep.theta") {
            cfg.theta = parse_angle(value);
        } else if (key == "sweep.omega_points") {
            cfg.omega_points = static_cast<int>(parse_int_strict(value, key));
        } else if (key == "sweep.omega_max") {
            cfg.omega_max = parse_double_strict(value, key);
        } else if (key == "fit.fix_center") {
            cfg.fix_center = parse_bool_strict(value, key);
        } else if (key == "fit.strict_nk") {
            cfg.strict_nk = parse_bool_strict(value, key);
        } else if (key == "fit.omega_threshold") {
            cfg.omega_threshold = parse_double_strict(value, key);
        } else if (key == "scan.theta_step") {
            cfg.theta_step = static_cast<int>(parse_int_strict(value, key));
        } else if (key == "scan.m_range") {
            const auto parts = split(value, ':');
            if (parts.size() != 2)
                throw std::invalid_argument("scan.m_range: expected 'min:max', got '" + value +
                                            "'");
            cfg.m_min = static_cast<int>(parse_int_strict(parts[0], key));
            cfg.m_max = static_cast<int>(parse_int_strict(parts[1], key));
        } else if (key == "scan.exclusions") {
            cfg.exclusions.clear();
            if (!trim(value).empty())
                for (const std::string& item : split(value, ','))
                    cfg.exclusions.push_back(static_cast<int>(parse_int_strict(item, key)));
        } else if (key == "scan.workers") {
            const long long w = parse_int_strict(value, key);
            if (w < 0) throw std::invalid_argument("scan.workers: must be >= 0");
            cfg.workers = static_cast<unsigned>(w);
        } else if (key == "output.directory") {
            cfg.directory = trim(value);
        } else if (key == "output.formats") {
            cfg.formats.clear();
            for (const std::string& item : split(value, ',')) cfg.formats.push_back(trim(item));
        } else {
            throw std::invalid_argument("unknown config key: " + key);
        }
    }
}

void validate_config(const RunConfig& cfg) {
    if (cfg.m < 2 || cfg.m > 24) throw std::invalid_argument("walk.m: need 2 <= m <= 24");
    if (cfg.marked.empty()) throw std::invalid_argument("walk.marked: need at least one node");
    for (std::uint64_t x : cfg.marked)
        if (x >= (std::uint64_t{1} << cfg.m))
            throw std::invalid_argument("walk.marked: node " + std::to_string(x) +
                                        " outside the m-cube");
    if (cfg.iterations < 0) throw std::invalid_argument("walk.iterations: must be >= 0");
    if (cfg.resolution < 2) throw std::invalid_argument("sweep.resolution: must be >= 2");
    if (!(cfg.theta >= 0.0 && cfg.theta <= kPi))
        throw std::invalid_argument("sweep.theta: must lie in [0, pi]");
    if (cfg.omega_points < 11 || cfg.omega_points % 2 == 0)
        throw std::invalid_argument("sweep.omega_points: must be odd and >= 11");
    if (cfg.omega_max < 0.0 || cfg.omega_max > omega_bound(cfg.theta) + 1e-12)
        throw std::invalid_argument("sweep.omega_max: outside the admissible omega range");
    if (!(cfg.omega_threshold > 0.0 && cfg.omega_threshold < 1.0))
        throw std::invalid_argument("fit.omega_threshold: must lie in (0, 1)");
    if (cfg.theta_step <= 0 || 360 % cfg.theta_step != 0)
        throw std::invalid_argument("scan.theta_step: must be a positive divisor of 360");
    if (cfg.m_min < 2 || cfg.m_max < cfg.m_min)
        throw std::invalid_argument("scan.m_range: need 2 <= min <= max");
    if (cfg.directory.empty()) throw std::invalid_argument("output.directory: empty");
    if (cfg.formats.empty()) throw std::invalid_argument("output.formats: empty");
    for (const std::string& f : cfg.formats)
        if (f != "csv" && f != "json" && f != "ppm")
            throw std::invalid_argument("output.formats: unknown format '" + f + "'");
}

std::string build_stamp(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string out;
    for (const auto& [k, v] : kv) {
        if (!out.empty()) out += ' ';
        out += k + "=" + v;
    }
    return out;
}

void write_grid_csv(std::ostream& os, const Grid2D& grid, const std::string& config) {
    stamp(os, config);
    os << "phi,zeta,probability\n";
    for (std::size_t iz = 0; iz < grid.zeta_axis.size(); ++iz)
        for (std::size_t ip = 0; ip < grid.phi_axis.size(); ++ip)
            os << format_sig(grid.phi_axis[ip]) << ',' << format_sig(grid.zeta_axis[iz]) << ','
               << format_sig(grid.at(iz, ip)) << "\n";
}

void write_cross_section_csv(std::ostream& os, const CrossSection& cs, const std::string& config) {
    stamp(os, config);
    os << "omega,phi,zeta,probability\n";
    for (std::size_t i = 0; i < cs.omega_axis.size(); ++i) {
        const CoinPhases base = polar_to_phases(cs.omega_axis[i], cs.theta);
        os << format_sig(cs.omega_axis[i]) << ',' << format_sig(base.phi) << ','
           << format_sig(base.zeta) << ',' << format_sig(cs.prob[i]) << "\n";
    }
}

void write_state_csv(std::ostream& os, const WalkState& state, const std::string& config) {
    stamp(os, config);
    os << "control,direction,node,re,im\n";
    const std::uint64_t n = state.node_count();
    for (int q = 0; q < 2; ++q)
        for (int d = 0; d < state.m; ++d)
            for (std::uint64_t x = 0; x < n; ++x) {
                const Complex a = state.at(q, d, x);
                os << q << ',' << d << ',' << x << ',' << format_sig(a.real(), 17) << ','
                   << format_sig(a.imag(), 17) << "\n";
            }
}

void write_scan_csv(std::ostream& os, const ThetaScanResult& scan, const std::string& config) {
    stamp(os, config);
    os << "# best: theta=" << format_sig(scan.best().theta)
       << " k=" << format_sig(scan.report_best.fit.params.k) << "\n";
    os << "# worst: theta=" << format_sig(scan.worst().theta)
       << " k=" << format_sig(scan.report_worst.fit.params.k) << "\n";
    os << "theta,b_full,k_full,n_full,c_full,sigma_full,"
          "b_narrow,k_narrow,n_narrow,c_narrow,sigma_narrow,valid_best,valid_worst\n";
    const double nan = std::nan("");
    auto fields = [&os, nan](const FittedSection& f) {
        const HillParams& p = f.fit.params;
        const bool ok = f.fit.ok;
        os << format_sig(ok ? p.b : nan) << ',' << format_sig(ok ? p.k : nan) << ','
           << format_sig(ok ? p.n : nan) << ',' << format_sig(ok ? p.c : nan) << ','
           << format_sig(ok ? p.sigma : nan);
    };
    for (const ThetaScanEntry& e : scan.entries) {
        os << format_sig(e.theta) << ',';
        fields(e.full);
        os << ',';
        fields(e.narrow);
        os << ',' << (e.valid_best ? 1 : 0) << ',' << (e.valid_worst ? 1 : 0) << "\n";
    }
}

void write_trend_csv(std::ostream& os, const KTrend& trend, const std::string& config) {
    stamp(os, config);
    os << "# trend: k1=" << format_sig(trend.k1) << " k2=" << format_sig(trend.k2)
       << " k3=" << format_sig(trend.k3) << " sigma=" << format_sig(trend.sigma)
       << " degenerate=" << (trend.degenerate ? 1 : 0) << "\n";
    os << "m,k,fitted\n";
    for (const KTrendPoint& p : trend.points) {
        const double fitted = trend.k1 * std::exp(-p.m * trend.k2) + trend.k3;
        os << p.m << ',' << format_sig(p.k) << ',' << format_sig(fitted) << "\n";
    }
}

Grid2D read_grid_csv(std::istream& is) {
    const CsvBody body = read_csv(is);
    const std::size_t c_phi = column_of(body, "phi");
    const std::size_t c_zeta = column_of(body, "zeta");
    const std::size_t c_p = column_of(body, "probability");
    if (body.rows.empty()) throw std::invalid_argument("grid csv: no data rows");

    Grid2D grid;
    // Rows are zeta-major: the phi axis is the prefix until phi wraps around.
    const double phi0 = body.rows[0][c_phi];
    std::size_t width = 0;
    for (std::size_t i = 0; i < body.rows.size(); ++i) {
        if (i > 0 && body.rows[i][c_phi] == phi0) break;
        ++width;
    }
    if (width == 0 || body.rows.size() % width != 0)
        throw std::invalid_argument("grid csv: rows do not form a rectangular grid");
    const std::size_t height = body.rows.size() / width;
    for (std::size_t ip = 0; ip < width; ++ip) grid.phi_axis.push_back(body.rows[ip][c_phi]);
    for (std::size_t iz = 0; iz < height; ++iz)
        grid.zeta_axis.push_back(body.rows[iz * width][c_zeta]);
    grid.prob.resize(width * height);
    for (std::size_t iz = 0; iz < height; ++iz)
        for (std::size_t ip = 0; ip < width; ++ip) {
            const std::vector<double>& row = body.rows[iz * width + ip];
            if (row[c_phi] != grid.phi_axis[ip] || row[c_zeta] != grid.zeta_axis[iz])
                throw std::invalid_argument("grid csv: inconsistent axes");
            grid.prob[iz * width + ip] = row[c_p];
        }
    if (body.meta.count("m")) grid.m = static_cast<int>(std::stoll(body.meta.at("m")));
    if (body.meta.count("kind")) grid.kind = kind_from_name(body.meta.at("kind"));
    return grid;
}

CrossSection read_cross_section_csv(std::istream& is) {
    const CsvBody body = read_csv(is);
    const std::size_t c_omega = column_of(body, "omega");
    const std::size_t c_p = column_of(body, "probability");
    if (body.rows.empty()) throw std::invalid_argument("cross-section csv: no data rows");
    CrossSection cs;
    for (const std::vector<double>& row : body.rows) {
        cs.omega_axis.push_back(row[c_omega]);
        cs.prob.push_back(row[c_p]);
    }
    if (!body.meta.count("m") || !body.meta.count("kind") || !body.meta.count("theta"))
        throw std::invalid_argument(
            "cross-section csv: config stamp must carry m, kind and theta");
    cs.m = static_cast<int>(std::stoll(body.meta.at("m")));
    cs.kind = kind_from_name(body.meta.at("kind"));
    cs.theta = std::stod(body.meta.at("theta"));
    return cs;
}

std::string fit_record_json(const FitRecord& rec) {
    std::ostringstream os;
    os << "{\"sequence\":\"" << rec.sequence << "\",\"m\":" << rec.m
       << ",\"theta\":" << format_sig(rec.theta) << ",\"b\":" << format_sig(rec.params.b)
       << ",\"k\":" << format_sig(rec.params.k) << ",\"n\":" << format_sig(rec.params.n)
       << ",\"c\":" << format_sig(rec.params.c) << ",\"sigma\":" << format_sig(rec.params.sigma)
       << ",\"q\":" << rec.params.q << ",\"n_points\":" << rec.params.n_points
       << ",\"omega_max\":" << format_sig(rec.omega_max)
       << ",\"epsilon\":" << format_sig(rec.epsilon)
       << ",\"omega_threshold\":" << format_sig(rec.omega_threshold) << "}";
    return os.str();
}

void write_fit_records_json(std::ostream& os, const std::vector<FitRecord>& recs,
                            const std::string& config) {
    os << "{\n  \"version\": \"" << kVersion << "\",\n  \"config\": \"" << config
       << "\",\n  \"fits\": [\n";
    for (std::size_t i = 0; i < recs.size(); ++i)
        os << "    " << fit_record_json(recs[i]) << (i + 1 < recs.size() ? ",\n" : "\n");
    os << "  ]\n}\n";
}

void color_at(double p, unsigned char rgb[3]) {
    const double x = std::clamp(p, 0.0, 0.5);
    const double lo[3] = {0, 0, 128}, mid[3] = {0, 128, 0}, hi[3] = {255, 255, 0};
    const double* a = x < 0.25 ? lo : mid;
    const double* b = x < 0.25 ? mid : hi;
    const double t = (x < 0.25 ? x : x - 0.25) / 0.25;
    for (int c = 0; c < 3; ++c)
        rgb[c] = static_cast<unsigned char>(std::lround(a[c] + t * (b[c] - a[c])));
}

void write_heatmap_ppm(std::ostream& os, const Grid2D& grid) {
    const std::size_t w = grid.phi_axis.size(), h = grid.zeta_axis.size();
    if (w == 0 || h == 0) throw std::invalid_argument("heatmap: empty grid");
    os << "P6\n" << w << " " << h << "\n255\n";
    std::vector<unsigned char> row(w * 3);
    for (std::size_t iz = h; iz-- > 0;) {  // descending zeta
        for (std::size_t ip = 0; ip < w; ++ip) color_at(grid.at(iz, ip), &row[ip * 3]);
        os.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
}

}  // namespace qrws
