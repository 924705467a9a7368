#include "dirac/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "dirac/errors.hpp"

namespace dirac {

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_number(std::string_view text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw ConfigError("malformed number '" + std::string(text) + "'");
    return v;
}

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path dir = path.parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);

    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw ConfigError("failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw ConfigError("failed to move '" + tmp.string() + "' into place: " + ec.message());
    }
}

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string fnv1a_hex(std::string_view bytes) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
    return std::string(buf);
}

std::string report_csv(const ErrorReport& report) {
    std::string out = "method,eps,h,tau,t_final,error,wall_ms\n";
    for (const SweepCell& c : report.cells) {
        out += method_name(c.method);
        out += ',';
        out += format_number(c.eps);
        out += ',';
        out += format_number(c.h);
        out += ',';
        out += format_number(c.tau);
        out += ',';
        out += format_number(c.t_final);
        out += ',';
        out += c.rejected ? "nan" : format_number(c.error);
        out += ',';
        out += format_number(c.wall_ms);
        out += '\n';
    }
    return out;
}

std::string fits_csv(const ErrorReport& report) {
    std::string out = "eps,order_valid,order,residual,points_used\n";
    for (const auto& f : report.fits) {
        out += format_number(f.eps);
        out += ',';
        out += f.fit.valid ? "1" : "0";
        out += ',';
        out += format_number(f.fit.order);
        out += ',';
        out += format_number(f.fit.residual);
        out += ',';
        out += std::to_string(f.fit.points_used);
        out += '\n';
    }
    return out;
}

std::string growth_csv(const GrowthProfile& profile) {
    std::string out = "t,error\n";
    for (std::size_t i = 0; i < profile.times.size(); ++i) {
        out += format_number(profile.times[i]);
        out += ',';
        out += format_number(profile.errors[i]);
        out += '\n';
    }
    return out;
}

std::string density_snapshot_text(const DensityField& density, double t) {
    const Grid& g = *density.grid;
    const int nx = g.points(0);
    const int ny = g.dim() == 2 ? g.points(1) : 1;

    std::string out;
    out += std::to_string(nx);
    out += ' ';
    out += std::to_string(ny);
    out += ' ';
    out += format_number(g.lower(0));
    out += ' ';
    out += format_number(g.upper(0));
    out += ' ';
    out += format_number(g.dim() == 2 ? g.lower(1) : 0.0);
    out += ' ';
    out += format_number(g.dim() == 2 ? g.upper(1) : 0.0);
    out += ' ';
    out += format_number(t);
    out += '\n';

    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            if (ix) out += ' ';
            out += format_number(density.rho[g.index(ix, iy)]);
        }
        out += '\n';
    }
    return out;
}

ParsedSnapshot parse_density_snapshot(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header)) throw ConfigError("density snapshot: empty file");

    std::istringstream hs(header);
    std::string nx_s, ny_s, x0_s, x1_s, y0_s, y1_s, t_s;
    if (!(hs >> nx_s >> ny_s >> x0_s >> x1_s >> y0_s >> y1_s >> t_s))
        throw ConfigError("density snapshot: malformed header (expected nx ny x0 x1 y0 y1 t)");
    std::string extra;
    if (hs >> extra) throw ConfigError("density snapshot: trailing header fields");

    const int nx = static_cast<int>(parse_number(nx_s));
    const int ny = static_cast<int>(parse_number(ny_s));
    const double x0 = parse_number(x0_s), x1 = parse_number(x1_s);
    const double y0 = parse_number(y0_s), y1 = parse_number(y1_s);
    const double t = parse_number(t_s);

    ParsedSnapshot snap;
    snap.t = t;
    snap.density.grid = ny == 1 ? make_grid_1d(x0, x1, nx)
                                : make_grid_2d({x0, y0}, {x1, y1}, {nx, ny});
    const Grid& g = *snap.density.grid;
    snap.density.rho.resize(g.size());

    for (int iy = 0; iy < ny; ++iy) {
        std::string line;
        if (!std::getline(in, line))
            throw ConfigError("density snapshot: missing data row " + std::to_string(iy));
        std::istringstream ls(line);
        std::string tok;
        for (int ix = 0; ix < nx; ++ix) {
            if (!(ls >> tok))
                throw ConfigError("density snapshot: short row " + std::to_string(iy));
            snap.density.rho[g.index(ix, iy)] = parse_number(tok);
        }
        if (ls >> tok) throw ConfigError("density snapshot: long row " + std::to_string(iy));
    }

    long double mass = 0.0L;
    for (double r : snap.density.rho) mass += r;
    snap.density.mass = static_cast<double>(mass * static_cast<long double>(g.cell_volume()));
    return snap;
}

} // namespace dirac
