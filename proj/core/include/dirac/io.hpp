#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "dirac/analysis.hpp"

namespace dirac {

/// Shortest round-trip decimal form of a double (std::to_chars); reading it
/// back recovers the exact bits. Used for every number we persist, so that
/// outputs are deterministic and snapshots are lossless.
std::string format_number(double v);

/// Strict counterpart of format_number; ConfigError on malformed input.
double parse_number(std::string_view text);

/// Writes content to a temporary file in the target directory and renames it
/// into place, so interrupted runs never leave a partial file. Creates parent
/// directories as needed.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

/// 64-bit FNV-1a over bytes; used to fingerprint canonical configs.
std::uint64_t fnv1a(std::string_view bytes);
std::string fnv1a_hex(std::string_view bytes);

/// One row per sweep cell: "method,eps,h,tau,t_final,error,wall_ms".
/// Rejected cells carry error = nan; their reasons are reported by the
/// caller, not the CSV.
std::string report_csv(const ErrorReport& report);

/// Per-eps fitted orders: "eps,order_valid,order,residual,points_used".
std::string fits_csv(const ErrorReport& report);

/// Growth profile as "t,error" rows.
std::string growth_csv(const GrowthProfile& profile);

/// Plain-text density matrix. First line: "nx ny x0 x1 y0 y1 t"; then ny rows
/// of nx values (1D uses ny = 1). All numbers in round-trip form.
std::string density_snapshot_text(const DensityField& density, double t);

struct ParsedSnapshot {
    DensityField density;
    double t = 0.0;
};

/// Inverse of density_snapshot_text; values parse back bit-identically.
ParsedSnapshot parse_density_snapshot(const std::string& text);

} // namespace dirac
