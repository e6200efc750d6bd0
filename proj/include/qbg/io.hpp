#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "qbg/bounds.hpp"
#include "qbg/extremal.hpp"
#include "qbg/imaginarity.hpp"
#include "qbg/sampling.hpp"
#include "qbg/state.hpp"
#include "qbg/transform.hpp"

namespace qbg::io {

using Json = nlohmann::json;

/// Fixed 12-significant-digit rendering used in every CSV file.
std::string format_real(double value);

// Matrix file: {"dim": d, "re": [[...]], "im": [[...]]}, row-major.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

// Bloch vector file: {"dim": d, "v_d": [...], "v_x": [...], "v_i": [...]}.
Json bloch_to_json(const BlochVector& v);
BlochVector bloch_from_json(const Json& j);

// Extremal spec file: {"family": "...", "dim": d, "alphas": [...], "alpha": x,
// "beta": x}, unused fields absent.
Json extremal_spec_to_json(const ExtremalSpec& spec);
ExtremalSpec extremal_spec_from_json(const Json& j);

Json to_json(const Coordinates& c);
Json to_json(const BoundVerdict& v);
Json to_json(const Landmarks& lm);
Json to_json(const DxiParts& parts);
Json to_json(const SaturationReport& report);
Json to_json(const ImaginarityReport& report);

// Step log: one {"k":k,"l":l,"theta":t} object per line.
void write_step_log(std::ostream& out, const std::vector<RotationStep>& steps);
std::vector<RotationStep> read_step_log(std::istream& in);

// Boundary CSV: s_r,s_i_max,region
void write_boundary_csv(std::ostream& out, const BoundaryCurve& curve);
BoundaryCurve read_boundary_csv(std::istream& in, int dim);

/// Minimal static SVG with the boundary polyline in (S_R, S_I) coordinates.
std::string boundary_svg(const BoundaryCurve& curve);

// Cloud CSV: idx,s_d,s_x,s_i,s_r,purity[,robustness,full_imaginarity]
void write_cloud_header(std::ostream& out, bool with_robustness);
void write_cloud_row(std::ostream& out, const CoordinateRecord& rec);
std::vector<CoordinateRecord> read_cloud_csv(std::istream& in, int dim);

// Empirical boundary CSV: s_r_bin_center,s_i_max_empirical (empty bins skipped)
void write_empirical_csv(std::ostream& out, const EmpiricalCurve& curve);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// "out/boundary.csv" + ".landmarks.json" -> "out/boundary.landmarks.json".
std::filesystem::path sidecar_path(const std::filesystem::path& primary,
                                   const std::string& suffix);

}  // namespace qbg::io
