#include "qbg/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qbg/error.hpp"

namespace qbg::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::Parse, what); }

template <typename T>
T get_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    parse_error(std::string("field '") + key + "': " + e.what());
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_real(const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) parse_error("trailing characters in number '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    parse_error("not a number: '" + text + "'");
  }
}

std::uint64_t parse_index(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    parse_error("not an index: '" + text + "'");
  }
  try {
    return std::stoull(text);
  } catch (const std::out_of_range&) {
    parse_error("index out of range: '" + text + "'");
  }
}

bool getline_trimmed(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json re_row = Json::array();
    Json im_row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re_row.push_back(m(r, c).real());
      im_row.push_back(m(r, c).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return Json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const int d = get_field<int>(j, "dim");
  if (d < 1) parse_error("dim must be positive, got " + std::to_string(d));
  const auto re = get_field<std::vector<std::vector<double>>>(j, "re");
  const auto im = get_field<std::vector<std::vector<double>>>(j, "im");
  auto check = [d](const std::vector<std::vector<double>>& rows, const char* name) {
    if (rows.size() != static_cast<std::size_t>(d)) {
      parse_error(std::string("'") + name + "' has " + std::to_string(rows.size()) +
                  " rows, expected " + std::to_string(d));
    }
    for (const auto& row : rows) {
      if (row.size() != static_cast<std::size_t>(d)) {
        parse_error(std::string("'") + name + "' row has " + std::to_string(row.size()) +
                    " entries, expected " + std::to_string(d));
      }
    }
  };
  check(re, "re");
  check(im, "im");
  ComplexMatrix m(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) m(r, c) = Complex(re[r][c], im[r][c]);
  }
  return m;
}

Json bloch_to_json(const BlochVector& v) {
  return Json{{"dim", v.dim}, {"v_d", v.v_d}, {"v_x", v.v_x}, {"v_i", v.v_i}};
}

BlochVector bloch_from_json(const Json& j) {
  BlochVector v;
  v.dim = get_field<int>(j, "dim");
  v.v_d = get_field<std::vector<double>>(j, "v_d");
  v.v_x = get_field<std::vector<double>>(j, "v_x");
  v.v_i = get_field<std::vector<double>>(j, "v_i");
  const auto pairs = static_cast<std::size_t>(v.dim) * static_cast<std::size_t>(v.dim - 1) / 2;
  if (v.dim < 2 || v.v_d.size() != static_cast<std::size_t>(v.dim - 1) ||
      v.v_x.size() != pairs || v.v_i.size() != pairs) {
    parse_error("Bloch vector lengths do not match dim=" + std::to_string(v.dim));
  }
  return v;
}

Json extremal_spec_to_json(const ExtremalSpec& spec) {
  Json j{{"family", std::string(to_string(spec.family))}, {"dim", spec.dim}};
  if (spec.alphas) j["alphas"] = *spec.alphas;
  if (spec.alpha) j["alpha"] = *spec.alpha;
  if (spec.beta) j["beta"] = *spec.beta;
  return j;
}

ExtremalSpec extremal_spec_from_json(const Json& j) {
  ExtremalSpec spec;
  spec.family = family_from_string(get_field<std::string>(j, "family"));
  spec.dim = get_field<int>(j, "dim");
  if (j.contains("alphas")) spec.alphas = get_field<std::vector<double>>(j, "alphas");
  if (j.contains("alpha")) spec.alpha = get_field<double>(j, "alpha");
  if (j.contains("beta")) spec.beta = get_field<double>(j, "beta");
  return spec;
}

Json to_json(const Coordinates& c) {
  return Json{{"dim", c.dim}, {"s_d", c.s_d}, {"s_x", c.s_x}, {"s_i", c.s_i}, {"s_r", c.s_r}};
}

Json to_json(const BoundVerdict& v) {
  Json j{{"purity_margin", v.purity_margin},
         {"quadratic_margin", v.quadratic_margin},
         {"linear_applicable", v.linear_applicable},
         {"all_satisfied", v.all_satisfied}};
  j["linear_margin"] = v.linear_margin ? Json(*v.linear_margin) : Json(nullptr);
  return j;
}

Json to_json(const Landmarks& lm) {
  auto point = [](const std::optional<BoundaryPoint>& p) {
    return p ? Json{{"s_r", p->s_r}, {"s_i", p->s_i}} : Json(nullptr);
  };
  return Json{{"dim", lm.dim},
              {"pure_floor", lm.pure_floor},
              {"even_intersection", point(lm.even_intersection)},
              {"odd_tangent", point(lm.odd_tangent)},
              {"si_cap_at_zero", lm.si_cap_at_zero},
              {"linear_width", lm.linear_width()}};
}

Json to_json(const DxiParts& parts) {
  Json x = Json::array();
  Json a = Json::array();
  for (int r = 0; r < parts.dim; ++r) {
    Json xr = Json::array();
    Json ar = Json::array();
    for (int c = 0; c < parts.dim; ++c) {
      xr.push_back(parts.real_offdiag(r, c));
      ar.push_back(parts.imag_offdiag(r, c));
    }
    x.push_back(std::move(xr));
    a.push_back(std::move(ar));
  }
  std::vector<double> diag(parts.diagonal.data(), parts.diagonal.data() + parts.diagonal.size());
  // I_im holds Im(I); I itself is i * I_im.
  return Json{{"dim", parts.dim}, {"D", diag}, {"X", std::move(x)}, {"I_im", std::move(a)}};
}

Json to_json(const SaturationReport& report) {
  Json lms = Json::array();
  for (const auto& lm : report.landmarks) {
    lms.push_back(Json{{"name", lm.name},
                       {"s_r", lm.point.s_r},
                       {"s_i", lm.point.s_i},
                       {"distance", lm.distance}});
  }
  return Json{{"coordinates", to_json(report.coords)},
              {"bounds", to_json(report.verdict)},
              {"region", std::string(to_string(report.region))},
              {"landmarks", std::move(lms)}};
}

Json to_json(const ImaginarityReport& report) {
  return Json{{"robustness", report.robustness},
              {"s_r", report.s_r},
              {"full_imaginarity", report.full_imaginarity}};
}

void write_step_log(std::ostream& out, const std::vector<RotationStep>& steps) {
  for (const auto& s : steps) {
    out << Json{{"k", s.k}, {"l", s.l}, {"theta", s.theta}}.dump() << '\n';
  }
}

std::vector<RotationStep> read_step_log(std::istream& in) {
  std::vector<RotationStep> steps;
  std::string line;
  while (getline_trimmed(in, line)) {
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception& e) {
      parse_error(std::string("step log: ") + e.what());
    }
    steps.push_back({get_field<int>(j, "k"), get_field<int>(j, "l"), get_field<double>(j, "theta")});
  }
  return steps;
}

void write_boundary_csv(std::ostream& out, const BoundaryCurve& curve) {
  out << "s_r,s_i_max,region\n";
  for (const auto& s : curve.samples) {
    out << format_real(s.s_r) << ',' << format_real(s.s_i_max) << ',' << to_string(s.region)
        << '\n';
  }
}

BoundaryCurve read_boundary_csv(std::istream& in, int dim) {
  std::string line;
  if (!getline_trimmed(in, line) || line != "s_r,s_i_max,region") {
    parse_error("boundary CSV: bad header");
  }
  BoundaryCurve curve;
  curve.dim = dim;
  while (getline_trimmed(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 3) parse_error("boundary CSV: expected 3 columns in '" + line + "'");
    curve.samples.push_back(
        {parse_real(cells[0]), parse_real(cells[1]), region_from_string(cells[2])});
  }
  return curve;
}

std::string boundary_svg(const BoundaryCurve& curve) {
  constexpr double kSize = 400.0;
  constexpr double kPad = 20.0;
  double extent = 1e-12;
  for (const auto& s : curve.samples) extent = std::max({extent, s.s_r, s.s_i_max});
  const double scale = (kSize - 2 * kPad) / extent;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  svg << "<!-- boundary S_I max vs S_R, d=" << curve.dim << " -->\n";
  svg << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (std::size_t k = 0; k < curve.samples.size(); ++k) {
    const auto& s = curve.samples[k];
    if (k != 0) svg << ' ';
    svg << format_real(kPad + s.s_r * scale) << ',' << format_real(kSize - kPad - s.s_i_max * scale);
  }
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

void write_cloud_header(std::ostream& out, bool with_robustness) {
  out << "idx,s_d,s_x,s_i,s_r,purity";
  if (with_robustness) out << ",robustness,full_imaginarity";
  out << '\n';
}

void write_cloud_row(std::ostream& out, const CoordinateRecord& rec) {
  out << rec.seed_index << ',' << format_real(rec.s_d) << ',' << format_real(rec.s_x) << ','
      << format_real(rec.s_i) << ',' << format_real(rec.s_r) << ',' << format_real(rec.purity);
  if (rec.robustness) {
    out << ',' << format_real(*rec.robustness) << ','
        << (*rec.robustness >= 1.0 - kFullImaginarityTol ? "true" : "false");
  }
  out << '\n';
}

std::vector<CoordinateRecord> read_cloud_csv(std::istream& in, int dim) {
  std::string line;
  if (!getline_trimmed(in, line)) parse_error("cloud CSV: empty input");
  const bool with_robustness = line == "idx,s_d,s_x,s_i,s_r,purity,robustness,full_imaginarity";
  if (!with_robustness && line != "idx,s_d,s_x,s_i,s_r,purity") {
    parse_error("cloud CSV: bad header '" + line + "'");
  }
  std::vector<CoordinateRecord> records;
  while (getline_trimmed(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != (with_robustness ? 8U : 6U)) {
      parse_error("cloud CSV: wrong column count in '" + line + "'");
    }
    CoordinateRecord rec;
    rec.seed_index = parse_index(cells[0]);
    rec.dim = dim;
    rec.s_d = parse_real(cells[1]);
    rec.s_x = parse_real(cells[2]);
    rec.s_i = parse_real(cells[3]);
    rec.s_r = parse_real(cells[4]);
    rec.purity = parse_real(cells[5]);
    if (with_robustness) rec.robustness = parse_real(cells[6]);
    records.push_back(rec);
  }
  return records;
}

void write_empirical_csv(std::ostream& out, const EmpiricalCurve& curve) {
  out << "s_r_bin_center,s_i_max_empirical\n";
  for (const auto& bin : curve.bins) {
    if (!bin.s_i_max) continue;
    out << format_real(bin.center) << ',' << format_real(*bin.s_i_max) << '\n';
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    parse_error("'" + path.string() + "': " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorKind::InvalidArgument, "write failed for '" + path.string() + "'");
}

std::filesystem::path sidecar_path(const std::filesystem::path& primary,
                                   const std::string& suffix) {
  std::filesystem::path out = primary;
  out.replace_extension();
  out += suffix;
  return out;
}

}  // namespace qbg::io
