// Command line surface for the polyspin library. Every subcommand writes
// CSV or JSON to --out (default stdout) with %.17g number formatting, so
// identical invocations produce byte-identical output. --manifest records the
// command, every resolved parameter and an FNV-1a digest of the bytes
// written; replaying the recorded arguments reproduces the output exactly.
//
// Exit codes: 0 success, 2 invalid arguments, 3 numerical failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "polyspin/berry_effective.hpp"
#include "polyspin/exact_spectrum.hpp"
#include "polyspin/geometry.hpp"
#include "polyspin/group_rep.hpp"
#include "polyspin/observables.hpp"
#include "polyspin/semiclassics.hpp"
#include "polyspin/spin_algebra.hpp"

#ifndef POLYSPIN_VERSION
#define POLYSPIN_VERSION "0.0.0"
#endif

namespace {

using namespace polyspin;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// 17 significant digits round-trip doubles exactly; the C locale keeps the
// '.' decimal separator.
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Output routing plus the run manifest. Argument pairs hold every resolved
// parameter as it would be typed on the command line, defaults included.
struct CommonOpts {
  std::string format;
  std::string out = "-";
  std::string manifest;
};

using ArgList = std::vector<std::pair<std::string, std::string>>;

void add_common(CLI::App* cmd, CommonOpts& c, const std::string& default_format) {
  c.format = default_format;
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", c.out, "Output path, '-' for stdout")->capture_default_str();
  cmd->add_option("--manifest", c.manifest, "Write a JSON run manifest to this path");
}

void append_common_args(ArgList& args, const CommonOpts& c) {
  args.emplace_back("--format", c.format);
  args.emplace_back("--out", c.out);
}

void emit(const CommonOpts& c, const std::string& command, const ArgList& args,
          const std::string& body) {
  if (c.out == "-") {
    std::fwrite(body.data(), 1, body.size(), stdout);
    std::fflush(stdout);
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output path '" + c.out + "'");
    f.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!f) throw std::runtime_error("failed writing output path '" + c.out + "'");
  }
  if (!c.manifest.empty()) {
    std::string j = "{\"command\":\"" + json_escape(command) + "\"";
    j += ",\"version\":\"" POLYSPIN_VERSION "\"";
    j += ",\"arguments\":{";
    for (size_t k = 0; k < args.size(); ++k) {
      if (k > 0) j += ",";
      j += "\"" + json_escape(args[k].first) + "\":\"" + json_escape(args[k].second) + "\"";
    }
    j += "},\"output\":{\"bytes\":" + std::to_string(body.size());
    j += ",\"fnv1a64\":\"" + hex64(fnv1a64(body)) + "\"}}\n";
    std::ofstream f(c.manifest, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open manifest path '" + c.manifest + "'");
    f.write(j.data(), static_cast<std::streamsize>(j.size()));
  }
}

bool uses_alpha(ConfigKind kind) {
  return kind == ConfigKind::O2 || kind == ConfigKind::Y2;
}

Configuration build_config(const std::string& name, double alpha) {
  return make_configuration(config_from_name(name), alpha);
}

Vec3 parse_field(const std::vector<double>& raw) {
  if (raw.empty()) return Vec3::Zero();
  if (raw.size() != 3) {
    throw std::invalid_argument("--field wants three comma-separated components hx,hy,hz");
  }
  return Vec3(raw[0], raw[1], raw[2]);
}

std::string field_arg(const Vec3& f) {
  return num(f.x()) + "," + num(f.y()) + "," + num(f.z());
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("--tsteps must be at least 1");
  std::vector<double> grid(static_cast<size_t>(n));
  if (n == 1) {
    grid[0] = lo;
    return grid;
  }
  const double step = (hi - lo) / (n - 1);
  for (int k = 0; k < n; ++k) grid[static_cast<size_t>(k)] = lo + step * k;
  return grid;
}

std::string spectrum_json(const Configuration& config, SpinValue s, const Spectrum& spec,
                          const std::string& extra) {
  std::string j = "{\"config\":\"" + json_escape(config.name) + "\",\"two_j\":" +
                  std::to_string(s.two_j) + ",\"levels\":[";
  for (size_t k = 0; k < spec.levels.size(); ++k) {
    if (k > 0) j += ",";
    j += "{\"value\":" + num(spec.levels[k].value) +
         ",\"multiplicity\":" + std::to_string(spec.levels[k].multiplicity) + "}";
  }
  j += "],\"verified\":";
  j += spec.verified ? "true" : "false";
  j += extra;
  j += "}\n";
  return j;
}

// ---------------------------------------------------------------------------
// geometry dump

struct GeometryOpts {
  std::string config;
  double alpha = kNaN;
  CommonOpts common;
};

void run_geometry_dump(const GeometryOpts& o) {
  const Configuration config = build_config(o.config, o.alpha);
  ArgList args{{"--config", o.config}};
  if (uses_alpha(config.kind)) args.emplace_back("--alpha", num(config.alpha));
  append_common_args(args, o.common);

  std::string body;
  if (o.common.format == "json") {
    body = "{\"config\":\"" + json_escape(config.name) + "\"";
    body += ",\"group\":\"" + group_name(config.group) + "\"";
    body += ",\"p\":" + std::to_string(config.p);
    body += ",\"n_sites\":" + std::to_string(config.n_sites());
    body += ",\"s_parameter\":" + std::to_string(config.s_parameter);
    body += ",\"alpha\":";
    body += uses_alpha(config.kind) ? num(config.alpha) : "null";
    body += ",\"sites\":[";
    for (int k = 0; k < config.n_sites(); ++k) {
      if (k > 0) body += ",";
      const Vec3& v = config.sites[static_cast<size_t>(k)];
      body += "[" + num(v.x()) + "," + num(v.y()) + "," + num(v.z()) + "]";
    }
    body += "],\"edges\":[";
    for (size_t k = 0; k < config.edges.size(); ++k) {
      if (k > 0) body += ",";
      const Edge& e = config.edges[k];
      body += "{\"a\":" + std::to_string(e.a) + ",\"b\":" + std::to_string(e.b) +
              ",\"kind\":\"";
      body += (e.kind == EdgeKind::Nearest) ? "nearest" : "next_nearest";
      body += "\"}";
    }
    body += "],\"plaquettes\":[";
    for (size_t k = 0; k < config.plaquettes.size(); ++k) {
      if (k > 0) body += ",";
      const Plaquette& p = config.plaquettes[k];
      body += "{\"edges\":[";
      for (size_t i = 0; i < p.edge_ids.size(); ++i) {
        if (i > 0) body += ",";
        body += std::to_string(p.edge_ids[i]);
      }
      body += "],\"dirs\":[";
      for (size_t i = 0; i < p.dirs.size(); ++i) {
        if (i > 0) body += ",";
        body += std::to_string(p.dirs[i]);
      }
      body += "],\"solid_angle\":" + num(p.solid_angle) + "}";
    }
    body += "]}\n";
  } else {
    body = "config,site,x,y,z\n";
    for (int k = 0; k < config.n_sites(); ++k) {
      const Vec3& v = config.sites[static_cast<size_t>(k)];
      body += config.name + "," + std::to_string(k) + "," + num(v.x()) + "," + num(v.y()) +
              "," + num(v.z()) + "\n";
    }
  }
  emit(o.common, "geometry dump", args, body);
}

// ---------------------------------------------------------------------------
// effective spectrum

struct EffSpectrumOpts {
  std::string config;
  double alpha = kNaN;
  int two_j = 0;
  double w = 1.0;
  double omega = 0.0;
  std::vector<double> field_raw;
  unsigned seed = 0;
  CommonOpts common;
};

void run_effective_spectrum(const EffSpectrumOpts& o) {
  const Configuration config = build_config(o.config, o.alpha);
  const SpinValue s(o.two_j);
  EffectiveParams params;
  params.w = o.w;
  params.two_path_omega = o.omega;
  params.field = parse_field(o.field_raw);

  ArgList args{{"--config", o.config}, {"--two-j", std::to_string(o.two_j)},
               {"--w", num(o.w)}};
  if (uses_alpha(config.kind)) args.emplace_back("--alpha", num(config.alpha));
  if (config.kind == ConfigKind::O3TwoPath) args.emplace_back("--omega", num(o.omega));
  args.emplace_back("--field", field_arg(params.field));
  args.emplace_back("--seed", std::to_string(o.seed));
  append_common_args(args, o.common);

  Spectrum spec;
  if (o.seed != 0) {
    // Randomized gauge test: conjugate the Hamiltonian with random site
    // phases. The level set must not move; the seed is echoed so reruns
    // reproduce the same transformed matrix bit for bit.
    Matrix h = build_effective(config, s, params);
    std::mt19937 rng(o.seed);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * 3.14159265358979324);
    Eigen::VectorXcd d(config.n_sites());
    for (int k = 0; k < config.n_sites(); ++k) {
      d(k) = std::polar(1.0, uni(rng));
    }
    h = d.asDiagonal().toDenseMatrix().adjoint() * h * d.asDiagonal().toDenseMatrix();
    spec = group_levels(diagonalize(h).values);
    spec.verified = false;
  } else {
    try {
      spec = closed_form_spectrum(config, s, params);
    } catch (const std::invalid_argument&) {
      // Field direction outside the closed forms: fall back to numerics.
      spec = effective_spectrum(config, s, params);
      spec.verified = false;
    }
  }

  std::string body;
  if (o.common.format == "json") {
    std::string extra;
    if (o.seed != 0) extra = ",\"seed\":" + std::to_string(o.seed);
    body = spectrum_json(config, s, spec, extra);
  } else {
    body = "config,two_j,w,value,multiplicity,verified\n";
    for (const Level& l : spec.levels) {
      body += config.name + "," + std::to_string(s.two_j) + "," + num(o.w) + "," +
              num(l.value) + "," + std::to_string(l.multiplicity) + "," +
              (spec.verified ? "true" : "false") + "\n";
    }
  }
  emit(o.common, "effective spectrum", args, body);
}

// ---------------------------------------------------------------------------
// effective sweep over 2J

struct EffSweepOpts {
  std::string config;
  double alpha = kNaN;
  int two_j_max = -1;
  double w = 1.0;
  double omega = 0.0;
  CommonOpts common;
};

void run_effective_sweep(const EffSweepOpts& o) {
  const Configuration config = build_config(o.config, o.alpha);
  int two_j_max = o.two_j_max;
  if (two_j_max < 0) {
    if (config.s_parameter <= 0) {
      throw std::invalid_argument(config.name +
                                  " is aperiodic in J; give --two-j to bound the sweep");
    }
    two_j_max = config.s_parameter;  // one full spectral period, J in [0, s/2]
  }
  EffectiveParams params;
  params.w = o.w;
  params.two_path_omega = o.omega;

  ArgList args{{"--config", o.config}, {"--two-j", std::to_string(two_j_max)},
               {"--w", num(o.w)}};
  if (uses_alpha(config.kind)) args.emplace_back("--alpha", num(config.alpha));
  if (config.kind == ConfigKind::O3TwoPath) args.emplace_back("--omega", num(o.omega));
  append_common_args(args, o.common);

  const int n = config.n_sites();
  std::string body;
  if (o.common.format == "json") {
    body = "{\"config\":\"" + json_escape(config.name) + "\",\"w\":" + num(o.w);
    if (uses_alpha(config.kind)) body += ",\"alpha\":" + num(config.alpha);
    if (config.kind == ConfigKind::O3TwoPath) body += ",\"omega\":" + num(o.omega);
    body += ",\"rows\":[";
    for (int two_j = 0; two_j <= two_j_max; ++two_j) {
      const SpinValue s(two_j);
      const Spectrum spec = closed_form_spectrum(config, s, params);
      if (two_j > 0) body += ",";
      body += "{\"two_j\":" + std::to_string(two_j) + ",\"levels\":[";
      for (size_t k = 0; k < spec.levels.size(); ++k) {
        if (k > 0) body += ",";
        body += "{\"value\":" + num(spec.levels[k].value) +
                ",\"multiplicity\":" + std::to_string(spec.levels[k].multiplicity) + "}";
      }
      body += "],\"verified\":";
      body += spec.verified ? "true" : "false";
      body += "}";
    }
    body += "]}\n";
  } else {
    body = "config,w,";
    if (uses_alpha(config.kind)) body += "alpha,";
    if (config.kind == ConfigKind::O3TwoPath) body += "omega,";
    body += "two_j";
    for (int k = 0; k < n; ++k) body += ",E" + std::to_string(k);
    body += "\n";
    for (int two_j = 0; two_j <= two_j_max; ++two_j) {
      const SpinValue s(two_j);
      const Spectrum spec = closed_form_spectrum(config, s, params);
      body += config.name + "," + num(o.w) + ",";
      if (uses_alpha(config.kind)) body += num(config.alpha) + ",";
      if (config.kind == ConfigKind::O3TwoPath) body += num(o.omega) + ",";
      body += std::to_string(two_j);
      for (const Level& l : spec.levels) {
        for (int k = 0; k < l.multiplicity; ++k) body += "," + num(l.value);
      }
      body += "\n";
    }
  }
  emit(o.common, "effective sweep", args, body);
}

// ---------------------------------------------------------------------------
// group decompose

struct DecomposeOpts {
  std::string config;
  double alpha = kNaN;
  int two_j = 0;
  CommonOpts common;
};

void run_group_decompose(const DecomposeOpts& o) {
  const Configuration config = build_config(o.config, o.alpha);
  const SpinValue s(o.two_j);
  const auto parts = decompose(config.group, config.p, s);
  int dim_sum = 0;
  for (const auto& part : parts) dim_sum += part.dim * part.count;

  ArgList args{{"--config", o.config}, {"--two-j", std::to_string(o.two_j)}};
  if (uses_alpha(config.kind)) args.emplace_back("--alpha", num(config.alpha));
  append_common_args(args, o.common);

  std::string body;
  if (o.common.format == "json") {
    body = "{\"config\":\"" + json_escape(config.name) + "\"";
    body += ",\"group\":\"" + group_name(config.group) + "\"";
    body += ",\"p\":" + std::to_string(config.p);
    body += ",\"two_j\":" + std::to_string(o.two_j);
    body += ",\"decomposition\":{";
    for (size_t k = 0; k < parts.size(); ++k) {
      if (k > 0) body += ",";
      body += "\"" + json_escape(parts[k].label) + "\":" + std::to_string(parts[k].count);
    }
    body += "},\"dimension_sum\":" + std::to_string(dim_sum);
    body += ",\"n_sites\":" + std::to_string(config.n_sites());
    body += ",\"consistent\":";
    body += (dim_sum == config.n_sites()) ? "true" : "false";
    body += "}\n";
  } else {
    body = "config,two_j,irrep,dim,count\n";
    for (const auto& part : parts) {
      body += config.name + "," + std::to_string(o.two_j) + "," + part.label + "," +
              std::to_string(part.dim) + "," + std::to_string(part.count) + "\n";
    }
  }
  emit(o.common, "group decompose", args, body);
}

// ---------------------------------------------------------------------------
// exact spectrum at one mixing angle

struct ExactSpectrumOpts {
  std::string config;  // unused; kept so shared flags parse uniformly
  int two_j = 0;
  double phi = kNaN;
  double u = kNaN;
  std::vector<double> field_raw;
  CommonOpts common;
};

double resolve_phi(double phi, double u) {
  if (!std::isnan(phi) && !std::isnan(u)) {
    throw std::invalid_argument("give either --phi or --u, not both");
  }
  if (!std::isnan(u)) return std::atan(u);
  if (!std::isnan(phi)) return phi;
  return 0.0;
}

void run_exact_spectrum(const ExactSpectrumOpts& o) {
  const SpinValue s(o.two_j);
  const double phi = resolve_phi(o.phi, o.u);
  const Vec3 field = parse_field(o.field_raw);

  Matrix h = cubic_cef_hamiltonian(s, phi);
  if (field.norm() > 0.0) h += zeeman_hamiltonian(s, field);
  const EigenSystem sys = diagonalize(h);
  const auto multiplets = detect_multiplets(sys.values);

  ArgList args{{"--two-j", std::to_string(o.two_j)}, {"--phi", num(phi)},
               {"--field", field_arg(field)}};
  append_common_args(args, o.common);

  std::string body;
  if (o.common.format == "json") {
    body = "{\"two_j\":" + std::to_string(o.two_j);
    body += ",\"phi\":" + num(phi);
    body += ",\"u\":" + num(std::tan(phi));
    body += ",\"field\":[" + num(field.x()) + "," + num(field.y()) + "," + num(field.z()) +
            "]";
    body += ",\"values\":[";
    for (int k = 0; k < sys.values.size(); ++k) {
      if (k > 0) body += ",";
      body += num(sys.values(k));
    }
    body += "],\"multiplet_sizes\":[";
    for (size_t k = 0; k < multiplets.size(); ++k) {
      if (k > 0) body += ",";
      body += std::to_string(multiplets[k].size);
    }
    body += "]}\n";
  } else {
    body = "two_j,phi,index,value\n";
    for (int k = 0; k < sys.values.size(); ++k) {
      body += std::to_string(o.two_j) + "," + num(phi) + "," + std::to_string(k) + "," +
              num(sys.values(k)) + "\n";
    }
  }
  emit(o.common, "exact spectrum", args, body);
}

// ---------------------------------------------------------------------------
// exact sweep over phi

struct ExactSweepOpts {
  int two_j = 0;
  double tmin = -3.1415926535897932;
  double tmax = 3.1415926535897932;
  int tsteps = 65;
  int n_levels = 13;
  CommonOpts common;
};

void run_exact_sweep(const ExactSweepOpts& o) {
  const SpinValue s(o.two_j);
  if (o.n_levels < 1) throw std::invalid_argument("--levels must be at least 1");
  const std::vector<double> grid = linspace(o.tmin, o.tmax, o.tsteps);
  const auto rows = sweep_phi(s, grid, o.n_levels);

  ArgList args{{"--two-j", std::to_string(o.two_j)}, {"--tmin", num(o.tmin)},
               {"--tmax", num(o.tmax)},              {"--tsteps", std::to_string(o.tsteps)},
               {"--levels", std::to_string(o.n_levels)}};
  append_common_args(args, o.common);

  std::string body;
  if (o.common.format == "json") {
    body = "{\"two_j\":" + std::to_string(o.two_j);
    body += ",\"n_levels\":" + std::to_string(o.n_levels);
    body += ",\"rows\":[";
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r > 0) body += ",";
      const PhiSweepRow& row = rows[r];
      body += "{\"phi\":" + num(row.phi) + ",\"u\":" + num(row.u) + ",\"levels\":[";
      for (size_t k = 0; k < row.levels.size(); ++k) {
        if (k > 0) body += ",";
        body += num(row.levels[k]);
      }
      body += "],\"multiplet_size\":" + std::to_string(row.multiplet_size);
      body += ",\"rescale_r\":" + num(row.rescale_r);
      body += ",\"minus_ln_r_over_j\":" + num(row.minus_ln_r_over_j);
      body += ",\"gap_ratio\":" + num(row.gap_ratio) + "}";
    }
    body += "]}\n";
  } else {
    body = "two_j,phi";
    for (int k = 0; k < o.n_levels; ++k) body += ",E" + std::to_string(k);
    body += ",multiplet_size,minus_lnR_over_J\n";
    for (const PhiSweepRow& row : rows) {
      body += std::to_string(o.two_j) + "," + num(row.phi);
      for (size_t k = 0; k < row.levels.size(); ++k) body += "," + num(row.levels[k]);
      body += "," + std::to_string(row.multiplet_size) + "," + num(row.minus_ln_r_over_j) +
              "\n";
    }
  }
  emit(o.common, "exact sweep", args, body);
}

// ---------------------------------------------------------------------------
// wkb c-of-u

struct WkbOpts {
  std::string host = "O";
  double u = kNaN;
  double tmin = kNaN;
  double tmax = kNaN;
  int tsteps = 0;
  CommonOpts common;
};

void run_wkb(CLI::App* cmd, const WkbOpts& o) {
  const bool sweep = o.tsteps > 0;
  CommonOpts common = o.common;
  if (cmd->count("--format") == 0) common.format = sweep ? "csv" : "json";

  std::string body;
  ArgList args{{"--host", o.host}};
  if (o.host == "Y") {
    if (sweep || !std::isnan(o.u)) {
      throw std::invalid_argument("the icosahedral action takes no --u and no sweep grid");
    }
    const double c = action_c_icosahedral();
    args.emplace_back("--format", common.format);
    args.emplace_back("--out", common.out);
    if (common.format == "json") {
      body = "{\"host\":\"Y\",\"c\":" + num(c) + "}\n";
    } else {
      body = "host,c\nY," + num(c) + "\n";
    }
    emit(common, "wkb c-of-u", args, body);
    return;
  }
  if (o.host != "O") throw std::invalid_argument("--host must be O or Y");

  if (sweep) {
    if (std::isnan(o.tmin) || std::isnan(o.tmax)) {
      throw std::invalid_argument("sweep mode wants --tmin and --tmax for the u grid");
    }
    if (!std::isnan(o.u)) {
      throw std::invalid_argument("give either --u or a --tmin/--tmax/--tsteps grid");
    }
    const std::vector<double> grid = linspace(o.tmin, o.tmax, o.tsteps);
    args.emplace_back("--tmin", num(o.tmin));
    args.emplace_back("--tmax", num(o.tmax));
    args.emplace_back("--tsteps", std::to_string(o.tsteps));
    args.emplace_back("--format", common.format);
    args.emplace_back("--out", common.out);
    if (common.format == "csv") {
      body = "host,u,c\n";
      for (double u : grid) body += "O," + num(u) + "," + num(action_c(u)) + "\n";
    } else {
      body = "{\"host\":\"O\",\"rows\":[";
      for (size_t k = 0; k < grid.size(); ++k) {
        if (k > 0) body += ",";
        body += "{\"u\":" + num(grid[k]) + ",\"c\":" + num(action_c(grid[k])) + "}";
      }
      body += "]}\n";
    }
  } else {
    const double u = std::isnan(o.u) ? 0.0 : o.u;
    const double c = action_c(u);
    args.emplace_back("--u", num(u));
    args.emplace_back("--format", common.format);
    args.emplace_back("--out", common.out);
    if (common.format == "json") {
      body = "{\"host\":\"O\",\"u\":" + num(u) + ",\"c\":" + num(c) + "}\n";
    } else {
      body = "host,u,c\nO," + num(u) + "," + num(c) + "\n";
    }
  }
  emit(common, "wkb c-of-u", args, body);
}

// ---------------------------------------------------------------------------
// thermo chi

struct ChiOpts {
  std::string model = "effective";
  std::string config;
  double alpha = kNaN;
  int two_j = 0;
  double w = 1.0;
  double phi = kNaN;
  double u = kNaN;
  std::vector<double> field_raw;
  double tmin = 1.0;
  double tmax = kNaN;
  int tsteps = 1;
  CommonOpts common;
};

void run_thermo_chi(CLI::App* cmd, const ChiOpts& o) {
  const SpinValue s(o.two_j);
  Vec3 dir = parse_field(o.field_raw);
  if (dir.norm() == 0.0) dir = Vec3(0.0, 0.0, 1.0);
  dir.normalize();
  const bool sweep = o.tsteps > 1;
  if (sweep && std::isnan(o.tmax)) {
    throw std::invalid_argument("sweep mode wants --tmax for the temperature grid");
  }
  const std::vector<double> grid = linspace(o.tmin, sweep ? o.tmax : o.tmin, o.tsteps);
  for (double kt : grid) {
    if (kt <= 0.0) throw std::invalid_argument("temperatures must be positive");
  }
  CommonOpts common = o.common;
  if (cmd->count("--format") == 0) common.format = sweep ? "csv" : "json";

  ArgList args{{"--model", o.model}, {"--two-j", std::to_string(o.two_j)}};
  std::string prefix_json;
  std::string prefix_csv_header;
  std::string prefix_csv_row;

  std::vector<double> chi(grid.size());
  if (o.model == "effective") {
    if (o.config.empty()) throw std::invalid_argument("--model effective wants --config");
    const Configuration config = build_config(o.config, o.alpha);
    for (size_t k = 0; k < grid.size(); ++k) {
      chi[k] = effective_susceptibility(config, s, o.w, grid[k], dir);
    }
    args.emplace_back("--config", o.config);
    if (uses_alpha(config.kind)) args.emplace_back("--alpha", num(config.alpha));
    args.emplace_back("--w", num(o.w));
    prefix_json = "\"model\":\"effective\",\"config\":\"" + json_escape(config.name) +
                  "\",\"two_j\":" + std::to_string(o.two_j) + ",\"w\":" + num(o.w);
    prefix_csv_header = "model,config,two_j,w";
    prefix_csv_row = "effective," + config.name + "," + std::to_string(o.two_j) + "," +
                     num(o.w);
  } else if (o.model == "cef") {
    if (!o.config.empty()) {
      throw std::invalid_argument("--model cef takes --phi or --u, not --config");
    }
    const double phi = resolve_phi(o.phi, o.u);
    for (size_t k = 0; k < grid.size(); ++k) {
      chi[k] = cef_susceptibility(s, phi, grid[k], dir);
    }
    args.emplace_back("--phi", num(phi));
    prefix_json = "\"model\":\"cef\",\"two_j\":" + std::to_string(o.two_j) +
                  ",\"phi\":" + num(phi);
    prefix_csv_header = "model,two_j,phi";
    prefix_csv_row = "cef," + std::to_string(o.two_j) + "," + num(phi);
  } else {
    throw std::invalid_argument("--model must be effective or cef");
  }
  args.emplace_back("--field", field_arg(dir));
  args.emplace_back("--tmin", num(o.tmin));
  if (sweep) args.emplace_back("--tmax", num(o.tmax));
  args.emplace_back("--tsteps", std::to_string(o.tsteps));
  args.emplace_back("--format", common.format);
  args.emplace_back("--out", common.out);

  std::string body;
  if (common.format == "json") {
    body = "{" + prefix_json;
    body += ",\"dir\":[" + num(dir.x()) + "," + num(dir.y()) + "," + num(dir.z()) + "]";
    if (sweep) {
      body += ",\"rows\":[";
      for (size_t k = 0; k < grid.size(); ++k) {
        if (k > 0) body += ",";
        body += "{\"kt\":" + num(grid[k]) + ",\"chi\":" + num(chi[k]) + "}";
      }
      body += "]}\n";
    } else {
      body += ",\"kt\":" + num(grid[0]) + ",\"chi\":" + num(chi[0]) + "}\n";
    }
  } else {
    body = prefix_csv_header + ",dirx,diry,dirz,kt,chi\n";
    for (size_t k = 0; k < grid.size(); ++k) {
      body += prefix_csv_row + "," + num(dir.x()) + "," + num(dir.y()) + "," + num(dir.z()) +
              "," + num(grid[k]) + "," + num(chi[k]) + "\n";
    }
  }
  emit(common, "thermo chi", args, body);
}

// ---------------------------------------------------------------------------
// dynamics oscillate

struct OscillateOpts {
  std::string config;
  double alpha = kNaN;
  int two_j = 0;
  double w = 1.0;
  int site = 0;
  double tmin = 0.0;
  double tmax = 50.0;
  int tsteps = 201;
  CommonOpts common;
};

void run_dynamics_oscillate(const OscillateOpts& o) {
  const Configuration config = build_config(o.config, o.alpha);
  const SpinValue s(o.two_j);
  const std::vector<double> times = linspace(o.tmin, o.tmax, o.tsteps);
  const OscillationSeries series = magnetization_oscillation(config, s, o.w, o.site, times);

  ArgList args{{"--config", o.config}, {"--two-j", std::to_string(o.two_j)},
               {"--w", num(o.w)},      {"--site", std::to_string(o.site)},
               {"--tmin", num(o.tmin)}, {"--tmax", num(o.tmax)},
               {"--tsteps", std::to_string(o.tsteps)}};
  if (uses_alpha(config.kind)) args.emplace_back("--alpha", num(config.alpha));
  append_common_args(args, o.common);

  std::string body;
  if (o.common.format == "json") {
    body = "{\"config\":\"" + json_escape(config.name) + "\"";
    body += ",\"two_j\":" + std::to_string(o.two_j);
    body += ",\"w\":" + num(o.w);
    body += ",\"site\":" + std::to_string(o.site);
    body += ",\"dc\":" + num(series.dc);
    body += ",\"max_imag\":" + num(series.max_imag);
    body += ",\"rows\":[";
    for (size_t k = 0; k < series.times.size(); ++k) {
      if (k > 0) body += ",";
      body += "{\"t\":" + num(series.times[k]) + ",\"m\":" + num(series.m[k]) + "}";
    }
    body += "]}\n";
  } else {
    body = "config,two_j,w,site,t,m\n";
    for (size_t k = 0; k < series.times.size(); ++k) {
      body += config.name + "," + std::to_string(o.two_j) + "," + num(o.w) + "," +
              std::to_string(o.site) + "," + num(series.times[k]) + "," +
              num(series.m[k]) + "\n";
    }
  }
  emit(o.common, "dynamics oscillate", args, body);
}

// ---------------------------------------------------------------------------
// estimate tau / estimate dipolar

struct TauOpts {
  double delta = 0.0;
  double rho = 0.0;
  double omega = 0.0;
  double sound = 0.0;
  double kt = 0.0;
  CommonOpts common;
};

void run_estimate_tau(const TauOpts& o) {
  const double tau = relaxation_time(o.delta, o.rho, o.omega, o.sound, o.kt);
  ArgList args{{"--delta", num(o.delta)}, {"--rho", num(o.rho)},
               {"--omega", num(o.omega)}, {"--sound", num(o.sound)},
               {"--kt", num(o.kt)}};
  append_common_args(args, o.common);

  std::string body;
  if (o.common.format == "json") {
    body = "{\"estimator\":\"one_phonon_relaxation\",\"order_of_magnitude\":true";
    body += ",\"delta_kelvin\":" + num(o.delta);
    body += ",\"rho_g_cm3\":" + num(o.rho);
    body += ",\"omega_per_s\":" + num(o.omega);
    body += ",\"sound_cm_per_s\":" + num(o.sound);
    body += ",\"kt_kelvin\":" + num(o.kt);
    body += ",\"tau_seconds\":" + num(tau) + "}\n";
  } else {
    body = "estimator,delta_kelvin,rho_g_cm3,omega_per_s,sound_cm_per_s,kt_kelvin,tau_seconds\n";
    body += "one_phonon_relaxation," + num(o.delta) + "," + num(o.rho) + "," + num(o.omega) +
            "," + num(o.sound) + "," + num(o.kt) + "," + num(tau) + "\n";
  }
  emit(o.common, "estimate tau", args, body);
}

struct DipolarOpts {
  double g = 2.0;
  int two_j = 0;
  double density = 0.0;
  double fraction = 1.0;
  CommonOpts common;
};

void run_estimate_dipolar(const DipolarOpts& o) {
  const double dw = dipolar_broadening(o.g, SpinValue(o.two_j), o.density, o.fraction);
  ArgList args{{"--g", num(o.g)},
               {"--two-j", std::to_string(o.two_j)},
               {"--density", num(o.density)},
               {"--x", num(o.fraction)}};
  append_common_args(args, o.common);

  std::string body;
  if (o.common.format == "json") {
    body = "{\"estimator\":\"dipolar_broadening\",\"order_of_magnitude\":true";
    body += ",\"g\":" + num(o.g);
    body += ",\"two_j\":" + std::to_string(o.two_j);
    body += ",\"density_per_cm3\":" + num(o.density);
    body += ",\"fraction\":" + num(o.fraction);
    body += ",\"delta_omega_per_s\":" + num(dw) + "}\n";
  } else {
    body = "estimator,g,two_j,density_per_cm3,fraction,delta_omega_per_s\n";
    body += "dipolar_broadening," + num(o.g) + "," + std::to_string(o.two_j) + "," +
            num(o.density) + "," + num(o.fraction) + "," + num(dw) + "\n";
  }
  emit(o.common, "estimate dipolar", args, body);
}

std::string config_help() {
  std::string help = "Configuration name: ";
  bool first = true;
  for (ConfigKind kind : all_config_kinds()) {
    if (!first) help += ", ";
    help += config_name(kind);
    first = false;
  }
  return help;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin tunneling networks on symmetric spherical site configurations"};
  app.require_subcommand(1);
  const std::string cfg_help = config_help();

  // geometry dump
  auto* geometry = app.add_subcommand("geometry", "Site network geometry");
  geometry->require_subcommand(1);
  GeometryOpts geo;
  auto* geo_dump = geometry->add_subcommand("dump", "Dump sites, edges and plaquettes");
  geo_dump->add_option("--config", geo.config, cfg_help)->required();
  geo_dump->add_option("--alpha", geo.alpha, "Free plaquette angle (O2/Y2 only)");
  add_common(geo_dump, geo.common, "json");
  geo_dump->callback([&] { run_geometry_dump(geo); });

  // effective spectrum / sweep
  auto* effective = app.add_subcommand("effective", "Reduced tunneling Hamiltonians");
  effective->require_subcommand(1);
  EffSpectrumOpts esp;
  auto* eff_spec = effective->add_subcommand("spectrum", "Level set at one spin value");
  eff_spec->add_option("--config", esp.config, cfg_help)->required();
  eff_spec->add_option("--two-j", esp.two_j, "Twice the spin, J = two_j/2")->required();
  eff_spec->add_option("--w", esp.w, "Tunneling amplitude")->capture_default_str();
  eff_spec->add_option("--alpha", esp.alpha, "Free plaquette angle (O2/Y2 only)");
  eff_spec->add_option("--omega", esp.omega, "Two-path solid angle (O3m only)")
      ->capture_default_str();
  eff_spec->add_option("--field", esp.field_raw, "Magnetic field hx,hy,hz in energy units")
      ->delimiter(',');
  eff_spec->add_option("--seed", esp.seed, "Nonzero: diagonalize under a random site-phase gauge")
      ->capture_default_str();
  add_common(eff_spec, esp.common, "json");
  eff_spec->callback([&] { run_effective_spectrum(esp); });

  EffSweepOpts esw;
  auto* eff_sweep = effective->add_subcommand("sweep", "Level sets for 2J = 0..max");
  eff_sweep->add_option("--config", esw.config, cfg_help)->required();
  eff_sweep->add_option("--two-j", esw.two_j_max,
                        "Largest 2J (default: one spectral period)");
  eff_sweep->add_option("--w", esw.w, "Tunneling amplitude")->capture_default_str();
  eff_sweep->add_option("--alpha", esw.alpha, "Free plaquette angle (O2/Y2 only)");
  eff_sweep->add_option("--omega", esw.omega, "Two-path solid angle (O3m only)")
      ->capture_default_str();
  add_common(eff_sweep, esw.common, "csv");
  eff_sweep->callback([&] { run_effective_sweep(esw); });

  // group decompose
  auto* group = app.add_subcommand("group", "Double-group representation theory");
  group->require_subcommand(1);
  DecomposeOpts dec;
  auto* group_dec = group->add_subcommand("decompose", "Reduce the site representation");
  group_dec->add_option("--config", dec.config, cfg_help)->required();
  group_dec->add_option("--two-j", dec.two_j, "Twice the spin")->required();
  group_dec->add_option("--alpha", dec.alpha, "Free plaquette angle (O2/Y2 only)");
  add_common(group_dec, dec.common, "json");
  group_dec->callback([&] { run_group_decompose(dec); });

  // exact spectrum / sweep
  auto* exact = app.add_subcommand("exact", "Full (2J+1)-dimensional CEF problem");
  exact->require_subcommand(1);
  ExactSpectrumOpts xsp;
  auto* exact_spec = exact->add_subcommand("spectrum", "Eigenvalues at one mixing angle");
  exact_spec->add_option("--two-j", xsp.two_j, "Twice the spin")->required();
  exact_spec->add_option("--phi", xsp.phi, "Quartic/sextic mixing angle in radians");
  exact_spec->add_option("--u", xsp.u, "tan(phi); alternative to --phi");
  exact_spec->add_option("--field", xsp.field_raw, "Magnetic field hx,hy,hz in energy units")
      ->delimiter(',');
  add_common(exact_spec, xsp.common, "json");
  exact_spec->callback([&] { run_exact_spectrum(xsp); });

  ExactSweepOpts xsw;
  auto* exact_sweep = exact->add_subcommand("sweep", "Ground multiplet across phi");
  exact_sweep->add_option("--two-j", xsw.two_j, "Twice the spin")->required();
  exact_sweep->add_option("--tmin", xsw.tmin, "First phi")->capture_default_str();
  exact_sweep->add_option("--tmax", xsw.tmax, "Last phi")->capture_default_str();
  exact_sweep->add_option("--tsteps", xsw.tsteps, "Grid points")->capture_default_str();
  exact_sweep->add_option("--levels", xsw.n_levels, "Eigenvalues kept per point")
      ->capture_default_str();
  add_common(exact_sweep, xsw.common, "csv");
  exact_sweep->callback([&] { run_exact_sweep(xsw); });

  // wkb c-of-u
  auto* wkb = app.add_subcommand("wkb", "Semiclassical tunneling actions");
  wkb->require_subcommand(1);
  WkbOpts wo;
  auto* wkb_c = wkb->add_subcommand("c-of-u", "Action constant of the splitting exponent");
  wkb_c->add_option("--host", wo.host, "O: cubic window of u; Y: icosahedral constant")
      ->check(CLI::IsMember({"O", "Y"}))
      ->capture_default_str();
  wkb_c->add_option("--u", wo.u, "tan(phi) inside (-2/3, 1/15)");
  wkb_c->add_option("--tmin", wo.tmin, "First u of a sweep grid");
  wkb_c->add_option("--tmax", wo.tmax, "Last u of a sweep grid");
  wkb_c->add_option("--tsteps", wo.tsteps, "Grid points (0 = single point)")
      ->capture_default_str();
  add_common(wkb_c, wo.common, "json");
  wkb_c->callback([&] { run_wkb(wkb_c, wo); });

  // thermo chi
  auto* thermo = app.add_subcommand("thermo", "Thermodynamic observables");
  thermo->require_subcommand(1);
  ChiOpts chi;
  auto* thermo_chi = thermo->add_subcommand("chi", "Zero-field susceptibility");
  thermo_chi->add_option("--model", chi.model, "effective (network) or cef (full problem)")
      ->check(CLI::IsMember({"effective", "cef"}))
      ->capture_default_str();
  thermo_chi->add_option("--config", chi.config, cfg_help);
  thermo_chi->add_option("--alpha", chi.alpha, "Free plaquette angle (O2/Y2 only)");
  thermo_chi->add_option("--two-j", chi.two_j, "Twice the spin")->required();
  thermo_chi->add_option("--w", chi.w, "Tunneling amplitude")->capture_default_str();
  thermo_chi->add_option("--phi", chi.phi, "CEF mixing angle (cef model)");
  thermo_chi->add_option("--u", chi.u, "tan(phi); alternative to --phi");
  thermo_chi->add_option("--field", chi.field_raw, "Probe direction hx,hy,hz")
      ->delimiter(',');
  thermo_chi->add_option("--tmin", chi.tmin, "First k_B T in units of w")
      ->capture_default_str();
  thermo_chi->add_option("--tmax", chi.tmax, "Last k_B T of a sweep");
  thermo_chi->add_option("--tsteps", chi.tsteps, "Grid points")->capture_default_str();
  add_common(thermo_chi, chi.common, "json");
  thermo_chi->callback([&] { run_thermo_chi(thermo_chi, chi); });

  // dynamics oscillate
  auto* dynamics = app.add_subcommand("dynamics", "Coherent moment dynamics");
  dynamics->require_subcommand(1);
  OscillateOpts osc;
  auto* dyn_osc = dynamics->add_subcommand("oscillate", "Site moment M(t) after preparation");
  dyn_osc->add_option("--config", osc.config, cfg_help)->required();
  dyn_osc->add_option("--two-j", osc.two_j, "Twice the spin")->required();
  dyn_osc->add_option("--w", osc.w, "Tunneling amplitude")->capture_default_str();
  dyn_osc->add_option("--alpha", osc.alpha, "Free plaquette angle (O2/Y2 only)");
  dyn_osc->add_option("--site", osc.site, "Prepared site index")->capture_default_str();
  dyn_osc->add_option("--tmin", osc.tmin, "First time, units hbar/w")->capture_default_str();
  dyn_osc->add_option("--tmax", osc.tmax, "Last time")->capture_default_str();
  dyn_osc->add_option("--tsteps", osc.tsteps, "Grid points")->capture_default_str();
  add_common(dyn_osc, osc.common, "csv");
  dyn_osc->callback([&] { run_dynamics_oscillate(osc); });

  // estimate tau / dipolar
  auto* estimate = app.add_subcommand("estimate", "Order-of-magnitude experimental scales");
  estimate->require_subcommand(1);
  TauOpts tau;
  auto* est_tau = estimate->add_subcommand("tau", "One-phonon relaxation time");
  est_tau->add_option("--delta", tau.delta, "Tunneling splitting in kelvin")->required();
  est_tau->add_option("--rho", tau.rho, "Mass density in g/cm^3")->required();
  est_tau->add_option("--omega", tau.omega, "Oscillation frequency in 1/s")->required();
  est_tau->add_option("--sound", tau.sound, "Sound speed in cm/s")->required();
  est_tau->add_option("--kt", tau.kt, "Temperature in kelvin (0: low-T form)")
      ->capture_default_str();
  add_common(est_tau, tau.common, "json");
  est_tau->callback([&] { run_estimate_tau(tau); });

  DipolarOpts dip;
  auto* est_dip = estimate->add_subcommand("dipolar", "Dipolar frequency broadening");
  est_dip->add_option("--g", dip.g, "Lande g factor")->capture_default_str();
  est_dip->add_option("--two-j", dip.two_j, "Twice the spin")->required();
  est_dip->add_option("--density", dip.density, "Moment density in 1/cm^3")->required();
  est_dip->add_option("--x", dip.fraction, "Dilution fraction in [0, 1]")
      ->capture_default_str();
  add_common(est_dip, dip.common, "json");
  est_dip->callback([&] { run_estimate_dipolar(dip); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const polyspin::numerical_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
