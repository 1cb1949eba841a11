// End-to-end checks of the command line tool. argv[1] is the path to the
// built binary; every check drives it through /bin/sh, captures stdout and
// the exit code, and asserts on bytes, parsed numbers and exit statuses.

#include <sys/wait.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int g_checks = 0;
int g_failures = 0;

void expect(bool ok, const std::string& what) {
  ++g_checks;
  if (!ok) {
    ++g_failures;
    std::fprintf(stderr, "FAILED: %s\n", what.c_str());
  }
}

struct Result {
  int exit_code = -1;
  std::string out;
};

Result run_cmd(const std::string& tool, const std::string& args) {
  const std::string cmd = tool + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  Result r;
  if (!p) return r;
  char buf[4096];
  size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof(buf), p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

// Value of the first "key": <number> occurrence.
double json_number(const std::string& body, const std::string& key) {
  const std::string pat = "\"" + key + "\":";
  const size_t pos = body.find(pat);
  if (pos == std::string::npos) return std::nan("");
  return std::strtod(body.c_str() + pos + pat.size(), nullptr);
}

int count_of(const std::string& hay, const std::string& needle) {
  int count = 0;
  size_t pos = 0;
  while ((pos = hay.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

int line_count(const std::string& s) {
  int count = 0;
  for (char c : s) count += (c == '\n');
  return count;
}

uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Minimal extraction of the manifest's flat "arguments" object.
std::vector<std::pair<std::string, std::string>> manifest_arguments(const std::string& m) {
  std::vector<std::pair<std::string, std::string>> args;
  const size_t start = m.find("\"arguments\":{");
  if (start == std::string::npos) return args;
  size_t pos = start + std::strlen("\"arguments\":{");
  while (pos < m.size() && m[pos] != '}') {
    const size_t k0 = m.find('"', pos);
    const size_t k1 = m.find('"', k0 + 1);
    const size_t v0 = m.find('"', k1 + 1);
    const size_t v1 = m.find('"', v0 + 1);
    if (k1 == std::string::npos || v1 == std::string::npos) break;
    args.emplace_back(m.substr(k0 + 1, k1 - k0 - 1), m.substr(v0 + 1, v1 - v0 - 1));
    pos = v1 + 1;
    if (pos < m.size() && m[pos] == ',') ++pos;
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path to cli binary>\n", argv[0]);
    return 64;
  }
  const std::string tool = argv[1];
  const std::string tmp = "/tmp/polyspin_cli_check_" + std::to_string(getpid());

  // Reference level set of the six-site network at integer J.
  {
    const Result r = run_cmd(tool, "effective spectrum --config O4 --two-j 0 --w 1");
    expect(r.exit_code == 0, "octahedron spectrum exits 0");
    expect(contains(r.out, "\"config\":\"O4\""), "config echoed");
    expect(contains(r.out, "{\"value\":-2,\"multiplicity\":2}"), "level -2 x2");
    expect(contains(r.out, "{\"value\":0,\"multiplicity\":3}"), "level 0 x3");
    expect(contains(r.out, "{\"value\":4,\"multiplicity\":1}"), "level 4 x1");
    expect(contains(r.out, "\"verified\":true"), "closed form marked verified");
  }

  // Half-integer site representation of the octahedron splits as E1' + G'.
  {
    const Result r = run_cmd(tool, "group decompose --config O4 --two-j 1");
    expect(r.exit_code == 0, "decompose exits 0");
    expect(contains(r.out, "\"E1'\":1"), "E1' multiplicity 1");
    expect(contains(r.out, "\"G'\":1"), "G' multiplicity 1");
    expect(json_number(r.out, "dimension_sum") == 6.0, "dimensions sum to 6");
    expect(contains(r.out, "\"consistent\":true"), "dimension check passes");
  }

  // Tunneling action constant at u = 0 is ln(3)/2.
  {
    const Result r = run_cmd(tool, "wkb c-of-u --u 0");
    expect(r.exit_code == 0, "wkb exits 0");
    const double c = json_number(r.out, "c");
    expect(std::abs(c - 0.5 * std::log(3.0)) < 1e-6, "c(0) = ln(3)/2");
  }
  {
    const Result r = run_cmd(tool, "wkb c-of-u --host Y");
    expect(r.exit_code == 0, "icosahedral wkb exits 0");
    const double c = json_number(r.out, "c");
    expect(c > 0.27 && c < 0.29, "icosahedral action inside its window");
  }

  // Byte-level determinism across reruns.
  {
    const std::string cmd = "exact sweep --two-j 8 --tmin -1 --tmax 1 --tsteps 5";
    const Result a = run_cmd(tool, cmd);
    const Result b = run_cmd(tool, cmd);
    expect(a.exit_code == 0, "exact sweep exits 0");
    expect(!a.out.empty() && a.out == b.out, "exact sweep reruns byte-identical");
    expect(line_count(a.out) == 6, "header plus five grid rows");
  }
  {
    const Result a = run_cmd(tool, "effective spectrum --config Y3 --two-j 3");
    const Result b = run_cmd(tool, "effective spectrum --config Y3 --two-j 3");
    expect(a.exit_code == 0 && a.out == b.out, "dodecahedron spectrum deterministic");
  }

  // --out writes the same bytes as stdout; the manifest digest matches and
  // replaying the recorded arguments reproduces the output.
  {
    const std::string out_path = tmp + "_levels.json";
    const std::string man_path = tmp + "_levels.manifest.json";
    const Result direct = run_cmd(tool, "effective spectrum --config Y5 --two-j 4");
    const Result filed = run_cmd(tool, "effective spectrum --config Y5 --two-j 4 --out " +
                                           out_path + " --manifest " + man_path);
    expect(filed.exit_code == 0 && filed.out.empty(), "--out leaves stdout quiet");
    const std::string file_body = read_file(out_path);
    expect(file_body == direct.out, "--out file matches stdout bytes");

    const std::string manifest = read_file(man_path);
    expect(contains(manifest, "\"command\":\"effective spectrum\""), "manifest command");
    char digest[32];
    std::snprintf(digest, sizeof(digest), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(file_body)));
    expect(contains(manifest, std::string("\"fnv1a64\":\"") + digest + "\""),
           "manifest digest matches output bytes");
    expect(json_number(manifest, "bytes") == static_cast<double>(file_body.size()),
           "manifest byte count");

    std::string replay = "effective spectrum";
    for (const auto& [flag, value] : manifest_arguments(manifest)) {
      if (flag == "--out") continue;  // replay to stdout instead
      replay += " " + flag + " '" + value + "'";
    }
    const Result replayed = run_cmd(tool, replay);
    expect(replayed.exit_code == 0 && replayed.out == file_body,
           "manifest arguments replay byte-identically");
    std::remove(out_path.c_str());
    std::remove(man_path.c_str());
  }

  // Invalid arguments exit 2.
  {
    expect(run_cmd(tool, "effective spectrum --config NOPE --two-j 0").exit_code == 2,
           "unknown configuration exits 2");
    expect(run_cmd(tool, "effective spectrum --config O4").exit_code == 2,
           "missing required flag exits 2");
    expect(run_cmd(tool, "nonsense").exit_code == 2, "unknown subcommand exits 2");
    expect(run_cmd(tool, "wkb c-of-u --u 5").exit_code == 2,
           "u outside the tunneling window exits 2");
    expect(run_cmd(tool, "effective spectrum --config O2 --two-j 1").exit_code == 2,
           "missing alpha for the free-angle network exits 2");
    expect(run_cmd(tool, "effective spectrum --config O4 --two-j 1 --format yaml")
                   .exit_code == 2,
           "unknown format exits 2");
  }

  // Numeric fallback under a field that has no closed form.
  {
    const Result r =
        run_cmd(tool, "effective spectrum --config O4 --two-j 2 --field 0,0,0.1");
    expect(r.exit_code == 0, "field spectrum exits 0");
    expect(contains(r.out, "\"verified\":false"), "numeric fallback marked unverified");
    expect(count_of(r.out, "\"value\"") >= 2, "field lifts degeneracies into levels");
  }

  // Random site-phase gauges leave the level set alone.
  {
    const Result base = run_cmd(tool, "effective spectrum --config O4 --two-j 3");
    const Result g1 = run_cmd(tool, "effective spectrum --config O4 --two-j 3 --seed 7");
    const Result g2 = run_cmd(tool, "effective spectrum --config O4 --two-j 3 --seed 7");
    expect(g1.exit_code == 0 && g1.out == g2.out, "seeded runs deterministic");
    // Same level multiset to clustering tolerance: compare first/last values.
    const double base_first = json_number(base.out, "value");
    const double gauge_first = json_number(g1.out, "value");
    expect(std::abs(base_first - gauge_first) < 1e-9, "gauge leaves the bottom level");
    expect(count_of(base.out, "\"value\"") == count_of(g1.out, "\"value\""),
           "gauge leaves the level count");
  }

  // CSV susceptibility sweep shape.
  {
    const Result r = run_cmd(tool,
                             "thermo chi --model effective --config O4 --two-j 1 "
                             "--tmin 0.5 --tmax 2 --tsteps 4 --format csv");
    expect(r.exit_code == 0, "chi sweep exits 0");
    expect(contains(r.out, "model,config,two_j,w,dirx,diry,dirz,kt,chi\n"),
           "chi sweep header");
    expect(line_count(r.out) == 5, "chi sweep row count");
    expect(contains(r.out, "\neffective,O4,1,1,0,0,1,0.5,"), "chi sweep first row echo");
  }
  {
    const Result r = run_cmd(tool, "thermo chi --model cef --two-j 8 --u 0.4 --tmin 0.5");
    expect(r.exit_code == 0, "cef chi exits 0");
    expect(json_number(r.out, "chi") > 0.0, "cef chi positive");
  }

  // Moment dynamics: prepared moment starts at 1 in units g mu_B J.
  {
    const Result r = run_cmd(tool,
                             "dynamics oscillate --config O4 --two-j 1 --tmin 0 --tmax 2 "
                             "--tsteps 5 --format csv");
    expect(r.exit_code == 0, "oscillate exits 0");
    expect(line_count(r.out) == 6, "oscillate row count");
    // Second line is the t = 0 row; its last field is m(0) = 1 up to rounding.
    const std::size_t row = r.out.find("\nO4,1,1,0,0,");
    expect(row != std::string::npos, "t = 0 row present");
    if (row != std::string::npos) {
      const double m0 = std::strtod(r.out.c_str() + row + 12, nullptr);
      expect(std::abs(m0 - 1.0) < 1e-9, "M(0) = 1 at t = 0");
    }
  }

  // Order-of-magnitude estimators near their published scales.
  {
    const Result r =
        run_cmd(tool, "estimate tau --delta 10 --rho 10 --omega 1e10 --sound 1e5");
    const double tau = json_number(r.out, "tau_seconds");
    expect(r.exit_code == 0 && tau > 0.03 && tau < 0.3, "tau near 0.1 s");
  }
  {
    const Result r =
        run_cmd(tool, "estimate dipolar --g 2 --two-j 7 --density 1e22 --x 1");
    const double dw = json_number(r.out, "delta_omega_per_s");
    expect(r.exit_code == 0 && dw > 1.6e10 && dw < 2.0e10, "dipolar width near 1.8e10");
  }

  // Geometry dump: octahedron has 6 sites, 12 edges, 8 plaquettes.
  {
    const Result r = run_cmd(tool, "geometry dump --config O4");
    expect(r.exit_code == 0, "geometry dump exits 0");
    expect(json_number(r.out, "n_sites") == 6.0, "octahedron site count");
    expect(count_of(r.out, "\"kind\":\"nearest\"") == 12, "octahedron edge count");
    expect(count_of(r.out, "\"solid_angle\"") == 8, "octahedron plaquette count");
    const Result csv = run_cmd(tool, "geometry dump --config O4 --format csv");
    expect(line_count(csv.out) == 7, "csv geometry row count");
  }

  // Effective sweep covers one full spectral period by default.
  {
    const Result r = run_cmd(tool, "effective sweep --config D4-2 --format csv");
    expect(r.exit_code == 0, "effective sweep exits 0");
    // s = 2 for the square ring: rows 2J = 0..2 plus the header.
    expect(line_count(r.out) == 4, "one period of rows");
    expect(contains(r.out, "config,w,two_j,E0,E1,E2,E3\n"), "sweep header");
    const Result aper = run_cmd(tool, "effective sweep --config O2 --alpha 0.7");
    expect(aper.exit_code == 2, "aperiodic sweep without --two-j exits 2");
  }

  std::printf("%d checks, %d failures\n", g_checks, g_failures);
  return g_failures == 0 ? 0 : 1;
}
