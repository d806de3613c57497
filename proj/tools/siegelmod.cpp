#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "siegel/congruence.hpp"
#include "siegel/error.hpp"
#include "siegel/linalg.hpp"
#include "siegel/sfex.hpp"
#include "siegel/theta.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace siegel;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 2;
constexpr int kBuildFailed = 3;
constexpr int kContradiction = 4;

struct Config {
  std::string lattice;
  std::string gram_file;
  int degree = 1;
  long bound = 1;
  int sym = 0;
  std::string weight;
  long p = 0;
  int m = 1;
  int t = 0;
  std::string in;
  std::string out;
  bool json = false;
  bool strict = false;
  bool no_cache = false;
};

// Errors that mean "the request itself is bad" rather than "the computation failed".
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string str(const Int& x) { return x.get_str(); }

json int_array(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(str(x));
  return a;
}

std::string join(const IntVector& v, const char* sep = " ") {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : sep) + str(x);
  return s;
}

std::string key_text(const HalfIntegralMatrix& t) { return "[" + join(t.upper_triangle()) + "]"; }

IntMatrix read_gram(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open Gram file " + path);
  std::vector<IntVector> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    IntVector row;
    std::string tok;
    while (ls >> tok) {
      Int x;
      if (x.set_str(tok, 10) != 0) throw ConfigError("bad integer '" + tok + "' in " + path);
      row.push_back(x);
    }
    if (!row.empty()) rows.push_back(row);
  }
  const int n = static_cast<int>(rows.size());
  IntMatrix g(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw ConfigError("Gram file is not square");
    for (int j = 0; j < n; ++j) g(i, j) = rows[i][j];
  }
  return g;
}

EvenLattice resolve_lattice(const Config& c) {
  if (!c.gram_file.empty()) return make_lattice(read_gram(c.gram_file), fs::path(c.gram_file).filename().string());
  if (c.lattice.empty()) throw ConfigError("one of --lattice or --gram-file is required");
  return catalog(c.lattice);
}

void require_prime(long p) {
  if (p < 3 || mpz_probab_prime_p(Int(p).get_mpz_t(), 25) == 0) throw ConfigError("--p must be an odd prime");
}

fs::path cache_dir() {
  if (const char* env = std::getenv("SIEGEL_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "siegelmod";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "siegelmod";
  return fs::temp_directory_path() / "siegelmod";
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

FourierExpansion build_theta(const EvenLattice& l, const Config& c) {
  if (c.sym == 0) return scalar_theta(l, c.degree, c.bound);
  const auto qs = invariant_harmonics(l, c.sym);
  if (qs.empty())
    throw Error(ErrorCode::NotPluriharmonic, "no Aut-invariant harmonic of degree " + std::to_string(c.sym));
  return poly_theta(l, c.degree, sym_power_coefficient(qs.front(), c.degree), c.bound);
}

FourierExpansion load_input(const Config& c) {
  if (c.in.empty()) throw ConfigError("--in is required");
  FourierExpansion f;
  try {
    f = load_sfex(c.in);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (c.strict) f.set_missing_keys(MissingKeys::Error);
  return f;
}

void emit(const Config& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(c.out);
  if (!os) throw ConfigError("cannot write " + c.out);
  os << text;
}

int cmd_theta(const Config& c) {
  if (c.degree < 1) throw ConfigError("--degree must be >= 1");
  if (c.bound < 0) throw ConfigError("--bound must be >= 0");
  if (c.sym < 0) throw ConfigError("--sym must be >= 0");
  EvenLattice lattice;
  try {
    lattice = resolve_lattice(c);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (lattice.rank() % 2 != 0) throw ConfigError("lattice rank must be even");

  std::ostringstream key;
  key << "gram";
  for (const auto& x : lattice.gram.data()) key << ' ' << x;
  key << "|degree " << c.degree << "|bound " << c.bound << "|sym " << c.sym;
  std::ostringstream name;
  name << std::hex << fnv1a(key.str()) << ".sfex";
  const fs::path cached = cache_dir() / name.str();

  FourierExpansion f;
  bool hit = false;
  if (!c.no_cache && fs::exists(cached)) {
    try {
      f = load_sfex(cached.string());
      hit = true;
    } catch (const Error&) {
      hit = false;
    }
  }
  if (!hit) {
    try {
      f = build_theta(lattice, c);
    } catch (const std::exception& e) {
      std::cerr << "build failed: " << e.what() << '\n';
      return kBuildFailed;
    }
    if (!c.no_cache) {
      std::error_code ec;
      fs::create_directories(cached.parent_path(), ec);
      if (!ec) save_sfex(cached.string(), f);
    }
  }
  std::ostringstream os;
  write_sfex(os, f);
  emit(c, os.str());
  std::ostream& info = c.out.empty() ? std::cerr : std::cout;
  long nonzero = 0;
  for (const auto& [t, v] : f.coefficients())
    if (!is_zero_mod(v, 0)) ++nonzero;
  info << "classes: " << f.coefficients().size() << "\nnonzero coefficients: " << nonzero
       << "\nweight: " << format_weight(f.rep().weight()) << "\ncache: " << (c.no_cache ? "off" : hit ? "hit" : "miss")
       << '\n';
  return kOk;
}

json report_json(const SingularityReport& r) {
  json j;
  j["p"] = str(r.p);
  j["m"] = r.m;
  j["weight"] = str(r.weight);
  j["pRank"] = r.p_rank;
  j["singularRank"] = r.singular_rank ? json(*r.singular_rank) : json(nullptr);
  j["traceBound"] = str(r.trace_bound);
  json th;
  th["lhs"] = r.singular_rank ? json(str(r.lhs)) : json(nullptr);
  th["modulus"] = str(r.modulus);
  th["holds"] = r.theorem_holds ? json(*r.theorem_holds) : json(nullptr);
  j["theorem"] = th;
  j["status"] = to_string(r.status);
  json w = json::array();
  for (const auto& x : r.witnesses) w.push_back({{"T", int_array(x.T.upper_triangle())}, {"residues", int_array(x.residues)}});
  j["witnesses"] = w;
  return j;
}

std::string report_text(const SingularityReport& r) {
  std::ostringstream os;
  os << "p: " << r.p << "\nm: " << r.m << "\ntraceBound: " << r.trace_bound << "\nweight: " << r.weight
     << "\npRank: " << r.p_rank << "\nsingularRank: " << (r.singular_rank ? std::to_string(*r.singular_rank) : "none")
     << '\n';
  if (r.theorem_holds)
    os << "theorem: 2k - r = " << r.lhs << " mod " << r.modulus << (*r.theorem_holds ? " holds" : " fails") << '\n';
  os << "status: " << to_string(r.status) << '\n';
  for (const auto& w : r.witnesses) os << "witness: T = " << key_text(w.T) << " a = " << join(w.residues) << '\n';
  return os.str();
}

int cmd_report(const Config& c) {
  require_prime(c.p);
  if (c.m < 1) throw ConfigError("--m must be >= 1");
  const FourierExpansion f = load_input(c);
  SingularityReport r;
  try {
    r = report(f, c.p, c.m);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IncompatibleModulus) throw ConfigError(e.what());
    throw;
  }
  emit(c, c.json ? report_json(r).dump(2) + "\n" : report_text(r));
  return r.status == ReportStatus::Contradiction ? kContradiction : kOk;
}

json slice_json(const SliceCheck& s) {
  return {{"holds", s.holds},   {"witness", int_array(s.witness.upper_triangle())},
          {"r", s.r},           {"t", s.t},
          {"effectiveBound", str(s.effective_bound)}, {"checked", s.checked},
          {"counterexamples", s.counterexamples.size()}};
}

json qseries_json(const QSeries& q) {
  json a = json::array();
  for (std::int64_t j = 0; j <= q.bound; ++j) a.push_back(str(q[j]));
  return a;
}

int cmd_pipeline(const Config& c) {
  require_prime(c.p);
  if (c.m < 1) throw ConfigError("--m must be >= 1");
  if (c.t < 0) throw ConfigError("--t must be >= 0");
  const FourierExpansion f = load_input(c);
  PipelineResult res;
  try {
    res = pipeline(f, c.p, c.m, c.t);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IncompatibleModulus || e.code() == ErrorCode::InvalidArgument) throw ConfigError(e.what());
    throw;
  }
  const bool passed = res.passed();
  const bool fail_exit = res.report.status == ReportStatus::Contradiction ||
                         (res.report.singular_rank && !passed);
  if (c.json) {
    json j;
    j["report"] = report_json(res.report);
    j["identity1"] = res.identity1 ? slice_json(*res.identity1) : json(nullptr);
    j["identity3"] = res.identity3 ? slice_json(*res.identity3) : json(nullptr);
    if (res.extraction) {
      const auto& e = *res.extraction;
      j["extraction"] = {{"j0", e.j0},
                         {"c", str(e.c)},
                         {"alphas", int_array(e.alphas)},
                         {"R", int_array(e.R.upper_triangle())},
                         {"t", e.t},
                         {"effectiveBound", e.effective_bound},
                         {"g", qseries_json(e.g)},
                         {"theta", qseries_json(e.theta)},
                         {"verdict", e.verdict}};
    } else {
      j["extraction"] = nullptr;
    }
    j["square"] = res.square ? json(*res.square) : json(nullptr);
    j["skipped"] = res.skipped;
    j["verdict"] = passed ? "PASS" : "FAIL";
    emit(c, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << report_text(res.report);
    auto slice = [&](const char* name, const std::optional<SliceCheck>& s) {
      if (!s) return;
      os << name << ": " << (s->holds ? "holds" : "fails") << " (checked " << s->checked << ", S1 trace <= "
         << s->effective_bound;
      if (s->t > 0) os << ", t = " << s->t;
      os << ")\n";
    };
    slice("identity1", res.identity1);
    slice("identity3", res.identity3);
    if (res.extraction) {
      const auto& e = *res.extraction;
      os << "extraction: j0 = " << e.j0 << " c = " << e.c << " alphas = " << join(e.alphas, ",")
         << " R = " << key_text(e.R) << " bound = " << e.effective_bound << (e.verdict ? " holds" : " fails") << '\n';
      os << "g:\n" << to_string(e.g) << "theta_R:\n" << to_string(e.theta);
    }
    if (res.square) os << "square: " << (*res.square ? "holds" : "fails") << '\n';
    if (!res.skipped.empty()) os << "skipped: " << res.skipped << '\n';
    os << "verdict: " << (passed ? "PASS" : "FAIL") << '\n';
    emit(c, os.str());
  }
  return fail_exit ? kContradiction : kOk;
}

int cmd_rep(const Config& c) {
  HighestWeight w;
  try {
    w = parse_weight(c.weight);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (w.empty()) throw ConfigError("--weight is required");
  const auto rep = build_rep(static_cast<int>(w.size()), w);
  const auto pieces = weight_grading(*rep);
  int total = 0;
  for (const auto& pc : pieces) total += pc.basis.cols();

  std::mt19937_64 rng(0x5eedULL);
  std::uniform_int_distribution<int> e(-2, 2);
  const int n = rep->degree();
  int samples = 0, good = 0;
  while (samples < 20) {
    IntMatrix g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = e(rng);
    const auto inv = integer_inverse(g);
    if (!inv) continue;
    ++samples;
    if (rep->matrix(g) * rep->matrix(*inv) == IntMatrix::identity(rep->dimension()) &&
        determinant(rep->matrix(g)) * determinant(rep->matrix(*inv)) == 1)
      ++good;
  }

  if (c.json) {
    json j;
    j["weight"] = format_weight(w);
    j["dimension"] = rep->dimension();
    j["scalarWeight"] = scalar_weight(*rep);
    json g = json::array();
    for (const auto& pc : pieces) g.push_back({{"weight", pc.weight}, {"dimension", pc.basis.cols()}});
    j["grading"] = g;
    j["integralitySamples"] = samples;
    j["integralityPassed"] = good;
    emit(c, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "weight: " << format_weight(w) << "\ndimension: " << rep->dimension() << "\nscalar weight: "
       << scalar_weight(*rep) << "\ngrading:";
    for (const auto& pc : pieces) os << ' ' << pc.weight << ':' << pc.basis.cols();
    os << " (sum " << total << ")\nintegral inverse samples: " << good << '/' << samples << '\n';
    emit(c, os.str());
  }
  return good == samples && total == rep->dimension() ? kOk : kBuildFailed;
}

int cmd_catalog(const Config& c) {
  json all = json::array();
  std::ostringstream os;
  for (const auto& name : catalog_names()) {
    const auto l = catalog(name);
    json rows = json::array();
    std::string flat;
    for (int i = 0; i < l.rank(); ++i) {
      IntVector row;
      for (int j = 0; j < l.rank(); ++j) row.push_back(l.gram(i, j));
      rows.push_back(int_array(row));
      flat += (i ? "; " : "") + join(row);
    }
    all.push_back({{"name", name}, {"rank", l.rank()}, {"det", str(determinant(l.gram))},
                   {"level", str(lattice_level(l))}, {"gram", rows}});
    os << name << " rank " << l.rank() << " det " << determinant(l.gram) << " level " << lattice_level(l)
       << " gram [" << flat << "]\n";
  }
  emit(c, c.json ? all.dump(2) + "\n" : os.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mod p singular Siegel modular forms: theta series, singularity reports and congruence checks"};
  app.require_subcommand(1);
  Config c;

  auto* theta = app.add_subcommand("theta", "Build a theta series and write it as SFEX");
  theta->add_option("--lattice", c.lattice, "Catalog lattice (A1, A2, D4, E8)");
  theta->add_option("--gram-file", c.gram_file, "File with an even Gram matrix, one row per line");
  theta->add_option("--degree", c.degree, "Siegel degree n")->required();
  theta->add_option("--bound", c.bound, "Trace bound")->required();
  theta->add_option("--sym", c.sym, "Harmonic theta with an Aut-invariant harmonic of this degree (rep Sym^d)");
  theta->add_option("--out", c.out, "Output file (default stdout)");
  theta->add_flag("--no-cache", c.no_cache, "Bypass the expansion cache");

  auto* rep = app.add_subcommand("report", "Singularity report for an SFEX file");
  auto* pipe = app.add_subcommand("pipeline", "Report plus slice identities and scalar extraction");
  for (auto* sub : {rep, pipe}) {
    sub->add_option("--in", c.in, "SFEX input")->required();
    sub->add_option("--p", c.p, "Odd prime")->required();
    sub->add_option("--m", c.m, "Exponent m >= 1");
    sub->add_option("--out", c.out, "Output file (default stdout)");
    sub->add_flag("--json", c.json, "JSON output");
    sub->add_flag("--strict", c.strict, "Missing keys are errors");
  }
  pipe->add_option("--t", c.t, "Override the twist exponent t");

  auto* reps = app.add_subcommand("rep", "Dimension and grading of an irreducible rep");
  reps->add_option("--weight", c.weight, "Highest weight, e.g. 2,1,0")->required();
  reps->add_flag("--json", c.json, "JSON output");
  reps->add_option("--out", c.out, "Output file (default stdout)");

  auto* cat = app.add_subcommand("catalog", "List the built-in lattices");
  cat->add_flag("--json", c.json, "JSON output");
  cat->add_option("--out", c.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (theta->parsed()) return cmd_theta(c);
    if (rep->parsed()) return cmd_report(c);
    if (pipe->parsed()) return cmd_pipeline(c);
    if (reps->parsed()) return cmd_rep(c);
    if (cat->parsed()) return cmd_catalog(c);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::InvalidWeight || e.code() == ErrorCode::ParseError ? kInvalid : kBuildFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBuildFailed;
  }
  return kInvalid;
}
