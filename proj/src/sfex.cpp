#include "siegel/sfex.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "siegel/error.hpp"

namespace siegel {

namespace {

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

Int parse_int(const std::string& token, int line) {
  Int v;
  if (token.empty() || v.set_str(token, 10) != 0) parse_error(line, "bad integer '" + token + "'");
  return v;
}

std::vector<std::string> split(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace

void write_sfex(std::ostream& os, const FourierExpansion& f) {
  const LevelSpec& lv = f.level();
  os << "#degree: " << f.degree() << "\n";
  os << "#weight: " << format_weight(f.rep().weight()) << "\n";
  os << "#level: " << lv.N << " " << lv.Nprime << " " << lv.p_power << " " << lv.char_parity << "\n";
  os << "#modulus: " << f.modulus() << "\n";
  os << "#traceBound: " << f.trace_bound() << "\n";
  if (f.embed() != 0) os << "#embed: " << f.embed() << "\n";
  for (const auto& tw : f.twists()) os << "#twist: " << tw.r << " " << tw.p << " " << tw.t << "\n";
  for (const auto& [key, value] : f.coefficients()) {
    os << "T:";
    for (const auto& x : key.upper_triangle()) os << " " << x;
    os << " C:";
    for (const auto& x : value) os << " " << x;
    os << "\n";
  }
}

FourierExpansion read_sfex(std::istream& is) {
  std::map<std::string, std::string> header;
  std::vector<std::string> twist_lines;
  std::vector<std::pair<int, std::string>> records;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon == std::string::npos) parse_error(lineno, "header without ':'");
      const std::string key = line.substr(1, colon - 1);
      std::string value = line.substr(colon + 1);
      value.erase(0, value.find_first_not_of(" \t"));
      if (key == "twist") {
        twist_lines.push_back(value);
      } else if (!header.emplace(key, value).second) {
        parse_error(lineno, "duplicate header " + key);
      }
    } else {
      records.emplace_back(lineno, line);
    }
  }
  for (const char* required : {"degree", "weight", "level", "modulus", "traceBound"})
    if (!header.count(required)) throw Error(ErrorCode::ParseError, std::string("missing header ") + required);

  const int degree = static_cast<int>(to_int64(parse_int(header["degree"], 0)));
  const int embed = header.count("embed") ? static_cast<int>(to_int64(parse_int(header["embed"], 0))) : 0;
  if (degree < 0 || embed < 0) throw Error(ErrorCode::ParseError, "negative degree");
  HighestWeight weight;
  try {
    weight = header["weight"].empty() ? HighestWeight{} : parse_weight(header["weight"]);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (static_cast<int>(weight.size()) != degree + embed) throw Error(ErrorCode::ParseError, "weight length does not match degree");
  const auto lv = split(header["level"]);
  if (lv.size() != 4) throw Error(ErrorCode::ParseError, "level needs N Nprime pPower charParity");
  LevelSpec level{parse_int(lv[0], 0), parse_int(lv[1], 0), parse_int(lv[2], 0),
                  static_cast<int>(to_int64(parse_int(lv[3], 0)))};

  FourierExpansion f(degree, build_rep(degree + embed, weight), level, parse_int(header["modulus"], 0),
                     parse_int(header["traceBound"], 0), embed);
  for (const auto& tl : twist_lines) {
    const auto parts = split(tl);
    if (parts.size() != 3) throw Error(ErrorCode::ParseError, "twist needs r p t");
    Twist tw;
    tw.r = static_cast<int>(to_int64(parse_int(parts[0], 0)));
    tw.p = parse_int(parts[1], 0);
    tw.t = static_cast<int>(to_int64(parse_int(parts[2], 0)));
    tw.modulus = power(tw.p, tw.t);
    f.add_twist(tw);
  }

  const int entries = degree * (degree + 1) / 2;
  std::optional<HalfIntegralMatrix> previous;
  for (const auto& [ln, text] : records) {
    const auto tokens = split(text);
    if (tokens.size() != static_cast<size_t>(entries + f.dimension() + 2) || tokens[0] != "T:" ||
        tokens[entries + 1] != "C:")
      parse_error(ln, "malformed record");
    IntVector upper, value;
    for (int i = 0; i < entries; ++i) upper.push_back(parse_int(tokens[1 + i], ln));
    for (int i = 0; i < f.dimension(); ++i) value.push_back(parse_int(tokens[entries + 2 + i], ln));
    try {
      HalfIntegralMatrix key = HalfIntegralMatrix::from_upper_triangle(degree, upper);
      if (previous && !(*previous < key)) parse_error(ln, "records out of order or duplicated");
      if (!is_psd(key)) parse_error(ln, "index is not positive semidefinite");
      f.set(key, value);
      previous = std::move(key);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError) throw;
      parse_error(ln, e.what());
    }
  }
  return f;
}

void save_sfex(const std::string& path, const FourierExpansion& f) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  write_sfex(os, f);
  if (!os) throw Error(ErrorCode::InvalidArgument, "write failed: " + path);
}

FourierExpansion load_sfex(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return read_sfex(is);
}

}  // namespace siegel
