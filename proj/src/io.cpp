#include "annealdyn/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace annealdyn {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string_view strip_comment(std::string_view s) {
  const auto c = s.find('#');
  return trim(c == std::string_view::npos ? s : s.substr(0, c));
}

// Splits on commas and whitespace; empty fields are dropped.
std::vector<std::string> fields_of(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool parse_double(const std::string& s, double& x) {
  const char* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, x);
  return r.ec == std::errc() && r.ptr == end;
}

std::string where(std::size_t line) { return "line " + std::to_string(line) + ": "; }

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

IsingProblem problem_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("problem must be a JSON object");
  if (j.contains("name")) {
    try {
      return named_instance(j.at("name").get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(std::string("problem name: ") + e.what());
    }
  }
  try {
    const int n = j.at("n").get<int>();
    auto h = j.at("h").get<std::vector<double>>();
    if (static_cast<int>(h.size()) != n) throw ParseError("problem: h has " + std::to_string(h.size()) +
                                                          " entries, n = " + std::to_string(n));
    std::vector<Coupling> couplings;
    if (j.contains("J"))
      for (const auto& t : j.at("J")) {
        if (!t.is_array() || t.size() != 3) throw ParseError("problem: J entries must be [i, j, value]");
        couplings.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<double>()});
      }
    ProblemLimits limits;
    if (j.contains("max_abs_field")) limits.max_abs_field = j.at("max_abs_field").get<double>();
    if (j.contains("max_abs_coupling")) limits.max_abs_coupling = j.at("max_abs_coupling").get<double>();
    return IsingProblem(std::move(h), std::move(couplings), limits);
  } catch (const json::exception& e) {
    throw ParseError(std::string("problem: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("problem: ") + e.what());
  }
}

json problem_to_json(const IsingProblem& p) {
  json J = json::array();
  for (const auto& c : p.couplings()) J.push_back({c.i, c.j, c.value});
  return {{"n", p.size()}, {"h", p.fields()}, {"J", J}};
}

IsingProblem load_problem(const std::string& path) {
  try {
    return problem_from_json(json::parse(read_file(path)));
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

ScheduleTable read_schedule_table(std::istream& in) {
  std::vector<double> s, v;
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    const auto line = strip_comment(raw);
    if (line.empty()) continue;
    const auto f = fields_of(line);
    double a = 0.0, b = 0.0;
    if (f.size() != 2 || !parse_double(f[0], a) || !parse_double(f[1], b)) {
      if (s.empty() && f.size() == 2) continue;  // header
      throw ParseError(where(n) + "expected two numbers (s, value)");
    }
    s.push_back(a);
    v.push_back(b);
  }
  try {
    return ScheduleTable(std::move(s), std::move(v));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("schedule table: ") + e.what());
  }
}

ScheduleTable load_schedule_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_schedule_table(in);
}

std::vector<FrequencyTable> read_frequency_csv(std::istream& in) {
  std::vector<FrequencyTable> rows;
  std::string raw;
  std::size_t n = 0;
  bool header_allowed = true;
  while (std::getline(in, raw)) {
    ++n;
    const auto line = strip_comment(raw);
    if (line.empty()) continue;
    const auto f = fields_of(line);
    std::array<double, 5> x{};
    bool numeric = f.size() == 4 || f.size() == 5;
    for (std::size_t k = 0; numeric && k < f.size(); ++k) numeric = parse_double(f[k], x[k]);
    if (!numeric) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw ParseError(where(n) + "expected f1,f2,f3,f4[,count]");
    }
    header_allowed = false;
    FrequencyTable t;
    for (int k = 0; k < 4; ++k) t.f[k] = x[k];
    if (f.size() == 5) {
      if (x[4] < 0.0 || x[4] != std::floor(x[4])) throw ParseError(where(n) + "count must be a nonnegative integer");
      t.count = static_cast<std::uint64_t>(x[4]);
    }
    try {
      t.validate();
    } catch (const std::invalid_argument& e) {
      throw ParseError(where(n) + e.what());
    }
    rows.push_back(t);
  }
  if (rows.empty()) throw ParseError("frequency file has no data rows");
  return rows;
}

FrequencyTable read_samples(std::istream& in) {
  std::array<std::uint64_t, 4> counts{};
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    const auto line = strip_comment(raw);
    if (line.empty()) continue;
    try {
      const auto c = SpinConfiguration::parse(line);
      if (c.size() != 2) throw std::invalid_argument("expected two spins");
      ++counts[c.index()];
    } catch (const std::invalid_argument& e) {
      throw ParseError(where(n) + e.what());
    }
  }
  try {
    return FrequencyTable::from_counts(counts);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("samples: ") + e.what());
  }
}

FrequencyTable load_frequencies(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
    const auto rows = read_frequency_csv(in);
    if (rows.size() != 1) throw ParseError(path + ": expected exactly one frequency row");
    return rows.front();
  }
  return read_samples(in);
}

json bath_manifest(const BathSpec& bath, double dt_ns, double t_a_ns, const OnsetWindow& w) {
  return {{"seed", bath.seed},         {"bath_spins", bath.bath_spins}, {"g", bath.g},
          {"K_GHz", bath.K},           {"Omega_GHz", bath.Omega},       {"dt_ns", dt_ns},
          {"t_a_ns", t_a_ns},          {"onset_ns", {w.start_ns, w.end_ns}}};
}

}  // namespace annealdyn
