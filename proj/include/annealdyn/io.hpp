#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "annealdyn/extraction.hpp"
#include "annealdyn/problems.hpp"
#include "annealdyn/schedules.hpp"
#include "annealdyn/spinbath.hpp"

namespace annealdyn {

using json = nlohmann::json;

// Thrown for malformed input files; the message names the offending field or line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"n": 2, "h": [..], "J": [[i, j, value], ..]} with 0-based qubit indices, or
// {"name": "2S1"} for a built-in instance.
IsingProblem problem_from_json(const json& j);
json problem_to_json(const IsingProblem& p);
IsingProblem load_problem(const std::string& path);

// Two columns (s, value) per line, separated by whitespace or a comma; '#' starts a comment.
ScheduleTable read_schedule_table(std::istream& in);
ScheduleTable load_schedule_table(const std::string& path);

// Rows f1,f2,f3,f4[,count]; an optional header line is skipped.
std::vector<FrequencyTable> read_frequency_csv(std::istream& in);
// One two-spin string per line ("+-", "ud", or "10" with 1 = up); counts per basis index.
FrequencyTable read_samples(std::istream& in);
FrequencyTable load_frequencies(const std::string& path);  // by extension: .csv or samples

json bath_manifest(const BathSpec& bath, double dt_ns, double t_a_ns, const OnsetWindow& w);

std::string read_file(const std::string& path);

}  // namespace annealdyn
