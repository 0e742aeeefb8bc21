#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dtop/lattice.hpp"

// Named executable checks, one per theorem or worked example, plus
// counterexample searches for the open implications.
namespace dtop::verify {

enum class Mode { fixture, exhaustive, randomized };
enum class Outcome { pass, fail, budget_exceeded };
std::string to_string(Mode m);
std::string to_string(Outcome o);

class UnknownCheck : public Error {
 public:
  using Error::Error;
};

struct Context;

struct TheoremCheck {
  std::string id;
  Mode mode = Mode::fixture;
  std::string family;  // instance family, in words
  std::function<void(Context&)> run;
};

// Registry order is the report order.
const std::vector<TheoremCheck>& registry();
const TheoremCheck& find_check(const std::string& id);

struct Report {
  std::string id;
  Mode mode = Mode::fixture;
  std::uint64_t instances = 0;
  Outcome outcome = Outcome::pass;
  std::string witness;  // counterexample on fail, reproduced object or note otherwise
  std::string json() const;  // one line
  std::string text() const;
};

// budget caps the number of instances a check may examine; inner searches are
// bounded separately and report budget_exceeded the same way.
Report run_check(const std::string& id, std::uint64_t budget, std::uint64_t seed);
std::vector<Report> run_all(std::uint64_t budget, std::uint64_t seed, unsigned threads = 0);

// Open implications: the search never asserts the implication, it only reports.
enum class OpenOutcome { no_counterexample_found, counterexample, budget_exceeded };
std::string to_string(OpenOutcome o);

struct OpenReport {
  std::string id;
  OpenOutcome outcome = OpenOutcome::no_counterexample_found;
  std::uint64_t instances = 0;
  std::string family;
  std::string witness;
  std::string json() const;
  std::string text() const;
};

// Factor pool for an open search. Multimap searches cap factors at 2 points.
struct OpenFamily {
  std::size_t max_points = 4;
  bool intervals_only = false;  // [0,k] under c1 only
  bool edges_only = false;      // drop factors without an adjacent pair
};

const std::vector<std::string>& open_problem_ids();
OpenReport search_open_problem(const std::string& id, const OpenFamily& family, std::uint64_t budget);

constexpr std::uint64_t kDefaultBudget = 4'000'000'000ULL;

}  // namespace dtop::verify
