#ifndef PREVCALC_LAWLAB_HPP
#define PREVCALC_LAWLAB_HPP

#include "prevcalc/transforms.hpp"

#include <json.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace prevcalc {

struct RandomParams {
  std::size_t n = 2;
  std::size_t max_branches = 3;
  std::size_t max_gens = 3;
  long max_denominator = 8;
  Flavor flavor = Flavor::Plain;
};

/// Deterministic in (seed, params). MinOfSub or MaxOfSuper with rational
/// generators; subnorm/norm flavors draw generator masses <= 1 / = 1.
Prevision random_prevision(std::uint64_t seed, const RandomParams& params);
Prevision random_prevision(std::mt19937_64& rng, const RandomParams& params);

/// Deliberately broken variants of library maps, for mutation testing.
enum class Mutant {
  None,
  MinPAsMax,        // minP takes the pointwise max of the generators
  NoShadowClosure,  // normalized_sublinear_between returns F0 unchanged
  NoGammaRay,       // norm corner witness drops the 1-ray (plain witness)
};

std::string to_string(Mutant m);
Mutant parse_mutant(const std::string& s);
std::vector<Mutant> all_mutants();

struct LawFailure {
  std::size_t trial = 0;
  std::string detail;
  nlohmann::json inputs;
};

struct LawReport {
  std::string law;
  std::size_t trials = 0;
  std::size_t passes = 0;
  std::vector<LawFailure> failures;
  double runtime_ms = 0;
};

std::vector<std::string> law_names();

/// Runs every registered law on `trials` random instances (n <= 3).
/// Reports are sorted by law name; failures by trial index.
std::vector<LawReport> run_law_suite(std::uint64_t seed, std::size_t trials, std::size_t n, Mutant mutant = Mutant::None);

bool all_pass(const std::vector<LawReport>& reports);

/// Runtime is included only when `timing` is set, so reports stay byte-stable.
nlohmann::json reports_to_json(const std::vector<LawReport>& reports, bool timing);

struct ExampleCheck {
  std::string description;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct ExampleVerdict {
  std::string id;
  std::vector<ExampleCheck> checks;
  bool pass() const;
};

std::vector<std::string> example_ids();
/// Throws PreconditionError for an unknown id.
ExampleVerdict reproduce_example(const std::string& id);
nlohmann::json verdict_to_json(const ExampleVerdict& v);

}  // namespace prevcalc

#endif  // PREVCALC_LAWLAB_HPP
