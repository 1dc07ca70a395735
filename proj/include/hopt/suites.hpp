#pragma once

// Built-in theorem suites. Each suite drives exactly one property check over
// dimension tuples and seeded instances.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hopt/checks.hpp"

namespace hopt {

struct SuiteOptions {
  Mode mode = Mode::Causal;
  std::uint64_t seed = 0;
  std::size_t max_dim = 3;
  /// One dimension tuple; empty means the suite's default tuples.
  std::vector<std::size_t> dims;
  /// Explicit instance seeds; empty means `count` seeds derived from `seed`.
  std::vector<std::uint64_t> seeds;
  std::optional<std::size_t> count;
};

using ReportSink = std::function<void(const CheckReport&)>;

struct SuiteInfo {
  std::string name;
  std::string check;
  std::string summary;
  std::size_t arity;
  std::function<void(const SuiteOptions&, const ReportSink&)> run;
};

const std::vector<SuiteInfo>& theorem_suites();
const SuiteInfo* find_suite(const std::string& name);

/// Throws Error for an unknown suite or a dims tuple of the wrong length.
void run_suite(const std::string& name, const SuiteOptions& opts, const ReportSink& sink);
std::vector<CheckReport> run_suite(const std::string& name, const SuiteOptions& opts);

/// Seed of the k-th instance under base seed s.
std::uint64_t instance_seed(std::uint64_t s, std::uint64_t k);

}  // namespace hopt
