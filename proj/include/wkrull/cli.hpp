#pragma once

// Report assembly behind the command-line tool: input parsing, the analyze,
// counterexample and corpus documents, and their text rendering.

#include "wkrull/integer.hpp"

#include "json.hpp"

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <vector>

namespace wkrull::cli {

inline constexpr const char* kToolName = "wkrull";
inline constexpr const char* kToolVersion = "0.1.0";

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitParse = 2,
  kExitUnsupportedDimension = 3,
  kExitBoundExceeded = 4,
  kExitSuiteFailure = 5,
  kExitContradiction = 6,
};

/// `{"ambient_dim": d, "generators": [[...], ...], "degree_bound": b}`.
struct MonoidInput {
  std::size_t ambient_dim = 0;
  std::vector<IntVector> generators;
  std::optional<std::int64_t> degree_bound;
};

/// Throws ParseError naming the line and column of a syntax error, or the
/// offending field of a schema violation.
MonoidInput parse_monoid_input(const std::string& text);

struct ReportOptions {
  /// Overrides the degree bound of the input.
  std::optional<std::int64_t> degree_bound;
  /// Adds wall-clock timings, which makes output run dependent.
  bool timing = false;
};

/// Full property ladder, spectrum table and oracle cross-check. Library
/// errors propagate.
nlohmann::ordered_json analyze_report(const MonoidInput& input, const ReportOptions& opts = {});

struct SuiteReport {
  nlohmann::ordered_json document;
  bool passed = false;
};

/// The dyadic counterexample checks at the given depth. Throws DepthExceeded
/// outside [1, kMaxDepth].
SuiteReport counterexample_report(int depth);

/// Seeded random monoids: dimension 1 to 3, 1 to 6 generators, entries 0 to 5.
std::vector<MonoidInput> random_corpus(std::uint64_t seed, std::size_t count);

inline constexpr std::size_t kMaxCorpusCount = 1000;

struct CorpusReport {
  nlohmann::ordered_json document;
  std::size_t contradictions = 0;
};

/// Runs the deciders and oracles on random_corpus(seed, count). Throws
/// PreconditionViolated for count > kMaxCorpusCount.
CorpusReport corpus_report(std::uint64_t seed, std::size_t count, const ReportOptions& opts = {});

/// Indented key/value projection of a report.
std::string render_text(const nlohmann::ordered_json& doc);

/// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& e);

} // namespace wkrull::cli
