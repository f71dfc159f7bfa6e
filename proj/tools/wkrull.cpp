// Command-line front end: analyze a monoid, run the dyadic counterexample
// suite, or cross-validate deciders on a random corpus.

#include "wkrull/cli.hpp"
#include "wkrull/counterexample.hpp"
#include "wkrull/errors.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace wkrull;

namespace {

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read input file " + path);
    buf << in.rdbuf();
  }
  return buf.str();
}

void emit(const nlohmann::ordered_json& doc, const std::string& format, const std::string& out) {
  const std::string text = format == "text" ? cli::render_text(doc) : doc.dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error("cannot write output file " + out);
  f << text;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Krull-property ladder of affine monoids and their monoid algebras"};
  app.set_version_flag("--version", std::string(cli::kToolVersion));
  app.require_subcommand(1);

  std::string format = "json", out;
  bool timing = false;
  std::optional<std::int64_t> degree_bound;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", out, "Output path (default stdout)");
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--timing", timing, "Include wall-clock timings (output is no longer reproducible)");
  };

  std::string input;
  auto* analyze = app.add_subcommand("analyze", "Decide the property ladder of one monoid");
  analyze->add_option("--input", input, "JSON monoid description, - for stdin")->required();
  analyze->add_option("--degree-bound", degree_bound, "Override the derived degree bound")
      ->check(CLI::NonNegativeNumber);
  common(analyze);

  int depth = 4;
  auto* counter = app.add_subcommand("counterexample", "Run the dyadic counterexample suite");
  counter->add_option("--depth", depth, "Depth n of G_n")->check(CLI::Range(1, kMaxDepth));
  common(counter);

  std::uint64_t seed = 1;
  std::size_t count = 20;
  auto* corpus = app.add_subcommand("corpus", "Cross-validate deciders on random monoids");
  corpus->add_option("--seed", seed, "Random seed");
  corpus->add_option("--count", count, "Number of monoids")
      ->check(CLI::Range(std::size_t{0}, cli::kMaxCorpusCount));
  corpus->add_option("--degree-bound", degree_bound, "Override the derived degree bound")
      ->check(CLI::NonNegativeNumber);
  common(corpus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitParse;
  }

  try {
    cli::ReportOptions opts;
    opts.degree_bound = degree_bound;
    opts.timing = timing;
    if (analyze->parsed()) {
      const auto in = cli::parse_monoid_input(read_input(input));
      emit(cli::analyze_report(in, opts), format, out);
      return cli::kExitOk;
    }
    if (counter->parsed()) {
      const auto t0 = std::chrono::steady_clock::now();
      auto rep = cli::counterexample_report(depth);
      if (timing)
        rep.document["timing_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      emit(rep.document, format, out);
      return rep.passed ? cli::kExitOk : cli::kExitSuiteFailure;
    }
    auto rep = cli::corpus_report(seed, count, opts);
    emit(rep.document, format, out);
    return rep.contradictions == 0 ? cli::kExitOk : cli::kExitContradiction;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_code_for(e);
  }
}
