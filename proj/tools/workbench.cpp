// workbench: validate documents, print norms, run verification suites and
// emit the built-in corpus.
//
// Exit codes: 0 pass, 1 check failure, 2 input error.

#include "workbench/corpus.hpp"
#include "workbench/document.hpp"
#include "workbench/error.hpp"
#include "workbench/module_theory.hpp"
#include "workbench/rep_norms.hpp"
#include "workbench/suites.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>

namespace wb = workbench;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

int cmd_validate(const std::string& file) {
  const wb::Document doc = wb::load_document(file);
  const auto& g = doc.groupoid();
  std::cout << "ok: " << doc.name << ": " << g.unit_count() << " units, " << g.arrow_count() << " arrows, "
            << doc.graded.fibers().size() << " nonempty fibers, identity fiber has "
            << doc.graded.identity_fiber().groupoid->arrow_count() << " arrows, "
            << (doc.haar().is_counting() ? "counting" : "weighted") << " Haar system, " << doc.functions.size()
            << " functions\n";
  return kExitPass;
}

int cmd_norms(const std::string& file, const std::string& fn, const std::string& json_out) {
  const wb::Document doc = wb::load_document(file);
  const wb::GroupoidFunction a = doc.function(fn);
  const wb::GradedGroupoid& graded = doc.graded;
  const wb::IdentityFiber& fiber = graded.identity_fiber();

  const double restriction = wb::cstar_norm(wb::restrict_q(fiber, a), fiber.haar);
  const double module = wb::module_norm(graded, a);
  const double l_norm = wb::L_operator_norm(graded, a);
  const double i_norm = wb::i_norm(a, doc.haar());
  const double cstar = wb::cstar_norm(a, doc.haar());
  auto below = [](double x, double y) { return x <= y + wb::kSpectralTol * (1.0 + y); };
  const bool sandwich = below(restriction, module) && below(module, l_norm) && below(l_norm, i_norm);

  std::cout << std::setprecision(15);
  std::cout << "function:        " << fn << "\n"
            << "i_norm:          " << i_norm << "\n"
            << "cstar_norm:      " << cstar << "\n"
            << "module_norm:     " << module << "\n"
            << "L_operator_norm: " << l_norm << "\n"
            << "restriction:     " << restriction << "\n"
            << "sandwich:        " << (sandwich ? "holds" : "VIOLATED")
            << " (restriction <= module_norm <= L_operator_norm <= i_norm)\n";
  if (!json_out.empty()) {
    const wb::Json j{{"format_version", wb::kReportFormatVersion},
                     {"instance", doc.name},
                     {"function", fn},
                     {"i_norm", i_norm},
                     {"cstar_norm", cstar},
                     {"module_norm", module},
                     {"L_operator_norm", l_norm},
                     {"restriction_norm", restriction},
                     {"sandwich_holds", sandwich}};
    std::ofstream(json_out) << j.dump(2) << "\n";
  }
  return sandwich ? kExitPass : kExitFail;
}

int cmd_verify(const std::string& file, bool use_corpus, const std::string& suite, std::uint64_t seed,
               wb::Index count, const std::string& json_out, bool quiet) {
  if (!wb::is_suite(suite)) throw wb::InputError("--suite", "unknown suite \"" + suite + "\"");
  std::vector<wb::Document> docs;
  if (use_corpus) {
    for (auto& entry : wb::builtin_corpus(seed)) docs.push_back(std::move(entry.document));
  } else {
    if (file.empty()) throw wb::InputError("", "verify needs a document or --corpus");
    docs.push_back(wb::load_document(file, wb::ParseOptions{false}));
  }
  const wb::VerificationReport report = wb::verify(docs, suite, wb::SuiteOptions{seed, count});
  if (!json_out.empty()) {
    const std::string text = report.to_json().dump(2) + "\n";
    if (json_out == "-") {
      std::cout << text;
    } else {
      std::ofstream out(json_out, std::ios::binary);
      if (!out) throw wb::InputError(json_out, "cannot write report");
      out << text;
    }
  }
  if (json_out != "-") {
    const std::string text = report.to_text();
    if (quiet) {
      std::cout << text.substr(text.rfind("summary:"));
    } else {
      std::cout << text;
    }
  }
  return report.ok() ? kExitPass : kExitFail;
}

std::string file_name(const std::string& instance) {
  std::string out = instance;
  for (char& c : out)
    if (c == '/') c = '_';
  return out + ".json";
}

int cmd_corpus(std::uint64_t seed, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto corpus = wb::builtin_corpus(seed);
  for (const auto& entry : corpus) {
    const std::filesystem::path path = std::filesystem::path(dir) / file_name(entry.document.name);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw wb::InputError(path.string(), "cannot write document");
    out << entry.json.dump(2) << "\n";
  }
  std::cout << "wrote " << corpus.size() << " documents to " << dir << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite graded groupoid workbench"};
  app.require_subcommand(1);

  std::string file, fn, json_out, suite = "all", out_dir;
  std::uint64_t seed = 42;
  wb::Index count = 100;
  bool use_corpus = false, quiet = false;

  auto* validate = app.add_subcommand("validate", "Parse and validate a document");
  validate->add_option("file", file, "Document path")->required();

  auto* norms = app.add_subcommand("norms", "Print the norms of a named function");
  norms->add_option("file", file, "Document path")->required();
  norms->add_option("--fn", fn, "Function name (\"unit\" and \"zero\" are built in)")->required();
  norms->add_option("--json", json_out, "Also write the norms as JSON");

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("file", file, "Document path");
  verify->add_flag("--corpus", use_corpus, "Run on the built-in corpus");
  verify->add_option("--suite", suite, "haar, algebra, norms, inclusion, module, expectation, bundle or all");
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--count", count, "Random functions per check")->check(CLI::Range(1, 100000));
  verify->add_option("--json", json_out, "Write the machine report here (\"-\" for stdout)");
  verify->add_flag("-q,--quiet", quiet, "Print only the summary line");

  auto* corpus = app.add_subcommand("corpus", "Write the built-in corpus as documents");
  corpus->add_option("--seed", seed, "Seed for the random Haar weights");
  corpus->add_option("--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    if (*validate) return cmd_validate(file);
    if (*norms) return cmd_norms(file, fn, json_out);
    if (*verify) return cmd_verify(file, use_corpus, suite, seed, count, json_out, quiet);
    if (*corpus) return cmd_corpus(seed, out_dir);
  } catch (const wb::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
