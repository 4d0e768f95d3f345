#pragma once

#include "workbench/document.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace workbench {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportFormatVersion = "1";

enum class CheckStatus { pass, fail, skip, info };

std::string to_string(CheckStatus s);

// One verified property on one instance. `anchor` is the label of the
// statement the property comes from; `witnesses` holds trial counts, the
// largest deviation seen and the first failure, plus check-specific data.
struct CheckEntry {
  std::string suite;
  std::string instance;
  std::string check;
  std::string anchor;
  CheckStatus status = CheckStatus::pass;
  Json witnesses;
  double tolerance = 0.0;  // the tolerance applied by this check
  std::uint64_t seed = 0;
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  Index count = 100;
};

// haar, algebra, norms, inclusion, module, expectation, bundle.
const std::vector<std::string>& suite_names();
// True for the names above and "all".
bool is_suite(const std::string& name);

// Runs one suite (or "all") on one document. Instances whose Haar weights
// fail left invariance get a failed haar entry and a skip entry in every
// other suite. Throws DomainError on an unknown suite name.
std::vector<CheckEntry> run_suite(const std::string& suite, const Document& doc, const SuiteOptions& options);

struct VerificationReport {
  std::string suite;
  SuiteOptions options;
  std::vector<CheckEntry> entries;  // sorted by (suite, instance, check)

  Index count(CheckStatus s) const;
  bool ok() const { return count(CheckStatus::fail) == 0; }
  // Schema version "1"; byte-identical for identical inputs.
  Json to_json() const;
  // One line per entry plus a summary line.
  std::string to_text() const;
};

VerificationReport verify(std::span<const Document> documents, const std::string& suite,
                          const SuiteOptions& options);

}  // namespace workbench
