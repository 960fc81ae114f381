// Acceptance runner: one PASS/FAIL line per criterion, pinned parameters.
// Exits nonzero if any criterion fails.

#include <cstdio>
#include <string>
#include <vector>

#include "safelc/properties.hpp"

using namespace safelc;

namespace {

constexpr double kNoCaptureSeconds = 60;
constexpr double kQbfSeconds = 120;
constexpr std::size_t kMinGeneratedSafe = 1000;
constexpr std::size_t kMinGamesCorpus = 200;

int failures = 0;

void line(int id, bool ok, const std::string& what) {
  std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string stats(const SuiteReport& r) {
  char buf[200];
  std::snprintf(buf, sizeof buf, "%s: checked %zu, skipped %zu, failed %zu, %.2f s", r.name.c_str(), r.checked,
                r.skipped, r.failed, r.seconds);
  return buf;
}

void notes(const SuiteReport& r) {
  for (const auto& n : r.notes) std::printf("    %s\n", n.c_str());
}

}  // namespace

int main() {
  SuiteOptions o;
  o.seed = 20240611;
  o.generated = kMinGeneratedSafe;
  o.games_generated = 250;
  o.random_polynomials = 1000;
  o.traversal_max_len = 200;
  o.pointer_max_len = 40;

  SuiteReport r1 = no_capture_suite(o);
  line(1, r1.passed && r1.seconds < kNoCaptureSeconds, stats(r1) + " (limit 60 s)");
  notes(r1);

  SuiteReport r2 = adequacy_suite(o);
  line(2, r2.passed, stats(r2));
  notes(r2);

  SuiteReport r3 = polynomial_suite(o);
  line(3, r3.passed && r3.skipped == 0, stats(r3));
  notes(r3);

  SuiteReport r4 = word_suite(o);
  line(4, r4.passed, stats(r4));
  notes(r4);

  SuiteReport r5 = qbf_suite(o);
  line(5, r5.passed && r5.seconds < kQbfSeconds, stats(r5) + " (limit 120 s)");
  notes(r5);

  SuiteReport r6 = traversal_suite(o);
  line(6, r6.passed && r6.checked >= kMinGamesCorpus, stats(r6));
  notes(r6);

  PointerSuites p = pointer_suites(o);
  line(7, p.safe_terms.passed && p.low_order.passed && p.order4_witness.passed,
       "(a) " + std::string(p.safe_terms.passed ? "ok" : "fail") + ", (b) " + (p.low_order.passed ? "ok" : "fail") +
           ", (c) " + (p.order4_witness.passed ? "ok" : "fail"));
  for (const SuiteReport* r : {&p.safe_terms, &p.low_order, &p.order4_witness}) {
    std::printf("  %s\n", stats(*r).c_str());
    notes(*r);
  }

  SuiteReport r8 = verdict_suite();
  line(8, r8.passed, stats(r8));
  notes(r8);

  std::printf("%d of 8 criteria failed\n", failures);
  return failures ? 1 : 0;
}
