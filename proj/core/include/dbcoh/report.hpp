#pragma once

#include <string>
#include <vector>

namespace dbcoh {

enum class Verdict { pass, fail, probabilistic_pass };

const char* to_string(Verdict v);

/// Structured verdict shared by every checker.  A failing report carries at
/// least one detail naming the violated claim.
struct CheckReport {
  struct Detail {
    std::string claim;
    std::string location;
    std::string witness;
  };

  Verdict verdict = Verdict::pass;
  std::vector<Detail> details;

  bool passed() const { return verdict != Verdict::fail; }
  explicit operator bool() const { return passed(); }

  void fail(std::string claim, std::string location, std::string witness = {});
  void note(std::string claim, std::string location, std::string witness = {});
  /// Downgrades pass to probabilistic_pass; fail stays fail.
  void mark_probabilistic();
  /// Folds another report in: fail dominates, then probabilistic.
  void absorb(const CheckReport& other, const std::string& prefix = {});
};

}  // namespace dbcoh
