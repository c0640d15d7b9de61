#include "dbcoh/report.hpp"

namespace dbcoh {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::probabilistic_pass:
      return "probabilistic_pass";
  }
  return "?";
}

void CheckReport::fail(std::string claim, std::string location, std::string witness) {
  verdict = Verdict::fail;
  details.push_back({std::move(claim), std::move(location), std::move(witness)});
}

void CheckReport::note(std::string claim, std::string location, std::string witness) {
  details.push_back({std::move(claim), std::move(location), std::move(witness)});
}

void CheckReport::mark_probabilistic() {
  if (verdict == Verdict::pass) verdict = Verdict::probabilistic_pass;
}

void CheckReport::absorb(const CheckReport& other, const std::string& prefix) {
  if (other.verdict == Verdict::fail)
    verdict = Verdict::fail;
  else if (other.verdict == Verdict::probabilistic_pass)
    mark_probabilistic();
  for (const auto& d : other.details)
    details.push_back({d.claim, prefix.empty() ? d.location : prefix + "/" + d.location, d.witness});
}

}  // namespace dbcoh
