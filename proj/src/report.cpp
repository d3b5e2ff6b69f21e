#include "levy/report.hpp"

#include <utility>

namespace levy {

std::string to_string(ConditionId id)
{
  switch (id) {
    case ConditionId::L1p: return "L1p";
    case ConditionId::L2: return "L2";
    case ConditionId::L3: return "L3";
    case ConditionId::THETA_I: return "THETA_I";
    case ConditionId::THETA_II: return "THETA_II";
    case ConditionId::THETA_III: return "THETA_III";
    case ConditionId::AL_I: return "AL_I";
    case ConditionId::AL_II: return "AL_II";
    case ConditionId::AL_III: return "AL_III";
    case ConditionId::LA_RHO_BOUNDS: return "LA_RHO_BOUNDS";
  }
  return "unknown";
}

std::string to_string(Verdict v)
{
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

bool ConditionReport::add(std::string quantity, double value, double threshold, bool within)
{
  evidence.push_back({ std::move(quantity), value, threshold, within });
  return within;
}

void ConditionReport::note(const std::string& text)
{
  if (!notes.empty())
    notes += "; ";
  notes += text;
}

} // namespace levy
