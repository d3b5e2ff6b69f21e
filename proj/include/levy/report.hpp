#pragma once

#include <string>
#include <vector>

namespace levy {

enum class ConditionId
{
  L1p,
  L2,
  L3,
  THETA_I,
  THETA_II,
  THETA_III,
  AL_I,
  AL_II,
  AL_III,
  LA_RHO_BOUNDS
};

enum class Verdict
{
  holds,
  fails,
  inconclusive
};

std::string to_string(ConditionId id);
std::string to_string(Verdict v);

//! One measured quantity and the threshold it was held against. within
//! records whether the quantity satisfied the condition's comparison.
struct Evidence
{
  std::string quantity;
  double value = 0.0;
  double threshold = 0.0;
  bool within = true;
};

struct ConditionReport
{
  ConditionId condition_id = ConditionId::L1p;
  Verdict verdict = Verdict::inconclusive;
  std::vector<Evidence> evidence;
  std::string notes;

  bool holds() const { return verdict == Verdict::holds; }
  //! Appends a row and returns its within flag.
  bool add(std::string quantity, double value, double threshold, bool within);
  //! Appends to notes, separated by "; ".
  void note(const std::string& text);
};

} // namespace levy
