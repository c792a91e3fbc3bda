#pragma once

// Count tables of the two worked examples (medical, 3x3; education, 4x3).
// Rows index treatments, columns outcomes. fixtures/*.json hold the same
// numbers.

#include "poc/dist.hpp"

namespace poc::fixtures {

/// Randomized trial: 300 subjects per treatment arm. Observational: 900
/// subjects choosing their own treatment.
inline RawDataset medical() {
  return RawDataset{{{46, 23, 231}, {270, 8, 22}, {40, 223, 37}},
                    {{131, 68, 1}, {45, 22, 51}, {38, 483, 61}},
                    true};
}

/// Four study programs by three outcomes. Experimental arms of 300,
/// observational cohort of 1200.
inline RawDataset education() {
  return RawDataset{{{195, 51, 54}, {11, 266, 23}, {80, 198, 22}, {100, 147, 53}},
                    {{67, 129, 193}, {11, 17, 87}, {53, 53, 70}, {46, 436, 38}},
                    true};
}

inline constexpr const char* kMedicalQuery = "P(y3_x1, y1_x2, y2_x3)";
inline constexpr const char* kEducationJointQuery = "P(y1_x1, y2_x2, y2_x3, x4, y2)";
inline constexpr const char* kEducationConditionalQuery = "P(y1_x1, y2_x2, y2_x3 | x4, y2)";

}  // namespace poc::fixtures
