#include <gtest/gtest.h>

#include "poc/query.hpp"
#include "poc/harness.hpp"

using namespace poc;

namespace {

ErrorKind parse_error(const std::string& text) {
  try {
    parse_query(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "parsed: " << text;
  return ErrorKind::IoError;
}

}  // namespace

TEST(Parse, MedicalQuery) {
  const Query q = parse_query("P(y3_x1, y1_x2, y2_x3)");
  ASSERT_EQ(q.k(), 3u);
  EXPECT_EQ(q.atoms[0], (Atom{0, 2}));
  EXPECT_EQ(q.atoms[1], (Atom{1, 0}));
  EXPECT_EQ(q.atoms[2], (Atom{2, 1}));
  EXPECT_FALSE(q.has_evidence());
  EXPECT_FALSE(q.conditional);
}

TEST(Parse, EducationConditional) {
  const Query q = parse_query("P(y1_x1, y2_x2, y2_x3 | x4, y2)");
  EXPECT_EQ(q.k(), 3u);
  EXPECT_EQ(q.x_evidence, 3u);
  EXPECT_EQ(q.y_evidence, 1u);
  EXPECT_TRUE(q.conditional);
  EXPECT_EQ(classify(q), Family::PN);
}

TEST(Parse, JointEvidenceForm) {
  const Query q = parse_query("P(y1_x1,y2_x2,y2_x3,x4,y2)");
  EXPECT_FALSE(q.conditional);
  EXPECT_EQ(q.x_evidence, 3u);
  EXPECT_EQ(q.y_evidence, 1u);
}

TEST(Parse, WhitespaceAndEvidenceOrder) {
  EXPECT_EQ(parse_query("  P ( y1 _ x2 ,y3_x1 | y2 , x3 ) "), parse_query("P(y1_x2, y3_x1 | x3, y2)"));
}

TEST(Parse, Errors) {
  EXPECT_EQ(parse_error("P(y1_x1, y2_x1)"), ErrorKind::DuplicateTreatment);
  EXPECT_EQ(parse_error("P(y1_x1 | x1)"), ErrorKind::EvidenceConflict);
  EXPECT_EQ(parse_error("P(y1_x1 | x2, x3)"), ErrorKind::MultipleEvidence);
  EXPECT_EQ(parse_error("P(y1_x1, y2, y3)"), ErrorKind::MultipleEvidence);
  EXPECT_EQ(parse_error("P(y0_x1)"), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_error("P(y1_x1"), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_error("Q(y1_x1)"), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_error("P()"), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_error("P(y1_x1 | x2, y1_x3)"), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_error("P(y1_x1) extra"), ErrorKind::SyntaxError);
}

TEST(Parse, SyntaxErrorReportsPosition) {
  try {
    parse_query("P(y1_z2)");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("position 5"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("'x'"), std::string::npos) << e.what();
  }
}

TEST(Render, RoundTripOnRandomQueries) {
  for (std::uint64_t s = 0; s < 400; ++s) {
    const Family f = kAllFamilies[s % 4];
    const Query q = random_query(f, 2 + s % 5, 2 + s % 3, s);
    EXPECT_EQ(parse_query(render_query(q)), q) << render_query(q);
    EXPECT_EQ(classify(q), f);
  }
}

TEST(Canonicalize, MedicalIsPermutationIdentity) {
  const CanonicalQuery cq = canonicalize(parse_query("P(y3_x1, y1_x2, y2_x3)"), 3);
  EXPECT_EQ(cq.family, Family::PNS);
  EXPECT_EQ(cq.k, 3u);
  EXPECT_EQ(cq.treatment_perm, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(cq.outcome_map, (std::vector<std::size_t>{2, 0, 1}));
}

TEST(Canonicalize, DiagonalBinary) {
  const CanonicalQuery cq = canonicalize(parse_query("P(y1_x1, y2_x2)"), Dims{2, 2});
  EXPECT_EQ(cq.outcome_map, (std::vector<std::size_t>{0, 1}));
}

TEST(Canonicalize, SwappedTreatmentsWithEvidence) {
  const CanonicalQuery cq = canonicalize(parse_query("P(y1_x2, y2_x1 | x3, y1)"), 3);
  EXPECT_EQ(cq.family, Family::PN);
  EXPECT_EQ(cq.treatment_perm, (std::vector<std::size_t>{1, 0, 2}));
  EXPECT_EQ(cq.outcome_map, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(cq.p_slot, 2u);
  EXPECT_EQ(cq.q_outcome, 0u);
  EXPECT_TRUE(cq.conditional);
}

TEST(Canonicalize, UnusedTreatmentsAscendAndIndexChecks) {
  const CanonicalQuery cq = canonicalize(parse_query("P(y1_x4, y2_x2 | x3)"), 5);
  EXPECT_EQ(cq.treatment_perm, (std::vector<std::size_t>{3, 1, 0, 2, 4}));
  EXPECT_EQ(cq.p_slot, 3u);
  EXPECT_THROW(canonicalize(parse_query("P(y1_x4)"), 3), Error);
  EXPECT_THROW(canonicalize(parse_query("P(y4_x1)"), 3), Error);
}

TEST(Classify, Partition) {
  EXPECT_EQ(classify(parse_query("P(y1_x1)")), Family::PNS);
  EXPECT_EQ(classify(parse_query("P(y1_x1, x2)")), Family::PSUB);
  EXPECT_EQ(classify(parse_query("P(y1_x1 | y2)")), Family::PREP);
  EXPECT_EQ(classify(parse_query("P(y1_x1, y2, x2)")), Family::PN);
  for (Family f : kAllFamilies) EXPECT_EQ(family_from_string(to_string(f)), f);
  EXPECT_FALSE(family_from_string("XYZ"));
}
