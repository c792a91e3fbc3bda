#pragma once

// Counterfactual conjunction queries.
//
//   query  := "P(" atoms ")" | "P(" atoms "|" evlist ")" | "P(" atoms "," evlist ")"
//   atoms  := atom ("," atom)*
//   atom   := "y" INDEX "_x" INDEX
//   evlist := ev ("," ev)*
//   ev     := "x" INDEX | "y" INDEX
//
// Indices are 1-based in text and 0-based in the structs below. Whitespace
// between tokens is ignored.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "poc/dist.hpp"
#include "poc/error.hpp"

namespace poc {

/// The event Y_{x_treatment} = y_outcome.
struct Atom {
  std::size_t treatment = 0;
  std::size_t outcome = 0;
  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Query {
  std::vector<Atom> atoms;
  std::optional<std::size_t> x_evidence;
  std::optional<std::size_t> y_evidence;
  bool conditional = false;

  std::size_t k() const noexcept { return atoms.size(); }
  bool has_evidence() const noexcept { return x_evidence.has_value() || y_evidence.has_value(); }

  friend bool operator==(const Query&, const Query&) = default;
};

enum class Family { PNS, PSUB, PREP, PN };

constexpr std::string_view to_string(Family f) {
  switch (f) {
    case Family::PNS: return "PNS";
    case Family::PSUB: return "PSUB";
    case Family::PREP: return "PREP";
    case Family::PN: return "PN";
  }
  return "?";
}

inline constexpr Family kAllFamilies[] = {Family::PNS, Family::PSUB, Family::PREP, Family::PN};

inline std::optional<Family> family_from_string(std::string_view s) {
  for (Family f : kAllFamilies)
    if (to_string(f) == s) return f;
  return std::nullopt;
}

inline Family classify(const Query& q) {
  if (q.x_evidence && q.y_evidence) return Family::PN;
  if (q.x_evidence) return Family::PSUB;
  if (q.y_evidence) return Family::PREP;
  return Family::PNS;
}

/// Query relabeled so that atom j occupies treatment slot j.
struct CanonicalQuery {
  Family family = Family::PNS;
  std::size_t k = 0;
  /// slot -> original treatment; a permutation of 0..n-1.
  std::vector<std::size_t> treatment_perm;
  /// slot -> queried outcome, for slots 0..k-1.
  std::vector<std::size_t> outcome_map;
  std::optional<std::size_t> p_slot;
  std::optional<std::size_t> q_outcome;
  bool conditional = false;

  std::size_t n() const noexcept { return treatment_perm.size(); }
  std::size_t treatment(std::size_t slot) const { return treatment_perm[slot]; }

  friend bool operator==(const CanonicalQuery&, const CanonicalQuery&) = default;
};

/// Structural checks independent of dimensions.
inline void check_query(const Query& q) {
  if (q.atoms.empty()) throw Error(ErrorKind::SyntaxError, "query has no atoms");
  for (std::size_t i = 0; i < q.atoms.size(); ++i)
    for (std::size_t j = i + 1; j < q.atoms.size(); ++j)
      if (q.atoms[i].treatment == q.atoms[j].treatment) {
        throw Error(ErrorKind::DuplicateTreatment,
                    "treatment x" + std::to_string(q.atoms[i].treatment + 1) + " appears in two atoms");
      }
  if (q.x_evidence) {
    for (const Atom& a : q.atoms)
      if (a.treatment == *q.x_evidence) {
        throw Error(ErrorKind::EvidenceConflict,
                    "evidence x" + std::to_string(*q.x_evidence + 1) + " is also an atom treatment");
      }
  }
  if (q.conditional && !q.has_evidence()) {
    throw Error(ErrorKind::SyntaxError, "conditional query without evidence");
  }
}

namespace detail {

class QueryParser {
 public:
  explicit QueryParser(std::string_view text) : text_(text) {}

  Query parse() {
    Query q;
    expect('P');
    expect('(');
    q.atoms.push_back(parse_atom());
    bool in_evidence = false;
    while (true) {
      skip_ws();
      if (peek() == ')') {
        ++pos_;
        break;
      }
      if (peek() == '|') {
        if (in_evidence) fail("',' or ')'");
        ++pos_;
        q.conditional = true;
        in_evidence = true;
        parse_evidence(q);
        continue;
      }
      if (peek() != ',') fail(in_evidence ? "',' or ')'" : "',', '|' or ')'");
      ++pos_;
      skip_ws();
      if (in_evidence) {
        parse_evidence(q);
        continue;
      }
      // Either another atom ("y<i>_x<j>") or the first evidence term.
      const std::size_t save = pos_;
      if (peek() == 'y') {
        ++pos_;
        (void)parse_index();
        skip_ws();
        const bool is_atom = peek() == '_';
        pos_ = save;
        if (is_atom) {
          q.atoms.push_back(parse_atom());
          continue;
        }
      }
      in_evidence = true;
      parse_evidence(q);
    }
    skip_ws();
    if (pos_ != text_.size()) fail("end of input");
    check_query(q);
    return q;
  }

 private:
  Atom parse_atom() {
    expect('y');
    const std::size_t outcome = parse_index();
    expect('_');
    expect('x');
    const std::size_t treatment = parse_index();
    return Atom{treatment, outcome};
  }

  void parse_evidence(Query& q) {
    skip_ws();
    const char c = peek();
    if (c != 'x' && c != 'y') fail("evidence term 'x<i>' or 'y<i>'");
    ++pos_;
    const std::size_t idx = parse_index();
    skip_ws();
    if (peek() == '_') fail("',' or ')' (atoms must precede evidence)");
    auto& slot = c == 'x' ? q.x_evidence : q.y_evidence;
    if (slot) {
      throw Error(ErrorKind::MultipleEvidence,
                  std::string("second ") + c + "-evidence term at position " + std::to_string(pos_));
    }
    slot = idx;
  }

  std::size_t parse_index() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      if (value > 1'000'000) fail("index below 10^6");
      ++pos_;
    }
    if (pos_ == start) fail("index");
    if (value == 0) {
      pos_ = start;
      fail("nonzero index");
    }
    return value - 1;
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("'") + c + "'");
    ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const std::string found = pos_ < text_.size() ? std::string("'") + text_[pos_] + "'" : "end of input";
    throw Error(ErrorKind::SyntaxError,
                "at position " + std::to_string(pos_) + ": expected " + expected + ", found " + found);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Query parse_query(std::string_view text) { return detail::QueryParser(text).parse(); }

/// Inverse of parse_query; "P(y3_x1, y1_x2 | x4, y2)".
inline std::string render_query(const Query& q) {
  std::string out = "P(";
  for (std::size_t i = 0; i < q.atoms.size(); ++i) {
    if (i) out += ", ";
    out += "y" + std::to_string(q.atoms[i].outcome + 1) + "_x" + std::to_string(q.atoms[i].treatment + 1);
  }
  bool first = true;
  auto ev = [&](char c, std::size_t idx) {
    out += first ? (q.conditional ? " | " : ", ") : ", ";
    first = false;
    out += c + std::to_string(idx + 1);
  };
  if (q.x_evidence) ev('x', *q.x_evidence);
  if (q.y_evidence) ev('y', *q.y_evidence);
  out += ")";
  return out;
}

/// Relabels treatments so atom j sits in slot j (unused treatments follow in
/// ascending order) and records each slot's queried outcome. `n` is the
/// square side the query is evaluated against.
inline CanonicalQuery canonicalize(const Query& q, std::size_t n) {
  check_query(q);
  auto check_idx = [n](std::size_t idx, const char* what) {
    if (idx >= n) {
      throw Error(ErrorKind::IndexOutOfRange,
                  std::string(what) + std::to_string(idx + 1) + " exceeds dimension " + std::to_string(n));
    }
  };
  for (const Atom& a : q.atoms) {
    check_idx(a.treatment, "x");
    check_idx(a.outcome, "y");
  }
  if (q.x_evidence) check_idx(*q.x_evidence, "x");
  if (q.y_evidence) check_idx(*q.y_evidence, "y");
  if (q.k() > n) throw Error(ErrorKind::DimensionTooSmall, "k exceeds n");

  CanonicalQuery cq;
  cq.family = classify(q);
  cq.k = q.k();
  cq.conditional = q.conditional;
  std::vector<bool> used(n, false);
  for (const Atom& a : q.atoms) {
    cq.treatment_perm.push_back(a.treatment);
    cq.outcome_map.push_back(a.outcome);
    used[a.treatment] = true;
  }
  for (std::size_t t = 0; t < n; ++t)
    if (!used[t]) cq.treatment_perm.push_back(t);
  if (q.x_evidence) {
    auto it = std::find(cq.treatment_perm.begin(), cq.treatment_perm.end(), *q.x_evidence);
    cq.p_slot = static_cast<std::size_t>(it - cq.treatment_perm.begin());
  }
  cq.q_outcome = q.y_evidence;
  return cq;
}

inline CanonicalQuery canonicalize(const Query& q, const Dims& dims) { return canonicalize(q, dims.side()); }

}  // namespace poc
