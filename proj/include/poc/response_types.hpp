#pragma once

// Response types: a unit's potential-response function, one outcome per
// treatment. Together with the realized treatment they index the latent
// cells (r, t) over which both the LP oracle and SCM joints are defined.
//
// Enumeration is lexicographic with treatment 1's outcome varying slowest.
// Cell (r, t) has flat index r * n_treatments + t.

#include <cstddef>
#include <string>
#include <vector>

#include "poc/error.hpp"
#include "poc/query.hpp"

namespace poc {

class ResponseSpace {
 public:
  ResponseSpace(std::size_t n_treatments, std::size_t n_outcomes)
      : n_treatments_(n_treatments), n_outcomes_(n_outcomes), strides_(n_treatments) {
    std::size_t stride = 1;
    for (std::size_t t = n_treatments; t-- > 0;) {
      strides_[t] = stride;
      stride *= n_outcomes;
    }
    n_types_ = stride;
  }

  std::size_t n_treatments() const noexcept { return n_treatments_; }
  std::size_t n_outcomes() const noexcept { return n_outcomes_; }
  std::size_t n_types() const noexcept { return n_types_; }
  std::size_t n_cells() const noexcept { return n_types_ * n_treatments_; }

  /// Outcome response type r assigns to treatment t.
  std::size_t outcome(std::size_t r, std::size_t t) const { return (r / strides_[t]) % n_outcomes_; }

  std::size_t cell(std::size_t r, std::size_t t) const { return r * n_treatments_ + t; }

  std::vector<std::size_t> digits(std::size_t r) const {
    std::vector<std::size_t> out(n_treatments_);
    for (std::size_t t = 0; t < n_treatments_; ++t) out[t] = outcome(r, t);
    return out;
  }

  /// Whether cell (r, t) lies in the joint event of q: every atom holds
  /// under r, the realized treatment is the x-evidence, and the realized
  /// outcome r[t] is the y-evidence.
  bool in_event(const Query& q, std::size_t r, std::size_t t) const {
    for (const Atom& a : q.atoms)
      if (outcome(r, a.treatment) != a.outcome) return false;
    if (q.x_evidence && t != *q.x_evidence) return false;
    if (q.y_evidence && outcome(r, t) != *q.y_evidence) return false;
    return true;
  }

  void check_query(const Query& q) const {
    auto bad = [](const char* what, std::size_t idx, std::size_t n) {
      throw Error(ErrorKind::IndexOutOfRange,
                  std::string(what) + std::to_string(idx + 1) + " exceeds " + std::to_string(n));
    };
    for (const Atom& a : q.atoms) {
      if (a.treatment >= n_treatments_) bad("x", a.treatment, n_treatments_);
      if (a.outcome >= n_outcomes_) bad("y", a.outcome, n_outcomes_);
    }
    if (q.x_evidence && *q.x_evidence >= n_treatments_) bad("x", *q.x_evidence, n_treatments_);
    if (q.y_evidence && *q.y_evidence >= n_outcomes_) bad("y", *q.y_evidence, n_outcomes_);
  }

 private:
  std::size_t n_treatments_;
  std::size_t n_outcomes_;
  std::vector<std::size_t> strides_;
  std::size_t n_types_ = 1;
};

}  // namespace poc
