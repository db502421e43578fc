#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qknot {

/// Exact integer coefficient type. A-polynomial coefficients grow
/// exponentially in |p|, so fixed-width integers are not an option.
using Int = mpz_class;

/// binary64 complex carrier for numeric evaluation.
using Cx = std::complex<double>;

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline bool is_finite(Cx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

struct EvalOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One identity/property check outcome. `status` is "pass", "fail" or
/// "skipped"; `witness` carries the evidence (residual, offending index, ...).
struct Check {
  std::string identity;
  std::string status;
  std::string witness;

  bool passed() const { return status != "fail"; }
};

struct Report {
  std::vector<Check> checks;

  void pass(std::string identity, std::string witness = "") {
    checks.push_back({std::move(identity), "pass", std::move(witness)});
  }
  void fail(std::string identity, std::string witness = "") {
    checks.push_back({std::move(identity), "fail", std::move(witness)});
  }
  void skip(std::string identity, std::string witness = "") {
    checks.push_back({std::move(identity), "skipped", std::move(witness)});
  }
  void record(bool ok, std::string identity, std::string witness = "") {
    if (ok)
      pass(std::move(identity), std::move(witness));
    else
      fail(std::move(identity), std::move(witness));
  }
  void merge(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed()) return false;
    return true;
  }
};

}  // namespace qknot
