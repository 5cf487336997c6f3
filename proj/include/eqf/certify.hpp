#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace eqf {

/// One certified identity: worst residual seen over the sampled cases against
/// its pinned tolerance.
struct ResidualRow {
  std::string suite;  // algebra | equivariance | invariance | linearisation
  std::string name;
  int samples{0};
  double max_residual{0};
  double tolerance{0};
  bool pass{false};
};

struct CertificationReport {
  std::vector<ResidualRow> rows;

  [[nodiscard]] bool all_passed() const;
  [[nodiscard]] const ResidualRow& row(const std::string& name) const;
};

/// Runs every identity suite on randomised inputs drawn from the seed:
/// group axioms, exp/log and adjoint identities, action axioms, system and
/// lift equivariance, error-field invariance and equivariance, and the
/// linearisation checks (vanishing state matrix, differenced output matrix,
/// transport consistency). Deterministic for a fixed seed.
[[nodiscard]] CertificationReport run_certification(std::uint64_t seed);

/// Fixed-width residual table, one row per identity.
void print_residual_table(std::ostream& out, const CertificationReport& report);

}  // namespace eqf
