#pragma once

// The report every inequality verifier returns: both sides, the slack, any
// side conditions, and enough provenance (input digest, basis note) to make a
// run reproducible.

#include <cstdint>
#include <map>
#include <string>

#include "qchain/divergences.hpp"

namespace qchain {

struct VerdictReport {
  std::string inequality_id;
  ExtendedReal lhs = ExtendedReal::finite(0.0);
  ExtendedReal rhs = ExtendedReal::finite(0.0);
  ExtendedReal slack = ExtendedReal::finite(0.0);  // lhs - rhs
  std::map<std::string, double> side_conditions;
  bool pass = false;
  double tol = 0.0;
  std::string instance_digest;
  std::string basis_note;
};

// Assembles a report enforcing pass = (slack >= -tol) or (lhs = +infinity).
// Slack conventions: lhs = +inf or rhs = -inf gives +inf; otherwise an
// infinite side gives -inf; otherwise the finite difference.
VerdictReport make_verdict(std::string inequality_id, ExtendedReal lhs, ExtendedReal rhs,
                           double tol, std::string instance_digest, std::string basis_note,
                           std::map<std::string, double> side_conditions = {});

// FNV-1a accumulator over the raw bytes of whatever defines an instance.
class InstanceDigest {
 public:
  InstanceDigest& add(const std::string& s);
  InstanceDigest& add(std::int64_t v);
  InstanceDigest& add(double v);
  InstanceDigest& add(const Matrix& m);
  InstanceDigest& add(const RealVector& v);
  std::string hex() const;

 private:
  void feed(const void* data, std::size_t n);
  std::uint64_t state_ = 0xCBF29CE484222325ull;
};

}  // namespace qchain
