#include "qchain/verdict.hpp"

#include <cstring>

namespace qchain {

VerdictReport make_verdict(std::string inequality_id, ExtendedReal lhs, ExtendedReal rhs,
                           double tol, std::string instance_digest, std::string basis_note,
                           std::map<std::string, double> side_conditions) {
  VerdictReport report;
  report.inequality_id = std::move(inequality_id);
  report.lhs = lhs;
  report.rhs = rhs;
  report.tol = tol;
  report.instance_digest = std::move(instance_digest);
  report.basis_note = std::move(basis_note);
  report.side_conditions = std::move(side_conditions);

  if (lhs.is_pos_inf() || rhs.is_neg_inf()) {
    report.slack = ExtendedReal::infinity();
  } else if (lhs.is_neg_inf() || rhs.is_pos_inf()) {
    report.slack = ExtendedReal::neg_infinity();
  } else {
    report.slack = ExtendedReal::finite(lhs.value() - rhs.value(),
                                        lhs.abs_err() + rhs.abs_err());
  }
  report.pass = lhs.is_pos_inf() || report.slack.is_pos_inf() ||
                (report.slack.is_finite() && report.slack.value() >= -tol);
  return report;
}

void InstanceDigest::feed(const void* data, std::size_t n) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    state_ ^= bytes[i];
    state_ *= 0x100000001B3ull;
  }
}

InstanceDigest& InstanceDigest::add(const std::string& s) {
  feed(s.data(), s.size());
  return *this;
}

InstanceDigest& InstanceDigest::add(std::int64_t v) {
  feed(&v, sizeof(v));
  return *this;
}

InstanceDigest& InstanceDigest::add(double v) {
  feed(&v, sizeof(v));
  return *this;
}

InstanceDigest& InstanceDigest::add(const Matrix& m) {
  add(static_cast<std::int64_t>(m.rows()));
  add(static_cast<std::int64_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      add(m(i, j).real());
      add(m(i, j).imag());
    }
  return *this;
}

InstanceDigest& InstanceDigest::add(const RealVector& v) {
  add(static_cast<std::int64_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) add(v[i]);
  return *this;
}

std::string InstanceDigest::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  std::uint64_t s = state_;
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = digits[s & 0xF];
    s >>= 4;
  }
  return out;
}

}  // namespace qchain
