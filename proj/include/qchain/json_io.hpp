#pragma once

// File formats shared with the CLI: complex scalars as [re, im], matrices as
// row-major nested arrays, states {"dim", "matrix"}, channels
// {"d_in", "d_out", "kraus"}, POVMs {"dim", "elements"}. Reports serialize
// with +/-infinity encoded as the strings "inf" / "-inf".

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qchain/quantum_objects.hpp"
#include "qchain/verdict.hpp"

namespace qchain {

// Malformed or unreadable input; carries the offending path for exit-status 2
// reporting.
class IoError : public std::runtime_error {
 public:
  IoError(std::string path, const std::string& what)
      : std::runtime_error(what + " (" + path + ")"), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

nlohmann::ordered_json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::ordered_json density_to_json(const DensityMatrix& rho);
nlohmann::ordered_json channel_to_json(const Channel& c);
nlohmann::ordered_json povm_to_json(const Povm& g);

DensityMatrix load_density(const std::string& path);
// Same file format as a state, but only positivity is required (reference
// operators gamma, omega may be unnormalized).
PsdMatrix load_positive(const std::string& path);
Channel load_channel(const std::string& path);
Povm load_povm(const std::string& path);

nlohmann::ordered_json extended_real_to_json(const ExtendedReal& v);
nlohmann::ordered_json report_to_json(const VerdictReport& report);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace qchain
