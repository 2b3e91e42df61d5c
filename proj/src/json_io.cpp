#include "qchain/json_io.hpp"

#include <fstream>

namespace qchain {

namespace {

nlohmann::json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open file");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path, std::string("malformed JSON: ") + e.what());
  }
  return j;
}

template <typename F>
auto convert_or_rethrow(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(path, e.what());
  }
}

}  // namespace

nlohmann::ordered_json matrix_to_json(const Matrix& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix: expected nested arrays");
  const auto rows = j.size();
  const auto cols = j.at(0).size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (size_t i = 0; i < rows; ++i) {
    const auto& row = j.at(i);
    if (!row.is_array() || row.size() != cols)
      throw std::invalid_argument("matrix: ragged rows");
    for (size_t k = 0; k < cols; ++k) {
      const auto& entry = row.at(k);
      if (!entry.is_array() || entry.size() != 2)
        throw std::invalid_argument("matrix: complex scalar must be [re, im]");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return m;
}

nlohmann::ordered_json density_to_json(const DensityMatrix& rho) {
  return {{"dim", rho.dim()}, {"matrix", matrix_to_json(rho.matrix())}};
}

nlohmann::ordered_json channel_to_json(const Channel& c) {
  nlohmann::ordered_json kraus = nlohmann::ordered_json::array();
  for (const auto& k : c.kraus()) kraus.push_back(matrix_to_json(k));
  return {{"d_in", c.d_in()}, {"d_out", c.d_out()}, {"kraus", std::move(kraus)}};
}

nlohmann::ordered_json povm_to_json(const Povm& g) {
  nlohmann::ordered_json elements = nlohmann::ordered_json::array();
  for (const auto& e : g.elements()) elements.push_back(matrix_to_json(e.matrix()));
  return {{"dim", g.dim()}, {"elements", std::move(elements)}};
}

DensityMatrix load_density(const std::string& path) {
  const nlohmann::json j = parse_file(path);
  return convert_or_rethrow(path, [&] {
    const int dim = j.at("dim").get<int>();
    Matrix m = matrix_from_json(j.at("matrix"));
    if (m.rows() != dim || m.cols() != dim)
      throw std::invalid_argument("state: matrix shape disagrees with dim");
    return DensityMatrix(std::move(m));
  });
}

PsdMatrix load_positive(const std::string& path) {
  const nlohmann::json j = parse_file(path);
  return convert_or_rethrow(path, [&] {
    const int dim = j.at("dim").get<int>();
    Matrix m = matrix_from_json(j.at("matrix"));
    if (m.rows() != dim || m.cols() != dim)
      throw std::invalid_argument("operator: matrix shape disagrees with dim");
    return PsdMatrix(std::move(m));
  });
}

Channel load_channel(const std::string& path) {
  const nlohmann::json j = parse_file(path);
  return convert_or_rethrow(path, [&] {
    const int d_in = j.at("d_in").get<int>();
    const int d_out = j.at("d_out").get<int>();
    std::vector<Matrix> kraus;
    for (const auto& k : j.at("kraus")) kraus.push_back(matrix_from_json(k));
    return Channel(std::move(kraus), d_in, d_out);
  });
}

Povm load_povm(const std::string& path) {
  const nlohmann::json j = parse_file(path);
  return convert_or_rethrow(path, [&] {
    const int dim = j.at("dim").get<int>();
    std::vector<PsdMatrix> elements;
    for (const auto& e : j.at("elements")) {
      Matrix m = matrix_from_json(e);
      if (m.rows() != dim) throw std::invalid_argument("povm: element shape disagrees with dim");
      elements.emplace_back(std::move(m));
    }
    return Povm(std::move(elements));
  });
}

nlohmann::ordered_json extended_real_to_json(const ExtendedReal& v) {
  if (v.is_pos_inf()) return "inf";
  if (v.is_neg_inf()) return "-inf";
  return v.value();
}

nlohmann::ordered_json report_to_json(const VerdictReport& report) {
  nlohmann::ordered_json side = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.side_conditions) side[key] = value;
  return {{"inequality_id", report.inequality_id},
          {"lhs", extended_real_to_json(report.lhs)},
          {"rhs", extended_real_to_json(report.rhs)},
          {"slack", extended_real_to_json(report.slack)},
          {"pass", report.pass},
          {"tol", report.tol},
          {"side_conditions", std::move(side)},
          {"instance_digest", report.instance_digest},
          {"basis_note", report.basis_note}};
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open file for writing");
  out << contents;
  if (!out) throw IoError(path, "write failed");
}

}  // namespace qchain
