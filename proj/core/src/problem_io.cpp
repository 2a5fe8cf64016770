#include "nepcim/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nepcim/report.hpp"

namespace nepcim {

namespace {

double finite_number(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) {
    throw ParseError("problem file: expected a number at " + where);
  }
  double x = j.get<double>();
  if (!std::isfinite(x)) {
    throw ParseError("problem file: non-finite value at " + where);
  }
  return x;
}

}  // namespace

PolynomialNEP load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("problem file: cannot open " + path);

  nlohmann::json root;
  try {
    in >> root;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("problem file: invalid JSON in " + path + ": " +
                     e.what());
  }

  if (!root.is_object()) throw ParseError("problem file: root must be an object");
  for (auto it = root.begin(); it != root.end(); ++it) {
    const std::string& key = it.key();
    if (key != "kind" && key != "dim" && key != "degree" &&
        key != "coefficients") {
      throw ParseError("problem file: unknown key '" + key + "'");
    }
  }
  if (!root.contains("kind") || root["kind"] != "polynomial") {
    throw ParseError("problem file: field 'kind' must be \"polynomial\"");
  }
  if (!root.contains("dim") || !root["dim"].is_number_integer()) {
    throw ParseError("problem file: missing integer field 'dim'");
  }
  if (!root.contains("degree") || !root["degree"].is_number_integer()) {
    throw ParseError("problem file: missing integer field 'degree'");
  }
  int dim = root["dim"].get<int>();
  int degree = root["degree"].get<int>();
  if (dim < 1) throw ParseError("problem file: 'dim' must be >= 1");
  if (degree < 0) throw ParseError("problem file: 'degree' must be >= 0");

  if (!root.contains("coefficients") || !root["coefficients"].is_array()) {
    throw ParseError("problem file: missing array field 'coefficients'");
  }
  const auto& coeffs = root["coefficients"];
  if (static_cast<int>(coeffs.size()) != degree + 1) {
    std::ostringstream msg;
    msg << "problem file: expected " << degree + 1 << " coefficient matrices, got "
        << coeffs.size();
    throw DimensionMismatch(msg.str());
  }

  std::vector<Eigen::MatrixXcd> matrices;
  for (int k = 0; k <= degree; ++k) {
    const auto& mat = coeffs[static_cast<std::size_t>(k)];
    std::ostringstream loc;
    loc << "coefficients[" << k << "]";
    if (!mat.is_array() || static_cast<int>(mat.size()) != dim) {
      throw DimensionMismatch("problem file: " + loc.str() + " must have " +
                              std::to_string(dim) + " rows");
    }
    Eigen::MatrixXcd m(dim, dim);
    for (int i = 0; i < dim; ++i) {
      const auto& row = mat[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<int>(row.size()) != dim) {
        throw DimensionMismatch("problem file: row " + std::to_string(i) +
                                " of " + loc.str() + " must have " +
                                std::to_string(dim) + " entries");
      }
      for (int j = 0; j < dim; ++j) {
        const auto& entry = row[static_cast<std::size_t>(j)];
        std::ostringstream where;
        where << loc.str() << "[" << i << "][" << j << "]";
        if (!entry.is_array() || entry.size() != 2) {
          throw ParseError("problem file: entry at " + where.str() +
                           " must be a [re, im] pair");
        }
        m(i, j) = Complex(finite_number(entry[0], where.str() + "[0]"),
                          finite_number(entry[1], where.str() + "[1]"));
      }
    }
    matrices.push_back(std::move(m));
  }
  return PolynomialNEP(std::move(matrices));
}

void save_problem(const PolynomialNEP& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("save_problem: cannot open " + path);

  const int dim = p.dim();
  out << "{\n  \"kind\": \"polynomial\",\n  \"dim\": " << dim
      << ",\n  \"degree\": " << p.degree() << ",\n  \"coefficients\": [\n";
  for (std::size_t k = 0; k < p.coefficients().size(); ++k) {
    const Eigen::MatrixXcd& m = p.coefficients()[k];
    out << "    [\n";
    for (int i = 0; i < dim; ++i) {
      out << "      [";
      for (int j = 0; j < dim; ++j) {
        out << "[" << format_double(m(i, j).real()) << ", "
            << format_double(m(i, j).imag()) << "]";
        if (j + 1 < dim) out << ", ";
      }
      out << "]";
      if (i + 1 < dim) out << ",";
      out << "\n";
    }
    out << "    ]";
    if (k + 1 < p.coefficients().size()) out << ",";
    out << "\n";
  }
  out << "  ]\n}\n";
  if (!out) throw Error("save_problem: write failed for " + path);
}

}  // namespace nepcim
