#pragma once

#include <string>

#include "nepcim/problems.hpp"

namespace nepcim {

// Reads a polynomial problem from the JSON format described in the README:
// {"kind": "polynomial", "dim": n, "degree": d, "coefficients": [...]} with
// d+1 row-major matrices of [re, im] pairs, constant term first. Rejects
// NaN/Inf entries and inconsistent dimensions.
PolynomialNEP load_problem(const std::string& path);

// Writes the same format with 17 significant digits per component.
void save_problem(const PolynomialNEP& p, const std::string& path);

}  // namespace nepcim
