#pragma once

// Reference computations used only by tests. They avoid the library's
// elimination and closure code so that agreement is meaningful.

#include "arrmc/katz.hpp"
#include "arrmc/pfaffian.hpp"

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using arrmc::Scalar;
using Rows = std::vector<std::vector<Scalar>>;

size_t rank_of(Rows m);
Scalar det_of(Rows m);
Rows rows_of(const arrmc::QMatrix& m);

/// Flats as (labels of hyperplanes containing the flat) -> codimension, from
/// intersecting every subset of hyperplanes.
std::map<std::set<std::string>, size_t> brute_force_flats(const arrmc::Arrangement& arr);
std::map<std::set<std::string>, size_t> poset_flats(const arrmc::IntersectionPoset& poset);

/// Omega ^ Omega * prod f_H expanded as polynomials; true iff identically zero.
bool wedge_vanishes(const arrmc::PfaffianSystem& sys);

/// Nonzero integer eigenvalues by scanning det(M - kI) over |k| <= max row sum.
std::vector<mpz_class> integer_eigenvalues_by_scan(const arrmc::QMatrix& m);

/// dim E = 1: star (1) and (2) hold iff each transversal H has some other
/// transversal H' with a nonzero residue.
bool scalar_star_closed_form(const arrmc::PfaffianSystem& sys, const arrmc::LineDirection& y);

/// Rank one tuples: property P holds iff for every k some m_j (j != k) differs from 1.
bool scalar_property_p_closed_form(const std::vector<arrmc::Complex>& m);

/// Random arrangement with small integer coefficients, no duplicates.
arrmc::Arrangement random_arrangement(std::mt19937_64& rng, size_t dim, size_t count);

/// Random invertible rational matrix with small entries.
arrmc::QMatrix random_invertible(std::mt19937_64& rng, size_t n);

arrmc::CMatrix random_complex(std::mt19937_64& rng, size_t n);

/// Conjugates every residue by p.
arrmc::PfaffianSystem gauge(const arrmc::PfaffianSystem& sys, const arrmc::QMatrix& p);

} // namespace oracle
