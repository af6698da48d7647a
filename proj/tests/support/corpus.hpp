#pragma once

#include "arrmc/katz.hpp"
#include "arrmc/pfaffian.hpp"

#include <string>
#include <vector>

namespace corpus {

struct LineCase {
    std::string name;
    arrmc::Arrangement arrangement;
    arrmc::LineDirection line;
    bool good; // known by hand
};

/// Hand-built arrangements with a line direction each, good and not good.
std::vector<LineCase> goodness_cases();

struct SystemCase {
    std::string name;
    arrmc::PfaffianSystem system;
    arrmc::LineDirection line;
};

/// Integrable systems along good lines.
std::vector<SystemCase> system_cases();

/// {y = 0, x - y = 0, x = 0, x = 1} with scalar residues a, b, c, d.
arrmc::PfaffianSystem four_lines(const arrmc::Scalar& a, const arrmc::Scalar& b, const arrmc::Scalar& c,
                                 const arrmc::Scalar& d);
arrmc::Arrangement four_lines_arrangement();

struct TupleCase {
    std::string name;
    arrmc::MonodromyTuple tuple;
};

std::vector<TupleCase> numeric_tuples();

struct ExactTupleCase {
    std::string name;
    arrmc::ExactTuple tuple;
};

std::vector<ExactTupleCase> exact_tuples();

} // namespace corpus
