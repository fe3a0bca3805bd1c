#pragma once

#include <string>

#include "app.hpp"

namespace qcurve::test {

std::string fixture_path(const std::string& name);
// parsed and prepared fixture, cached
const app::Prepared& fixture(const std::string& name);
// newform of a fixture up to nmax, cached per (name, nmax, convention)
const app::NewformResult& newform(const std::string& name, size_t nmax, int convention = 1);

FieldElement K(long d, const char* s);
// exact comparison of a pretty-printed expansion
std::string expansion(const std::string& name, size_t nmax, int convention = 1);

inline const char* kExamples[] = {"ex1", "ex2", "ex3", "ex4", "ex5", "ex6"};

}  // namespace qcurve::test
