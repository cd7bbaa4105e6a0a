#pragma once

#include "superjet/jetspace.hpp"

#include <string>

namespace superjet {

std::string to_string(const Atom& a);
std::string to_string(const Monomial& m);
std::string to_string(const SuperPoly& p);
std::string to_string(const ParamMonomial& m);
// One "u: expr" entry per component, separated by `sep`.
std::string to_string(const FieldMap& components, std::string_view sep = ", ");
std::string to_string(const Flow& f);
std::string to_string(const EvolutionSystem& sys, std::string_view sep = "\n");

}  // namespace superjet
