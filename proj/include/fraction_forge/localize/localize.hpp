#ifndef FRACTION_FORGE_LOCALIZE_LOCALIZE_HPP
#define FRACTION_FORGE_LOCALIZE_LOCALIZE_HPP

#include "fraction_forge/localize/colimit.hpp"
#include "fraction_forge/localize/compare.hpp"
#include "fraction_forge/localize/filtered.hpp"
#include "fraction_forge/localize/gz.hpp"
#include "fraction_forge/localize/probe.hpp"
#include "fraction_forge/localize/slices.hpp"

#endif
