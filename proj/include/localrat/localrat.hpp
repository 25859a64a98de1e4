#pragma once

// Umbrella header for the whole library.

#include "localrat/universe.hpp"
#include "localrat/relation.hpp"
#include "localrat/margins.hpp"
#include "localrat/profiles.hpp"
#include "localrat/choice.hpp"
#include "localrat/generate.hpp"
#include "localrat/axioms.hpp"
#include "localrat/rationalize.hpp"
#include "localrat/rules.hpp"
#include "localrat/io.hpp"
#include "localrat/verify.hpp"
