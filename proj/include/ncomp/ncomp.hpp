#pragma once

#include "comp.hpp"
#include "completion.hpp"
#include "error.hpp"
#include "formula.hpp"
#include "ground.hpp"
#include "modelcheck.hpp"
#include "parser.hpp"
#include "printer.hpp"
#include "program.hpp"
#include "puzzle.hpp"
#include "reverse.hpp"
#include "sat.hpp"
#include "solve.hpp"
#include "sorts.hpp"
#include "symbol.hpp"
#include "term.hpp"
#include "tightness.hpp"
