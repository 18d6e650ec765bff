#pragma once

#include "scottrank/amalgam.hpp"
#include "scottrank/error.hpp"
#include "scottrank/eval.hpp"
#include "scottrank/finstruct.hpp"
#include "scottrank/games.hpp"
#include "scottrank/json_io.hpp"
#include "scottrank/kstruct.hpp"
#include "scottrank/limitgen.hpp"
#include "scottrank/linorder.hpp"
#include "scottrank/ordinal.hpp"
#include "scottrank/rn_system.hpp"
#include "scottrank/spectra.hpp"
#include "scottrank/suites.hpp"
