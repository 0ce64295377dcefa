#pragma once

#include "koszul/arrangements.hpp"
#include "koszul/bgg.hpp"
#include "koszul/cg_green.hpp"
#include "koszul/json_io.hpp"
#include "koszul/koszul_core.hpp"
#include "koszul/linalg.hpp"
#include "koszul/multilinear.hpp"
#include "koszul/resonance.hpp"
