#pragma once

#include "fihl/error.hpp"
#include "fihl/partition.hpp"
#include "fihl/tableau.hpp"
#include "fihl/linalg.hpp"
#include "fihl/decomposition.hpp"
#include "fihl/characters.hpp"
#include "fihl/monomial.hpp"
#include "fihl/transfer.hpp"
#include "fihl/crit.hpp"
#include "fihl/koszul.hpp"
#include "fihl/theta.hpp"
#include "fihl/report.hpp"
