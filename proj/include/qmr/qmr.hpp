// Umbrella header.
#pragma once

#include "qmr/eps_series.hpp"
#include "qmr/error.hpp"
#include "qmr/givental.hpp"
#include "qmr/linear_form.hpp"
#include "qmr/quasimap.hpp"
#include "qmr/rat_expr.hpp"
#include "qmr/rational.hpp"
#include "qmr/residue.hpp"
#include "qmr/ring.hpp"
